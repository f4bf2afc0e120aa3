//! Closure permutation, component count, genus and axis linking number of
//! positive braids.
//!
//! cargo run --example braid -- "@4 s1 s2 s3 s1 s2 s3"

use gtorsion::braid::{
    axis_linking_number, braid_permutation, closure_components, positive_braid_genus,
    preset_kq_braid, preset_twisted_torus_braid, Braid,
};

fn describe(label: &str, b: &Braid) {
    let genus = positive_braid_genus(b).map_or_else(|e| e.to_string(), |g| g.to_string());
    println!(
        "{label:<14} {b}\n{:14} perm [{}]  components {}  genus {genus}  axis {}",
        "",
        braid_permutation(b),
        closure_components(b),
        axis_linking_number(b)
    );
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    if let Some(text) = std::env::args().nth(1) {
        describe("input", &text.parse()?);
        return Ok(());
    }
    describe("trefoil", &"s1^3".parse()?);
    describe("K_2 (n = 1)", &preset_kq_braid(2, 1)?);
    for s in 0..3 {
        describe(
            &format!("K(5,3;2,{s})"),
            &preset_twisted_torus_braid(2, 1, s)?,
        );
    }
    Ok(())
}
