//! Abelian invariants from the Smith normal form of the relator exponent
//! matrix.
//!
//! cargo run --example abelianization

use gtorsion::dehn::svk_presentation;
use gtorsion::presentation::{
    abelianization, preset_link_presentation, smith_normal_form, Presentation,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let trefoil: Presentation = "generators: a, b\nrelator: a^2 = b^3\n".parse()?;
    let lens: Presentation = "generators: a\nrelator: a^6\n".parse()?;
    for (name, pres) in [
        ("trefoil", trefoil),
        ("cyclic", lens),
        ("L(1,1)", preset_link_presentation(1, 1)?),
        ("SvK(2,1,1)", svk_presentation(2, 1, 1)?),
    ] {
        println!("{name:<11} {}", abelianization(&pres));
    }

    let snf = smith_normal_form(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3);
    println!("\nSmith form diagonal: {:?}", snf.diagonal);
    Ok(())
}
