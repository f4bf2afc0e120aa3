//! Search for a homomorphism to a symmetric group where two elements do not
//! commute. A witness proves the group is not abelian.
//!
//! cargo run --example quotient

use gtorsion::presentation::{
    find_nonabelian_quotient, preset_link_presentation, verify_hom, Presentation,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (q, n) in [(1, 1), (2, 3), (3, 3)] {
        let pres = preset_link_presentation(q, n)?;
        let wit = find_nonabelian_quotient(&pres, &"a".parse()?, &"b".parse()?, 7)?
            .expect("L(q, n) has a small nonabelian quotient");
        assert!(verify_hom(&pres, &wit));
        let images: Vec<String> = wit
            .images
            .iter()
            .map(|(g, p)| format!("{g} -> [{p}]"))
            .collect();
        println!("L({q},{n}): S{}  {}", wit.degree, images.join("  "));
    }

    // Z^2 has no such quotient; the search says so.
    let abelian: Presentation = "generators: a, b\nrelator: [a, b]\n".parse()?;
    let none = find_nonabelian_quotient(&abelian, &"a".parse()?, &"b".parse()?, 5)?;
    println!("<a, b | [a, b]>: {none:?}");
    Ok(())
}
