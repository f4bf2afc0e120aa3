//! Alexander polynomials by Fox calculus, compared with the closed form,
//! and an exact Sturm count of positive real roots.
//!
//! cargo run --example alexander

use gtorsion::alexander::{alexander_poly, count_positive_roots, pretzel_delta, LaurentPoly};
use gtorsion::presentation::preset_pretzel_presentation;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for s in 0..5 {
        let pres = preset_pretzel_presentation(s)?;
        let fox = alexander_poly(&pres)?;
        assert_eq!(fox, pretzel_delta(s)?);
        println!(
            "s={s}  {fox}   positive roots: {}",
            count_positive_roots(&fox)?
        );
    }

    let cubic: LaurentPoly = "t^3 - 6t^2 + 11t - 6".parse()?;
    println!(
        "\n{cubic}   positive roots: {}",
        count_positive_roots(&cubic)?
    );
    Ok(())
}
