//! Push the curves G, R, P through the five Dehn-twist substitutions,
//! project to the two handlebodies, and derive the two-generator
//! presentation.
//!
//! cargo run --example dehn -- 3 2 1

use gtorsion::dehn::{derive_eq1, project_u, project_v, TwistRecipe};
use gtorsion::word::Word;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<i64> = std::env::args()
        .skip(1)
        .map(|a| a.parse())
        .collect::<Result<_, _>>()?;
    let (p, m, s) = match args[..] {
        [p, m, s] => (p, m, s),
        _ => (2, 1, 1),
    };
    let recipe = TwistRecipe::new(p, m, s)?;
    for (name, start) in [("G", "b"), ("R", "d"), ("P", "c")] {
        let trace: Vec<String> = recipe
            .trace(&start.parse()?)
            .iter()
            .map(Word::to_string)
            .collect();
        println!("[{name}]  {}", trace.join("  ->  "));
        let img = recipe.apply(&start.parse()?);
        println!(
            "      U: {:<28} V: {}",
            project_u(&img).to_string(),
            project_v(&img)
        );
    }

    let outcome = derive_eq1(p, m, s)?;
    println!("\n{}", outcome.result);
    Ok(())
}
