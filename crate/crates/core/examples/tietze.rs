//! Replay a Tietze script step by step. Every step is checked: free
//! equality, single occurrence for generator removal, checkpoint
//! presentations, and the abelianization after each move.
//!
//! cargo run --example tietze -- 2

use gtorsion::presentation::{format_script, pretzel_script, replay};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = std::env::args()
        .nth(1)
        .map(|a| a.parse())
        .transpose()?
        .unwrap_or(2);
    let chain = pretzel_script(s)?;

    println!("start:\n{}", chain.initial);
    println!("script:\n{}", format_script(&chain.script));
    let outcome = replay(&chain.initial, &chain.script, &chain.expected)?;
    for line in &outcome.transcript {
        println!("  {line}");
    }
    println!("result:\n{}", outcome.result);
    assert!(outcome.matches);
    Ok(())
}
