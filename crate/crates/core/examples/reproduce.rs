//! Run every claim check and print the tab-separated report.
//!
//! cargo run --release --example reproduce -- 0

use gtorsion::presentation::default_max_degree;
use gtorsion::report::{Report, RunConfig, CLAIMS};

fn main() {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0);
    let claims: Vec<_> = CLAIMS.iter().collect();
    let report = Report::run(
        &claims,
        &RunConfig {
            seed,
            max_degree: default_max_degree(),
        },
    );
    print!("{}", report.render(false));
    std::process::exit(if report.all_pass() { 0 } else { 1 });
}
