//! Certify that [b, a] is generalized torsion in the group of L(q, n):
//! the relator gives [b, w] = 1, [b, w] splits into conjugates of [b, a],
//! and a permutation quotient shows [b, a] itself is not trivial.
//!
//! cargo run --example certificate -- 2 3

use gtorsion::commutator::{certificate_to_json, certify_for_presentation, verify_certificate};
use gtorsion::presentation::{find_nonabelian_quotient, link_inner_word, preset_link_presentation};
use gtorsion::word::Generator;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<i64>());
    let q = args.next().transpose()?.unwrap_or(1);
    let n = args.next().transpose()?.unwrap_or(1);

    let pres = preset_link_presentation(q, n)?;
    let b = Generator::new("b")?;
    let mut cert = certify_for_presentation(&pres, &b, &link_inner_word(q, n)?)?;
    cert.nontriviality = find_nonabelian_quotient(&pres, &"b".parse()?, &"a".parse()?, 7)?;
    verify_certificate(&cert)?;

    eprintln!(
        "{} = product of {} conjugates of {}",
        cert.target,
        cert.factors.len(),
        cert.base
    );
    print!("{}", certificate_to_json(&cert));
    Ok(())
}
