use std::fs;
use std::path::PathBuf;

use gtorsion::alexander::{abelianize_weights, alexander_poly, fox_derivative, LaurentPoly};
use gtorsion::braid::Braid;
use gtorsion::commutator::{
    certificate_from_json, certificate_to_json, certify_for_presentation, decompose,
    verify_certificate, CertificateFault, ConjugateFactor, DecomposeError, TorsionCertificate,
};
use gtorsion::dehn::svk_script;
use gtorsion::presentation::{
    find_nonabelian_quotient, format_script, link_inner_word, parse_script, pm_script,
    preset_link_presentation, preset_pm_presentation, preset_pretzel_presentation,
    preset_twisted_torus_presentation, pretzel_script, replay, tietze_apply, Presentation,
    ScriptedChain, TietzeMove,
};
use gtorsion::report::{Report, RunConfig, CLAIMS};
use gtorsion::word::{generators, Generator, Letter, Sign, Word};

fn fixture(rel: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", rel]
        .iter()
        .collect();
    fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn check_golden(dir: &str, chain: &ScriptedChain) {
    assert_eq!(
        fixture(&format!("{dir}/initial.pres")),
        chain.initial.to_string()
    );
    assert_eq!(
        fixture(&format!("{dir}/script.tz")),
        format_script(&chain.script)
    );
    assert_eq!(
        fixture(&format!("{dir}/expected.pres")),
        chain.expected.to_string()
    );
    let script = parse_script(&fixture(&format!("{dir}/script.tz"))).unwrap();
    assert_eq!(script, chain.script);
    let out = replay(&chain.initial, &script, &chain.expected).unwrap();
    assert!(out.matches, "{dir}");
}

#[test]
fn golden_chains() {
    check_golden("pretzel_s2", &pretzel_script(2).unwrap());
    check_golden("svk_p2_m1_s1", &svk_script(2, 1, 1).unwrap());
    check_golden("pm_p3_m1", &pm_script(3, 1).unwrap());
}

#[test]
fn golden_presentations() {
    assert_eq!(
        fixture("pretzel_s1.pres"),
        preset_pretzel_presentation(1).unwrap().to_string()
    );
    assert_eq!(
        fixture("link_q1_n1.pres"),
        preset_link_presentation(1, 1).unwrap().to_string()
    );
    let abelian: Presentation = fixture("abelian.pres").parse().unwrap();
    assert_eq!(abelian.relators(), [w("a b a^-1 b^-1")]);
}

#[test]
fn word_text_round_trip() {
    for text in ["a^3 b^-2 a", "x y^-1 z^12", "1", "c", "(a b)^-2 [a, b^2]"] {
        let parsed = w(text);
        assert_eq!(parsed.to_string().parse::<Word>().unwrap(), parsed);
    }
    assert_eq!(w("a a a^-1 b").to_string(), "a b");
    assert_eq!(w("[b, a]"), w("b^-1 a^-1 b a"));
    assert!("a^".parse::<Word>().is_err());
    assert_eq!(w("1"), Word::identity());
    assert_eq!(Word::identity().to_string(), "1");
}

#[test]
fn presentation_text_round_trip() {
    for pres in [
        preset_link_presentation(2, 3).unwrap(),
        preset_pm_presentation(3, 2).unwrap(),
        preset_twisted_torus_presentation(2, 2, 1).unwrap(),
    ] {
        assert_eq!(pres.to_string().parse::<Presentation>().unwrap(), pres);
    }
    let pres: Presentation = "generators: a, b\nrelator: a^2 = b^3\n".parse().unwrap();
    assert_eq!(pres.relators(), [w("a^2 b^-3")]);
    assert!("generators: a\nrelator: b\n"
        .parse::<Presentation>()
        .is_err());
}

#[test]
fn script_text_round_trip() {
    for chain in [pretzel_script(0).unwrap(), svk_script(3, 2, 2).unwrap()] {
        let text = format_script(&chain.script);
        assert_eq!(parse_script(&text).unwrap(), chain.script);
    }
    let err = parse_script("rotate 0 1\nfrobnicate 2\n").unwrap_err();
    assert_eq!(err.line, 2);
}

#[test]
fn polynomial_and_braid_text_round_trip() {
    for text in [
        "t^8 - t^7 + t^5 - t^4 + t^3 - t + 1",
        "-2t^3 + t^-2",
        "0",
        "1",
    ] {
        let p: LaurentPoly = text.parse().unwrap();
        assert_eq!(p.to_string(), text);
    }
    for text in ["@5 s1 s2 s3 s4 s1 s2", "@3 s1^-2 s2^4"] {
        assert_eq!(text.parse::<Braid>().unwrap().to_string(), text);
    }
}

#[test]
fn certificate_json_round_trip() {
    let pres = preset_link_presentation(1, 2).unwrap();
    let b = Generator::new("b").unwrap();
    let mut cert = certify_for_presentation(&pres, &b, &link_inner_word(1, 2).unwrap()).unwrap();
    cert.nontriviality = find_nonabelian_quotient(&pres, &w("b"), &w("a"), 7).unwrap();
    assert!(cert.is_complete());
    let text = certificate_to_json(&cert);
    let back = certificate_from_json(&text).unwrap();
    assert_eq!(back, cert);
    assert_eq!(certificate_to_json(&back), text);
    verify_certificate(&back).unwrap();
    assert!(certificate_from_json("{}").is_err());
    let wrong = text.replace("gtorsion-certificate/1", "gtorsion-certificate/9");
    assert!(certificate_from_json(&wrong).is_err());
}

#[test]
fn hand_built_certificate_verifies() {
    // [b, ab] = [b, b][b, a]^b = [b, a]^b
    let cert = TorsionCertificate {
        alphabet: generators(&["a", "b"]).unwrap(),
        base: w("[b, a]"),
        factors: vec![ConjugateFactor { conjugator: w("b") }],
        target: w("[b, a b]"),
        context: None,
        derivation: None,
        nontriviality: None,
    };
    verify_certificate(&cert).unwrap();
    assert!(!cert.is_complete());

    let mut bad = cert.clone();
    bad.factors[0].conjugator = w("a");
    assert!(matches!(
        verify_certificate(&bad),
        Err(CertificateFault::ProductMismatch { .. })
    ));
    bad.factors.clear();
    assert!(verify_certificate(&bad).is_err());
}

#[test]
fn decompose_rejects_words_in_x_only() {
    let b = Letter::new(Generator::new("b").unwrap(), Sign::Plus);
    let only_b = w("b^3 b");
    assert!(matches!(
        decompose(&b, only_b.letters()),
        Err(DecomposeError::OnlyX(_))
    ));
    assert!(matches!(decompose(&b, &[]), Err(DecomposeError::EmptyWord)));
}

fn pretzel_variants(s: i64) -> Vec<Presentation> {
    let base = preset_pretzel_presentation(s).unwrap();
    let r = &base.relators()[0];
    let gens = base.generators().to_vec();
    let swapped =
        Presentation::new(vec![gens[1].clone(), gens[0].clone()], vec![r.clone()]).unwrap();
    let inverted = tietze_apply(&base, &TietzeMove::InvertRelator { index: 0 })
        .unwrap()
        .0;
    let rotated = tietze_apply(
        &base,
        &TietzeMove::ReplaceByCyclicPermutation { index: 0, shift: 3 },
    )
    .unwrap()
    .0;
    vec![base, swapped, inverted, rotated]
}

#[test]
fn alexander_polynomial_is_invariant_under_relator_moves() {
    for s in 0..=4 {
        let variants = pretzel_variants(s);
        let first = alexander_poly(&variants[0]).unwrap();
        for v in &variants[1..] {
            assert_eq!(alexander_poly(v).unwrap(), first, "s={s} {v}");
        }
    }
}

#[test]
fn fox_fundamental_identity_on_the_grid() {
    let mut grid: Vec<Presentation> = (0..=4)
        .map(|s| preset_pretzel_presentation(s).unwrap())
        .collect();
    for p in 2..=3 {
        for m in 1..=2 {
            grid.push(preset_pm_presentation(p, m).unwrap());
            for s in 1..=2 {
                grid.push(preset_twisted_torus_presentation(p, m, s).unwrap());
            }
        }
    }
    for pres in &grid {
        let weights = abelianize_weights(pres).unwrap();
        for r in pres.relators() {
            let mut total = LaurentPoly::zero();
            for g in pres.generators() {
                let d = fox_derivative(r, g).evaluate(&weights);
                let factor = LaurentPoly::t_power_minus_one(weights.weight(g));
                total = &total + &(&d * &factor);
            }
            assert!(total.is_zero(), "{pres}");
            // Independent: relator weight is zero.
            let ws: i64 = pres
                .generators()
                .iter()
                .map(|g| weights.weight(g) * r.exponent_sum(g))
                .sum();
            assert_eq!(ws, 0);
        }
    }
}

#[test]
fn quotient_search_none_is_reproducible() {
    let abelian: Presentation = fixture("abelian.pres").parse().unwrap();
    let first = find_nonabelian_quotient(&abelian, &w("a"), &w("b"), 5).unwrap();
    assert!(first.is_none());
    assert_eq!(
        find_nonabelian_quotient(&abelian, &w("a"), &w("b"), 5).unwrap(),
        first
    );
    let link = preset_link_presentation(2, 2).unwrap();
    let once = find_nonabelian_quotient(&link, &w("a"), &w("b"), 7).unwrap();
    assert_eq!(
        find_nonabelian_quotient(&link, &w("a"), &w("b"), 7).unwrap(),
        once
    );
}

#[test]
fn report_is_deterministic() {
    let claims: Vec<_> = CLAIMS.iter().collect();
    let cfg = RunConfig {
        seed: 7,
        max_degree: 7,
    };
    let a = Report::run(&claims, &cfg).render(false);
    let b = Report::run(&claims, &cfg).render(false);
    assert_eq!(a, b);
    assert!(a.starts_with("# gtorsion "));
    assert!(a.contains("seed=7"));
    assert!(a.trim_end().ends_with("failed"));
    for line in a.lines().filter(|l| !l.starts_with('#')).skip(1) {
        assert_eq!(line.split('\t').count(), 6, "{line}");
    }
}
