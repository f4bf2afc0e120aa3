//! The `reproduce` claims: each check runs over its parameter grid and
//! yields one tab-separated record per grid point.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alexander::{alexander_poly, has_positive_real_root, pretzel_delta, LaurentPoly};
use crate::braid::{
    axis_linking_number, closure_components, positive_braid_genus, preset_kq_braid,
    preset_twisted_torus_braid,
};
use crate::commutator::{decompose, verify_certificate};
use crate::dehn::{derive_eq1, image_grp, project_u, project_v, svk_presentation};
use crate::presentation::{
    abelianization, check_relator_equivalence, eq1_relator, find_nonabelian_quotient,
    link_inner_word, preset_link_presentation, preset_pm_presentation, preset_pretzel_presentation,
    preset_twisted_torus_presentation, verify_hom, Presentation,
};
use crate::word::{generators, reduce, Generator, Letter, Sign, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub claim: &'static str,
    pub params: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
    pub runtime: Option<Duration>,
}

impl Record {
    fn new(
        claim: &'static str,
        params: impl Into<String>,
        expected: impl ToString,
        computed: impl ToString,
    ) -> Self {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        Record {
            claim,
            params: params.into(),
            pass: expected == computed,
            expected,
            computed,
            runtime: None,
        }
    }
}

pub struct Claim {
    pub id: &'static str,
    pub summary: &'static str,
    run: fn(&RunConfig) -> Vec<Record>,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub max_degree: usize,
}

pub const CLAIMS: &[Claim] = &[
    Claim {
        id: "commutator-identity",
        summary: "[x,yz] = [x,z][x,y]^z on 1000 seeded triples",
        run: commutator_identity,
    },
    Claim {
        id: "decompose-link",
        summary: "2q+n+2 verified factors for [b,(ab)^q a^(n+2) (ba)^q]",
        run: decompose_link,
    },
    Claim {
        id: "relator-equivalence",
        summary: "w_{q,n} conjugate to the commutator relator",
        run: relator_equivalence,
    },
    Claim {
        id: "nonabelian-quotient",
        summary: "[b,a] survives in a permutation quotient of L(q,n)",
        run: nonabelian_quotient,
    },
    Claim {
        id: "dehn-images",
        summary: "images of G, R, P under D1..D5",
        run: dehn_images,
    },
    Claim {
        id: "dehn-projections",
        summary: "projections of G, R, P to the two handlebodies",
        run: dehn_projections,
    },
    Claim {
        id: "derive-eq1",
        summary: "Tietze chain from the SvK presentation to two generators",
        run: derive_eq1_claim,
    },
    Claim {
        id: "genus-kq",
        summary: "K_q braid closes to a knot of genus q",
        run: genus_kq,
    },
    Claim {
        id: "linking-kq",
        summary: "axis linking number 2q+n+2",
        run: linking_kq,
    },
    Claim {
        id: "genus-twisted",
        summary: "twisted torus genus p^2 m(m+1)/2 + s",
        run: genus_twisted,
    },
    Claim {
        id: "genus-532s",
        summary: "K(5,3;2,s) has genus s+4",
        run: genus_532s,
    },
    Claim {
        id: "alexander-pretzel",
        summary: "Fox-calculus Delta equals the closed form",
        run: alexander_pretzel,
    },
    Claim {
        id: "alexander-symmetry",
        summary: "Delta(1) = 1 and Delta(t) = Delta(1/t)",
        run: alexander_symmetry,
    },
    Claim {
        id: "delta-no-positive-root",
        summary: "closed-form Delta has no positive real root",
        run: delta_no_root,
    },
    Claim {
        id: "abelianization-knots",
        summary: "knot presentations abelianize to Z",
        run: abelianization_knots,
    },
    Claim {
        id: "abelianization-links",
        summary: "L(q,n) abelianizes to Z^2",
        run: abelianization_links,
    },
];

pub fn find_claim(id: &str) -> Option<&'static Claim> {
    CLAIMS.iter().find(|c| c.id == id)
}

pub fn run_claim(claim: &Claim, cfg: &RunConfig) -> Vec<Record> {
    let start = Instant::now();
    let mut records = (claim.run)(cfg);
    let elapsed = start.elapsed();
    if let Some(last) = records.last_mut() {
        last.runtime = Some(elapsed);
    }
    records
}

pub struct Report {
    pub version: &'static str,
    pub seed: u64,
    pub records: Vec<Record>,
}

impl Report {
    pub fn run(claims: &[&Claim], cfg: &RunConfig) -> Report {
        Report {
            version: env!("CARGO_PKG_VERSION"),
            seed: cfg.seed,
            records: claims.iter().flat_map(|c| run_claim(c, cfg)).collect(),
        }
    }

    pub fn failed_claims(&self) -> Vec<&'static str> {
        let mut ids: Vec<&'static str> = self
            .records
            .iter()
            .filter(|r| !r.pass)
            .map(|r| r.claim)
            .collect();
        ids.dedup();
        ids
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    /// Tab-separated records. Runtimes print as `-` unless `timings` is
    /// set, so the default output is byte-for-byte reproducible.
    pub fn render(&self, timings: bool) -> String {
        let mut out = String::new();
        writeln!(out, "# gtorsion {} seed={}", self.version, self.seed).unwrap();
        out.push_str("claim\tparams\texpected\tcomputed\tstatus\truntime_ms\n");
        for r in &self.records {
            let runtime = match (timings, r.runtime) {
                (true, Some(d)) => format!("{:.1}", d.as_secs_f64() * 1000.0),
                _ => "-".into(),
            };
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}",
                r.claim,
                r.params,
                r.expected,
                r.computed,
                if r.pass { "PASS" } else { "FAIL" },
                runtime
            )
            .unwrap();
        }
        let passed = self.records.iter().filter(|r| r.pass).count();
        writeln!(
            out,
            "# summary: {passed} passed, {} failed",
            self.records.len() - passed
        )
        .unwrap();
        let failed = self.failed_claims();
        if !failed.is_empty() {
            writeln!(out, "# failing claims: {}", failed.join(", ")).unwrap();
        }
        out
    }
}

/// Freely reduced word from up to `max_len` uniform letters.
pub fn random_word(rng: &mut impl Rng, gens: &[Generator], max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    reduce((0..len).map(|_| {
        let g = gens[rng.gen_range(0..gens.len())].clone();
        let sign = if rng.gen_bool(0.5) {
            Sign::Plus
        } else {
            Sign::Minus
        };
        Letter::new(g, sign)
    }))
}

fn w(text: &str) -> Word {
    text.parse().expect("report template parses")
}

fn grid(lo: i64, hi: i64) -> impl Iterator<Item = (i64, i64)> {
    (lo..=hi).flat_map(move |a| (lo..=hi).map(move |b| (a, b)))
}

fn pms() -> impl Iterator<Item = (i64, i64, i64)> {
    [2, 3].into_iter().flat_map(|p| {
        [1, 2]
            .into_iter()
            .flat_map(move |m| [1, 2].map(|s| (p, m, s)))
    })
}

fn commutator_identity(cfg: &RunConfig) -> Vec<Record> {
    let gens = generators(&["a", "b", "c"]).expect("names");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut ok = 0;
    for _ in 0..1000 {
        let x = random_word(&mut rng, &gens, 20);
        let y = random_word(&mut rng, &gens, 20);
        let z = random_word(&mut rng, &gens, 20);
        let lhs = Word::commutator(&x, &y.multiply(&z));
        let rhs = Word::commutator(&x, &z).multiply(&Word::commutator(&x, &y).conjugate(&z));
        ok += usize::from(lhs == rhs);
    }
    vec![Record::new(
        "commutator-identity",
        "triples=1000 rank=3 len<=20",
        1000,
        ok,
    )]
}

fn decompose_link(_: &RunConfig) -> Vec<Record> {
    let b = w("b").letters()[0].clone();
    grid(1, 5)
        .map(|(q, n)| {
            let inner = link_inner_word(q, n).expect("bounds");
            let computed = match decompose(&b, inner.letters()) {
                Ok(cert) => match verify_certificate(&cert) {
                    Ok(()) => format!("{} factors, verified", cert.factors.len()),
                    Err(e) => e.to_string(),
                },
                Err(e) => e.to_string(),
            };
            Record::new(
                "decompose-link",
                format!("q={q} n={n}"),
                format!("{} factors, verified", 2 * q + n + 2),
                computed,
            )
        })
        .collect()
}

fn relator_equivalence(_: &RunConfig) -> Vec<Record> {
    grid(1, 5)
        .map(|(q, n)| {
            let ok = check_relator_equivalence(q, n).expect("bounds");
            Record::new("relator-equivalence", format!("q={q} n={n}"), true, ok)
        })
        .collect()
}

fn nonabelian_quotient(cfg: &RunConfig) -> Vec<Record> {
    grid(1, 3)
        .map(|(q, n)| {
            let pres = preset_link_presentation(q, n).expect("bounds");
            let computed = match find_nonabelian_quotient(&pres, &w("b"), &w("a"), cfg.max_degree) {
                Ok(Some(wit)) if verify_hom(&pres, &wit) => {
                    format!("witness, degree<={}", cfg.max_degree)
                }
                Ok(Some(_)) => "witness failed verification".into(),
                Ok(None) => "none".into(),
                Err(e) => e.to_string(),
            };
            Record::new(
                "nonabelian-quotient",
                format!("q={q} n={n}"),
                format!("witness, degree<={}", cfg.max_degree),
                computed,
            )
        })
        .collect()
}

/// The three image words, written out from the closed forms.
pub fn closed_form_images(p: i64, m: i64, s: i64) -> (Word, Word, Word) {
    let tail = format!("(a (a c)^{m} (d^{s} b))^2");
    (
        w(&format!("d^{s} b")),
        w(&format!("d {tail}")),
        w(&format!("(a (a c)^{m})^{} a c {tail}", p - 2)),
    )
}

fn dehn_images(_: &RunConfig) -> Vec<Record> {
    pms()
        .map(|(p, m, s)| {
            let (g, r, pp) = image_grp(p, m, s).expect("bounds");
            let (eg, er, ep) = closed_form_images(p, m, s);
            Record::new(
                "dehn-images",
                format!("p={p} m={m} s={s}"),
                format!("{eg} | {er} | {ep}"),
                format!("{g} | {r} | {pp}"),
            )
        })
        .collect()
}

fn dehn_projections(_: &RunConfig) -> Vec<Record> {
    pms()
        .map(|(p, m, s)| {
            let (g, r, pp) = image_grp(p, m, s).expect("bounds");
            let expected = [
                "b".to_string(),
                format!("d^{s}"),
                format!("a^{} b a^{} b", m + 1, m + 1),
                format!("d c^{m} d^{s} c^{m} d^{s}"),
                format!("a^{} b a^{} b", (p - 1) * (m + 1) + 1, m + 1),
                format!("c^{} d^{s} c^{m} d^{s}", (p - 1) * m + 1),
            ]
            .map(|t| w(&t).to_string())
            .join(" | ");
            let computed = [&g, &r, &pp]
                .iter()
                .flat_map(|x| [project_u(x), project_v(x)])
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" | ");
            Record::new(
                "dehn-projections",
                format!("p={p} m={m} s={s}"),
                expected,
                computed,
            )
        })
        .collect()
}

fn derive_eq1_claim(_: &RunConfig) -> Vec<Record> {
    pms()
        .map(|(p, m, s)| {
            let computed = match derive_eq1(p, m, s) {
                Ok(out) if out.matches => "matches".to_string(),
                Ok(_) => "differs".to_string(),
                Err(e) => e.to_string(),
            };
            Record::new(
                "derive-eq1",
                format!("p={p} m={m} s={s}"),
                "matches",
                computed,
            )
        })
        .collect()
}

fn genus_kq(_: &RunConfig) -> Vec<Record> {
    grid(1, 5)
        .map(|(q, n)| {
            let braid = preset_kq_braid(q, n).expect("bounds");
            let computed = format!(
                "components={} genus={}",
                closure_components(&braid),
                positive_braid_genus(&braid).map_or_else(|e| e.to_string(), |g| g.to_string())
            );
            Record::new(
                "genus-kq",
                format!("q={q} n={n}"),
                format!("components=1 genus={q}"),
                computed,
            )
        })
        .collect()
}

fn linking_kq(_: &RunConfig) -> Vec<Record> {
    grid(1, 5)
        .map(|(q, n)| {
            let braid = preset_kq_braid(q, n).expect("bounds");
            Record::new(
                "linking-kq",
                format!("q={q} n={n}"),
                2 * q + n + 2,
                axis_linking_number(&braid),
            )
        })
        .collect()
}

fn genus_twisted(_: &RunConfig) -> Vec<Record> {
    [2, 3]
        .into_iter()
        .flat_map(|p| {
            [1, 2]
                .into_iter()
                .flat_map(move |m| [0, 1, 2].map(|s| (p, m, s)))
        })
        .map(|(p, m, s)| {
            let braid = preset_twisted_torus_braid(p, m, s).expect("bounds");
            let computed =
                positive_braid_genus(&braid).map_or_else(|e| e.to_string(), |g| g.to_string());
            Record::new(
                "genus-twisted",
                format!("p={p} m={m} s={s}"),
                p * p * m * (m + 1) / 2 + s,
                computed,
            )
        })
        .collect()
}

fn genus_532s(_: &RunConfig) -> Vec<Record> {
    (0..=5)
        .map(|s| {
            let braid = preset_twisted_torus_braid(2, 1, s).expect("bounds");
            let computed =
                positive_braid_genus(&braid).map_or_else(|e| e.to_string(), |g| g.to_string());
            Record::new("genus-532s", format!("s={s}"), s + 4, computed)
        })
        .collect()
}

fn poly_or_error(pres: &Presentation) -> String {
    alexander_poly(pres).map_or_else(|e| e.to_string(), |p| p.to_string())
}

fn alexander_pretzel(_: &RunConfig) -> Vec<Record> {
    (0..=4)
        .map(|s| {
            let pres = preset_pretzel_presentation(s).expect("bounds");
            let expected = pretzel_delta(s).expect("bounds").normalize();
            Record::new(
                "alexander-pretzel",
                format!("s={s}"),
                expected,
                poly_or_error(&pres),
            )
        })
        .collect()
}

fn knot_grid() -> Vec<(String, Presentation)> {
    let mut out = Vec::new();
    for s in 0..=4 {
        out.push((
            format!("pretzel s={s}"),
            preset_pretzel_presentation(s).expect("bounds"),
        ));
    }
    for (p, m, s) in pms() {
        out.push((
            format!("twisted p={p} m={m} s={s}"),
            preset_twisted_torus_presentation(p, m, s).expect("bounds"),
        ));
    }
    for (p, m) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
        out.push((
            format!("pm p={p} m={m}"),
            preset_pm_presentation(p, m).expect("bounds"),
        ));
    }
    out
}

fn alexander_symmetry(_: &RunConfig) -> Vec<Record> {
    knot_grid()
        .into_iter()
        .map(|(name, pres)| {
            let computed = match alexander_poly(&pres) {
                Ok(d) => format!(
                    "|D(1)|={} symmetric={}",
                    d.eval_at_one().abs(),
                    d.equal_up_to_units(&d.reciprocal())
                ),
                Err(e) => e.to_string(),
            };
            Record::new(
                "alexander-symmetry",
                name,
                "|D(1)|=1 symmetric=true",
                computed,
            )
        })
        .collect()
}

fn delta_no_root(_: &RunConfig) -> Vec<Record> {
    (0..=10)
        .map(|n| {
            let d: LaurentPoly = pretzel_delta(n).expect("bounds");
            let computed =
                has_positive_real_root(&d).map_or_else(|e| e.to_string(), |b| b.to_string());
            Record::new("delta-no-positive-root", format!("n={n}"), false, computed)
        })
        .collect()
}

fn abelianization_knots(_: &RunConfig) -> Vec<Record> {
    let mut cases = knot_grid();
    for (p, m, s) in pms() {
        cases.push((
            format!("svk p={p} m={m} s={s}"),
            svk_presentation(p, m, s).expect("bounds"),
        ));
        let pres = Presentation::new(
            generators(&["a", "c"]).expect("names"),
            vec![eq1_relator(p, m, s).expect("bounds")],
        )
        .expect("well formed");
        cases.push((format!("eq1 p={p} m={m} s={s}"), pres));
    }
    cases
        .into_iter()
        .map(|(name, pres)| Record::new("abelianization-knots", name, "Z", abelianization(&pres)))
        .collect()
}

fn abelianization_links(_: &RunConfig) -> Vec<Record> {
    grid(1, 5)
        .map(|(q, n)| {
            let pres = preset_link_presentation(q, n).expect("bounds");
            Record::new(
                "abelianization-links",
                format!("q={q} n={n}"),
                "Z^2",
                abelianization(&pres),
            )
        })
        .collect()
}
