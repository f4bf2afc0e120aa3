//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! fails. Every expected value comes from `common` or is written out by
//! hand below; library output is only ever the thing being checked.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use gtorsion::alexander::{alexander_poly, has_positive_real_root, pretzel_delta, LaurentPoly};
use gtorsion::braid::{
    axis_linking_number, closure_components, positive_braid_genus, preset_kq_braid,
    preset_twisted_torus_braid, Braid,
};
use gtorsion::commutator::{decompose, split_commutator, verify_certificate};
use gtorsion::dehn::{derive_eq1, image_grp, project_u, project_v, svk_presentation};
use gtorsion::presentation::{
    abelianization, find_nonabelian_quotient, link_inner_word, preset_link_presentation,
    preset_pm_presentation, preset_pretzel_presentation, preset_twisted_torus_presentation,
    preset_w_qn, verify_hom, Presentation,
};
use gtorsion::word::{generators, Letter, Sign, Word};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn to_word(w: &[i32], names: &[&str]) -> Word {
    let gens = generators(names).unwrap();
    Word::from_letters(w.iter().map(|&x| {
        let sign = if x > 0 { Sign::Plus } else { Sign::Minus };
        Letter::new(gens[(x.unsigned_abs() - 1) as usize].clone(), sign)
    }))
}

fn random_oracle_word(rng: &mut ChaCha8Rng) -> W {
    let len = rng.gen_range(0..=20);
    (0..len)
        .map(|_| {
            let k = rng.gen_range(1..=3);
            if rng.gen_bool(0.5) {
                k
            } else {
                -k
            }
        })
        .collect()
}

fn c1_commutator_identity() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(20260101);
    let names = ["a", "b", "c"];
    for i in 0..1000 {
        let (x, y, z) = (
            random_oracle_word(&mut rng),
            random_oracle_word(&mut rng),
            random_oracle_word(&mut rng),
        );
        let lhs = comm(&x, &cat(&[&y, &z]));
        let rhs = cat(&[&comm(&x, &z), &conj(&comm(&x, &y), &z)]);
        ensure(lhs == rhs, || format!("oracle disagrees on triple {i}"))?;
        let (lx, ly, lz) = (
            to_word(&x, &names),
            to_word(&y, &names),
            to_word(&z, &names),
        );
        let lib_lhs = Word::commutator(&lx, &(&ly * &lz));
        let (f1, f2) = split_commutator(&lx, &ly, &lz);
        ensure(from_lib(&lib_lhs) == lhs, || {
            format!("[x,yz] differs on triple {i}")
        })?;
        ensure(from_lib(&(&f1 * &f2)) == rhs, || {
            format!("[x,z][x,y]^z differs on triple {i}")
        })?;
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(1), || format!("took {took:?}"))?;
    Ok(format!("1000 triples in {} ms", took.as_millis()))
}

/// `(ab)^q a^(n+2) (ba)^q`
fn inner(q: i64, n: i64) -> W {
    let ab = [letter('a'), letter('b')];
    let ba = [letter('b'), letter('a')];
    cat(&[&pw(&ab, q), &pw(&g('a'), n + 2), &pw(&ba, q)])
}

fn c2_decompose() -> Check {
    for q in 1..=5 {
        for n in 1..=5 {
            let w = link_inner_word(q, n).unwrap();
            ensure(from_lib(&w) == inner(q, n), || {
                format!("inner word q={q} n={n}")
            })?;
            let b = Letter::new(generators(&["b"]).unwrap()[0].clone(), Sign::Plus);
            let cert = decompose(&b, w.letters()).map_err(|e| e.to_string())?;
            let want = (2 * q + n + 2) as usize;
            ensure(cert.factors.len() == want, || {
                format!("q={q} n={n}: {} factors, want {want}", cert.factors.len())
            })?;
            verify_certificate(&cert).map_err(|e| format!("q={q} n={n}: {e}"))?;
            let base = from_lib(&cert.base);
            let product = cert.factors.iter().fold(Vec::new(), |acc, f| {
                cat(&[&acc, &conj(&base, &from_lib(&f.conjugator))])
            });
            ensure(product == comm(&g('b'), &inner(q, n)), || {
                format!("q={q} n={n}: product is not [b, w]")
            })?;
        }
    }
    Ok("25 certificates, 2q+n+2 factors each".into())
}

/// `a (b^-1 a^-1)^q b^-1 (ab)^q a^(n+2) (ba)^q b (a^-1 b^-1)^q a^-(n+3)`
fn w_qn(q: i64, n: i64) -> W {
    let (a, b) = (g('a'), g('b'));
    let ab = cat(&[&a, &b]);
    let ba = cat(&[&b, &a]);
    cat(&[
        &a,
        &pw(&inv(&ab), q),
        &inv(&b),
        &pw(&ab, q),
        &pw(&a, n + 2),
        &pw(&ba, q),
        &b,
        &pw(&inv(&ba), q),
        &pw(&a, -(n + 3)),
    ])
}

fn c3_relator_equivalence() -> Check {
    for q in 1..=5 {
        for n in 1..=5 {
            let lib = from_lib(&preset_w_qn(q, n).unwrap());
            ensure(lib == w_qn(q, n), || format!("w_qn differs at q={q} n={n}"))?;
            let c = comm(&g('b'), &inner(q, n));
            let ok = conjugate_in_free_group(&lib, &c) || conjugate_in_free_group(&lib, &inv(&c));
            ensure(ok, || format!("q={q} n={n}: not conjugate"))?;
            ensure(
                gtorsion::presentation::check_relator_equivalence(q, n).unwrap(),
                || format!("library check fails at q={q} n={n}"),
            )?;
        }
    }
    Ok("25 pairs conjugate up to inversion".into())
}

fn c4_quotients() -> Check {
    let start = Instant::now();
    let mut worst = 0;
    for q in 1..=3 {
        for n in 1..=3 {
            let pres = preset_link_presentation(q, n).unwrap();
            let (a, b) = ("a".parse::<Word>().unwrap(), "b".parse::<Word>().unwrap());
            let wit = find_nonabelian_quotient(&pres, &a, &b, 7)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| format!("no witness for q={q} n={n}"))?;
            ensure(wit.degree <= 7, || format!("degree {}", wit.degree))?;
            ensure(verify_hom(&pres, &wit), || {
                format!("verify_hom fails q={q} n={n}")
            })?;
            // Re-check with zero-based image vectors.
            let imgs: Vec<Vec<usize>> = ["a", "b"]
                .iter()
                .map(|name| {
                    let (_, p) = wit
                        .images
                        .iter()
                        .find(|(gen, _)| gen.name() == *name)
                        .unwrap();
                    p.one_line().iter().map(|x| x - 1).collect()
                })
                .collect();
            let id: Vec<usize> = (0..wit.degree).collect();
            let rel = comm(&g('b'), &inner(q, n));
            ensure(perm_word(&imgs, &rel) == id, || {
                format!("relator not killed q={q} n={n}")
            })?;
            let ab = perm_word(&imgs, &[1, 2]);
            let ba = perm_word(&imgs, &[2, 1]);
            ensure(ab != ba, || format!("images commute q={q} n={n}"))?;
            worst = worst.max(wit.degree);
        }
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(180), || format!("took {took:?}"))?;
    Ok(format!(
        "9 witnesses, max degree {worst}, {} ms",
        took.as_millis()
    ))
}

/// `a (ac)^m`
fn amc(m: i64) -> W {
    cat(&[&g('a'), &pw(&[letter('a'), letter('c')], m)])
}

fn c5_dehn() -> Check {
    let names = ["a", "b", "c", "d"];
    let (a, b, c, d) = (g('a'), g('b'), g('c'), g('d'));
    for p in 2..=3 {
        for m in 1..=2 {
            for s in 1..=2 {
                let tag = format!("p={p} m={m} s={s}");
                let ds = pw(&d, s);
                let tail = pw(&cat(&[&amc(m), &ds, &b]), 2);
                let want_g = cat(&[&ds, &b]);
                let want_r = cat(&[&d, &tail]);
                let want_p = cat(&[&pw(&amc(m), p - 2), &a, &c, &tail]);
                let (lg, lr, lp) = image_grp(p, m, s).map_err(|e| e.to_string())?;
                for (what, lib, want) in [
                    ("G", &lg, &want_g),
                    ("R", &lr, &want_r),
                    ("P", &lp, &want_p),
                ] {
                    ensure(from_lib(lib) == *want, || {
                        format!("{tag}: [{what}] = {lib}")
                    })?;
                }
                let table = [
                    (&lg, b.clone(), ds.clone()),
                    (
                        &lr,
                        pw(&cat(&[&pw(&a, m + 1), &b]), 2),
                        cat(&[&d, &pw(&c, m), &ds, &pw(&c, m), &ds]),
                    ),
                    (
                        &lp,
                        cat(&[&pw(&a, (p - 1) * (m + 1) + 1), &b, &pw(&a, m + 1), &b]),
                        cat(&[&pw(&c, (p - 1) * m + 1), &ds, &pw(&c, m), &ds]),
                    ),
                ];
                for (img, u, v) in table {
                    ensure(from_lib(&project_u(img)) == u, || {
                        format!("{tag}: U of {img}")
                    })?;
                    ensure(from_lib(&project_v(img)) == v, || {
                        format!("{tag}: V of {img}")
                    })?;
                    ensure(kill(&from_lib(img), &['c', 'd']) == u, || {
                        format!("{tag}: oracle U")
                    })?;
                }
                let svk = svk_presentation(p, m, s).map_err(|e| e.to_string())?;
                ensure(svk.relators().len() == 3, || format!("{tag}: SvK relators"))?;
                let out = derive_eq1(p, m, s).map_err(|e| e.to_string())?;
                ensure(out.matches, || format!("{tag}: replay does not match"))?;
                let block = cat(&[&pw(&a, -(p - 2) * (m + 1) - 1), &pw(&c, (p - 2) * m + 1)]);
                let lhs = cat(&[
                    &pw(&a, (p - 1) * (m + 1) + 1),
                    &pw(&block, s),
                    &pw(&a, m + 1),
                ]);
                let rhs = cat(&[&pw(&c, (p - 1) * m + 1), &pw(&block, s), &pw(&c, m)]);
                let want_eq1 = to_word(&cat(&[&lhs, &inv(&rhs)]), &names[..3]);
                let result = &out.result;
                let names_ok = result.generators().iter().map(|g| g.name()).eq(["a", "c"]);
                ensure(names_ok && result.relators() == [want_eq1.clone()], || {
                    format!("{tag}: replay gives {result}, want relator {want_eq1}")
                })?;
            }
        }
    }
    Ok("8 parameter sets: images, projections, replay".into())
}

/// Cycle count and genus computed by walking strand positions.
fn braid_oracle(b: &Braid) -> (usize, i64) {
    let n = b.strands();
    let mut pos: Vec<usize> = (0..n).collect();
    for &(i, _) in b.word() {
        pos.swap(i - 1, i);
    }
    // `pos[k]` is the strand ending at position k; follow the closure.
    let mut seen = vec![false; n];
    let mut cycles = 0;
    for start in 0..n {
        if !seen[start] {
            cycles += 1;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = pos[k];
            }
        }
    }
    (cycles, (1 - n as i64 + b.length() as i64) / 2)
}

fn c6_braids() -> Check {
    for q in 1..=5 {
        for n in 1..=5 {
            let b = preset_kq_braid(q, n).unwrap();
            let want: Braid = format!(
                "@{} {} {}",
                2 * q + n + 2,
                (1..=2 * q + n + 1)
                    .map(|i| format!("s{i}"))
                    .collect::<Vec<_>>()
                    .join(" "),
                (1..=2 * q)
                    .map(|i| format!("s{i}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            )
            .parse()
            .unwrap();
            ensure(b == want, || format!("kq braid q={q} n={n}"))?;
            let (cycles, genus) = braid_oracle(&b);
            ensure(cycles == 1 && closure_components(&b) == 1, || {
                format!("q={q} n={n}: not a knot")
            })?;
            ensure(genus == q && positive_braid_genus(&b) == Ok(q), || {
                format!("genus q={q} n={n}")
            })?;
            ensure(axis_linking_number(&b) == 2 * q + n + 2, || {
                format!("linking q={q} n={n}")
            })?;
        }
    }
    for p in 2..=3 {
        for m in 1..=2 {
            for s in 0..=2 {
                let b = preset_twisted_torus_braid(p, m, s).unwrap();
                let want = p * p * m * (m + 1) / 2 + s;
                ensure(b.strands() as i64 == p * (m + 1) + 1, || {
                    format!("index p={p} m={m}")
                })?;
                let (cycles, genus) = braid_oracle(&b);
                ensure(cycles == 1 && genus == want, || {
                    format!("oracle p={p} m={m} s={s}")
                })?;
                ensure(positive_braid_genus(&b) == Ok(want), || {
                    format!("genus p={p} m={m} s={s}")
                })?;
            }
        }
    }
    for s in 0..=5 {
        let b = preset_twisted_torus_braid(2, 1, s).unwrap();
        ensure(positive_braid_genus(&b) == Ok(s + 4), || {
            format!("K(5,3;2,{s})")
        })?;
    }
    Ok("kq grid, twisted-torus grid, K(5,3;2,s)".into())
}

fn lib_poly(p: &LaurentPoly) -> Vec<(i64, i64)> {
    poly(&p.terms().collect::<Vec<_>>())
}

fn palindromic_up_to_sign(terms: &[(i64, i64)]) -> bool {
    let top = terms.last().map_or(0, |t| t.0);
    let flipped = poly(&terms.iter().map(|&(e, c)| (top - e, c)).collect::<Vec<_>>());
    let negated: Vec<_> = flipped.iter().map(|&(e, c)| (e, -c)).collect();
    flipped == terms || negated == terms
}

fn c7_alexander() -> Check {
    let s0 = poly(&[(8, 1), (7, -1), (5, 1), (4, -1), (3, 1), (1, -1), (0, 1)]);
    ensure(delta_closed_form(0) == s0, || "closed form at 0".into())?;
    for s in 0..=4 {
        let d =
            alexander_poly(&preset_pretzel_presentation(s).unwrap()).map_err(|e| e.to_string())?;
        let closed = pretzel_delta(s).unwrap();
        ensure(lib_poly(&d) == delta_closed_form(s), || {
            format!("s={s}: Fox gives {d}")
        })?;
        ensure(lib_poly(&closed) == delta_closed_form(s), || {
            format!("s={s}: closed {closed}")
        })?;
    }
    let mut grid: Vec<(String, Presentation)> = (0..=4)
        .map(|s| {
            (
                format!("pretzel s={s}"),
                preset_pretzel_presentation(s).unwrap(),
            )
        })
        .collect();
    for p in 2..=3 {
        for m in 1..=2 {
            for s in 1..=2 {
                grid.push((
                    format!("twisted {p},{m},{s}"),
                    preset_twisted_torus_presentation(p, m, s).unwrap(),
                ));
            }
            grid.push((format!("pm {p},{m}"), preset_pm_presentation(p, m).unwrap()));
        }
    }
    for (tag, pres) in &grid {
        let d = alexander_poly(pres).map_err(|e| format!("{tag}: {e}"))?;
        let terms = lib_poly(&d);
        let at_one: i64 = terms.iter().map(|t| t.1).sum();
        ensure(at_one.abs() == 1, || format!("{tag}: D(1) = {at_one}"))?;
        ensure(palindromic_up_to_sign(&terms), || {
            format!("{tag}: {d} not symmetric")
        })?;
    }
    Ok(format!(
        "s=0..4 match, {} presentations symmetric",
        grid.len()
    ))
}

/// Exact sign of `Δ(k/den)` for `k = 1..=limit`, scaled by `den^deg`.
fn positive_on_samples(terms: &[(i64, i64)], den: u32, limit: u32) -> bool {
    use num_bigint::BigInt;
    let deg = terms.last().unwrap().0 as u32;
    (1..=limit).all(|k| {
        let v: BigInt = terms
            .iter()
            .map(|&(e, c)| {
                BigInt::from(c)
                    * BigInt::from(k).pow(e as u32)
                    * BigInt::from(den).pow(deg - e as u32)
            })
            .sum();
        v > BigInt::from(0)
    })
}

fn c8_no_positive_root() -> Check {
    for n in 0..=10 {
        let d = pretzel_delta(n).unwrap();
        ensure(
            !has_positive_real_root(&d).map_err(|e| e.to_string())?,
            || format!("n={n}: Sturm reports a positive root"),
        )?;
        ensure(
            positive_on_samples(&delta_closed_form(n), 32, 32 * 8),
            || format!("n={n}: sampled value not positive"),
        )?;
    }
    Ok("n=0..10, no positive real root".into())
}

fn det3(m: [[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// One relator on two generators: `Z` iff the exponent sums are coprime.
fn one_relator_is_z(w: &[i32], x: char, y: char) -> bool {
    gcd(exp_sum(w, letter(x)), exp_sum(w, letter(y))) == 1
}

fn c9_abelianization() -> Check {
    let mut count = 0;
    let mut knots: Vec<(String, Presentation, char, char)> = Vec::new();
    for s in 0..=4 {
        knots.push((
            format!("pretzel s={s}"),
            preset_pretzel_presentation(s).unwrap(),
            'b',
            'y',
        ));
    }
    for p in 2..=3 {
        for m in 1..=2 {
            for s in 1..=2 {
                knots.push((
                    format!("twisted {p},{m},{s}"),
                    preset_twisted_torus_presentation(p, m, s).unwrap(),
                    'a',
                    'c',
                ));
                let svk = svk_presentation(p, m, s).unwrap();
                // 3x4 relation matrix: Z iff the gcd of the 3x3 minors is 1.
                let rows: Vec<Vec<i64>> = svk
                    .relators()
                    .iter()
                    .map(|r| (1..=4).map(|k| exp_sum(&from_lib(r), k)).collect())
                    .collect();
                let minors = (0..4).map(|skip| {
                    let cols: Vec<usize> = (0..4).filter(|&c| c != skip).collect();
                    det3(std::array::from_fn(|i| {
                        std::array::from_fn(|j| rows[i][cols[j]])
                    }))
                });
                let ok = minors.fold(0, gcd) == 1;
                ensure(ok && abelianization(&svk).is_infinite_cyclic(), || {
                    format!("svk {p},{m},{s}")
                })?;
                count += 1;
            }
            knots.push((
                format!("pm {p},{m}"),
                preset_pm_presentation(p, m).unwrap(),
                'a',
                'c',
            ));
        }
    }
    for (tag, pres, x, y) in &knots {
        let r = from_lib(&pres.relators()[0]);
        ensure(
            pres.relators().len() == 1 && one_relator_is_z(&r, *x, *y),
            || format!("{tag}: oracle says not Z"),
        )?;
        ensure(abelianization(pres).is_infinite_cyclic(), || {
            format!("{tag}: library says not Z")
        })?;
        count += 1;
    }
    for q in 1..=5 {
        for n in 1..=5 {
            let pres = preset_link_presentation(q, n).unwrap();
            let r = from_lib(&pres.relators()[0]);
            let zero = exp_sum(&r, letter('a')) == 0 && exp_sum(&r, letter('b')) == 0;
            ensure(zero && abelianization(&pres).is_free_abelian(2), || {
                format!("L({q},{n})")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} presentations"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("commutator identity", c1_commutator_identity),
        ("decomposition soundness", c2_decompose),
        ("relator equivalence", c3_relator_equivalence),
        ("nontriviality witnesses", c4_quotients),
        ("dehn-twist pipeline", c5_dehn),
        ("braid invariants", c6_braids),
        ("alexander cross-check", c7_alexander),
        ("positive-root exclusion", c8_no_positive_root),
        ("abelianization", c9_abelianization),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
