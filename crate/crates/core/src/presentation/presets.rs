//! Preset presentations for the link and knot families, and the Tietze
//! chains that connect them.

use thiserror::Error;

use super::tietze::{Direction, ScriptStep, TietzeMove};
use super::Presentation;
use crate::word::{free_conjugate, Generator, Word};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PresetError {
    #[error("parameter {name} = {value} is below its minimum {min}")]
    OutOfRange {
        name: &'static str,
        value: i64,
        min: i64,
    },
}

fn at_least(name: &'static str, value: i64, min: i64) -> Result<(), PresetError> {
    if value < min {
        Err(PresetError::OutOfRange { name, value, min })
    } else {
        Ok(())
    }
}

/// Words here are built from fixed templates, so parsing cannot fail.
fn w(text: &str) -> Word {
    text.parse().expect("preset template parses")
}

fn gen(name: &str) -> Generator {
    Generator::new(name).expect("preset generator name")
}

fn pres(gens: &[&str], relators: Vec<Word>) -> Presentation {
    let gens = gens.iter().map(|g| gen(g)).collect();
    Presentation::new(gens, relators).expect("preset presentation is well formed")
}

/// A presentation, a script of moves, and the presentation the script
/// must arrive at.
#[derive(Clone, Debug)]
pub struct ScriptedChain {
    pub initial: Presentation,
    pub script: Vec<ScriptStep>,
    pub expected: Presentation,
}

/// `(ab)^q a^(n+2) (ba)^q`
pub fn link_inner_word(q: i64, n: i64) -> Result<Word, PresetError> {
    at_least("q", q, 0)?;
    at_least("n", n, 1)?;
    Ok(w(&format!("(a b)^{q} a^{} (b a)^{q}", n + 2)))
}

/// `<a, b | [b, (ab)^q a^(n+2) (ba)^q]>`
pub fn preset_link_presentation(q: i64, n: i64) -> Result<Presentation, PresetError> {
    let inner = link_inner_word(q, n)?;
    Ok(pres(&["a", "b"], vec![Word::commutator(&w("b"), &inner)]))
}

/// The relator `w_{q,n}`.
pub fn preset_w_qn(q: i64, n: i64) -> Result<Word, PresetError> {
    at_least("q", q, 0)?;
    at_least("n", n, 1)?;
    Ok(w(&format!(
        "a (b^-1 a^-1)^{q} b^-1 (a b)^{q} a^{} (b a)^{q} b (a^-1 b^-1)^{q} a^{}",
        n + 2,
        -(n + 3)
    )))
}

/// Whether `w_{q,n}` is conjugate, possibly after inversion, to the
/// commutator relator of [`preset_link_presentation`].
pub fn check_relator_equivalence(q: i64, n: i64) -> Result<bool, PresetError> {
    let wqn = preset_w_qn(q, n)?;
    let comm = Word::commutator(&w("b"), &link_inner_word(q, n)?);
    Ok(relators_conjugate(&wqn, &comm))
}

pub(crate) fn relators_conjugate(u: &Word, v: &Word) -> bool {
    free_conjugate(u, v).is_some() || free_conjugate(&u.inverse(), v).is_some()
}

fn twisted_exponents(p: i64, m: i64) -> (i64, i64) {
    ((p - 2) * (m + 1) + 1, (p - 2) * m + 1)
}

/// The relator `LHS RHS^-1` of the two-generator presentation of
/// `K(p(m+1)+1, pm+1; 2, s)`. Accepts `s = 0`, where it degenerates to the
/// torus knot.
pub fn eq1_relator(p: i64, m: i64, s: i64) -> Result<Word, PresetError> {
    at_least("p", p, 2)?;
    at_least("m", m, 1)?;
    at_least("s", s, 0)?;
    let (k, j) = twisted_exponents(p, m);
    let big_a = (p - 1) * (m + 1) + 1;
    let big_c = (p - 1) * m + 1;
    let block = format!("(a^{} c^{j})^{s}", -k);
    let lhs = w(&format!("a^{big_a} {block} a^{}", m + 1));
    let rhs = w(&format!("c^{big_c} {block} c^{m}"));
    Ok(lhs.multiply(&rhs.inverse()))
}

/// `<a, c | eq1_relator(p, m, s)>` for `p >= 2`, `m, s >= 1`.
pub fn preset_twisted_torus_presentation(
    p: i64,
    m: i64,
    s: i64,
) -> Result<Presentation, PresetError> {
    at_least("s", s, 1)?;
    Ok(pres(&["a", "c"], vec![eq1_relator(p, m, s)?]))
}

/// `b^-1 y b^-(s+1) y b^-1 y b^-(s+1) y b^-1`
pub fn pretzel_inner_word(s: i64) -> Result<Word, PresetError> {
    at_least("s", s, 0)?;
    let t = -(s + 1);
    Ok(w(&format!("b^-1 y b^{t} y b^-1 y b^{t} y b^-1")))
}

/// `<b, y | y^2 = pretzel_inner_word(s)>`, the group of `K(5,3; 2, s)`.
pub fn preset_pretzel_presentation(s: i64) -> Result<Presentation, PresetError> {
    let inner = pretzel_inner_word(s)?;
    Ok(pres(&["b", "y"], vec![w("y^2").multiply(&inner.inverse())]))
}

/// `a^-(m+1) C a^-k C a^-(m+1)` with `C = c^((p-1)m+1)`, `k = (p-2)(m+1)+1`.
pub fn pm_inner_word(p: i64, m: i64) -> Result<Word, PresetError> {
    at_least("p", p, 2)?;
    at_least("m", m, 1)?;
    let (k, _) = twisted_exponents(p, m);
    let big_c = (p - 1) * m + 1;
    Ok(w(&format!(
        "a^{e} c^{big_c} a^{} c^{big_c} a^{e}",
        -k,
        e = -(m + 1)
    )))
}

/// `<a, c | c^((p-2)m+1) = pm_inner_word(p, m)>`, the `s = 1` member.
pub fn preset_pm_presentation(p: i64, m: i64) -> Result<Presentation, PresetError> {
    let inner = pm_inner_word(p, m)?;
    let (_, j) = twisted_exponents(p, m);
    Ok(pres(
        &["a", "c"],
        vec![w(&format!("c^{j}")).multiply(&inner.inverse())],
    ))
}

fn expect(gens: &[&str], relators: &[&str]) -> ScriptStep {
    ScriptStep::Expect(
        Presentation::from_text(gens, relators).expect("checkpoint presentation is well formed"),
    )
}

/// From the `s = 1` member of the twisted torus family to
/// [`preset_pm_presentation`].
pub fn pm_script(p: i64, m: i64) -> Result<ScriptedChain, PresetError> {
    let initial = preset_twisted_torus_presentation(p, m, 1)?;
    let expected = preset_pm_presentation(p, m)?;
    let (k, j) = twisted_exponents(p, m);
    let big_c = (p - 1) * m + 1;
    let e = m + 1;
    let script = vec![
        expect(
            &["a", "c"],
            &[&format!("a^{e} c^{j} a^{e} = c^{big_c} a^{} c^{big_c}", -k)],
        ),
        ScriptStep::Move(TietzeMove::ReplaceByCyclicPermutation {
            index: 0,
            shift: e as usize,
        }),
        ScriptStep::Expect(expected.clone()),
    ];
    Ok(ScriptedChain {
        initial,
        script,
        expected,
    })
}

/// From the two-generator presentation of `K(5,3; 2, s)` to
/// [`preset_pretzel_presentation`], through the substitutions
/// `b = a^-1 c`, `x = a b^(s-1)`, `y = b x b`.
pub fn pretzel_script(s: i64) -> Result<ScriptedChain, PresetError> {
    let initial = pres(&["a", "c"], vec![eq1_relator(2, 1, s)?]);
    let expected = preset_pretzel_presentation(s)?;
    let t = 1 - s;
    let mv = ScriptStep::Move;
    let script = vec![
        mv(TietzeMove::AddGenerator {
            name: gen("b"),
            definition: w("a^-1 c"),
        }),
        mv(TietzeMove::RemoveGenerator {
            name: gen("c"),
            relator: 1,
        }),
        mv(TietzeMove::ReplaceByConjugate {
            index: 0,
            conjugator: w("a"),
        }),
        expect(
            &["a", "b"],
            &[&format!("a^2 b^{s} a^2 = b a b^{} a b", s + 1)],
        ),
        mv(TietzeMove::AddGenerator {
            name: gen("x"),
            definition: w(&format!("a b^{}", s - 1)),
        }),
        mv(TietzeMove::RemoveGenerator {
            name: gen("a"),
            relator: 1,
        }),
        expect(
            &["b", "x"],
            &[&format!("x b^{t} x b x b^{t} x = b x b^2 x b")],
        ),
        mv(TietzeMove::AddGenerator {
            name: gen("y"),
            definition: w("b x b"),
        }),
        mv(TietzeMove::InvertRelator { index: 0 }),
        mv(TietzeMove::SubstituteUsingRelator {
            target: 0,
            source: 1,
            split: 1,
            direction: Direction::Backward,
            occurrence: 0,
        }),
        mv(TietzeMove::SubstituteUsingRelator {
            target: 0,
            source: 1,
            split: 1,
            direction: Direction::Backward,
            occurrence: 0,
        }),
        expect(
            &["b", "x", "y"],
            &[&format!("x b^{t} x b x b^{t} x = y^2"), "y = b x b"],
        ),
        mv(TietzeMove::RemoveGenerator {
            name: gen("x"),
            relator: 1,
        }),
        expect(
            &["b", "y"],
            &[&format!(
                "y^2 = (b^-1 y b^-1) b^{t} (b^-1 y b^-1) b (b^-1 y b^-1) b^{t} (b^-1 y b^-1)"
            )],
        ),
    ];
    Ok(ScriptedChain {
        initial,
        script,
        expected,
    })
}
