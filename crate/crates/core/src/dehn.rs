//! Free-group endomorphisms for the twist table on `a, b, c, d`, the
//! images of the three curves `G, R, P`, and the Seifert-van Kampen
//! presentation they produce.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::presentation::{
    preset_twisted_torus_presentation, replay, Direction, Presentation, PresetError, ReplayError,
    ReplayOutcome, ScriptStep, ScriptedChain, TietzeMove,
};
use crate::word::{generators, Generator, Word};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum DehnError {
    #[error(transparent)]
    Bounds(#[from] PresetError),
    #[error("generator `{0}` is not in the endomorphism's alphabet")]
    UnknownGenerator(Generator),
    #[error("image of `{0}` uses letters outside the alphabet")]
    ForeignImage(Generator),
    #[error("chain failed at {0}")]
    Replay(#[from] ReplayError),
}

/// Generators without an explicit image are fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeEndo {
    pub alphabet: Vec<Generator>,
    pub images: BTreeMap<Generator, Word>,
}

impl FreeEndo {
    pub fn identity(alphabet: Vec<Generator>) -> Self {
        FreeEndo {
            alphabet,
            images: BTreeMap::new(),
        }
    }

    pub fn with_images(
        alphabet: Vec<Generator>,
        images: &[(&str, Word)],
    ) -> Result<Self, DehnError> {
        let mut map = BTreeMap::new();
        for (name, img) in images {
            let g = alphabet
                .iter()
                .find(|g| g.name() == *name)
                .cloned()
                .ok_or_else(|| DehnError::UnknownGenerator(Generator::new(name).expect("name")))?;
            if !img.support().iter().all(|h| alphabet.contains(h)) {
                return Err(DehnError::ForeignImage(g));
            }
            map.insert(g, img.clone());
        }
        Ok(FreeEndo {
            alphabet,
            images: map,
        })
    }

    pub fn image(&self, g: &Generator) -> Word {
        self.images.get(g).cloned().unwrap_or_else(|| g.word())
    }
}

pub fn endo_apply(e: &FreeEndo, u: &Word) -> Result<Word, DehnError> {
    if let Some(g) = u.support().into_iter().find(|g| !e.alphabet.contains(g)) {
        return Err(DehnError::UnknownGenerator(g));
    }
    Ok(u.substitute(|g| e.image(g)))
}

fn abcd() -> Vec<Generator> {
    generators(&["a", "b", "c", "d"]).expect("fixed alphabet")
}

fn w(text: &str) -> Word {
    text.parse().expect("table entry parses")
}

fn check(p: i64, m: i64, s: i64) -> Result<(), PresetError> {
    let bound = |name, value, min| {
        if value < min {
            Err(PresetError::OutOfRange { name, value, min })
        } else {
            Ok(())
        }
    };
    bound("p", p, 2)?;
    bound("m", m, 1)?;
    bound("s", s, 1)
}

/// Parameters of the twist sequence `D1, ..., D5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwistRecipe {
    pub p: i64,
    pub m: i64,
    pub s: i64,
}

impl TwistRecipe {
    pub fn new(p: i64, m: i64, s: i64) -> Result<Self, DehnError> {
        check(p, m, s)?;
        Ok(TwistRecipe { p, m, s })
    }

    /// The five steps, in the order they are applied.
    pub fn steps(&self) -> Vec<(&'static str, FreeEndo)> {
        let TwistRecipe { p, m, s } = *self;
        let rows: [(&str, Vec<(&str, Word)>); 5] = [
            ("D1", vec![("c", w("c (a b)^2")), ("d", w("d (a b)^2"))]),
            ("D2", vec![("c", w(&format!("a^{} c", p - 2)))]),
            ("D3", vec![("a", w(&format!("a c^{m}")))]),
            ("D4", vec![("c", w("a c"))]),
            ("D5", vec![("b", w(&format!("d^{s} b")))]),
        ];
        rows.into_iter()
            .map(|(name, imgs)| {
                (
                    name,
                    FreeEndo::with_images(abcd(), &imgs).expect("table uses a, b, c, d"),
                )
            })
            .collect()
    }

    /// Image of `u` under `D1` first, then `D2`, ..., `D5`.
    pub fn apply(&self, u: &Word) -> Word {
        self.steps().iter().fold(u.clone(), |acc, (_, e)| {
            endo_apply(e, &acc).expect("alphabet a, b, c, d")
        })
    }

    /// Every intermediate image, starting from `u` itself.
    pub fn trace(&self, u: &Word) -> Vec<Word> {
        let mut out = vec![u.clone()];
        for (_, e) in self.steps() {
            let next = endo_apply(&e, out.last().expect("non-empty")).expect("alphabet a, b, c, d");
            out.push(next);
        }
        out
    }
}

pub fn twist_table(p: i64, m: i64, s: i64) -> Result<Vec<FreeEndo>, DehnError> {
    Ok(TwistRecipe::new(p, m, s)?
        .steps()
        .into_iter()
        .map(|(_, e)| e)
        .collect())
}

/// Images of `G = b`, `R = d`, `P = c`.
pub fn image_grp(p: i64, m: i64, s: i64) -> Result<(Word, Word, Word), DehnError> {
    let r = TwistRecipe::new(p, m, s)?;
    Ok((r.apply(&w("b")), r.apply(&w("d")), r.apply(&w("c"))))
}

fn kill(u: &Word, dead: [&str; 2]) -> Word {
    u.substitute(|g| {
        if dead.contains(&g.name()) {
            Word::identity()
        } else {
            g.word()
        }
    })
}

/// Sets `c = d = 1`.
pub fn project_u(u: &Word) -> Word {
    kill(u, ["c", "d"])
}

/// Sets `a = b = 1`.
pub fn project_v(u: &Word) -> Word {
    kill(u, ["a", "b"])
}

/// `<a, b, c, d | U(X) = V(X), X = G, R, P>`.
pub fn svk_presentation(p: i64, m: i64, s: i64) -> Result<Presentation, DehnError> {
    let (g, r, pp) = image_grp(p, m, s)?;
    let relators = [g, r, pp]
        .iter()
        .map(|x| project_u(x).multiply(&project_v(x).inverse()))
        .collect();
    Ok(Presentation::new(abcd(), relators).expect("relators use a, b, c, d"))
}

fn expect(gens: &[&str], relators: &[String]) -> ScriptStep {
    let rels: Vec<&str> = relators.iter().map(String::as_str).collect();
    ScriptStep::Expect(Presentation::from_text(gens, &rels).expect("checkpoint parses"))
}

/// Eliminates `b` and `d` from [`svk_presentation`], ending at the
/// two-generator presentation of the twisted torus knot.
pub fn svk_script(p: i64, m: i64, s: i64) -> Result<ScriptedChain, DehnError> {
    let initial = svk_presentation(p, m, s)?;
    let expected = preset_twisted_torus_presentation(p, m, s)?;
    let k = (p - 2) * (m + 1) + 1;
    let j = (p - 2) * m + 1;
    let big_a = (p - 1) * (m + 1) + 1;
    let big_c = (p - 1) * m + 1;
    let e = m + 1;
    let big_w = format!("(a^{} c^{j})", -k);
    let gen = |n: &str| Generator::new(n).expect("name");
    let script = vec![
        ScriptStep::Move(TietzeMove::RemoveGenerator {
            name: gen("b"),
            relator: 0,
        }),
        expect(
            &["a", "c", "d"],
            &[
                format!("a^{e} d^{s} a^{e} = d c^{m} d^{s} c^{m}"),
                format!("a^{big_a} d^{s} a^{e} = c^{big_c} d^{s} c^{m}"),
            ],
        ),
        ScriptStep::Move(TietzeMove::SubstituteUsingRelator {
            target: 1,
            source: 0,
            split: (2 * e + s) as usize,
            direction: Direction::Forward,
            occurrence: 0,
        }),
        expect(
            &["a", "c", "d"],
            &[
                format!("a^{e} d^{s} a^{e} = d c^{m} d^{s} c^{m}"),
                format!("a^{k} d = c^{j}"),
            ],
        ),
        ScriptStep::Move(TietzeMove::RemoveGenerator {
            name: gen("d"),
            relator: 1,
        }),
        expect(
            &["a", "c"],
            &[format!(
                "a^{e} {big_w}^{s} a^{e} = {big_w} c^{m} {big_w}^{s} c^{m}"
            )],
        ),
        ScriptStep::Move(TietzeMove::ReplaceByConjugate {
            index: 0,
            conjugator: w(&format!("a^{}", -k)),
        }),
        ScriptStep::Expect(expected.clone()),
    ];
    Ok(ScriptedChain {
        initial,
        script,
        expected,
    })
}

/// Replays [`svk_script`].
pub fn derive_eq1(p: i64, m: i64, s: i64) -> Result<ReplayOutcome, DehnError> {
    let chain = svk_script(p, m, s)?;
    Ok(replay(&chain.initial, &chain.script, &chain.expected)?)
}
