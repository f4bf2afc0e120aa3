//! Finite group presentations.
//!
//! A relator `r` stands for the relation `r = 1`; an equation `L = R` is
//! stored as the reduced word `L R^-1`.

mod presets;
mod quotient;
mod snf;
mod tietze;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::word::{parse_word, Generator, Word, WordError};

pub use presets::{
    check_relator_equivalence, eq1_relator, link_inner_word, pm_inner_word, pm_script,
    preset_link_presentation, preset_pm_presentation, preset_pretzel_presentation,
    preset_twisted_torus_presentation, preset_w_qn, pretzel_inner_word, pretzel_script,
    PresetError, ScriptedChain,
};
pub use quotient::{
    default_max_degree, find_nonabelian_quotient, verify_hom, HomWitness, QuotientError,
    MAX_DEGREE_ENV, MAX_SEARCH_GENERATORS,
};
pub use snf::{abelianization, smith_normal_form, AbelianInvariants, SmithForm};
pub use tietze::{
    format_script, parse_script, replay, tietze_apply, DerivationFactor, Direction, ReplayError,
    ReplayOutcome, ScriptParseError, ScriptStep, TietzeError, TietzeMove,
};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(Generator),
    #[error("relator {index} uses undeclared generator `{gen}`")]
    UndeclaredGenerator { index: usize, gen: Generator },
    #[error("line {line}: {source}")]
    Word {
        line: usize,
        #[source]
        source: WordError,
    },
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<Generator>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<Generator>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !seen.insert(g.clone()) {
                return Err(PresentationError::DuplicateGenerator(g.clone()));
            }
        }
        for (index, r) in relators.iter().enumerate() {
            if let Some(gen) = r.support().into_iter().find(|g| !seen.contains(g)) {
                return Err(PresentationError::UndeclaredGenerator { index, gen });
            }
        }
        Ok(Presentation {
            generators,
            relators,
        })
    }

    /// Builds a presentation from generator names and relator texts, each
    /// either a word or an equation `L = R`.
    pub fn from_text(gens: &[&str], relators: &[&str]) -> Result<Self, PresentationError> {
        let generators = crate::word::generators(gens)
            .map_err(|source| PresentationError::Word { line: 0, source })?;
        let relators = relators
            .iter()
            .map(|r| parse_relator(r, &generators))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|source| PresentationError::Word { line: 0, source })?;
        Presentation::new(generators, relators)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator(&self, name: &str) -> Option<&Generator> {
        self.generators.iter().find(|g| g.name() == name)
    }

    pub fn index_of(&self, gen: &Generator) -> Option<usize> {
        self.generators.iter().position(|g| g == gen)
    }

    /// Exponent-sum matrix: one row per relator, one column per generator.
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|r| self.generators.iter().map(|g| r.exponent_sum(g)).collect())
            .collect()
    }

    /// Whether both present the same data up to generator order, relator
    /// order, and replacing relators by cyclic conjugates or inverses.
    pub fn equivalent_to(&self, other: &Presentation) -> bool {
        let gens = |p: &Presentation| p.generators.iter().cloned().collect::<BTreeSet<_>>();
        let rels = |p: &Presentation| {
            let mut v: Vec<Word> = p.relators.iter().map(Word::cyclic_normal_form).collect();
            v.sort();
            v
        };
        gens(self) == gens(other) && rels(self) == rels(other)
    }

    /// Parses the presentation file format.
    ///
    /// ```text
    /// # comment
    /// generators: a, b
    /// relator: [b, a b a^3 b a]
    /// relator: y^2 = b^-1 y b^-1
    /// ```
    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        let mut generators: Option<Vec<Generator>> = None;
        let mut relators = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let (key, value) = content.split_once(':').ok_or(PresentationError::Format {
                line,
                message: "expected `key: value`".into(),
            })?;
            match key.trim() {
                "generators" => {
                    if generators.is_some() {
                        return Err(PresentationError::Format {
                            line,
                            message: "generators declared twice".into(),
                        });
                    }
                    generators = Some(
                        parse_generator_list(value)
                            .map_err(|source| PresentationError::Word { line, source })?,
                    );
                }
                "relator" => {
                    let gens = generators.as_ref().ok_or(PresentationError::Format {
                        line,
                        message: "relator before generators".into(),
                    })?;
                    relators.push(
                        parse_relator(value, gens)
                            .map_err(|source| PresentationError::Word { line, source })?,
                    );
                }
                other => {
                    return Err(PresentationError::Format {
                        line,
                        message: format!("unknown key `{other}`"),
                    })
                }
            }
        }
        let generators = generators.ok_or(PresentationError::Format {
            line: 0,
            message: "missing generators line".into(),
        })?;
        Presentation::new(generators, relators)
    }
}

/// Comma-separated generator names; duplicates rejected.
pub fn parse_generator_list(text: &str) -> Result<Vec<Generator>, WordError> {
    let names: Vec<&str> = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    crate::word::generators(&names)
}

/// A relator as a word or as an equation `L = R` (stored as `L R^-1`).
pub fn parse_relator(text: &str, gens: &[Generator]) -> Result<Word, WordError> {
    match text.split_once('=') {
        Some((l, r)) => {
            let l = parse_word(l, Some(gens))?;
            let r = parse_word(r, Some(gens))?;
            Ok(l.multiply(&r.inverse()))
        }
        None => parse_word(text, Some(gens)),
    }
}

pub(crate) fn format_generator_list(gens: &[Generator]) -> String {
    gens.iter()
        .map(Generator::name)
        .collect::<Vec<_>>()
        .join(", ")
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            writeln!(f, "generators:")?;
        } else {
            writeln!(f, "generators: {}", format_generator_list(&self.generators))?;
        }
        for r in &self.relators {
            writeln!(f, "relator: {r}")?;
        }
        Ok(())
    }
}

impl FromStr for Presentation {
    type Err = PresentationError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Presentation::parse(s)
    }
}
