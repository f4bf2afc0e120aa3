//! Verified Tietze moves and script replay.
//!
//! Every move checks its own side condition before producing the new
//! presentation; nothing here searches for simplifications. Relator
//! indices are zero-based and refer to the presentation the move is
//! applied to.
//!
//! Script text, one record per line (`#` starts a comment):
//!
//! ```text
//! free-equal <i> <word>
//! rotate <i> <k>
//! invert <i>
//! conjugate <i> <word>
//! substitute <target> <source> <split> forward|backward <occurrence>
//! add-generator <name> <word>
//! remove-generator <name> <relator>
//! rename-generator <from> <to>
//! add-relator <word> ; <source> +|- <conjugator> ; ...
//! expect <gen>, <gen> | <relator> ; <relator>
//! ```

use std::fmt;

use thiserror::Error;

use super::{
    abelianization, format_generator_list, parse_generator_list, parse_relator, Presentation,
};
use crate::word::{parse_word, Generator, Sign, Word, WordError};

/// Which side of the source relation is replaced. For a source relator
/// split as `L R^-1` at position `split`, forward rewrites an occurrence
/// of `L` into `R`, backward rewrites `R` into `L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// One conjugate `conjugator^-1 source^sign conjugator` in a consequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationFactor {
    pub source: usize,
    pub sign: Sign,
    pub conjugator: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TietzeMove {
    /// Restate relator `index` as a word that freely equals it.
    ReplaceByFreeEqual {
        index: usize,
        word: Word,
    },
    /// Rotate relator `index` to start at letter `shift`.
    ReplaceByCyclicPermutation {
        index: usize,
        shift: usize,
    },
    InvertRelator {
        index: usize,
    },
    ReplaceByConjugate {
        index: usize,
        conjugator: Word,
    },
    SubstituteUsingRelator {
        target: usize,
        source: usize,
        split: usize,
        direction: Direction,
        occurrence: usize,
    },
    /// Adds a fresh generator `name` together with the relator
    /// `name * definition^-1`.
    AddGenerator {
        name: Generator,
        definition: Word,
    },
    /// Eliminates `name` using `relator`, in which it must occur exactly
    /// once; the solved expression is substituted everywhere else.
    RemoveGenerator {
        name: Generator,
        relator: usize,
    },
    RenameGenerator {
        from: Generator,
        to: Generator,
    },
    /// Appends a consequence of the existing relators, certified by an
    /// explicit product of conjugates.
    AddRelator {
        relator: Word,
        derivation: Vec<DerivationFactor>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScriptStep {
    Move(TietzeMove),
    /// Checkpoint: the current presentation must be equivalent to this one.
    Expect(Presentation),
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum TietzeError {
    #[error("relator index {index} out of range ({len} relators)")]
    NoSuchRelator { index: usize, len: usize },
    #[error("shift {shift} out of range for relator of length {len}")]
    BadShift { shift: usize, len: usize },
    #[error("split {split} out of range for relator of length {len}")]
    BadSplit { split: usize, len: usize },
    #[error("`{new}` does not freely equal relator {index} = `{old}`")]
    NotFreelyEqual { index: usize, old: Word, new: Word },
    #[error("the side being replaced is empty")]
    EmptyPattern,
    #[error(
        "occurrence {occurrence} of `{pattern}` not found in relator {target} ({found} found)"
    )]
    OccurrenceNotFound {
        target: usize,
        pattern: Word,
        occurrence: usize,
        found: usize,
    },
    #[error("generator `{0}` already exists")]
    GeneratorExists(Generator),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(Generator),
    #[error("word `{0}` uses undeclared generators")]
    ForeignWord(Word),
    #[error("generator `{gen}` occurs {count} times in relator {index}, need exactly once")]
    NotSolvable {
        gen: Generator,
        index: usize,
        count: usize,
    },
    #[error("derivation evaluates to `{got}`, not `{want}`")]
    DerivationMismatch { got: Word, want: Word },
}

fn relator(p: &Presentation, index: usize) -> Result<&Word, TietzeError> {
    p.relators().get(index).ok_or(TietzeError::NoSuchRelator {
        index,
        len: p.relators().len(),
    })
}

fn check_word(p: &Presentation, w: &Word) -> Result<(), TietzeError> {
    if w.support().iter().all(|g| p.generators().contains(g)) {
        Ok(())
    } else {
        Err(TietzeError::ForeignWord(w.clone()))
    }
}

fn rebuild(gens: Vec<Generator>, rels: Vec<Word>) -> Presentation {
    Presentation::new(gens, rels).expect("moves preserve presentation invariants")
}

fn find_occurrences(hay: &Word, needle: &Word) -> Vec<usize> {
    let (h, n) = (hay.letters(), needle.letters());
    if n.len() > h.len() {
        return Vec::new();
    }
    (0..=h.len() - n.len())
        .filter(|&i| &h[i..i + n.len()] == n)
        .collect()
}

/// Applies one move after checking its side condition. Returns the new
/// presentation and a one-line account of what was verified.
pub fn tietze_apply(
    pres: &Presentation,
    mv: &TietzeMove,
) -> Result<(Presentation, String), TietzeError> {
    let gens = pres.generators().to_vec();
    let mut rels = pres.relators().to_vec();
    match mv {
        TietzeMove::ReplaceByFreeEqual { index, word } => {
            let old = relator(pres, *index)?;
            if old != word {
                return Err(TietzeError::NotFreelyEqual {
                    index: *index,
                    old: old.clone(),
                    new: word.clone(),
                });
            }
            Ok((
                pres.clone(),
                format!("relator {index} restated as `{word}`"),
            ))
        }
        TietzeMove::ReplaceByCyclicPermutation { index, shift } => {
            let old = relator(pres, *index)?;
            if *shift >= old.len().max(1) {
                return Err(TietzeError::BadShift {
                    shift: *shift,
                    len: old.len(),
                });
            }
            let new = old.rotate(*shift);
            let note = format!("relator {index}: rotated `{old}` by {shift} to `{new}`");
            rels[*index] = new;
            Ok((rebuild(gens, rels), note))
        }
        TietzeMove::InvertRelator { index } => {
            let new = relator(pres, *index)?.inverse();
            let note = format!("relator {index}: inverted to `{new}`");
            rels[*index] = new;
            Ok((rebuild(gens, rels), note))
        }
        TietzeMove::ReplaceByConjugate { index, conjugator } => {
            check_word(pres, conjugator)?;
            let new = relator(pres, *index)?.conjugate(conjugator);
            let note = format!("relator {index}: conjugated by `{conjugator}` to `{new}`");
            rels[*index] = new;
            Ok((rebuild(gens, rels), note))
        }
        TietzeMove::SubstituteUsingRelator {
            target,
            source,
            split,
            direction,
            occurrence,
        } => {
            let src = relator(pres, *source)?;
            let tgt = relator(pres, *target)?;
            if *split > src.len() {
                return Err(TietzeError::BadSplit {
                    split: *split,
                    len: src.len(),
                });
            }
            let lhs = src.slice(0..*split);
            let rhs = src.slice(*split..src.len()).inverse();
            let (pattern, replacement) = match direction {
                Direction::Forward => (lhs, rhs),
                Direction::Backward => (rhs, lhs),
            };
            if pattern.is_empty() {
                return Err(TietzeError::EmptyPattern);
            }
            let hits = find_occurrences(tgt, &pattern);
            let &pos = hits
                .get(*occurrence)
                .ok_or(TietzeError::OccurrenceNotFound {
                    target: *target,
                    pattern: pattern.clone(),
                    occurrence: *occurrence,
                    found: hits.len(),
                })?;
            let new = tgt
                .slice(0..pos)
                .multiply(&replacement)
                .multiply(&tgt.slice(pos + pattern.len()..tgt.len()));
            let note = format!(
                "relator {target}: replaced `{pattern}` at letter {pos} by `{replacement}` \
                 (relator {source}: `{pattern}` = `{replacement}`), giving `{new}`"
            );
            rels[*target] = new;
            Ok((rebuild(gens, rels), note))
        }
        TietzeMove::AddGenerator { name, definition } => {
            if gens.contains(name) {
                return Err(TietzeError::GeneratorExists(name.clone()));
            }
            check_word(pres, definition)?;
            let mut gens = gens;
            gens.push(name.clone());
            let new = name.word().multiply(&definition.inverse());
            let note = format!("added generator {name} = `{definition}` (relator `{new}`)");
            rels.push(new);
            Ok((rebuild(gens, rels), note))
        }
        TietzeMove::RemoveGenerator {
            name,
            relator: index,
        } => {
            if !gens.contains(name) {
                return Err(TietzeError::UnknownGenerator(name.clone()));
            }
            let r = relator(pres, *index)?;
            let hits: Vec<usize> = r
                .letters()
                .iter()
                .enumerate()
                .filter(|(_, l)| &l.gen == name)
                .map(|(i, _)| i)
                .collect();
            if hits.len() != 1 {
                return Err(TietzeError::NotSolvable {
                    gen: name.clone(),
                    index: *index,
                    count: hits.len(),
                });
            }
            // r = A g^e B  gives  g^e = A^-1 B^-1.
            let i = hits[0];
            let before = r.slice(0..i);
            let after = r.slice(i + 1..r.len());
            let solved = before.inverse().multiply(&after.inverse());
            let value = match r.letters()[i].sign {
                Sign::Plus => solved,
                Sign::Minus => solved.inverse(),
            };
            let gens: Vec<Generator> = gens.into_iter().filter(|g| g != name).collect();
            let rels: Vec<Word> = rels
                .iter()
                .enumerate()
                .filter(|(j, _)| j != index)
                .map(|(_, w)| w.substitute(|g| if g == name { value.clone() } else { g.word() }))
                .collect();
            let note = format!("removed generator {name} = `{value}` using relator {index}");
            Ok((rebuild(gens, rels), note))
        }
        TietzeMove::RenameGenerator { from, to } => {
            if !gens.contains(from) {
                return Err(TietzeError::UnknownGenerator(from.clone()));
            }
            if gens.contains(to) {
                return Err(TietzeError::GeneratorExists(to.clone()));
            }
            let gens = gens
                .into_iter()
                .map(|g| if &g == from { to.clone() } else { g })
                .collect();
            let rels = rels
                .iter()
                .map(|w| w.substitute(|g| if g == from { to.word() } else { g.word() }))
                .collect();
            Ok((rebuild(gens, rels), format!("renamed {from} to {to}")))
        }
        TietzeMove::AddRelator {
            relator: new,
            derivation,
        } => {
            check_word(pres, new)?;
            let mut product = Word::identity();
            for f in derivation {
                let r = relator(pres, f.source)?;
                check_word(pres, &f.conjugator)?;
                let r = match f.sign {
                    Sign::Plus => r.clone(),
                    Sign::Minus => r.inverse(),
                };
                product = product.multiply(&r.conjugate(&f.conjugator));
            }
            if &product != new {
                return Err(TietzeError::DerivationMismatch {
                    got: product,
                    want: new.clone(),
                });
            }
            let note = format!(
                "added consequence `{new}` as a product of {} relator conjugates",
                derivation.len()
            );
            rels.push(new.clone());
            Ok((rebuild(gens, rels), note))
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("step {step}: {reason}")]
pub struct ReplayError {
    pub step: usize,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct ReplayOutcome {
    /// Whether the final presentation is equivalent to the expected one.
    pub matches: bool,
    pub transcript: Vec<String>,
    pub result: Presentation,
}

/// Runs `script` from `initial`, verifying every move and checkpoint and
/// that the abelianization never changes.
pub fn replay(
    initial: &Presentation,
    script: &[ScriptStep],
    expected: &Presentation,
) -> Result<ReplayOutcome, ReplayError> {
    let invariants = abelianization(initial);
    let mut current = initial.clone();
    let mut transcript = vec![format!("start: H1 = {invariants}")];
    for (step, item) in script.iter().enumerate() {
        match item {
            ScriptStep::Move(mv) => {
                let (next, note) = tietze_apply(&current, mv).map_err(|e| ReplayError {
                    step,
                    reason: e.to_string(),
                })?;
                let now = abelianization(&next);
                if now != invariants {
                    return Err(ReplayError {
                        step,
                        reason: format!("abelianization changed from {invariants} to {now}"),
                    });
                }
                transcript.push(format!("step {step}: {note}"));
                current = next;
            }
            ScriptStep::Expect(want) => {
                if !current.equivalent_to(want) {
                    return Err(ReplayError {
                        step,
                        reason: "checkpoint does not match the current presentation".into(),
                    });
                }
                transcript.push(format!("step {step}: checkpoint matched"));
            }
        }
    }
    let matches = current.equivalent_to(expected);
    transcript.push(format!(
        "final presentation {} the expected one",
        if matches { "matches" } else { "differs from" }
    ));
    Ok(ReplayOutcome {
        matches,
        transcript,
        result: current,
    })
}

impl fmt::Display for TietzeMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TietzeMove::ReplaceByFreeEqual { index, word } => {
                write!(f, "free-equal {index} {word}")
            }
            TietzeMove::ReplaceByCyclicPermutation { index, shift } => {
                write!(f, "rotate {index} {shift}")
            }
            TietzeMove::InvertRelator { index } => write!(f, "invert {index}"),
            TietzeMove::ReplaceByConjugate { index, conjugator } => {
                write!(f, "conjugate {index} {conjugator}")
            }
            TietzeMove::SubstituteUsingRelator {
                target,
                source,
                split,
                direction,
                occurrence,
            } => {
                let d = match direction {
                    Direction::Forward => "forward",
                    Direction::Backward => "backward",
                };
                write!(f, "substitute {target} {source} {split} {d} {occurrence}")
            }
            TietzeMove::AddGenerator { name, definition } => {
                write!(f, "add-generator {name} {definition}")
            }
            TietzeMove::RemoveGenerator { name, relator } => {
                write!(f, "remove-generator {name} {relator}")
            }
            TietzeMove::RenameGenerator { from, to } => write!(f, "rename-generator {from} {to}"),
            TietzeMove::AddRelator {
                relator,
                derivation,
            } => {
                write!(f, "add-relator {relator}")?;
                for d in derivation {
                    let s = if d.sign == Sign::Plus { '+' } else { '-' };
                    write!(f, " ; {} {s} {}", d.source, d.conjugator)?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for ScriptStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScriptStep::Move(m) => write!(f, "{m}"),
            ScriptStep::Expect(p) => {
                let rels: Vec<String> = p.relators().iter().map(Word::to_string).collect();
                write!(
                    f,
                    "expect {} | {}",
                    format_generator_list(p.generators()),
                    rels.join(" ; ")
                )
            }
        }
    }
}

/// Canonical script text: one record per line.
pub fn format_script(script: &[ScriptStep]) -> String {
    script.iter().map(|s| format!("{s}\n")).collect()
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("script line {line}: {message}")]
pub struct ScriptParseError {
    pub line: usize,
    pub message: String,
}

pub fn parse_script(text: &str) -> Result<Vec<ScriptStep>, ScriptParseError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let err = |message: String| ScriptParseError { line, message };
        let word_err = |e: WordError| err(e.to_string());
        let (kw, rest) = content
            .split_once(char::is_whitespace)
            .unwrap_or((content, ""));
        let rest = rest.trim();
        let mut fields = rest.split_whitespace();
        let mut next_usize = |what: &str| -> Result<usize, ScriptParseError> {
            fields
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| err(format!("expected {what}")))
        };
        // Splits off the first field and returns the remainder as text.
        let head_tail = |s: &str| -> (String, String) {
            let (h, t) = s.split_once(char::is_whitespace).unwrap_or((s, ""));
            (h.to_string(), t.trim().to_string())
        };
        let step = match kw {
            "free-equal" | "conjugate" => {
                let (idx, w) = head_tail(rest);
                let index = idx
                    .parse()
                    .map_err(|_| err("expected relator index".into()))?;
                let word = parse_word(&w, None).map_err(word_err)?;
                if kw == "free-equal" {
                    TietzeMove::ReplaceByFreeEqual { index, word }
                } else {
                    TietzeMove::ReplaceByConjugate {
                        index,
                        conjugator: word,
                    }
                }
            }
            "rotate" => TietzeMove::ReplaceByCyclicPermutation {
                index: next_usize("relator index")?,
                shift: next_usize("shift")?,
            },
            "invert" => TietzeMove::InvertRelator {
                index: next_usize("relator index")?,
            },
            "substitute" => {
                let target = next_usize("target index")?;
                let source = next_usize("source index")?;
                let split = next_usize("split position")?;
                let direction = match fields.next() {
                    Some("forward") => Direction::Forward,
                    Some("backward") => Direction::Backward,
                    _ => return Err(err("expected forward or backward".into())),
                };
                let occurrence = fields
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err("expected occurrence".into()))?;
                TietzeMove::SubstituteUsingRelator {
                    target,
                    source,
                    split,
                    direction,
                    occurrence,
                }
            }
            "add-generator" => {
                let (name, w) = head_tail(rest);
                TietzeMove::AddGenerator {
                    name: Generator::new(&name).map_err(word_err)?,
                    definition: parse_word(&w, None).map_err(word_err)?,
                }
            }
            "remove-generator" => {
                let (name, idx) = head_tail(rest);
                TietzeMove::RemoveGenerator {
                    name: Generator::new(&name).map_err(word_err)?,
                    relator: idx
                        .parse()
                        .map_err(|_| err("expected relator index".into()))?,
                }
            }
            "rename-generator" => {
                let (from, to) = head_tail(rest);
                TietzeMove::RenameGenerator {
                    from: Generator::new(&from).map_err(word_err)?,
                    to: Generator::new(&to).map_err(word_err)?,
                }
            }
            "add-relator" => {
                let mut parts = rest.split(';');
                let relator = parse_word(parts.next().unwrap_or(""), None).map_err(word_err)?;
                let derivation = parts
                    .map(|part| {
                        let (src, tail) = head_tail(part.trim());
                        let (sign, conj) = head_tail(&tail);
                        Ok(DerivationFactor {
                            source: src
                                .parse()
                                .map_err(|_| err("expected source index".into()))?,
                            sign: match sign.as_str() {
                                "+" => Sign::Plus,
                                "-" => Sign::Minus,
                                _ => return Err(err("expected + or -".into())),
                            },
                            conjugator: parse_word(&conj, None).map_err(word_err)?,
                        })
                    })
                    .collect::<Result<Vec<_>, ScriptParseError>>()?;
                TietzeMove::AddRelator {
                    relator,
                    derivation,
                }
            }
            "expect" => {
                let (g, r) = rest
                    .split_once('|')
                    .ok_or_else(|| err("expected `generators | relators`".into()))?;
                let gens = parse_generator_list(g).map_err(word_err)?;
                let rels = r
                    .split(';')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| parse_relator(s, &gens))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(word_err)?;
                let p = Presentation::new(gens, rels).map_err(|e| err(e.to_string()))?;
                out.push(ScriptStep::Expect(p));
                continue;
            }
            other => return Err(err(format!("unknown record `{other}`"))),
        };
        out.push(ScriptStep::Move(step));
    }
    Ok(out)
}
