//! Braid words, closures, and positive-braid genus.
//!
//! Text form: `@5 s1 s2 s3^-1`, where `si` is the i-th standard generator
//! and `@n` gives the strand count. Without `@n` the strand count is one
//! more than the largest index used.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::perm::Permutation;
use crate::word::Sign;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("a braid needs at least 2 strands, got {0}")]
    TooFewStrands(usize),
    #[error("generator s{index} out of range for {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },
    #[error("cannot parse braid token `{0}`")]
    Parse(String),
    #[error("braid word has a negative crossing")]
    NotPositive,
    #[error("closure has {0} components, not a knot")]
    NotAKnot(usize),
    #[error("parameter {name} = {value} is below its minimum {min}")]
    OutOfRange {
        name: &'static str,
        value: i64,
        min: i64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Braid {
    strands: usize,
    word: Vec<(usize, Sign)>,
}

impl Braid {
    /// Indices are one-based, `1 <= i < strands`.
    pub fn new(strands: usize, word: Vec<(usize, Sign)>) -> Result<Self, BraidError> {
        if strands < 2 {
            return Err(BraidError::TooFewStrands(strands));
        }
        if let Some(&(index, _)) = word.iter().find(|(i, _)| *i == 0 || *i >= strands) {
            return Err(BraidError::IndexOutOfRange { index, strands });
        }
        Ok(Braid { strands, word })
    }

    pub fn positive(
        strands: usize,
        indices: impl IntoIterator<Item = usize>,
    ) -> Result<Self, BraidError> {
        Braid::new(
            strands,
            indices.into_iter().map(|i| (i, Sign::Plus)).collect(),
        )
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn word(&self) -> &[(usize, Sign)] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn exponent_sum(&self) -> i64 {
        self.word.iter().map(|(_, s)| s.value()).sum()
    }

    pub fn is_positive(&self) -> bool {
        self.word.iter().all(|(_, s)| *s == Sign::Plus)
    }

    /// Concatenation on the same number of strands.
    pub fn then(&self, other: &Braid) -> Braid {
        assert_eq!(self.strands, other.strands, "strand count mismatch");
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        Braid {
            strands: self.strands,
            word,
        }
    }
}

pub fn braid_permutation(b: &Braid) -> Permutation {
    b.word
        .iter()
        .fold(Permutation::identity(b.strands), |acc, &(i, _)| {
            acc.then(&Permutation::transposition(b.strands, i, i + 1))
        })
}

pub fn closure_components(b: &Braid) -> usize {
    braid_permutation(b).cycle_count()
}

/// `(1 - strands + length) / 2` for a positive braid closing to a knot.
pub fn positive_braid_genus(b: &Braid) -> Result<i64, BraidError> {
    if !b.is_positive() {
        return Err(BraidError::NotPositive);
    }
    let comps = closure_components(b);
    if comps != 1 {
        return Err(BraidError::NotAKnot(comps));
    }
    let twice = 1 - b.strands as i64 + b.length() as i64;
    debug_assert!(twice >= 0 && twice % 2 == 0);
    Ok(twice / 2)
}

/// Linking number of the closure with the braid axis, strands oriented
/// coherently.
pub fn axis_linking_number(b: &Braid) -> i64 {
    b.strands as i64
}

fn at_least(name: &'static str, value: i64, min: i64) -> Result<(), BraidError> {
    if value < min {
        Err(BraidError::OutOfRange { name, value, min })
    } else {
        Ok(())
    }
}

/// `(s1 ... s_{2q+n+1})(s1 ... s_{2q})` on `2q+n+2` strands.
pub fn preset_kq_braid(q: i64, n: i64) -> Result<Braid, BraidError> {
    at_least("q", q, 1)?;
    at_least("n", n, 1)?;
    let (q, n) = (q as usize, n as usize);
    Braid::positive(2 * q + n + 2, (1..=2 * q + n + 1).chain(1..=2 * q))
}

/// `(s1 ... s_{p(m+1)})^(pm+1) s1^(2s)` on `p(m+1)+1` strands.
pub fn preset_twisted_torus_braid(p: i64, m: i64, s: i64) -> Result<Braid, BraidError> {
    at_least("p", p, 2)?;
    at_least("m", m, 1)?;
    at_least("s", s, 0)?;
    let r = (p * (m + 1)) as usize;
    let torus = (0..p * m + 1).flat_map(|_| 1..=r);
    let twist = std::iter::repeat_n(1, 2 * s as usize);
    Braid::positive(r + 1, torus.chain(twist))
}

impl fmt::Display for Braid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "@{}", self.strands)?;
        let mut i = 0;
        while i < self.word.len() {
            let run = self.word[i..]
                .iter()
                .take_while(|l| **l == self.word[i])
                .count();
            let (idx, sign) = self.word[i];
            let exp = run as i64 * sign.value();
            if exp == 1 {
                write!(f, " s{idx}")?;
            } else {
                write!(f, " s{idx}^{exp}")?;
            }
            i += run;
        }
        Ok(())
    }
}

impl FromStr for Braid {
    type Err = BraidError;
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut strands = None;
        let mut word = Vec::new();
        for tok in text.split_whitespace() {
            let bad = || BraidError::Parse(tok.to_string());
            if let Some(n) = tok.strip_prefix('@') {
                if strands.is_some() || !word.is_empty() {
                    return Err(bad());
                }
                strands = Some(n.parse::<usize>().map_err(|_| bad())?);
                continue;
            }
            let body = tok.strip_prefix('s').ok_or_else(bad)?;
            let (idx, exp) = match body.split_once('^') {
                Some((i, e)) => (i, e.parse::<i64>().map_err(|_| bad())?),
                None => (body, 1),
            };
            let idx: usize = idx.parse().map_err(|_| bad())?;
            let sign = if exp < 0 { Sign::Minus } else { Sign::Plus };
            word.extend(std::iter::repeat_n(
                (idx, sign),
                exp.unsigned_abs() as usize,
            ));
        }
        let strands =
            strands.unwrap_or_else(|| word.iter().map(|(i, _)| i + 1).max().unwrap_or(2).max(2));
        Braid::new(strands, word)
    }
}
