//! Brute-force homomorphisms into symmetric groups.
//!
//! A homomorphism under which the images of `u` and `v` fail to commute
//! proves that `[u, v]` is non-trivial in the presented group.
//!
//! Enumeration order is fixed: degrees ascending from 2; within a degree
//! generator images run through one-line lexicographic order, nested in
//! presentation order, with the first generator restricted to the
//! lexicographically least permutation of each cycle type. Any homomorphism
//! is conjugate to one with such a first image, so existence is unaffected.

use std::collections::BTreeSet;

use thiserror::Error;

use super::Presentation;
use crate::perm::Permutation;
use crate::word::{Generator, Sign, Word};

/// Largest generator count the search accepts.
pub const MAX_SEARCH_GENERATORS: usize = 3;

/// Environment variable overriding [`default_max_degree`].
pub const MAX_DEGREE_ENV: &str = "GTORSION_MAX_DEGREE";

/// 7 unless overridden through [`MAX_DEGREE_ENV`].
pub fn default_max_degree() -> usize {
    std::env::var(MAX_DEGREE_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&d| d >= 2)
        .unwrap_or(7)
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum QuotientError {
    #[error("max degree must be at least 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("search is limited to {MAX_SEARCH_GENERATORS} generators, presentation has {0}")]
    TooManyGenerators(usize),
    #[error("word `{0}` uses generators outside the presentation")]
    ForeignWord(Word),
}

/// Permutation images of the generators, plus the pair of words whose
/// images are claimed not to commute.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomWitness {
    pub degree: usize,
    pub images: Vec<(Generator, Permutation)>,
    pub u: Word,
    pub v: Word,
}

impl HomWitness {
    pub fn image_of_generator(&self, g: &Generator) -> Option<&Permutation> {
        self.images.iter().find(|(h, _)| h == g).map(|(_, p)| p)
    }

    /// Image of `w`, or `None` if some letter has no image.
    pub fn evaluate(&self, w: &Word) -> Option<Permutation> {
        let mut acc = Permutation::identity(self.degree);
        for l in w.letters() {
            let p = self.image_of_generator(&l.gen)?;
            if p.degree() != self.degree {
                return None;
            }
            acc = match l.sign {
                Sign::Plus => acc.then(p),
                Sign::Minus => acc.then(&p.inverse()),
            };
        }
        Some(acc)
    }

    pub fn describe(&self) -> String {
        format!("images of `{}` and `{}` do not commute", self.u, self.v)
    }
}

/// Checks every relator maps to the identity and that the images of `u`
/// and `v` do not commute.
pub fn verify_hom(pres: &Presentation, wit: &HomWitness) -> bool {
    let declared: BTreeSet<&Generator> = wit.images.iter().map(|(g, _)| g).collect();
    if declared.len() != wit.images.len() || pres.generators().iter().any(|g| !declared.contains(g))
    {
        return false;
    }
    let relators_hold = pres
        .relators()
        .iter()
        .all(|r| wit.evaluate(r).is_some_and(|p| p.is_identity()));
    if !relators_hold {
        return false;
    }
    match (wit.evaluate(&wit.u), wit.evaluate(&wit.v)) {
        (Some(pu), Some(pv)) => pu.then(&pv) != pv.then(&pu),
        _ => false,
    }
}

/// Encoded letter: generator index and whether it is inverted.
type Code = (usize, bool);

fn encode(pres: &Presentation, w: &Word) -> Option<Vec<Code>> {
    w.letters()
        .iter()
        .map(|l| pres.index_of(&l.gen).map(|i| (i, l.sign == Sign::Minus)))
        .collect()
}

struct Search<'a> {
    degree: usize,
    gens: usize,
    /// Relators grouped by the largest generator index they mention.
    relators_by_last: Vec<Vec<Vec<Code>>>,
    u: &'a [Code],
    v: &'a [Code],
    /// Forward and inverse tables per generator.
    tables: Vec<(Vec<usize>, Vec<usize>)>,
    chosen: Vec<Permutation>,
}

impl Search<'_> {
    fn holds(&self, rel: &[Code]) -> bool {
        (0..self.degree).all(|x| {
            let y = rel.iter().fold(x, |y, &(g, inv)| {
                let (fwd, bwd) = &self.tables[g];
                if inv {
                    bwd[y]
                } else {
                    fwd[y]
                }
            });
            y == x
        })
    }

    fn image(&self, w: &[Code]) -> Vec<usize> {
        (0..self.degree)
            .map(|x| {
                w.iter().fold(x, |y, &(g, inv)| {
                    let (fwd, bwd) = &self.tables[g];
                    if inv {
                        bwd[y]
                    } else {
                        fwd[y]
                    }
                })
            })
            .collect()
    }

    fn non_commuting(&self) -> bool {
        let pu = self.image(self.u);
        let pv = self.image(self.v);
        (0..self.degree).any(|x| pv[pu[x]] != pu[pv[x]])
    }

    fn assign(&mut self, g: usize, p: &Permutation) {
        let fwd = p.images().to_vec();
        let bwd = p.inverse().images().to_vec();
        self.tables[g] = (fwd, bwd);
    }

    fn run(&mut self, g: usize, candidates: &[Permutation], first: &[Permutation]) -> bool {
        if g == self.gens {
            return self.non_commuting();
        }
        let pool = if g == 0 { first } else { candidates };
        for p in pool {
            self.assign(g, p);
            if self.relators_by_last[g].iter().all(|r| self.holds(r)) {
                self.chosen.push(p.clone());
                if self.run(g + 1, candidates, first) {
                    return true;
                }
                self.chosen.pop();
            }
        }
        false
    }
}

/// First homomorphism (under the fixed order) into `S_d`, `2 <= d <=
/// max_degree`, whose images of `u` and `v` do not commute.
pub fn find_nonabelian_quotient(
    pres: &Presentation,
    u: &Word,
    v: &Word,
    max_degree: usize,
) -> Result<Option<HomWitness>, QuotientError> {
    if max_degree < 2 {
        return Err(QuotientError::DegreeTooSmall(max_degree));
    }
    let gens = pres.generators().len();
    if gens > MAX_SEARCH_GENERATORS {
        return Err(QuotientError::TooManyGenerators(gens));
    }
    let cu = encode(pres, u).ok_or_else(|| QuotientError::ForeignWord(u.clone()))?;
    let cv = encode(pres, v).ok_or_else(|| QuotientError::ForeignWord(v.clone()))?;
    if gens == 0 {
        return Ok(None);
    }
    let mut relators_by_last = vec![Vec::new(); gens];
    for r in pres.relators() {
        let code = encode(pres, r).expect("relators use declared generators");
        // Empty relators impose nothing.
        if let Some(last) = code.iter().map(|&(g, _)| g).max() {
            relators_by_last[last].push(code);
        }
    }

    for degree in 2..=max_degree {
        let candidates: Vec<Permutation> = Permutation::all(degree).collect();
        let mut seen_types = BTreeSet::new();
        let first: Vec<Permutation> = candidates
            .iter()
            .filter(|p| seen_types.insert(p.cycle_type()))
            .cloned()
            .collect();
        let mut search = Search {
            degree,
            gens,
            relators_by_last: relators_by_last.clone(),
            u: &cu,
            v: &cv,
            tables: vec![(Vec::new(), Vec::new()); gens],
            chosen: Vec::new(),
        };
        if search.run(0, &candidates, &first) {
            let images = pres
                .generators()
                .iter()
                .cloned()
                .zip(search.chosen)
                .collect();
            return Ok(Some(HomWitness {
                degree,
                images,
                u: u.clone(),
                v: v.clone(),
            }));
        }
    }
    Ok(None)
}
