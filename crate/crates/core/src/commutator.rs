//! Commutator calculus and generalized-torsion certificates.
//!
//! For a word `w = l1 l2 ... lk` whose letters are all `a^e` (one fixed
//! signed generator) or `x^{±1}`, repeated use of
//! `[x, yz] = [x, z] [x, y]^z` gives
//!
//! ```text
//! [x, w] = prod_{i = k..1, li != x^{±1}} [x, a^e]^{l(i+1) ... lk}
//! ```
//!
//! in the free group. If `[x, w] = 1` in a group `G` then a non-empty
//! product of conjugates of `[x, a^e]` is trivial, so `[x, a^e]` is
//! generalized torsion in `G` as soon as it is non-trivial there. A
//! certificate records the free-group identity, how `[x, w]` follows from
//! the relators of `G`, and a finite quotient in which `[x, a^e] != 1`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::Permutation;
use crate::presentation::{
    format_generator_list, parse_generator_list, tietze_apply, verify_hom, DerivationFactor,
    HomWitness, Presentation, TietzeMove,
};
use crate::word::{free_conjugate, parse_word, reduce, Generator, Letter, Sign, Word, WordError};

/// `([x, z], [x, y]^z)`, whose product is `[x, yz]`.
pub fn split_commutator(x: &Word, y: &Word, z: &Word) -> (Word, Word) {
    (Word::commutator(x, z), Word::commutator(x, y).conjugate(z))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugateFactor {
    pub conjugator: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionCertificate {
    pub alphabet: Vec<Generator>,
    /// The claimed generalized torsion element.
    pub base: Word,
    pub factors: Vec<ConjugateFactor>,
    /// Equals the product of the conjugates of `base`.
    pub target: Word,
    pub context: Option<Presentation>,
    /// `target` as a product of conjugates of `context` relators.
    pub derivation: Option<Vec<DerivationFactor>>,
    pub nontriviality: Option<HomWitness>,
}

impl TorsionCertificate {
    /// Product of `conjugator^-1 base conjugator` over the factors, in order.
    pub fn product(&self) -> Word {
        reduce(
            self.factors
                .iter()
                .flat_map(|f| self.base.conjugate(&f.conjugator).letters().to_vec()),
        )
    }

    /// Whether the certificate covers both halves of the argument.
    pub fn is_complete(&self) -> bool {
        self.context.is_some() && self.derivation.is_some() && self.nontriviality.is_some()
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum DecomposeError {
    #[error("the word is empty")]
    EmptyWord,
    #[error("the word only uses {0}, so the commutator is trivial")]
    OnlyX(Generator),
    #[error("letters {0} and {1} both differ from x; one other generator allowed")]
    TooManyGenerators(Letter, Letter),
    #[error("both {0} and its inverse appear")]
    MixedSigns(Letter),
}

/// Writes `[x, w]` as a product of conjugates of `[x, a^e]`, where `a^e`
/// is the one letter of `w` other than `x^{±1}`.
pub fn decompose(x: &Letter, w: &[Letter]) -> Result<TorsionCertificate, DecomposeError> {
    if w.is_empty() {
        return Err(DecomposeError::EmptyWord);
    }
    let mut other: Option<&Letter> = None;
    for l in w.iter().filter(|l| l.gen != x.gen) {
        match other {
            None => other = Some(l),
            Some(o) if o == l => {}
            Some(o) if o.gen == l.gen => return Err(DecomposeError::MixedSigns(o.clone())),
            Some(o) => return Err(DecomposeError::TooManyGenerators(o.clone(), l.clone())),
        }
    }
    let a = other.ok_or_else(|| DecomposeError::OnlyX(x.gen.clone()))?;

    let xw = Word::from_letters([x.clone()]);
    let base = Word::commutator(&xw, &Word::from_letters([a.clone()]));
    let factors = (0..w.len())
        .rev()
        .filter(|&i| w[i].gen != x.gen)
        .map(|i| ConjugateFactor {
            conjugator: reduce(w[i + 1..].iter().cloned()),
        })
        .collect();
    let mut alphabet = vec![x.gen.clone(), a.gen.clone()];
    alphabet.sort();
    Ok(TorsionCertificate {
        alphabet,
        base,
        factors,
        target: Word::commutator(&xw, &reduce(w.iter().cloned())),
        context: None,
        derivation: None,
        nontriviality: None,
    })
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CertificateFault {
    #[error("no factors: the product must be non-empty")]
    NoFactors,
    #[error("the base element is the identity")]
    TrivialBase,
    #[error("`{0}` uses generators outside the alphabet")]
    OutsideAlphabet(Word),
    #[error("product of conjugates is `{got}`, target is `{want}`")]
    ProductMismatch { got: Word, want: Word },
    #[error("target is not derived from the context relators: {0}")]
    BadDerivation(String),
    #[error("a derivation needs a context presentation")]
    DerivationWithoutContext,
    #[error("the nontriviality witness needs a context presentation")]
    WitnessWithoutContext,
    #[error("the witness is not a homomorphism with non-commuting images")]
    BadWitness,
    #[error("the witness does not map the base element away from the identity")]
    BaseTrivialInQuotient,
}

/// Rechecks everything a certificate claims from its recorded data.
pub fn verify_certificate(cert: &TorsionCertificate) -> Result<(), CertificateFault> {
    if cert.factors.is_empty() {
        return Err(CertificateFault::NoFactors);
    }
    if cert.base.is_identity() {
        return Err(CertificateFault::TrivialBase);
    }
    let words = std::iter::once(&cert.base)
        .chain(std::iter::once(&cert.target))
        .chain(cert.factors.iter().map(|f| &f.conjugator));
    for word in words {
        if !word.support().iter().all(|g| cert.alphabet.contains(g)) {
            return Err(CertificateFault::OutsideAlphabet(word.clone()));
        }
    }
    let got = cert.product();
    if got != cert.target {
        return Err(CertificateFault::ProductMismatch {
            got,
            want: cert.target.clone(),
        });
    }
    if let Some(derivation) = &cert.derivation {
        let ctx = cert
            .context
            .as_ref()
            .ok_or(CertificateFault::DerivationWithoutContext)?;
        let mv = TietzeMove::AddRelator {
            relator: cert.target.clone(),
            derivation: derivation.clone(),
        };
        tietze_apply(ctx, &mv).map_err(|e| CertificateFault::BadDerivation(e.to_string()))?;
    }
    if let Some(wit) = &cert.nontriviality {
        let ctx = cert
            .context
            .as_ref()
            .ok_or(CertificateFault::WitnessWithoutContext)?;
        if !verify_hom(ctx, wit) {
            return Err(CertificateFault::BadWitness);
        }
        if wit.evaluate(&cert.base).is_none_or(|p| p.is_identity()) {
            return Err(CertificateFault::BaseTrivialInQuotient);
        }
    }
    Ok(())
}

/// Expresses `[x, w]` as a product of conjugates of relators of `pres`.
///
/// Handles a relator conjugate to `[x, w]^{±1}`, and a relator conjugate to
/// `(x^k w^-1)^{±1}`, for which `[x, w] = r^{x^(k+1)} (r^-1)^{x^k}`.
pub fn derive_commutator_relator(
    pres: &Presentation,
    x: &Generator,
    w: &Word,
) -> Option<Vec<DerivationFactor>> {
    let xw = x.word();
    let comm = Word::commutator(&xw, w);
    let signed = || {
        pres.relators()
            .iter()
            .enumerate()
            .flat_map(|(i, r)| [(i, Sign::Plus, r.clone()), (i, Sign::Minus, r.inverse())])
    };
    for (i, sign, r) in signed() {
        if let Some(g) = free_conjugate(&r, &comm) {
            return Some(vec![DerivationFactor {
                source: i,
                sign,
                conjugator: g,
            }]);
        }
    }
    for (i, sign, r) in signed() {
        let k = r.exponent_sum(x) + w.exponent_sum(x);
        let power = xw.pow(k).multiply(&w.inverse());
        if let Some(g) = free_conjugate(&r, &power) {
            return Some(vec![
                DerivationFactor {
                    source: i,
                    sign,
                    conjugator: g.multiply(&xw.pow(k + 1)),
                },
                DerivationFactor {
                    source: i,
                    sign: sign.flip(),
                    conjugator: g.multiply(&xw.pow(k)),
                },
            ]);
        }
    }
    None
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CertifyError {
    #[error("`{0}` is not a generator of the presentation")]
    UnknownGenerator(Generator),
    #[error("`{0}` uses generators outside the presentation")]
    ForeignWord(Word),
    #[error("no relator is conjugate to [{x}, {w}] or to {x}^k ({w})^-1")]
    NoMatchingRelator { x: Generator, w: Word },
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
}

/// Certificate for `[x, a^e]` from a relator that yields `[x, w] = 1`.
/// The nontriviality witness is left for the quotient search.
pub fn certify_for_presentation(
    pres: &Presentation,
    x: &Generator,
    w: &Word,
) -> Result<TorsionCertificate, CertifyError> {
    if pres.index_of(x).is_none() {
        return Err(CertifyError::UnknownGenerator(x.clone()));
    }
    if !w.support().iter().all(|g| pres.index_of(g).is_some()) {
        return Err(CertifyError::ForeignWord(w.clone()));
    }
    let mut cert = decompose(&Letter::new(x.clone(), Sign::Plus), w.letters())?;
    let derivation =
        derive_commutator_relator(pres, x, w).ok_or_else(|| CertifyError::NoMatchingRelator {
            x: x.clone(),
            w: w.clone(),
        })?;
    cert.alphabet = pres.generators().to_vec();
    cert.context = Some(pres.clone());
    cert.derivation = Some(derivation);
    Ok(cert)
}

pub const CERTIFICATE_VERSION: &str = "gtorsion-certificate/1";

#[derive(Serialize, Deserialize)]
struct CertificateFile {
    version: String,
    alphabet: String,
    base: String,
    target: String,
    factors: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    context: Option<ContextFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    nontriviality: Option<WitnessFile>,
}

#[derive(Serialize, Deserialize)]
struct ContextFile {
    generators: String,
    relators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    derivation: Option<Vec<DerivationFile>>,
}

#[derive(Serialize, Deserialize)]
struct DerivationFile {
    relator: usize,
    sign: i8,
    conjugator: String,
}

#[derive(Serialize, Deserialize)]
struct WitnessFile {
    degree: usize,
    images: Vec<ImageFile>,
    u: String,
    v: String,
}

#[derive(Serialize, Deserialize)]
struct ImageFile {
    generator: String,
    permutation: String,
}

#[derive(Error, Debug)]
pub enum CertificateFormatError {
    #[error("malformed certificate: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported certificate version `{0}`")]
    Version(String),
    #[error("bad word in certificate: {0}")]
    Word(#[from] WordError),
    #[error("bad certificate field: {0}")]
    Field(String),
}

/// Pretty JSON with fields in a fixed order.
pub fn certificate_to_json(cert: &TorsionCertificate) -> String {
    let file = CertificateFile {
        version: CERTIFICATE_VERSION.into(),
        alphabet: format_generator_list(&cert.alphabet),
        base: cert.base.to_string(),
        target: cert.target.to_string(),
        factors: cert
            .factors
            .iter()
            .map(|f| f.conjugator.to_string())
            .collect(),
        context: cert.context.as_ref().map(|p| ContextFile {
            generators: format_generator_list(p.generators()),
            relators: p.relators().iter().map(Word::to_string).collect(),
            derivation: cert.derivation.as_ref().map(|d| {
                d.iter()
                    .map(|f| DerivationFile {
                        relator: f.source,
                        sign: f.sign.value() as i8,
                        conjugator: f.conjugator.to_string(),
                    })
                    .collect()
            }),
        }),
        nontriviality: cert.nontriviality.as_ref().map(|h| WitnessFile {
            degree: h.degree,
            images: h
                .images
                .iter()
                .map(|(g, p)| ImageFile {
                    generator: g.name().into(),
                    permutation: p.to_string(),
                })
                .collect(),
            u: h.u.to_string(),
            v: h.v.to_string(),
        }),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("certificate serializes");
    out.push('\n');
    out
}

pub fn certificate_from_json(text: &str) -> Result<TorsionCertificate, CertificateFormatError> {
    let file: CertificateFile = serde_json::from_str(text)?;
    if file.version != CERTIFICATE_VERSION {
        return Err(CertificateFormatError::Version(file.version));
    }
    let alphabet = parse_generator_list(&file.alphabet)?;
    let word = |s: &str| parse_word(s, Some(&alphabet));
    let base = word(&file.base)?;
    let target = word(&file.target)?;
    let factors = file
        .factors
        .iter()
        .map(|s| word(s).map(|conjugator| ConjugateFactor { conjugator }))
        .collect::<Result<Vec<_>, _>>()?;
    let (context, derivation) = match file.context {
        None => (None, None),
        Some(ctx) => {
            let gens = parse_generator_list(&ctx.generators)?;
            let relators = ctx
                .relators
                .iter()
                .map(|r| parse_word(r, Some(&gens)))
                .collect::<Result<Vec<_>, _>>()?;
            let pres = Presentation::new(gens.clone(), relators)
                .map_err(|e| CertificateFormatError::Field(e.to_string()))?;
            let derivation = ctx
                .derivation
                .map(|d| {
                    d.into_iter()
                        .map(|f| {
                            let sign = match f.sign {
                                1 => Sign::Plus,
                                -1 => Sign::Minus,
                                other => {
                                    return Err(CertificateFormatError::Field(format!(
                                        "sign must be 1 or -1, got {other}"
                                    )))
                                }
                            };
                            Ok(DerivationFactor {
                                source: f.relator,
                                sign,
                                conjugator: parse_word(&f.conjugator, Some(&gens))?,
                            })
                        })
                        .collect::<Result<Vec<_>, _>>()
                })
                .transpose()?;
            (Some(pres), derivation)
        }
    };
    let nontriviality = file
        .nontriviality
        .map(|h| {
            let images = h
                .images
                .iter()
                .map(|img| {
                    let g = Generator::new(&img.generator)?;
                    let p: Permutation =
                        img.permutation
                            .parse()
                            .map_err(|e: crate::perm::PermError| {
                                CertificateFormatError::Field(e.to_string())
                            })?;
                    Ok((g, p))
                })
                .collect::<Result<Vec<_>, CertificateFormatError>>()?;
            Ok::<_, CertificateFormatError>(HomWitness {
                degree: h.degree,
                images,
                u: word(&h.u)?,
                v: word(&h.v)?,
            })
        })
        .transpose()?;
    Ok(TorsionCertificate {
        alphabet,
        base,
        factors,
        target,
        context,
        derivation,
        nontriviality,
    })
}
