//! Laurent polynomials, Fox calculus, and Alexander polynomials of
//! two-generator one-relator knot groups.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::presentation::{abelianization, smith_normal_form, AbelianInvariants, Presentation};
use crate::word::{Generator, Sign, Word};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum AlexanderError {
    #[error("abelianization is {0}, not Z")]
    NotInfiniteCyclic(AbelianInvariants),
    #[error("need 2 generators and 1 relator, got {gens} and {rels}")]
    Shape { gens: usize, rels: usize },
    #[error("Fox identity fails: sum of derivatives times (t^w - 1) is {0}")]
    FoxIdentity(LaurentPoly),
    #[error("{num} is not divisible by {den}")]
    InexactDivision { num: LaurentPoly, den: LaurentPoly },
    #[error("the zero polynomial has no root count")]
    ZeroPolynomial,
    #[error("cannot parse polynomial `{0}`")]
    Parse(String),
    #[error("parameter n = {0} is negative")]
    Negative(i64),
}

/// Integer Laurent polynomial in `t`; no zero coefficients are stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly(BTreeMap<i64, i64>);

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(1, 0)
    }

    pub fn monomial(coeff: i64, exp: i64) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(coeff, exp);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (c, e) in terms {
            p.add_term(c, e);
        }
        p
    }

    fn add_term(&mut self, coeff: i64, exp: i64) {
        if coeff == 0 {
            return;
        }
        let c = self.0.entry(exp).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.0.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.0.get(&exp).copied().unwrap_or(0)
    }

    /// `(exponent, coefficient)` pairs, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.0.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.0.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.0.keys().next_back().copied()
    }

    pub fn eval_at_one(&self) -> i64 {
        self.0.values().sum()
    }

    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly(self.0.iter().map(|(&e, &c)| (e + k, c)).collect())
    }

    /// `p(1/t)`.
    pub fn reciprocal(&self) -> LaurentPoly {
        LaurentPoly(self.0.iter().map(|(&e, &c)| (-e, c)).collect())
    }

    /// The associate `±t^k p` with lowest exponent 0 and positive constant
    /// term.
    pub fn normalize(&self) -> LaurentPoly {
        match self.min_exp() {
            None => LaurentPoly::zero(),
            Some(lo) => {
                let p = self.shift(-lo);
                if p.coeff(0) < 0 {
                    -p
                } else {
                    p
                }
            }
        }
    }

    pub fn equal_up_to_units(&self, other: &LaurentPoly) -> bool {
        self.normalize() == other.normalize()
    }

    /// `t^k - 1`.
    pub fn t_power_minus_one(k: i64) -> LaurentPoly {
        LaurentPoly::from_terms([(1, k), (-1, 0)])
    }

    /// Exact quotient in `Z[t, 1/t]`, or `None` if `other` does not divide.
    pub fn div_exact(&self, other: &LaurentPoly) -> Option<LaurentPoly> {
        let (b_lo, b_hi) = (other.min_exp()?, other.max_exp()?);
        let lead = other.coeff(b_hi);
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some(hi) = rem.max_exp() {
            let lo = rem.min_exp().expect("non-zero");
            if hi - lo < b_hi - b_lo {
                return None;
            }
            let c = rem.coeff(hi);
            if c % lead != 0 {
                return None;
            }
            let term = LaurentPoly::monomial(c / lead, hi - b_hi);
            rem = &rem - &(&term * other);
            quot = &quot + &term;
        }
        Some(quot)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(c, e);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs.clone())
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(c1 * c2, e1 + e2);
            }
        }
        out
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly(self.0.into_iter().map(|(e, c)| (e, -c)).collect())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl fmt::Display for LaurentPoly {
    /// Descending exponents: `t^8 - t^7 + t^5 - 2t^-1 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&e, &c)) in self.0.iter().rev().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            match (i, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                _ => write!(f, " {sign} ")?,
            }
            let a = c.abs();
            match e {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    if e == 1 {
                        f.write_str("t")?;
                    } else {
                        write!(f, "t^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = AlexanderError;
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || AlexanderError::Parse(text.to_string());
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad());
        }
        // Split into signed terms; a '-' right after '^' belongs to the exponent.
        let mut terms: Vec<String> = Vec::new();
        let mut prev = None;
        for ch in s.chars() {
            if (ch == '+' || ch == '-') && prev != Some('^') {
                terms.push(ch.to_string());
            } else {
                match terms.last_mut() {
                    Some(t) => t.push(ch),
                    None => terms.push(ch.to_string()),
                }
            }
            prev = Some(ch);
        }
        let mut p = LaurentPoly::zero();
        for term in terms {
            let (neg, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term.as_str()),
            };
            if body.is_empty() {
                return Err(bad());
            }
            let (coeff, exp) = match body.find('t') {
                None => (body.parse::<i64>().map_err(|_| bad())?, 0),
                Some(pos) => {
                    let c = match &body[..pos] {
                        "" => 1,
                        c => c.parse::<i64>().map_err(|_| bad())?,
                    };
                    let e = match &body[pos + 1..] {
                        "" => 1,
                        rest => rest
                            .strip_prefix('^')
                            .and_then(|x| x.parse::<i64>().ok())
                            .ok_or_else(bad)?,
                    };
                    (c, e)
                }
            };
            p.add_term(if neg { -coeff } else { coeff }, exp);
        }
        Ok(p)
    }
}

/// Finite integer combination of reduced words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingElement(BTreeMap<Word, i64>);

impl GroupRingElement {
    pub fn zero() -> Self {
        GroupRingElement::default()
    }

    pub fn add_term(&mut self, coeff: i64, w: Word) {
        if coeff == 0 {
            return;
        }
        let c = self.0.entry(w.clone()).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.0.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.0.iter().map(|(w, &c)| (w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(c, w.clone());
        }
        out
    }

    /// `u * self`.
    pub fn left_mul(&self, u: &Word) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (w, c) in self.terms() {
            out.add_term(c, u.multiply(w));
        }
        out
    }

    /// Image under `g -> t^weight(g)`.
    pub fn evaluate(&self, weights: &WeightMap) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().map(|(w, c)| (c, weights.degree(w))))
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms().map(|(w, c)| format!("{c}*({w})")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Fox derivative of `u` with respect to `g`.
pub fn fox_derivative(u: &Word, g: &Generator) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let mut prefix = Word::identity();
    for l in u.letters() {
        let next = prefix.multiply(&Word::from_letters([l.clone()]));
        if &l.gen == g {
            match l.sign {
                Sign::Plus => out.add_term(1, prefix.clone()),
                Sign::Minus => out.add_term(-1, next.clone()),
            }
        }
        prefix = next;
    }
    out
}

/// Exponent of `t` assigned to each generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMap(pub Vec<(Generator, i64)>);

impl WeightMap {
    pub fn weight(&self, g: &Generator) -> i64 {
        self.0.iter().find(|(h, _)| h == g).map_or(0, |(_, w)| *w)
    }

    pub fn degree(&self, w: &Word) -> i64 {
        self.0.iter().map(|(g, k)| k * w.exponent_sum(g)).sum()
    }
}

/// The map onto `Z`, read from the Smith form kernel; the first non-zero
/// weight is positive.
pub fn abelianize_weights(pres: &Presentation) -> Result<WeightMap, AlexanderError> {
    let inv = abelianization(pres);
    if !inv.is_infinite_cyclic() {
        return Err(AlexanderError::NotInfiniteCyclic(inv));
    }
    let snf = smith_normal_form(&pres.exponent_matrix(), pres.generators().len());
    let mut kernel = snf.kernel_basis().pop().expect("rank one kernel");
    let g = kernel.iter().fold(0, |acc, &x| acc.gcd(&x));
    let first = kernel.iter().copied().find(|&x| x != 0).unwrap_or(1);
    let scale = if first < 0 { -g } else { g };
    for x in kernel.iter_mut() {
        *x /= scale;
    }
    Ok(WeightMap(
        pres.generators().iter().cloned().zip(kernel).collect(),
    ))
}

/// Normalized Alexander polynomial of a two-generator one-relator
/// presentation with abelianization `Z`.
pub fn alexander_poly(pres: &Presentation) -> Result<LaurentPoly, AlexanderError> {
    let (gens, rels) = (pres.generators(), pres.relators());
    if gens.len() != 2 || rels.len() != 1 {
        return Err(AlexanderError::Shape {
            gens: gens.len(),
            rels: rels.len(),
        });
    }
    let weights = abelianize_weights(pres)?;
    let r = &rels[0];
    let d: Vec<LaurentPoly> = gens
        .iter()
        .map(|g| fox_derivative(r, g).evaluate(&weights))
        .collect();
    let w: Vec<i64> = gens.iter().map(|g| weights.weight(g)).collect();
    let identity = &(&d[0] * &LaurentPoly::t_power_minus_one(w[0]))
        + &(&d[1] * &LaurentPoly::t_power_minus_one(w[1]));
    if !identity.is_zero() {
        return Err(AlexanderError::FoxIdentity(identity));
    }
    // Divide the derivative in one generator by t^w - 1 of the other.
    let (i, j) = if w[1] != 0 { (0, 1) } else { (1, 0) };
    let num = &d[i] * &LaurentPoly::t_power_minus_one(1);
    let den = LaurentPoly::t_power_minus_one(w[j]);
    let delta = num
        .div_exact(&den)
        .ok_or(AlexanderError::InexactDivision { num, den })?;
    Ok(delta.normalize())
}

/// `t^(2n+8) - t^(2n+7) + (t^(2n+5) - t^(2n+4) + ... + t^3) - t + 1`.
pub fn pretzel_delta(n: i64) -> Result<LaurentPoly, AlexanderError> {
    if n < 0 {
        return Err(AlexanderError::Negative(n));
    }
    let top = 2 * n + 5;
    let block = (3..=top).map(|e| (if (top - e) % 2 == 0 { 1 } else { -1 }, e));
    Ok(LaurentPoly::from_terms(
        [(1, 2 * n + 8), (-1, 2 * n + 7), (-1, 1), (1, 0)]
            .into_iter()
            .chain(block),
    ))
}

/// Dense big-integer coefficients, index = exponent.
type Dense = Vec<BigInt>;

fn trim(mut p: Dense) -> Dense {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn primitive(p: Dense) -> Dense {
    let g = p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() || g.is_one() {
        p
    } else {
        p.into_iter().map(|c| c / &g).collect()
    }
}

fn derivative(p: &Dense) -> Dense {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect(),
    )
}

/// Pseudo-remainder of `a` by `b`, scaled by a positive factor so its sign
/// matches the true remainder.
fn signed_prem(a: &Dense, b: &Dense) -> Dense {
    let lead = b.last().expect("non-zero divisor").clone();
    let mut r = a.clone();
    let db = b.len() - 1;
    let mut steps = 0u32;
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let c = r.last().expect("non-empty").clone();
        r = r.iter().map(|x| x * &lead).collect();
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &c * bc;
        }
        r = trim(r);
        steps += 1;
    }
    if lead.is_negative() && steps % 2 == 1 {
        r = r.into_iter().map(|c| -c).collect();
    }
    r
}

fn sign_changes(signs: impl IntoIterator<Item = i8>) -> usize {
    let mut last = 0;
    let mut count = 0;
    for s in signs.into_iter().filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn sign(c: &BigInt) -> i8 {
    if c.is_positive() {
        1
    } else if c.is_negative() {
        -1
    } else {
        0
    }
}

/// Number of distinct roots in `(0, inf)`, by Sturm's theorem.
pub fn count_positive_roots(p: &LaurentPoly) -> Result<usize, AlexanderError> {
    let lo = p.min_exp().ok_or(AlexanderError::ZeroPolynomial)?;
    let hi = p.max_exp().expect("non-zero");
    let dense: Dense = (lo..=hi).map(|e| BigInt::from(p.coeff(e))).collect();
    let mut seq = vec![primitive(dense.clone())];
    let d = derivative(&dense);
    if !d.is_empty() {
        seq.push(primitive(d));
    }
    while seq.len() >= 2 {
        let n = seq.len();
        let r = signed_prem(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(primitive(r.into_iter().map(|c| -c).collect()));
    }
    let at_zero = sign_changes(seq.iter().map(|q| sign(&q[0])));
    let at_inf = sign_changes(seq.iter().map(|q| sign(q.last().expect("non-zero"))));
    Ok(at_zero - at_inf)
}

pub fn has_positive_real_root(p: &LaurentPoly) -> Result<bool, AlexanderError> {
    Ok(count_positive_roots(p)? > 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::preset_pretzel_presentation;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn gen(s: &str) -> Generator {
        Generator::new(s).unwrap()
    }

    #[test]
    fn text_round_trip() {
        for text in [
            "t^8 - t^7 + t^5 - t^4 + t^3 - t + 1",
            "-2t^3 + t^-2",
            "0",
            "5",
            "-t",
        ] {
            assert_eq!(lp(text).to_string(), text);
        }
        assert!("t^".parse::<LaurentPoly>().is_err());
        assert!("x + 1".parse::<LaurentPoly>().is_err());
        assert!("1 +".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn division() {
        let num = lp("t^3 + 1");
        assert_eq!(num.div_exact(&lp("t + 1")), Some(lp("t^2 - t + 1")));
        assert_eq!(num.div_exact(&lp("t - 1")), None);
        assert_eq!(lp("1 - t^-2").div_exact(&lp("t^2 - 1")), Some(lp("t^-2")));
        assert_eq!(lp("t^-3 - 2").normalize(), lp("-2t^3 + 1"));
    }

    #[test]
    fn fox_rules() {
        let (a, b) = (gen("a"), gen("b"));
        let mut one = GroupRingElement::zero();
        one.add_term(1, Word::identity());
        assert_eq!(fox_derivative(&w("a b"), &a), one);
        let mut inv = GroupRingElement::zero();
        inv.add_term(-1, w("a^-1"));
        assert_eq!(fox_derivative(&w("a^-1"), &a), inv);
        let mut sq = one.clone();
        sq.add_term(1, w("a"));
        assert_eq!(fox_derivative(&w("a^2"), &a), sq);
        assert!(fox_derivative(&w("a^2"), &b).is_zero());
    }

    #[test]
    fn trefoil() {
        let pres = Presentation::from_text(&["a", "b"], &["a^2 b^-3"]).unwrap();
        let weights = abelianize_weights(&pres).unwrap();
        assert_eq!(
            (weights.weight(&gen("a")), weights.weight(&gen("b"))),
            (3, 2)
        );
        assert_eq!(alexander_poly(&pres).unwrap(), lp("t^2 - t + 1"));
    }

    #[test]
    fn pretzel_weights_and_delta() {
        for s in 0..=3 {
            let pres = preset_pretzel_presentation(s).unwrap();
            let weights = abelianize_weights(&pres).unwrap();
            assert_eq!(weights.weight(&gen("b")), 2);
            assert_eq!(weights.weight(&gen("y")), 2 * s + 5);
            assert_eq!(alexander_poly(&pres).unwrap(), pretzel_delta(s).unwrap());
        }
        assert_eq!(
            pretzel_delta(1).unwrap(),
            lp("t^10 - t^9 + t^7 - t^6 + t^5 - t^4 + t^3 - t + 1")
        );
    }

    #[test]
    fn rejects_bad_shapes() {
        let pres = Presentation::from_text(&["a", "b"], &["[a,b]"]).unwrap();
        assert!(matches!(
            abelianize_weights(&pres),
            Err(AlexanderError::NotInfiniteCyclic(_))
        ));
        let pres = Presentation::from_text(&["a"], &[]).unwrap();
        assert!(matches!(
            alexander_poly(&pres),
            Err(AlexanderError::Shape { .. })
        ));
    }

    #[test]
    fn sturm_counts() {
        assert!(has_positive_real_root(&lp("t - 1")).unwrap());
        assert!(!has_positive_real_root(&lp("t^2 + 1")).unwrap());
        assert_eq!(
            count_positive_roots(&lp("t^3 - 6t^2 + 11t - 6")).unwrap(),
            3
        );
        assert_eq!(count_positive_roots(&lp("t^2 - 2t + 1")).unwrap(), 1);
        assert_eq!(count_positive_roots(&lp("t^2 + 3t + 2")).unwrap(), 0);
        assert_eq!(count_positive_roots(&lp("-t^3 + 2t^-1")).unwrap(), 1);
        assert_eq!(
            has_positive_real_root(&LaurentPoly::zero()),
            Err(AlexanderError::ZeroPolynomial)
        );
        assert!(!has_positive_real_root(&lp("7")).unwrap());
    }
}
