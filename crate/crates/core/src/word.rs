//! Free-group words over named generators.
//!
//! A [`Word`] is always stored freely reduced, so equality of words is
//! equality of the elements they represent in the free group. Power
//! notation only exists in the text form; internally every letter is a
//! single generator with a sign.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

/// Errors raised while building or parsing words.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown generator `{name}` at byte {pos}")]
    UnknownGenerator { name: String, pos: usize },
    #[error("zero-length identifier at byte {pos}")]
    EmptyIdentifier { pos: usize },
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
}

/// A named free generator. Names start with an ASCII letter followed by
/// letters, digits or underscores.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator(Arc<str>);

impl Generator {
    pub fn new(name: &str) -> Result<Self, WordError> {
        if name.is_empty() {
            return Err(WordError::EmptyIdentifier { pos: 0 });
        }
        let mut chars = name.chars();
        let head = chars.next().unwrap();
        if !head.is_ascii_alphabetic() || !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(WordError::InvalidName(name.to_string()));
        }
        Ok(Generator(Arc::from(name)))
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    /// The word consisting of this generator alone.
    pub fn word(&self) -> Word {
        Word(vec![Letter::new(self.clone(), Sign::Plus)])
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for Generator {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Generator::new(s)
    }
}

/// Builds a generator list from names, rejecting duplicates.
pub fn generators(names: &[&str]) -> Result<Vec<Generator>, WordError> {
    let mut out: Vec<Generator> = Vec::with_capacity(names.len());
    for name in names {
        let g = Generator::new(name)?;
        if out.contains(&g) {
            return Err(WordError::InvalidName(format!(
                "duplicate generator {name}"
            )));
        }
        out.push(g);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// A generator raised to the power +1 or -1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: Generator,
    pub sign: Sign,
}

impl Letter {
    pub fn new(gen: Generator, sign: Sign) -> Self {
        Letter { gen, sign }
    }

    pub fn inverse(&self) -> Letter {
        Letter::new(self.gen.clone(), self.sign.flip())
    }

    pub fn is_inverse_of(&self, other: &Letter) -> bool {
        self.gen == other.gen && self.sign != other.sign
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Plus => write!(f, "{}", self.gen),
            Sign::Minus => write!(f, "{}^-1", self.gen),
        }
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

/// Freely reduces a raw letter sequence.
pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
    let mut stack: Vec<Letter> = Vec::new();
    for l in letters {
        if stack.last().is_some_and(|top| top.is_inverse_of(&l)) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    Word(stack)
}

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// Reduces `letters`; alias of [`reduce`].
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        reduce(letters)
    }

    /// `gen^exp` as a word.
    pub fn power_of(gen: &Generator, exp: i64) -> Self {
        let sign = if exp < 0 { Sign::Minus } else { Sign::Plus };
        Word(vec![
            Letter::new(gen.clone(), sign);
            exp.unsigned_abs() as usize
        ])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn multiply(&self, other: &Word) -> Word {
        // Only the seam between the two reduced words can cancel.
        let mut left = self.0.len();
        let mut right = 0;
        while left > 0 && right < other.0.len() && self.0[left - 1].is_inverse_of(&other.0[right]) {
            left -= 1;
            right += 1;
        }
        let mut out = Vec::with_capacity(left + other.0.len() - right);
        out.extend_from_slice(&self.0[..left]);
        out.extend_from_slice(&other.0[right..]);
        Word(out)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(Letter::inverse).collect())
    }

    pub fn pow(&self, exp: i64) -> Word {
        let base = if exp < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut out = Word::identity();
        for _ in 0..exp.unsigned_abs() {
            out = out.multiply(&base);
        }
        out
    }

    /// `g^-1 self g`.
    pub fn conjugate(&self, g: &Word) -> Word {
        g.inverse().multiply(self).multiply(g)
    }

    /// `[x, y] = x^-1 y^-1 x y`.
    pub fn commutator(x: &Word, y: &Word) -> Word {
        x.inverse().multiply(&y.inverse()).multiply(x).multiply(y)
    }

    /// Splits the word as `conjugator * core * conjugator^-1` with `core`
    /// cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let n = self.0.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.0[k].is_inverse_of(&self.0[n - 1 - k]) {
            k += 1;
        }
        (Word(self.0[k..n - k].to_vec()), Word(self.0[..k].to_vec()))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(a), Some(b)) => self.0.len() == 1 || !a.is_inverse_of(b),
            _ => true,
        }
    }

    /// Signed number of occurrences of `gen`.
    pub fn exponent_sum(&self, gen: &Generator) -> i64 {
        self.0
            .iter()
            .filter(|l| &l.gen == gen)
            .map(|l| l.sign.value())
            .sum()
    }

    pub fn contains_generator(&self, gen: &Generator) -> bool {
        self.0.iter().any(|l| &l.gen == gen)
    }

    /// Generators that occur in the word.
    pub fn support(&self) -> BTreeSet<Generator> {
        self.0.iter().map(|l| l.gen.clone()).collect()
    }

    /// The cyclic rotation starting at letter `k`, reduced.
    pub fn rotate(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return Word::identity();
        }
        let k = k % self.0.len();
        reduce(self.0[k..].iter().chain(self.0[..k].iter()).cloned())
    }

    /// The subword of letters `range`.
    pub fn slice(&self, range: std::ops::Range<usize>) -> Word {
        // Contiguous subwords of reduced words are reduced.
        Word(self.0[range].to_vec())
    }

    /// Replaces every letter `g^±1` by `image(g)^±1`, reducing the result.
    pub fn substitute<F>(&self, mut image: F) -> Word
    where
        F: FnMut(&Generator) -> Word,
    {
        let mut out = Word::identity();
        for l in &self.0 {
            let w = image(&l.gen);
            out = match l.sign {
                Sign::Plus => out.multiply(&w),
                Sign::Minus => out.multiply(&w.inverse()),
            };
        }
        out
    }

    /// Canonical representative of the conjugacy class of the word or its
    /// inverse: the lexicographically least rotation of either cyclic core.
    pub fn cyclic_normal_form(&self) -> Word {
        let (core, _) = self.cyclic_reduce();
        let inv = core.inverse();
        let n = core.len();
        (0..n.max(1))
            .flat_map(|k| [rotate_raw(&core, k), rotate_raw(&inv, k)])
            .min()
            .unwrap_or_default()
    }
}

fn rotate_raw(w: &Word, k: usize) -> Word {
    if w.0.is_empty() {
        return Word::identity();
    }
    let mut v = w.0[k..].to_vec();
    v.extend_from_slice(&w.0[..k]);
    Word(v)
}

/// Some `g` with `g^-1 u g = v`, or `None` if `u` and `v` are not
/// conjugate in the free group. Among rotations of the cyclic core the
/// smallest matching offset is used.
pub fn free_conjugate(u: &Word, v: &Word) -> Option<Word> {
    let (cu, p) = u.cyclic_reduce();
    let (cv, q) = v.cyclic_reduce();
    if cu.len() != cv.len() {
        return None;
    }
    let n = cu.len();
    if n == 0 {
        return Some(p.multiply(&q.inverse()));
    }
    (0..n).find_map(|i| {
        let matches = (0..n).all(|j| cu.0[(i + j) % n] == cv.0[j]);
        matches.then(|| {
            let x = Word(cu.0[..i].to_vec());
            p.multiply(&x).multiply(&q.inverse())
        })
    })
}

impl Mul for &Word {
    type Output = Word;
    fn mul(self, rhs: &Word) -> Word {
        self.multiply(rhs)
    }
}

impl Mul for Word {
    type Output = Word;
    fn mul(self, rhs: Word) -> Word {
        self.multiply(&rhs)
    }
}

impl From<&Generator> for Word {
    fn from(g: &Generator) -> Word {
        g.word()
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl fmt::Display for Word {
    /// Maximal power collection: `a^3 b^-2`, `1` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let l = &self.0[i];
            let mut j = i + 1;
            while j < self.0.len() && self.0[j] == *l {
                j += 1;
            }
            let exp = (j - i) as i64 * l.sign.value();
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if exp == 1 {
                write!(f, "{}", l.gen)?;
            } else {
                write!(f, "{}^{}", l.gen, exp)?;
            }
            i = j;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s, None)
    }
}

/// Parses `text` in the word grammar. When `alphabet` is given, every
/// identifier must belong to it; otherwise the alphabet is inferred.
///
/// ```text
/// word  = "1" | term { ws term }
/// term  = atom [ "^" int ]
/// atom  = ident | "(" word ")" | "[" word "," word "]"
/// ```
pub fn parse_word(text: &str, alphabet: Option<&[Generator]>) -> Result<Word, WordError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        alphabet,
    };
    let w = p.word()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.syntax(format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(w)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    alphabet: Option<&'a [Generator]>,
}

impl Parser<'_> {
    fn syntax(&self, message: String) -> WordError {
        WordError::Syntax {
            pos: self.pos,
            message,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn word(&mut self) -> Result<Word, WordError> {
        let mut out = Word::identity();
        let mut terms = 0;
        while let Some(c) = self.peek() {
            if matches!(c, b')' | b']' | b',') {
                break;
            }
            out = out.multiply(&self.term()?);
            terms += 1;
        }
        if terms == 0 {
            return Err(self.syntax("expected a word".into()));
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<Word, WordError> {
        let atom = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.int()?;
            return Ok(atom.pow(k));
        }
        Ok(atom)
    }

    fn int(&mut self) -> Result<i64, WordError> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            return Err(self.syntax("expected an integer exponent".into()));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| WordError::Syntax {
                pos: start,
                message: "exponent out of range".into(),
            })
    }

    fn expect(&mut self, c: u8) -> Result<(), WordError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(format!("expected `{}`", c as char)))
        }
    }

    fn atom(&mut self) -> Result<Word, WordError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(b')')?;
                Ok(w)
            }
            Some(b'[') => {
                self.pos += 1;
                let x = self.word()?;
                self.expect(b',')?;
                let y = self.word()?;
                self.expect(b']')?;
                Ok(Word::commutator(&x, &y))
            }
            Some(b'1') => {
                self.pos += 1;
                if self
                    .src
                    .get(self.pos)
                    .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
                {
                    return Err(self.syntax("identifiers must start with a letter".into()));
                }
                Ok(Word::identity())
            }
            Some(c) if c.is_ascii_alphabetic() => self.ident(),
            Some(b'_') => Err(WordError::EmptyIdentifier { pos: self.pos }),
            Some(c) => Err(self.syntax(format!("unexpected `{}`", c as char))),
            None => Err(self.syntax("unexpected end of input".into())),
        }
    }

    fn ident(&mut self) -> Result<Word, WordError> {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        if name.is_empty() {
            return Err(WordError::EmptyIdentifier { pos: start });
        }
        let gen = Generator::new(name)?;
        if let Some(alpha) = self.alphabet {
            if !alpha.contains(&gen) {
                return Err(WordError::UnknownGenerator {
                    name: name.to_string(),
                    pos: start,
                });
            }
        }
        Ok(gen.word())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn g(s: &str) -> Generator {
        Generator::new(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(w("a a^-1 b"), w("b"));
        assert_eq!(w("[a,b]").to_string(), "a^-1 b^-1 a b");
        let long = w("(a b)^2 a^3 (b a)^2");
        assert_eq!(long.len(), 11);
        assert_eq!(long.to_string(), "a b a b a^3 b a b a");
        assert_eq!(w("1"), Word::identity());
        assert_eq!(w("a(b^-1 a^-1)b^-1").to_string(), "a b^-1 a^-1 b^-1");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_word("a ^", None),
            Err(WordError::Syntax { pos: 3, .. })
        ));
        assert!(matches!(
            parse_word("(a b", None),
            Err(WordError::Syntax { .. })
        ));
        assert!(matches!(
            parse_word("", None),
            Err(WordError::Syntax { .. })
        ));
        let alpha = generators(&["a", "b"]).unwrap();
        assert_eq!(
            parse_word("a c", Some(&alpha)),
            Err(WordError::UnknownGenerator {
                name: "c".into(),
                pos: 2
            })
        );
        assert!(matches!(
            parse_word("_x", None),
            Err(WordError::EmptyIdentifier { pos: 0 })
        ));
        assert!(matches!(
            Generator::new(""),
            Err(WordError::EmptyIdentifier { .. })
        ));
        assert!(Generator::new("1a").is_err());
    }

    #[test]
    fn reduce_examples() {
        let a = Letter::new(g("a"), Sign::Plus);
        let b = Letter::new(g("b"), Sign::Plus);
        let c = Letter::new(g("c"), Sign::Plus);
        assert_eq!(reduce([a.clone(), a.inverse()]), Word::identity());
        assert_eq!(
            reduce([b.clone(), a.clone(), a.inverse(), b.inverse(), c.clone()]),
            c.gen.word()
        );
        let x = a.clone();
        assert_eq!(
            reduce([x.inverse(), x.inverse(), x.clone(), x]),
            Word::identity()
        );
    }

    #[test]
    fn multiply_inverse_conjugate() {
        assert_eq!(w("a b") * w("b^-1 a"), w("a^2"));
        assert_eq!(w("a b^-1 c").inverse().to_string(), "c^-1 b a^-1");
        assert_eq!(w("a b").conjugate(&Word::identity()), w("a b"));
        assert_eq!(Word::identity().conjugate(&w("a b")), Word::identity());
        assert_eq!(w("b").conjugate(&w("a")).to_string(), "a^-1 b a");
        assert_eq!(Word::commutator(&w("a"), &w("a")), Word::identity());
        assert_eq!(
            Word::commutator(&w("a"), &w("b")).to_string(),
            "a^-1 b^-1 a b"
        );
    }

    #[test]
    fn cyclic_reduce_examples() {
        assert_eq!(w("a b a^-1").cyclic_reduce(), (w("b"), w("a")));
        assert_eq!(w("a b c").cyclic_reduce(), (w("a b c"), Word::identity()));
        assert_eq!(w("a b c b^-1 a^-1").cyclic_reduce(), (w("c"), w("a b")));
        assert_eq!(
            w("a a^-1").cyclic_reduce(),
            (Word::identity(), Word::identity())
        );
    }

    #[test]
    fn free_conjugate_examples() {
        let u = w("a b");
        let v = w("b a");
        let g = free_conjugate(&u, &v).unwrap();
        assert_eq!(u.conjugate(&g), v);
        assert_eq!(free_conjugate(&w("a"), &w("b")), None);
        assert_eq!(free_conjugate(&w("a b"), &w("a^-1 b^-1")), None);
        let u = w("c a b c^-1");
        let v = w("d^-1 b a d");
        let g = free_conjugate(&u, &v).unwrap();
        assert_eq!(u.conjugate(&g), v);
    }

    #[test]
    fn exponent_sums() {
        assert_eq!(w("[a,b]").exponent_sum(&g("a")), 0);
        assert_eq!(w("(a b) a^3 (b a)").exponent_sum(&g("a")), 5);
        let inner = w("b^-1 y b^-2 y b^-1 y b^-2 y b^-1");
        let rel = w("y^2") * inner.inverse();
        assert_eq!(rel.exponent_sum(&g("b")), 7);
    }

    #[test]
    fn format_round_trip() {
        for s in ["1", "a^3 b^-2", "x_1 y2^-1 x_1", "a b a^-1 b^-1"] {
            assert_eq!(w(s).to_string(), s);
        }
    }

    #[test]
    fn cyclic_normal_form_is_class_invariant() {
        let u = w("a b a^2 b^-1");
        let nf = u.cyclic_normal_form();
        assert_eq!(u.rotate(2).cyclic_normal_form(), nf);
        assert_eq!(u.inverse().cyclic_normal_form(), nf);
        assert_eq!(u.conjugate(&w("c b")).cyclic_normal_form(), nf);
    }
}
