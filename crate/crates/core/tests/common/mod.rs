//! Reference implementations used as oracles. They share no code with the
//! library: words are `Vec<i32>` with `±k` for the k-th letter of the
//! alphabet (`a = 1`, `b = 2`, ...).

#![allow(dead_code)]

use gtorsion::word::{Sign, Word};

pub type W = Vec<i32>;

pub fn red(w: &[i32]) -> W {
    let mut out: W = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

pub fn cat(parts: &[&[i32]]) -> W {
    red(&parts.concat())
}

pub fn inv(w: &[i32]) -> W {
    w.iter().rev().map(|x| -x).collect()
}

pub fn pw(w: &[i32], k: i64) -> W {
    let base = if k < 0 { inv(w) } else { w.to_vec() };
    let mut out = Vec::new();
    for _ in 0..k.unsigned_abs() {
        out.extend_from_slice(&base);
    }
    red(&out)
}

/// `g^-1 x g`
pub fn conj(x: &[i32], g: &[i32]) -> W {
    cat(&[&inv(g), x, g])
}

/// `x^-1 y^-1 x y`
pub fn comm(x: &[i32], y: &[i32]) -> W {
    cat(&[&inv(x), &inv(y), x, y])
}

pub fn letter(c: char) -> i32 {
    (c as u8 - b'a') as i32 + 1
}

pub fn g(c: char) -> W {
    vec![letter(c)]
}

pub fn from_lib(w: &Word) -> W {
    w.letters()
        .iter()
        .map(|l| {
            let mut chars = l.gen.name().chars();
            let c = chars.next().expect("non-empty name");
            assert!(
                chars.next().is_none(),
                "oracle handles one-letter names only"
            );
            match l.sign {
                Sign::Plus => letter(c),
                Sign::Minus => -letter(c),
            }
        })
        .collect()
}

/// Strips inverse pairs from the two ends.
pub fn cyclic_red(w: &[i32]) -> W {
    let mut w = red(w);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.remove(0);
        w.pop();
    }
    w
}

/// In a free group, two cyclically reduced words are conjugate iff one is
/// a rotation of the other.
pub fn conjugate_in_free_group(u: &[i32], v: &[i32]) -> bool {
    let (u, v) = (cyclic_red(u), cyclic_red(v));
    if u.len() != v.len() {
        return false;
    }
    u.is_empty() || (0..u.len()).any(|k| u[k..].iter().chain(&u[..k]).eq(v.iter()))
}

pub fn exp_sum(w: &[i32], gen: i32) -> i64 {
    w.iter()
        .map(|&x| {
            if x == gen {
                1
            } else if x == -gen {
                -1
            } else {
                0
            }
        })
        .sum()
}

/// Drops the listed generators (the quotient killing them).
pub fn kill(w: &[i32], gens: &[char]) -> W {
    let dead: Vec<i32> = gens.iter().map(|&c| letter(c)).collect();
    red(&w
        .iter()
        .copied()
        .filter(|x| !dead.contains(&x.abs()))
        .collect::<Vec<_>>())
}

/// Permutations as zero-based image vectors, composed left to right.
pub fn perm_word(images: &[Vec<usize>], w: &[i32]) -> Vec<usize> {
    let n = images[0].len();
    let mut acc: Vec<usize> = (0..n).collect();
    for &x in w {
        let p = &images[(x.unsigned_abs() - 1) as usize];
        let step: Vec<usize> = if x > 0 {
            p.clone()
        } else {
            let mut q = vec![0; n];
            for (i, &j) in p.iter().enumerate() {
                q[j] = i;
            }
            q
        };
        acc = acc.iter().map(|&i| step[i]).collect();
    }
    acc
}

/// Integer polynomial as `(exponent, coefficient)` pairs, zero terms
/// removed, shifted so the lowest exponent is 0.
pub fn poly(terms: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut acc = std::collections::BTreeMap::new();
    for &(e, c) in terms {
        *acc.entry(e).or_insert(0) += c;
    }
    acc.retain(|_, c| *c != 0);
    let lo = acc.keys().next().copied().unwrap_or(0);
    acc.into_iter().map(|(e, c)| (e - lo, c)).collect()
}

/// `t^(2n+8) - t^(2n+7) + (t^(2n+5) - t^(2n+4) + ... - t^4 + t^3) - t + 1`,
/// expanded term by term.
pub fn delta_closed_form(n: i64) -> Vec<(i64, i64)> {
    let mut terms = vec![(2 * n + 8, 1), (2 * n + 7, -1), (1, -1), (0, 1)];
    let mut e = 2 * n + 5;
    let mut c = 1;
    while e >= 3 {
        terms.push((e, c));
        e -= 1;
        c = -c;
    }
    poly(&terms)
}
