//! Exact integer Smith normal form and abelianization invariants.

use std::fmt;

use super::Presentation;

/// `D = U A V` with `D` diagonal; only `V` is kept since kernel vectors
/// are read off its trailing columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Non-zero diagonal entries, positive, each dividing the next.
    pub diagonal: Vec<i64>,
    /// Unimodular column transform, `cols x cols`.
    pub right: Vec<Vec<i64>>,
    pub rows: usize,
    pub cols: usize,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// A basis of the integer kernel `{x : A x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<i64>> {
        (self.rank()..self.cols)
            .map(|j| self.right.iter().map(|row| row[j]).collect())
            .collect()
    }
}

pub fn smith_normal_form(matrix: &[Vec<i64>], cols: usize) -> SmithForm {
    let rows = matrix.len();
    let mut a: Vec<Vec<i128>> = matrix
        .iter()
        .map(|r| {
            assert_eq!(r.len(), cols, "ragged matrix");
            r.iter().map(|&x| x as i128).collect()
        })
        .collect();
    let mut v: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| i128::from(i == j)).collect())
        .collect();

    let mut rank = 0;
    for t in 0..rows.min(cols) {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs());
            let Some((pi, pj)) = pivot else {
                return finish(a, v, rank, rows, cols);
            };
            a.swap(t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut v, t, pj);

            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t] / p;
                if q != 0 {
                    add_row_multiple(&mut a, i, t, -q);
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                if q != 0 {
                    add_col_multiple(&mut a, j, t, -q);
                    add_col_multiple(&mut v, j, t, -q);
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
            match offender {
                Some(i) => add_row_multiple(&mut a, t, i, 1),
                None => break,
            }
        }
        if a[t][t] < 0 {
            for x in a[t].iter_mut() {
                *x = -*x;
            }
        }
        rank += 1;
    }
    finish(a, v, rank, rows, cols)
}

fn swap_cols(m: &mut [Vec<i128>], i: usize, j: usize) {
    if i != j {
        for row in m.iter_mut() {
            row.swap(i, j);
        }
    }
}

/// `col[dst] += k * col[src]`
fn add_row_multiple(m: &mut [Vec<i128>], dst: usize, src: usize, k: i128) {
    let src_row = m[src].clone();
    for (x, y) in m[dst].iter_mut().zip(&src_row) {
        *x += k * y;
    }
}

fn add_col_multiple(m: &mut [Vec<i128>], dst: usize, src: usize, k: i128) {
    for row in m.iter_mut() {
        row[dst] += k * row[src];
    }
}

fn finish(
    a: Vec<Vec<i128>>,
    v: Vec<Vec<i128>>,
    rank: usize,
    rows: usize,
    cols: usize,
) -> SmithForm {
    let narrow = |x: i128| i64::try_from(x).expect("Smith form entry exceeds i64");
    SmithForm {
        diagonal: (0..rank).map(|t| narrow(a[t][t])).collect(),
        right: v
            .into_iter()
            .map(|r| r.into_iter().map(narrow).collect())
            .collect(),
        rows,
        cols,
    }
}

/// `Z^free_rank + Z/t1 + ... + Z/tk` with `t1 | t2 | ... | tk`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub torsion: Vec<i64>,
    pub free_rank: usize,
}

impl AbelianInvariants {
    pub fn is_infinite_cyclic(&self) -> bool {
        self.free_rank == 1 && self.torsion.is_empty()
    }

    pub fn is_free_abelian(&self, rank: usize) -> bool {
        self.free_rank == rank && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

pub fn abelianization(pres: &Presentation) -> AbelianInvariants {
    let cols = pres.generators().len();
    let snf = smith_normal_form(&pres.exponent_matrix(), cols);
    AbelianInvariants {
        torsion: snf.diagonal.iter().copied().filter(|&d| d > 1).collect(),
        free_rank: cols - snf.rank(),
    }
}
