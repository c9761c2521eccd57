//! Smith normal form over the integers.
//!
//! Elimination pivots on the smallest nonzero entry of the remaining block,
//! reduces its row and column by floor division, and repeats until the pivot
//! divides everything left; a row addition fixes divisibility when it fails.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::matrix::IntMatrix;

/// Diagonal `d_1 | d_2 | ...` of length `min(rows, cols)`, nonnegative, with
/// zeros last, plus the unimodular transforms when requested.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    /// `(U, V)` with `U * M * V` equal to the diagonal matrix.
    pub transforms: Option<(IntMatrix, IntMatrix)>,
}

impl SmithForm {
    /// The `rows x cols` matrix carrying the diagonal.
    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> IntMatrix {
        let mut d = IntMatrix::zeros(rows, cols);
        for (i, x) in self.diagonal.iter().enumerate() {
            d[(i, i)] = x.clone();
        }
        d
    }

    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    reduce(m, false)
}

pub fn smith_normal_form_with_transforms(m: &IntMatrix) -> SmithForm {
    reduce(m, true)
}

struct Work {
    a: IntMatrix,
    u: Option<IntMatrix>,
    v: Option<IntMatrix>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
    }

    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_row_multiple(dst, src, k);
        if let Some(u) = &mut self.u {
            u.add_row_multiple(dst, src, k);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_col_multiple(dst, src, k);
        if let Some(v) = &mut self.v {
            v.add_col_multiple(dst, src, k);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(u) = &mut self.u {
            u.negate_row(i);
        }
    }

    /// Position of a nonzero entry of least absolute value in the block
    /// starting at `(t, t)`.
    fn smallest(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if !x.is_zero() && best.is_none_or(|b| x.abs() < self.a[b].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }
}

fn reduce(m: &IntMatrix, track: bool) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.clone(),
        u: track.then(|| IntMatrix::identity(rows)),
        v: track.then(|| IntMatrix::identity(cols)),
    };

    for t in 0..rows.min(cols) {
        while let Some((i, j)) = w.smallest(t) {
            w.swap_rows(t, i);
            w.swap_cols(t, j);
            let p = w.a[(t, t)].clone();

            let mut clean = true;
            for i in t + 1..rows {
                let q = w.a[(i, t)].div_floor(&p);
                if !q.is_zero() {
                    w.add_row(i, t, &-q);
                }
                clean &= w.a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                let q = w.a[(t, j)].div_floor(&p);
                if !q.is_zero() {
                    w.add_col(j, t, &-q);
                }
                clean &= w.a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let stray =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !w.a[(i, j)].is_multiple_of(&p)));
            match stray {
                Some(i) => w.add_row(t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if w.a[(t, t)].is_negative() {
            w.negate_row(t);
        }
    }

    let diagonal = (0..rows.min(cols)).map(|i| w.a[(i, i)].clone()).collect();
    SmithForm {
        diagonal,
        transforms: w.u.zip(w.v),
    }
}
