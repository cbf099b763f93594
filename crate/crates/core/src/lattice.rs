//! Integer lattice normal forms over arbitrary-precision integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<BigInt>>;

pub fn to_big(rows: &[Vec<i64>]) -> Matrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Nonzero diagonal entries of the Smith normal form, each dividing the next.
pub fn smith_diagonal(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: Matrix = a.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&a, t) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in t..cols {
                        let v = &q * &a[t][j];
                        a[i][j] -= v;
                    }
                    if !a[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for i in t..rows {
                        let v = &q * &a[i][t];
                        a[i][j] -= v;
                    }
                    if !a[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                // the pivot must divide the rest of the block
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
                match bad {
                    None => break,
                    Some(i) => {
                        for j in t..cols {
                            let v = a[i][j].clone();
                            a[t][j] += v;
                        }
                        continue;
                    }
                }
            }
            let (pi, pj) = min_abs_entry_in_cross(&a, t);
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}

fn min_abs_entry(a: &Matrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn min_abs_entry_in_cross(a: &Matrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    for i in t..a.len() {
        let x = &a[i][t];
        if !x.is_zero() && (a[best.0][best.1].is_zero() || x.abs() < a[best.0][best.1].abs()) {
            best = (i, t);
        }
    }
    for j in t..a[t].len() {
        let x = &a[t][j];
        if !x.is_zero() && (a[best.0][best.1].is_zero() || x.abs() < a[best.0][best.1].abs()) {
            best = (t, j);
        }
    }
    best
}

/// Upper triangular Hermite basis of the lattice spanned by `generators`,
/// which must span a full-rank lattice in `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hermite {
    rows: Matrix,
}

impl Hermite {
    pub fn new(generators: &[Vec<BigInt>], n: usize) -> Result<Self> {
        let mut a: Matrix = generators.to_vec();
        if a.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("generator length mismatch".into()));
        }
        for j in 0..n {
            loop {
                let pivot = (j..a.len())
                    .filter(|&i| !a[i][j].is_zero())
                    .min_by(|&x, &y| a[x][j].abs().cmp(&a[y][j].abs()));
                let Some(p) = pivot else {
                    return Err(Error::Invariant(format!("lattice has rank below {n}")));
                };
                a.swap(j, p);
                let mut done = true;
                for i in j + 1..a.len() {
                    if !a[i][j].is_zero() {
                        let q = a[i][j].div_floor(&a[j][j]);
                        sub_multiple(&mut a, i, j, &q);
                        if !a[i][j].is_zero() {
                            done = false;
                        }
                    }
                }
                if done {
                    break;
                }
            }
            if a[j][j].is_negative() {
                for x in a[j].iter_mut() {
                    *x = -x.clone();
                }
            }
            for i in 0..j {
                let q = a[i][j].div_floor(&a[j][j]);
                sub_multiple(&mut a, i, j, &q);
            }
        }
        a.truncate(n);
        Ok(Hermite { rows: a })
    }

    /// Index of the lattice in `Z^n`.
    pub fn determinant(&self) -> BigInt {
        (0..self.rows.len()).fold(BigInt::one(), |acc, j| acc * &self.rows[j][j])
    }

    /// The unique representative of `v` modulo the lattice with
    /// `0 <= v[j] < h[j][j]` in every coordinate.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut v = v.to_vec();
        for (j, row) in self.rows.iter().enumerate() {
            let q = v[j].div_floor(&row[j]);
            if !q.is_zero() {
                for (x, h) in v.iter_mut().zip(row) {
                    *x -= &q * h;
                }
            }
        }
        v
    }

    pub fn rows(&self) -> &Matrix {
        &self.rows
    }
}

fn sub_multiple(a: &mut Matrix, target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let src = a[source].clone();
    for (x, s) in a[target].iter_mut().zip(&src) {
        *x -= q * s;
    }
}

/// Determinant by fraction-free elimination.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Matrix = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Matrix {
        to_big(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn smith_of_diagonal_fixes_divisibility() {
        let d = smith_diagonal(&big(&[&[2, 0], &[0, 3]]));
        assert_eq!(d, vec![BigInt::from(1), BigInt::from(6)]);
        let d = smith_diagonal(&big(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(&big(&[&[2, 1], &[1, 3]])), BigInt::from(5));
        assert_eq!(determinant(&big(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(
            determinant(&big(&[&[3, -1, -1], &[-1, 2, 0], &[-1, 0, 2]])),
            BigInt::from(8)
        );
    }

    #[test]
    fn hermite_reduction_is_canonical() {
        let h = Hermite::new(&big(&[&[2, 1], &[0, 3], &[4, 5]]), 2).unwrap();
        assert_eq!(h.determinant(), BigInt::from(6));
        let a = h.reduce(&[BigInt::from(7), BigInt::from(-2)]);
        let b = h.reduce(&[BigInt::from(7 - 2), BigInt::from(-2 - 1)]);
        assert_eq!(a, b);
        assert!(Hermite::new(&big(&[&[1, 1]]), 2).is_err());
    }
}
