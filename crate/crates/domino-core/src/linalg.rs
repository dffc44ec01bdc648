//! Small exact linear algebra: integer matrices and rational subspaces in reduced echelon form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;
pub type IMat = Vec<Vec<i64>>;

pub fn identity(n: usize) -> IMat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn mat_mul(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![0; m]; n];
    for i in 0..n {
        for (k, &x) in a[i].iter().enumerate() {
            if x != 0 {
                for j in 0..m {
                    out[i][j] += x * b[k][j];
                }
            }
        }
    }
    out
}

pub fn trace(a: &IMat) -> i64 {
    (0..a.len()).map(|i| a[i][i]).sum()
}

pub fn q(x: i64) -> Q {
    Q::from_integer(BigInt::from(x))
}

/// `a * v` for an integer matrix and a rational vector.
pub fn apply(a: &IMat, v: &[Q]) -> Vec<Q> {
    a.iter()
        .map(|row| {
            let mut acc = Q::zero();
            for (&x, y) in row.iter().zip(v) {
                if x != 0 && !y.is_zero() {
                    acc += q(x) * y;
                }
            }
            acc
        })
        .collect()
}

/// A subspace kept in reduced row echelon form.
#[derive(Clone, Debug, Default)]
pub struct Subspace {
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.rows
    }

    fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        v
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: &[Q]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else { return false };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, r);
        self.pivots.insert(at, p);
        true
    }

    /// Coordinates of `v` in the echelon basis, or `None` when `v` lies outside.
    pub fn coords(&self, v: &[Q]) -> Option<Vec<Q>> {
        if self.reduce(v).iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Smallest subspace containing `seeds` and stable under every matrix in `gens`.
    pub fn closure(gens: &[IMat], seeds: &[Vec<Q>]) -> Subspace {
        let mut s = Subspace::default();
        let mut queue: Vec<Vec<Q>> = Vec::new();
        for v in seeds {
            if s.insert(v) {
                queue.push(v.clone());
            }
        }
        while let Some(v) = queue.pop() {
            for g in gens {
                let w = apply(g, &v);
                if s.insert(&w) {
                    queue.push(w);
                }
            }
        }
        s
    }

    /// Trace of the composite `gens[word[0]] ... gens[word[k]]` restricted to this stable subspace.
    pub fn trace_of_word(&self, gens: &[IMat], word: &[usize]) -> Option<Q> {
        let mut t = Q::zero();
        for (j, b) in self.rows.iter().enumerate() {
            let mut v = b.clone();
            for &i in word.iter().rev() {
                v = apply(&gens[i], &v);
            }
            t += self.coords(&v)?[j].clone();
        }
        Some(t)
    }
}

/// Basis of `{x : m x = 0}` for a rational matrix with `cols` columns.
pub fn null_space(m: &[Vec<Q>], cols: usize) -> Vec<Vec<Q>> {
    let mut rows: Vec<Vec<Q>> = m.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Q::zero(); cols];
            v[free] = Q::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -rows[i][free].clone();
            }
            v
        })
        .collect()
}

pub fn unit(n: usize, i: usize) -> Vec<Q> {
    (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn echelon_insert_and_coords() {
        let mut s = Subspace::default();
        assert!(s.insert(&[q(1), q(2), q(0)]));
        assert!(s.insert(&[q(0), q(1), q(1)]));
        assert!(!s.insert(&[q(1), q(3), q(1)]));
        assert_eq!(s.dim(), 2);
        let c = s.coords(&[q(2), q(5), q(1)]).unwrap();
        let back: Vec<Q> = (0..3).map(|k| c.iter().zip(s.basis()).fold(Q::zero(), |a, (x, r)| a + x * &r[k])).collect();
        assert_eq!(back, vec![q(2), q(5), q(1)]);
        assert!(s.coords(&[q(0), q(0), q(1)]).is_none());
    }

    #[test]
    fn null_space_of_rank_one() {
        let m = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        let ns = null_space(&m, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(dot(&m[0], &v).is_zero());
        }
    }

    #[test]
    fn closure_and_trace() {
        let swap: IMat = vec![vec![0, 1], vec![1, 0]];
        let s = Subspace::closure(std::slice::from_ref(&swap), &[vec![q(1), q(1)]]);
        assert_eq!(s.dim(), 1);
        assert_eq!(s.trace_of_word(std::slice::from_ref(&swap), &[0]).unwrap(), q(1));
        let full = Subspace::closure(std::slice::from_ref(&swap), &[unit(2, 0)]);
        assert_eq!(full.trace_of_word(&[swap], &[0]).unwrap(), q(0));
        assert_eq!(trace(&mat_mul(&identity(3), &identity(3))), 3);
    }
}
