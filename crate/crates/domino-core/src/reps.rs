//! Irreducible characters of the hyperoctahedral group.
//!
//! Characters are class functions on [`classes`], in that order. Values come from the
//! Murnaghan–Nakayama rule for the wreath product: a cycle of length `k` is stripped as a
//! rim hook from either component, with sign `(-1)^height`, and a hook taken from the
//! second component picks up an extra `-1` when the cycle is negative.

use crate::error::{DominoError, Result};
use crate::linalg::{null_space, q, Q};
use crate::shape::{bipartitions, Bipartition, Shape};
use crate::weyl::{classes, enumerate_group, SignedCycleType, SignedPerm};
use num_traits::{One, ToPrimitive, Zero};
use std::collections::HashMap;

/// All ways to remove a `k`-rim hook: `(remaining partition, height)`.
pub fn rim_hooks(shape: &Shape, k: u32) -> Vec<(Shape, u32)> {
    let parts = shape.parts();
    let m = parts.len() as u32;
    let beads: Vec<u32> = parts.iter().enumerate().map(|(i, &p)| p + m - 1 - i as u32).collect();
    let mut out = Vec::new();
    for (i, &b) in beads.iter().enumerate() {
        if b < k || beads.contains(&(b - k)) {
            continue;
        }
        let height = beads.iter().filter(|&&x| x > b - k && x < b).count() as u32;
        let mut nb = beads.clone();
        nb[i] = b - k;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<u32> = nb.iter().enumerate().map(|(j, &x)| x - (m - 1 - j as u32)).filter(|&p| p > 0).collect();
        out.push((Shape::from_unsorted(parts), height));
    }
    out
}

#[derive(Default)]
struct Mn {
    memo: HashMap<(Bipartition, Vec<(u32, bool)>), i64>,
}

impl Mn {
    fn value(&mut self, bp: &Bipartition, cycles: &[(u32, bool)]) -> i64 {
        let Some((&(k, negative), rest)) = cycles.split_first() else {
            return i64::from(bp.size() == 0);
        };
        let key = (bp.clone(), cycles.to_vec());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let mut total = 0;
        for (a, h) in rim_hooks(&bp.first, k) {
            let sign = if h % 2 == 0 { 1 } else { -1 };
            total += sign * self.value(&Bipartition::new(a, bp.second.clone()), rest);
        }
        for (b, h) in rim_hooks(&bp.second, k) {
            let mut sign = if h % 2 == 0 { 1 } else { -1 };
            if negative {
                sign = -sign;
            }
            total += sign * self.value(&Bipartition::new(bp.first.clone(), b), rest);
        }
        self.memo.insert(key, total);
        total
    }
}

fn cycle_list(t: &SignedCycleType) -> Vec<(u32, bool)> {
    let mut v: Vec<(u32, bool)> =
        t.positive.parts().iter().map(|&k| (k, false)).chain(t.negative.parts().iter().map(|&k| (k, true))).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// The character table: rows follow [`bipartitions`], columns follow [`classes`].
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub n: usize,
    pub labels: Vec<Bipartition>,
    pub class_types: Vec<SignedCycleType>,
    pub class_reps: Vec<SignedPerm>,
    pub class_sizes: Vec<usize>,
    pub values: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn new(n: usize) -> CharacterTable {
        let cls = classes(n);
        let labels = bipartitions(n as u32);
        let mut mn = Mn::default();
        let values = labels.iter().map(|bp| cls.iter().map(|(t, _, _)| mn.value(bp, &cycle_list(t))).collect()).collect();
        CharacterTable {
            n,
            labels,
            class_types: cls.iter().map(|c| c.0.clone()).collect(),
            class_reps: cls.iter().map(|c| c.1.clone()).collect(),
            class_sizes: cls.iter().map(|c| c.2).collect(),
            values,
        }
    }

    pub fn order(&self) -> usize {
        self.class_sizes.iter().sum()
    }

    pub fn row(&self, bp: &Bipartition) -> Result<&[i64]> {
        let i = self
            .labels
            .iter()
            .position(|b| b == bp)
            .ok_or_else(|| DominoError::RankMismatch(bp.size() as usize, self.n))?;
        Ok(&self.values[i])
    }

    /// `(1/|W|) Σ |C| a(C) b(C)`; every character of this group is real.
    pub fn inner(&self, a: &[Q], b: &[Q]) -> Q {
        let mut acc = Q::zero();
        for ((x, y), &s) in a.iter().zip(b).zip(&self.class_sizes) {
            acc += x * y * q(s as i64);
        }
        acc / q(self.order() as i64)
    }

    fn row_q(&self, i: usize) -> Vec<Q> {
        self.values[i].iter().map(|&v| q(v)).collect()
    }

    /// Multiplicities of every irreducible in `chi`.
    pub fn decompose(&self, chi: &[Q]) -> Vec<(Bipartition, Q)> {
        (0..self.labels.len())
            .map(|i| (self.labels[i].clone(), self.inner(chi, &self.row_q(i))))
            .filter(|(_, m)| !m.is_zero())
            .collect()
    }

    /// The bipartition whose character is `chi`; fails when `chi` is not irreducible.
    pub fn identify(&self, chi: &[Q]) -> Result<Bipartition> {
        match self.decompose(chi).as_slice() {
            [(bp, m)] if m.is_one() => Ok(bp.clone()),
            other => Err(DominoError::Invalid(format!(
                "not irreducible: {}",
                other.iter().map(|(b, m)| format!("{m}*{b}")).collect::<Vec<_>>().join(" + ")
            ))),
        }
    }

    /// True when no irreducible occurs more than once.
    pub fn is_multiplicity_free(&self, chi: &[Q]) -> bool {
        self.decompose(chi).iter().all(|(_, m)| m.is_one())
    }

    /// Failures of the row relations, column relations and the degree sum.
    pub fn orthogonality_failures(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let k = self.labels.len();
        for i in 0..k {
            for j in 0..k {
                let ip = self.inner(&self.row_q(i), &self.row_q(j));
                if ip != if i == j { Q::one() } else { Q::zero() } {
                    bad.push(format!("rows {} {}", self.labels[i], self.labels[j]));
                }
            }
        }
        for a in 0..k {
            for b in 0..k {
                let s: i64 = (0..k).map(|i| self.values[i][a] * self.values[i][b]).sum();
                let expect = if a == b { (self.order() / self.class_sizes[a]) as i64 } else { 0 };
                if s != expect {
                    bad.push(format!("columns {} {}", self.class_types[a], self.class_types[b]));
                }
            }
        }
        let e = self.class_types.iter().position(|t| t.negative.is_empty() && t.positive.parts().iter().all(|&p| p == 1));
        let dims: i64 = e.map_or(0, |e| (0..k).map(|i| self.values[i][e].pow(2)).sum());
        if dims as usize != self.order() {
            bad.push(format!("sum of squared degrees {dims}"));
        }
        bad
    }
}

/// Character table from the class algebra alone (Burnside's method), rows sorted.
///
/// The central characters are the common eigenvectors of the class multiplication
/// matrices; degrees follow from `Σ |C| χ(C)^2 = |W|`.
pub fn class_algebra_table(n: usize) -> Vec<Vec<i64>> {
    let cls = classes(n);
    let k = cls.len();
    let types: Vec<SignedCycleType> = cls.iter().map(|c| c.0.clone()).collect();
    let class_of: HashMap<SignedPerm, usize> = enumerate_group(n)
        .into_iter()
        .map(|w| {
            let t = w.cycle_type();
            let i = types.iter().position(|x| *x == t).expect("class");
            (w, i)
        })
        .collect();
    let mut members: Vec<Vec<SignedPerm>> = vec![Vec::new(); k];
    for (w, &i) in &class_of {
        members[i].push(w.clone());
    }
    // a[i][j][l] = #{x in C_i : x^{-1} z_l in C_j}
    let mut a = vec![vec![vec![0i64; k]; k]; k];
    for i in 0..k {
        for x in &members[i] {
            let xi = x.inverse();
            for l in 0..k {
                let j = class_of[&xi.mul(&cls[l].1)];
                a[i][j][l] += 1;
            }
        }
    }
    let mut spaces: Vec<Vec<Vec<Q>>> = vec![(0..k).map(|c| crate::linalg::unit(k, c)).collect()];
    for (i, (_, _, size)) in cls.iter().enumerate() {
        let mut next = Vec::new();
        for basis in &spaces {
            for lam in -(*size as i64)..=(*size as i64) {
                // columns: A_i b - lam b for each basis vector b
                let cols: Vec<Vec<Q>> = basis
                    .iter()
                    .map(|b| {
                        (0..k)
                            .map(|j| {
                                let mut s = Q::zero();
                                for l in 0..k {
                                    if a[i][j][l] != 0 {
                                        s += q(a[i][j][l]) * &b[l];
                                    }
                                }
                                s - q(lam) * &b[j]
                            })
                            .collect()
                    })
                    .collect();
                let m: Vec<Vec<Q>> = (0..k).map(|j| cols.iter().map(|c| c[j].clone()).collect()).collect();
                let ns = null_space(&m, basis.len());
                if !ns.is_empty() {
                    next.push(
                        ns.iter()
                            .map(|x| (0..k).map(|j| basis.iter().zip(x).fold(Q::zero(), |acc, (b, c)| acc + &b[j] * c)).collect())
                            .collect(),
                    );
                }
            }
        }
        spaces = next;
    }
    let e = types.iter().position(|t| t.negative.is_empty() && t.positive.parts().iter().all(|&p| p == 1)).unwrap();
    let order: usize = cls.iter().map(|c| c.2).sum();
    let mut rows: Vec<Vec<i64>> = spaces
        .iter()
        .map(|s| {
            assert_eq!(s.len(), 1, "class algebra eigenspace not one-dimensional");
            let v = &s[0];
            let omega: Vec<Q> = v.iter().map(|x| x / &v[e]).collect();
            let denom = omega.iter().zip(&cls).fold(Q::zero(), |acc, (w, c)| acc + w * w / q(c.2 as i64));
            let deg_sq = q(order as i64) / denom;
            let deg = (1..=order as i64).find(|d| q(d * d) == deg_sq).expect("integral degree");
            omega
                .iter()
                .zip(&cls)
                .map(|(w, c)| {
                    let val = w * q(deg) / q(c.2 as i64);
                    assert!(val.is_integer());
                    val.to_integer().to_i64().unwrap()
                })
                .collect()
        })
        .collect();
    rows.sort();
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::bitableau_count;

    #[test]
    fn trivial_and_degrees() {
        for n in 1..=4 {
            let t = CharacterTable::new(n);
            let trivial = Bipartition::new(Shape::new(vec![n as u32]).unwrap(), Shape::empty());
            assert!(t.row(&trivial).unwrap().iter().all(|&v| v == 1));
            let e = t.class_types.iter().position(|c| c.negative.is_empty() && c.positive.parts().iter().all(|&p| p == 1)).unwrap();
            for (bp, row) in t.labels.iter().zip(&t.values) {
                assert_eq!(row[e] as u128, bitableau_count(bp), "{bp}");
            }
        }
    }

    #[test]
    fn orthogonality_through_rank_four() {
        for n in 1..=4 {
            let t = CharacterTable::new(n);
            assert!(t.orthogonality_failures().is_empty(), "rank {n}: {:?}", t.orthogonality_failures());
        }
    }

    #[test]
    fn class_algebra_oracle_agrees() {
        for n in 1..=3 {
            let mut mn = CharacterTable::new(n).values;
            mn.sort();
            assert_eq!(class_algebra_table(n), mn, "rank {n}");
        }
    }

    #[test]
    fn rim_hook_example() {
        assert_eq!(rim_hooks(&"3,1".parse().unwrap(), 2), vec![("1,1".parse().unwrap(), 0)]);
        let hooks = rim_hooks(&"2,2".parse().unwrap(), 2);
        assert_eq!(hooks.len(), 2);
        assert!(hooks.contains(&("1,1".parse().unwrap(), 1)));
        assert!(hooks.contains(&("2".parse().unwrap(), 0)));
    }

    #[test]
    fn identify_rejects_reducible() {
        let t = CharacterTable::new(2);
        let sum: Vec<Q> = (0..t.class_sizes.len()).map(|c| q(t.values[0][c] + t.values[1][c])).collect();
        assert!(t.identify(&sum).is_err());
        let one: Vec<Q> = t.values[3].iter().map(|&v| q(v)).collect();
        assert_eq!(t.identify(&one).unwrap(), t.labels[3]);
    }
}
