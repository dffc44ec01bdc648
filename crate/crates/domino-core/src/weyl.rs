//! The hyperoctahedral group as signed permutations.
//!
//! Products compose right to left, `(uv)(i) = u(v(i))`. The generator `s_1` negates
//! position 1 and `s_i` for `i >= 2` swaps positions `i-1` and `i`. So `w * s_i` acts on
//! positions and `s_i * w` acts on values.

use crate::error::{DominoError, Result};
use crate::shape::Shape;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm(Vec<i32>);

/// Which side a descent or multiplication is taken on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl SignedPerm {
    pub fn new(images: Vec<i32>) -> Result<SignedPerm> {
        let n = images.len() as i32;
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x == 0 || x.abs() > n || seen[(x.abs() - 1) as usize] {
                return Err(DominoError::Invalid(format!("{images:?} is not a signed permutation")));
            }
            seen[(x.abs() - 1) as usize] = true;
        }
        Ok(SignedPerm(images))
    }

    pub fn identity(n: usize) -> SignedPerm {
        SignedPerm((1..=n as i32).collect())
    }

    pub fn generator(n: usize, i: usize) -> SignedPerm {
        let mut w: Vec<i32> = (1..=n as i32).collect();
        if i == 1 {
            w[0] = -1;
        } else {
            w.swap(i - 2, i - 1);
        }
        SignedPerm(w)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[i32] {
        &self.0
    }

    /// `w(i)` for `1 <= |i| <= n`, extended oddly to negative arguments.
    pub fn apply(&self, i: i32) -> i32 {
        let v = self.0[(i.abs() - 1) as usize];
        if i > 0 {
            v
        } else {
            -v
        }
    }

    pub fn multiply(&self, other: &SignedPerm) -> Result<SignedPerm> {
        if self.rank() != other.rank() {
            return Err(DominoError::RankMismatch(self.rank(), other.rank()));
        }
        Ok(self.mul(other))
    }

    pub(crate) fn mul(&self, other: &SignedPerm) -> SignedPerm {
        SignedPerm(other.0.iter().map(|&x| self.apply(x)).collect())
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut r = vec![0; self.rank()];
        for (i, &x) in self.0.iter().enumerate() {
            r[(x.abs() - 1) as usize] = (i as i32 + 1) * x.signum();
        }
        SignedPerm(r)
    }

    /// `s_i * w`.
    pub fn left_gen(&self, i: usize) -> SignedPerm {
        SignedPerm::generator(self.rank(), i).mul(self)
    }

    /// `w * s_i`.
    pub fn right_gen(&self, i: usize) -> SignedPerm {
        self.mul(&SignedPerm::generator(self.rank(), i))
    }

    /// Coxeter length: inversions minus the sum of the negative images.
    pub fn length(&self) -> u32 {
        let w = &self.0;
        let n = w.len();
        let mut inv = 0i64;
        for i in 0..n {
            for j in i + 1..n {
                if w[i] > w[j] {
                    inv += 1;
                }
            }
        }
        let neg: i64 = w.iter().filter(|&&x| x < 0).map(|&x| x as i64).sum();
        (inv - neg) as u32
    }

    fn right_descent_at(&self, i: usize) -> bool {
        if i == 1 {
            self.0[0] < 0
        } else {
            self.0[i - 2] > self.0[i - 1]
        }
    }

    /// Descent set as a sorted list of generator indices.
    pub fn descents(&self, side: Side) -> Vec<usize> {
        let w = match side {
            Side::Right => self.clone(),
            Side::Left => self.inverse(),
        };
        (1..=self.rank()).filter(|&i| w.right_descent_at(i)).collect()
    }

    /// Descent set as a bitmask, bit `i` for generator `i`.
    pub fn descent_mask(&self, side: Side) -> u32 {
        self.descents(side).iter().fold(0, |m, &i| m | (1 << i))
    }

    /// A reduced word `a_1 ... a_l` with `w = s_{a_1} ... s_{a_l}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut g = self.clone();
        let mut word = Vec::new();
        while let Some(&s) = g.descents(Side::Right).first() {
            word.push(s);
            g = g.right_gen(s);
        }
        word.reverse();
        word
    }

    /// Signed cycle type: lengths of positive and of negative cycles of `|w|`.
    pub fn cycle_type(&self) -> SignedCycleType {
        let n = self.rank();
        let mut seen = vec![false; n];
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut j = start;
            let mut len = 0;
            let mut sign = 1;
            loop {
                seen[j] = true;
                let x = self.0[j];
                sign *= x.signum();
                j = (x.abs() - 1) as usize;
                len += 1;
                if j == start {
                    break;
                }
            }
            if sign > 0 {
                pos.push(len);
            } else {
                neg.push(len);
            }
        }
        SignedCycleType { positive: Shape::from_unsorted(pos), negative: Shape::from_unsorted(neg) }
    }

    /// The longest element, `-1,-2,...,-n`.
    pub fn longest(n: usize) -> SignedPerm {
        SignedPerm((1..=n as i32).map(|x| -x).collect())
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for SignedPerm {
    type Err = DominoError;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(SignedPerm(Vec::new()));
        }
        let v = s
            .split(',')
            .map(|p| p.trim().parse::<i32>().map_err(|_| DominoError::Parse(format!("bad image `{p}`"))))
            .collect::<Result<Vec<_>>>()?;
        SignedPerm::new(v)
    }
}

/// Lengths of the positive and negative cycles of a signed permutation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedCycleType {
    pub positive: Shape,
    pub negative: Shape,
}

impl fmt::Display for SignedCycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{})", self.positive, self.negative)
    }
}

/// All `2^n n!` elements, sorted by length and then lexicographically.
pub fn enumerate_group(n: usize) -> Vec<SignedPerm> {
    fn perms(n: usize) -> Vec<Vec<i32>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n as i32);
                out.push(q);
            }
        }
        out
    }
    let mut out = Vec::with_capacity((1usize << n) * (1..=n).product::<usize>());
    for p in perms(n) {
        for signs in 0u32..(1 << n) {
            let w: Vec<i32> =
                p.iter().enumerate().map(|(i, &x)| if signs >> i & 1 == 1 { -x } else { x }).collect();
            out.push(SignedPerm(w));
        }
    }
    out.sort_by_cached_key(|w| (w.length(), w.clone()));
    out
}

/// Conjugacy classes as `(type, representative, size)`, in order of first appearance.
pub fn classes(n: usize) -> Vec<(SignedCycleType, SignedPerm, usize)> {
    let mut out: Vec<(SignedCycleType, SignedPerm, usize)> = Vec::new();
    let mut index: HashMap<SignedCycleType, usize> = HashMap::new();
    for w in enumerate_group(n) {
        let t = w.cycle_type();
        match index.get(&t) {
            Some(&i) => out[i].2 += 1,
            None => {
                index.insert(t.clone(), out.len());
                out.push((t, w, 1));
            }
        }
    }
    out
}

/// The reflections of the group, as signed permutations.
pub fn reflections(n: usize) -> Vec<SignedPerm> {
    let mut out = Vec::new();
    for i in 1..=n as i32 {
        let mut w: Vec<i32> = (1..=n as i32).collect();
        w[(i - 1) as usize] = -i;
        out.push(SignedPerm(w));
        for j in i + 1..=n as i32 {
            for sign in [1, -1] {
                let mut w: Vec<i32> = (1..=n as i32).collect();
                w[(i - 1) as usize] = sign * j;
                w[(j - 1) as usize] = sign * i;
                out.push(SignedPerm(w));
            }
        }
    }
    out
}

/// Bruhat order test by the lifting property, recursing on a left descent of `v`.
pub fn bruhat_leq(u: &SignedPerm, v: &SignedPerm) -> Result<bool> {
    if u.rank() != v.rank() {
        return Err(DominoError::RankMismatch(u.rank(), v.rank()));
    }
    Ok(lifting(u.clone(), v.clone()))
}

fn lifting(mut u: SignedPerm, mut v: SignedPerm) -> bool {
    loop {
        let lu = u.length();
        let lv = v.length();
        if lu > lv {
            return false;
        }
        let Some(&s) = v.descents(Side::Left).first() else {
            return lu == 0;
        };
        let su = u.left_gen(s);
        if su.length() < lu {
            u = su;
        }
        v = v.left_gen(s);
    }
}

/// The Bruhat order of a whole group as the transitive closure of its covering relation.
pub struct BruhatClosure {
    elems: Vec<SignedPerm>,
    index: HashMap<SignedPerm, usize>,
    up: Vec<HashSet<usize>>,
}

impl BruhatClosure {
    pub fn new(n: usize) -> BruhatClosure {
        let elems = enumerate_group(n);
        let index: HashMap<SignedPerm, usize> = elems.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let refl = reflections(n);
        let covers: Vec<Vec<usize>> = elems
            .iter()
            .map(|u| {
                let l = u.length();
                refl.iter().map(|t| u.mul(t)).filter(|x| x.length() == l + 1).map(|x| index[&x]).collect()
            })
            .collect();
        let mut up: Vec<HashSet<usize>> = vec![HashSet::new(); elems.len()];
        for i in (0..elems.len()).rev() {
            let mut s: HashSet<usize> = HashSet::from([i]);
            for &j in &covers[i] {
                s.extend(up[j].iter().copied());
            }
            up[i] = s;
        }
        BruhatClosure { elems, index, up }
    }

    pub fn leq(&self, u: &SignedPerm, v: &SignedPerm) -> bool {
        self.up[self.index[u]].contains(&self.index[v])
    }

    pub fn elements(&self) -> &[SignedPerm] {
        &self.elems
    }
}

/// Precomputed multiplication tables and descents for one rank, indexed by position in
/// [`enumerate_group`].
pub struct Group {
    pub n: usize,
    pub elems: Vec<SignedPerm>,
    pub index: HashMap<SignedPerm, u32>,
    pub lengths: Vec<u32>,
    /// `left[i-1][w] = s_i * w`.
    pub left: Vec<Vec<u32>>,
    /// `right[i-1][w] = w * s_i`.
    pub right: Vec<Vec<u32>>,
    pub ldesc: Vec<u32>,
    pub rdesc: Vec<u32>,
    pub inverse: Vec<u32>,
}

impl Group {
    pub fn new(n: usize) -> Group {
        let elems = enumerate_group(n);
        let index: HashMap<SignedPerm, u32> =
            elems.iter().cloned().enumerate().map(|(i, w)| (w, i as u32)).collect();
        let lengths = elems.iter().map(SignedPerm::length).collect();
        let left = (1..=n).map(|i| elems.iter().map(|w| index[&w.left_gen(i)]).collect()).collect();
        let right = (1..=n).map(|i| elems.iter().map(|w| index[&w.right_gen(i)]).collect()).collect();
        let ldesc = elems.iter().map(|w| w.descent_mask(Side::Left)).collect();
        let rdesc = elems.iter().map(|w| w.descent_mask(Side::Right)).collect();
        let inverse = elems.iter().map(|w| index[&w.inverse()]).collect();
        Group { n, elems, index, lengths, left, right, ldesc, rdesc, inverse }
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn idx(&self, w: &SignedPerm) -> u32 {
        self.index[w]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> SignedPerm {
        s.parse().unwrap()
    }

    fn bfs_lengths(n: usize) -> HashMap<SignedPerm, u32> {
        let e = SignedPerm::identity(n);
        let mut d = HashMap::from([(e.clone(), 0)]);
        let mut q = std::collections::VecDeque::from([e]);
        while let Some(x) = q.pop_front() {
            for i in 1..=n {
                let y = x.right_gen(i);
                if !d.contains_key(&y) {
                    d.insert(y.clone(), d[&x] + 1);
                    q.push_back(y);
                }
            }
        }
        d
    }

    #[test]
    fn length_matches_word_metric() {
        for n in 1..=4 {
            let d = bfs_lengths(n);
            assert_eq!(d.len(), enumerate_group(n).len());
            for (x, l) in d {
                assert_eq!(x.length(), l);
            }
            assert_eq!(SignedPerm::longest(n).length() as usize, n * n);
            assert_eq!(enumerate_group(n).iter().map(|x| x.length()).max().unwrap() as usize, n * n);
        }
    }

    #[test]
    fn descents_match_length_drops() {
        for n in 1..=4 {
            for x in enumerate_group(n) {
                let l = x.length();
                let left: Vec<usize> = (1..=n).filter(|&i| x.left_gen(i).length() < l).collect();
                let right: Vec<usize> = (1..=n).filter(|&i| x.right_gen(i).length() < l).collect();
                assert_eq!(x.descents(Side::Left), left);
                assert_eq!(x.descents(Side::Right), right);
                assert_eq!(x.descents(Side::Left), x.inverse().descents(Side::Right));
            }
        }
        assert_eq!(SignedPerm::generator(3, 2).descents(Side::Left), vec![2]);
    }

    #[test]
    fn group_laws() {
        let g2 = enumerate_group(2);
        assert_eq!(g2.len(), 8);
        for x in &g2 {
            assert_eq!(x.inverse().inverse(), *x);
            assert_eq!(x.multiply(&SignedPerm::identity(2)).unwrap(), *x);
        }
        let g3 = enumerate_group(3);
        for (a, b) in g3.iter().zip(g3.iter().rev()) {
            for c in g3.iter().step_by(7) {
                assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
                assert_eq!(a.mul(b).inverse(), b.inverse().mul(&a.inverse()));
            }
        }
        assert!(w("1,2").multiply(&w("1,2,3")).is_err());
    }

    #[test]
    fn reduced_words_multiply_back() {
        for x in enumerate_group(4) {
            let word = x.reduced_word();
            assert_eq!(word.len() as u32, x.length());
            let mut g = SignedPerm::identity(4);
            for &s in &word {
                g = g.right_gen(s);
            }
            assert_eq!(g, x);
        }
    }

    fn subword_leq(u: &SignedPerm, v: &SignedPerm) -> bool {
        let word = v.reduced_word();
        let n = v.rank();
        (0u32..1 << word.len()).any(|mask| {
            let mut g = SignedPerm::identity(n);
            for (k, &s) in word.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    g = g.right_gen(s);
                }
            }
            g == *u
        })
    }

    #[test]
    fn bruhat_agrees_with_closure_and_subwords() {
        let g = enumerate_group(2);
        let mut count = 0;
        for u in &g {
            for v in &g {
                let a = bruhat_leq(u, v).unwrap();
                assert_eq!(a, subword_leq(u, v));
                count += a as usize;
                assert!(bruhat_leq(&SignedPerm::identity(2), v).unwrap());
            }
        }
        assert!(count > 8);
        let closure = BruhatClosure::new(3);
        for u in closure.elements() {
            assert!(closure.leq(u, u));
            for v in closure.elements() {
                assert_eq!(closure.leq(u, v), bruhat_leq(u, v).unwrap(), "{u} {v}");
            }
        }
    }

    #[test]
    fn classes_by_conjugation() {
        for n in 1..=3 {
            let g = enumerate_group(n);
            let cls = classes(n);
            assert_eq!(cls.iter().map(|c| c.2).sum::<usize>(), g.len());
            assert_eq!(cls.len(), crate::shape::bipartitions(n as u32).len());
            for (_, rep, size) in &cls {
                let orbit: HashSet<SignedPerm> = g.iter().map(|h| h.mul(rep).mul(&h.inverse())).collect();
                assert_eq!(orbit.len(), *size);
                assert!(orbit.iter().all(|x| x.cycle_type() == rep.cycle_type()));
            }
        }
        assert_eq!(classes(2).len(), 5);
    }

    #[test]
    fn one_line_form() {
        assert_eq!(w("3,-1,2").to_string(), "3,-1,2");
        assert!("3,3,1".parse::<SignedPerm>().is_err());
        assert!("0,1".parse::<SignedPerm>().is_err());
    }
}
