//! Partitions, 2-cores and 2-quotients, symbols, and the quasi-staircase families.

use crate::error::{DominoError, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Which domino-tableau model a shape or tableau belongs to.
///
/// Kind `B` reserves the cell (1,1) as a single 0-cell; kind `C` tiles the whole shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    B,
    C,
}

impl Kind {
    pub fn has_core(self) -> bool {
        matches!(self, Kind::B)
    }

    pub fn core_size(self) -> u32 {
        if self.has_core() {
            1
        } else {
            0
        }
    }

    pub fn all() -> [Kind; 2] {
        [Kind::B, Kind::C]
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::B => "B",
            Kind::C => "C",
        })
    }
}

impl FromStr for Kind {
    type Err = DominoError;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "B" | "b" => Ok(Kind::B),
            "C" | "c" => Ok(Kind::C),
            other => Err(DominoError::Parse(format!("unknown tableau kind `{other}`"))),
        }
    }
}

/// A partition, stored as weakly decreasing positive row lengths (row 1 first).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape(Vec<u32>);

impl Shape {
    pub fn new(mut parts: Vec<u32>) -> Result<Shape> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(DominoError::Invalid(format!("{parts:?} is not a partition")));
        }
        Ok(Shape(parts))
    }

    /// Builds a shape from parts that may be unsorted; zeros are dropped.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Shape {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Shape(parts)
    }

    pub fn empty() -> Shape {
        Shape(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn num_rows(&self) -> usize {
        self.0.len()
    }

    /// Length of row `i` (1-indexed), zero past the last row.
    pub fn rho(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    /// Length of column `j` (1-indexed), zero past the last column.
    pub fn kappa(&self, j: usize) -> u32 {
        self.0.iter().filter(|&&p| p as usize >= j && j > 0).count() as u32
    }

    pub fn transpose(&self) -> Shape {
        let cols = self.rho(1) as usize;
        Shape((1..=cols).map(|j| self.kappa(j)).collect())
    }

    pub fn contains(&self, (r, c): (i32, i32)) -> bool {
        r >= 1 && c >= 1 && (c as u32) <= self.rho(r as usize)
    }

    /// All cells, row by row.
    pub fn cells(&self) -> Vec<(i32, i32)> {
        let mut out = Vec::with_capacity(self.total() as usize);
        for (i, &p) in self.0.iter().enumerate() {
            for j in 1..=p {
                out.push((i as i32 + 1, j as i32));
            }
        }
        out
    }

    /// The shape occupied by a cell set, if the set is a Young diagram.
    pub fn from_cells<'a, I: IntoIterator<Item = &'a (i32, i32)>>(cells: I) -> Option<Shape> {
        let mut rows: Vec<u32> = Vec::new();
        let mut count = 0usize;
        for &(r, c) in cells {
            if r < 1 || c < 1 {
                return None;
            }
            let r = r as usize;
            if rows.len() < r {
                rows.resize(r, 0);
            }
            rows[r - 1] = rows[r - 1].max(c as u32);
            count += 1;
        }
        let shape = Shape::new(rows).ok()?;
        (shape.total() as usize == count).then_some(shape)
    }

    /// 2-core and 2-quotient under the fixed bead convention of [`two_core_quotient`].
    pub fn core_quotient(&self) -> (Shape, Bipartition) {
        two_core_quotient(self)
    }

    pub fn is_tilable(&self, kind: Kind) -> bool {
        is_tilable(self, kind)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for Shape {
    type Err = DominoError;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(Shape::empty());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| DominoError::Parse(format!("bad shape part `{p}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Shape::new(parts)
    }
}

impl Serialize for Shape {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Shape {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An ordered pair of partitions; indexes the irreducible characters of the hyperoctahedral group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bipartition {
    pub first: Shape,
    pub second: Shape,
}

impl Bipartition {
    pub fn new(first: Shape, second: Shape) -> Bipartition {
        Bipartition { first, second }
    }

    pub fn size(&self) -> u32 {
        self.first.total() + self.second.total()
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{})", self.first, self.second)
    }
}

/// A Lusztig symbol: `top` has one more entry than `bottom`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Symbol {
    pub top: Vec<u32>,
    pub bottom: Vec<u32>,
}

impl Symbol {
    pub fn of(bp: &Bipartition) -> Symbol {
        let a = bp.first.parts();
        let b = bp.second.parts();
        let m = (a.len().saturating_sub(1)).max(b.len());
        let padded = |p: &[u32], len: usize| {
            let mut v: Vec<u32> = p.to_vec();
            v.resize(len, 0);
            v.sort_unstable();
            v.into_iter().enumerate().map(|(i, x)| x + i as u32).collect::<Vec<u32>>()
        };
        Symbol { top: padded(a, m + 1), bottom: padded(b, m) }
    }

    /// Weak interleaving `t1 <= b1 <= t2 <= ... <= t(m+1)`.
    pub fn interleaves(&self) -> bool {
        let mut seq = Vec::with_capacity(self.top.len() + self.bottom.len());
        for (i, &b) in self.bottom.iter().enumerate() {
            seq.push(self.top[i]);
            seq.push(b);
        }
        if let Some(&t) = self.top.last() {
            seq.push(t);
        }
        seq.windows(2).all(|w| w[0] <= w[1])
    }
}

fn beta_to_partition(mut beads: Vec<u32>) -> Shape {
    beads.sort_unstable_by(|a, b| b.cmp(a));
    let k = beads.len() as u32;
    Shape::from_unsorted(beads.iter().enumerate().map(|(i, &b)| b - (k - 1 - i as u32)).collect())
}

/// Computes the 2-core and 2-quotient on an abacus with `N` beads, where `N` is the
/// number of rows, bumped by one when needed so that `N + |shape|` is odd.
///
/// `first` reads the even-position beads, `second` the odd ones. With this choice the
/// one-row shape of every rank maps to `((n), ())` in both kinds.
pub fn two_core_quotient(shape: &Shape) -> (Shape, Bipartition) {
    let mut n = shape.num_rows() as u32;
    if (n + shape.total()).is_multiple_of(2) {
        n += 1;
    }
    let beta: Vec<u32> = (0..n).map(|i| shape.rho(i as usize + 1) + n - 1 - i).collect();
    let even: Vec<u32> = beta.iter().filter(|b| *b % 2 == 0).map(|b| b / 2).collect();
    let odd: Vec<u32> = beta.iter().filter(|b| *b % 2 == 1).map(|b| b / 2).collect();
    let mut core_beads: Vec<u32> = (0..even.len() as u32).map(|i| 2 * i).collect();
    core_beads.extend((0..odd.len() as u32).map(|i| 2 * i + 1));
    let core = beta_to_partition(core_beads);
    (core, Bipartition::new(beta_to_partition(even), beta_to_partition(odd)))
}

pub fn is_tilable(shape: &Shape, kind: Kind) -> bool {
    let (core, _) = two_core_quotient(shape);
    match kind {
        Kind::C => core.is_empty(),
        Kind::B => core.parts() == [1],
    }
}

/// Specialness of a tilable shape through the symbol of its 2-quotient.
pub fn is_special(shape: &Shape, kind: Kind) -> Result<bool> {
    if !is_tilable(shape, kind) {
        return Err(DominoError::Invalid(format!("shape {shape} is not tilable in kind {kind}")));
    }
    let (_, q) = two_core_quotient(shape);
    Ok(Symbol::of(&q).interleaves())
}

/// A domino-shaped pair of cells, stored in row-major order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExtremalPosition {
    pub cells: [(i32, i32); 2],
}

/// Positions whose removal leaves a shape that is still tilable for `kind`.
pub fn extremal_positions(shape: &Shape, kind: Kind) -> Vec<ExtremalPosition> {
    let cells = shape.cells();
    let mut out = Vec::new();
    for &(r, c) in &cells {
        for other in [(r, c + 1), (r + 1, c)] {
            if !shape.contains(other) {
                continue;
            }
            if kind.has_core() && ((r, c) == (1, 1)) {
                continue;
            }
            let rest: Vec<(i32, i32)> =
                cells.iter().copied().filter(|&x| x != (r, c) && x != other).collect();
            if let Some(s) = Shape::from_cells(rest.iter()) {
                if is_tilable(&s, kind) {
                    out.push(ExtremalPosition { cells: [(r, c), other] });
                }
            }
        }
    }
    out
}

/// The two quasi-staircase families of a kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// σ_n in kind C, `(2n+1..n+3, n+2, n, n, n-2..1)` in kind B.
    Sigma,
    /// τ_n in kind C, `(2n+2..n+5, n+4, n+2, n+2, n, n-1..1)` in kind B.
    Tau,
}

/// The untransposed quasi-staircase shape of a family at level `n >= 2`.
pub fn family_shape(kind: Kind, family: Family, n: u32) -> Shape {
    let mut parts: Vec<u32> = Vec::new();
    match (kind, family) {
        (Kind::C, Family::Sigma) => {
            parts.extend((n + 3..=2 * n + 1).rev());
            parts.extend([n + 1, n + 1]);
            parts.extend((1..n).rev());
        }
        (Kind::C, Family::Tau) => {
            parts.extend((n + 4..=2 * n + 2).rev());
            parts.extend([n + 3, n + 1, n + 1]);
            parts.extend((1..n).rev());
        }
        (Kind::B, Family::Sigma) => {
            parts.extend((n + 3..=2 * n + 1).rev());
            parts.extend([n + 2, n, n]);
            parts.extend((1..n.saturating_sub(1)).rev());
        }
        (Kind::B, Family::Tau) => {
            parts.extend((n + 5..=2 * n + 2).rev());
            parts.extend([n + 4, n + 2, n + 2, n]);
            parts.extend((1..n).rev());
        }
    }
    Shape::from_unsorted(parts)
}

/// Number of dominos tiling a family shape.
pub fn family_dominos(kind: Kind, family: Family, n: u32) -> u32 {
    (family_shape(kind, family, n).total() - kind.core_size()) / 2
}

/// Recognizes a quasi-staircase or the transpose of one.
pub fn quasi_staircase(shape: &Shape, kind: Kind) -> Option<(Family, u32, bool)> {
    let total = shape.total();
    for n in 2.. {
        let s = family_shape(kind, Family::Sigma, n);
        if s.total() > total {
            return None;
        }
        for family in [Family::Sigma, Family::Tau] {
            let f = family_shape(kind, family, n);
            if &f == shape {
                return Some((family, n, false));
            }
            if &f.transpose() == shape {
                return Some((family, n, true));
            }
        }
    }
    None
}

/// All partitions of `n` in reverse lexicographic order.
pub fn partitions(n: u32) -> Vec<Shape> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Shape>) {
        if n == 0 {
            out.push(Shape(cur.clone()));
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            rec(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All bipartitions of `n`, ordered by decreasing size of the first component.
pub fn bipartitions(n: u32) -> Vec<Bipartition> {
    let mut out = Vec::new();
    for k in (0..=n).rev() {
        for a in partitions(k) {
            for b in partitions(n - k) {
                out.push(Bipartition::new(a.clone(), b));
            }
        }
    }
    out
}

/// All shapes of a given total that are tilable for `kind`.
pub fn tilable_shapes(total: u32, kind: Kind) -> Vec<Shape> {
    partitions(total).into_iter().filter(|s| is_tilable(s, kind)).collect()
}

/// Number of standard Young tableaux, by the hook length formula.
pub fn standard_count(shape: &Shape) -> u128 {
    let n = shape.total() as u128;
    let mut num: u128 = 1;
    for k in 1..=n {
        num *= k;
    }
    let mut den: u128 = 1;
    for (i, &p) in shape.parts().iter().enumerate() {
        for j in 1..=p as usize {
            let arm = p as usize - j;
            let leg = shape.kappa(j) as usize - (i + 1);
            den *= (arm + leg + 1) as u128;
        }
    }
    num / den
}

fn binomial(n: u32, k: u32) -> u128 {
    let mut r: u128 = 1;
    for i in 0..k as u128 {
        r = r * (n as u128 - i) / (i + 1);
    }
    r
}

/// Number of standard bitableaux of a bipartition.
pub fn bitableau_count(bp: &Bipartition) -> u128 {
    binomial(bp.size(), bp.first.total()) * standard_count(&bp.first) * standard_count(&bp.second)
}
