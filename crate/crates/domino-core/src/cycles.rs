//! Cycles of a domino tableau, moving through them, and extended open cycles of a pair.
//!
//! A cell `(i, j)` is *fixed* when `i + j` is odd, in both kinds; each domino has exactly
//! one fixed cell `F` and one variable cell `V`. Its alternative position `P'` keeps `F`
//! and swings `V` to one of two neighbours of `F`, chosen by comparing the label at a
//! diagonal neighbour of `F` with the domino's own label. Row 0 and column 0 read as 0,
//! the type-B core reads as 0, and cells outside the tableau read as infinite.
//!
//! A cycle is the smallest label set closed under "`P'(l)` meets `m`" and "`P'(m)` meets
//! `l`". It is *core* (immovable) when some member's `P'` leaves the quadrant or lands
//! on the type-B core, or, in kind C, when some member covers `(1,1)`. A movable cycle is
//! *closed* if moving through it keeps its cell set and *open* otherwise.

use crate::error::{DominoError, Result};
use crate::tableau::{Cell, Domino, Tableau, TableauPair};
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Openness {
    Open,
    Closed,
    Core,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cycle {
    pub labels: BTreeSet<u32>,
    pub openness: Openness,
    /// Cells vacated by the move (empty for closed cycles).
    pub removed: Vec<Cell>,
    /// Cells newly covered by the move (empty for closed cycles).
    pub added: Vec<Cell>,
}

impl Cycle {
    pub fn min_label(&self) -> u32 {
        *self.labels.iter().next().expect("cycles are nonempty")
    }

    fn endpoints(&self) -> BTreeSet<Cell> {
        self.removed.iter().chain(&self.added).copied().collect()
    }
}

/// Alternative positions `P'(k)` for every label.
pub fn alternatives(t: &Tableau) -> Vec<Domino> {
    let grid = t.grid();
    t.dominos()
        .iter()
        .enumerate()
        .map(|(idx, d)| {
            let k = idx as u32 + 1;
            let [a, b] = d.cells();
            let (f, v) = if (a.0 + a.1) % 2 != 0 { (a, b) } else { (b, a) };
            let (i, j) = f;
            let dir = (v.0 - i, v.1 - j);
            let (probe, first, second) = match dir {
                (1, 0) | (0, -1) => ((i - 1, j + 1), (i, j + 1), (i - 1, j)),
                _ => ((i + 1, j - 1), (i + 1, j), (i, j - 1)),
            };
            let small = if probe.0 == 0 || probe.1 == 0 {
                true
            } else {
                matches!(grid.get(probe), Some(x) if x < k)
            };
            Domino::unchecked(f, if small { first } else { second })
        })
        .collect()
}

fn movable(t: &Tableau, labels: &BTreeSet<u32>, alt: &[Domino]) -> bool {
    labels.iter().all(|&k| {
        let p = alt[k as usize - 1];
        let in_quadrant = p.cells().iter().all(|c| c.0 >= 1 && c.1 >= 1);
        let hits_core = t.kind().has_core() && p.contains((1, 1));
        let covers_corner = !t.kind().has_core() && t.domino(k).contains((1, 1));
        in_quadrant && !hits_core && !covers_corner
    })
}

/// The cycle decomposition of a tableau, ordered by minimal label.
pub fn cycles(t: &Tableau) -> Vec<Cycle> {
    let alt = alternatives(t);
    let grid = t.grid();
    let n = t.rank() as u32;
    let mut assigned = vec![false; n as usize + 1];
    let mut out = Vec::new();
    for start in 1..=n {
        if assigned[start as usize] {
            continue;
        }
        let mut labels = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(l) = stack.pop() {
            let mut found: Vec<u32> = Vec::new();
            for c in alt[l as usize - 1].cells() {
                if let Some(m) = grid.get(c) {
                    if m != 0 && m != l {
                        found.push(m);
                    }
                }
            }
            let dl = t.domino(l);
            for m in 1..=n {
                if alt[m as usize - 1].cells().iter().any(|&c| dl.contains(c)) {
                    found.push(m);
                }
            }
            for m in found {
                if labels.insert(m) {
                    stack.push(m);
                }
            }
        }
        for &l in &labels {
            assigned[l as usize] = true;
        }
        let old: BTreeSet<Cell> = labels.iter().flat_map(|&k| t.domino(k).cells()).collect();
        let new: BTreeSet<Cell> = labels.iter().flat_map(|&k| alt[k as usize - 1].cells()).collect();
        let removed: Vec<Cell> = old.difference(&new).copied().collect();
        let added: Vec<Cell> = new.difference(&old).copied().collect();
        let openness = if !movable(t, &labels, &alt) {
            Openness::Core
        } else if removed.is_empty() {
            Openness::Closed
        } else {
            Openness::Open
        };
        out.push(Cycle { labels, openness, removed, added });
    }
    out
}

/// Moves through the cycle of `t` with exactly these labels.
pub fn move_through(t: &Tableau, labels: &BTreeSet<u32>) -> Result<Tableau> {
    let cs = cycles(t);
    let c = cs
        .iter()
        .find(|c| &c.labels == labels)
        .ok_or_else(|| DominoError::Invalid(format!("{labels:?} is not a cycle of the tableau")))?;
    if c.openness == Openness::Core {
        return Err(DominoError::Invalid(format!("cycle {labels:?} cannot be moved")));
    }
    let alt = alternatives(t);
    let mut dominos = t.dominos().to_vec();
    for &k in labels {
        dominos[k as usize - 1] = alt[k as usize - 1];
    }
    Ok(Tableau::from_parts_unchecked(t.kind(), dominos))
}

/// An extended open cycle: open cycles of the left and of the right tableau whose
/// shape-change cells chain together.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ExtendedOpenCycle {
    pub left: Vec<BTreeSet<u32>>,
    pub right: Vec<BTreeSet<u32>>,
}

impl ExtendedOpenCycle {
    pub fn left_labels(&self) -> BTreeSet<u32> {
        self.left.iter().flatten().copied().collect()
    }

    pub fn right_labels(&self) -> BTreeSet<u32> {
        self.right.iter().flatten().copied().collect()
    }

    fn sort_key(&self) -> (u32, u32) {
        let l = self.left.iter().map(|c| *c.iter().next().unwrap()).min().unwrap_or(u32::MAX);
        let r = self.right.iter().map(|c| *c.iter().next().unwrap()).min().unwrap_or(u32::MAX);
        (l, r)
    }
}

/// Extended open cycles of `pair.left` relative to `pair.right`.
///
/// All shape-changing cycles of both tableaux, core ones included, are joined when they
/// share an endpoint cell. Components containing a core cycle are discarded.
pub fn extended_open_cycles(pair: &TableauPair) -> Vec<ExtendedOpenCycle> {
    let mut nodes: Vec<(bool, Cycle)> = Vec::new();
    for (is_left, t) in [(true, &pair.left), (false, &pair.right)] {
        for c in cycles(t) {
            if !c.removed.is_empty() {
                nodes.push((is_left, c));
            }
        }
    }
    let ends: Vec<BTreeSet<Cell>> = nodes.iter().map(|(_, c)| c.endpoints()).collect();
    let mut parent: Vec<usize> = (0..nodes.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            if !ends[i].is_disjoint(&ends[j]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..nodes.len() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut out: Vec<ExtendedOpenCycle> = groups
        .values()
        .filter(|g| g.iter().all(|&i| nodes[i].1.openness == Openness::Open))
        .map(|g| {
            let mut e = ExtendedOpenCycle { left: Vec::new(), right: Vec::new() };
            for &i in g {
                let (is_left, c) = &nodes[i];
                if *is_left {
                    e.left.push(c.labels.clone());
                } else {
                    e.right.push(c.labels.clone());
                }
            }
            e.left.sort();
            e.right.sort();
            e
        })
        .collect();
    out.sort_by_key(|e| e.sort_key());
    out
}

/// Moves both tableaux through every constituent cycle of each member of `set`.
pub fn move_pair_through(pair: &TableauPair, set: &[ExtendedOpenCycle]) -> Result<TableauPair> {
    let mut left = pair.left.clone();
    let mut right = pair.right.clone();
    for e in set {
        for c in &e.left {
            left = move_through(&left, c)?;
        }
        for c in &e.right {
            right = move_through(&right, c)?;
        }
    }
    TableauPair::new(left, right)
}

/// The pairs reached through every subset of the extended open cycles, indexed by subset bitmask.
pub fn subset_images(pair: &TableauPair) -> Result<(Vec<ExtendedOpenCycle>, Vec<TableauPair>)> {
    let ext = extended_open_cycles(pair);
    let mut images = Vec::with_capacity(1 << ext.len());
    for mask in 0u32..(1 << ext.len()) {
        let chosen: Vec<ExtendedOpenCycle> =
            ext.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e.clone()).collect();
        images.push(move_pair_through(pair, &chosen)?);
    }
    Ok((ext, images))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::{tilable_shapes, Kind};
    use crate::tableau::Tableau;
    use std::collections::HashSet;

    fn all_tableaux(kind: Kind, rank: u32) -> Vec<Tableau> {
        tilable_shapes(2 * rank + kind.core_size(), kind)
            .iter()
            .flat_map(|s| Tableau::enumerate(s, kind).unwrap())
            .collect()
    }

    #[test]
    fn rank_one_kind_c_cycle_is_a_singleton() {
        let t = Tableau::new(Kind::C, vec![Domino::horizontal(1, 1)]).unwrap();
        let cs = cycles(&t);
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].labels, BTreeSet::from([1]));
    }

    #[test]
    fn cycles_partition_and_moves_are_involutions() {
        for kind in Kind::all() {
            for rank in 1..=4 {
                for t in all_tableaux(kind, rank) {
                    let cs = cycles(&t);
                    let mut all: Vec<u32> = cs.iter().flat_map(|c| c.labels.iter().copied()).collect();
                    all.sort_unstable();
                    assert_eq!(all, (1..=rank).collect::<Vec<_>>());
                    for c in cs.iter().filter(|c| c.openness != Openness::Core) {
                        let m = move_through(&t, &c.labels).unwrap();
                        assert!(m.is_valid(), "{t:?} {c:?}");
                        let back_cycle = cycles(&m).into_iter().find(|d| d.labels == c.labels).unwrap();
                        assert_ne!(back_cycle.openness, Openness::Core);
                        assert_eq!(move_through(&m, &c.labels).unwrap(), t);
                        let (s0, s1) = (t.shape(), m.shape());
                        match c.openness {
                            Openness::Closed => assert_eq!(s0, s1),
                            _ => {
                                assert_ne!(s0, s1);
                                assert_eq!(c.removed.len(), 1);
                                assert_eq!(c.added.len(), 1);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn disjoint_cycles_commute() {
        for kind in Kind::all() {
            for t in all_tableaux(kind, 3) {
                let cs: Vec<Cycle> = cycles(&t).into_iter().filter(|c| c.openness != Openness::Core).collect();
                for a in &cs {
                    for b in &cs {
                        if a == b {
                            continue;
                        }
                        let ab = move_through(&t, &a.labels).and_then(|x| move_through(&x, &b.labels));
                        let ba = move_through(&t, &b.labels).and_then(|x| move_through(&x, &a.labels));
                        if let (Ok(x), Ok(y)) = (ab, ba) {
                            assert_eq!(x, y);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn extended_cycles_are_disjoint_and_subsets_inject() {
        for kind in Kind::all() {
            for n in 0..=4 {
                for w in crate::weyl::enumerate_group(n) {
                    let pair = crate::rs::insert(&w, kind);
                    let (ext, images) = subset_images(&pair).unwrap();
                    let mut l = HashSet::new();
                    let mut r = HashSet::new();
                    for e in &ext {
                        for x in e.left_labels() {
                            assert!(l.insert(x));
                        }
                        for x in e.right_labels() {
                            assert!(r.insert(x));
                        }
                    }
                    let distinct: HashSet<&TableauPair> = images.iter().collect();
                    assert_eq!(distinct.len(), images.len());
                    assert!(move_pair_through(&pair, &[]).unwrap() == pair);
                    for (mask, img) in images.iter().enumerate() {
                        let chosen: Vec<ExtendedOpenCycle> = ext
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| mask >> i & 1 == 1)
                            .map(|(_, e)| e.clone())
                            .collect();
                        assert_eq!(move_pair_through(img, &chosen).unwrap(), pair);
                    }
                }
            }
        }
    }
}
