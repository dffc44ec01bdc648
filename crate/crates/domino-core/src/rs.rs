//! Domino Robinson–Schensted correspondence between signed permutations and same-shape
//! tableau pairs.
//!
//! Inserting `w(i)` adds a domino labelled `|w(i)|`: horizontally at the end of row 1 when
//! `w(i) > 0`, vertically at the bottom of column 1 otherwise. Dominos with larger labels
//! are then revisited in increasing order. A domino that does not meet the occupied cells
//! stays put; one that is fully covered drops to the next row (horizontal) or column
//! (vertical); one that is half covered pivots about its free cell. The recording tableau
//! labels the two new cells of step `i` with `i`.

use crate::error::{DominoError, Result};
use crate::shape::Kind;
use crate::tableau::{Cell, Domino, Tableau, TableauPair};
use crate::weyl::SignedPerm;
use std::collections::BTreeMap;

type Partial = BTreeMap<u32, Domino>;

/// Row lengths of a Young diagram that grows one domino at a time.
#[derive(Clone, Default)]
struct Occ {
    rows: Vec<i32>,
}

impl Occ {
    fn new(kind: Kind) -> Occ {
        let mut o = Occ::default();
        if kind.has_core() {
            o.add((1, 1));
        }
        o
    }

    fn has(&self, (r, c): Cell) -> bool {
        r >= 1 && c >= 1 && (r as usize) <= self.rows.len() && c <= self.rows[r as usize - 1]
    }

    fn add(&mut self, (r, c): Cell) {
        let r = r as usize;
        if self.rows.len() < r {
            self.rows.resize(r, 0);
        }
        self.rows[r - 1] = self.rows[r - 1].max(c);
    }

    fn add_domino(&mut self, d: &Domino) {
        for c in d.cells() {
            self.add(c);
        }
    }

    fn row_len(&self, r: i32) -> i32 {
        if r >= 1 && (r as usize) <= self.rows.len() {
            self.rows[r as usize - 1]
        } else {
            0
        }
    }

    fn col_len(&self, c: i32) -> i32 {
        self.rows.iter().filter(|&&l| l >= c).count() as i32
    }
}

fn step(old: Domino, occ: &Occ) -> Domino {
    let [a, b] = old.cells();
    match (occ.has(a), occ.has(b)) {
        (false, false) => old,
        (true, true) => {
            if old.is_horizontal() {
                let r = a.0 + 1;
                Domino::horizontal(r, occ.row_len(r) + 1)
            } else {
                let c = a.1 + 1;
                Domino::vertical(occ.col_len(c) + 1, c)
            }
        }
        (ha, _) => {
            let free = if ha { b } else { a };
            if old.is_horizontal() {
                Domino::vertical(free.0, free.1)
            } else {
                Domino::horizontal(free.0, free.1)
            }
        }
    }
}

fn initial(positive: bool, occ: &Occ) -> Domino {
    if positive {
        Domino::horizontal(1, occ.row_len(1) + 1)
    } else {
        Domino::vertical(occ.col_len(1) + 1, 1)
    }
}

fn insert_one(p: &Partial, kind: Kind, k: u32, positive: bool) -> Partial {
    let mut occ = Occ::new(kind);
    let mut out = Partial::new();
    for (&l, d) in p.range(..k) {
        occ.add_domino(d);
        out.insert(l, *d);
    }
    let d = initial(positive, &occ);
    occ.add_domino(&d);
    out.insert(k, d);
    for (&l, d) in p.range(k + 1..) {
        let nd = step(*d, &occ);
        occ.add_domino(&nd);
        out.insert(l, nd);
    }
    out
}

fn cells_of(p: &Partial, kind: Kind) -> Vec<Cell> {
    let mut v: Vec<Cell> = if kind.has_core() { vec![(1, 1)] } else { Vec::new() };
    for d in p.values() {
        v.extend(d.cells());
    }
    v.sort_unstable();
    v
}

/// `(T_L(w), T_R(w))`: the insertion tableau and the recording tableau.
pub fn insert(w: &SignedPerm, kind: Kind) -> TableauPair {
    let mut p = Partial::new();
    let mut q = Vec::with_capacity(w.rank());
    for &x in w.images() {
        let before = cells_of(&p, kind);
        p = insert_one(&p, kind, x.unsigned_abs(), x > 0);
        let added: Vec<Cell> = cells_of(&p, kind).into_iter().filter(|c| before.binary_search(c).is_err()).collect();
        debug_assert_eq!(added.len(), 2);
        q.push(Domino::unchecked(added[0], added[1]));
    }
    let left = Tableau::from_parts_unchecked(kind, p.into_values().collect());
    let right = Tableau::from_parts_unchecked(kind, q);
    TableauPair { left, right }
}

/// Old positions of a domino that the forward step could have sent to `nd`.
fn preimages(nd: Domino, occ: &Occ) -> Vec<Domino> {
    let mut cands = vec![nd];
    let a = nd.cells()[0];
    if nd.is_horizontal() {
        if a.0 >= 2 {
            let r = a.0 - 1;
            cands.extend((1..occ.row_len(r)).map(|c| Domino::horizontal(r, c)));
        }
        for other in [(a.0 - 1, a.1), (a.0 + 1, a.1)] {
            if other.0 >= 1 {
                cands.push(Domino::unchecked(a, other));
            }
        }
    } else {
        if a.1 >= 2 {
            let c = a.1 - 1;
            cands.extend((1..occ.col_len(c)).map(|r| Domino::vertical(r, c)));
        }
        for other in [(a.0, a.1 - 1), (a.0, a.1 + 1)] {
            if other.1 >= 1 {
                cands.push(Domino::unchecked(a, other));
            }
        }
    }
    cands.sort_unstable();
    cands.dedup();
    cands.into_iter().filter(|&c| step(c, occ) == nd).collect()
}

/// All `(label, sign, previous partial tableau)` that insert to `p` while adding `added`.
fn unsteps(p: &Partial, kind: Kind, added: &[Cell; 2]) -> Vec<(u32, bool, Partial)> {
    let target: Vec<Cell> = cells_of(p, kind).into_iter().filter(|c| !added.contains(c)).collect();
    let mut out = Vec::new();
    for (&k, &dk) in p {
        let mut small = Occ::new(kind);
        for d in p.range(..k).map(|(_, d)| d) {
            small.add_domino(d);
        }
        let positive = if dk == initial(true, &small) {
            true
        } else if dk == initial(false, &small) {
            false
        } else {
            continue;
        };
        let big: Vec<u32> = p.range(k + 1..).map(|(&l, _)| l).rev().collect();
        let mut occ_before: Vec<Occ> = Vec::with_capacity(big.len());
        for &l in &big {
            let mut o = small.clone();
            o.add_domino(&dk);
            for (_, d) in p.range(k + 1..l) {
                o.add_domino(d);
            }
            occ_before.push(o);
        }
        let small_part: Partial = p.range(..k).map(|(&l, &d)| (l, d)).collect();
        let mut used: Vec<Cell> = cells_of(&small_part, kind);
        let mut chosen: Vec<Domino> = Vec::with_capacity(big.len());
        search(p, &big, &occ_before, 0, &target, &mut used, &mut chosen, &mut |olds| {
            let mut prev: Partial = p.range(..k).map(|(&l, &d)| (l, d)).collect();
            for (&l, &d) in big.iter().zip(olds) {
                prev.insert(l, d);
            }
            if insert_one(&prev, kind, k, positive) == *p {
                out.push((k, positive, prev));
            }
        });
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn search(
    p: &Partial,
    big: &[u32],
    occ_before: &[Occ],
    idx: usize,
    target: &[Cell],
    used: &mut Vec<Cell>,
    chosen: &mut Vec<Domino>,
    emit: &mut dyn FnMut(&[Domino]),
) {
    if idx == big.len() {
        let mut u = used.clone();
        u.sort_unstable();
        if u == target {
            emit(chosen);
        }
        return;
    }
    let nd = p[&big[idx]];
    for cand in preimages(nd, &occ_before[idx]) {
        let cs = cand.cells();
        if cs.iter().any(|c| used.contains(c) || target.binary_search(c).is_err()) {
            continue;
        }
        used.extend(cs);
        chosen.push(cand);
        search(p, big, occ_before, idx + 1, target, used, chosen, emit);
        chosen.pop();
        used.truncate(used.len() - 2);
    }
}

/// Inverse of [`insert`].
pub fn extract(pair: &TableauPair) -> Result<SignedPerm> {
    let kind = pair.kind();
    if !pair.left.is_valid() || !pair.right.is_valid() || pair.left.shape() != pair.right.shape() {
        return Err(DominoError::Invalid("not a valid same-shape pair".into()));
    }
    let p: Partial = pair.left.dominos().iter().enumerate().map(|(i, d)| (i as u32 + 1, *d)).collect();
    let q = pair.right.dominos();
    fn rec(p: Partial, q: &[Domino], kind: Kind) -> Option<Vec<i32>> {
        let Some(last) = q.last() else { return Some(Vec::new()) };
        for (k, positive, prev) in unsteps(&p, kind, &last.cells()) {
            if let Some(mut w) = rec(prev, &q[..q.len() - 1], kind) {
                w.push(if positive { k as i32 } else { -(k as i32) });
                return Some(w);
            }
        }
        None
    }
    let w = rec(p, q, kind).ok_or_else(|| DominoError::Invalid("pair has no preimage".into()))?;
    SignedPerm::new(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{enumerate_group, Side};
    use std::collections::HashSet;

    #[test]
    fn rank_one() {
        let p = insert(&"1".parse().unwrap(), Kind::C);
        assert_eq!(p.left.domino(1), Domino::horizontal(1, 1));
        assert_eq!(p.right, p.left);
        let p = insert(&"-1".parse().unwrap(), Kind::C);
        assert_eq!(p.left.domino(1), Domino::vertical(1, 1));
        let p = insert(&"1".parse().unwrap(), Kind::B);
        assert_eq!(p.left.domino(1), Domino::horizontal(1, 2));
    }

    #[test]
    fn bijective_and_inverse_swaps_up_to_rank_three() {
        for kind in Kind::all() {
            for n in 0..=3 {
                let mut seen = HashSet::new();
                for w in enumerate_group(n) {
                    let p = insert(&w, kind);
                    assert!(p.left.is_valid() && p.right.is_valid(), "{w}");
                    assert_eq!(p.left.shape(), p.right.shape());
                    assert!(seen.insert(p.clone()));
                    assert_eq!(insert(&w.inverse(), kind), p.swap());
                    assert_eq!(extract(&p).unwrap(), w);
                    assert_eq!(extract(&p.swap()).unwrap(), w.inverse());
                    assert_eq!(crate::operators::tau(&p.left), w.descents(Side::Left));
                    assert_eq!(crate::operators::tau(&p.right), w.descents(Side::Right));
                }
            }
        }
    }

    #[test]
    fn extract_rank_zero_is_identity() {
        let e = TableauPair::new(Tableau::empty(Kind::C), Tableau::empty(Kind::C)).unwrap();
        assert_eq!(extract(&e).unwrap(), SignedPerm::identity(0));
    }
}
