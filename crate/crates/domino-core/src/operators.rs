//! τ-invariants and the operator families acting on tableau pairs.

use crate::cycles::{extended_open_cycles, move_pair_through, subset_images, ExtendedOpenCycle};
use crate::error::{DominoError, Result};
use crate::rs;
use crate::shape::{family_dominos, family_shape, Family, Kind, Shape};
use crate::tableau::{Cell, Domino, Tableau, TableauPair};
use crate::weyl::{SignedPerm, Side};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// τ-invariant: `1` when domino 1 is vertical, and `i >= 2` when domino `i` lies
/// entirely below domino `i - 1`.
pub fn tau(t: &Tableau) -> Vec<usize> {
    let mut out = Vec::new();
    if t.rank() >= 1 && t.domino(1).is_vertical() {
        out.push(1);
    }
    for i in 2..=t.rank() as u32 {
        if t.domino(i).min_row() > t.domino(i - 1).max_row() {
            out.push(i as usize);
        }
    }
    out
}

fn tau_has(t: &Tableau, i: usize) -> bool {
    match i {
        0 => false,
        1 => t.rank() >= 1 && t.domino(1).is_vertical(),
        _ => i <= t.rank() && t.domino(i as u32).min_row() > t.domino(i as u32 - 1).max_row(),
    }
}

/// One operator of the generating families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OperatorId {
    /// `T_{α_i α_j}` with `|i - j| = 1` and `i, j >= 2`.
    SameLength { i: usize, j: usize },
    /// `U^L_{α_1 α_2}` when `forward`, `U^L_{α_2 α_1}` otherwise.
    DiffLengthL { forward: bool },
    /// `S_n`, `S_n'` (`prime`), and their transposes.
    SFamily { prime: bool, n: u32, transposed: bool },
    /// The enlarged `T_n`, `T_n'` and their transposes.
    Enlarged { prime: bool, n: u32, transposed: bool },
}

impl fmt::Display for OperatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = |b: bool| if b { "t" } else { "" };
        let p = |b: bool| if b { "'" } else { "" };
        match *self {
            OperatorId::SameLength { i, j } => write!(f, "T:{i},{j}"),
            OperatorId::DiffLengthL { forward } => write!(f, "UL:{}", if forward { "fwd" } else { "rev" }),
            OperatorId::SFamily { prime, n, transposed } => write!(f, "{}S{}:{n}", t(transposed), p(prime)),
            OperatorId::Enlarged { prime, n, transposed } => write!(f, "{}EnlT{}:{n}", t(transposed), p(prime)),
        }
    }
}

impl FromStr for OperatorId {
    type Err = DominoError;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || DominoError::Parse(format!("unknown operator literal `{s}`"));
        let (head, arg) = s.trim().split_once(':').ok_or_else(bad)?;
        let num = |x: &str| x.trim().parse::<u32>().map_err(|_| bad());
        match head {
            "T" => {
                let (i, j) = arg.split_once(',').ok_or_else(bad)?;
                let (i, j) = (num(i)? as usize, num(j)? as usize);
                if i < 2 || j < 2 || i.abs_diff(j) != 1 {
                    return Err(DominoError::Parse(format!("T:{i},{j} needs adjacent indices >= 2")));
                }
                Ok(OperatorId::SameLength { i, j })
            }
            "UL" => match arg.trim() {
                "fwd" => Ok(OperatorId::DiffLengthL { forward: true }),
                "rev" => Ok(OperatorId::DiffLengthL { forward: false }),
                _ => Err(bad()),
            },
            _ => {
                let (transposed, rest) = match head.strip_prefix('t') {
                    Some(r) => (true, r),
                    None => (false, head),
                };
                let (prime, base) = match rest.strip_suffix('\'') {
                    Some(b) => (true, b),
                    None => (false, rest),
                };
                let n = num(arg)?;
                if n < 2 {
                    return Err(bad());
                }
                match base {
                    "S" => Ok(OperatorId::SFamily { prime, n, transposed }),
                    "EnlT" => Ok(OperatorId::Enlarged { prime, n, transposed }),
                    _ => Err(bad()),
                }
            }
        }
    }
}

/// Parses a comma-separated operator sequence such as `T:2,3,UL:fwd,S:2`.
pub fn parse_sequence(s: &str) -> Result<Vec<OperatorId>> {
    let tokens: Vec<&str> = s.split(',').map(str::trim).filter(|t| !t.is_empty()).collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < tokens.len() {
        if tokens[k].starts_with("T:") {
            let j = tokens.get(k + 1).ok_or_else(|| DominoError::Parse(format!("`{}` lacks j", tokens[k])))?;
            out.push(format!("{},{}", tokens[k], j).parse()?);
            k += 2;
        } else {
            out.push(tokens[k].parse()?);
            k += 1;
        }
    }
    Ok(out)
}

/// Switches that select alternative readings of the operator definitions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct OperatorOptions {
    /// Restrict the S-family domain to one canonical filling of the prefix.
    pub strict_s: bool,
    /// Read the enlarged-operator cycle test literally ("contains d_1").
    pub literal_enlarged: bool,
    /// Use only the box/hook recipe for `U^L` instead of the full wall crossing.
    pub u_recipe_only: bool,
}

fn cells_of(t: &Tableau, labels: &[u32]) -> BTreeSet<Cell> {
    labels.iter().flat_map(|&l| t.domino(l).cells()).collect()
}

fn tilings(cells: &BTreeSet<Cell>) -> Vec<Vec<Domino>> {
    let Some(&c) = cells.iter().next() else { return vec![Vec::new()] };
    let mut out = Vec::new();
    for d in [(c.0, c.1 + 1), (c.0 + 1, c.1)] {
        if cells.contains(&d) {
            let mut rest = cells.clone();
            rest.remove(&c);
            rest.remove(&d);
            for mut t in tilings(&rest) {
                t.insert(0, Domino::unchecked(c, d));
                out.push(t);
            }
        }
    }
    out
}

fn permutations3<T: Copy>(v: &[T]) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    for a in 0..v.len() {
        for b in 0..v.len() {
            for c in 0..v.len() {
                if a != b && b != c && a != c {
                    out.push(vec![v[a], v[b], v[c]]);
                }
            }
        }
    }
    out
}

/// `T_{α_i α_j}` on a single tableau: defined when `j ∈ τ` and `i ∉ τ`.
///
/// The image is the first admissible label interchange `(i-1, i)` or `(j-1, j)`; when
/// neither works the three dominos `k-1, k, k+1` (`k = min(i, j)`) are retiled.
pub fn t_same_length_tableau(i: usize, j: usize, t: &Tableau) -> Option<Tableau> {
    if i < 2 || j < 2 || i.abs_diff(j) != 1 || i.max(j) > t.rank() {
        return None;
    }
    if !(tau_has(t, j) && !tau_has(t, i)) {
        return None;
    }
    let ok = |x: &Tableau| x.is_valid() && tau_has(x, i) && !tau_has(x, j);
    for (a, b) in [(i - 1, i), (j - 1, j)] {
        let x = t.swap_labels(a as u32, b as u32);
        if ok(&x) {
            return Some(x);
        }
    }
    let k = i.min(j) as u32;
    let labels = [k - 1, k, k + 1];
    let region = cells_of(t, &labels);
    let mut found: Vec<Tableau> = Vec::new();
    for tiling in tilings(&region) {
        for perm in permutations3(&tiling) {
            let mut x = t.clone();
            for (&l, &d) in labels.iter().zip(&perm) {
                x = x.with_domino(l, d);
            }
            if ok(&x) {
                found.push(x);
            }
        }
    }
    found.sort();
    found.dedup();
    found.into_iter().next()
}

pub fn apply_t_same_length(i: usize, j: usize, pair: &TableauPair) -> Option<TableauPair> {
    t_same_length_tableau(i, j, &pair.left).map(|left| TableauPair { left, right: pair.right.clone() })
}

fn u_direction(forward: bool) -> (usize, usize) {
    if forward {
        (1, 2)
    } else {
        (2, 1)
    }
}

/// The box (kind C) or hook (kind B) recipe for `U^L`.
///
/// Dominos 1 and 2 are transposed in place; if domino 2 then lies in a closed cycle,
/// moving through that cycle gives a second image.
pub fn u_recipe_tableau(forward: bool, t: &Tableau) -> Vec<Tableau> {
    let (a, b) = u_direction(forward);
    if t.rank() < 2 || !(tau_has(t, b) && !tau_has(t, a)) {
        return Vec::new();
    }
    let region = cells_of(t, &[1, 2]);
    let expected: BTreeSet<Cell> = match t.kind() {
        Kind::C => [(1, 1), (1, 2), (2, 1), (2, 2)].into(),
        Kind::B => [(1, 2), (1, 3), (2, 1), (3, 1)].into(),
    };
    if region != expected {
        return Vec::new();
    }
    let first = t.with_domino(1, t.domino(1).transpose()).with_domino(2, t.domino(2).transpose());
    if !first.is_valid() {
        return Vec::new();
    }
    let mut out = vec![first.clone()];
    let cs = crate::cycles::cycles(&first);
    if let Some(c) = cs.iter().find(|c| c.labels.contains(&2)) {
        if c.openness == crate::cycles::Openness::Closed {
            if let Ok(second) = crate::cycles::move_through(&first, &c.labels) {
                if second != first {
                    out.push(second);
                }
            }
        }
    }
    out
}

/// Group-side images of the different-length wall crossing: those of `s_1 w`, `s_2 w`
/// with `a` but not `b` among their left descents, for `w` with `b` but not `a`.
pub fn t_diff_length_images(forward: bool, w: &SignedPerm) -> Vec<SignedPerm> {
    let (a, b) = u_direction(forward);
    if w.rank() < 2 {
        return Vec::new();
    }
    let has = |x: &SignedPerm, s: usize| x.descents(Side::Left).contains(&s);
    if !(has(w, b) && !has(w, a)) {
        return Vec::new();
    }
    [w.left_gen(1), w.left_gen(2)].into_iter().filter(|x| has(x, a) && !has(x, b)).collect()
}

/// `U^L`: the same-shape images of the different-length wall crossing.
pub fn apply_u_left(forward: bool, pair: &TableauPair) -> Option<Vec<TableauPair>> {
    let (a, b) = u_direction(forward);
    if pair.rank() < 2 || !(tau_has(&pair.left, b) && !tau_has(&pair.left, a)) {
        return None;
    }
    let w = rs::extract(pair).ok()?;
    let shape = pair.shape();
    let mut out: Vec<TableauPair> = t_diff_length_images(forward, &w)
        .iter()
        .map(|y| rs::insert(y, pair.kind()))
        .filter(|p| p.shape() == shape)
        .collect();
    out.sort();
    (!out.is_empty()).then_some(out)
}

/// `U^L` computed from the left tableau alone, completing it to the pair `(t, t)`.
pub fn u_left_tableau(forward: bool, t: &Tableau) -> Vec<Tableau> {
    let pair = TableauPair { left: t.clone(), right: t.clone() };
    apply_u_left(forward, &pair).unwrap_or_default().into_iter().map(|p| p.left).collect()
}

fn s_positions(shape: &Shape) -> Option<(Domino, Domino)> {
    let p = shape.parts();
    let r = (0..p.len().saturating_sub(1)).find(|&i| p[i] == p[i + 1])? + 1;
    if r < 2 {
        return None;
    }
    let l = p[r - 1] as i32;
    let above = p[r - 2] as i32;
    Some((Domino::vertical(r as i32, l), Domino::horizontal(r as i32 - 1, above - 1)))
}

/// The canonical `T̃` filling of a family shape: the smallest tableau whose two largest
/// dominos sit at the S-positions (largest vertical).
pub fn canonical_filling(kind: Kind, family: Family, n: u32) -> Option<Tableau> {
    let shape = family_shape(kind, family, n);
    let m = family_dominos(kind, family, n);
    let (v, h) = s_positions(&shape)?;
    Tableau::enumerate(&shape, kind).ok()?.into_iter().find(|t| t.domino(m) == v && t.domino(m - 1) == h)
}

/// `S_n`/`S_n'` on the untransposed shape.
fn s_untransposed(kind: Kind, family: Family, n: u32, t: &Tableau, strict: bool) -> Option<Tableau> {
    let m = family_dominos(kind, family, n);
    if t.rank() < m as usize {
        return None;
    }
    let shape = family_shape(kind, family, n);
    let prefix = t.prefix(m as usize).ok()?;
    if prefix.shape() != shape {
        return None;
    }
    let (v, h) = s_positions(&shape)?;
    let (big, next) = (t.domino(m), t.domino(m - 1));
    if !((big == v && next == h) || (big == h && next == v)) {
        return None;
    }
    if strict {
        let canon = canonical_filling(kind, family, n)?;
        if canon.prefix(m as usize - 2).ok()? != t.prefix(m as usize - 2).ok()? {
            return None;
        }
    }
    Some(t.swap_labels(m, m - 1))
}

pub fn s_tableau(prime: bool, n: u32, transposed: bool, t: &Tableau, strict: bool) -> Option<Tableau> {
    let family = if prime { Family::Tau } else { Family::Sigma };
    if transposed {
        s_untransposed(t.kind(), family, n, &t.transpose(), strict).map(|x| x.transpose())
    } else {
        s_untransposed(t.kind(), family, n, t, strict)
    }
}

pub fn apply_s(prime: bool, n: u32, transposed: bool, pair: &TableauPair, strict: bool) -> Option<TableauPair> {
    s_tableau(prime, n, transposed, &pair.left, strict).map(|left| TableauPair { left, right: pair.right.clone() })
}

fn transpose_in_box(t: &Tableau, d1: u32, d2: u32) -> Option<Tableau> {
    let cells = cells_of(t, &[d1, d2]);
    let (r0, c0) = *cells.iter().next()?;
    let square: BTreeSet<Cell> = [(r0, c0), (r0, c0 + 1), (r0 + 1, c0), (r0 + 1, c0 + 1)].into();
    if cells != square {
        return None;
    }
    let flip = |d: Domino| {
        let [a, b] = d.cells();
        let f = |(r, c): Cell| (r0 + (c - c0), c0 + (r - r0));
        Domino::unchecked(f(a), f(b))
    };
    let x = t.with_domino(d1, flip(t.domino(d1))).with_domino(d2, flip(t.domino(d2)));
    x.is_valid().then_some(x)
}

fn ext_cycle_of(pair: &TableauPair, label: u32) -> Option<ExtendedOpenCycle> {
    extended_open_cycles(pair).into_iter().find(|e| e.left_labels().contains(&label))
}

/// Enlarged operators on untransposed shapes.
fn enlarged_untransposed(prime: bool, n: u32, pair: &TableauPair, opts: OperatorOptions) -> Option<Vec<TableauPair>> {
    let kind = pair.kind();
    let family = if prime { Family::Tau } else { Family::Sigma };
    let in_domain = |p: &TableauPair| s_untransposed(kind, family, n, &p.left, opts.strict_s).is_some();
    let (_, reach) = subset_images(pair).ok()?;
    if !reach.iter().any(in_domain) {
        return None;
    }
    let region: BTreeSet<Cell> = family_shape(kind, family, n).cells().into_iter().collect();
    let mut inside: Vec<u32> = (1..=pair.rank() as u32)
        .filter(|&l| pair.left.domino(l).cells().iter().all(|c| region.contains(c)))
        .collect();
    let d1 = inside.pop()?;
    let d2 = inside.pop()?;
    let swapped = |p: &TableauPair| -> Option<TableauPair> {
        let left = p.left.swap_labels(d1, d2);
        left.is_valid().then(|| TableauPair { left, right: p.right.clone() })
    };
    if prime {
        return swapped(pair).map(|p| vec![p]);
    }
    let with_cycle_test = |first: TableauPair| -> Vec<TableauPair> {
        let probe = if opts.literal_enlarged { d1 } else { d2 };
        match ext_cycle_of(&first, d1) {
            Some(e) if !e.left_labels().contains(&probe) => match move_pair_through(&first, &[e]) {
                Ok(second) if second != first => vec![first, second],
                _ => vec![first],
            },
            _ => vec![first],
        }
    };
    if let Some(left) = transpose_in_box(&pair.left, d1, d2) {
        return Some(with_cycle_test(TableauPair { left, right: pair.right.clone() }));
    }
    if let Some(left) = s_untransposed(kind, family, n, &pair.left, opts.strict_s) {
        return Some(with_cycle_test(TableauPair { left, right: pair.right.clone() }));
    }
    let e = ext_cycle_of(pair, d2)?;
    let moved = move_pair_through(pair, &[e]).ok()?;
    if let Some(left) = transpose_in_box(&moved.left, d1, d2) {
        return Some(vec![TableauPair { left, right: moved.right }]);
    }
    s_untransposed(kind, family, n, &moved.left, opts.strict_s)
        .map(|left| vec![TableauPair { left, right: moved.right.clone() }])
}

pub fn apply_enlarged(
    prime: bool,
    n: u32,
    transposed: bool,
    pair: &TableauPair,
    opts: OperatorOptions,
) -> Option<Vec<TableauPair>> {
    if transposed {
        enlarged_untransposed(prime, n, &pair.transpose(), opts)
            .map(|v| v.into_iter().map(|p| p.transpose()).collect())
    } else {
        enlarged_untransposed(prime, n, pair, opts)
    }
}

/// All images of one operator (empty when undefined).
pub fn apply(op: OperatorId, pair: &TableauPair, opts: OperatorOptions) -> Vec<TableauPair> {
    match op {
        OperatorId::SameLength { i, j } => apply_t_same_length(i, j, pair).into_iter().collect(),
        OperatorId::DiffLengthL { forward } if opts.u_recipe_only => u_recipe_tableau(forward, &pair.left)
            .into_iter()
            .map(|left| TableauPair { left, right: pair.right.clone() })
            .collect(),
        OperatorId::DiffLengthL { forward } => apply_u_left(forward, pair).unwrap_or_default(),
        OperatorId::SFamily { prime, n, transposed } => {
            apply_s(prime, n, transposed, pair, opts.strict_s).into_iter().collect()
        }
        OperatorId::Enlarged { prime, n, transposed } => {
            apply_enlarged(prime, n, transposed, pair, opts).unwrap_or_default()
        }
    }
}

/// Left-to-right composition, collecting every branch.
pub fn apply_sequence(seq: &[OperatorId], pair: &TableauPair, opts: OperatorOptions) -> BTreeSet<TableauPair> {
    let mut current: BTreeSet<TableauPair> = BTreeSet::from([pair.clone()]);
    for &op in seq {
        current = current.iter().flat_map(|p| apply(op, p, opts)).collect();
    }
    current
}

/// The operators of a family that can act at the given rank, with S-family levels up to the rank.
pub fn family_operators(kind: Kind, rank: usize, same: bool, diff: bool, s: bool) -> Vec<OperatorId> {
    let mut ops = Vec::new();
    if same {
        for i in 2..=rank {
            for j in [i - 1, i + 1] {
                if j >= 2 && j <= rank {
                    ops.push(OperatorId::SameLength { i, j });
                }
            }
        }
    }
    if diff && rank >= 2 {
        ops.push(OperatorId::DiffLengthL { forward: true });
        ops.push(OperatorId::DiffLengthL { forward: false });
    }
    if s {
        for n in 2u32.. {
            let smallest = family_dominos(kind, Family::Sigma, n).min(family_dominos(kind, Family::Tau, n));
            if smallest as usize > rank {
                break;
            }
            for prime in [false, true] {
                let fam = if prime { Family::Tau } else { Family::Sigma };
                if family_dominos(kind, fam, n) as usize <= rank {
                    for transposed in [false, true] {
                        ops.push(OperatorId::SFamily { prime, n, transposed });
                    }
                }
            }
        }
    }
    ops
}

/// Left-tableau images of an operator that fixes the right tableau.
pub fn apply_to_left(op: OperatorId, t: &Tableau, opts: OperatorOptions) -> Vec<Tableau> {
    match op {
        OperatorId::SameLength { i, j } => t_same_length_tableau(i, j, t).into_iter().collect(),
        OperatorId::DiffLengthL { forward } if opts.u_recipe_only => u_recipe_tableau(forward, t),
        OperatorId::DiffLengthL { forward } => u_left_tableau(forward, t),
        OperatorId::SFamily { prime, n, transposed } => s_tableau(prime, n, transposed, t, opts.strict_s).into_iter().collect(),
        OperatorId::Enlarged { .. } => Vec::new(),
    }
}
