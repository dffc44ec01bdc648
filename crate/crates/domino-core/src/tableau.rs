//! Standard domino tableaux of kinds B and C, and same-shape pairs of them.

use crate::error::{DominoError, Result};
use crate::shape::{is_tilable, Kind, Shape};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;

/// A cell `(row, col)`, 1-indexed with row 1 on top.
pub type Cell = (i32, i32);

/// Two edge-adjacent cells, kept in row-major order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Domino([Cell; 2]);

impl Domino {
    pub fn new(a: Cell, b: Cell) -> Result<Domino> {
        if (a.0 - b.0).abs() + (a.1 - b.1).abs() != 1 {
            return Err(DominoError::Invalid(format!("cells {a:?} and {b:?} are not adjacent")));
        }
        Ok(Domino::unchecked(a, b))
    }

    pub(crate) fn unchecked(a: Cell, b: Cell) -> Domino {
        if a <= b {
            Domino([a, b])
        } else {
            Domino([b, a])
        }
    }

    pub fn horizontal(row: i32, col: i32) -> Domino {
        Domino([(row, col), (row, col + 1)])
    }

    pub fn vertical(row: i32, col: i32) -> Domino {
        Domino([(row, col), (row + 1, col)])
    }

    pub fn cells(&self) -> [Cell; 2] {
        self.0
    }

    pub fn is_vertical(&self) -> bool {
        self.0[0].1 == self.0[1].1
    }

    pub fn is_horizontal(&self) -> bool {
        !self.is_vertical()
    }

    pub fn min_row(&self) -> i32 {
        self.0[0].0
    }

    pub fn max_row(&self) -> i32 {
        self.0[1].0
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.0[0] == c || self.0[1] == c
    }

    pub fn transpose(&self) -> Domino {
        Domino::unchecked((self.0[0].1, self.0[0].0), (self.0[1].1, self.0[1].0))
    }
}

/// A standard domino tableau. Domino `k` carries label `k + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    kind: Kind,
    dominos: Vec<Domino>,
}

/// Dense lookup of labels by cell. The type-B core reads as label 0.
pub struct LabelGrid {
    rows: Vec<Vec<Option<u32>>>,
}

impl LabelGrid {
    pub fn get(&self, (r, c): Cell) -> Option<u32> {
        if r < 1 || c < 1 {
            return None;
        }
        self.rows.get(r as usize - 1).and_then(|row| row.get(c as usize - 1)).copied().flatten()
    }
}

impl Tableau {
    /// Builds and validates a tableau.
    pub fn new(kind: Kind, dominos: Vec<Domino>) -> Result<Tableau> {
        let t = Tableau { kind, dominos };
        let problems = t.diagnostics();
        if problems.is_empty() {
            Ok(t)
        } else {
            Err(DominoError::Invalid(problems.join("; ")))
        }
    }

    /// Builds a tableau without validation; callers must check with [`Tableau::is_valid`].
    pub fn from_parts_unchecked(kind: Kind, dominos: Vec<Domino>) -> Tableau {
        Tableau { kind, dominos }
    }

    pub fn empty(kind: Kind) -> Tableau {
        Tableau { kind, dominos: Vec::new() }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.dominos.len()
    }

    pub fn dominos(&self) -> &[Domino] {
        &self.dominos
    }

    /// Domino with the given label (1-based).
    pub fn domino(&self, label: u32) -> Domino {
        self.dominos[label as usize - 1]
    }

    pub fn with_domino(&self, label: u32, d: Domino) -> Tableau {
        let mut t = self.clone();
        t.dominos[label as usize - 1] = d;
        t
    }

    pub fn swap_labels(&self, a: u32, b: u32) -> Tableau {
        let mut t = self.clone();
        t.dominos.swap(a as usize - 1, b as usize - 1);
        t
    }

    /// All occupied cells, including the type-B core.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(2 * self.rank() + 1);
        if self.kind.has_core() {
            out.push((1, 1));
        }
        for d in &self.dominos {
            out.extend(d.cells());
        }
        out
    }

    pub fn grid(&self) -> LabelGrid {
        let mut rows: Vec<Vec<Option<u32>>> = Vec::new();
        let mut put = |(r, c): Cell, v: u32| {
            let (r, c) = (r as usize - 1, c as usize - 1);
            if rows.len() <= r {
                rows.resize(r + 1, Vec::new());
            }
            if rows[r].len() <= c {
                rows[r].resize(c + 1, None);
            }
            rows[r][c] = Some(v);
        };
        if self.kind.has_core() {
            put((1, 1), 0);
        }
        for (i, d) in self.dominos.iter().enumerate() {
            for c in d.cells() {
                put(c, i as u32 + 1);
            }
        }
        LabelGrid { rows }
    }

    /// Shape of the tableau. Panics on an invalid tableau.
    pub fn shape(&self) -> Shape {
        Shape::from_cells(self.cells().iter()).expect("tableau cells form a shape")
    }

    /// Human-readable list of violated invariants (empty when valid).
    pub fn diagnostics(&self) -> Vec<String> {
        let mut problems = Vec::new();
        let mut seen: HashMap<Cell, u32> = HashMap::new();
        if self.kind.has_core() {
            seen.insert((1, 1), 0);
        }
        for (i, d) in self.dominos.iter().enumerate() {
            let [a, b] = d.cells();
            if (a.0 - b.0).abs() + (a.1 - b.1).abs() != 1 {
                problems.push(format!("domino {} is not a domino", i + 1));
            }
            for c in [a, b] {
                if c.0 < 1 || c.1 < 1 {
                    problems.push(format!("domino {} leaves the quadrant", i + 1));
                }
                if let Some(prev) = seen.insert(c, i as u32 + 1) {
                    problems.push(format!("cell {c:?} covered by {prev} and {}", i + 1));
                }
            }
        }
        if !problems.is_empty() {
            return problems;
        }
        let mut cells: Vec<Cell> = if self.kind.has_core() { vec![(1, 1)] } else { Vec::new() };
        for k in 0..=self.rank() {
            if k > 0 {
                cells.extend(self.dominos[k - 1].cells());
            }
            if Shape::from_cells(cells.iter()).is_none() {
                problems.push(format!("dominos 1..{k} do not form a shape"));
                break;
            }
        }
        problems
    }

    pub fn is_valid(&self) -> bool {
        self.diagnostics().is_empty()
    }

    /// Sub-tableau of dominos `1..=k`.
    pub fn prefix(&self, k: usize) -> Result<Tableau> {
        if k > self.rank() {
            return Err(DominoError::Invalid(format!("prefix {k} exceeds rank {}", self.rank())));
        }
        Ok(Tableau { kind: self.kind, dominos: self.dominos[..k].to_vec() })
    }

    pub fn transpose(&self) -> Tableau {
        Tableau { kind: self.kind, dominos: self.dominos.iter().map(Domino::transpose).collect() }
    }

    /// All standard tableaux of a shape, in increasing order.
    pub fn enumerate(shape: &Shape, kind: Kind) -> Result<Vec<Tableau>> {
        if !is_tilable(shape, kind) {
            return Err(DominoError::Invalid(format!("shape {shape} is not tilable in kind {kind}")));
        }
        let rank = ((shape.total() - kind.core_size()) / 2) as usize;
        let mut out = Vec::new();
        let mut stack = vec![Domino::horizontal(0, 0); rank];
        enumerate_rec(shape.parts().to_vec(), kind, rank, &mut stack, &mut out);
        out.sort();
        Ok(out)
    }

    /// Grid of labels, one row per line, 0 marking the type-B core.
    pub fn render(&self) -> String {
        if self.rank() == 0 && !self.kind.has_core() {
            return String::from("(empty)\n");
        }
        let grid = self.grid();
        let shape = self.shape();
        let width = self.rank().to_string().len();
        let mut out = String::new();
        for i in 1..=shape.num_rows() {
            let row: Vec<String> = (1..=shape.rho(i))
                .map(|j| format!("{:>width$}", grid.get((i as i32, j as i32)).unwrap_or(0)))
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&TableauWire::from(self)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Tableau> {
        let wire: TableauWire = serde_json::from_str(text)?;
        wire.try_into()
    }
}

fn enumerate_rec(rows: Vec<u32>, kind: Kind, k: usize, stack: &mut Vec<Domino>, out: &mut Vec<Tableau>) {
    if k == 0 {
        out.push(Tableau { kind, dominos: stack.clone() });
        return;
    }
    let len = |rows: &[u32], i: usize| if i < rows.len() { rows[i] } else { 0 };
    for i in 0..rows.len() {
        let r = rows[i];
        // horizontal domino at the end of row i
        if r >= 2 && len(&rows, i + 1) <= r - 2 && !(kind.has_core() && i == 0 && r == 2) {
            let mut next = rows.clone();
            next[i] -= 2;
            while next.last() == Some(&0) {
                next.pop();
            }
            if is_tilable(&Shape::from_unsorted(next.clone()), kind) {
                stack[k - 1] = Domino::horizontal(i as i32 + 1, r as i32 - 1);
                enumerate_rec(next, kind, k - 1, stack, out);
            }
        }
        // vertical domino at the bottom of column r spanning rows i, i+1
        if i + 1 < rows.len() && rows[i + 1] == r && len(&rows, i + 2) < r && !(kind.has_core() && i == 0 && r == 1) {
            let mut next = rows.clone();
            next[i] -= 1;
            next[i + 1] -= 1;
            while next.last() == Some(&0) {
                next.pop();
            }
            if is_tilable(&Shape::from_unsorted(next.clone()), kind) {
                stack[k - 1] = Domino::vertical(i as i32 + 1, r as i32);
                enumerate_rec(next, kind, k - 1, stack, out);
            }
        }
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Serialize, Deserialize)]
struct DominoWire {
    label: u32,
    cells: [[i32; 2]; 2],
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct TableauWire {
    kind: Kind,
    rank: usize,
    dominos: Vec<DominoWire>,
}

impl From<&Tableau> for TableauWire {
    fn from(t: &Tableau) -> Self {
        TableauWire {
            kind: t.kind,
            rank: t.rank(),
            dominos: t
                .dominos
                .iter()
                .enumerate()
                .map(|(i, d)| {
                    let [a, b] = d.cells();
                    DominoWire { label: i as u32 + 1, cells: [[a.0, a.1], [b.0, b.1]] }
                })
                .collect(),
        }
    }
}

impl TryFrom<TableauWire> for Tableau {
    type Error = DominoError;
    fn try_from(w: TableauWire) -> Result<Tableau> {
        if w.dominos.len() != w.rank {
            return Err(DominoError::Invalid(format!("rank {} but {} dominos", w.rank, w.dominos.len())));
        }
        let mut dominos = Vec::with_capacity(w.rank);
        for (i, d) in w.dominos.iter().enumerate() {
            if d.label as usize != i + 1 {
                return Err(DominoError::Invalid(format!("expected label {} but found {}", i + 1, d.label)));
            }
            let [a, b] = d.cells;
            dominos.push(Domino::new((a[0], a[1]), (b[0], b[1]))?);
        }
        Tableau::new(w.kind, dominos)
    }
}

/// An ordered pair of same-shape tableaux.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TableauPair {
    pub left: Tableau,
    pub right: Tableau,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairWire {
    left: TableauWire,
    right: TableauWire,
}

impl TableauPair {
    pub fn new(left: Tableau, right: Tableau) -> Result<TableauPair> {
        if left.kind() != right.kind() || left.rank() != right.rank() {
            return Err(DominoError::Invalid("pair tableaux differ in kind or rank".into()));
        }
        if !left.is_valid() || !right.is_valid() {
            return Err(DominoError::Invalid("pair contains an invalid tableau".into()));
        }
        if left.shape() != right.shape() {
            return Err(DominoError::Invalid(format!(
                "pair shapes differ: {} vs {}",
                left.shape(),
                right.shape()
            )));
        }
        Ok(TableauPair { left, right })
    }

    pub fn kind(&self) -> Kind {
        self.left.kind()
    }

    pub fn rank(&self) -> usize {
        self.left.rank()
    }

    pub fn shape(&self) -> Shape {
        self.left.shape()
    }

    pub fn swap(&self) -> TableauPair {
        TableauPair { left: self.right.clone(), right: self.left.clone() }
    }

    pub fn transpose(&self) -> TableauPair {
        TableauPair { left: self.left.transpose(), right: self.right.transpose() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PairWire { left: (&self.left).into(), right: (&self.right).into() })
            .expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<TableauPair> {
        let w: PairWire = serde_json::from_str(text)?;
        TableauPair::new(w.left.try_into()?, w.right.try_into()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sh(s: &str) -> Shape {
        s.parse().unwrap()
    }

    #[test]
    fn validate_examples() {
        let t = Tableau::new(Kind::C, vec![Domino::horizontal(1, 1)]).unwrap();
        assert!(t.is_valid());
        let bad = Tableau::from_parts_unchecked(Kind::C, vec![Domino::horizontal(2, 1), Domino::horizontal(1, 1)]);
        assert!(!bad.is_valid());
        let core_clash = Tableau::from_parts_unchecked(Kind::B, vec![Domino::horizontal(1, 1)]);
        assert!(!core_clash.is_valid());
    }

    #[test]
    fn enumerate_examples() {
        let t = Tableau::enumerate(&sh("2,2"), Kind::C).unwrap();
        assert_eq!(t.len(), 2);
        let t = Tableau::enumerate(&sh("3,1"), Kind::C).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].domino(1), Domino::vertical(1, 1));
        assert_eq!(t[0].domino(2), Domino::horizontal(1, 2));
        assert_eq!(Tableau::enumerate(&sh("2"), Kind::C).unwrap().len(), 1);
        assert!(Tableau::enumerate(&sh("4,2,2,1"), Kind::C).is_err());
        assert_eq!(Tableau::enumerate(&Shape::empty(), Kind::C).unwrap().len(), 1);
        assert_eq!(Tableau::enumerate(&sh("1"), Kind::B).unwrap().len(), 1);
    }

    #[test]
    fn prefix_and_transpose() {
        for t in Tableau::enumerate(&sh("5,3,3,1"), Kind::C).unwrap() {
            assert_eq!(t.prefix(t.rank()).unwrap(), t);
            assert_eq!(t.prefix(0).unwrap(), Tableau::empty(Kind::C));
            assert!(t.prefix(t.rank() + 1).is_err());
            let tt = t.transpose();
            assert!(tt.is_valid());
            assert_eq!(tt.shape(), t.shape().transpose());
            assert_eq!(tt.transpose(), t);
        }
        let h = Tableau::new(Kind::C, vec![Domino::horizontal(1, 1)]).unwrap();
        assert_eq!(h.transpose().domino(1), Domino::vertical(1, 1));
    }

    #[test]
    fn json_round_trip() {
        for kind in Kind::all() {
            for total in 0..=7 {
                for s in crate::shape::tilable_shapes(total, kind) {
                    for t in Tableau::enumerate(&s, kind).unwrap() {
                        assert_eq!(Tableau::from_json(&t.to_json()).unwrap(), t);
                    }
                }
            }
        }
        assert!(Tableau::from_json("{}").is_err());
        assert_eq!(Tableau::empty(Kind::C).to_json(), r#"{"kind":"C","rank":0,"dominos":[]}"#);
        let t = Tableau::new(Kind::C, vec![Domino::horizontal(1, 1)]).unwrap();
        assert_eq!(t.to_json(), r#"{"kind":"C","rank":1,"dominos":[{"label":1,"cells":[[1,1],[1,2]]}]}"#);
    }

    #[test]
    fn render_marks_core() {
        let t = Tableau::new(Kind::B, vec![Domino::horizontal(1, 2)]).unwrap();
        assert_eq!(t.render(), "0 1 1\n");
    }
}
