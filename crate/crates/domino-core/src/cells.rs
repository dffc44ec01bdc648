//! Kazhdan–Lusztig cells and their q = 1 modules.

use crate::cycles::{cycles, move_through, Openness};
use crate::kl::KlTable;
use crate::linalg::{identity, mat_mul, IMat};
use crate::rs;
use crate::shape::Kind;
use crate::tableau::Tableau;
use crate::weyl::{Group, Side};
use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use std::collections::{BTreeMap, HashMap};

/// Left, right and two-sided cells as sorted lists of group indices, ordered by first member.
#[derive(Clone, Debug)]
pub struct Cells {
    pub left: Vec<Vec<u32>>,
    pub right: Vec<Vec<u32>>,
    pub two_sided: Vec<Vec<u32>>,
    left_of: Vec<usize>,
    right_of: Vec<usize>,
}

fn sccs(size: usize, edges: &[(u32, u32)]) -> Vec<Vec<u32>> {
    let mut g: DiGraph<(), ()> = DiGraph::with_capacity(size, edges.len());
    for _ in 0..size {
        g.add_node(());
    }
    for &(a, b) in edges {
        g.add_edge(NodeIndex::new(a as usize), NodeIndex::new(b as usize), ());
    }
    let mut out: Vec<Vec<u32>> = tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let mut v: Vec<u32> = c.into_iter().map(|n| n.index() as u32).collect();
            v.sort_unstable();
            v
        })
        .collect();
    out.sort();
    out
}

fn membership(size: usize, parts: &[Vec<u32>]) -> Vec<usize> {
    let mut of = vec![usize::MAX; size];
    for (i, c) in parts.iter().enumerate() {
        for &w in c {
            of[w as usize] = i;
        }
    }
    of
}

fn preorder_edges(kl: &KlTable, side: Side) -> Vec<(u32, u32)> {
    let desc = match side {
        Side::Left => &kl.group.ldesc,
        Side::Right => &kl.group.rdesc,
    };
    let mut edges = Vec::new();
    for (x, w, _) in kl.mu_pairs() {
        if desc[x as usize] & !desc[w as usize] != 0 {
            edges.push((w, x));
        }
        if desc[w as usize] & !desc[x as usize] != 0 {
            edges.push((x, w));
        }
    }
    edges
}

impl Cells {
    pub fn compute(kl: &KlTable) -> Cells {
        let g = &kl.group;
        let size = g.order();
        let le = preorder_edges(kl, Side::Left);
        let re = preorder_edges(kl, Side::Right);
        let left = sccs(size, &le);
        let mut right: Vec<Vec<u32>> = left
            .iter()
            .map(|c| {
                let mut v: Vec<u32> = c.iter().map(|&w| g.inverse[w as usize]).collect();
                v.sort_unstable();
                v
            })
            .collect();
        right.sort();
        let both: Vec<(u32, u32)> = le.into_iter().chain(re).collect();
        let two_sided = sccs(size, &both);
        Cells { left_of: membership(size, &left), right_of: membership(size, &right), left, right, two_sided }
    }

    pub fn left_cell_of(&self, w: u32) -> usize {
        self.left_of[w as usize]
    }

    pub fn right_cell_of(&self, w: u32) -> usize {
        self.right_of[w as usize]
    }

    /// True when each side's cells cover every element exactly once.
    pub fn is_partition(&self, size: usize) -> bool {
        [&self.left, &self.right, &self.two_sided].iter().all(|parts| {
            let mut seen = vec![false; size];
            parts.iter().flatten().all(|&w| !std::mem::replace(&mut seen[w as usize], true)) && seen.iter().all(|&b| b)
        })
    }
}

/// Classes of same-rank tableaux under moving through non-core open cycles.
pub fn open_cycle_classes(tabs: &[Tableau]) -> HashMap<Tableau, usize> {
    let mut class: HashMap<Tableau, usize> = HashMap::new();
    let mut next = 0;
    for t in tabs {
        if class.contains_key(t) {
            continue;
        }
        let mut stack = vec![t.clone()];
        class.insert(t.clone(), next);
        while let Some(x) = stack.pop() {
            for c in cycles(&x).into_iter().filter(|c| c.openness == Openness::Open) {
                if let Ok(y) = move_through(&x, &c.labels) {
                    if !class.contains_key(&y) {
                        class.insert(y.clone(), next);
                        stack.push(y);
                    }
                }
            }
        }
        next += 1;
    }
    class
}

/// Left cells predicted from tableaux: elements whose recording tableaux are related by
/// moving through non-core open cycles.
pub fn predicted_left_cells(g: &Group, kind: Kind) -> Vec<Vec<u32>> {
    let rights: Vec<Tableau> = g.elems.iter().map(|w| rs::insert(w, kind).right).collect();
    let mut distinct = rights.clone();
    distinct.sort();
    distinct.dedup();
    let class = open_cycle_classes(&distinct);
    let mut groups: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
    for (i, t) in rights.iter().enumerate() {
        groups.entry(class[t]).or_default().push(i as u32);
    }
    let mut out: Vec<Vec<u32>> = groups.into_values().collect();
    out.sort();
    out
}

/// A cell module at q = 1 with basis indexed by the cell's elements.
#[derive(Clone, Debug)]
pub struct CellModule {
    pub side: Side,
    pub elems: Vec<u32>,
    /// `gens[i-1]` is the matrix of `s_i`; columns are images of basis vectors.
    pub gens: Vec<IMat>,
}

impl CellModule {
    /// The W-graph action: `s` sends `b_w` to `-b_w` when `s` is a descent of `w` on the
    /// given side, and otherwise to `b_w + Σ μ(z, w) b_z` over cell members `z` having `s`
    /// as a descent.
    pub fn new(kl: &KlTable, cell: &[u32], side: Side) -> CellModule {
        let g = &kl.group;
        let desc = match side {
            Side::Left => &g.ldesc,
            Side::Right => &g.rdesc,
        };
        let d = cell.len();
        let gens = (1..=g.n)
            .map(|s| {
                let bit = 1u32 << s;
                let mut m = vec![vec![0i64; d]; d];
                for (j, &w) in cell.iter().enumerate() {
                    if desc[w as usize] & bit != 0 {
                        m[j][j] = -1;
                    } else {
                        m[j][j] = 1;
                        for (i, &z) in cell.iter().enumerate() {
                            if desc[z as usize] & bit != 0 {
                                m[i][j] += kl.mu(z, w);
                            }
                        }
                    }
                }
                m
            })
            .collect();
        CellModule { side, elems: cell.to_vec(), gens }
    }

    pub fn dim(&self) -> usize {
        self.elems.len()
    }

    /// Matrix of `s_{a_1} ... s_{a_k}`.
    pub fn word_matrix(&self, word: &[usize]) -> IMat {
        word.iter().fold(identity(self.dim()), |acc, &i| mat_mul(&acc, &self.gens[i - 1]))
    }

    /// Failing Coxeter relations, as `(i, j)` pairs (`i == j` for the quadratic relation).
    pub fn coxeter_failures(&self) -> Vec<(usize, usize)> {
        let n = self.gens.len();
        let id = identity(self.dim());
        let mut bad = Vec::new();
        for i in 1..=n {
            for j in i..=n {
                let m = match (i, j) {
                    _ if i == j => 1,
                    (1, 2) => 4,
                    _ if j == i + 1 => 3,
                    _ => 2,
                };
                let word: Vec<usize> = (0..m).flat_map(|_| if i == j { vec![i, i] } else { vec![i, j] }).collect();
                let word = if i == j { &word[..2] } else { &word[..] };
                if self.word_matrix(word) != id {
                    bad.push((i, j));
                }
            }
        }
        bad
    }
}
