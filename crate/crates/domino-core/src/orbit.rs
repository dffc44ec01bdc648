//! Orbits of tableau pairs under operator families and the transitivity campaign.
//!
//! Every operator in the full family changes only the left tableau, and its images
//! depend on the left tableau alone. Orbits are therefore computed once per shape on left
//! tableaux; the orbit of `(T_1, T_2)` is `{(T_1', T_2) : T_1'` in the orbit of `T_1}` for
//! every right tableau `T_2` of that shape.

use crate::error::{DominoError, Result};
use crate::operators::{apply, apply_to_left, family_operators, OperatorId, OperatorOptions};
use crate::par::Exec;
use crate::shape::{tilable_shapes, Kind, Shape};
use crate::tableau::{Tableau, TableauPair};
use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::Serialize;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::time::Instant;

pub const ORBIT_SCHEMA: &str = "domino-orbit/1";

/// Which operator kinds generate the orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OperatorFamily {
    pub same_length: bool,
    pub diff_length: bool,
    pub s_family: bool,
}

impl OperatorFamily {
    pub const FULL: OperatorFamily = OperatorFamily { same_length: true, diff_length: true, s_family: true };
    pub const WITHOUT_S: OperatorFamily = OperatorFamily { same_length: true, diff_length: true, s_family: false };

    pub fn operators(&self, kind: Kind, rank: usize) -> Vec<OperatorId> {
        family_operators(kind, rank, self.same_length, self.diff_length, self.s_family)
    }
}

/// BFS closure of one pair.
pub fn orbit(pair: &TableauPair, family: OperatorFamily, opts: OperatorOptions) -> BTreeSet<TableauPair> {
    let ops = family.operators(pair.kind(), pair.rank());
    let mut seen = BTreeSet::from([pair.clone()]);
    let mut queue = VecDeque::from([pair.clone()]);
    while let Some(p) = queue.pop_front() {
        for &op in &ops {
            for img in apply(op, &p, opts) {
                if seen.insert(img.clone()) {
                    queue.push_back(img);
                }
            }
        }
    }
    seen
}

/// Partition of all left tableaux of `shape` into orbits: strongly connected components of
/// the directed operator graph, members in enumeration order, ordered by first member.
pub fn left_orbits(
    shape: &Shape,
    kind: Kind,
    family: OperatorFamily,
    opts: OperatorOptions,
    exec: Exec,
) -> Result<Vec<Vec<Tableau>>> {
    let tabs = Tableau::enumerate(shape, kind)?;
    let rank = (shape.total() - kind.core_size()) as usize / 2;
    let ops = family.operators(kind, rank);
    let index: HashMap<&Tableau, u32> = tabs.iter().enumerate().map(|(i, t)| (t, i as u32)).collect();
    let edges: Vec<Vec<u32>> = exec.map(&tabs, |t| {
        ops.iter()
            .flat_map(|&op| apply_to_left(op, t, opts))
            .map(|img| *index.get(&img).expect("operator image left the shape"))
            .collect()
    });
    let mut graph: DiGraph<(), ()> = DiGraph::with_capacity(tabs.len(), 0);
    for _ in &tabs {
        graph.add_node(());
    }
    for (i, es) in edges.iter().enumerate() {
        for &j in es {
            graph.add_edge(NodeIndex::new(i), NodeIndex::new(j as usize), ());
        }
    }
    let mut comps: Vec<Vec<usize>> = tarjan_scc(&graph)
        .into_iter()
        .map(|c| {
            let mut v: Vec<usize> = c.into_iter().map(|n| n.index()).collect();
            v.sort_unstable();
            v
        })
        .collect();
    comps.sort();
    Ok(comps.into_iter().map(|c| c.into_iter().map(|i| tabs[i].clone()).collect()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeReport {
    pub shape: String,
    pub rank: usize,
    pub tableaux: usize,
    pub orbits: usize,
    pub orbit_sizes: Vec<usize>,
    pub pass: bool,
}

/// Verdict for one shape: one orbit per fixed right tableau.
pub fn check_transitivity(
    shape: &Shape,
    kind: Kind,
    family: OperatorFamily,
    opts: OperatorOptions,
    exec: Exec,
) -> Result<ShapeReport> {
    if !shape.is_tilable(kind) {
        return Err(DominoError::Invalid(format!("shape {shape} is not tilable in kind {kind}")));
    }
    let groups = left_orbits(shape, kind, family, opts, exec)?;
    let sizes: Vec<usize> = groups.iter().map(Vec::len).collect();
    Ok(ShapeReport {
        shape: shape.to_string(),
        rank: (shape.total() - kind.core_size()) as usize / 2,
        tableaux: sizes.iter().sum(),
        orbits: groups.len(),
        pass: groups.len() == 1,
        orbit_sizes: sizes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CampaignReport {
    pub schema: &'static str,
    pub kind: String,
    pub ranks: Vec<usize>,
    pub family: OperatorFamily,
    pub shapes: Vec<ShapeReport>,
    /// Shapes not reached before the deadline.
    pub skipped: Vec<String>,
    pub pass: bool,
}

/// All tilable shapes of the given ranks.
pub fn shapes_of_rank(kind: Kind, rank: usize) -> Vec<Shape> {
    tilable_shapes(2 * rank as u32 + kind.core_size(), kind)
}

/// Runs [`check_transitivity`] over every shape of the listed ranks (or only `only`).
pub fn campaign(
    kind: Kind,
    ranks: &[usize],
    only: Option<&Shape>,
    family: OperatorFamily,
    opts: OperatorOptions,
    exec: Exec,
    deadline: Option<Instant>,
) -> Result<CampaignReport> {
    let shapes: Vec<Shape> = match only {
        Some(s) => vec![s.clone()],
        None => ranks.iter().flat_map(|&r| shapes_of_rank(kind, r)).collect(),
    };
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    for s in &shapes {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            skipped.push(s.to_string());
            continue;
        }
        reports.push(check_transitivity(s, kind, family, opts, exec)?);
    }
    let pass = skipped.is_empty() && reports.iter().all(|r| r.pass);
    let ranks = match only {
        Some(s) => vec![(s.total() - kind.core_size()) as usize / 2],
        None => ranks.to_vec(),
    };
    Ok(CampaignReport { schema: ORBIT_SCHEMA, kind: kind.to_string(), ranks, family, shapes: reports, skipped, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rs;
    use crate::weyl::enumerate_group;

    #[test]
    fn rank_one_orbit_is_trivial() {
        let p = rs::insert(&"-1".parse().unwrap(), Kind::C);
        assert_eq!(orbit(&p, OperatorFamily::FULL, OperatorOptions::default()), BTreeSet::from([p]));
    }

    #[test]
    fn pair_orbit_matches_left_orbits() {
        let shape: Shape = "2,2".parse().unwrap();
        let tabs = Tableau::enumerate(&shape, Kind::C).unwrap();
        assert_eq!(tabs.len(), 2);
        let p = TableauPair::new(tabs[0].clone(), tabs[1].clone()).unwrap();
        let o = orbit(&p, OperatorFamily::FULL, OperatorOptions::default());
        assert_eq!(o.len(), 2);
        assert!(o.iter().all(|q| q.right == tabs[1]));
    }

    #[test]
    fn u_images_ignore_the_right_tableau() {
        use crate::operators::apply_u_left;
        for kind in Kind::all() {
            for n in 2..=4 {
                for w in enumerate_group(n) {
                    let pair = rs::insert(&w, kind);
                    for forward in [true, false] {
                        let via_pair: Vec<Tableau> = apply_u_left(forward, &pair)
                            .unwrap_or_default()
                            .into_iter()
                            .map(|p| p.left)
                            .collect();
                        assert_eq!(via_pair, crate::operators::u_left_tableau(forward, &pair.left));
                    }
                }
            }
        }
    }

    #[test]
    fn small_ranks_are_transitive_in_both_strategies() {
        for kind in Kind::all() {
            for exec in [Exec::Sequential, Exec::Parallel] {
                let r = campaign(kind, &[1, 2, 3, 4], None, OperatorFamily::FULL, OperatorOptions::default(), exec, None)
                    .unwrap();
                assert!(r.pass, "{kind}: {:?}", r.shapes.iter().filter(|s| !s.pass).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn recipe_only_fails_at_rank_four() {
        let opts = OperatorOptions { u_recipe_only: true, ..Default::default() };
        let r = check_transitivity(&"4,2,2".parse().unwrap(), Kind::C, OperatorFamily::FULL, opts, Exec::Sequential)
            .unwrap();
        assert!(!r.pass);
    }

    #[test]
    fn untilable_shape_is_rejected() {
        let s: Shape = "4,2,2,1".parse().unwrap();
        assert!(check_transitivity(&s, Kind::C, OperatorFamily::FULL, OperatorOptions::default(), Exec::Sequential).is_err());
    }
}
