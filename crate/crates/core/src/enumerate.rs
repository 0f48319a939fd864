//! Exhaustive generation of small ribbon graphs up to isomorphism.
//!
//! Graphs with `e` edges are produced from graphs with `e - 1` edges by
//! inserting the arrows of a new edge everywhere possible: at any position
//! of an existing curve or on new curves, with either relative direction.
//! Every graph without isolated vertices is reached this way, because
//! deleting an edge (and dropping curves it empties) and re-inserting it is
//! one of the generated moves.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::ribbon::{Arrow, CanonicalCode, Direction, Sign, SignedRibbonGraph};

/// Which graphs to keep at each level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Every graph without isolated vertices.
    All,
    /// Connected graphs of Euler genus at most one, i.e. plane or projective.
    ConnectedLowGenus,
}

impl Family {
    fn admits(self, g: &SignedRibbonGraph) -> bool {
        match self {
            Family::All => true,
            Family::ConnectedLowGenus => {
                let s = g.stats();
                s.k == 1 && s.euler_genus <= 1
            }
        }
    }
}

fn label(e: usize) -> String {
    format!("e{e}")
}

/// All ways to add one edge to `g`.
fn extensions(g: &SignedRibbonGraph) -> Vec<SignedRibbonGraph> {
    let e = g.edge_count();
    let mut labels = g.labels().to_vec();
    labels.push(label(e));
    let mut signs = g.signs().to_vec();
    signs.push(Sign::Plus);
    let base = g.curves().to_vec();
    let n = base.len();

    let mut out = Vec::new();
    for dir in [Direction::With, Direction::Against] {
        let first = Arrow::new(e, Direction::With);
        let second = Arrow::new(e, dir);
        // Both arrows on one new curve.
        let mut curves = base.clone();
        curves.push(vec![first, second]);
        out.push(curves);
        // Each arrow on its own new curve.
        let mut curves = base.clone();
        curves.push(vec![first]);
        curves.push(vec![second]);
        out.push(curves);
        for c in 0..n {
            for p in 0..=base[c].len() {
                // One arrow in place, the other on a new curve.
                let mut curves = base.clone();
                curves[c].insert(p, first);
                curves.push(vec![second]);
                out.push(curves);
                // Both arrows on existing curves.
                for c2 in 0..n {
                    for p2 in 0..=base[c2].len() {
                        let mut curves = base.clone();
                        curves[c].insert(p, first);
                        let p2 = if c2 == c && p2 >= p { p2 + 1 } else { p2 };
                        curves[c2].insert(p2, second);
                        out.push(curves);
                    }
                }
            }
        }
    }
    out.into_iter()
        .map(|curves| SignedRibbonGraph::from_parts(curves, labels.clone(), signs.clone()))
        .collect()
}

/// Unsigned (all `+`) graphs of the family, by edge count `0..=max_edges`.
///
/// Level 0 holds the single-vertex graph.
pub fn graphs_by_edges(max_edges: usize, family: Family) -> Vec<Vec<SignedRibbonGraph>> {
    let mut levels = vec![vec![SignedRibbonGraph::vertex()]];
    let mut frontier = vec![SignedRibbonGraph::empty()];
    for _ in 0..max_edges {
        let found: BTreeMap<CanonicalCode, SignedRibbonGraph> = frontier
            .par_iter()
            .flat_map_iter(|g| extensions(g).into_iter())
            .filter(|g| family.admits(g))
            .map(|g| (g.canonical_code(), g))
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        frontier = found.into_values().collect();
        levels.push(frontier.clone());
    }
    levels
}

/// Every sign assignment of `g`.
pub fn all_signings(g: &SignedRibbonGraph) -> Vec<SignedRibbonGraph> {
    (0..1u64 << g.edge_count())
        .map(|bits| {
            let signs = (0..g.edge_count())
                .map(|e| if bits >> e & 1 == 1 { Sign::Minus } else { Sign::Plus })
                .collect();
            SignedRibbonGraph::from_parts(g.curves().to_vec(), g.labels().to_vec(), signs)
        })
        .collect()
}
