//! Partial duality, join decompositions and join-summand moves.

use std::collections::{BTreeMap, HashMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{check_cap, Error, Result};
use crate::ribbon::{dir_from_bool, Arrow, CanonicalCode, RibbonStats, SignedRibbonGraph, SurfaceClass};

pub const DEFAULT_MAX_EDGES: usize = 16;

/// The partial dual of `g` with respect to the edges in `mask`.
///
/// For each dualled edge with arrows `a` and `b`, the arcs carrying the
/// arrows are cut out and replaced by a segment from head(a) to tail(b)
/// and one from head(b) to tail(a), each carrying a fresh arrow. The signs
/// of dualled edges are toggled.
pub fn partial_dual_mask(g: &SignedRibbonGraph, mask: u64) -> SignedRibbonGraph {
    let mask = mask & g.full_mask();
    if mask == 0 {
        return g.clone();
    }
    let curves = g.curves();
    let n_edges = g.edge_count();

    // Points 2i (start) and 2i + 1 (end) of arrow i in reading order.
    let mut gap = Vec::new();
    let mut tails_heads: Vec<Vec<(usize, usize)>> = vec![Vec::with_capacity(2); n_edges];
    let mut id = 0;
    for c in curves {
        let first = id;
        for a in c {
            let (s, e) = (2 * id, 2 * id + 1);
            tails_heads[a.edge].push(if a.dir.is_with() { (s, e) } else { (e, s) });
            id += 1;
        }
        gap.resize(2 * id, usize::MAX);
        let count = id - first;
        for i in 0..count {
            let here = first + i;
            let next = first + (i + 1) % count;
            gap[2 * here + 1] = 2 * next;
            gap[2 * next] = 2 * here + 1;
        }
    }

    // Segments as (edge, tail point, head point).
    let mut segments: Vec<(usize, usize, usize)> = Vec::with_capacity(id);
    for (e, th) in tails_heads.iter().enumerate() {
        let [(ta, ha), (tb, hb)] = [th[0], th[1]];
        if mask >> e & 1 == 1 {
            segments.push((e, ha, tb));
            segments.push((e, hb, ta));
        } else {
            segments.push((e, ta, ha));
            segments.push((e, tb, hb));
        }
    }
    let mut seg_of_point = vec![usize::MAX; 2 * id];
    for (s, &(_, t, h)) in segments.iter().enumerate() {
        seg_of_point[t] = s;
        seg_of_point[h] = s;
    }

    let mut visited = vec![false; segments.len()];
    let mut out: Vec<Vec<Arrow>> = Vec::new();
    for first in 0..segments.len() {
        if visited[first] {
            continue;
        }
        let mut curve = Vec::new();
        let mut s = first;
        let mut entry = segments[s].1;
        loop {
            visited[s] = true;
            let (e, t, h) = segments[s];
            let with = entry == t;
            curve.push(Arrow::new(e, dir_from_bool(with)));
            let exit = if with { h } else { t };
            let q = gap[exit];
            s = seg_of_point[q];
            entry = q;
            if s == first {
                break;
            }
        }
        out.push(curve);
    }
    out.extend(curves.iter().filter(|c| c.is_empty()).cloned());

    let signs = (0..n_edges)
        .map(|e| if mask >> e & 1 == 1 { g.sign(e).flip() } else { g.sign(e) })
        .collect();
    SignedRibbonGraph::from_parts(out, g.labels().to_vec(), signs)
}

/// The partial dual with respect to the labelled edges.
pub fn partial_dual<S: AsRef<str>>(g: &SignedRibbonGraph, edges: &[S]) -> Result<SignedRibbonGraph> {
    let mask = g.edge_mask(edges)?;
    Ok(partial_dual_mask(g, mask))
}

pub fn geometric_dual(g: &SignedRibbonGraph) -> SignedRibbonGraph {
    partial_dual_mask(g, g.full_mask())
}

/// One isomorphism class among the partial duals of a graph.
#[derive(Debug, Clone, Serialize)]
pub struct DualClass {
    /// Lowest-numbered subset (as a bitmask) producing this class.
    pub witness_mask: u64,
    pub witness: Vec<String>,
    pub stats: RibbonStats,
}

/// All partial duals of `g` up to isomorphism, keyed by canonical code.
pub fn enumerate_partial_duals(g: &SignedRibbonGraph, max_edges: usize) -> Result<BTreeMap<CanonicalCode, DualClass>> {
    check_cap("edge", g.edge_count(), max_edges.min(63))?;
    let found: Vec<(CanonicalCode, u64)> = (0..=g.full_mask())
        .into_par_iter()
        .map(|m| (partial_dual_mask(g, m).canonical_code(), m))
        .collect();
    let mut out: BTreeMap<CanonicalCode, DualClass> = BTreeMap::new();
    for (code, m) in found {
        // Masks arrive in increasing order, so the first one wins.
        out.entry(code).or_insert_with(|| DualClass {
            witness_mask: m,
            witness: g.mask_labels(m),
            stats: partial_dual_mask(g, m).stats(),
        });
    }
    Ok(out)
}

/// A join `G = P ∨ Q` at a vertex, split by two complementary arcs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JoinDecomposition {
    pub vertex: usize,
    /// The first arc: `len` consecutive arrow positions starting at `start`.
    /// The second arc is the rest of the curve.
    pub start: usize,
    pub len: usize,
    pub p_mask: u64,
    pub q_mask: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    P,
    Q,
}

impl JoinDecomposition {
    pub fn side_mask(&self, side: Side) -> u64 {
        match side {
            Side::P => self.p_mask,
            Side::Q => self.q_mask,
        }
    }
}

fn find_root(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// All join decompositions of a connected graph, one per unordered split.
pub fn find_joins(g: &SignedRibbonGraph) -> Result<Vec<JoinDecomposition>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut out = Vec::new();
    for (v, curve) in g.curves().iter().enumerate() {
        let len = curve.len();
        if len < 2 {
            continue;
        }
        // Edges are linked when they meet at a vertex other than v.
        let mut parent: Vec<usize> = (0..g.edge_count()).collect();
        for (u, c) in g.curves().iter().enumerate() {
            if u == v {
                continue;
            }
            for w in c.windows(2) {
                let (a, b) = (find_root(&mut parent, w[0].edge), find_root(&mut parent, w[1].edge));
                parent[a] = b;
            }
        }
        let blocks: Vec<usize> = (0..g.edge_count()).map(|e| find_root(&mut parent, e)).collect();
        for a in 0..len {
            // Arcs ending at the last position are the complements of arcs
            // starting at position 0.
            for b in a + 1..len {
                let mut p_blocks = 0u64;
                let mut q_blocks = 0u64;
                let mut p_mask = 0u64;
                let mut q_mask = 0u64;
                for (i, arrow) in curve.iter().enumerate() {
                    let blk = blocks[arrow.edge];
                    if (a..b).contains(&i) {
                        p_blocks |= 1 << blk;
                    } else {
                        q_blocks |= 1 << blk;
                    }
                }
                if p_blocks & q_blocks != 0 {
                    continue;
                }
                for (e, &block) in blocks.iter().enumerate() {
                    if p_blocks >> block & 1 == 1 {
                        p_mask |= 1 << e;
                    } else if q_blocks >> block & 1 == 1 {
                        q_mask |= 1 << e;
                    }
                }
                out.push(JoinDecomposition {
                    vertex: v,
                    start: a,
                    len: b - a,
                    p_mask,
                    q_mask,
                });
            }
        }
    }
    Ok(out)
}

/// Replaces one summand of a join by its geometric dual.
pub fn dual_join_summand(g: &SignedRibbonGraph, join: &JoinDecomposition, side: Side) -> Result<SignedRibbonGraph> {
    if !find_joins(g)?.contains(join) {
        return Err(Error::InvalidJoin);
    }
    Ok(partial_dual_mask(g, join.side_mask(side)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum JoinMove {
    /// Dual of a join summand; `edges` are the labels of the dualled summand.
    DualJoinSummand { edges: Vec<String> },
    GeometricDual,
}

fn require_plane_or_projective(g: &SignedRibbonGraph, which: &str) -> Result<()> {
    let s = g.stats();
    match s.surface_class {
        SurfaceClass::Plane | SurfaceClass::Projective => Ok(()),
        SurfaceClass::Other => Err(Error::OutOfClass(format!(
            "{which} graph has k={}, Euler genus {}, orientable={}",
            s.k, s.euler_genus, s.orientable
        ))),
    }
}

/// Decides whether `h` is reached from `g` by dual-of-a-join-summand moves,
/// optionally followed by one geometric dual. Returns the lexicographically
/// least shortest move sequence when it is.
pub fn join_move_related(g: &SignedRibbonGraph, h: &SignedRibbonGraph) -> Result<Option<Vec<JoinMove>>> {
    require_plane_or_projective(g, "first")?;
    require_plane_or_projective(h, "second")?;
    let target = h.canonical_code();
    if g.edge_count() != h.edge_count() {
        return Ok(None);
    }

    // Each node is G^A for the accumulated mask A.
    let mut seen: HashMap<CanonicalCode, usize> = HashMap::new();
    let mut nodes: Vec<(u64, Option<(usize, u64)>)> = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(g.canonical_code(), 0);
    nodes.push((0, None));
    queue.push_back(0);

    let path_to = |nodes: &[(u64, Option<(usize, u64)>)], mut i: usize| {
        let mut moves = Vec::new();
        while let Some((parent, step)) = nodes[i].1 {
            moves.push(JoinMove::DualJoinSummand {
                edges: g.mask_labels(step),
            });
            i = parent;
        }
        moves.reverse();
        moves
    };

    while let Some(i) = queue.pop_front() {
        let mask = nodes[i].0;
        let current = partial_dual_mask(g, mask);
        if current.canonical_code() == target {
            return Ok(Some(path_to(&nodes, i)));
        }
        if geometric_dual(&current).canonical_code() == target {
            let mut moves = path_to(&nodes, i);
            moves.push(JoinMove::GeometricDual);
            return Ok(Some(moves));
        }
        let mut steps: Vec<u64> = find_joins(&current)?
            .into_iter()
            .flat_map(|j| [j.p_mask, j.q_mask])
            .collect();
        steps.sort_by_key(|&m| g.mask_labels(m));
        steps.dedup();
        for step in steps {
            let next = mask ^ step;
            let code = partial_dual_mask(g, next).canonical_code();
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(code) {
                e.insert(nodes.len());
                nodes.push((next, Some((i, step))));
                queue.push_back(nodes.len() - 1);
            }
        }
    }
    Ok(None)
}

/// Every class reachable from `g` by dual-of-a-join-summand moves, together
/// with the geometric duals of those classes.
pub fn join_move_closure(g: &SignedRibbonGraph) -> Result<BTreeMap<CanonicalCode, SignedRibbonGraph>> {
    require_plane_or_projective(g, "input")?;
    let mut seen: BTreeMap<CanonicalCode, SignedRibbonGraph> = BTreeMap::new();
    let mut queue = VecDeque::new();
    seen.insert(g.canonical_code(), g.clone());
    queue.push_back(g.clone());
    while let Some(current) = queue.pop_front() {
        for j in find_joins(&current)? {
            for step in [j.p_mask, j.q_mask] {
                let next = partial_dual_mask(&current, step);
                let code = next.canonical_code();
                if let std::collections::btree_map::Entry::Vacant(e) = seen.entry(code) {
                    e.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
    }
    let duals: Vec<SignedRibbonGraph> = seen.values().map(geometric_dual).collect();
    for d in duals {
        seen.entry(d.canonical_code()).or_insert(d);
    }
    Ok(seen)
}
