//! Boundary tracing and surface statistics.
//!
//! Every included arrow contributes two points: its start and its end in
//! the curve's traversal order. The boundary of the surface is the union
//! of two perfect matchings on these points:
//!
//! * gaps: the end of an arrow is joined to the start of the next arrow
//!   on the same curve;
//! * sides: for an edge with arrows `a`, `b`, head(a) is joined to
//!   tail(b) and head(b) to tail(a).
//!
//! Boundary components are the cycles of this 2-regular structure, plus
//! one for every curve without included arrows.

use serde::Serialize;

use super::{Arrow, ArrowPos, SignedRibbonGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceClass {
    Plane,
    Projective,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RibbonStats {
    pub v: usize,
    pub e: usize,
    pub k: usize,
    pub b: usize,
    pub orientable: bool,
    pub euler_genus: usize,
    pub surface_class: SurfaceClass,
}

/// Statistics of a spanning subgraph `(V, A)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubsetStats {
    pub size: usize,
    pub k: usize,
    /// rank `v - k(A)`
    pub r: usize,
    /// nullity `|A| - r(A)`
    pub n: usize,
    pub bc: usize,
    /// 1 if the subgraph is non-orientable
    pub t: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceStep {
    /// Along the curve between two consecutive included arrows.
    Gap { from: usize, to: usize },
    /// Along one side of an edge band.
    Side { edge: usize, from: usize, to: usize },
}

/// Result of tracing the boundary of a (spanning sub)graph.
#[derive(Debug, Clone)]
pub struct BoundaryTrace {
    /// Position of the arrow owning each point; point `2i` is the start
    /// and `2i + 1` the end of included arrow `i`.
    pub point_arrow: Vec<ArrowPos>,
    pub walks: Vec<Vec<TraceStep>>,
    /// Curves with no included arrows; each is one boundary component.
    pub bare_curves: Vec<usize>,
}

impl BoundaryTrace {
    pub fn is_end(point: usize) -> bool {
        point % 2 == 1
    }

    pub fn boundary_count(&self) -> usize {
        self.walks.len() + self.bare_curves.len()
    }
}

pub(crate) fn trace(curves: &[Vec<Arrow>], n_edges: usize, mask: u64) -> BoundaryTrace {
    let mut point_arrow = Vec::new();
    let mut ends: Vec<[usize; 2]> = vec![[usize::MAX; 2]; n_edges];
    let mut tails_heads: Vec<[(usize, usize); 2]> = vec![[(0, 0); 2]; n_edges];
    let mut seen = vec![0usize; n_edges];
    let mut gap = Vec::new();
    let mut bare_curves = Vec::new();

    for (ci, c) in curves.iter().enumerate() {
        let first = point_arrow.len();
        for (pi, a) in c.iter().enumerate() {
            if mask >> a.edge & 1 == 0 {
                continue;
            }
            let id = point_arrow.len();
            point_arrow.push((ci, pi));
            let (start, end) = (2 * id, 2 * id + 1);
            let (tail, head) = if a.dir.is_with() { (start, end) } else { (end, start) };
            let slot = seen[a.edge];
            ends[a.edge][slot] = id;
            tails_heads[a.edge][slot] = (tail, head);
            seen[a.edge] += 1;
        }
        let count = point_arrow.len() - first;
        if count == 0 {
            bare_curves.push(ci);
            continue;
        }
        gap.resize(2 * point_arrow.len(), usize::MAX);
        for i in 0..count {
            let here = first + i;
            let next = first + (i + 1) % count;
            gap[2 * here + 1] = 2 * next;
            gap[2 * next] = 2 * here + 1;
        }
    }

    let n_points = 2 * point_arrow.len();
    let mut side = vec![(usize::MAX, usize::MAX); n_points];
    for (e, &[(ta, ha), (tb, hb)]) in tails_heads.iter().enumerate() {
        if mask >> e & 1 == 0 {
            continue;
        }
        side[ha] = (tb, e);
        side[tb] = (ha, e);
        side[hb] = (ta, e);
        side[ta] = (hb, e);
    }

    let mut visited = vec![false; n_points];
    let mut walks = Vec::new();
    for start in 0..n_points {
        if visited[start] {
            continue;
        }
        let mut walk = Vec::new();
        let mut p = start;
        loop {
            visited[p] = true;
            let q = gap[p];
            visited[q] = true;
            walk.push(TraceStep::Gap { from: p, to: q });
            let (r, e) = side[q];
            walk.push(TraceStep::Side { edge: e, from: q, to: r });
            p = r;
            if p == start {
                break;
            }
        }
        walks.push(walk);
    }

    BoundaryTrace {
        point_arrow,
        walks,
        bare_curves,
    }
}

/// Union-find with a parity bit, used for components and orientability.
struct ParityUnion {
    parent: Vec<usize>,
    parity: Vec<bool>,
}

impl ParityUnion {
    fn new(n: usize) -> Self {
        ParityUnion {
            parent: (0..n).collect(),
            parity: vec![false; n],
        }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        let p = self.parent[x];
        if p == x {
            return (x, false);
        }
        let (root, par) = self.find(p);
        self.parent[x] = root;
        self.parity[x] ^= par;
        (root, self.parity[x])
    }

    /// Returns false if the constraint contradicts earlier ones.
    fn union(&mut self, a: usize, b: usize, odd: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == odd;
        }
        self.parent[ra] = rb;
        self.parity[ra] = pa ^ pb ^ odd;
        true
    }
}

/// Components and orientability of the spanning subgraph on `mask`.
fn components(curves: &[Vec<Arrow>], n_edges: usize, mask: u64) -> (usize, bool) {
    let mut first: Vec<Option<(usize, bool)>> = vec![None; n_edges];
    let mut uf = ParityUnion::new(curves.len());
    let mut orientable = true;
    for (ci, c) in curves.iter().enumerate() {
        for a in c {
            if mask >> a.edge & 1 == 0 {
                continue;
            }
            match first[a.edge] {
                None => first[a.edge] = Some((ci, a.dir.is_with())),
                Some((cj, with)) => {
                    // Equal arrow directions glue the band without a twist.
                    orientable &= uf.union(ci, cj, with != a.dir.is_with());
                }
            }
        }
    }
    let k = (0..curves.len()).filter(|&i| uf.find(i).0 == i).count();
    (k, orientable)
}

impl SignedRibbonGraph {
    pub fn stats(&self) -> RibbonStats {
        let mask = self.full_mask();
        let (k, orientable) = components(self.curves(), self.edge_count(), mask);
        let b = trace(self.curves(), self.edge_count(), mask).boundary_count();
        let (v, e) = (self.vertex_count(), self.edge_count());
        let euler_genus = 2 * k + e - v - b;
        let surface_class = match (k, orientable, euler_genus) {
            (1, true, 0) => SurfaceClass::Plane,
            (1, false, 1) => SurfaceClass::Projective,
            _ => SurfaceClass::Other,
        };
        RibbonStats {
            v,
            e,
            k,
            b,
            orientable,
            euler_genus,
            surface_class,
        }
    }

    pub fn subset_stats(&self, mask: u64) -> SubsetStats {
        let mask = mask & self.full_mask();
        let (k, orientable) = components(self.curves(), self.edge_count(), mask);
        let bc = trace(self.curves(), self.edge_count(), mask).boundary_count();
        let size = mask.count_ones() as usize;
        let r = self.vertex_count() - k;
        SubsetStats {
            size,
            k,
            r,
            n: size - r,
            bc,
            t: usize::from(!orientable),
        }
    }

    pub fn boundary_trace(&self) -> BoundaryTrace {
        trace(self.curves(), self.edge_count(), self.full_mask())
    }

    pub fn is_connected(&self) -> bool {
        components(self.curves(), self.edge_count(), self.full_mask()).0 == 1
    }
}
