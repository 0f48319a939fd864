//! Link diagrams in real projective space.
//!
//! A diagram is stored as its net: crossings with four counterclockwise
//! slots (under-strand 0-2, over-strand 1-3), arcs joining slots and
//! carrying the parity of their crossings with the line at infinity, and
//! crossing-free loops carrying their homology class.
//!
//! The net is itself a ribbon graph (one vertex per crossing, one edge per
//! arc, twisted when the arc's parity is odd). Its faces are the boundary
//! walks of that ribbon graph; the gap between the arrows at slots `s` and
//! `s + 1` is corner `s` of the crossing.

mod reduce;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::duality::{enumerate_partial_duals, DEFAULT_MAX_EDGES};
use crate::error::{check_cap, Error, Result};
use crate::ribbon::surface::{trace, TraceStep};
use crate::ribbon::{Arrow, CanonicalCode, Direction, RibbonStats, Sign, SignedRibbonGraph, SurfaceClass};
use crate::skeleton::{Skeleton, Slot, Splice};

pub use reduce::{reduce_one_vertex, reduce_one_vertex_steps, rii_insert, RiiSite, SiteSide};

pub const DEFAULT_MAX_CROSSINGS: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DiagramArc {
    pub ends: [Slot; 2],
    pub twist: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjDiagram {
    /// Crossing ids, sorted; crossing `i` has id `ids[i]`.
    ids: Vec<String>,
    arcs: Vec<DiagramArc>,
    free_loops: Vec<bool>,
    /// (arc, end) occupying each slot.
    slot_arc: Vec<[(usize, usize); 4]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Colour {
    Black,
    White,
}

/// A region of the net.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Face {
    /// (crossing id, corner) pairs met by the face.
    pub corners: Vec<(String, u8)>,
    pub sides: Vec<FaceSide>,
}

/// One side of an arc, traversed with the face on the left.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceSide {
    pub arc: usize,
    #[serde(skip)]
    pub(crate) from: Slot,
    #[serde(skip)]
    pub(crate) to: Slot,
    /// Whether the crossing chart at each end agrees with the face's.
    #[serde(skip)]
    pub(crate) agree: [bool; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkComponent {
    /// Arcs in traversal order; empty for a free loop.
    pub arcs: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub free_loop: Option<usize>,
    pub homology: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub valid: bool,
    pub components: Vec<LinkComponent>,
    /// Statistics of the net as a ribbon graph; absent without crossings.
    pub net: Option<RibbonStats>,
    pub null_homologous: bool,
}

#[derive(Serialize, Deserialize)]
struct CrossingJson {
    id: String,
}

#[derive(Serialize, Deserialize)]
struct ArcJson {
    ends: [(String, u8); 2],
    #[serde(default)]
    twist: u8,
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    #[serde(default)]
    crossings: Vec<CrossingJson>,
    #[serde(default)]
    arcs: Vec<ArcJson>,
    #[serde(default)]
    free_loops: Vec<u8>,
}

fn bit(v: u8, what: &str) -> Result<bool> {
    match v {
        0 => Ok(false),
        1 => Ok(true),
        _ => Err(Error::MalformedDiagram(format!("{what} must be 0 or 1, got {v}"))),
    }
}

impl ProjDiagram {
    /// Builds a diagram, checking that every slot carries exactly one arc
    /// end. Net validity is checked by [`classify`](Self::classify) and by
    /// every operation that needs it.
    pub fn new(ids: Vec<String>, arcs: Vec<(Slot, Slot, bool)>, free_loops: Vec<bool>) -> Result<Self> {
        let mut order: Vec<usize> = (0..ids.len()).collect();
        order.sort_by(|&a, &b| ids[a].cmp(&ids[b]));
        let mut new_index = vec![0; ids.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let sorted: Vec<String> = order.iter().map(|&i| ids[i].clone()).collect();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::MalformedDiagram(format!("duplicate crossing id {}", w[0])));
        }
        if sorted.is_empty() && free_loops.is_empty() {
            return Err(Error::MalformedDiagram("diagram has no components".into()));
        }
        let mut slot_arc = vec![[(usize::MAX, 0); 4]; sorted.len()];
        let mut out = Vec::with_capacity(arcs.len());
        for (ai, &(p, q, twist)) in arcs.iter().enumerate() {
            let mut ends = [p, q];
            for (ei, end) in ends.iter_mut().enumerate() {
                if end.0 >= sorted.len() || end.1 > 3 {
                    return Err(Error::MalformedDiagram(format!("arc {ai} has an invalid end")));
                }
                end.0 = new_index[end.0];
                let cell = &mut slot_arc[end.0][end.1 as usize];
                if cell.0 != usize::MAX {
                    return Err(Error::MalformedDiagram(format!(
                        "slot {} of crossing {} is used twice",
                        end.1, sorted[end.0]
                    )));
                }
                *cell = (ai, ei);
            }
            out.push(DiagramArc { ends, twist });
        }
        for (c, slots) in slot_arc.iter().enumerate() {
            if let Some(s) = slots.iter().position(|x| x.0 == usize::MAX) {
                return Err(Error::MalformedDiagram(format!("slot {s} of crossing {} is unused", sorted[c])));
            }
        }
        Ok(ProjDiagram {
            ids: sorted,
            arcs: out,
            free_loops,
            slot_arc,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let raw: DiagramJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let ids: Vec<String> = raw.crossings.into_iter().map(|c| c.id).collect();
        let index: BTreeMap<&str, usize> = ids.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let mut arcs = Vec::new();
        for (ai, a) in raw.arcs.iter().enumerate() {
            let mut ends = [(0, 0); 2];
            for (k, (id, slot)) in a.ends.iter().enumerate() {
                let c = *index
                    .get(id.as_str())
                    .ok_or_else(|| Error::MalformedDiagram(format!("arc {ai} names unknown crossing {id}")))?;
                ends[k] = (c, *slot);
            }
            arcs.push((ends[0], ends[1], bit(a.twist, "twist")?));
        }
        let free_loops = raw
            .free_loops
            .iter()
            .map(|&b| bit(b, "free loop class"))
            .collect::<Result<_>>()?;
        Self::new(ids, arcs, free_loops)
    }

    pub fn to_json(&self) -> Value {
        let raw = DiagramJson {
            crossings: self.ids.iter().map(|id| CrossingJson { id: id.clone() }).collect(),
            arcs: self
                .arcs
                .iter()
                .map(|a| ArcJson {
                    ends: a.ends.map(|(c, s)| (self.ids[c].clone(), s)),
                    twist: u8::from(a.twist),
                })
                .collect(),
            free_loops: self.free_loops.iter().map(|&b| u8::from(b)).collect(),
        };
        serde_json::to_value(raw).expect("diagram serializes")
    }

    pub fn crossing_ids(&self) -> &[String] {
        &self.ids
    }

    pub fn crossing_count(&self) -> usize {
        self.ids.len()
    }

    pub fn arcs(&self) -> &[DiagramArc] {
        &self.arcs
    }

    pub fn free_loops(&self) -> &[bool] {
        &self.free_loops
    }


    fn across(&self, (c, s): Slot) -> Slot {
        let (a, e) = self.slot_arc[c][s as usize];
        self.arcs[a].ends[1 - e]
    }

    pub fn skeleton(&self) -> Skeleton {
        Skeleton {
            across: (0..self.ids.len())
                .map(|c| [0, 1, 2, 3].map(|s| self.across((c, s))))
                .collect(),
            free_loops: self.free_loops.len(),
        }
    }

    /// The net as arrow curves: crossing `c` is curve `c` holding the arcs
    /// at slots 0..3 in order; an arc's second arrow is reversed when the
    /// arc is twisted.
    fn net_curves(&self) -> Vec<Vec<Arrow>> {
        (0..self.ids.len())
            .map(|c| {
                (0..4)
                    .map(|s| {
                        let (a, e) = self.slot_arc[c][s];
                        let with = e == 0 || !self.arcs[a].twist;
                        Arrow::new(a, Direction::from_bool(with))
                    })
                    .collect()
            })
            .collect()
    }

    fn net_graph(&self) -> SignedRibbonGraph {
        let labels = (0..self.arcs.len()).map(|a| a.to_string()).collect();
        SignedRibbonGraph::from_parts(self.net_curves(), labels, vec![Sign::Plus; self.arcs.len()])
    }

    pub fn net_stats(&self) -> Option<RibbonStats> {
        (!self.ids.is_empty()).then(|| self.net_graph().stats())
    }

    /// Checks that the diagram lives in the projective plane.
    pub fn validate(&self) -> Result<()> {
        if let Some(s) = self.net_stats() {
            if s.euler_genus > 1 {
                return Err(Error::NotProjective {
                    genus: s.euler_genus,
                    orientable: s.orientable,
                });
            }
        }
        let odd_loops = self.free_loops.iter().filter(|&&b| b).count();
        if odd_loops > 0 && self.ids.len() + self.free_loops.len() > 1 {
            return Err(Error::MalformedDiagram(
                "a 1-homologous free loop cannot share the projective plane with other components".into(),
            ));
        }
        Ok(())
    }

    pub fn link_components(&self) -> Vec<LinkComponent> {
        let mut seen = vec![false; self.arcs.len()];
        let mut out = Vec::new();
        for start in 0..self.arcs.len() {
            if seen[start] {
                continue;
            }
            let mut arcs = Vec::new();
            let mut parity = false;
            let (mut a, mut from_end) = (start, 0);
            loop {
                seen[a] = true;
                arcs.push(a);
                parity ^= self.arcs[a].twist;
                let (c, s) = self.arcs[a].ends[1 - from_end];
                let (next, e) = self.slot_arc[c][((s + 2) % 4) as usize];
                (a, from_end) = (next, e);
                if a == start && from_end == 0 {
                    break;
                }
            }
            out.push(LinkComponent {
                arcs,
                free_loop: None,
                homology: u8::from(parity),
            });
        }
        for (i, &b) in self.free_loops.iter().enumerate() {
            out.push(LinkComponent {
                arcs: Vec::new(),
                free_loop: Some(i),
                homology: u8::from(b),
            });
        }
        out
    }

    pub fn is_null_homologous(&self) -> bool {
        self.link_components().iter().all(|c| c.homology == 0)
    }

    pub fn classify(&self) -> Classification {
        let components = self.link_components();
        Classification {
            valid: self.validate().is_ok(),
            null_homologous: components.iter().all(|c| c.homology == 0),
            components,
            net: self.net_stats(),
        }
    }

    /// Faces of the net, each traversed with the face on its left.
    pub fn faces(&self) -> Vec<Face> {
        let t = trace(&self.net_curves(), self.arcs.len(), u64::MAX >> (64 - self.arcs.len().clamp(1, 64)));
        let slot_of = |p: usize| -> Slot {
            let i = p / 2;
            (i / 4, (i % 4) as u8)
        };
        t.walks
            .iter()
            .map(|walk| {
                let mut corners = Vec::new();
                let mut sides = Vec::new();
                for step in walk {
                    match *step {
                        TraceStep::Gap { from, to } => {
                            let ((c, s), (_, t)) = (slot_of(from), slot_of(to));
                            let corner = if t == (s + 1) % 4 { s } else { t };
                            corners.push((self.ids[c].clone(), corner));
                        }
                        TraceStep::Side { edge, from, to } => {
                            // Walking a vertex curve backwards keeps the face
                            // on the left of the crossing chart.
                            sides.push(FaceSide {
                                arc: edge,
                                from: slot_of(from),
                                to: slot_of(to),
                                agree: [from % 2 == 1, to % 2 == 0],
                            });
                        }
                    }
                }
                Face { corners, sides }
            })
            .collect()
    }

    fn require_connected_net(&self) -> Result<()> {
        self.validate()?;
        if !self.free_loops.is_empty() {
            return Err(Error::FreeLoopsUnsupported);
        }
        if !self.net_graph().is_connected() {
            return Err(Error::SplitDiagram);
        }
        Ok(())
    }

    /// The proper 2-colourings of the faces, as a complementary pair with
    /// face 0 black first, or none.
    pub fn checkerboard_colourings(&self) -> Result<Vec<Vec<Colour>>> {
        self.require_connected_net()?;
        let faces = self.faces();
        let mut side_faces: Vec<Vec<usize>> = vec![Vec::new(); self.arcs.len()];
        for (f, face) in faces.iter().enumerate() {
            for s in &face.sides {
                side_faces[s.arc].push(f);
            }
        }
        let mut adj = vec![Vec::new(); faces.len()];
        for pair in &side_faces {
            if pair[0] == pair[1] {
                return Ok(Vec::new());
            }
            adj[pair[0]].push(pair[1]);
            adj[pair[1]].push(pair[0]);
        }
        let mut colour: Vec<Option<bool>> = vec![None; faces.len()];
        colour[0] = Some(true);
        let mut stack = vec![0];
        while let Some(f) = stack.pop() {
            let here = colour[f].expect("coloured before pushed");
            for &g in &adj[f] {
                match colour[g] {
                    None => {
                        colour[g] = Some(!here);
                        stack.push(g);
                    }
                    Some(c) if c == here => return Ok(Vec::new()),
                    Some(_) => {}
                }
            }
        }
        let black: Vec<Colour> = colour
            .iter()
            .map(|c| if c.expect("net faces are connected") { Colour::Black } else { Colour::White })
            .collect();
        let white = black
            .iter()
            .map(|&c| if c == Colour::Black { Colour::White } else { Colour::Black })
            .collect();
        Ok(vec![black, white])
    }

    pub fn parse_state(&self, spec: &str) -> Result<Vec<Splice>> {
        let mut state: Vec<Option<Splice>> = vec![None; self.ids.len()];
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (id, s) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected crossing=A|B, got {part:?}")))?;
            let c = self
                .ids
                .iter()
                .position(|x| x == id.trim())
                .ok_or_else(|| Error::Parse(format!("unknown crossing {id}")))?;
            state[c] = Some(match s.trim() {
                "A" => Splice::A,
                "B" => Splice::B,
                other => return Err(Error::Parse(format!("unknown splice {other:?}"))),
            });
        }
        state
            .iter()
            .enumerate()
            .map(|(c, s)| s.ok_or_else(|| Error::Parse(format!("no splice given for crossing {}", self.ids[c]))))
            .collect()
    }

    pub fn state_graph(&self, state: &[Splice]) -> Result<SignedRibbonGraph> {
        self.validate()?;
        if state.len() != self.ids.len() {
            return Err(Error::MalformedDiagram("state does not cover every crossing".into()));
        }
        Ok(self.skeleton().state_graph(&self.ids, state))
    }

    pub fn all_a_graph(&self) -> Result<SignedRibbonGraph> {
        self.state_graph(&vec![Splice::A; self.ids.len()])
    }

    /// Canonical codes of every state graph.
    pub fn gset(&self, max_crossings: usize) -> Result<BTreeSet<CanonicalCode>> {
        self.validate()?;
        check_cap("crossing", self.ids.len(), max_crossings.min(40))?;
        let k = self.skeleton();
        Ok(k.par_states(|s| k.state_graph(&self.ids, &s).canonical_code())
            .into_iter()
            .collect())
    }

    /// The Tait graphs, one per colouring, in the colouring order.
    pub fn tait_graphs(&self) -> Result<[SignedRibbonGraph; 2]> {
        let colourings = self.checkerboard_colourings()?;
        if colourings.is_empty() {
            return Err(Error::NotColourable);
        }
        let faces = self.faces();
        let mut corner_face = vec![[0usize; 4]; self.ids.len()];
        for (f, face) in faces.iter().enumerate() {
            for (id, corner) in &face.corners {
                let c = self.ids.binary_search(id).expect("face corners name crossings");
                corner_face[c][*corner as usize] = f;
            }
        }
        let tait = |colours: &Vec<Colour>| {
            // The A-splice hugs corners 1 and 3.
            let state: Vec<Splice> = corner_face
                .iter()
                .map(|cf| if colours[cf[1]] == Colour::Black { Splice::A } else { Splice::B })
                .collect();
            self.skeleton().state_graph(&self.ids, &state)
        };
        Ok([tait(&colourings[0]), tait(&colourings[1])])
    }

    /// The diagram D_G of a plane or projective ribbon graph: one crossing
    /// per edge, arcs following the vertex boundaries between consecutive
    /// arrows.
    pub fn from_ribbon(g: &SignedRibbonGraph) -> Result<Self> {
        let s = g.stats();
        if s.surface_class == SurfaceClass::Other {
            return Err(Error::OutOfClass(format!(
                "k={}, Euler genus {}, orientable={}",
                s.k, s.euler_genus, s.orientable
            )));
        }
        Ok(Self::from_ribbon_unchecked(g))
    }

    /// D_G without the surface check; the result may have a net of higher
    /// genus. Used for virtual realisations.
    pub(crate) fn from_ribbon_unchecked(g: &SignedRibbonGraph) -> Self {
        let ends = ribbon_arrow_slots(g);
        let mut arcs = Vec::new();
        let mut free_loops = Vec::new();
        for (ci, c) in g.curves().iter().enumerate() {
            if c.is_empty() {
                free_loops.push(false);
                continue;
            }
            for i in 0..c.len() {
                let j = (i + 1) % c.len();
                let (x, y) = (c[i], c[j]);
                let [_, x_end] = ends[&(ci, i)];
                let [y_start, _] = ends[&(ci, j)];
                arcs.push((x_end, y_start, x.dir.is_with() != y.dir.is_with()));
            }
        }
        Self::new(g.labels().to_vec(), arcs, free_loops).expect("D_G uses every slot once")
    }

    pub fn same_gset(&self, other: &ProjDiagram, max_crossings: usize) -> Result<bool> {
        Ok(self.gset(max_crossings)? == other.gset(max_crossings)?)
    }

    /// Decides summand-flip equivalence through the Tait graphs: true iff a
    /// Tait graph of `other` is a partial dual of a Tait graph of `self`.
    pub fn summand_flip_equivalent(&self, other: &ProjDiagram) -> Result<bool> {
        let [t, _] = self.tait_graphs()?;
        let [u, _] = other.tait_graphs()?;
        if t.edge_count() != u.edge_count() {
            return Ok(false);
        }
        let classes = enumerate_partial_duals(&t, DEFAULT_MAX_EDGES)?;
        Ok(classes.contains_key(&u.canonical_code()))
    }
}

/// Slots of the start and end points of every arrow of `g` in D_G, keyed
/// by arrow position. An A-edge (sign −) puts its first arrow on corner
/// 1-2 and its second on corner 3-0; a B-edge uses corners 0-1 and 2-3.
/// Marking arrows run clockwise, from the higher slot of a corner to the
/// lower.
fn ribbon_arrow_slots(g: &SignedRibbonGraph) -> BTreeMap<(usize, usize), [Slot; 2]> {
    let mut out = BTreeMap::new();
    for (e, [alpha, beta]) in g.arrow_positions().into_iter().enumerate() {
        let (ta, ha, tb, hb) = match g.sign(e) {
            Sign::Minus => (2, 1, 0, 3),
            Sign::Plus => (1, 0, 3, 2),
        };
        for (pos, tail, head) in [(alpha, ta, ha), (beta, tb, hb)] {
            let a = g.curves()[pos.0][pos.1];
            let (start, end) = if a.dir.is_with() { (tail, head) } else { (head, tail) };
            out.insert(pos, [(e, start), (e, end)]);
        }
    }
    out
}

#[cfg(test)]
mod tests;
