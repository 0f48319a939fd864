//! RII insertion and the reduction to a one-vertex all-A ribbon graph.
//!
//! An insertion pushes a finger of one arc over another across a region.
//! In the region's chart (region on the left of both sides) the first arc
//! runs P to Q and the second R to S. The new crossings X and Y use slots
//! right = 0, up = 1, left = 2, down = 3, with the first arc over at both:
//!
//! ```text
//!   P - X3   X1 - Y1   Y3 - Q      (first arc, over)
//!   R - Y0   Y2 - X0   X2 - S      (second arc, under)
//! ```
//!
//! Under the all-A state P is joined to S and Q to R, so two distinct
//! all-A curves through the arcs merge into one.

use serde::{Deserialize, Serialize};

use super::ProjDiagram;
use crate::error::{Error, Result};
use crate::skeleton::{Slot, Splice};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SiteSide {
    /// The `index`-th arc side along face `face` (see [`ProjDiagram::faces`]).
    Side { face: usize, index: usize },
    /// A null-homologous free loop.
    FreeLoop(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RiiSite {
    pub first: SiteSide,
    pub second: SiteSide,
}

enum Resolved {
    Arc {
        arc: usize,
        from: Slot,
        to: Slot,
        agree: [bool; 2],
        face: usize,
    },
    Loop(usize),
}

impl ProjDiagram {
    /// Net component of every crossing.
    fn crossing_components(&self) -> Vec<usize> {
        let n = self.ids.len();
        let mut comp: Vec<usize> = (0..n).collect();
        fn root(comp: &mut [usize], mut x: usize) -> usize {
            while comp[x] != x {
                comp[x] = comp[comp[x]];
                x = comp[x];
            }
            x
        }
        for a in &self.arcs {
            let (r0, r1) = (root(&mut comp, a.ends[0].0), root(&mut comp, a.ends[1].0));
            comp[r0] = r1;
        }
        (0..n).map(|c| root(&mut comp, c)).collect()
    }

    fn face_component(&self, faces: &[super::Face], comps: &[usize], f: usize) -> usize {
        let side = &faces[f].sides[0];
        comps[side.from.0]
    }
}

fn fresh_ids(d: &ProjDiagram) -> (String, String) {
    (1..)
        .map(|k| (format!("rii{k}a"), format!("rii{k}b")))
        .find(|(x, y)| !d.ids.contains(x) && !d.ids.contains(y))
        .expect("some id is free")
}

/// Inserts two crossings by an RII move at `site`.
pub fn rii_insert(d: &ProjDiagram, site: &RiiSite) -> Result<ProjDiagram> {
    d.validate()?;
    let faces = d.faces();
    let resolve = |s: SiteSide| -> Result<Resolved> {
        match s {
            SiteSide::Side { face, index } => {
                let f = faces
                    .get(face)
                    .ok_or_else(|| Error::InvalidSite(format!("no face {face}")))?;
                let side = f
                    .sides
                    .get(index)
                    .ok_or_else(|| Error::InvalidSite(format!("face {face} has no side {index}")))?;
                Ok(Resolved::Arc {
                    arc: side.arc,
                    from: side.from,
                    to: side.to,
                    agree: side.agree,
                    face,
                })
            }
            SiteSide::FreeLoop(i) => match d.free_loops.get(i) {
                None => Err(Error::InvalidSite(format!("no free loop {i}"))),
                Some(true) => Err(Error::InvalidSite(format!("free loop {i} is 1-homologous"))),
                Some(false) => Ok(Resolved::Loop(i)),
            },
        }
    };
    let first = resolve(site.first)?;
    let second = resolve(site.second)?;
    match (&first, &second) {
        (Resolved::Arc { arc: a, face: f, .. }, Resolved::Arc { arc: b, face: g, .. }) => {
            if a == b {
                return Err(Error::InvalidSite("both sides belong to one arc".into()));
            }
            let comps = d.crossing_components();
            if f != g && d.face_component(&faces, &comps, *f) == d.face_component(&faces, &comps, *g) {
                return Err(Error::InvalidSite("the sides do not bound a common region".into()));
            }
        }
        (Resolved::Loop(i), Resolved::Loop(j)) if i == j => {
            return Err(Error::InvalidSite("both sides belong to one free loop".into()));
        }
        _ => {}
    }

    let n = d.ids.len();
    let (x, y) = (n, n + 1);
    let mut removed_arcs = Vec::new();
    let mut removed_loops = Vec::new();
    let mut new_arcs: Vec<(Slot, Slot, bool)> = vec![((x, 1), (y, 1), false), ((y, 2), (x, 0), false)];
    match first {
        Resolved::Arc { arc, from, to, agree, .. } => {
            debug_assert_eq!(agree[0] == agree[1], !d.arcs[arc].twist);
            removed_arcs.push(arc);
            new_arcs.push((from, (x, 3), !agree[0]));
            new_arcs.push(((y, 3), to, !agree[1]));
        }
        Resolved::Loop(i) => {
            removed_loops.push(i);
            new_arcs.push(((y, 3), (x, 3), false));
        }
    }
    match second {
        Resolved::Arc { arc, from, to, agree, .. } => {
            removed_arcs.push(arc);
            new_arcs.push((from, (y, 0), !agree[0]));
            new_arcs.push(((x, 2), to, !agree[1]));
        }
        Resolved::Loop(i) => {
            removed_loops.push(i);
            new_arcs.push(((x, 2), (y, 0), false));
        }
    }

    let (xid, yid) = fresh_ids(d);
    let mut ids = d.ids.clone();
    ids.push(xid);
    ids.push(yid);
    let mut arcs: Vec<(Slot, Slot, bool)> = d
        .arcs
        .iter()
        .enumerate()
        .filter(|(i, _)| !removed_arcs.contains(i))
        .map(|(_, a)| (a.ends[0], a.ends[1], a.twist))
        .collect();
    arcs.extend(new_arcs);
    let free_loops = d
        .free_loops
        .iter()
        .enumerate()
        .filter(|(i, _)| !removed_loops.contains(i))
        .map(|(_, &b)| b)
        .collect();
    ProjDiagram::new(ids, arcs, free_loops)
}

/// A site joining two distinct all-A curves, if there are two.
fn merging_site(d: &ProjDiagram) -> Option<RiiSite> {
    let k = d.skeleton();
    let all_a = vec![Splice::A; d.ids.len()];
    if k.state_curve_count(&all_a) <= 1 {
        return None;
    }
    let curve_of = k.slot_curves(&all_a);
    let faces = d.faces();
    // A crossing whose two A-segments lie on different curves: its corner
    // 0-1 sees both.
    for (c, slots) in curve_of.iter().enumerate() {
        if slots[0] == slots[1] {
            continue;
        }
        for (f, face) in faces.iter().enumerate() {
            if let Some(i) = face.corners.iter().position(|(id, corner)| *id == d.ids[c] && *corner == 0) {
                let len = face.sides.len();
                return Some(RiiSite {
                    first: SiteSide::Side { face: f, index: (i + len - 1) % len },
                    second: SiteSide::Side { face: f, index: i },
                });
            }
        }
        unreachable!("every corner lies on a face");
    }
    // Otherwise the curves lie in different net components or free loops.
    if d.ids.is_empty() {
        return Some(RiiSite {
            first: SiteSide::FreeLoop(0),
            second: SiteSide::FreeLoop(1),
        });
    }
    let first = SiteSide::Side { face: 0, index: 0 };
    if !d.free_loops.is_empty() {
        return Some(RiiSite {
            first,
            second: SiteSide::FreeLoop(0),
        });
    }
    let comps = d.crossing_components();
    let home = d.face_component(&faces, &comps, 0);
    let other = (0..faces.len()).find(|&f| d.face_component(&faces, &comps, f) != home)?;
    Some(RiiSite {
        first,
        second: SiteSide::Side { face: other, index: 0 },
    })
}

/// The diagrams visited while reducing `d` to a one-vertex all-A graph,
/// starting with `d` itself.
pub fn reduce_one_vertex_steps(d: &ProjDiagram) -> Result<Vec<ProjDiagram>> {
    d.validate()?;
    let mut steps = vec![d.clone()];
    while let Some(site) = merging_site(steps.last().expect("non-empty")) {
        let next = rii_insert(steps.last().expect("non-empty"), &site)?;
        steps.push(next);
    }
    Ok(steps)
}

pub fn reduce_one_vertex(d: &ProjDiagram) -> Result<ProjDiagram> {
    Ok(reduce_one_vertex_steps(d)?.pop().expect("non-empty"))
}
