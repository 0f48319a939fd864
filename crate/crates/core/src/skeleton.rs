//! The abstract crossing structure shared by projective and virtual
//! diagrams: crossings with four counterclockwise slots, arcs pairing
//! slots, and free loops. Splicing and state graphs only need this much.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ribbon::{Arrow, Direction, Sign, SignedRibbonGraph};

/// Endpoint of an arc: crossing index and slot.
pub type Slot = (usize, u8);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Splice {
    A,
    B,
}

impl Splice {
    pub fn flip(self) -> Self {
        match self {
            Splice::A => Splice::B,
            Splice::B => Splice::A,
        }
    }

    /// The edge sign recorded by the state graph.
    pub fn sign(self) -> Sign {
        match self {
            Splice::A => Sign::Minus,
            Splice::B => Sign::Plus,
        }
    }

    /// The slot joined to `s` by this splice: A pairs 1-2 and 3-0, B pairs
    /// 0-1 and 2-3.
    pub fn partner(self, s: u8) -> u8 {
        match (self, s % 2) {
            (Splice::A, 1) | (Splice::B, 0) => (s + 1) % 4,
            _ => (s + 3) % 4,
        }
    }
}

/// Crossing slots joined by arcs, plus a number of crossing-free loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    /// Other end of the arc at each slot.
    pub(crate) across: Vec<[Slot; 4]>,
    pub(crate) free_loops: usize,
}

impl Skeleton {
    pub fn crossing_count(&self) -> usize {
        self.across.len()
    }

    /// The spliced curves of a state, as marking-arrow sequences. Each
    /// crossing contributes one arrow per splice segment, pointing
    /// clockwise around the crossing. Free loops become empty curves.
    pub fn state_curves(&self, state: &[Splice]) -> Vec<Vec<Arrow>> {
        let n = self.across.len();
        let mut visited = vec![[false; 4]; n];
        let mut curves = Vec::new();
        for c in 0..n {
            for s in 0..4u8 {
                if visited[c][s as usize] {
                    continue;
                }
                let mut curve = Vec::new();
                let (mut cc, mut ss) = (c, s);
                loop {
                    // Pass the splice segment at cc from ss to its partner.
                    let t = state[cc].partner(ss);
                    visited[cc][ss as usize] = true;
                    visited[cc][t as usize] = true;
                    // Counterclockwise is against the clockwise arrow.
                    let dir = if t == (ss + 1) % 4 { Direction::Against } else { Direction::With };
                    curve.push(Arrow::new(cc, dir));
                    (cc, ss) = self.across[cc][t as usize];
                    if (cc, ss) == (c, s) {
                        break;
                    }
                }
                curves.push(curve);
            }
        }
        curves.extend(std::iter::repeat_with(Vec::new).take(self.free_loops));
        curves
    }

    pub fn state_curve_count(&self, state: &[Splice]) -> usize {
        self.state_curves(state).len()
    }

    /// Index (as in [`state_curves`](Self::state_curves)) of the state
    /// curve through every slot.
    pub fn slot_curves(&self, state: &[Splice]) -> Vec<[usize; 4]> {
        let n = self.across.len();
        let mut out = vec![[usize::MAX; 4]; n];
        let mut next = 0;
        for c in 0..n {
            for s in 0..4u8 {
                if out[c][s as usize] != usize::MAX {
                    continue;
                }
                let (mut cc, mut ss) = (c, s);
                loop {
                    let t = state[cc].partner(ss);
                    out[cc][ss as usize] = next;
                    out[cc][t as usize] = next;
                    (cc, ss) = self.across[cc][t as usize];
                    if (cc, ss) == (c, s) {
                        break;
                    }
                }
                next += 1;
            }
        }
        out
    }

    /// The signed ribbon graph of a state; edge `i` is crossing `i`.
    pub fn state_graph(&self, labels: &[String], state: &[Splice]) -> SignedRibbonGraph {
        let signs = state.iter().map(|s| s.sign()).collect();
        SignedRibbonGraph::from_parts(self.state_curves(state), labels.to_vec(), signs)
    }

    /// Every state as a bitmask, bit `i` set meaning a B-splice at crossing `i`.
    pub fn state_from_mask(&self, mask: u64) -> Vec<Splice> {
        (0..self.across.len())
            .map(|i| if mask >> i & 1 == 1 { Splice::B } else { Splice::A })
            .collect()
    }

    /// Runs `f` on every state in parallel, in no particular order.
    pub fn par_states<T: Send>(&self, f: impl Fn(Vec<Splice>) -> T + Sync + Send) -> Vec<T> {
        let n = self.across.len();
        (0..1u64 << n)
            .into_par_iter()
            .map(|m| f(self.state_from_mask(m)))
            .collect()
    }
}
