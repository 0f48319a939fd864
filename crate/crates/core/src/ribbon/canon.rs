//! Canonical codes for signed ribbon graphs.
//!
//! The symmetry group is generated by edge relabelling, curve reordering,
//! rotation of a curve, reversal of a curve together with flipping every
//! arrow on it, and flipping both arrows of one edge. Within a connected
//! component a code is produced from every possible root (curve, position,
//! reading direction) by a breadth-first reading that numbers edges in
//! order of appearance and normalises each edge so its first arrow reads
//! "with". The least code is kept. Component codes are sorted and
//! concatenated.

use std::collections::VecDeque;
use std::fmt;

use serde::{Serialize, Serializer};

use super::{Direction, Sign, SignedRibbonGraph};

const COMPONENT_END: u16 = 0;
const CURVE_END: u16 = 1;

/// Byte encoding of an isomorphism class; equal codes iff isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

fn token(num: usize, dir: Direction, sign: Sign) -> u16 {
    let v = 2 + 4 * num + 2 * usize::from(!dir.is_with()) + usize::from(sign == Sign::Minus);
    u16::try_from(v).expect("too many edges for a canonical code")
}

fn oriented(dir: Direction, flip: bool) -> Direction {
    if flip {
        dir.flip()
    } else {
        dir
    }
}

struct Reader<'a> {
    g: &'a SignedRibbonGraph,
    /// (curve, index) of the other arrow, per arrow position
    partner: Vec<Vec<(usize, usize)>>,
}

impl<'a> Reader<'a> {
    fn new(g: &'a SignedRibbonGraph) -> Self {
        let pos = g.arrow_positions();
        let partner = g
            .curves()
            .iter()
            .enumerate()
            .map(|(ci, c)| {
                c.iter()
                    .enumerate()
                    .map(|(pi, a)| {
                        let [p, q] = pos[a.edge];
                        if p == (ci, pi) {
                            q
                        } else {
                            p
                        }
                    })
                    .collect()
            })
            .collect();
        Reader { g, partner }
    }

    fn read(&self, root: usize, start: usize, reversed: bool, out: &mut Vec<u16>) {
        let curves = self.g.curves();
        let mut state: Vec<Option<(usize, bool)>> = vec![None; curves.len()];
        let mut numbering: Vec<Option<(usize, bool)>> = vec![None; self.g.edge_count()];
        let mut next = 0;
        let mut queue = VecDeque::new();
        state[root] = Some((start, reversed));
        queue.push_back(root);
        while let Some(c) = queue.pop_front() {
            let (s, rev) = state[c].expect("queued curves have a root");
            let len = curves[c].len();
            for i in 0..len {
                let idx = if rev { (s + len - i) % len } else { (s + i) % len };
                let a = curves[c][idx];
                let eff = oriented(a.dir, rev);
                let sign = self.g.sign(a.edge);
                match numbering[a.edge] {
                    Some((num, toggle)) => out.push(token(num, oriented(eff, toggle), sign)),
                    None => {
                        let toggle = !eff.is_with();
                        numbering[a.edge] = Some((next, toggle));
                        out.push(token(next, Direction::With, sign));
                        next += 1;
                        let (c2, p2) = self.partner[c][idx];
                        if state[c2].is_none() {
                            // Read the new curve so that this edge's second
                            // arrow also reads "with".
                            let dir2 = curves[c2][p2].dir;
                            let rev2 = oriented(dir2, toggle) != Direction::With;
                            state[c2] = Some((p2, rev2));
                            queue.push_back(c2);
                        }
                    }
                }
            }
            out.push(CURVE_END);
        }
    }
}

fn component_roots(g: &SignedRibbonGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut adj = vec![Vec::new(); n];
    let pos = g.arrow_positions();
    for [(a, _), (b, _)] in pos {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut i = 0;
        while i < members.len() {
            let u = members[i];
            i += 1;
            for &w in &adj[u] {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    members.push(w);
                }
            }
        }
        out.push(members);
    }
    out
}

impl SignedRibbonGraph {
    pub fn canonical_code(&self) -> CanonicalCode {
        let reader = Reader::new(self);
        let mut codes: Vec<Vec<u16>> = component_roots(self)
            .into_iter()
            .map(|members| {
                let mut best: Option<Vec<u16>> = None;
                let mut buf = Vec::new();
                for &c in &members {
                    let len = self.curves()[c].len();
                    if len == 0 {
                        return vec![CURVE_END];
                    }
                    for start in 0..len {
                        for rev in [false, true] {
                            buf.clear();
                            reader.read(c, start, rev, &mut buf);
                            if best.as_ref().is_none_or(|b| buf < *b) {
                                best = Some(buf.clone());
                            }
                        }
                    }
                }
                best.expect("component has a root")
            })
            .collect();
        codes.sort();
        let mut bytes = Vec::new();
        for code in codes {
            for t in code {
                bytes.extend_from_slice(&t.to_be_bytes());
            }
            bytes.extend_from_slice(&COMPONENT_END.to_be_bytes());
        }
        CanonicalCode(bytes)
    }

    pub fn is_isomorphic(&self, other: &SignedRibbonGraph) -> bool {
        self.edge_count() == other.edge_count()
            && self.vertex_count() == other.vertex_count()
            && self.canonical_code() == other.canonical_code()
    }
}
