//! Virtual link diagrams as Gauss diagrams.
//!
//! Each chord is a classical crossing. Its local picture is rebuilt on the
//! crossing slots: the over-strand enters at slot 1 and leaves at slot 3;
//! for a `+` chord the under-strand enters at 2 and leaves at 0 (a quarter
//! turn counterclockwise from the over-strand), for a `-` chord it enters
//! at 0 and leaves at 2.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{check_cap, Error, Result};
use crate::proj::ProjDiagram;
use crate::ribbon::{CanonicalCode, Sign, SignedRibbonGraph};
use crate::skeleton::{Skeleton, Slot, Splice};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chord {
    pub id: String,
    /// Passage indices.
    pub over: usize,
    pub under: usize,
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussDiagram {
    passages: Vec<String>,
    /// Passage indices around each circle, in orientation order.
    components: Vec<Vec<usize>>,
    /// Sorted by id.
    chords: Vec<Chord>,
    /// (chord, is over) for every passage.
    passage_chord: Vec<(usize, bool)>,
}

#[derive(Serialize, Deserialize)]
struct ChordJson {
    id: String,
    over: String,
    under: String,
    sign: String,
}

#[derive(Serialize, Deserialize)]
struct GaussJson {
    components: Vec<Vec<String>>,
    #[serde(default)]
    chords: Vec<ChordJson>,
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedGauss(msg.into())
}

impl GaussDiagram {
    /// Builds a diagram from circles of passage names and chords
    /// `(id, over passage, under passage, sign)`.
    pub fn new(components: Vec<Vec<String>>, chords: Vec<(String, String, String, Sign)>) -> Result<Self> {
        let mut passages = Vec::new();
        let mut index = BTreeMap::new();
        let comps = components
            .into_iter()
            .map(|c| {
                c.into_iter()
                    .map(|p| {
                        if index.contains_key(&p) {
                            return Err(malformed(format!("passage {p} appears twice")));
                        }
                        index.insert(p.clone(), passages.len());
                        passages.push(p);
                        Ok(passages.len() - 1)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if comps.is_empty() {
            return Err(malformed("diagram has no circles"));
        }
        let mut chords: Vec<(String, String, String, Sign)> = chords;
        chords.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(w) = chords.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(malformed(format!("chord {} is listed twice", w[0].0)));
        }
        let mut passage_chord = vec![(usize::MAX, false); passages.len()];
        let mut out = Vec::new();
        for (ci, (id, over, under, sign)) in chords.into_iter().enumerate() {
            let mut ends = [0; 2];
            for (k, (p, is_over)) in [(&over, true), (&under, false)].into_iter().enumerate() {
                let &pi = index
                    .get(p)
                    .ok_or_else(|| malformed(format!("chord {id} names unknown passage {p}")))?;
                if passage_chord[pi].0 != usize::MAX {
                    return Err(malformed(format!("passage {p} is used by two chord ends")));
                }
                passage_chord[pi] = (ci, is_over);
                ends[k] = pi;
            }
            out.push(Chord {
                id,
                over: ends[0],
                under: ends[1],
                sign,
            });
        }
        if let Some(p) = passage_chord.iter().position(|x| x.0 == usize::MAX) {
            return Err(malformed(format!("passage {} has no chord", passages[p])));
        }
        Ok(GaussDiagram {
            passages,
            components: comps,
            chords: out,
            passage_chord,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let raw: GaussJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let chords = raw
            .chords
            .into_iter()
            .map(|c| Ok((c.id, c.over, c.under, Sign::parse(&c.sign)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(raw.components, chords)
    }

    pub fn to_json(&self) -> Value {
        let raw = GaussJson {
            components: self
                .components
                .iter()
                .map(|c| c.iter().map(|&p| self.passages[p].clone()).collect())
                .collect(),
            chords: self
                .chords
                .iter()
                .map(|c| ChordJson {
                    id: c.id.clone(),
                    over: self.passages[c.over].clone(),
                    under: self.passages[c.under].clone(),
                    sign: c.sign.as_str().to_string(),
                })
                .collect(),
        };
        serde_json::to_value(raw).expect("Gauss diagram serializes")
    }

    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    pub fn chord_ids(&self) -> Vec<String> {
        self.chords.iter().map(|c| c.id.clone()).collect()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    fn chord_index(&self, id: &str) -> Result<usize> {
        self.chords
            .binary_search_by(|c| c.id.as_str().cmp(id))
            .map_err(|_| Error::UnknownChord(id.to_string()))
    }

    /// Entry and exit slots of a passage.
    fn passage_slots(&self, p: usize) -> (u8, u8) {
        let (c, over) = self.passage_chord[p];
        match (over, self.chords[c].sign) {
            (true, _) => (1, 3),
            (false, Sign::Plus) => (2, 0),
            (false, Sign::Minus) => (0, 2),
        }
    }

    pub fn skeleton(&self) -> Skeleton {
        let mut across = vec![[(usize::MAX, 0u8); 4]; self.chords.len()];
        let mut free_loops = 0;
        for comp in &self.components {
            if comp.is_empty() {
                free_loops += 1;
                continue;
            }
            for i in 0..comp.len() {
                let (p, q) = (comp[i], comp[(i + 1) % comp.len()]);
                let out: Slot = (self.passage_chord[p].0, self.passage_slots(p).1);
                let inn: Slot = (self.passage_chord[q].0, self.passage_slots(q).0);
                across[out.0][out.1 as usize] = inn;
                across[inn.0][inn.1 as usize] = out;
            }
        }
        Skeleton { across, free_loops }
    }

    pub fn parse_state(&self, spec: &str) -> Result<Vec<Splice>> {
        let mut state: Vec<Option<Splice>> = vec![None; self.chords.len()];
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (id, s) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected chord=A|B, got {part:?}")))?;
            let c = self.chord_index(id.trim())?;
            state[c] = Some(match s.trim() {
                "A" => Splice::A,
                "B" => Splice::B,
                other => return Err(Error::Parse(format!("unknown splice {other:?}"))),
            });
        }
        state
            .iter()
            .enumerate()
            .map(|(c, s)| s.ok_or_else(|| Error::Parse(format!("no splice given for chord {}", self.chords[c].id))))
            .collect()
    }

    pub fn state_graph(&self, state: &[Splice]) -> Result<SignedRibbonGraph> {
        if state.len() != self.chords.len() {
            return Err(malformed("state does not cover every chord"));
        }
        Ok(self.skeleton().state_graph(&self.chord_ids(), state))
    }

    pub fn gset(&self, max_crossings: usize) -> Result<BTreeSet<CanonicalCode>> {
        check_cap("chord", self.chords.len(), max_crossings.min(40))?;
        let k = self.skeleton();
        let ids = self.chord_ids();
        Ok(k.par_states(|s| k.state_graph(&ids, &s).canonical_code())
            .into_iter()
            .collect())
    }

    /// Virtualises a crossing: the chord's direction is reversed and its
    /// sign kept.
    pub fn virtualise(&self, chord: &str) -> Result<GaussDiagram> {
        let c = self.chord_index(chord)?;
        Ok(self.virtualise_index(c))
    }

    fn virtualise_index(&self, c: usize) -> GaussDiagram {
        let mut out = self.clone();
        let ch = &mut out.chords[c];
        std::mem::swap(&mut ch.over, &mut ch.under);
        out.passage_chord[ch.over].1 = true;
        out.passage_chord[ch.under].1 = false;
        out
    }

    /// Virtualises every chord whose bit is set in `mask`.
    pub fn virtualise_mask(&self, mask: u64) -> GaussDiagram {
        (0..self.chords.len())
            .filter(|c| mask >> c & 1 == 1)
            .fold(self.clone(), |g, c| g.virtualise_index(c))
    }

    /// Toggles a chord's sign, leaving its direction. This mirrors the
    /// crossing, so it does not preserve the set of state graphs in general.
    pub fn toggle_sign(&self, chord: &str) -> Result<GaussDiagram> {
        let c = self.chord_index(chord)?;
        let mut out = self.clone();
        out.chords[c].sign = out.chords[c].sign.flip();
        Ok(out)
    }

    /// Reverses the orientation of one circle. Chords between this circle
    /// and another change sign.
    pub fn reverse_component(&self, comp: usize) -> GaussDiagram {
        let mut out = self.clone();
        out.components[comp].reverse();
        let on: BTreeSet<usize> = out.components[comp].iter().copied().collect();
        for ch in &mut out.chords {
            if on.contains(&ch.over) != on.contains(&ch.under) {
                ch.sign = ch.sign.flip();
            }
        }
        out
    }

    /// Code of the diagram up to circle order, rotation and orientation
    /// and chord relabelling.
    pub fn canonical_code(&self) -> Vec<u32> {
        let circle_of: Vec<(usize, usize)> = {
            let mut v = vec![(0, 0); self.passages.len()];
            for (ci, comp) in self.components.iter().enumerate() {
                for (i, &p) in comp.iter().enumerate() {
                    v[p] = (ci, i);
                }
            }
            v
        };
        let partner = |p: usize| {
            let ch = &self.chords[self.passage_chord[p].0];
            if ch.over == p {
                ch.under
            } else {
                ch.over
            }
        };
        // Circles linked by chords.
        let n = self.components.len();
        let mut group = vec![usize::MAX; n];
        let mut groups = Vec::new();
        for s in 0..n {
            if group[s] != usize::MAX {
                continue;
            }
            let mut members = vec![s];
            group[s] = groups.len();
            let mut i = 0;
            while i < members.len() {
                let c = members[i];
                i += 1;
                for &p in &self.components[c] {
                    let other = circle_of[partner(p)].0;
                    if group[other] == usize::MAX {
                        group[other] = groups.len();
                        members.push(other);
                    }
                }
            }
            groups.push(members);
        }

        let read = |root: usize, start: usize, rev: bool| -> Vec<u32> {
            let mut state: Vec<Option<(usize, bool)>> = vec![None; n];
            let mut number: Vec<Option<u32>> = vec![None; self.chords.len()];
            let mut next = 0;
            let mut out = Vec::new();
            let mut queue = VecDeque::new();
            state[root] = Some((start, rev));
            queue.push_back(root);
            while let Some(c) = queue.pop_front() {
                let (s, r) = state[c].expect("queued circles are placed");
                let comp = &self.components[c];
                let len = comp.len();
                for i in 0..len {
                    let idx = if r { (s + len - i) % len } else { (s + i) % len };
                    let p = comp[idx];
                    let (ch, over) = self.passage_chord[p];
                    let q = partner(p);
                    let (qc, qi) = circle_of[q];
                    if state[qc].is_none() {
                        // Orient the new circle so this chord reads positive.
                        let flip = self.chords[ch].sign == Sign::Minus;
                        state[qc] = Some((qi, r ^ flip));
                        queue.push_back(qc);
                    }
                    let rq = state[qc].expect("placed above").1;
                    let mixed = qc != c;
                    let minus = (self.chords[ch].sign == Sign::Minus) ^ (mixed && (r != rq));
                    let num = *number[ch].get_or_insert_with(|| {
                        next += 1;
                        next - 1
                    });
                    out.push(2 + 4 * num + 2 * u32::from(over) + u32::from(minus));
                }
                out.push(1);
            }
            out
        };

        let mut codes: Vec<Vec<u32>> = groups
            .iter()
            .map(|members| {
                let mut best: Option<Vec<u32>> = None;
                for &c in members {
                    let len = self.components[c].len();
                    if len == 0 {
                        return vec![1];
                    }
                    for start in 0..len {
                        for rev in [false, true] {
                            let code = read(c, start, rev);
                            if best.as_ref().is_none_or(|b| code < *b) {
                                best = Some(code);
                            }
                        }
                    }
                }
                best.expect("group has a circle")
            })
            .collect();
        codes.sort();
        let mut out = Vec::new();
        for c in codes {
            out.extend(c);
            out.push(0);
        }
        out
    }

    pub fn is_isomorphic(&self, other: &GaussDiagram) -> bool {
        self.chords.len() == other.chords.len() && self.canonical_code() == other.canonical_code()
    }

    /// A Gauss diagram whose state graphs include `g`; the state choosing
    /// A at negative edges and B at positive ones reproduces `g`.
    pub fn from_ribbon(g: &SignedRibbonGraph) -> GaussDiagram {
        let d = ProjDiagram::from_ribbon_unchecked(g);
        let k = d.skeleton();
        let n = k.crossing_count();
        let mut seen = vec![[false; 4]; n];
        let mut components = Vec::new();
        let mut over_of = vec![String::new(); n];
        let mut under_of = vec![String::new(); n];
        let mut over_in = vec![0u8; n];
        let mut under_in = vec![0u8; n];
        let mut next = 0;
        for c in 0..n {
            for s in 0..4u8 {
                if seen[c][s as usize] {
                    continue;
                }
                let mut circle = Vec::new();
                let (mut cc, mut ss) = (c, s);
                loop {
                    // Enter at ss, leave at the opposite slot.
                    seen[cc][ss as usize] = true;
                    seen[cc][((ss + 2) % 4) as usize] = true;
                    next += 1;
                    let name = format!("p{next}");
                    if ss % 2 == 1 {
                        over_of[cc] = name.clone();
                        over_in[cc] = ss;
                    } else {
                        under_of[cc] = name.clone();
                        under_in[cc] = ss;
                    }
                    circle.push(name);
                    (cc, ss) = k.across[cc][((ss + 2) % 4) as usize];
                    if (cc, ss) == (c, s) {
                        break;
                    }
                }
                components.push(circle);
            }
        }
        components.extend(std::iter::repeat_with(Vec::new).take(k.free_loops));
        let chords = (0..n)
            .map(|c| {
                let sign = if matches!((over_in[c], under_in[c]), (1, 2) | (3, 0)) {
                    Sign::Plus
                } else {
                    Sign::Minus
                };
                (g.label(c).to_string(), over_of[c].clone(), under_of[c].clone(), sign)
            })
            .collect();
        GaussDiagram::new(components, chords).expect("traced diagram is well formed")
    }

    pub fn same_gset(&self, other: &GaussDiagram, max_crossings: usize) -> Result<bool> {
        Ok(self.gset(max_crossings)? == other.gset(max_crossings)?)
    }

    /// Searches for a chord set whose virtualisation turns `self` into a
    /// diagram isomorphic to `other`; returns the least such set.
    pub fn virtualisation_related(&self, other: &GaussDiagram, max_crossings: usize) -> Result<Option<Vec<String>>> {
        check_cap("chord", self.chords.len(), max_crossings.min(40))?;
        check_cap("chord", other.chords.len(), max_crossings.min(40))?;
        if self.chords.len() != other.chords.len() || self.passages.len() != other.passages.len() {
            return Ok(None);
        }
        let target = other.canonical_code();
        let mut masks: Vec<u64> = (0..1u64 << self.chords.len()).collect();
        masks.sort_by_key(|m| (m.count_ones(), *m));
        Ok(masks
            .into_iter()
            .find(|&m| self.virtualise_mask(m).canonical_code() == target)
            .map(|m| {
                (0..self.chords.len())
                    .filter(|c| m >> c & 1 == 1)
                    .map(|c| self.chords[c].id.clone())
                    .collect()
            }))
    }
}
