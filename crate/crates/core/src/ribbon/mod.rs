//! Arrow presentations and signed ribbon graphs.
//!
//! A ribbon graph is stored as a list of closed curves (vertex boundaries),
//! each carrying a cyclic sequence of marking arrows. Every edge labels
//! exactly two arrows. An arrow points either with or against the listed
//! traversal order of its curve.

mod canon;
pub(crate) mod surface;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result, Violation};

pub use canon::CanonicalCode;
pub use surface::{BoundaryTrace, RibbonStats, SubsetStats, SurfaceClass, TraceStep};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    With,
    Against,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::With => Direction::Against,
            Direction::Against => Direction::With,
        }
    }

    pub fn is_with(self) -> bool {
        self == Direction::With
    }

    pub(crate) fn from_bool(with: bool) -> Self {
        if with {
            Direction::With
        } else {
            Direction::Against
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "+" => Ok(Sign::Plus),
            "-" => Ok(Sign::Minus),
            other => Err(Error::Parse(format!("bad sign {other:?}"))),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledArrow {
    pub label: String,
    pub direction: Direction,
}

/// Closed curves carrying labelled marking arrows, before validation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ArrowPresentation {
    pub curves: Vec<Vec<LabelledArrow>>,
    pub edge_set: BTreeSet<String>,
}

/// Checks that every label of the edge set sits on exactly two arrows and
/// that no other label occurs. All violations are reported.
pub fn validate(ap: &ArrowPresentation) -> std::result::Result<(), Vec<Violation>> {
    let mut counts: BTreeMap<&str, usize> = ap.edge_set.iter().map(|l| (l.as_str(), 0)).collect();
    let mut unknown = BTreeSet::new();
    for arrow in ap.curves.iter().flatten() {
        match counts.get_mut(arrow.label.as_str()) {
            Some(c) => *c += 1,
            None => {
                unknown.insert(arrow.label.clone());
            }
        }
    }
    let mut violations: Vec<Violation> = counts
        .into_iter()
        .filter(|&(_, c)| c != 2)
        .map(|(l, c)| Violation::WrongMultiplicity {
            label: l.to_string(),
            count: c,
        })
        .collect();
    violations.extend(unknown.into_iter().map(|label| Violation::UnknownLabel { label }));
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// An arrow in an indexed graph: the edge index and its direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub edge: usize,
    pub dir: Direction,
}

impl Arrow {
    pub fn new(edge: usize, dir: Direction) -> Self {
        Arrow { edge, dir }
    }
}

/// Position of an arrow: curve index and index within that curve.
pub type ArrowPos = (usize, usize);

/// A validated signed ribbon graph.
///
/// Edges are indexed `0..edge_count()`; labels are kept for I/O and for
/// reporting edge subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedRibbonGraph {
    curves: Vec<Vec<Arrow>>,
    labels: Vec<String>,
    signs: Vec<Sign>,
}

impl SignedRibbonGraph {
    /// The graph with no vertices and no edges.
    pub fn empty() -> Self {
        SignedRibbonGraph {
            curves: Vec::new(),
            labels: Vec::new(),
            signs: Vec::new(),
        }
    }

    /// One isolated vertex.
    pub fn vertex() -> Self {
        SignedRibbonGraph {
            curves: vec![Vec::new()],
            labels: Vec::new(),
            signs: Vec::new(),
        }
    }

    /// Builds a graph from a presentation and a sign map. The sign map
    /// must cover exactly the edge set.
    pub fn new(ap: &ArrowPresentation, signs: &BTreeMap<String, Sign>) -> Result<Self> {
        validate(ap).map_err(Error::InvalidPresentation)?;
        let sign_keys: BTreeSet<&String> = signs.keys().collect();
        let edge_keys: BTreeSet<&String> = ap.edge_set.iter().collect();
        if sign_keys != edge_keys {
            let missing: Vec<Violation> = edge_keys
                .symmetric_difference(&sign_keys)
                .map(|l| Violation::UnknownLabel {
                    label: format!("{l} (sign map)"),
                })
                .collect();
            return Err(Error::InvalidPresentation(missing));
        }
        let labels: Vec<String> = ap.edge_set.iter().cloned().collect();
        let index: BTreeMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let curves = ap
            .curves
            .iter()
            .map(|c| {
                c.iter()
                    .map(|a| Arrow::new(index[a.label.as_str()], a.direction))
                    .collect()
            })
            .collect();
        let signs = labels.iter().map(|l| signs[l]).collect();
        Ok(SignedRibbonGraph { curves, labels, signs })
    }

    /// Internal constructor for graphs assembled from already consistent
    /// parts.
    pub(crate) fn from_parts(curves: Vec<Vec<Arrow>>, labels: Vec<String>, signs: Vec<Sign>) -> Self {
        let g = SignedRibbonGraph { curves, labels, signs };
        debug_assert!(g.check_indexed().is_ok(), "{:?}", g.check_indexed());
        g
    }

    fn check_indexed(&self) -> std::result::Result<(), String> {
        if self.labels.len() != self.signs.len() {
            return Err("labels/signs length mismatch".into());
        }
        let mut count = vec![0usize; self.labels.len()];
        for a in self.curves.iter().flatten() {
            if a.edge >= count.len() {
                return Err(format!("edge index {} out of range", a.edge));
            }
            count[a.edge] += 1;
        }
        match count.iter().position(|&c| c != 2) {
            Some(e) => Err(format!("edge {} has {} arrows", self.labels[e], count[e])),
            None => Ok(()),
        }
    }

    /// Parses a compact notation: curves separated by `;`, arrows written
    /// `label>` (with the traversal) or `label<` (against it). An empty
    /// segment is an isolated vertex. All signs are `+`; use
    /// [`with_signs`](Self::with_signs) to change them.
    ///
    /// `"e> e>"` is the orientable loop, `"e> e<"` the Möbius loop,
    /// `"e>; e>"` a single edge between two vertices.
    pub fn parse_notation(s: &str) -> Result<Self> {
        let mut ap = ArrowPresentation::default();
        for part in s.split(';') {
            let mut curve = Vec::new();
            for tok in part.split_whitespace() {
                let (label, dir) = if let Some(l) = tok.strip_suffix('>') {
                    (l, Direction::With)
                } else if let Some(l) = tok.strip_suffix('<') {
                    (l, Direction::Against)
                } else {
                    return Err(Error::Parse(format!("arrow token {tok:?} must end in '>' or '<'")));
                };
                if label.is_empty() {
                    return Err(Error::Parse(format!("empty label in {tok:?}")));
                }
                ap.edge_set.insert(label.to_string());
                curve.push(LabelledArrow {
                    label: label.to_string(),
                    direction: dir,
                });
            }
            ap.curves.push(curve);
        }
        let signs = ap.edge_set.iter().map(|l| (l.clone(), Sign::Plus)).collect();
        Self::new(&ap, &signs)
    }

    /// Sets signs from a `label=sign` list such as `"e=-,f=+"`.
    pub fn with_signs(mut self, spec: &str) -> Result<Self> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (label, sign) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected label=sign, got {item:?}")))?;
            let e = self.edge_index(label).ok_or_else(|| Error::UnknownEdge(label.to_string()))?;
            self.signs[e] = Sign::parse(sign)?;
        }
        Ok(self)
    }

    pub fn with_all_signs(mut self, sign: Sign) -> Self {
        self.signs.iter_mut().for_each(|s| *s = sign);
        self
    }

    pub fn curves(&self) -> &[Vec<Arrow>] {
        &self.curves
    }

    pub fn vertex_count(&self) -> usize {
        self.curves.len()
    }

    pub fn edge_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: usize) -> &str {
        &self.labels[e]
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn sign(&self, e: usize) -> Sign {
        self.signs[e]
    }

    pub fn edge_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Resolves labels to a bitmask over edge indices.
    pub fn edge_mask<S: AsRef<str>>(&self, labels: &[S]) -> Result<u64> {
        assert!(self.edge_count() <= 64, "edge masks hold at most 64 edges");
        let mut mask = 0u64;
        for l in labels {
            let e = self
                .edge_index(l.as_ref())
                .ok_or_else(|| Error::UnknownEdge(l.as_ref().to_string()))?;
            mask |= 1 << e;
        }
        Ok(mask)
    }

    pub fn mask_labels(&self, mask: u64) -> Vec<String> {
        (0..self.edge_count())
            .filter(|e| mask >> e & 1 == 1)
            .map(|e| self.labels[e].clone())
            .collect()
    }

    pub fn full_mask(&self) -> u64 {
        if self.edge_count() >= 64 {
            u64::MAX
        } else {
            (1u64 << self.edge_count()) - 1
        }
    }

    /// The two arrow positions of every edge, in reading order.
    pub fn arrow_positions(&self) -> Vec<[ArrowPos; 2]> {
        let mut out = vec![[(usize::MAX, usize::MAX); 2]; self.edge_count()];
        let mut seen = vec![0usize; self.edge_count()];
        for (ci, c) in self.curves.iter().enumerate() {
            for (pi, a) in c.iter().enumerate() {
                out[a.edge][seen[a.edge]] = (ci, pi);
                seen[a.edge] += 1;
            }
        }
        out
    }

    /// Counts of negative and positive edges.
    pub fn sign_counts(&self) -> (usize, usize) {
        let neg = self.signs.iter().filter(|&&s| s == Sign::Minus).count();
        (neg, self.edge_count() - neg)
    }

    /// The ribbon subgraph on the given edges: arrows of other edges are
    /// removed, as are curves left with no arrows. Labels are kept.
    pub fn restrict_to_edges(&self, mask: u64) -> SignedRibbonGraph {
        let keep: Vec<usize> = (0..self.edge_count()).filter(|e| mask >> e & 1 == 1).collect();
        let mut renumber = vec![usize::MAX; self.edge_count()];
        for (i, &e) in keep.iter().enumerate() {
            renumber[e] = i;
        }
        let curves = self
            .curves
            .iter()
            .map(|c| {
                c.iter()
                    .filter(|a| renumber[a.edge] != usize::MAX)
                    .map(|a| Arrow::new(renumber[a.edge], a.dir))
                    .collect::<Vec<_>>()
            })
            .filter(|c| !c.is_empty())
            .collect();
        SignedRibbonGraph::from_parts(
            curves,
            keep.iter().map(|&e| self.labels[e].clone()).collect(),
            keep.iter().map(|&e| self.signs[e]).collect(),
        )
    }

    /// Disjoint union; edge labels of `other` are prefixed to stay unique.
    pub fn disjoint_union(&self, other: &SignedRibbonGraph, prefix: &str) -> SignedRibbonGraph {
        let shift = self.edge_count();
        let mut curves = self.curves.clone();
        curves.extend(
            other
                .curves
                .iter()
                .map(|c| c.iter().map(|a| Arrow::new(a.edge + shift, a.dir)).collect()),
        );
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().map(|l| format!("{prefix}{l}")));
        let mut signs = self.signs.clone();
        signs.extend_from_slice(&other.signs);
        SignedRibbonGraph::from_parts(curves, labels, signs)
    }

    /// Converts back into an unvalidated presentation plus signs.
    pub fn to_presentation(&self) -> (ArrowPresentation, BTreeMap<String, Sign>) {
        let curves = self
            .curves
            .iter()
            .map(|c| {
                c.iter()
                    .map(|a| LabelledArrow {
                        label: self.labels[a.edge].clone(),
                        direction: a.dir,
                    })
                    .collect()
            })
            .collect();
        let edge_set = self.labels.iter().cloned().collect();
        let signs = self.labels.iter().cloned().zip(self.signs.iter().copied()).collect();
        (ArrowPresentation { curves, edge_set }, signs)
    }

    // The symmetry generators under which stats and canonical codes are
    // invariant. Each returns a new graph.

    pub fn relabelled(&self, rename: impl Fn(&str) -> String) -> SignedRibbonGraph {
        let mut g = self.clone();
        g.labels = self.labels.iter().map(|l| rename(l)).collect();
        g
    }

    pub fn with_curves_permuted(&self, order: &[usize]) -> SignedRibbonGraph {
        let mut g = self.clone();
        g.curves = order.iter().map(|&i| self.curves[i].clone()).collect();
        g
    }

    pub fn with_curve_rotated(&self, curve: usize, by: usize) -> SignedRibbonGraph {
        let mut g = self.clone();
        let c = &mut g.curves[curve];
        if !c.is_empty() {
            let k = by % c.len();
            c.rotate_left(k);
        }
        g
    }

    pub fn with_curve_reversed(&self, curve: usize) -> SignedRibbonGraph {
        let mut g = self.clone();
        let c = &mut g.curves[curve];
        c.reverse();
        c.iter_mut().for_each(|a| a.dir = a.dir.flip());
        g
    }

    pub fn with_edge_flipped(&self, edge: usize) -> SignedRibbonGraph {
        let mut g = self.clone();
        g.curves
            .iter_mut()
            .flatten()
            .filter(|a| a.edge == edge)
            .for_each(|a| a.dir = a.dir.flip());
        g
    }

    pub fn to_json(&self) -> Value {
        let curves = self
            .curves
            .iter()
            .map(|c| {
                c.iter()
                    .map(|a| {
                        let d = if a.dir.is_with() { "+dir" } else { "-dir" };
                        (self.labels[a.edge].clone(), d.to_string())
                    })
                    .collect()
            })
            .collect();
        let signs = self
            .labels
            .iter()
            .zip(&self.signs)
            .map(|(l, s)| (l.clone(), s.as_str().to_string()))
            .collect();
        serde_json::to_value(RibbonJson { curves, signs }).expect("ribbon graph serializes")
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let raw: RibbonJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut ap = ArrowPresentation::default();
        for c in raw.curves {
            let mut curve = Vec::new();
            for (label, d) in c {
                let direction = match d.as_str() {
                    "+dir" => Direction::With,
                    "-dir" => Direction::Against,
                    other => return Err(Error::Parse(format!("bad arrow direction {other:?}"))),
                };
                curve.push(LabelledArrow { label, direction });
            }
            ap.curves.push(curve);
        }
        let mut signs = BTreeMap::new();
        for (l, s) in raw.signs {
            signs.insert(l.clone(), Sign::parse(&s)?);
            ap.edge_set.insert(l);
        }
        Self::new(&ap, &signs)
    }
}

impl fmt::Display for SignedRibbonGraph {
    /// Prints the compact notation accepted by `parse_notation`, followed
    /// by the signs.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let curves: Vec<String> = self
            .curves
            .iter()
            .map(|c| {
                c.iter()
                    .map(|a| format!("{}{}", self.labels[a.edge], if a.dir.is_with() { '>' } else { '<' }))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        let signs: Vec<String> = self
            .labels
            .iter()
            .zip(&self.signs)
            .map(|(l, s)| format!("{l}={s}"))
            .collect();
        write!(f, "[{}] {{{}}}", curves.join("; "), signs.join(","))
    }
}

#[derive(Serialize, Deserialize)]
struct RibbonJson {
    curves: Vec<Vec<(String, String)>>,
    signs: BTreeMap<String, String>,
}

pub(crate) fn dir_from_bool(with: bool) -> Direction {
    Direction::from_bool(with)
}
