//! Shared fixtures for the integration suites: corpus loading, random
//! generators, and oracles written independently of the library
//! internals. Oracles read only the public JSON encodings.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use ribbonforge::proj::{rii_insert, RiiSite, SiteSide};
use ribbonforge::{GaussDiagram, LaurentPoly, ProjDiagram, SignedRibbonGraph, SurfaceClass};

pub fn corpus_dir() -> PathBuf {
    std::env::var_os("RIBBONFORGE_CORPUS")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus"))
}

/// Every corpus file as `(file name, JSON)`, sorted by name.
pub fn corpus() -> Vec<(String, Value)> {
    let mut out: Vec<(String, Value)> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory exists")
        .map(|e| e.expect("readable entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .map(|p| {
            let text = std::fs::read_to_string(&p).expect("readable corpus file");
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            (name, serde_json::from_str(&text).expect("corpus files are JSON"))
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

pub fn corpus_diagrams() -> Vec<(String, ProjDiagram)> {
    corpus()
        .into_iter()
        .filter(|(name, v)| !name.starts_with("malformed") && v.get("components").is_none())
        .map(|(name, v)| {
            let d = ProjDiagram::from_json(&v).expect("corpus diagrams parse");
            (name, d)
        })
        .collect()
}

pub fn corpus_gauss() -> Vec<(String, GaussDiagram)> {
    corpus()
        .into_iter()
        .filter(|(name, v)| !name.starts_with("malformed") && v.get("components").is_some())
        .map(|(name, v)| {
            let g = GaussDiagram::from_json(&v).expect("corpus Gauss diagrams parse");
            (name, g)
        })
        .collect()
}

pub fn graph(notation: &str) -> SignedRibbonGraph {
    SignedRibbonGraph::parse_notation(notation).expect("valid notation")
}

// ---------------------------------------------------------------------------
// Random generators

fn notation(curves: &[Vec<(usize, bool)>]) -> String {
    curves
        .iter()
        .map(|c| {
            c.iter()
                .map(|&(e, with)| format!("e{e}{}", if with { '>' } else { '<' }))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("; ")
}

/// A connected ribbon graph with `edges` edges and random signs, of any
/// genus.
pub fn random_graph(rng: &mut ChaCha8Rng, edges: usize) -> SignedRibbonGraph {
    random_graph_where(rng, edges, |_| true)
}

/// A connected plane or projective ribbon graph, grown one edge at a time.
pub fn random_low_genus_graph(rng: &mut ChaCha8Rng, edges: usize) -> SignedRibbonGraph {
    random_graph_where(rng, edges, |g| g.stats().surface_class != SurfaceClass::Other)
}

fn random_graph_where(rng: &mut ChaCha8Rng, edges: usize, keep: impl Fn(&SignedRibbonGraph) -> bool) -> SignedRibbonGraph {
    let mut curves: Vec<Vec<(usize, bool)>> = vec![Vec::new()];
    for e in 0..edges {
        let mut placed = false;
        for _ in 0..60 {
            let mut trial = curves.clone();
            let a = rng.gen_range(0..trial.len());
            let pos = rng.gen_range(0..=trial[a].len());
            trial[a].insert(pos, (e, rng.gen()));
            if rng.gen_bool(0.25) {
                trial.push(vec![(e, rng.gen())]);
            } else {
                let b = rng.gen_range(0..trial.len());
                let pos = rng.gen_range(0..=trial[b].len());
                trial[b].insert(pos, (e, rng.gen()));
            }
            let g = graph(&notation(&trial));
            if g.stats().k == 1 && keep(&g) {
                curves = trial;
                placed = true;
                break;
            }
        }
        if !placed {
            // A bridge to a new vertex keeps both connectivity and genus.
            let a = rng.gen_range(0..curves.len());
            let pos = rng.gen_range(0..=curves[a].len());
            curves[a].insert(pos, (e, true));
            curves.push(vec![(e, true)]);
        }
    }
    let g = graph(&notation(&curves));
    let signs: Vec<String> = (0..edges)
        .map(|e| format!("e{e}={}", if rng.gen() { '+' } else { '-' }))
        .collect();
    g.with_signs(&signs.join(",")).expect("labels exist")
}

/// Random valid projective diagram with at most `max_crossings` crossings.
pub fn random_diagram(rng: &mut ChaCha8Rng, max_crossings: usize) -> ProjDiagram {
    loop {
        let d = match rng.gen_range(0..3) {
            0 => {
                let n = rng.gen_range(1..=max_crossings.min(6));
                ProjDiagram::from_ribbon(&random_low_genus_graph(rng, n)).expect("low genus")
            }
            1 => {
                let n = rng.gen_range(1..=max_crossings.min(4));
                match random_pairing(rng, n) {
                    Some(d) => d,
                    None => continue,
                }
            }
            _ => {
                let n = rng.gen_range(1..=max_crossings.saturating_sub(2).clamp(1, 6));
                let base = ProjDiagram::from_ribbon(&random_low_genus_graph(rng, n)).expect("low genus");
                match random_rii(rng, &base) {
                    Some(d) => d,
                    None => continue,
                }
            }
        };
        if d.crossing_count() <= max_crossings && d.validate().is_ok() {
            return d;
        }
    }
}

/// Slots paired at random into arcs with random twists; `None` unless the
/// result is a valid projective diagram.
pub fn random_pairing(rng: &mut ChaCha8Rng, n: usize) -> Option<ProjDiagram> {
    let mut slots: Vec<(String, u8)> = (0..n).flat_map(|c| (0..4).map(move |s| (format!("c{c}"), s))).collect();
    slots.shuffle(rng);
    let arcs: Vec<Value> = slots
        .chunks(2)
        .map(|p| json!({"ends": [p[0], p[1]], "twist": u8::from(rng.gen_bool(0.3))}))
        .collect();
    let crossings: Vec<Value> = (0..n).map(|c| json!({"id": format!("c{c}")})).collect();
    let d = ProjDiagram::from_json(&json!({"crossings": crossings, "arcs": arcs})).ok()?;
    d.validate().ok()?;
    Some(d)
}

/// One RII insertion at a random site of `d`, if the chosen site is valid.
pub fn random_rii(rng: &mut ChaCha8Rng, d: &ProjDiagram) -> Option<ProjDiagram> {
    let faces = d.faces();
    let f = rng.gen_range(0..faces.len());
    let len = faces[f].sides.len();
    let site = RiiSite {
        first: SiteSide::Side { face: f, index: rng.gen_range(0..len) },
        second: SiteSide::Side { face: f, index: rng.gen_range(0..len) },
    };
    rii_insert(d, &site).ok()
}

/// Random Gauss diagram with `n` chords on one or two circles.
pub fn random_gauss(rng: &mut ChaCha8Rng, n: usize) -> GaussDiagram {
    let mut passages: Vec<String> = (0..2 * n).map(|p| format!("p{p}")).collect();
    passages.shuffle(rng);
    let circles = if n >= 2 && rng.gen_bool(0.3) { 2 } else { 1 };
    let cut = if circles == 2 { rng.gen_range(1..2 * n) } else { 2 * n };
    let components = vec![passages[..cut].to_vec(), passages[cut..].to_vec()];
    let components: Vec<Vec<String>> = components.into_iter().take(circles).collect();
    let mut ends = passages.clone();
    ends.shuffle(rng);
    let chords: Vec<Value> = ends
        .chunks(2)
        .enumerate()
        .map(|(i, p)| json!({"id": (i + 1).to_string(), "over": p[0], "under": p[1], "sign": if rng.gen() { "+" } else { "-" }}))
        .collect();
    GaussDiagram::from_json(&json!({"components": components, "chords": chords})).expect("generated Gauss diagrams are valid")
}

// ---------------------------------------------------------------------------
// Oracles

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
    fn classes(&mut self) -> usize {
        (0..self.0.len()).filter(|&x| self.find(x) == x).count()
    }
}

/// Curves of a ribbon graph as read from its JSON encoding:
/// `(label, traverses with the curve)`.
fn json_curves(g: &SignedRibbonGraph) -> Vec<Vec<(String, bool)>> {
    g.to_json()["curves"]
        .as_array()
        .expect("curves")
        .iter()
        .map(|c| {
            c.as_array()
                .expect("curve")
                .iter()
                .map(|a| (a[0].as_str().unwrap().to_string(), a[1] == "+dir"))
                .collect()
        })
        .collect()
}

/// Surface data computed by gluing polygons: each vertex disc is a polygon
/// whose sides alternate free arcs and attaching arrows, each edge disc a
/// quadrilateral `q0 q1 q2 q3` attached along `q0->q1` and `q2->q3`.
#[derive(Debug, PartialEq, Eq)]
pub struct GluedSurface {
    pub v: usize,
    pub e: usize,
    pub k: usize,
    pub b: usize,
    pub orientable: bool,
    pub euler_genus: usize,
}

pub fn glue_polygons(g: &SignedRibbonGraph) -> GluedSurface {
    let curves = json_curves(g);
    let labels: Vec<String> = {
        let mut l: Vec<String> = curves.iter().flatten().map(|(l, _)| l.clone()).collect();
        l.sort();
        l.dedup();
        l
    };
    let edge_of = |l: &str| labels.iter().position(|x| x == l).unwrap();
    let (v, e) = (curves.len(), labels.len());

    // Points: two per arrow on the vertex polygons, then four per edge quad.
    let arrow_base: Vec<usize> = curves
        .iter()
        .scan(0, |acc, c| {
            let b = *acc;
            *acc += 2 * c.len();
            Some(b)
        })
        .collect();
    let vertex_points: usize = curves.iter().map(|c| 2 * c.len()).sum();
    let quad = |e: usize, i: usize| vertex_points + 4 * e + i;
    let mut points = Dsu::new(vertex_points + 4 * e);
    let mut seen = vec![0usize; e];
    let mut incidences: Vec<(usize, usize, bool)> = Vec::new();
    for (ci, c) in curves.iter().enumerate() {
        for (i, (l, with)) in c.iter().enumerate() {
            let ed = edge_of(l);
            let side = seen[ed];
            seen[ed] += 1;
            // The arrow's tail and head in the vertex polygon.
            let (first, second) = (arrow_base[ci] + 2 * i, arrow_base[ci] + 2 * i + 1);
            let (tail, head) = if *with { (first, second) } else { (second, first) };
            points.union(tail, quad(ed, 2 * side));
            points.union(head, quad(ed, 2 * side + 1));
            incidences.push((ci, ed, *with));
        }
    }
    // Free arcs: vertex gaps and the two free sides of each quad.
    let mut free_arcs: Vec<(usize, usize)> = Vec::new();
    for (ci, c) in curves.iter().enumerate() {
        for i in 0..c.len() {
            let j = (i + 1) % c.len();
            free_arcs.push((arrow_base[ci] + 2 * i + 1, arrow_base[ci] + 2 * j));
        }
    }
    for ed in 0..e {
        free_arcs.push((quad(ed, 1), quad(ed, 2)));
        free_arcs.push((quad(ed, 3), quad(ed, 0)));
    }
    // Boundary components: cycles of free arcs through the glued points.
    let mut cycles = Dsu::new(free_arcs.len());
    let mut at_point: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &(a, b)) in free_arcs.iter().enumerate() {
        at_point.entry(points.find(a)).or_default().push(i);
        at_point.entry(points.find(b)).or_default().push(i);
    }
    for arcs in at_point.values() {
        for w in arcs.windows(2) {
            cycles.union(w[0], w[1]);
        }
    }
    let bare = curves.iter().filter(|c| c.is_empty()).count();
    let b = cycles.classes() + bare;

    let mut comps = Dsu::new(v + e);
    for &(ci, ed, _) in &incidences {
        comps.union(ci, v + ed);
    }
    let k = (0..v).map(|x| comps.find(x)).collect::<std::collections::BTreeSet<_>>().len();

    // Orientability: some choice of polygon orientations makes every glued
    // pair of sides run in opposite directions.
    let orientable = (0u64..1 << (v + e)).any(|flips| {
        incidences.iter().all(|&(ci, ed, with)| {
            let sv = flips >> ci & 1;
            let se = flips >> (v + ed) & 1;
            (sv != se) == with
        })
    });
    let chi = v as isize - e as isize;
    let euler_genus = (2 * k as isize - chi - b as isize) as usize;
    GluedSurface {
        v,
        e,
        k,
        b,
        orientable,
        euler_genus,
    }
}

/// The bracket by a direct state sum over the diagram's JSON: each state
/// joins slots in pairs, A: (1,2),(3,0); B: (0,1),(2,3), and the loops
/// are counted with a union-find on slots.
pub fn bracket_oracle(d: &ProjDiagram) -> LaurentPoly {
    let v = d.to_json();
    let ids: Vec<String> = v["crossings"]
        .as_array()
        .map(|a| a.iter().map(|c| c["id"].as_str().unwrap().to_string()).collect())
        .unwrap_or_default();
    let slot = |end: &Value| {
        let c = ids.iter().position(|x| x == end[0].as_str().unwrap()).unwrap();
        4 * c + end[1].as_u64().unwrap() as usize
    };
    let arcs: Vec<(usize, usize)> = v["arcs"]
        .as_array()
        .map(|a| a.iter().map(|arc| (slot(&arc["ends"][0]), slot(&arc["ends"][1]))).collect())
        .unwrap_or_default();
    let free = v["free_loops"].as_array().map_or(0, |a| a.len());
    state_sum(ids.len(), &arcs, free)
}

/// The same state sum for a Gauss diagram, with the crossing slots
/// rebuilt from passage roles and chord signs.
pub fn gauss_bracket_oracle(g: &GaussDiagram) -> LaurentPoly {
    let v = g.to_json();
    let chords = v["chords"].as_array().unwrap();
    let mut role: BTreeMap<String, (usize, u8, u8)> = BTreeMap::new();
    for (c, ch) in chords.iter().enumerate() {
        let plus = ch["sign"] == "+";
        role.insert(ch["over"].as_str().unwrap().into(), (c, 1, 3));
        let (i, o) = if plus { (2, 0) } else { (0, 2) };
        role.insert(ch["under"].as_str().unwrap().into(), (c, i, o));
    }
    let mut arcs = Vec::new();
    let mut free = 0;
    for comp in v["components"].as_array().unwrap() {
        let ps: Vec<&str> = comp.as_array().unwrap().iter().map(|p| p.as_str().unwrap()).collect();
        if ps.is_empty() {
            free += 1;
        }
        for i in 0..ps.len() {
            let (c1, _, out) = role[ps[i]];
            let (c2, inn, _) = role[ps[(i + 1) % ps.len()]];
            arcs.push((4 * c1 + out as usize, 4 * c2 + inn as usize));
        }
    }
    state_sum(chords.len(), &arcs, free)
}

fn state_sum(n: usize, arcs: &[(usize, usize)], free: usize) -> LaurentPoly {
    let d = LaurentPoly::d();
    let mut total = LaurentPoly::zero();
    for mask in 0u64..1 << n {
        let mut u = Dsu::new(4 * n);
        for &(a, b) in arcs {
            u.union(a, b);
        }
        let mut a_count = 0i32;
        for c in 0..n {
            if mask >> c & 1 == 0 {
                a_count += 1;
                u.union(4 * c + 1, 4 * c + 2);
                u.union(4 * c + 3, 4 * c);
            } else {
                u.union(4 * c, 4 * c + 1);
                u.union(4 * c + 2, 4 * c + 3);
            }
        }
        let loops = u.classes() + free;
        let term = &d.pow(loops as u32 - 1) * &LaurentPoly::monomial(1, 2 * a_count - n as i32);
        total = &total + &term;
    }
    total
}

/// Tutte polynomial coefficients `{(i, j): c}` of the underlying abstract
/// multigraph, by deletion and contraction.
pub fn tutte_oracle(g: &SignedRibbonGraph) -> BTreeMap<(u32, u32), i64> {
    let curves = json_curves(g);
    let mut ends: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (ci, c) in curves.iter().enumerate() {
        for (l, _) in c {
            ends.entry(l.clone()).or_default().push(ci);
        }
    }
    let edges: Vec<(usize, usize)> = ends.values().map(|v| (v[0], v[1])).collect();
    let mut out = BTreeMap::new();
    tutte_rec(curves.len(), &edges, 1, (0, 0), &mut out);
    out.retain(|_, c| *c != 0);
    out
}

fn connected(n: usize, edges: &[(usize, usize)], a: usize, b: usize) -> bool {
    let mut u = Dsu::new(n);
    for &(x, y) in edges {
        u.union(x, y);
    }
    u.find(a) == u.find(b)
}

fn tutte_rec(n: usize, edges: &[(usize, usize)], coeff: i64, mono: (u32, u32), out: &mut BTreeMap<(u32, u32), i64>) {
    let Some((&(a, b), rest)) = edges.split_first() else {
        *out.entry(mono).or_insert(0) += coeff;
        return;
    };
    if a == b {
        tutte_rec(n, rest, coeff, (mono.0, mono.1 + 1), out);
    } else if !connected(n, rest, a, b) {
        let merged: Vec<(usize, usize)> = rest.iter().map(|&(x, y)| (if x == b { a } else { x }, if y == b { a } else { y })).collect();
        tutte_rec(n, &merged, coeff, (mono.0 + 1, mono.1), out);
    } else {
        tutte_rec(n, rest, coeff, mono, out);
        let merged: Vec<(usize, usize)> = rest.iter().map(|&(x, y)| (if x == b { a } else { x }, if y == b { a } else { y })).collect();
        tutte_rec(n, &merged, coeff, mono, out);
    }
}

/// Expands `T(x, y + 1)` from Tutte coefficients.
pub fn tutte_shifted(t: &BTreeMap<(u32, u32), i64>) -> BTreeMap<(u32, u32), i64> {
    let mut out: BTreeMap<(u32, u32), i64> = BTreeMap::new();
    for (&(i, j), &c) in t {
        let mut binom = 1i64;
        for k in 0..=j {
            *out.entry((i, k)).or_insert(0) += c * binom;
            binom = binom * i64::from(j - k) / i64::from(k + 1);
        }
    }
    out.retain(|_, c| *c != 0);
    out
}
