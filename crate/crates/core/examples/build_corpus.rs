//! Regenerates the example corpus: `cargo run --example build_corpus -- <dir>`.
//!
//! Diagrams are built from ribbon graphs wherever possible so that their
//! construction is reproducible.

use std::path::{Path, PathBuf};

use ribbonforge::duality::{self, Side};
use ribbonforge::enumerate::{graphs_by_edges, Family};
use ribbonforge::proj::{rii_insert, RiiSite, SiteSide};
use ribbonforge::{GaussDiagram, ProjDiagram, Sign, SignedRibbonGraph, SurfaceClass};
use serde_json::{json, Value};

fn graph(notation: &str, signs: &str) -> SignedRibbonGraph {
    SignedRibbonGraph::parse_notation(notation)
        .and_then(|g| g.with_signs(signs))
        .expect("valid notation")
}

fn write(dir: &Path, name: &str, v: &Value) {
    let text = serde_json::to_string_pretty(v).expect("serializable") + "\n";
    std::fs::write(dir.join(name), text).expect("corpus directory is writable");
}

fn diagram(dir: &Path, name: &str, d: &ProjDiagram) {
    d.validate().expect("corpus diagrams are valid");
    write(dir, name, &d.to_json());
}

/// Edge labels `e0, e1, ...` renamed to `1, 2, ...`.
fn numbered(g: &SignedRibbonGraph) -> SignedRibbonGraph {
    g.relabelled(|l| (l[1..].parse::<usize>().expect("generated label") + 1).to_string())
}

fn is_low_genus(g: &SignedRibbonGraph) -> bool {
    g.stats().surface_class != SurfaceClass::Other
}

fn main() {
    let dir: PathBuf = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("corpus"));
    std::fs::create_dir_all(&dir).expect("create corpus directory");

    write(&dir, "unknot.json", &json!({"free_loops": [0]}));
    write(&dir, "unlink2.json", &json!({"free_loops": [0, 0]}));
    write(
        &dir,
        "curl_a.json",
        &json!({"crossings": [{"id": "c"}], "arcs": [{"ends": [["c", 0], ["c", 3]]}, {"ends": [["c", 1], ["c", 2]]}]}),
    );
    write(
        &dir,
        "curl_b.json",
        &json!({"crossings": [{"id": "c"}], "arcs": [{"ends": [["c", 0], ["c", 1]]}, {"ends": [["c", 2], ["c", 3]]}]}),
    );
    write(
        &dir,
        "projective_curl.json",
        &json!({"crossings": [{"id": "c"}], "arcs": [
            {"ends": [["c", 0], ["c", 1]], "twist": 1},
            {"ends": [["c", 2], ["c", 3]], "twist": 0}
        ]}),
    );
    write(
        &dir,
        "two_lines.json",
        &json!({"crossings": [{"id": "c"}], "arcs": [
            {"ends": [["c", 0], ["c", 2]], "twist": 1},
            {"ends": [["c", 1], ["c", 3]], "twist": 1}
        ]}),
    );

    let triangle = graph("a> b>; b> c>; c> a>", "a=+,b=+,c=+");
    let trefoil = ProjDiagram::from_ribbon(&triangle).unwrap();
    diagram(&dir, "trefoil.json", &trefoil);
    diagram(
        &dir,
        "trefoil_mirror.json",
        &ProjDiagram::from_ribbon(&triangle.clone().with_all_signs(Sign::Minus)).unwrap(),
    );
    let doubled = graph("a> b> d>; c> b> a>; d> c>", "a=-,b=-,c=-,d=-");
    assert_eq!(doubled.stats().surface_class, SurfaceClass::Plane);
    diagram(&dir, "figure_eight.json", &ProjDiagram::from_ribbon(&doubled).unwrap());

    // Möbius loop next to an orientable loop.
    let twisted_pair = graph("a> a< b> b>", "a=-,b=+");
    assert_eq!(twisted_pair.stats().surface_class, SurfaceClass::Projective);
    diagram(&dir, "projective_two_crossing.json", &ProjDiagram::from_ribbon(&twisted_pair).unwrap());

    // A non-colourable diagram: the projective curl grown by one RII move.
    let curl = ProjDiagram::from_json(&serde_json::from_str(&std::fs::read_to_string(dir.join("projective_curl.json")).unwrap()).unwrap()).unwrap();
    let faces = curl.faces();
    let grown = (0..faces[0].sides.len())
        .flat_map(|i| (0..faces[0].sides.len()).map(move |j| (i, j)))
        .filter(|(i, j)| i < j)
        .find_map(|(i, j)| {
            rii_insert(
                &curl,
                &RiiSite {
                    first: SiteSide::Side { face: 0, index: i },
                    second: SiteSide::Side { face: 0, index: j },
                },
            )
            .ok()
        })
        .expect("projective curl has an RII site");
    assert!(grown.checkerboard_colourings().unwrap().is_empty());
    diagram(&dir, "non_colourable.json", &grown);

    // A projective graph with signs 1+, 2-, 3+ whose partial dual in edge 3
    // is also projective; the diagram of that partial dual.
    let base = graphs_by_edges(3, Family::ConnectedLowGenus)[3]
        .iter()
        .map(|g| numbered(g).with_signs("1=+,2=-,3=+").unwrap())
        .find(|g| {
            g.vertex_count() > 1
                && g.stats().surface_class == SurfaceClass::Projective
                && duality::partial_dual(g, &["3"]).is_ok_and(|h| h.stats().surface_class == SurfaceClass::Projective)
        })
        .expect("a suitable projective graph exists");
    let recovered = duality::partial_dual(&base, &["3"]).unwrap();
    diagram(&dir, "partial_dual_base.json", &ProjDiagram::from_ribbon(&base).unwrap());
    diagram(&dir, "partial_dual_recovered.json", &ProjDiagram::from_ribbon(&recovered).unwrap());

    // Diagrams of a graph and of the dual of one of its join summands.
    let (joined, summand) = graphs_by_edges(4, Family::ConnectedLowGenus)[4]
        .iter()
        .map(numbered)
        .filter_map(|g| {
            let g = g.with_signs("1=+,2=-,3=-,4=+").unwrap();
            let joins = duality::find_joins(&g).ok()?;
            joins.iter().find_map(|j| {
                let h = duality::dual_join_summand(&g, j, Side::P).ok()?;
                (is_low_genus(&h) && !h.is_isomorphic(&g) && g.stats().surface_class == SurfaceClass::Projective)
                    .then(|| (g.clone(), h))
            })
        })
        .next()
        .expect("a projective graph with a join exists");
    diagram(&dir, "join_flip_a.json", &ProjDiagram::from_ribbon(&joined).unwrap());
    diagram(&dir, "join_flip_b.json", &ProjDiagram::from_ribbon(&summand).unwrap());

    write(
        &dir,
        "malformed.json",
        &json!({"crossings": [{"id": "c"}], "arcs": [{"ends": [["c", 0], ["c", 0]]}, {"ends": [["c", 1], ["c", 2]]}]}),
    );

    // Gauss diagrams.
    let gauss = |name: &str, v: Value| {
        let g = GaussDiagram::from_json(&v).expect("corpus Gauss diagrams are valid");
        write(&dir, name, &g.to_json());
    };
    gauss(
        "gauss_one_chord.json",
        json!({"components": [["p1", "p2"]], "chords": [{"id": "1", "over": "p1", "under": "p2", "sign": "+"}]}),
    );
    gauss(
        "gauss_three_chord_mixed.json",
        json!({"components": [["p1", "p2", "p3", "p4", "p5", "p6"]], "chords": [
            {"id": "1", "over": "p1", "under": "p4", "sign": "+"},
            {"id": "2", "over": "p5", "under": "p2", "sign": "+"},
            {"id": "3", "over": "p3", "under": "p6", "sign": "-"}
        ]}),
    );
    gauss(
        "gauss_virtual_trefoil.json",
        json!({"components": [["o1", "o2", "u1", "u2"]], "chords": [
            {"id": "1", "over": "o1", "under": "u1", "sign": "+"},
            {"id": "2", "over": "o2", "under": "u2", "sign": "+"}
        ]}),
    );
    gauss(
        "gauss_virtual_hopf.json",
        json!({"components": [["o"], ["u"]], "chords": [{"id": "1", "over": "o", "under": "u", "sign": "-"}]}),
    );
    write(&dir, "gauss_trefoil.json", &GaussDiagram::from_ribbon(&triangle).to_json());
    write(&dir, "gauss_figure_eight.json", &GaussDiagram::from_ribbon(&doubled).to_json());
    let torus = graph("a> b> a> b>", "a=+,b=-");
    write(&dir, "gauss_torus_graph.json", &GaussDiagram::from_ribbon(&torus).to_json());
    write(
        &dir,
        "malformed_gauss.json",
        &json!({"components": [["p1", "p2"]], "chords": [{"id": "1", "over": "p1", "under": "p9", "sign": "+"}]}),
    );
}
