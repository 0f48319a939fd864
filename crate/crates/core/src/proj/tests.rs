use serde_json::json;

use super::*;
use crate::duality::geometric_dual;
use crate::enumerate::{all_signings, graphs_by_edges, Family};

fn diagram(v: Value) -> ProjDiagram {
    ProjDiagram::from_json(&v).unwrap()
}

fn two_lines() -> ProjDiagram {
    diagram(json!({
        "crossings": [{"id": "c"}],
        "arcs": [{"ends": [["c", 0], ["c", 2]], "twist": 1}, {"ends": [["c", 1], ["c", 3]], "twist": 1}]
    }))
}

fn projective_curl() -> ProjDiagram {
    diagram(json!({
        "crossings": [{"id": "c"}],
        "arcs": [{"ends": [["c", 0], ["c", 1]], "twist": 1}, {"ends": [["c", 2], ["c", 3]], "twist": 0}]
    }))
}

fn trefoil() -> ProjDiagram {
    let triangle = SignedRibbonGraph::parse_notation("a> b>; b> c>; c> a>").unwrap();
    ProjDiagram::from_ribbon(&triangle).unwrap()
}

#[test]
fn unknot_classification() {
    let d = diagram(json!({"free_loops": [0]}));
    let c = d.classify();
    assert!(c.valid);
    assert_eq!(c.components.len(), 1);
    assert_eq!(c.components[0].homology, 0);
    assert!(c.net.is_none());
}

#[test]
fn two_null_loops() {
    let c = diagram(json!({"free_loops": [0, 0]})).classify();
    assert_eq!(c.components.iter().map(|x| x.homology).collect::<Vec<_>>(), vec![0, 0]);
}

#[test]
fn odd_loop_must_be_alone() {
    assert!(diagram(json!({"free_loops": [1]})).validate().is_ok());
    assert!(matches!(
        diagram(json!({"free_loops": [1, 0]})).validate(),
        Err(Error::MalformedDiagram(_))
    ));
}

#[test]
fn empty_diagram_is_malformed() {
    assert!(matches!(ProjDiagram::from_json(&json!({})), Err(Error::MalformedDiagram(_))));
}

#[test]
fn reused_slot_is_malformed() {
    let r = ProjDiagram::from_json(&json!({
        "crossings": [{"id": "c"}],
        "arcs": [{"ends": [["c", 0], ["c", 1]]}, {"ends": [["c", 1], ["c", 3]]}]
    }));
    assert!(matches!(r, Err(Error::MalformedDiagram(_))));
}

#[test]
fn doubly_twisted_curl_is_not_projective() {
    let d = diagram(json!({
        "crossings": [{"id": "c"}],
        "arcs": [{"ends": [["c", 0], ["c", 1]], "twist": 1}, {"ends": [["c", 2], ["c", 3]], "twist": 1}]
    }));
    assert!(!d.classify().valid);
    assert!(matches!(d.validate(), Err(Error::NotProjective { genus: 2, .. })));
}

#[test]
fn two_lines_meet_once() {
    let d = two_lines();
    let c = d.classify();
    assert!(c.valid);
    assert_eq!(c.net.unwrap().surface_class, SurfaceClass::Projective);
    assert_eq!(c.components.iter().map(|x| x.homology).collect::<Vec<_>>(), vec![1, 1]);
    assert_eq!(d.checkerboard_colourings().unwrap().len(), 2);
    for t in d.tait_graphs().unwrap() {
        assert_eq!(t.stats().surface_class, SurfaceClass::Projective);
    }
}

#[test]
fn projective_curl_is_not_colourable() {
    let d = projective_curl();
    let c = d.classify();
    assert!(c.valid);
    assert_eq!(c.components.len(), 1);
    assert_eq!(c.components[0].homology, 1);
    assert!(d.checkerboard_colourings().unwrap().is_empty());
    assert!(matches!(d.tait_graphs(), Err(Error::NotColourable)));
}

#[test]
fn free_loops_block_colouring() {
    let d = diagram(json!({"free_loops": [0]}));
    assert!(matches!(d.checkerboard_colourings(), Err(Error::FreeLoopsUnsupported)));
}

#[test]
fn trefoil_tait_graphs() {
    let d = trefoil();
    assert_eq!(d.crossing_count(), 3);
    assert!(d.is_null_homologous());
    let [t, u] = d.tait_graphs().unwrap();
    let mut shapes = [t.stats(), u.stats()].map(|s| (s.v, s.e, s.surface_class));
    shapes.sort_by_key(|s| s.0);
    assert_eq!(shapes, [(2, 3, SurfaceClass::Plane), (3, 3, SurfaceClass::Plane)]);
    assert!(t.is_isomorphic(&geometric_dual(&u)));
}

#[test]
fn trefoil_all_a_is_a_banana() {
    let g = trefoil().all_a_graph().unwrap();
    let s = g.stats();
    assert_eq!((s.v, s.e, s.surface_class), (2, 3, SurfaceClass::Plane));
    assert!(g.signs().iter().all(|&x| x == Sign::Minus));
}

#[test]
fn state_assignment_parsing() {
    let d = trefoil();
    let s = d.parse_state("a=A, b=B, c=A").unwrap();
    assert_eq!(s, vec![Splice::A, Splice::B, Splice::A]);
    assert!(d.parse_state("a=A,b=B").is_err());
    assert!(d.parse_state("a=A,b=B,c=C").is_err());
    assert!(d.parse_state("a=A,b=B,z=A").is_err());
}

#[test]
fn json_round_trip() {
    let d = trefoil();
    assert_eq!(ProjDiagram::from_json(&d.to_json()).unwrap(), d);
}

#[test]
fn moebius_loop_diagram() {
    let g = SignedRibbonGraph::parse_notation("e> e<").unwrap();
    let d = ProjDiagram::from_ribbon(&g).unwrap();
    assert!(d.arcs().iter().all(|a| a.twist));
    assert!(d.gset(DEFAULT_MAX_CROSSINGS).unwrap().contains(&g.canonical_code()));
    assert_eq!(d.checkerboard_colourings().unwrap().len(), 2);
}

#[test]
fn orientable_loop_diagram_is_a_classical_curl() {
    let g = SignedRibbonGraph::parse_notation("e> e>").unwrap();
    let d = ProjDiagram::from_ribbon(&g).unwrap();
    assert!(d.arcs().iter().all(|a| !a.twist));
    assert_eq!(d.net_stats().unwrap().surface_class, SurfaceClass::Plane);
}

#[test]
fn isolated_vertex_diagram() {
    let d = ProjDiagram::from_ribbon(&SignedRibbonGraph::vertex()).unwrap();
    assert_eq!(d.crossing_count(), 0);
    assert_eq!(d.free_loops(), &[false]);
}

#[test]
fn out_of_class_graph_has_no_diagram() {
    let torus = SignedRibbonGraph::parse_notation("a> b> a> b>").unwrap();
    assert!(matches!(ProjDiagram::from_ribbon(&torus), Err(Error::OutOfClass(_))));
}

#[test]
fn gset_cap() {
    assert!(matches!(trefoil().gset(2), Err(Error::CapExceeded { .. })));
}

#[test]
fn round_trip_through_diagrams() {
    for g in graphs_by_edges(3, Family::ConnectedLowGenus).iter().flatten() {
        for g in all_signings(g) {
            let d = ProjDiagram::from_ribbon(&g).unwrap();
            d.validate().unwrap();
            let code = g.canonical_code();
            assert!(d.gset(DEFAULT_MAX_CROSSINGS).unwrap().contains(&code), "{g}");
            if d.crossing_count() > 0 {
                let [t, u] = d.tait_graphs().unwrap();
                assert!(t.canonical_code() == code || u.canonical_code() == code, "{g}");
            }
            let dual = ProjDiagram::from_ribbon(&geometric_dual(&g)).unwrap();
            assert!(d.same_gset(&dual, DEFAULT_MAX_CROSSINGS).unwrap(), "{g}");
        }
    }
}

#[test]
fn colourable_exactly_when_total_class_vanishes() {
    for d in [trefoil(), two_lines(), projective_curl()] {
        let colourable = !d.checkerboard_colourings().unwrap().is_empty();
        let total = d.link_components().iter().fold(0, |acc, c| acc ^ c.homology);
        assert_eq!(colourable, total == 0);
        if colourable {
            let plane = d.tait_graphs().unwrap()[0].stats().surface_class == SurfaceClass::Plane;
            assert_eq!(plane, d.is_null_homologous());
        }
    }
}

#[test]
fn rii_joins_two_loops() {
    let d = diagram(json!({"free_loops": [0, 0]}));
    let site = RiiSite {
        first: SiteSide::FreeLoop(0),
        second: SiteSide::FreeLoop(1),
    };
    let e = rii_insert(&d, &site).unwrap();
    assert_eq!(e.crossing_count(), 2);
    assert_eq!(e.all_a_graph().unwrap().vertex_count(), 1);
    assert_eq!(e.net_stats().unwrap().surface_class, SurfaceClass::Plane);
}

#[test]
fn rii_rejects_bad_sites() {
    let d = diagram(json!({"free_loops": [0]}));
    let same = RiiSite {
        first: SiteSide::FreeLoop(0),
        second: SiteSide::FreeLoop(0),
    };
    assert!(matches!(rii_insert(&d, &same), Err(Error::InvalidSite(_))));
    let missing = RiiSite {
        first: SiteSide::FreeLoop(0),
        second: SiteSide::Side { face: 0, index: 0 },
    };
    assert!(matches!(rii_insert(&d, &missing), Err(Error::InvalidSite(_))));
}

#[test]
fn reduction_reaches_one_vertex() {
    for d in [trefoil(), two_lines(), diagram(json!({"free_loops": [0, 0, 0]}))] {
        let steps = reduce_one_vertex_steps(&d).unwrap();
        let counts: Vec<usize> = steps.iter().map(|s| s.all_a_graph().unwrap().vertex_count()).collect();
        assert_eq!(*counts.last().unwrap(), 1);
        for w in counts.windows(2) {
            assert_eq!(w[0], w[1] + 1);
        }
        let genus = d.net_stats().map_or(0, |n| n.euler_genus);
        for s in &steps {
            s.validate().unwrap();
            assert_eq!(s.net_stats().map_or(genus, |n| n.euler_genus), genus);
        }
    }
}
