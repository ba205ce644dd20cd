use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dispersable_core::barnette::{self, BarnetteLayout, Color};
use dispersable_core::book::verify;
use dispersable_core::generators::barnette_instance;
use dispersable_core::graph::Graph;
use dispersable_core::planar::RotationSystem;
use dispersable_core::solver::{decide_dbt, DbtOutcome, DecideOptions};

fn instances() -> Vec<(String, RotationSystem)> {
    let mut out = Vec::new();
    for name in ["cube", "hexagonal-prism", "truncated-octahedron", "truncated-cuboctahedron"] {
        out.push((name.to_string(), barnette_instance(name, None).unwrap()));
    }
    for k in (4..=16).step_by(2) {
        out.push((format!("prism({k})"), barnette_instance("prism", Some(k)).unwrap()));
    }
    out
}

/// Vertex sets of the faces in each color class.
fn class_partition(rs: &RotationSystem, l: &BarnetteLayout, relabel: &[usize]) -> BTreeSet<BTreeSet<BTreeSet<usize>>> {
    [Color::Red, Color::Green, Color::Blue]
        .into_iter()
        .map(|c| {
            l.faces
                .faces
                .iter()
                .filter(|f| l.face_coloring.color_of[f.id] == c)
                .map(|f| f.boundary.iter().map(|&d| relabel[rs.tail(d)]).collect())
                .collect()
        })
        .collect()
}

/// The same plane graph with vertices renamed by `perm` and edges listed in
/// a shuffled order.
fn relabeled(rs: &RotationSystem, rng: &mut ChaCha8Rng) -> (RotationSystem, Vec<usize>) {
    let g = rs.graph();
    let n = g.vertex_count();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    order.shuffle(rng);
    let edges: Vec<(usize, usize)> = order.iter().map(|&e| (perm[g.edge(e).0], perm[g.edge(e).1])).collect();
    let h = Graph::new(n, &edges).unwrap();
    let mut rotation = vec![Vec::new(); n];
    for v in 0..n {
        rotation[perm[v]] = rs.rotation(v).iter().map(|&e| h.edge_id(perm[g.edge(e).0], perm[g.edge(e).1]).unwrap()).collect();
    }
    let mut inverse = vec![0; n];
    for (v, &p) in perm.iter().enumerate() {
        inverse[p] = v;
    }
    (RotationSystem::new(h, rotation).unwrap(), inverse)
}

#[test]
fn colorings_are_proper() {
    for (name, rs) in instances() {
        let l = barnette::layout(&rs).unwrap();
        let g = rs.graph();
        for v in 0..g.vertex_count() {
            let colors: HashSet<Color> = g.incident(v).iter().map(|&(_, e)| l.edge_coloring.color_of[e]).collect();
            assert_eq!(colors.len(), 3, "{name}: vertex {v}");
            let faces: HashSet<Color> = g
                .incident(v)
                .iter()
                .map(|&(_, e)| l.face_coloring.color_of[l.faces.face_of[rs.dart_from(v, e)]])
                .collect();
            assert_eq!(faces.len(), 3, "{name}: faces at {v}");
        }
    }
}

#[test]
fn face_classes_do_not_depend_on_labels() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, rs) in instances() {
        let l = barnette::layout(&rs).unwrap();
        let identity: Vec<usize> = (0..rs.graph().vertex_count()).collect();
        let base = class_partition(&rs, &l, &identity);
        for _ in 0..3 {
            let (other, back) = relabeled(&rs, &mut rng);
            let lo = barnette::layout(&other).unwrap();
            assert_eq!(class_partition(&other, &lo, &back), base, "{name}");
            assert!(verify(other.graph(), &lo.embedding, true).unwrap().valid(), "{name}");
        }
    }
}

#[test]
fn tree_splits_red_edges() {
    for (name, rs) in instances() {
        let l = barnette::layout(&rs).unwrap();
        let n = rs.graph().vertex_count();
        let red: BTreeSet<usize> = l.edge_coloring.class(Color::Red).into_iter().collect();
        let t: BTreeSet<usize> = l.tree.tree_edges.iter().copied().collect();
        let nt: BTreeSet<usize> = l.tree.non_tree_edges.iter().copied().collect();
        assert!(t.is_disjoint(&nt), "{name}");
        assert_eq!(&t | &nt, red, "{name}");
        assert_eq!(t.len() + 1, l.tree.nodes.len(), "{name}");
        assert_eq!(l.face_coloring.color_of[l.tree.root], Color::Blue, "{name}");
        assert_eq!(l.tree.children[l.tree.root].len(), 1, "{name}: root is not a leaf");
        // |N_r| >= n/6 - 1/3
        assert!(6 * nt.len() + 2 >= n, "{name}: |N_r| = {}", nt.len());
    }
}

#[test]
fn cycle_properties() {
    for (name, rs) in instances() {
        let l = barnette::layout(&rs).unwrap();
        let n = rs.graph().vertex_count();
        let c = &l.cycle;
        let distinct: HashSet<usize> = c.cycle.iter().copied().collect();
        assert_eq!(distinct.len(), n, "{name}: cycle not simple and spanning");
        let on: HashSet<usize> = c.edges_on.iter().copied().collect();
        for e in l.edge_coloring.class(Color::Green) {
            assert!(on.contains(&e), "{name}: green edge {e} off the cycle");
        }
        for e in &l.tree.non_tree_edges {
            assert!(on.contains(e), "{name}: non-tree red edge {e} off the cycle");
        }
        assert!(3 * c.edges_on.len() + 1 >= 2 * n, "{name}: {} edges on the cycle", c.edges_on.len());
    }
}

#[test]
fn cube_cycle_is_hamiltonian() {
    let l = barnette::layout(&barnette_instance("cube", None).unwrap()).unwrap();
    assert_eq!(l.cycle.edges_on.len(), 8);
    assert_eq!(l.tree.non_tree_edges.len(), 1);
}

#[test]
fn agrees_with_sat_thickness() {
    for (name, rs) in instances().into_iter().filter(|(_, rs)| rs.graph().vertex_count() <= 24) {
        let g = rs.graph();
        let r = decide_dbt(g, 1, 3, &DecideOptions::default()).unwrap();
        assert!(matches!(r.outcome, DbtOutcome::Found { pages: 3, .. }), "{name}: {:?}", r.verdicts);
        assert_eq!(barnette::layout(&rs).unwrap().embedding.page_count(), 3);
    }
}

#[test]
fn two_page_variants_verify() {
    for (name, rs) in instances() {
        let l = barnette::layout(&rs).unwrap();
        for merge in [Color::Red, Color::Blue] {
            let emb = barnette::to_two_page(&rs, &l.cycle, &l.edge_coloring, merge).unwrap();
            assert_eq!(emb.page_count(), 2, "{name}");
            assert!(verify(rs.graph(), &emb, false).unwrap().valid(), "{name} merging {merge:?}");
        }
    }
}
