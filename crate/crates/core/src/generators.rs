//! Generators for the named graphs used throughout the crate.
//!
//! Barnette instances (3-connected cubic bipartite planar graphs) come with a
//! fixed rotation system derived from a convex realization.

use thiserror::Error;

use crate::graph::{Graph, VertexId};
use crate::planar::RotationSystem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("unknown graph name `{0}`")]
    UnknownName(String),
    #[error("bad parameter for `{name}`: {reason}")]
    BadParameter { name: String, reason: String },
}

fn bad(name: &str, reason: &str) -> GeneratorError {
    GeneratorError::BadParameter { name: name.to_string(), reason: reason.to_string() }
}

fn build(n: usize, edges: &[(VertexId, VertexId)], labels: Vec<String>) -> Graph {
    Graph::new(n, edges)
        .and_then(|g| g.with_labels(labels))
        .expect("generator produced an invalid graph")
}

/// K5 with every edge subdivided, plus a twin for every original vertex.
/// Vertices 0..10 are the twins `A1, A2, ..., E2`, vertices 10..20 the
/// connectors `ab, ac, ..., de`.
pub fn folkman() -> Graph {
    let letters = ['a', 'b', 'c', 'd', 'e'];
    let mut labels = Vec::with_capacity(20);
    for l in letters {
        for copy in 1..=2 {
            labels.push(format!("{}{copy}", l.to_ascii_uppercase()));
        }
    }
    let mut edges = Vec::with_capacity(40);
    for x in 0..5 {
        for y in x + 1..5 {
            let connector = labels.len();
            labels.push(format!("{}{}", letters[x], letters[y]));
            for twin in [2 * x, 2 * x + 1, 2 * y, 2 * y + 1] {
                edges.push((twin, connector));
            }
        }
    }
    build(20, &edges, labels)
}

/// Three copies of K3,3 (parts {a,b,c} and {d,e,f}) with every edge
/// subdivided; the three copies `xy_1, xy_2, xy_3` of each subdivision
/// vertex are joined to a new vertex `xy`.
pub fn gray() -> Graph {
    let mut labels: Vec<String> = Vec::with_capacity(54);
    let mut edges = Vec::with_capacity(81);
    let index = |labels: &mut Vec<String>, name: String| -> VertexId {
        labels.iter().position(|l| *l == name).unwrap_or_else(|| {
            labels.push(name);
            labels.len() - 1
        })
    };
    for copy in 1..=3 {
        for x in ['a', 'b', 'c'] {
            for y in ['d', 'e', 'f'] {
                let vx = index(&mut labels, format!("{x}_{copy}"));
                let vy = index(&mut labels, format!("{y}_{copy}"));
                let mid = index(&mut labels, format!("{x}{y}_{copy}"));
                edges.push((vx, mid));
                edges.push((vy, mid));
            }
        }
    }
    for x in ['a', 'b', 'c'] {
        for y in ['d', 'e', 'f'] {
            let hub = index(&mut labels, format!("{x}{y}"));
            for copy in 1..=3 {
                let mid = index(&mut labels, format!("{x}{y}_{copy}"));
                edges.push((mid, hub));
            }
        }
    }
    let n = labels.len();
    build(n, &edges, labels)
}

/// 14-cycle plus the chords (i, i+5) for even i.
pub fn heawood() -> Graph {
    let mut edges: Vec<_> = (0..14).map(|i| (i, (i + 1) % 14)).collect();
    edges.extend((0..14).step_by(2).map(|i| (i, (i + 5) % 14)));
    Graph::new(14, &edges).expect("heawood")
}

pub fn cycle(len: usize) -> Graph {
    let edges: Vec<_> = (0..len).map(|i| (i, (i + 1) % len)).collect();
    Graph::new(len, &edges).expect("cycle")
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    Graph::new(n, &edges).expect("complete")
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges: Vec<_> = (0..a).flat_map(|x| (a..a + b).map(move |y| (x, y))).collect();
    Graph::new(a + b, &edges).expect("complete bipartite")
}

/// Cycle-ladder: outer ring `0..k`, inner ring `k..2k`, spokes `i -- i+k`.
pub fn prism(k: usize) -> Graph {
    let mut edges = Vec::with_capacity(3 * k);
    for i in 0..k {
        edges.push((i, (i + 1) % k));
        edges.push((k + i, k + (i + 1) % k));
        edges.push((i, k + i));
    }
    Graph::new(2 * k, &edges).expect("prism")
}

/// The 3-cube; vertex `v` is the bit string of `v`.
pub fn cube() -> Graph {
    let mut edges = Vec::new();
    for v in 0..8usize {
        for bit in 0..3 {
            let w = v ^ (1 << bit);
            if v < w {
                edges.push((v, w));
            }
        }
    }
    let labels = (0..8).map(|v| format!("{v:03b}")).collect();
    build(8, &edges, labels)
}

fn graph_from_points(points: &[[f64; 3]], edge_length_sq: f64) -> Graph {
    let mut edges = Vec::new();
    for a in 0..points.len() {
        for b in a + 1..points.len() {
            let d: f64 = (0..3).map(|k| (points[a][k] - points[b][k]).powi(2)).sum();
            if (d - edge_length_sq).abs() < 1e-6 {
                edges.push((a, b));
            }
        }
    }
    Graph::new(points.len(), &edges).expect("polyhedron")
}

/// Every permutation of `(x, y, z)` with every sign pattern, deduplicated,
/// in a deterministic order.
fn signed_permutations(base: [f64; 3]) -> Vec<[f64; 3]> {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out: Vec<[f64; 3]> = Vec::new();
    for p in PERMS {
        for signs in 0..8 {
            let mut c = [0.0; 3];
            for k in 0..3 {
                let s = if signs >> k & 1 == 1 { -1.0 } else { 1.0 };
                c[k] = s * base[p[k]];
            }
            if !out.iter().any(|o| (0..3).all(|k| (o[k] - c[k]).abs() < 1e-9)) {
                out.push(c);
            }
        }
    }
    out
}

fn prism_points(k: usize) -> Vec<[f64; 3]> {
    let ring = |z: f64| {
        (0..k).map(move |i| {
            let t = std::f64::consts::TAU * i as f64 / k as f64;
            [t.cos(), t.sin(), z]
        })
    };
    ring(1.0).chain(ring(-1.0)).collect()
}

/// Barnette instances with their embedding: `cube`, `prism` (even `k >= 4`),
/// `hexagonal-prism`, `truncated-octahedron` (24 vertices) and
/// `truncated-cuboctahedron` (48 vertices).
pub fn barnette_instance(name: &str, k: Option<usize>) -> Result<RotationSystem, GeneratorError> {
    let (graph, points) = match name {
        "cube" => {
            let pts = (0..8)
                .map(|v: usize| [0, 1, 2].map(|b| if v >> b & 1 == 1 { 1.0 } else { -1.0 }))
                .collect::<Vec<_>>();
            (cube(), pts)
        }
        "prism" | "hexagonal-prism" => {
            let k = if name == "prism" {
                k.ok_or_else(|| bad(name, "missing ring length"))?
            } else {
                6
            };
            if k < 4 || k % 2 != 0 {
                return Err(bad(name, "a bipartite prism needs an even ring length >= 4"));
            }
            (prism(k), prism_points(k))
        }
        "truncated-octahedron" => {
            let pts = signed_permutations([0.0, 1.0, 2.0]);
            (graph_from_points(&pts, 2.0), pts)
        }
        "truncated-cuboctahedron" => {
            let r = std::f64::consts::SQRT_2;
            let pts = signed_permutations([1.0, 1.0 + r, 1.0 + 2.0 * r]);
            (graph_from_points(&pts, 4.0), pts)
        }
        other => return Err(GeneratorError::UnknownName(other.to_string())),
    };
    Ok(RotationSystem::from_convex_coordinates(graph, &points).expect("convex realization"))
}

pub const NAMES: &[&str] = &[
    "folkman",
    "gray",
    "heawood",
    "cube",
    "prism",
    "hexagonal-prism",
    "cycle",
    "complete",
    "complete_bipartite",
    "truncated-octahedron",
    "truncated-cuboctahedron",
];

/// Looks up a graph by name with its integer parameters.
pub fn named_graph(name: &str, params: &[usize]) -> Result<Graph, GeneratorError> {
    let want = |count: usize| -> Result<(), GeneratorError> {
        if params.len() == count {
            Ok(())
        } else {
            Err(bad(name, &format!("expected {count} parameter(s), got {}", params.len())))
        }
    };
    match name {
        "folkman" => want(0).map(|_| folkman()),
        "gray" => want(0).map(|_| gray()),
        "heawood" => want(0).map(|_| heawood()),
        "cube" => want(0).map(|_| cube()),
        "prism" => {
            want(1)?;
            if params[0] < 3 {
                return Err(bad(name, "ring length must be at least 3"));
            }
            Ok(prism(params[0]))
        }
        "cycle" => {
            want(1)?;
            if params[0] < 4 || !params[0].is_multiple_of(2) {
                return Err(bad(name, "cycle length must be even and at least 4"));
            }
            Ok(cycle(params[0]))
        }
        "complete" => {
            want(1)?;
            if params[0] == 0 {
                return Err(bad(name, "need at least one vertex"));
            }
            Ok(complete(params[0]))
        }
        "complete_bipartite" => {
            want(2)?;
            if params[0] == 0 || params[1] == 0 {
                return Err(bad(name, "both sides must be non-empty"));
            }
            Ok(complete_bipartite(params[0], params[1]))
        }
        "hexagonal-prism" | "truncated-octahedron" | "truncated-cuboctahedron" => {
            want(0)?;
            barnette_instance(name, None).map(|rs| rs.graph().clone())
        }
        other => Err(GeneratorError::UnknownName(other.to_string())),
    }
}
