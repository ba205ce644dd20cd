//! Combinatorial planar embeddings given as rotation systems.
//!
//! A dart is a directed copy of an edge: dart `2e` runs from the smaller
//! endpoint of edge `e` to the larger one, dart `2e + 1` the other way. The
//! face successor of dart `u -> v` is `v -> w`, where the edge to `w` follows
//! the edge to `u` in the rotation at `v`. With clockwise rotations every
//! face is traced with the face on the left of each dart.

use thiserror::Error;

use crate::graph::{EdgeId, Graph, VertexId};

pub type Dart = usize;
pub type FaceId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("rotation has {0} entries but the graph has {1} vertices")]
    VertexCount(usize, usize),
    #[error("rotation at vertex {0} is not a permutation of its incident edges")]
    BadRotation(VertexId),
    #[error("face traversal requires a connected graph")]
    Disconnected,
    #[error("not a planar embedding: V - E + F = {0}, expected 2")]
    NotPlanarEmbedding(i64),
}

pub fn dart(e: EdgeId, reversed: bool) -> Dart {
    2 * e + reversed as usize
}

pub fn dart_edge(d: Dart) -> EdgeId {
    d / 2
}

pub fn dart_reverse(d: Dart) -> Dart {
    d ^ 1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    graph: Graph,
    rotation: Vec<Vec<EdgeId>>,
    /// position of edge `e` in the rotation at each endpoint: `[at u, at v]`
    slot: Vec<[usize; 2]>,
}

impl RotationSystem {
    pub fn new(graph: Graph, rotation: Vec<Vec<EdgeId>>) -> Result<Self, EmbeddingError> {
        let n = graph.vertex_count();
        if rotation.len() != n {
            return Err(EmbeddingError::VertexCount(rotation.len(), n));
        }
        let mut slot = vec![[usize::MAX; 2]; graph.edge_count()];
        for (v, rot) in rotation.iter().enumerate() {
            let mut expected: Vec<EdgeId> = graph.incident(v).iter().map(|&(_, e)| e).collect();
            let mut given = rot.clone();
            expected.sort_unstable();
            given.sort_unstable();
            if expected != given {
                return Err(EmbeddingError::BadRotation(v));
            }
            for (i, &e) in rot.iter().enumerate() {
                let side = usize::from(graph.edge(e).0 != v);
                slot[e][side] = i;
            }
        }
        Ok(RotationSystem { graph, rotation, slot })
    }

    /// Rotation of a convex polyhedron: each vertex's neighbors sorted
    /// clockwise as seen from outside, using the vertex position relative to
    /// the centroid as outward normal.
    pub fn from_convex_coordinates(
        graph: Graph,
        coords: &[[f64; 3]],
    ) -> Result<Self, EmbeddingError> {
        let n = graph.vertex_count();
        if coords.len() != n {
            return Err(EmbeddingError::VertexCount(coords.len(), n));
        }
        let mut centroid = [0.0; 3];
        for c in coords {
            for k in 0..3 {
                centroid[k] += c[k] / n as f64;
            }
        }
        let rotation = (0..n)
            .map(|v| {
                let normal = sub(coords[v], centroid);
                let first = graph.incident(v).first().map(|&(w, _)| w);
                let Some(first) = first else { return Vec::new() };
                let t1 = project(sub(coords[first], coords[v]), normal);
                let t2 = cross(normal, t1);
                let mut around: Vec<(f64, EdgeId)> = graph
                    .incident(v)
                    .iter()
                    .map(|&(w, e)| {
                        let d = sub(coords[w], coords[v]);
                        (-dot(d, t2).atan2(dot(d, t1)), e)
                    })
                    .collect();
                around.sort_by(|a, b| a.0.total_cmp(&b.0));
                around.into_iter().map(|(_, e)| e).collect()
            })
            .collect();
        RotationSystem::new(graph, rotation)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self, v: VertexId) -> &[EdgeId] {
        &self.rotation[v]
    }

    /// Position of edge `e` in the rotation at its endpoint `v`.
    pub fn position(&self, v: VertexId, e: EdgeId) -> usize {
        let side = usize::from(self.graph.edge(e).0 != v);
        self.slot[e][side]
    }

    pub fn tail(&self, d: Dart) -> VertexId {
        let (a, b) = self.graph.edge(dart_edge(d));
        if d.is_multiple_of(2) {
            a
        } else {
            b
        }
    }

    pub fn head(&self, d: Dart) -> VertexId {
        self.tail(dart_reverse(d))
    }

    /// The dart leaving `v` along edge `e`.
    pub fn dart_from(&self, v: VertexId, e: EdgeId) -> Dart {
        dart(e, self.graph.edge(e).0 != v)
    }

    /// Next dart on the same face.
    pub fn face_successor(&self, d: Dart) -> Dart {
        let v = self.head(d);
        let e = dart_edge(d);
        let rot = &self.rotation[v];
        let next = rot[(self.position(v, e) + 1) % rot.len()];
        self.dart_from(v, next)
    }

    /// Traces all faces. Darts are visited in increasing id order, so face
    /// ids and the starting dart of each boundary are deterministic.
    pub fn faces(&self) -> Result<FaceSet, EmbeddingError> {
        if !self.graph.is_connected() {
            return Err(EmbeddingError::Disconnected);
        }
        let darts = 2 * self.graph.edge_count();
        let mut face_of = vec![usize::MAX; darts];
        let mut faces = Vec::new();
        for start in 0..darts {
            if face_of[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut boundary = Vec::new();
            let mut d = start;
            loop {
                face_of[d] = id;
                boundary.push(d);
                d = self.face_successor(d);
                if d == start {
                    break;
                }
            }
            faces.push(Face { id, boundary });
        }
        let n = self.graph.vertex_count() as i64;
        let m = self.graph.edge_count() as i64;
        // An isolated vertex has no darts but bounds the one outer face.
        let f = if m == 0 { 1 } else { faces.len() as i64 };
        let euler = n - m + f;
        if euler != 2 {
            return Err(EmbeddingError::NotPlanarEmbedding(euler));
        }
        Ok(FaceSet { faces, face_of })
    }

    pub fn dual(&self) -> Result<DualGraph, EmbeddingError> {
        let fs = self.faces()?;
        let dual_edges = (0..self.graph.edge_count())
            .map(|e| (fs.face_of[dart(e, false)], fs.face_of[dart(e, true)], e))
            .collect();
        Ok(DualGraph { face_count: fs.faces.len(), dual_edges })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: FaceId,
    pub boundary: Vec<Dart>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceSet {
    pub faces: Vec<Face>,
    /// face to the left of each dart
    pub face_of: Vec<FaceId>,
}

impl FaceSet {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }
}

/// Dual edge `(f, g, e)`: primal edge `e` separates face `f` (left of dart
/// `2e`) from face `g` (left of dart `2e + 1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    pub face_count: usize,
    pub dual_edges: Vec<(FaceId, FaceId, EdgeId)>,
}

impl DualGraph {
    pub fn degree(&self, f: FaceId) -> usize {
        self.dual_edges
            .iter()
            .map(|&(a, b, _)| usize::from(a == f) + usize::from(b == f))
            .sum()
    }
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn project(v: [f64; 3], normal: [f64; 3]) -> [f64; 3] {
    let k = dot(v, normal) / dot(normal, normal);
    [v[0] - k * normal[0], v[1] - k * normal[1], v[2] - k * normal[2]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn c4_rotation() -> RotationSystem {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let rotation = (0..4).map(|v| g.incident(v).iter().map(|&(_, e)| e).collect()).collect();
        RotationSystem::new(g, rotation).unwrap()
    }

    fn k4_rotation() -> RotationSystem {
        // Vertex 3 in the middle of triangle 0-1-2.
        let coords = [[0.0, 0.0, 1.0], [1.0, 0.0, -0.3], [-0.5, 0.86, -0.3], [-0.5, -0.86, -0.3]];
        let edges: Vec<_> = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).collect();
        RotationSystem::from_convex_coordinates(Graph::new(4, &edges).unwrap(), &coords).unwrap()
    }

    #[test]
    fn c4_has_two_square_faces() {
        let fs = c4_rotation().faces().unwrap();
        assert_eq!(fs.len(), 2);
        assert!(fs.faces.iter().all(|f| f.len() == 4));
        let dual = c4_rotation().dual().unwrap();
        assert_eq!(dual.face_count, 2);
        assert_eq!(dual.dual_edges.len(), 4);
        assert!(dual.dual_edges.iter().all(|&(a, b, _)| a != b));
    }

    #[test]
    fn k4_has_four_triangles() {
        let fs = k4_rotation().faces().unwrap();
        assert_eq!(fs.len(), 4);
        assert!(fs.faces.iter().all(|f| f.len() == 3));
    }

    #[test]
    fn cube_faces_and_octahedral_dual() {
        let rs = generators::barnette_instance("cube", None).unwrap();
        let fs = rs.faces().unwrap();
        assert_eq!(fs.len(), 6);
        assert!(fs.faces.iter().all(|f| f.len() == 4));
        let dual = rs.dual().unwrap();
        assert_eq!(dual.dual_edges.len(), 12);
        assert!((0..6).all(|f| dual.degree(f) == 4));
        // no parallel dual edges
        let mut pairs: Vec<_> =
            dual.dual_edges.iter().map(|&(a, b, _)| (a.min(b), a.max(b))).collect();
        pairs.sort_unstable();
        pairs.dedup();
        assert_eq!(pairs.len(), 12);
    }

    #[test]
    fn boundaries_are_closed_walks() {
        let rs = generators::barnette_instance("truncated-octahedron", None).unwrap();
        let fs = rs.faces().unwrap();
        let total: usize = fs.faces.iter().map(Face::len).sum();
        assert_eq!(total, 2 * rs.graph().edge_count());
        for f in &fs.faces {
            for i in 0..f.len() {
                let next = f.boundary[(i + 1) % f.len()];
                assert_eq!(rs.head(f.boundary[i]), rs.tail(next));
            }
        }
    }

    #[test]
    fn bad_rotations_rejected() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            RotationSystem::new(g.clone(), vec![vec![0], vec![0], vec![1]]),
            Err(EmbeddingError::BadRotation(1))
        );
        assert_eq!(
            RotationSystem::new(g, vec![vec![0]]),
            Err(EmbeddingError::VertexCount(1, 3))
        );
    }

    #[test]
    fn non_planar_rotation_fails_euler() {
        // K4 with one rotation reversed is a toroidal embedding.
        let rs = k4_rotation();
        let mut rot: Vec<Vec<EdgeId>> = (0..4).map(|v| rs.rotation(v).to_vec()).collect();
        rot[0].reverse();
        let bad = RotationSystem::new(rs.graph().clone(), rot).unwrap();
        assert!(matches!(bad.faces(), Err(EmbeddingError::NotPlanarEmbedding(_))));
    }

    #[test]
    fn disconnected_rejected() {
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        let rs = RotationSystem::new(g, vec![vec![0], vec![0], vec![1], vec![1]]).unwrap();
        assert_eq!(rs.faces(), Err(EmbeddingError::Disconnected));
    }
}
