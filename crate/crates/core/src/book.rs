//! Book embeddings: a spine order plus a page for every edge.

use thiserror::Error;

use crate::graph::{Bipartition, EdgeId, Graph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BookError {
    #[error("spine is not a permutation of 0..{0}")]
    BadSpine(usize),
    #[error("edge {edge} is on page {page}, but the book has {pages} pages")]
    PageOutOfRange { edge: EdgeId, page: usize, pages: usize },
    #[error("embedding does not match the graph: {0}")]
    EmbeddingGraphMismatch(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BookEmbedding {
    spine: Vec<VertexId>,
    page_of: Vec<usize>,
    page_count: usize,
}

impl BookEmbedding {
    /// `spine[i]` is the vertex at position `i`; `page_of[e]` the page of
    /// edge `e`.
    pub fn new(spine: Vec<VertexId>, page_of: Vec<usize>, page_count: usize) -> Result<Self, BookError> {
        let n = spine.len();
        let mut seen = vec![false; n];
        for &v in &spine {
            if v >= n || seen[v] {
                return Err(BookError::BadSpine(n));
            }
            seen[v] = true;
        }
        if let Some((edge, &page)) = page_of.iter().enumerate().find(|(_, &p)| p >= page_count) {
            return Err(BookError::PageOutOfRange { edge, page, pages: page_count });
        }
        Ok(BookEmbedding { spine, page_of, page_count })
    }

    pub fn spine(&self) -> &[VertexId] {
        &self.spine
    }

    pub fn page_of(&self, e: EdgeId) -> usize {
        self.page_of[e]
    }

    pub fn pages(&self) -> &[usize] {
        &self.page_of
    }

    pub fn page_count(&self) -> usize {
        self.page_count
    }

    /// Inverse of the spine: `positions()[v]` is the spine index of `v`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.spine.len()];
        for (i, &v) in self.spine.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    /// Number of pages that actually carry an edge.
    pub fn used_pages(&self) -> usize {
        let mut used = vec![false; self.page_count];
        for &p in &self.page_of {
            used[p] = true;
        }
        used.into_iter().filter(|&u| u).count()
    }

    fn check_against(&self, g: &Graph) -> Result<(), BookError> {
        if self.spine.len() != g.vertex_count() {
            return Err(BookError::EmbeddingGraphMismatch(format!(
                "spine has {} vertices, graph has {}",
                self.spine.len(),
                g.vertex_count()
            )));
        }
        if self.page_of.len() != g.edge_count() {
            return Err(BookError::EmbeddingGraphMismatch(format!(
                "{} edges assigned, graph has {}",
                self.page_of.len(),
                g.edge_count()
            )));
        }
        Ok(())
    }
}

/// Crossing test on spine positions. Edges sharing an endpoint never cross.
pub fn edges_cross_at(pos: &[usize], e: (VertexId, VertexId), f: (VertexId, VertexId)) -> bool {
    if e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1 {
        return false;
    }
    let (a, b) = ordered(pos[e.0], pos[e.1]);
    let (c, d) = ordered(pos[f.0], pos[f.1]);
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// Crossing test directly on a spine order.
pub fn edges_cross(spine: &[VertexId], e: (VertexId, VertexId), f: (VertexId, VertexId)) -> bool {
    let at = |v: VertexId| spine.iter().position(|&s| s == v).expect("vertex not on spine");
    let mut pos = vec![0; spine.len()];
    for v in [e.0, e.1, f.0, f.1] {
        pos[v] = at(v);
    }
    edges_cross_at(&pos, e, f)
}

fn ordered(x: usize, y: usize) -> (usize, usize) {
    if x < y {
        (x, y)
    } else {
        (y, x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    Crossing,
    NonMatching,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub edges: (EdgeId, EdgeId),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerificationReport {
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every pair of same-page edges: they may not cross, and when
/// `dispersable` is set they may not share an endpoint either.
pub fn verify(g: &Graph, emb: &BookEmbedding, dispersable: bool) -> Result<VerificationReport, BookError> {
    emb.check_against(g)?;
    let pos = emb.positions();
    let mut by_page = vec![Vec::new(); emb.page_count];
    for e in 0..g.edge_count() {
        by_page[emb.page_of[e]].push(e);
    }
    let mut violations = Vec::new();
    for edges in &by_page {
        for (i, &e) in edges.iter().enumerate() {
            for &f in &edges[i + 1..] {
                if edges_cross_at(&pos, g.edge(e), g.edge(f)) {
                    violations.push(Violation { kind: ViolationKind::Crossing, edges: (e, f) });
                } else if dispersable && g.edges_adjacent(e, f) {
                    violations.push(Violation { kind: ViolationKind::NonMatching, edges: (e, f) });
                }
            }
        }
    }
    Ok(VerificationReport { violations })
}

/// Whether the two sides of `bip` alternate cyclically along the spine.
///
/// Only meaningful for a verified dispersable embedding of a regular
/// bipartite graph with exactly `Δ` pages; anything else is a precondition
/// violation.
pub fn alternation_holds(g: &Graph, bip: &Bipartition, emb: &BookEmbedding) -> Result<bool, BookError> {
    let k = g.max_degree();
    if !g.is_regular(k) {
        return Err(BookError::PreconditionViolated("graph is not regular".into()));
    }
    if emb.page_count != k {
        return Err(BookError::PreconditionViolated(format!(
            "embedding has {} pages, maximum degree is {k}",
            emb.page_count
        )));
    }
    if !verify(g, emb, true)?.valid() {
        return Err(BookError::PreconditionViolated("embedding is not a valid dispersable embedding".into()));
    }
    Ok(spine_alternates(bip, &emb.spine))
}

pub(crate) fn spine_alternates(bip: &Bipartition, spine: &[VertexId]) -> bool {
    let n = spine.len();
    (0..n).all(|i| bip.side(spine[i]) != bip.side(spine[(i + 1) % n]))
}

/// A circular vertex order with an edge coloring; equivalent to a book
/// embedding read from any cut point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircularEmbedding {
    pub order: Vec<VertexId>,
    pub color_of: Vec<usize>,
    pub colors: usize,
}

impl CircularEmbedding {
    pub fn rotated(&self, by: usize) -> Self {
        let mut order = self.order.clone();
        if !order.is_empty() {
            let len = order.len();
            order.rotate_left(by % len);
        }
        CircularEmbedding { order, ..self.clone() }
    }

    pub fn reflected(&self) -> Self {
        let mut order = self.order.clone();
        order.reverse();
        CircularEmbedding { order, ..self.clone() }
    }
}

pub fn to_circular(emb: &BookEmbedding) -> CircularEmbedding {
    CircularEmbedding { order: emb.spine.clone(), color_of: emb.page_of.clone(), colors: emb.page_count }
}

/// Cuts the circle just before `order[0]`.
pub fn from_circular(c: &CircularEmbedding) -> BookEmbedding {
    BookEmbedding { spine: c.order.clone(), page_of: c.color_of.clone(), page_count: c.colors }
}
