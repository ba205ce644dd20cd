//! Three-page dispersable layouts of 3-connected cubic bipartite plane graphs.
//!
//! Pipeline: color the faces with three colors by propagation, color each
//! edge with the color missing from its two faces, take a spanning tree of
//! the green/blue faces (tree edges are red primal edges), then grow a cycle
//! from the root face by splicing in one child face at a time. Red edges end
//! up inside or on the cycle, blue edges outside or on it, green edges on it.
//! Reading the cycle as a spine gives red, blue and green pages.
//!
//! Geometry is tracked combinatorially. Around a vertex of degree `d` there
//! are `2d` slots: edge `rotation[k]` sits in slot `2k`, the face corner
//! between `rotation[k]` and `rotation[k + 1]` in slot `2k + 1`. Every vertex
//! on the cycle records the slot the cycle enters through and the slot it
//! leaves through (a corner when the cycle crosses a face without an edge).
//! The cycle is oriented with its interior on the left, so an edge is inside
//! at `x` iff its slot lies strictly between the entry and exit slots of `x`
//! going clockwise.

use std::collections::VecDeque;
use std::fmt::Write as _;

use thiserror::Error;

use crate::book::{verify, BookEmbedding};
use crate::graph::{bipartition, EdgeId, VertexId};
use crate::planar::{dart, dart_edge, Dart, EmbeddingError, FaceId, FaceSet, RotationSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BarnetteError {
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error("graph is not 3-regular")]
    NotCubic,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("graph is not 3-connected")]
    NotThreeConnected,
    #[error("face coloring conflict at vertex {0}")]
    ColoringConflict(VertexId),
    #[error("face coloring propagation stalled")]
    PropagationStalled,
    #[error("green and blue faces do not induce a connected dual subgraph")]
    BgNotConnected,
    #[error("invariant {invariant} violated at step {step}: {detail}")]
    InvariantViolated { step: usize, invariant: &'static str, detail: String },
    #[error("internal error: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Red,
    Green,
    Blue,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::Red, Color::Green, Color::Blue];

    fn index(self) -> usize {
        self as usize
    }

    /// Page of an edge of this color in the three-page layout.
    pub fn page(self) -> usize {
        match self {
            Color::Red => 0,
            Color::Blue => 1,
            Color::Green => 2,
        }
    }

    fn swap_green_blue(self) -> Color {
        match self {
            Color::Green => Color::Blue,
            Color::Blue => Color::Green,
            Color::Red => Color::Red,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Color::Red => "red",
            Color::Green => "green",
            Color::Blue => "blue",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceColoring {
    pub color_of: Vec<Color>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    pub color_of: Vec<Color>,
}

impl EdgeColoring {
    pub fn class(&self, c: Color) -> Vec<EdgeId> {
        (0..self.color_of.len()).filter(|&e| self.color_of[e] == c).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BgSpanningTree {
    /// Green and blue faces.
    pub nodes: Vec<FaceId>,
    /// Red edges whose dual edge is in the tree.
    pub tree_edges: Vec<EdgeId>,
    /// The remaining red edges.
    pub non_tree_edges: Vec<EdgeId>,
    pub root: FaceId,
    /// Parent face and connecting red edge; `None` for the root and for
    /// red faces.
    pub parent: Vec<Option<(FaceId, EdgeId)>>,
    /// Children in processing order.
    pub children: Vec<Vec<(FaceId, EdgeId)>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubhamiltonianCycle {
    /// Cyclic vertex order, interior on the left.
    pub cycle: Vec<VertexId>,
    /// Edges joining consecutive cycle vertices.
    pub edges_on: Vec<EdgeId>,
    /// Edges drawn inside the cycle.
    pub chords_inside: Vec<EdgeId>,
}

/// Everything the pipeline computes, for inspection and tests.
#[derive(Debug, Clone)]
pub struct BarnetteLayout {
    pub faces: FaceSet,
    pub face_coloring: FaceColoring,
    pub edge_coloring: EdgeColoring,
    pub tree: BgSpanningTree,
    pub cycle: SubhamiltonianCycle,
    pub embedding: BookEmbedding,
    /// Number of splice steps whose invariants were checked.
    pub steps_checked: usize,
    pub trace: Vec<String>,
}

/// Checks 3-regularity, bipartiteness, 3-connectivity and the Euler
/// characteristic.
pub fn check_barnette(rs: &RotationSystem) -> Result<FaceSet, BarnetteError> {
    let g = rs.graph();
    if g.vertex_count() == 0 || !g.is_regular(3) {
        return Err(BarnetteError::NotCubic);
    }
    if bipartition(g).is_err() {
        return Err(BarnetteError::NotBipartite);
    }
    let faces = rs.faces()?;
    if !g.is_three_connected() {
        return Err(BarnetteError::NotThreeConnected);
    }
    Ok(faces)
}

/// Face to the left of the dart entering `v` along `rotation(v)[k]`, i.e.
/// the face owning corner slot `2k + 1`.
fn corner_face(rs: &RotationSystem, fs: &FaceSet, v: VertexId, k: usize) -> FaceId {
    let e = rs.rotation(v)[k];
    let into_v = rs.dart_from(v, e) ^ 1;
    fs.face_of[into_v]
}

/// Three-colors the faces by forced propagation from the faces at vertex 0,
/// then relabels so that Red is the largest class and ties go to the class
/// holding the smaller face id.
pub fn color_faces(rs: &RotationSystem, fs: &FaceSet) -> Result<FaceColoring, BarnetteError> {
    let g = rs.graph();
    let n = g.vertex_count();
    if !g.is_regular(3) {
        return Err(BarnetteError::NotCubic);
    }
    let around: Vec<[FaceId; 3]> = (0..n)
        .map(|v| [0, 1, 2].map(|k| corner_face(rs, fs, v, k)))
        .collect();
    let mut vertices_of_face = vec![Vec::new(); fs.len()];
    for (v, fa) in around.iter().enumerate() {
        for &f in fa {
            vertices_of_face[f].push(v);
        }
    }
    let mut color: Vec<Option<Color>> = vec![None; fs.len()];
    let mut queue = VecDeque::new();
    for (k, &f) in around[0].iter().enumerate() {
        if color[f].is_some() {
            return Err(BarnetteError::ColoringConflict(0));
        }
        color[f] = Some(Color::ALL[k]);
        queue.push_back(f);
    }
    while let Some(f) = queue.pop_front() {
        for &v in &vertices_of_face[f] {
            let fa = around[v];
            let known: Vec<Color> = fa.iter().filter_map(|&h| color[h]).collect();
            let mut present = [false; 3];
            for c in &known {
                if present[c.index()] {
                    return Err(BarnetteError::ColoringConflict(v));
                }
                present[c.index()] = true;
            }
            if known.len() == 2 {
                let missing = Color::ALL[present.iter().position(|&p| !p).expect("one color missing")];
                let h = *fa.iter().find(|&&h| color[h].is_none()).expect("one face uncolored");
                color[h] = Some(missing);
                queue.push_back(h);
            }
        }
    }
    let color: Vec<Color> = color.into_iter().collect::<Option<_>>().ok_or(BarnetteError::PropagationStalled)?;
    for (v, fa) in around.iter().enumerate() {
        if color[fa[0]] == color[fa[1]] || color[fa[1]] == color[fa[2]] || color[fa[0]] == color[fa[2]] {
            return Err(BarnetteError::ColoringConflict(v));
        }
    }

    let mut classes: Vec<(usize, FaceId, Color)> = Color::ALL
        .iter()
        .map(|&c| {
            let members = (0..fs.len()).filter(|&f| color[f] == c);
            let size = members.clone().count();
            (size, members.min().unwrap_or(usize::MAX), c)
        })
        .collect();
    classes.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut relabel = [Color::Red; 3];
    for (rank, &(_, _, c)) in classes.iter().enumerate() {
        relabel[c.index()] = Color::ALL[rank];
    }
    Ok(FaceColoring { color_of: color.into_iter().map(|c| relabel[c.index()]).collect() })
}

/// Each edge gets the color absent from its two faces.
pub fn color_edges(rs: &RotationSystem, fs: &FaceSet, fc: &FaceColoring) -> Result<EdgeColoring, BarnetteError> {
    let g = rs.graph();
    let color_of = (0..g.edge_count())
        .map(|e| {
            let (a, b) = (fc.color_of[fs.face_of[dart(e, false)]], fc.color_of[fs.face_of[dart(e, true)]]);
            if a == b {
                return Err(BarnetteError::ColoringConflict(g.edge(e).0));
            }
            Ok(*Color::ALL.iter().find(|&&c| c != a && c != b).expect("third color"))
        })
        .collect::<Result<_, _>>()?;
    Ok(EdgeColoring { color_of })
}

/// BFS spanning tree of the green/blue dual subgraph from the least blue
/// face, rooted at the least blue leaf. When no leaf is blue, green and blue
/// are swapped in both colorings first.
pub fn build_bg_tree(
    rs: &RotationSystem,
    fs: &FaceSet,
    fc: &mut FaceColoring,
    ec: &mut EdgeColoring,
) -> Result<BgSpanningTree, BarnetteError> {
    let g = rs.graph();
    let nf = fs.len();
    let nodes: Vec<FaceId> = (0..nf).filter(|&f| fc.color_of[f] != Color::Red).collect();
    let mut adj = vec![Vec::new(); nf];
    for e in ec.class(Color::Red) {
        let (a, b) = (fs.face_of[dart(e, false)], fs.face_of[dart(e, true)]);
        adj[a].push((b, e));
        adj[b].push((a, e));
    }
    let start = *nodes
        .iter()
        .find(|&&f| fc.color_of[f] == Color::Blue)
        .ok_or(BarnetteError::BgNotConnected)?;
    let mut seen = vec![false; nf];
    let mut tree_adj = vec![Vec::new(); nf];
    let mut in_tree = vec![false; g.edge_count()];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(f) = queue.pop_front() {
        for &(h, e) in &adj[f] {
            if !seen[h] {
                seen[h] = true;
                in_tree[e] = true;
                tree_adj[f].push((h, e));
                tree_adj[h].push((f, e));
                queue.push_back(h);
            }
        }
    }
    if nodes.iter().any(|&f| !seen[f]) {
        return Err(BarnetteError::BgNotConnected);
    }
    let leaves: Vec<FaceId> = nodes.iter().copied().filter(|&f| tree_adj[f].len() == 1).collect();
    if !leaves.iter().any(|&f| fc.color_of[f] == Color::Blue) {
        for c in fc.color_of.iter_mut().chain(ec.color_of.iter_mut()) {
            *c = c.swap_green_blue();
        }
    }
    let root = *leaves
        .iter()
        .find(|&&f| fc.color_of[f] == Color::Blue)
        .ok_or_else(|| BarnetteError::Internal("spanning tree has no leaf".into()))?;

    let mut parent = vec![None; nf];
    let mut children = vec![Vec::new(); nf];
    let mut stack = vec![root];
    let mut visited = vec![false; nf];
    visited[root] = true;
    while let Some(f) = stack.pop() {
        // Order children by where their edge appears along f, starting after
        // the edge to f's own parent.
        let boundary = &fs.faces[f].boundary;
        let offset = parent[f]
            .and_then(|(_, pe)| boundary.iter().position(|&d| dart_edge(d) == pe))
            .unwrap_or(0);
        let along = |e: EdgeId| {
            let i = boundary.iter().position(|&d| dart_edge(d) == e).expect("tree edge on face");
            (i + boundary.len() - offset) % boundary.len()
        };
        let mut kids: Vec<(FaceId, EdgeId)> =
            tree_adj[f].iter().copied().filter(|&(h, _)| !visited[h]).collect();
        kids.sort_by_key(|&(_, e)| along(e));
        for &(h, e) in &kids {
            visited[h] = true;
            parent[h] = Some((f, e));
            stack.push(h);
        }
        children[f] = kids;
    }
    let red = ec.class(Color::Red);
    Ok(BgSpanningTree {
        nodes,
        tree_edges: red.iter().copied().filter(|&e| in_tree[e]).collect(),
        non_tree_edges: red.into_iter().filter(|&e| !in_tree[e]).collect(),
        root,
        parent,
        children,
    })
}

const NONE: usize = usize::MAX;

/// The growing cycle with per-vertex entry/exit slots.
struct CycleState<'a> {
    rs: &'a RotationSystem,
    next: Vec<VertexId>,
    prev: Vec<VertexId>,
    in_slot: Vec<usize>,
    out_slot: Vec<usize>,
}

impl<'a> CycleState<'a> {
    fn on(&self, v: VertexId) -> bool {
        self.next[v] != NONE
    }

    fn edge_slot(&self, v: VertexId, e: EdgeId) -> usize {
        2 * self.rs.position(v, e)
    }

    /// Corner slot of face `f` at `v`, given the dart of `f` entering `v`.
    fn corner_slot(&self, into: Dart) -> usize {
        2 * self.rs.position(self.rs.head(into), dart_edge(into)) + 1
    }

    fn link(&mut self, from: VertexId, to: VertexId, out_slot: usize, in_slot: usize) {
        self.next[from] = to;
        self.prev[to] = from;
        self.out_slot[from] = out_slot;
        self.in_slot[to] = in_slot;
    }

    fn link_edge(&mut self, d: Dart) {
        let (x, y, e) = (self.rs.tail(d), self.rs.head(d), dart_edge(d));
        let (o, i) = (self.edge_slot(x, e), self.edge_slot(y, e));
        self.link(x, y, o, i);
    }

    fn edge_on(&self, e: EdgeId) -> bool {
        let (a, b) = self.rs.graph().edge(e);
        (self.on(a) && self.next[a] == b && self.out_slot[a] == self.edge_slot(a, e))
            || (self.on(b) && self.next[b] == a && self.out_slot[b] == self.edge_slot(b, e))
    }

    /// Whether edge `e` leaves cycle vertex `x` into the interior.
    fn inside_at(&self, x: VertexId, e: EdgeId) -> bool {
        let span = 2 * self.rs.rotation(x).len();
        let s = self.edge_slot(x, e);
        let a = self.in_slot[x];
        let b = self.out_slot[x];
        let rel = (s + span - a) % span;
        let end = (b + span - a) % span;
        rel > 0 && rel < end
    }

    fn order(&self, start: VertexId) -> Vec<VertexId> {
        let mut out = vec![start];
        let mut v = self.next[start];
        while v != start {
            out.push(v);
            v = self.next[v];
        }
        out
    }
}

/// Runs the whole pipeline and verifies the result.
pub fn layout(rs: &RotationSystem) -> Result<BarnetteLayout, BarnetteError> {
    let fs = check_barnette(rs)?;
    let mut fc = color_faces(rs, &fs)?;
    let mut ec = color_edges(rs, &fs, &fc)?;
    let tree = build_bg_tree(rs, &fs, &mut fc, &mut ec)?;
    let mut trace = Vec::new();
    let (cycle, steps_checked) = construct_cycle(rs, &fs, &fc, &ec, &tree, &mut trace)?;
    let embedding = to_dispersable(rs, &cycle, &ec)?;
    Ok(BarnetteLayout { faces: fs, face_coloring: fc, edge_coloring: ec, tree, cycle, embedding, steps_checked, trace })
}

/// Grows the cycle over the tree in preorder, checking the invariants after
/// every step. Returns the cycle and the number of checked steps; appends
/// one trace line per tree node.
pub fn construct_cycle(
    rs: &RotationSystem,
    fs: &FaceSet,
    fc: &FaceColoring,
    ec: &EdgeColoring,
    tree: &BgSpanningTree,
    trace: &mut Vec<String>,
) -> Result<(SubhamiltonianCycle, usize), BarnetteError> {
    let g = rs.graph();
    let n = g.vertex_count();
    let mut in_tree = vec![false; g.edge_count()];
    for &e in &tree.tree_edges {
        in_tree[e] = true;
    }
    let mut st = CycleState {
        rs,
        next: vec![NONE; n],
        prev: vec![NONE; n],
        in_slot: vec![NONE; n],
        out_slot: vec![NONE; n],
    };
    let mut processed = vec![false; fs.len()];

    let root = &fs.faces[tree.root].boundary;
    for &d in root {
        st.link_edge(d);
    }
    processed[tree.root] = true;
    trace.push(format!("face {} {} root: cycle of {} vertices", tree.root, fc.color_of[tree.root].name(), root.len()));
    let mut step = 0;
    check_invariants(&st, fs, fc, ec, tree, &processed, &in_tree, step)?;

    let mut stack: Vec<FaceId> = tree.children[tree.root].iter().rev().map(|&(h, _)| h).collect();
    while let Some(q) = stack.pop() {
        step += 1;
        let (_, e) = tree.parent[q].expect("non-root has a parent");
        let summary = splice(&mut st, fs, fc, &in_tree, q, e, step)?;
        processed[q] = true;
        trace.push(format!("face {q} {} via edge {e}: {summary}", fc.color_of[q].name()));
        check_invariants(&st, fs, fc, ec, tree, &processed, &in_tree, step)?;
        stack.extend(tree.children[q].iter().rev().map(|&(h, _)| h));
    }

    let violated = |invariant, detail: String| BarnetteError::InvariantViolated { step, invariant, detail };
    if let Some(v) = (0..n).find(|&v| !st.on(v)) {
        return Err(violated("spanning", format!("vertex {v} is not on the cycle")));
    }
    for e in 0..g.edge_count() {
        let (a, b) = g.edge(e);
        let on = st.edge_on(e);
        let ok = match ec.color_of[e] {
            Color::Red => on || (st.inside_at(a, e) && st.inside_at(b, e)),
            Color::Blue => on || (!st.inside_at(a, e) && !st.inside_at(b, e)),
            Color::Green => on,
        };
        if !ok {
            return Err(violated("final", format!("{} edge {e} is on the wrong side", ec.color_of[e].name())));
        }
    }
    let cycle = st.order(0);
    let edges_on: Vec<EdgeId> = (0..g.edge_count()).filter(|&e| st.edge_on(e)).collect();
    let chords_inside: Vec<EdgeId> = (0..g.edge_count())
        .filter(|&e| !st.edge_on(e) && st.inside_at(g.edge(e).0, e))
        .collect();
    Ok((SubhamiltonianCycle { cycle, edges_on, chords_inside }, step))
}

/// Replaces the cycle edge shared with child face `q` by a path around `q`.
fn splice(
    st: &mut CycleState,
    fs: &FaceSet,
    fc: &FaceColoring,
    in_tree: &[bool],
    q: FaceId,
    e: EdgeId,
    step: usize,
) -> Result<String, BarnetteError> {
    let rs = st.rs;
    let violated = |invariant, detail: String| BarnetteError::InvariantViolated { step, invariant, detail };
    let boundary = &fs.faces[q].boundary;
    // q lies left of the dart t -> s, so the cycle runs s -> t with q on its
    // right.
    let at = boundary
        .iter()
        .position(|&d| dart_edge(d) == e)
        .ok_or_else(|| violated("I.1", format!("edge {e} is not on face {q}")))?;
    let (t, s) = (rs.tail(boundary[at]), rs.head(boundary[at]));
    if !(st.on(s) && st.next[s] == t && st.out_slot[s] == st.edge_slot(s, e)) {
        return Err(violated("I.1", format!("edge {e} is not on the cycle as {s} -> {t}")));
    }
    let len = boundary.len();
    let path: Vec<Dart> = (1..len).map(|i| boundary[(at + i) % len]).collect();

    match fc.color_of[q] {
        Color::Blue => {
            for &d in &path[..path.len() - 1] {
                let v = rs.head(d);
                if st.on(v) {
                    return Err(violated("simple", format!("vertex {v} of face {q} is already on the cycle")));
                }
            }
            for &d in &path {
                st.link_edge(d);
            }
            Ok(format!("replaced {s}-{t} by {} boundary edges", path.len()))
        }
        Color::Green => {
            // Keep s, t and the endpoints of q's other tree edges.
            let mut keep = vec![s];
            let mut keep_at = vec![0usize];
            for (i, &d) in path.iter().enumerate() {
                if in_tree[dart_edge(d)] {
                    keep.push(rs.tail(d));
                    keep_at.push(i);
                    keep.push(rs.head(d));
                    keep_at.push(i + 1);
                }
            }
            if keep.len() == 1 {
                return Ok("leaf, cycle unchanged".into());
            }
            keep.push(t);
            keep_at.push(path.len());
            for &v in &keep[1..keep.len() - 1] {
                if st.on(v) {
                    return Err(violated("simple", format!("vertex {v} of face {q} is already on the cycle")));
                }
            }
            let mut virtual_segments = 0;
            for k in 0..keep.len() - 1 {
                let (i, j) = (keep_at[k], keep_at[k + 1]);
                if j == i + 1 {
                    st.link_edge(path[i]);
                } else {
                    // Through q: leave keep[k] at q's corner, enter keep[k+1]
                    // at q's corner.
                    let into_from = if i == 0 { boundary[at] } else { path[i - 1] };
                    let into_to = path[j - 1];
                    let (o, inn) = (st.corner_slot(into_from), st.corner_slot(into_to));
                    st.link(keep[k], keep[k + 1], o, inn);
                    virtual_segments += 1;
                }
            }
            Ok(format!(
                "replaced {s}-{t} by {} vertices, {virtual_segments} segments across the face",
                keep.len() - 2
            ))
        }
        Color::Red => Err(violated("tree", format!("red face {q} in the tree"))),
    }
}

#[allow(clippy::too_many_arguments)]
fn check_invariants(
    st: &CycleState,
    fs: &FaceSet,
    fc: &FaceColoring,
    ec: &EdgeColoring,
    tree: &BgSpanningTree,
    processed: &[bool],
    in_tree: &[bool],
    step: usize,
) -> Result<(), BarnetteError> {
    let rs = st.rs;
    let g = rs.graph();
    let violated = |invariant, detail: String| BarnetteError::InvariantViolated { step, invariant, detail };

    // The cycle is a single closed walk through its vertices.
    let start = (0..g.vertex_count()).find(|&v| st.on(v)).expect("cycle is non-empty");
    let on_count = (0..g.vertex_count()).filter(|&v| st.on(v)).count();
    let mut len = 1;
    let mut v = st.next[start];
    while v != start {
        if st.prev[st.next[v]] != v || len > on_count {
            return Err(violated("simple", "cycle links are inconsistent".into()));
        }
        len += 1;
        v = st.next[v];
    }
    if len != on_count {
        return Err(violated("simple", format!("cycle has {len} of {on_count} marked vertices")));
    }

    for f in 0..fs.len() {
        for &d in &fs.faces[f].boundary {
            let e = dart_edge(d);
            let other = fs.face_of[d ^ 1];
            let (a, b) = g.edge(e);
            if processed[f] && !processed[other] && in_tree[e] {
                // The pending child must see the edge with itself on the
                // right, i.e. the cycle runs along d.
                let (x, y) = (rs.tail(d), rs.head(d));
                if !(st.on(x) && st.next[x] == y && st.out_slot[x] == st.edge_slot(x, e)) {
                    return Err(violated("I.1", format!("tree edge {e} to pending face {other} is not on the cycle")));
                }
            }
            if !processed[f] {
                continue;
            }
            match ec.color_of[e] {
                Color::Red if in_tree[e] => {
                    let ok = st.on(a)
                        && st.on(b)
                        && (st.edge_on(e) || (st.inside_at(a, e) && st.inside_at(b, e)));
                    if !ok {
                        return Err(violated("I.2", format!("tree edge {e} is not inside or on the cycle")));
                    }
                }
                Color::Red => {
                    if !processed[other] {
                        let on = [a, b].map(|x| st.on(x));
                        let ok = match fc.color_of[f] {
                            Color::Blue => on[0] && on[1],
                            Color::Green => !on[0] && !on[1],
                            Color::Red => true,
                        };
                        if !ok {
                            return Err(violated(
                                "I.5",
                                format!("non-tree edge {e} of {} face {f} has endpoints {on:?} on the cycle", fc.color_of[f].name()),
                            ));
                        }
                    }
                }
                Color::Blue => {
                    let inside = [a, b].iter().any(|&x| st.on(x) && st.inside_at(x, e));
                    if !st.edge_on(e) && inside {
                        return Err(violated("I.3", format!("blue edge {e} is inside the cycle")));
                    }
                }
                Color::Green => {
                    if !st.edge_on(e) {
                        return Err(violated("I.4", format!("green edge {e} is not on the cycle")));
                    }
                }
            }
        }
    }
    let _ = tree;
    Ok(())
}

/// Spine: the cycle cut at its least vertex. Red, blue and green edges go to
/// pages 0, 1 and 2.
pub fn to_dispersable(
    rs: &RotationSystem,
    cycle: &SubhamiltonianCycle,
    ec: &EdgeColoring,
) -> Result<BookEmbedding, BarnetteError> {
    let pages = ec.color_of.iter().map(|c| c.page()).collect();
    checked_embedding(rs, cycle, pages, 3, true)
}

/// Two-page ordinary layout: green edges join red or blue.
pub fn to_two_page(
    rs: &RotationSystem,
    cycle: &SubhamiltonianCycle,
    ec: &EdgeColoring,
    merge_into: Color,
) -> Result<BookEmbedding, BarnetteError> {
    if merge_into == Color::Green {
        return Err(BarnetteError::Internal("green edges must merge into red or blue".into()));
    }
    let pages = ec
        .color_of
        .iter()
        .map(|&c| if c == Color::Green { merge_into.page() } else { c.page() })
        .collect();
    checked_embedding(rs, cycle, pages, 2, false)
}

fn checked_embedding(
    rs: &RotationSystem,
    cycle: &SubhamiltonianCycle,
    pages: Vec<usize>,
    page_count: usize,
    dispersable: bool,
) -> Result<BookEmbedding, BarnetteError> {
    let g = rs.graph();
    let mut spine = cycle.cycle.clone();
    let least = (0..spine.len()).min_by_key(|&i| spine[i]).unwrap_or(0);
    spine.rotate_left(least);
    let emb = BookEmbedding::new(spine, pages, page_count).map_err(|e| BarnetteError::Internal(e.to_string()))?;
    let report = verify(g, &emb, dispersable).map_err(|e| BarnetteError::Internal(e.to_string()))?;
    if !report.valid() {
        let mut msg = String::new();
        let _ = write!(msg, "layout failed verification: {:?}", report.violations[0]);
        return Err(BarnetteError::Internal(msg));
    }
    Ok(emb)
}
