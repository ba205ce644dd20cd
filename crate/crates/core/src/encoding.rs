//! CNF encoding of (dispersable) book embeddings with a fixed number of pages.
//!
//! Three variable families:
//!
//! * `sigma(u, v)` for `u < v`: true iff `u` is left of `v` on the spine;
//! * `phi(e, i)`: edge `e` is on page `i`;
//! * `chi(e, f)` for `e < f`: `e` and `f` share a page (one direction only:
//!   a shared page forces `chi`, not the converse).
//!
//! Clause families, in emission order:
//!
//! 1. transitivity: per vertex triple, the two directed 3-cycles are forbidden;
//! 2. coverage: every edge is on at least one page;
//! 3. linking: `phi(e, i) & phi(f, i) -> chi(e, f)` for every edge pair and page;
//! 4. crossing: for every pair of independent edges, each of the 8 interleaved
//!    orders of their endpoints is forbidden together with `chi`;
//! 5. dispersability (optional): `!chi(e, f)` for every adjacent pair;
//! 6. symmetry breaking (optional, see [`SymmetryBreaking`]).
//!
//! Coverage is at-least-one. Every constraint applies to each true `phi`, so
//! any page an edge is assigned to is a valid choice and decoding takes the
//! least one.

use std::fmt::Write as _;

use thiserror::Error;

use crate::book::{verify, BookEmbedding};
use crate::graph::{EdgeId, Graph, VertexId};

pub type Lit = i32;
pub type Var = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymmetryBreaking {
    /// Unit clauses `sigma(0, v)`: vertex 0 is leftmost.
    pub pin_first_vertex: bool,
    /// Unit clause `phi(0, 0)`: edge 0 is on page 0.
    pub pin_first_edge: bool,
    /// Unit clause `sigma(1, 2)`: rules out the mirror image of each order.
    pub break_reflection: bool,
    /// Dispersable only: the edges at the least vertex of maximum degree go
    /// to pages `0, 1, ...` in edge-id order. Replaces `pin_first_edge` when
    /// it applies.
    pub pin_star: bool,
}

impl Default for SymmetryBreaking {
    fn default() -> Self {
        SymmetryBreaking { pin_first_vertex: true, pin_first_edge: true, break_reflection: false, pin_star: false }
    }
}

impl SymmetryBreaking {
    pub const NONE: SymmetryBreaking =
        SymmetryBreaking { pin_first_vertex: false, pin_first_edge: false, break_reflection: false, pin_star: false };

    pub const ALL: SymmetryBreaking =
        SymmetryBreaking { pin_first_vertex: true, pin_first_edge: true, break_reflection: true, pin_star: true };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Sigma(VertexId, VertexId),
    Phi(EdgeId, usize),
    Chi(EdgeId, EdgeId),
}

/// Dense variable numbering: sigma ids first, then phi, then chi.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarMap {
    n: usize,
    m: usize,
    pages: usize,
    phi_base: u32,
    chi_base: u32,
    total: u32,
}

fn pairs(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// Index of the pair `(a, b)`, `a < b < k`, in lexicographic order.
fn pair_index(a: usize, b: usize, k: usize) -> usize {
    debug_assert!(a < b && b < k);
    a * (2 * k - a - 1) / 2 + (b - a - 1)
}

impl VarMap {
    pub fn new(n: usize, m: usize, pages: usize) -> Self {
        let phi_base = 1 + pairs(n) as u32;
        let chi_base = phi_base + (pages * m) as u32;
        let total = chi_base - 1 + pairs(m) as u32;
        VarMap { n, m, pages, phi_base, chi_base, total }
    }

    pub fn total_vars(&self) -> u32 {
        self.total
    }

    pub fn sigma_count(&self) -> usize {
        pairs(self.n)
    }

    pub fn phi_count(&self) -> usize {
        self.pages * self.m
    }

    pub fn chi_count(&self) -> usize {
        pairs(self.m)
    }

    pub fn pages(&self) -> usize {
        self.pages
    }

    pub fn sigma(&self, u: VertexId, v: VertexId) -> Var {
        1 + pair_index(u, v, self.n) as u32
    }

    /// Literal asserting "`u` is left of `v`", for any two distinct vertices.
    pub fn left_of(&self, u: VertexId, v: VertexId) -> Lit {
        if u < v {
            self.sigma(u, v) as Lit
        } else {
            -(self.sigma(v, u) as Lit)
        }
    }

    pub fn phi(&self, e: EdgeId, page: usize) -> Var {
        self.phi_base + (e * self.pages + page) as u32
    }

    pub fn chi(&self, e: EdgeId, f: EdgeId) -> Var {
        let (a, b) = if e < f { (e, f) } else { (f, e) };
        self.chi_base + pair_index(a, b, self.m) as u32
    }

    /// Inverse lookup, for the sidecar map and debugging.
    pub fn describe(&self, var: Var) -> Option<Family> {
        if var == 0 || var > self.total {
            return None;
        }
        if var < self.phi_base {
            let (a, b) = unpair((var - 1) as usize, self.n);
            Some(Family::Sigma(a, b))
        } else if var < self.chi_base {
            let k = (var - self.phi_base) as usize;
            Some(Family::Phi(k / self.pages, k % self.pages))
        } else {
            let (a, b) = unpair((var - self.chi_base) as usize, self.m);
            Some(Family::Chi(a, b))
        }
    }

    /// Sidecar map: one `<var> <family> <args>` line per variable.
    pub fn to_sidecar(&self) -> String {
        let mut out = String::new();
        for var in 1..=self.total {
            let _ = match self.describe(var).expect("in range") {
                Family::Sigma(u, v) => writeln!(out, "{var} sigma {u} {v}"),
                Family::Phi(e, p) => writeln!(out, "{var} phi {e} {p}"),
                Family::Chi(e, f) => writeln!(out, "{var} chi {e} {f}"),
            };
        }
        out
    }
}

fn unpair(mut idx: usize, k: usize) -> (usize, usize) {
    let mut a = 0;
    while idx >= k - a - 1 {
        idx -= k - a - 1;
        a += 1;
    }
    (a, a + 1 + idx)
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CnfFormula {
    pub var_count: u32,
    pub clauses: Vec<Vec<Lit>>,
}

impl CnfFormula {
    pub fn new(var_count: u32) -> Self {
        CnfFormula { var_count, clauses: Vec::new() }
    }

    pub fn add_clause(&mut self, clause: Vec<Lit>) {
        debug_assert!(!clause.is_empty());
        debug_assert!(clause.iter().all(|&l| l != 0 && l.unsigned_abs() <= self.var_count));
        self.clauses.push(clause);
    }

    /// Index of the first clause the model falsifies.
    pub fn first_falsified(&self, model: &Model) -> Option<usize> {
        self.clauses.iter().position(|c| !c.iter().any(|&l| model.lit(l)))
    }

    pub fn is_satisfied_by(&self, model: &Model) -> bool {
        self.first_falsified(model).is_none()
    }
}

/// Total assignment; `values[v - 1]` is variable `v`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Model {
    values: Vec<bool>,
}

impl Model {
    pub fn new(values: Vec<bool>) -> Self {
        Model { values }
    }

    /// Builds a model over `var_count` variables from true/false literals;
    /// unmentioned variables are false.
    pub fn from_literals(var_count: u32, lits: &[Lit]) -> Self {
        let mut values = vec![false; var_count as usize];
        for &l in lits {
            let idx = l.unsigned_abs() as usize - 1;
            if idx >= values.len() {
                values.resize(idx + 1, false);
            }
            values[idx] = l > 0;
        }
        Model { values }
    }

    pub fn value(&self, var: Var) -> bool {
        self.values.get(var as usize - 1).copied().unwrap_or(false)
    }

    pub fn lit(&self, l: Lit) -> bool {
        self.value(l.unsigned_abs()) == (l > 0)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("model falsifies clause {0}")]
    ModelDoesNotSatisfy(usize),
    #[error("sigma variables do not describe a linear order")]
    SigmaNotTotal,
    #[error("decoded embedding failed verification: {0}")]
    InvalidEmbedding(String),
}

/// A formula together with what it encodes.
#[derive(Debug, Clone)]
pub struct Encoding {
    pub formula: CnfFormula,
    pub varmap: VarMap,
    pub pages: usize,
    pub dispersable: bool,
}

pub fn encode(g: &Graph, pages: usize, dispersable: bool, symmetry: SymmetryBreaking) -> Encoding {
    assert!(pages >= 1, "at least one page");
    let n = g.vertex_count();
    let m = g.edge_count();
    let vm = VarMap::new(n, m, pages);
    let mut f = CnfFormula::new(vm.total_vars());

    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let (ab, bc, ac) = (vm.left_of(a, b), vm.left_of(b, c), vm.left_of(a, c));
                f.add_clause(vec![-ab, -bc, ac]);
                f.add_clause(vec![ab, bc, -ac]);
            }
        }
    }

    for e in 0..m {
        f.add_clause((0..pages).map(|i| vm.phi(e, i) as Lit).collect());
    }

    for e in 0..m {
        for h in e + 1..m {
            let chi = vm.chi(e, h) as Lit;
            for i in 0..pages {
                f.add_clause(vec![-(vm.phi(e, i) as Lit), -(vm.phi(h, i) as Lit), chi]);
            }
        }
    }

    for e in 0..m {
        for h in e + 1..m {
            if g.edges_adjacent(e, h) {
                continue;
            }
            let chi = vm.chi(e, h) as Lit;
            let (a, b) = g.edge(e);
            let (c, d) = g.edge(h);
            for (x1, x2) in [(a, b), (b, a)] {
                for (y1, y2) in [(c, d), (d, c)] {
                    // x1 < y1 < x2 < y2
                    f.add_clause(vec![-chi, -vm.left_of(x1, y1), -vm.left_of(y1, x2), -vm.left_of(x2, y2)]);
                    // y1 < x1 < y2 < x2
                    f.add_clause(vec![-chi, -vm.left_of(y1, x1), -vm.left_of(x1, y2), -vm.left_of(y2, x2)]);
                }
            }
        }
    }

    if dispersable {
        for e in 0..m {
            for h in e + 1..m {
                if g.edges_adjacent(e, h) {
                    f.add_clause(vec![-(vm.chi(e, h) as Lit)]);
                }
            }
        }
    }

    if symmetry.pin_first_vertex {
        for v in 1..n {
            f.add_clause(vec![vm.left_of(0, v)]);
        }
    }
    if symmetry.break_reflection && n >= 3 {
        f.add_clause(vec![vm.left_of(1, 2)]);
    }
    let star = star_vertex(g, pages, dispersable, symmetry);
    if let Some(v) = star {
        for (i, &(_, e)) in g.incident(v).iter().enumerate() {
            f.add_clause(vec![vm.phi(e, i) as Lit]);
        }
    } else if symmetry.pin_first_edge && m > 0 {
        f.add_clause(vec![vm.phi(0, 0) as Lit]);
    }

    Encoding { formula: f, varmap: vm, pages, dispersable }
}

/// The vertex whose star gets pinned, if star pinning applies.
pub fn star_vertex(g: &Graph, pages: usize, dispersable: bool, symmetry: SymmetryBreaking) -> Option<VertexId> {
    if !(symmetry.pin_star && dispersable) {
        return None;
    }
    let delta = g.max_degree();
    if delta == 0 || delta > pages {
        return None;
    }
    (0..g.vertex_count()).find(|&v| g.degree(v) == delta)
}

impl Encoding {
    /// Turns a model into an embedding and verifies it.
    pub fn decode(&self, g: &Graph, model: &Model) -> Result<BookEmbedding, DecodeError> {
        if let Some(c) = self.formula.first_falsified(model) {
            return Err(DecodeError::ModelDoesNotSatisfy(c));
        }
        let n = g.vertex_count();
        let vm = &self.varmap;
        // In a linear order the number of vertices to the right of `u`
        // determines its position.
        let mut right_of = vec![0usize; n];
        for u in 0..n {
            for v in u + 1..n {
                if model.value(vm.sigma(u, v)) {
                    right_of[u] += 1;
                } else {
                    right_of[v] += 1;
                }
            }
        }
        let mut spine = vec![usize::MAX; n];
        for (u, &r) in right_of.iter().enumerate() {
            let at = n - 1 - r;
            if spine[at] != usize::MAX {
                return Err(DecodeError::SigmaNotTotal);
            }
            spine[at] = u;
        }
        let page_of = (0..g.edge_count())
            .map(|e| {
                (0..self.pages)
                    .find(|&i| model.value(vm.phi(e, i)))
                    .ok_or_else(|| DecodeError::InvalidEmbedding(format!("edge {e} has no page")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let emb = BookEmbedding::new(spine, page_of, self.pages)
            .map_err(|e| DecodeError::InvalidEmbedding(e.to_string()))?;
        let report = verify(g, &emb, self.dispersable).map_err(|e| DecodeError::InvalidEmbedding(e.to_string()))?;
        if !report.valid() {
            return Err(DecodeError::InvalidEmbedding(format!("{:?}", report.violations[0])));
        }
        Ok(emb)
    }

    /// The assignment induced by an embedding: sigma from the spine, phi from
    /// the page map, chi exactly for same-page pairs.
    pub fn assignment_for(&self, g: &Graph, emb: &BookEmbedding) -> Model {
        let vm = &self.varmap;
        let mut values = vec![false; vm.total_vars() as usize];
        let pos = emb.positions();
        let n = g.vertex_count();
        let m = g.edge_count();
        for u in 0..n {
            for v in u + 1..n {
                values[vm.sigma(u, v) as usize - 1] = pos[u] < pos[v];
            }
        }
        for e in 0..m {
            values[vm.phi(e, emb.page_of(e)) as usize - 1] = true;
            for h in e + 1..m {
                values[vm.chi(e, h) as usize - 1] = emb.page_of(e) == emb.page_of(h);
            }
        }
        Model::new(values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn heawood_variable_counts() {
        let enc = encode(&generators::heawood(), 3, true, SymmetryBreaking::default());
        let vm = &enc.varmap;
        assert_eq!((vm.sigma_count(), vm.phi_count(), vm.chi_count()), (91, 63, 210));
        assert_eq!(vm.total_vars(), 364);
    }

    #[test]
    fn ids_are_dense_and_invertible() {
        let vm = VarMap::new(5, 4, 3);
        let mut seen = vec![false; vm.total_vars() as usize + 1];
        for u in 0..5 {
            for v in u + 1..5 {
                let x = vm.sigma(u, v);
                assert_eq!(vm.describe(x), Some(Family::Sigma(u, v)));
                seen[x as usize] = true;
            }
        }
        for e in 0..4 {
            for p in 0..3 {
                let x = vm.phi(e, p);
                assert_eq!(vm.describe(x), Some(Family::Phi(e, p)));
                seen[x as usize] = true;
            }
            for f in e + 1..4 {
                let x = vm.chi(e, f);
                assert_eq!(vm.chi(f, e), x);
                assert_eq!(vm.describe(x), Some(Family::Chi(e, f)));
                seen[x as usize] = true;
            }
        }
        assert!(seen[1..].iter().all(|&s| s));
        assert_eq!(vm.describe(0), None);
        assert_eq!(vm.describe(vm.total_vars() + 1), None);
    }

    #[test]
    fn single_edge_has_no_chi() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let enc = encode(&g, 1, true, SymmetryBreaking::NONE);
        assert_eq!(enc.varmap.chi_count(), 0);
        assert_eq!(enc.formula.clauses, vec![vec![2]]);
    }

    #[test]
    fn edgeless_graph_encodes_to_order_only() {
        let g = Graph::new(2, &[]).unwrap();
        let enc = encode(&g, 1, true, SymmetryBreaking::NONE);
        assert!(enc.formula.clauses.is_empty());
    }

    #[test]
    fn embedding_assignment_satisfies_encoding() {
        let g = generators::cycle(4);
        let mut pages = vec![0; 4];
        for (u, v, p) in [(0, 1, 0), (1, 2, 1), (2, 3, 0), (0, 3, 1)] {
            pages[g.edge_id(u, v).unwrap()] = p;
        }
        let emb = BookEmbedding::new(vec![0, 1, 2, 3], pages, 2).unwrap();
        let enc = encode(&g, 2, true, SymmetryBreaking::default());
        let model = enc.assignment_for(&g, &emb);
        assert!(enc.formula.is_satisfied_by(&model));
        assert_eq!(enc.decode(&g, &model).unwrap(), emb);
    }

    #[test]
    fn decode_rejects_non_models() {
        let g = generators::cycle(4);
        let enc = encode(&g, 2, true, SymmetryBreaking::default());
        let model = Model::new(vec![false; enc.varmap.total_vars() as usize]);
        assert!(matches!(enc.decode(&g, &model), Err(DecodeError::ModelDoesNotSatisfy(_))));
    }

    #[test]
    fn sidecar_lists_every_variable() {
        let vm = VarMap::new(3, 2, 2);
        let text = vm.to_sidecar();
        assert_eq!(text.lines().count(), vm.total_vars() as usize);
        assert!(text.starts_with("1 sigma 0 1\n"));
        assert!(text.contains("\n4 phi 0 0\n"));
        assert!(text.ends_with("8 chi 0 1\n"));
    }
}
