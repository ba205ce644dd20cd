//! Exhaustive book-thickness search for small graphs.
//!
//! Independent of the SAT path: it enumerates spine orders directly and
//! colors the conflict graph of each order by backtracking. Vertex 0 is pinned
//! to the first position and reflections are skipped (`spine[1] < spine[n-1]`),
//! which is sound because validity is invariant under rotating and
//! reflecting the circular order.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::book::{edges_cross_at, BookEmbedding};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    /// Least page count that works, with the lexicographically first witness
    /// order for that count.
    Found { pages: usize, witness: BookEmbedding },
    /// No embedding with at most `max_pages` pages.
    Exhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("time budget of {0:?} exceeded")]
    BudgetExceeded(Duration),
}

pub fn brute_force_thickness(
    g: &Graph,
    dispersable: bool,
    max_pages: usize,
    budget: Duration,
) -> Result<OracleOutcome, OracleError> {
    let start = Instant::now();
    let n = g.vertex_count();
    if n == 0 {
        return Ok(OracleOutcome::Found { pages: 1, witness: BookEmbedding::new(vec![], vec![], 1).unwrap() });
    }
    for pages in 1..=max_pages {
        let mut spine: Vec<usize> = (0..n).collect();
        loop {
            if n < 3 || spine[1] < spine[n - 1] {
                if let Some(page_of) = assign_pages(g, &spine, pages, dispersable) {
                    let witness = BookEmbedding::new(spine, page_of, pages).expect("valid witness");
                    return Ok(OracleOutcome::Found { pages, witness });
                }
            }
            if start.elapsed() > budget {
                return Err(OracleError::BudgetExceeded(budget));
            }
            if !next_permutation(&mut spine[1..]) {
                break;
            }
        }
    }
    Ok(OracleOutcome::Exhausted)
}

/// Backtracking page assignment for a fixed spine, longest edges first.
fn assign_pages(g: &Graph, spine: &[usize], pages: usize, dispersable: bool) -> Option<Vec<usize>> {
    let n = spine.len();
    let m = g.edge_count();
    let mut pos = vec![0; n];
    for (i, &v) in spine.iter().enumerate() {
        pos[v] = i;
    }
    let span = |e: usize| {
        let (u, v) = g.edge(e);
        pos[u].abs_diff(pos[v])
    };
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&e| (std::cmp::Reverse(span(e)), e));
    let mut conflicts = vec![Vec::new(); m];
    for (i, &e) in order.iter().enumerate() {
        for &f in &order[..i] {
            let clash = edges_cross_at(&pos, g.edge(e), g.edge(f))
                || (dispersable && g.edges_adjacent(e, f));
            if clash {
                conflicts[e].push(f);
            }
        }
    }
    let mut page_of = vec![usize::MAX; m];
    fn extend(
        idx: usize,
        used: usize,
        order: &[usize],
        conflicts: &[Vec<usize>],
        pages: usize,
        page_of: &mut [usize],
    ) -> bool {
        let Some(&e) = order.get(idx) else { return true };
        // Pages are interchangeable: never open more than one fresh page.
        for p in 0..pages.min(used + 1) {
            if conflicts[e].iter().all(|&f| page_of[f] != p) {
                page_of[e] = p;
                if extend(idx + 1, used.max(p + 1), order, conflicts, pages, page_of) {
                    return true;
                }
            }
        }
        page_of[e] = usize::MAX;
        false
    }
    extend(0, 0, &order, &conflicts, pages, &mut page_of).then_some(page_of)
}

/// Lexicographic successor; false when `xs` is the last permutation.
fn next_permutation(xs: &mut [usize]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}
