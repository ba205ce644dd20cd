#![allow(dead_code)]

use std::collections::HashSet;
use std::path::PathBuf;

use dispersable_core::graph::Graph;

/// External solver command: `DISPERSABLE_SOLVER` if set, otherwise the
/// bundled CaDiCaL wrapper.
pub fn solver_command() -> String {
    std::env::var("DISPERSABLE_SOLVER").unwrap_or_else(|_| {
        let script = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scripts/cadical.py");
        format!("python3 {}", script.display())
    })
}

/// Edge list of the graph encoded by `mask` over the pairs of `0..n` in
/// lexicographic order.
fn edges_of(n: usize, mask: u64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                out.push((u, v));
            }
            bit += 1;
        }
    }
    out
}

fn mask_of(n: usize, adj: &[Vec<bool>], perm: &[usize]) -> u64 {
    let mut mask = 0u64;
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if adj[perm[u]][perm[v]] {
                mask |= 1 << bit;
            }
            bit += 1;
        }
    }
    mask
}

/// Least edge mask over all relabelings that list vertices by
/// non-decreasing degree; equal for isomorphic graphs.
fn canonical(n: usize, adj: &[Vec<bool>]) -> u64 {
    let deg: Vec<usize> = (0..n).map(|v| adj[v].iter().filter(|&&b| b).count()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| deg[v]);
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match groups.last_mut() {
            Some(g) if deg[g[0]] == deg[v] => g.push(v),
            _ => groups.push(vec![v]),
        }
    }
    let mut best = u64::MAX;
    let mut perm = Vec::with_capacity(n);
    fn rec(groups: &mut [Vec<usize>], gi: usize, perm: &mut Vec<usize>, n: usize, adj: &[Vec<bool>], best: &mut u64) {
        if gi == groups.len() {
            *best = (*best).min(mask_of(n, adj, perm));
            return;
        }
        let len = groups[gi].len();
        heap_permute(groups, gi, len, perm, n, adj, best);
    }
    fn heap_permute(
        groups: &mut [Vec<usize>],
        gi: usize,
        k: usize,
        perm: &mut Vec<usize>,
        n: usize,
        adj: &[Vec<bool>],
        best: &mut u64,
    ) {
        if k <= 1 {
            let saved = perm.len();
            perm.extend(groups[gi].iter().copied());
            rec(groups, gi + 1, perm, n, adj, best);
            perm.truncate(saved);
            return;
        }
        for i in 0..k {
            heap_permute(groups, gi, k - 1, perm, n, adj, best);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            groups[gi].swap(j, k - 1);
        }
    }
    rec(&mut groups, 0, &mut perm, n, adj, &mut best);
    best
}

/// Every graph on `n` vertices up to isomorphism, by extending the classes
/// on `n - 1` vertices with a new vertex joined to any subset.
fn all_graphs(n: usize) -> Vec<u64> {
    if n <= 1 {
        return vec![0];
    }
    let smaller = all_graphs(n - 1);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for &m in &smaller {
        let mut adj = vec![vec![false; n]; n];
        for (u, v) in edges_of(n - 1, m) {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        for subset in 0u64..(1 << (n - 1)) {
            let (rows, last) = adj.split_at_mut(n - 1);
            for (w, (row, cell)) in rows.iter_mut().zip(last[0].iter_mut()).enumerate() {
                let on = subset >> w & 1 == 1;
                row[n - 1] = on;
                *cell = on;
            }
            let c = canonical(n, &adj);
            if seen.insert(c) {
                out.push(c);
            }
        }
    }
    out
}

/// Connected graphs on 1..=max_n vertices, one per isomorphism class.
pub fn connected_graphs(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for m in all_graphs(n) {
            let g = Graph::new(n, &edges_of(n, m)).unwrap();
            if g.is_connected() {
                out.push(g);
            }
        }
    }
    out
}
