//! Conflict-driven clause learning with two watched literals.
//!
//! First-UIP learning with local minimization, VSIDS-style activities over a
//! binary heap, phase saving, Luby restarts and LBD-based clause deletion.
//! Single-threaded; a shared flag allows cancellation from a portfolio.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Budget, SolveStats, Verdict};
use crate::encoding::{CnfFormula, Model};

/// Internal literal: `2 * var + negated`, variables 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Lit(u32);

impl Lit {
    fn from_dimacs(l: i32) -> Lit {
        let v = l.unsigned_abs() - 1;
        Lit(2 * v + u32::from(l < 0))
    }
    #[inline]
    fn var(self) -> usize {
        (self.0 >> 1) as usize
    }
    #[inline]
    fn negated(self) -> bool {
        self.0 & 1 == 1
    }
    #[inline]
    fn idx(self) -> usize {
        self.0 as usize
    }
}

impl std::ops::Not for Lit {
    type Output = Lit;
    #[inline]
    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

const UNDEF: i8 = 0;
const TRUE: i8 = 1;
const FALSE: i8 = -1;
const NO_REASON: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
struct Watcher {
    cref: u32,
    blocker: Lit,
}

#[derive(Debug, Clone)]
struct Clause {
    lits: Vec<Lit>,
    learnt: bool,
    lbd: u32,
    activity: f64,
}

/// Max-heap of variables ordered by activity.
#[derive(Debug, Default)]
struct VarHeap {
    heap: Vec<usize>,
    index: Vec<usize>,
}

impl VarHeap {
    const ABSENT: usize = usize::MAX;

    fn with_vars(n: usize) -> Self {
        VarHeap { heap: Vec::with_capacity(n), index: vec![Self::ABSENT; n] }
    }

    fn contains(&self, v: usize) -> bool {
        self.index[v] != Self::ABSENT
    }

    fn insert(&mut self, v: usize, act: &[f64]) {
        if self.contains(v) {
            return;
        }
        self.index[v] = self.heap.len();
        self.heap.push(v);
        self.sift_up(self.heap.len() - 1, act);
    }

    fn increased(&mut self, v: usize, act: &[f64]) {
        if self.contains(v) {
            self.sift_up(self.index[v], act);
        }
    }

    fn pop(&mut self, act: &[f64]) -> Option<usize> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().expect("non-empty");
        self.index[top] = Self::ABSENT;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.index[last] = 0;
            self.sift_down(0, act);
        }
        Some(top)
    }

    fn sift_up(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        while i > 0 {
            let parent = (i - 1) / 2;
            let p = self.heap[parent];
            if act[p] >= act[v] {
                break;
            }
            self.heap[i] = p;
            self.index[p] = i;
            i = parent;
        }
        self.heap[i] = v;
        self.index[v] = i;
    }

    fn sift_down(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        let len = self.heap.len();
        loop {
            let left = 2 * i + 1;
            if left >= len {
                break;
            }
            let right = left + 1;
            let child = if right < len && act[self.heap[right]] > act[self.heap[left]] { right } else { left };
            let c = self.heap[child];
            if act[c] <= act[v] {
                break;
            }
            self.heap[i] = c;
            self.index[c] = i;
            i = child;
        }
        self.heap[i] = v;
        self.index[v] = i;
    }
}

/// Reluctant doubling sequence 1, 1, 2, 1, 1, 2, 4, ...
pub(crate) fn luby(mut i: u64) -> u64 {
    let mut size = 1u64;
    let mut seq = 0u32;
    while size < i + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != i {
        size = (size - 1) >> 1;
        seq -= 1;
        i %= size;
    }
    1 << seq
}

pub(crate) struct Cdcl<'a> {
    num_vars: usize,
    clauses: Vec<Clause>,
    watches: Vec<Vec<Watcher>>,
    assigns: Vec<i8>,
    level: Vec<u32>,
    reason: Vec<u32>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    cla_inc: f64,
    heap: VarHeap,
    phase: Vec<bool>,
    seen: Vec<bool>,
    level_stamp: Vec<u64>,
    stamp: u64,
    learnt_count: usize,
    max_learnts: f64,
    unsat: bool,
    stats: SolveStats,
    cancel: Option<&'a AtomicBool>,
}

const VAR_DECAY: f64 = 0.95;
const CLAUSE_DECAY: f64 = 0.999;
const RESTART_UNIT: u64 = 100;

impl<'a> Cdcl<'a> {
    pub(crate) fn new(f: &CnfFormula, seed: u64, cancel: Option<&'a AtomicBool>) -> Self {
        let n = f.var_count as usize;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let activity: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() * 1e-5).collect();
        let mut heap = VarHeap::with_vars(n);
        for v in 0..n {
            heap.insert(v, &activity);
        }
        let mut s = Cdcl {
            num_vars: n,
            clauses: Vec::with_capacity(f.clauses.len()),
            watches: vec![Vec::new(); 2 * n],
            assigns: vec![UNDEF; n],
            level: vec![0; n],
            reason: vec![NO_REASON; n],
            trail: Vec::with_capacity(n),
            trail_lim: Vec::new(),
            qhead: 0,
            activity,
            var_inc: 1.0,
            cla_inc: 1.0,
            heap,
            phase: vec![false; n],
            seen: vec![false; n],
            level_stamp: vec![0; n + 1],
            stamp: 0,
            learnt_count: 0,
            max_learnts: (f.clauses.len() as f64 / 3.0).max(2000.0),
            unsat: false,
            stats: SolveStats::default(),
            cancel,
        };
        for clause in &f.clauses {
            if !s.add_input_clause(clause) {
                s.unsat = true;
                break;
            }
        }
        s
    }

    #[inline]
    fn value(&self, l: Lit) -> i8 {
        let a = self.assigns[l.var()];
        if l.negated() {
            -a
        } else {
            a
        }
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    /// False when the formula is already contradictory at level 0.
    fn add_input_clause(&mut self, clause: &[i32]) -> bool {
        let mut lits: Vec<Lit> = clause.iter().map(|&l| Lit::from_dimacs(l)).collect();
        lits.sort_unstable();
        lits.dedup();
        if lits.windows(2).any(|w| w[0] == !w[1]) {
            return true;
        }
        lits.retain(|&l| self.value(l) != FALSE);
        if lits.iter().any(|&l| self.value(l) == TRUE) {
            return true;
        }
        match lits.len() {
            0 => false,
            1 => {
                self.enqueue(lits[0], NO_REASON);
                self.propagate().is_none()
            }
            _ => {
                self.attach(Clause { lits, learnt: false, lbd: 0, activity: 0.0 });
                true
            }
        }
    }

    fn attach(&mut self, c: Clause) -> u32 {
        let cref = self.clauses.len() as u32;
        self.watches[c.lits[0].idx()].push(Watcher { cref, blocker: c.lits[1] });
        self.watches[c.lits[1].idx()].push(Watcher { cref, blocker: c.lits[0] });
        if c.learnt {
            self.learnt_count += 1;
        }
        self.clauses.push(c);
        cref
    }

    #[inline]
    fn enqueue(&mut self, l: Lit, reason: u32) {
        let v = l.var();
        debug_assert_eq!(self.assigns[v], UNDEF);
        self.assigns[v] = if l.negated() { FALSE } else { TRUE };
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(l);
    }

    /// Unit propagation; returns a conflicting clause if any.
    fn propagate(&mut self) -> Option<u32> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = !p;
            let mut ws = std::mem::take(&mut self.watches[false_lit.idx()]);
            let mut i = 0;
            let mut j = 0;
            let mut conflict = None;
            while i < ws.len() {
                let w = ws[i];
                i += 1;
                if self.value(w.blocker) == TRUE {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                let cref = w.cref as usize;
                {
                    let lits = &mut self.clauses[cref].lits;
                    if lits[0] == false_lit {
                        lits.swap(0, 1);
                    }
                }
                let first = self.clauses[cref].lits[0];
                let new_watch = Watcher { cref: w.cref, blocker: first };
                if first != w.blocker && self.value(first) == TRUE {
                    ws[j] = new_watch;
                    j += 1;
                    continue;
                }
                let len = self.clauses[cref].lits.len();
                let mut moved = false;
                for k in 2..len {
                    let l = self.clauses[cref].lits[k];
                    if self.value(l) != FALSE {
                        self.clauses[cref].lits.swap(1, k);
                        self.watches[l.idx()].push(new_watch);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[j] = new_watch;
                j += 1;
                if self.value(first) == FALSE {
                    conflict = Some(w.cref);
                    while i < ws.len() {
                        ws[j] = ws[i];
                        j += 1;
                        i += 1;
                    }
                } else {
                    self.enqueue(first, w.cref);
                }
            }
            ws.truncate(j);
            self.watches[false_lit.idx()] = ws;
            if conflict.is_some() {
                self.qhead = self.trail.len();
                return conflict;
            }
        }
        None
    }

    fn bump_var(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in &mut self.activity {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        self.heap.increased(v, &self.activity);
    }

    fn bump_clause(&mut self, cref: u32) {
        let c = &mut self.clauses[cref as usize];
        if !c.learnt {
            return;
        }
        c.activity += self.cla_inc;
        if c.activity > 1e20 {
            for c in self.clauses.iter_mut().filter(|c| c.learnt) {
                c.activity *= 1e-20;
            }
            self.cla_inc *= 1e-20;
        }
    }

    /// First-UIP analysis. Returns the learnt clause (asserting literal
    /// first, a literal of the backjump level second) and the backjump level.
    fn analyze(&mut self, mut confl: u32) -> (Vec<Lit>, u32) {
        let mut learnt = vec![Lit(0)];
        let mut path = 0usize;
        let mut p: Option<Lit> = None;
        let mut idx = self.trail.len();
        let current = self.decision_level();
        loop {
            self.bump_clause(confl);
            let start = usize::from(p.is_some());
            let len = self.clauses[confl as usize].lits.len();
            for k in start..len {
                let q = self.clauses[confl as usize].lits[k];
                let v = q.var();
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    self.bump_var(v);
                    if self.level[v] >= current {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                idx -= 1;
                if self.seen[self.trail[idx].var()] {
                    break;
                }
            }
            let lit = self.trail[idx];
            p = Some(lit);
            self.seen[lit.var()] = false;
            path -= 1;
            if path == 0 {
                break;
            }
            confl = self.reason[lit.var()];
        }
        learnt[0] = !p.expect("uip");

        // Local minimization: drop literals implied by other literals of the
        // clause.
        let marked: Vec<Lit> = learnt[1..].to_vec();
        let mut keep = 1;
        for k in 1..learnt.len() {
            let l = learnt[k];
            let r = self.reason[l.var()];
            let redundant = r != NO_REASON
                && self.clauses[r as usize].lits[1..]
                    .iter()
                    .all(|q| self.seen[q.var()] || self.level[q.var()] == 0);
            if !redundant {
                learnt[keep] = l;
                keep += 1;
            }
        }
        learnt.truncate(keep);
        for l in marked {
            self.seen[l.var()] = false;
        }

        let mut bt = 0;
        if learnt.len() > 1 {
            let mut max_i = 1;
            for k in 2..learnt.len() {
                if self.level[learnt[k].var()] > self.level[learnt[max_i].var()] {
                    max_i = k;
                }
            }
            learnt.swap(1, max_i);
            bt = self.level[learnt[1].var()];
        }
        (learnt, bt)
    }

    fn lbd(&mut self, lits: &[Lit]) -> u32 {
        self.stamp += 1;
        let mut count = 0;
        for l in lits {
            let lv = self.level[l.var()] as usize;
            if self.level_stamp[lv] != self.stamp {
                self.level_stamp[lv] = self.stamp;
                count += 1;
            }
        }
        count
    }

    fn cancel_until(&mut self, level: u32) {
        if self.decision_level() <= level {
            return;
        }
        let lim = self.trail_lim[level as usize];
        for k in (lim..self.trail.len()).rev() {
            let l = self.trail[k];
            let v = l.var();
            self.phase[v] = !l.negated();
            self.assigns[v] = UNDEF;
            self.reason[v] = NO_REASON;
            self.heap.insert(v, &self.activity);
        }
        self.trail.truncate(lim);
        self.trail_lim.truncate(level as usize);
        self.qhead = lim;
    }

    fn pick_branch(&mut self) -> Option<Lit> {
        while let Some(v) = self.heap.pop(&self.activity) {
            if self.assigns[v] == UNDEF {
                return Some(Lit(2 * v as u32 + u32::from(!self.phase[v])));
            }
        }
        None
    }

    fn locked(&self, cref: usize) -> bool {
        let first = self.clauses[cref].lits[0];
        self.reason[first.var()] == cref as u32 && self.value(first) == TRUE
    }

    /// Deletes about half of the learnt clauses (never glue clauses with
    /// LBD <= 2 or current reasons), then compacts the database.
    fn reduce_db(&mut self) {
        let mut candidates: Vec<usize> = (0..self.clauses.len())
            .filter(|&i| self.clauses[i].learnt && self.clauses[i].lbd > 2 && !self.locked(i))
            .collect();
        candidates.sort_by(|&a, &b| {
            let (ca, cb) = (&self.clauses[a], &self.clauses[b]);
            cb.lbd.cmp(&ca.lbd).then(ca.activity.total_cmp(&cb.activity))
        });
        let mut delete = vec![false; self.clauses.len()];
        for &i in candidates.iter().take(candidates.len() / 2) {
            delete[i] = true;
        }
        let mut remap = vec![NO_REASON; self.clauses.len()];
        let mut kept = Vec::with_capacity(self.clauses.len());
        for (i, c) in std::mem::take(&mut self.clauses).into_iter().enumerate() {
            if !delete[i] {
                remap[i] = kept.len() as u32;
                kept.push(c);
            }
        }
        self.clauses = kept;
        for r in &mut self.reason {
            if *r != NO_REASON {
                *r = remap[*r as usize];
                debug_assert_ne!(*r, NO_REASON);
            }
        }
        for w in &mut self.watches {
            w.clear();
        }
        self.learnt_count = 0;
        for (i, c) in self.clauses.iter().enumerate() {
            self.watches[c.lits[0].idx()].push(Watcher { cref: i as u32, blocker: c.lits[1] });
            self.watches[c.lits[1].idx()].push(Watcher { cref: i as u32, blocker: c.lits[0] });
            if c.learnt {
                self.learnt_count += 1;
            }
        }
    }

    fn out_of_budget(&self, start: Instant, budget: &Budget) -> bool {
        if let Some(limit) = budget.conflicts {
            if self.stats.conflicts >= limit {
                return true;
            }
        }
        if let Some(t) = budget.time {
            if start.elapsed() >= t {
                return true;
            }
        }
        self.cancel.is_some_and(|c| c.load(Ordering::Relaxed))
    }

    pub(crate) fn solve(&mut self, budget: &Budget) -> (Verdict, Option<Model>, SolveStats) {
        let start = Instant::now();
        let verdict = self.search_loop(start, budget);
        self.stats.elapsed = start.elapsed();
        let model = (verdict == Verdict::Sat).then(|| {
            Model::new(self.assigns.iter().map(|&a| a == TRUE).collect())
        });
        (verdict, model, self.stats.clone())
    }

    fn search_loop(&mut self, start: Instant, budget: &Budget) -> Verdict {
        if self.unsat {
            return Verdict::Unsat;
        }
        if self.propagate().is_some() {
            return Verdict::Unsat;
        }
        let mut restart_round = 0u64;
        let mut tick = 0u32;
        loop {
            let limit = RESTART_UNIT * luby(restart_round);
            restart_round += 1;
            let mut conflicts_here = 0u64;
            loop {
                tick = tick.wrapping_add(1);
                if tick.is_multiple_of(512) && self.out_of_budget(start, budget) {
                    self.cancel_until(0);
                    return Verdict::Unknown;
                }
                if let Some(confl) = self.propagate() {
                    self.stats.conflicts += 1;
                    conflicts_here += 1;
                    if self.decision_level() == 0 {
                        return Verdict::Unsat;
                    }
                    let (learnt, bt) = self.analyze(confl);
                    self.cancel_until(bt);
                    if learnt.len() == 1 {
                        self.enqueue(learnt[0], NO_REASON);
                    } else {
                        let lbd = self.lbd(&learnt);
                        let asserting = learnt[0];
                        let cref = self.attach(Clause { lits: learnt, learnt: true, lbd, activity: self.cla_inc });
                        self.enqueue(asserting, cref);
                    }
                    self.stats.learnt_clauses += 1;
                    self.var_inc /= VAR_DECAY;
                    self.cla_inc /= CLAUSE_DECAY;
                    if let Some(limit) = budget.conflicts {
                        if self.stats.conflicts >= limit {
                            self.cancel_until(0);
                            return Verdict::Unknown;
                        }
                    }
                } else {
                    if conflicts_here >= limit {
                        self.stats.restarts += 1;
                        self.cancel_until(0);
                        break;
                    }
                    if self.learnt_count as f64 >= self.max_learnts + self.trail.len() as f64 {
                        self.reduce_db();
                        self.max_learnts *= 1.1;
                    }
                    match self.pick_branch() {
                        None => return Verdict::Sat,
                        Some(lit) => {
                            self.stats.decisions += 1;
                            self.trail_lim.push(self.trail.len());
                            self.enqueue(lit, NO_REASON);
                        }
                    }
                }
            }
        }
    }

    #[allow(dead_code)]
    pub(crate) fn num_vars(&self) -> usize {
        self.num_vars
    }
}
