//! Budgeted SAT solving: the internal CDCL solver, an external process
//! bridge, a seed portfolio, and the page-count search built on top.

mod cdcl;
mod external;

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::book::BookEmbedding;
use crate::dimacs::DimacsError;
use crate::encoding::{encode, CnfFormula, DecodeError, Model, SymmetryBreaking};
use crate::graph::Graph;

pub use external::solve_external;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Sat,
    Unsat,
    Unknown,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Sat => "SAT",
            Verdict::Unsat => "UNSAT",
            Verdict::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub time: Option<Duration>,
    pub conflicts: Option<u64>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget { time: None, conflicts: None };

    pub fn time(t: Duration) -> Self {
        Budget { time: Some(t), conflicts: None }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub decisions: u64,
    pub propagations: u64,
    pub conflicts: u64,
    pub restarts: u64,
    pub learnt_clauses: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub verdict: Verdict,
    pub model: Option<Model>,
    pub stats: SolveStats,
}

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("solver process failed: {0}")]
    SolverProcessFailed(String),
    #[error(transparent)]
    MalformedSolverOutput(#[from] DimacsError),
    #[error("external solver returned a model that falsifies clause {0}")]
    RejectedModel(usize),
}

static SELF_CHECK_FAILURES: AtomicUsize = AtomicUsize::new(0);

/// Number of models, internal or external, that failed re-evaluation
/// against their formula in this process.
pub fn self_check_failures() -> usize {
    SELF_CHECK_FAILURES.load(Ordering::SeqCst)
}

fn record_self_check_failure() {
    SELF_CHECK_FAILURES.fetch_add(1, Ordering::SeqCst);
}

/// Internal solver with seed 0.
pub fn solve(f: &CnfFormula, budget: Budget) -> SolveOutcome {
    solve_seeded(f, budget, 0, None)
}

/// Internal solver. The seed only perturbs initial variable activities, so a
/// fixed seed gives a fixed run.
pub fn solve_seeded(f: &CnfFormula, budget: Budget, seed: u64, cancel: Option<&AtomicBool>) -> SolveOutcome {
    let mut s = cdcl::Cdcl::new(f, seed, cancel);
    let (verdict, model, stats) = s.solve(&budget);
    if let Some(m) = &model {
        if let Some(c) = f.first_falsified(m) {
            record_self_check_failure();
            panic!("internal solver model falsifies clause {c}");
        }
    }
    SolveOutcome { verdict, model, stats }
}

/// Runs one internal solver per seed on its own thread. The first SAT or
/// UNSAT answer wins and the rest are cancelled.
pub fn solve_portfolio(f: &CnfFormula, budget: Budget, seeds: &[u64]) -> SolveOutcome {
    if seeds.len() <= 1 {
        return solve_seeded(f, budget, seeds.first().copied().unwrap_or(0), None);
    }
    let cancel = AtomicBool::new(false);
    let start = Instant::now();
    let winner = std::sync::Mutex::new(None::<SolveOutcome>);
    std::thread::scope(|scope| {
        for &seed in seeds {
            let (cancel, winner) = (&cancel, &winner);
            scope.spawn(move || {
                let out = solve_seeded(f, budget, seed, Some(cancel));
                if out.verdict != Verdict::Unknown {
                    let mut w = winner.lock().expect("portfolio lock");
                    if w.is_none() {
                        *w = Some(out);
                        cancel.store(true, Ordering::SeqCst);
                    }
                }
            });
        }
    });
    winner.into_inner().expect("portfolio lock").unwrap_or_else(|| SolveOutcome {
        verdict: Verdict::Unknown,
        model: None,
        stats: SolveStats { elapsed: start.elapsed(), ..SolveStats::default() },
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Backend {
    Internal { seed: u64 },
    Portfolio { seeds: Vec<u64> },
    /// Whitespace-separated command; the DIMACS path is appended.
    External { command: String },
}

impl Default for Backend {
    fn default() -> Self {
        Backend::Internal { seed: 0 }
    }
}

impl Backend {
    /// `internal`, `portfolio:<k>` or `cmd:<command>`.
    pub fn parse(s: &str, seed: u64) -> Option<Backend> {
        if s == "internal" {
            Some(Backend::Internal { seed })
        } else if let Some(k) = s.strip_prefix("portfolio:") {
            let k: u64 = k.parse().ok().filter(|&k| k > 0)?;
            Some(Backend::Portfolio { seeds: (seed..seed + k).collect() })
        } else {
            let cmd = s.strip_prefix("cmd:")?.trim();
            (!cmd.is_empty()).then(|| Backend::External { command: cmd.to_string() })
        }
    }
}

pub fn solve_with(backend: &Backend, f: &CnfFormula, budget: Budget) -> Result<SolveOutcome, SolverError> {
    match backend {
        Backend::Internal { seed } => Ok(solve_seeded(f, budget, *seed, None)),
        Backend::Portfolio { seeds } => Ok(solve_portfolio(f, budget, seeds)),
        Backend::External { command } => solve_external(f, command, budget.time),
    }
}

#[derive(Debug, Error)]
pub enum DecideError {
    #[error("bad page range [{lower}, {upper}]")]
    BadRange { lower: usize, upper: usize },
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Decode(#[from] DecodeError),
}

#[derive(Debug, Clone)]
pub struct DecideOptions {
    pub dispersable: bool,
    pub backend: Backend,
    /// Total budget for the whole search.
    pub budget: Budget,
    pub symmetry: SymmetryBreaking,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            dispersable: true,
            backend: Backend::default(),
            budget: Budget::UNLIMITED,
            symmetry: SymmetryBreaking::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DbtOutcome {
    /// Least page count in range with an embedding, and a verified witness.
    Found { pages: usize, witness: BookEmbedding },
    /// Every page count in range is UNSAT.
    NoneInRange,
    /// Some verdict needed to settle the answer timed out.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DbtResult {
    pub outcome: DbtOutcome,
    /// `(pages, verdict)` for every page count tried, in order.
    pub verdicts: Vec<(usize, Verdict)>,
}

/// Tries `lower, lower + 1, ..., upper` and stops at the first SAT. An
/// Unknown before any SAT makes the whole answer Unknown.
pub fn decide_dbt(g: &Graph, lower: usize, upper: usize, opts: &DecideOptions) -> Result<DbtResult, DecideError> {
    if lower == 0 || lower > upper {
        return Err(DecideError::BadRange { lower, upper });
    }
    let start = Instant::now();
    let mut verdicts = Vec::new();
    let mut saw_unknown = false;
    for pages in lower..=upper {
        let mut budget = opts.budget;
        if let Some(t) = opts.budget.time {
            budget.time = Some(t.saturating_sub(start.elapsed()));
        }
        let enc = encode(g, pages, opts.dispersable, opts.symmetry);
        let out = solve_with(&opts.backend, &enc.formula, budget)?;
        verdicts.push((pages, out.verdict));
        match out.verdict {
            Verdict::Sat => {
                let witness = enc.decode(g, out.model.as_ref().expect("SAT carries a model"))?;
                let outcome = if saw_unknown { DbtOutcome::Unknown } else { DbtOutcome::Found { pages, witness } };
                return Ok(DbtResult { outcome, verdicts });
            }
            Verdict::Unsat => {}
            Verdict::Unknown => saw_unknown = true,
        }
    }
    let outcome = if saw_unknown { DbtOutcome::Unknown } else { DbtOutcome::NoneInRange };
    Ok(DbtResult { outcome, verdicts })
}

/// Whether a collection of `(pages, verdict)` results for one graph and
/// variant is consistent: no UNSAT above a SAT.
pub fn verdicts_monotone(verdicts: &[(usize, Verdict)]) -> bool {
    let max_unsat = verdicts.iter().filter(|v| v.1 == Verdict::Unsat).map(|v| v.0).max();
    let min_sat = verdicts.iter().filter(|v| v.1 == Verdict::Sat).map(|v| v.0).min();
    match (max_unsat, min_sat) {
        (Some(u), Some(s)) => u < s,
        _ => true,
    }
}
