mod common;

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use dispersable_core::encoding::{encode, CnfFormula, SymmetryBreaking};
use dispersable_core::generators;
use dispersable_core::solver::{
    self_check_failures, solve_external, solve_with, Backend, Budget, SolverError, Verdict,
};

/// Writes a shell script standing in for a solver; it receives the CNF path
/// as `$1`.
fn fake_solver(dir: &Path, name: &str, body: &str) -> String {
    let path: PathBuf = dir.join(name);
    std::fs::write(&path, format!("#!/bin/sh\n{body}\n")).unwrap();
    format!("sh {}", path.display())
}

fn two_var_formula() -> CnfFormula {
    let mut f = CnfFormula::new(2);
    f.add_clause(vec![1, 2]);
    f.add_clause(vec![-1]);
    f
}

#[test]
fn accepts_and_pads_a_correct_model() {
    let dir = tempfile::tempdir().unwrap();
    let cmd = fake_solver(dir.path(), "ok.sh", "echo 'c fake'; echo 's SATISFIABLE'; echo 'v 2 0'; exit 10");
    let out = solve_external(&two_var_formula(), &cmd, None).unwrap();
    assert_eq!(out.verdict, Verdict::Sat);
    let model = out.model.unwrap();
    assert_eq!(model.len(), 2);
    assert!(!model.value(1) && model.value(2));
}

#[test]
fn unsat_answer() {
    let dir = tempfile::tempdir().unwrap();
    let cmd = fake_solver(dir.path(), "unsat.sh", "echo 's UNSATISFIABLE'; exit 20");
    let out = solve_external(&two_var_formula(), &cmd, None).unwrap();
    assert_eq!(out.verdict, Verdict::Unsat);
    assert!(out.model.is_none());
}

#[test]
fn solver_sees_the_formula_file() {
    let dir = tempfile::tempdir().unwrap();
    // Answers SAT only if the header it was given is right.
    let cmd = fake_solver(
        dir.path(),
        "check.sh",
        "if grep -q '^p cnf 2 2$' \"$1\"; then echo 's SATISFIABLE'; echo 'v -1 2 0'; else echo 's UNKNOWN'; fi",
    );
    assert_eq!(solve_external(&two_var_formula(), &cmd, None).unwrap().verdict, Verdict::Sat);
}

#[test]
fn malformed_output() {
    let dir = tempfile::tempdir().unwrap();
    for (name, body) in [
        ("garbage.sh", "echo 'hello'"),
        ("badlit.sh", "echo 's SATISFIABLE'; echo 'v 1 x 0'"),
        ("toolong.sh", "echo 's SATISFIABLE'; echo 'v -1 2 3 0'"),
    ] {
        let cmd = fake_solver(dir.path(), name, body);
        let r = solve_external(&two_var_formula(), &cmd, None);
        assert!(matches!(r, Err(SolverError::MalformedSolverOutput(_))), "{name}: {r:?}");
    }
}

#[test]
fn wrong_model_is_rejected_and_counted() {
    let dir = tempfile::tempdir().unwrap();
    let cmd = fake_solver(dir.path(), "liar.sh", "echo 's SATISFIABLE'; echo 'v 1 2 0'");
    let before = self_check_failures();
    let r = solve_external(&two_var_formula(), &cmd, None);
    assert!(matches!(r, Err(SolverError::RejectedModel(1))), "{r:?}");
    assert!(self_check_failures() > before);
}

#[test]
fn timeout_gives_unknown() {
    let dir = tempfile::tempdir().unwrap();
    let cmd = fake_solver(dir.path(), "slow.sh", "exec sleep 30");
    let start = Instant::now();
    let out = solve_external(&two_var_formula(), &cmd, Some(Duration::from_millis(200))).unwrap();
    assert_eq!(out.verdict, Verdict::Unknown);
    assert!(start.elapsed() < Duration::from_secs(10));
}

#[test]
fn missing_command() {
    let r = solve_external(&two_var_formula(), "/nonexistent/solver-binary", None);
    assert!(matches!(r, Err(SolverError::SolverProcessFailed(_))), "{r:?}");
    let r = solve_external(&two_var_formula(), "   ", None);
    assert!(matches!(r, Err(SolverError::SolverProcessFailed(_))), "{r:?}");
}

#[test]
fn external_agrees_with_internal_on_heawood() {
    let g = generators::heawood();
    let ext = Backend::External { command: common::solver_command() };
    for pages in [2, 3] {
        let f = encode(&g, pages, true, SymmetryBreaking::default()).formula;
        let a = solve_with(&Backend::default(), &f, Budget::UNLIMITED).unwrap();
        let b = solve_with(&ext, &f, Budget::time(Duration::from_secs(120))).unwrap();
        assert_eq!(a.verdict, b.verdict, "pages {pages}");
        assert_eq!(a.verdict, if pages == 2 { Verdict::Unsat } else { Verdict::Sat });
    }
}

#[test]
fn external_agrees_with_internal_on_corpus_sample() {
    // Every 25th connected graph on at most 7 vertices; spawning the
    // external process dominates, so the whole corpus is left to the oracle
    // comparison.
    let ext = Backend::External { command: common::solver_command() };
    let graphs = common::connected_graphs(7);
    for g in graphs.iter().step_by(25) {
        for dispersable in [false, true] {
            let pages = 2;
            let f = encode(g, pages, dispersable, SymmetryBreaking::default()).formula;
            let a = solve_with(&Backend::default(), &f, Budget::UNLIMITED).unwrap();
            let b = solve_with(&ext, &f, Budget::time(Duration::from_secs(60))).unwrap();
            assert_eq!(a.verdict, b.verdict, "{:?} dispersable={dispersable}", g.edges());
        }
    }
}

#[test]
fn portfolio_matches_single_thread() {
    let g = generators::named_graph("folkman", &[]).unwrap();
    let f = encode(&g, 5, true, SymmetryBreaking::default()).formula;
    let single = solve_with(&Backend::default(), &f, Budget::UNLIMITED).unwrap();
    let multi = solve_with(&Backend::Portfolio { seeds: vec![1, 2, 3] }, &f, Budget::UNLIMITED).unwrap();
    assert_eq!(single.verdict, Verdict::Sat);
    assert_eq!(multi.verdict, Verdict::Sat);
    assert!(f.is_satisfied_by(multi.model.as_ref().unwrap()));
}
