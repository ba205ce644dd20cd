//! Runs a DIMACS solver as a child process.

use std::io::{Read, Write};
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use super::{record_self_check_failure, SolveOutcome, SolveStats, SolverError, Verdict};
use crate::dimacs::{parse_solver_output, to_dimacs, SolverAnswer};
use crate::encoding::{CnfFormula, Model};

const POLL: Duration = Duration::from_millis(10);

/// Writes `f` to a temporary file, runs `command <path>` and parses its
/// standard output. The exit status is ignored. On timeout the child is
/// killed and the verdict is Unknown. Models are re-checked against `f`.
pub fn solve_external(f: &CnfFormula, command: &str, time: Option<Duration>) -> Result<SolveOutcome, SolverError> {
    let start = Instant::now();
    let mut parts = command.split_whitespace();
    let program = parts.next().ok_or_else(|| SolverError::SolverProcessFailed("empty command".into()))?;

    let mut file = tempfile::Builder::new()
        .suffix(".cnf")
        .tempfile()
        .map_err(|e| SolverError::SolverProcessFailed(format!("temporary file: {e}")))?;
    file.write_all(to_dimacs(f).as_bytes())
        .and_then(|_| file.flush())
        .map_err(|e| SolverError::SolverProcessFailed(format!("writing formula: {e}")))?;

    let mut child = Command::new(program)
        .args(parts)
        .arg(file.path())
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .map_err(|e| SolverError::SolverProcessFailed(format!("spawning `{program}`: {e}")))?;

    let mut stdout = child.stdout.take().expect("piped stdout");
    let reader = std::thread::spawn(move || {
        let mut text = String::new();
        stdout.read_to_string(&mut text).map(|_| text)
    });

    let timed_out = loop {
        match child.try_wait() {
            Ok(Some(_)) => break false,
            Ok(None) => {}
            Err(e) => return Err(SolverError::SolverProcessFailed(format!("waiting for solver: {e}"))),
        }
        if time.is_some_and(|t| start.elapsed() >= t) {
            let _ = child.kill();
            let _ = child.wait();
            break true;
        }
        std::thread::sleep(POLL);
    };
    let text = reader
        .join()
        .map_err(|_| SolverError::SolverProcessFailed("output reader panicked".into()))?
        .map_err(|e| SolverError::SolverProcessFailed(format!("reading output: {e}")))?;
    let stats = SolveStats { elapsed: start.elapsed(), ..SolveStats::default() };
    if timed_out {
        return Ok(SolveOutcome { verdict: Verdict::Unknown, model: None, stats });
    }

    match parse_solver_output(&text)? {
        SolverAnswer::Unsat => Ok(SolveOutcome { verdict: Verdict::Unsat, model: None, stats }),
        SolverAnswer::Unknown => Ok(SolveOutcome { verdict: Verdict::Unknown, model: None, stats }),
        SolverAnswer::Sat(m) => {
            if m.len() > f.var_count as usize {
                return Err(SolverError::MalformedSolverOutput(crate::dimacs::DimacsError::MalformedSolverOutput(
                    format!("model mentions variable {} of {}", m.len(), f.var_count),
                )));
            }
            let mut values = m.values().to_vec();
            values.resize(f.var_count as usize, false);
            let model = Model::new(values);
            if let Some(c) = f.first_falsified(&model) {
                record_self_check_failure();
                return Err(SolverError::RejectedModel(c));
            }
            Ok(SolveOutcome { verdict: Verdict::Sat, model: Some(model), stats })
        }
    }
}
