//! DIMACS CNF output and SAT-competition style solver output parsing.

use std::fmt::Write as _;

use thiserror::Error;

use crate::encoding::{CnfFormula, Lit, Model};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsError {
    #[error("malformed solver output: {0}")]
    MalformedSolverOutput(String),
    #[error("malformed DIMACS at line {line}: {reason}")]
    MalformedCnf { line: usize, reason: String },
}

/// `p cnf <vars> <clauses>` followed by one 0-terminated clause per line.
pub fn to_dimacs(f: &CnfFormula) -> String {
    let mut out = String::with_capacity(16 * f.clauses.len() + 32);
    let _ = writeln!(out, "p cnf {} {}", f.var_count, f.clauses.len());
    for clause in &f.clauses {
        for l in clause {
            let _ = write!(out, "{l} ");
        }
        out.push_str("0\n");
    }
    out
}

pub fn parse_dimacs(text: &str) -> Result<CnfFormula, DimacsError> {
    let err = |line: usize, reason: &str| DimacsError::MalformedCnf { line, reason: reason.to_string() };
    let mut header: Option<(u32, usize)> = None;
    let mut f = CnfFormula::default();
    let mut current: Vec<Lit> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('c') || t.starts_with('%') {
            continue;
        }
        if t.starts_with('p') {
            let parts: Vec<_> = t.split_whitespace().collect();
            if parts.len() != 4 || parts[1] != "cnf" {
                return Err(err(line_no, "bad problem line"));
            }
            let vars = parts[2].parse().map_err(|_| err(line_no, "bad variable count"))?;
            let clauses = parts[3].parse().map_err(|_| err(line_no, "bad clause count"))?;
            header = Some((vars, clauses));
            f.var_count = vars;
            continue;
        }
        if header.is_none() {
            return Err(err(line_no, "clause before problem line"));
        }
        for tok in t.split_whitespace() {
            let l: Lit = tok.parse().map_err(|_| err(line_no, "bad literal"))?;
            if l == 0 {
                f.clauses.push(std::mem::take(&mut current));
            } else {
                if l.unsigned_abs() > f.var_count {
                    return Err(err(line_no, "literal exceeds variable count"));
                }
                current.push(l);
            }
        }
    }
    if !current.is_empty() {
        f.clauses.push(current);
    }
    match header {
        None => Err(err(0, "missing problem line")),
        Some((_, clauses)) if clauses != f.clauses.len() => {
            Err(err(0, &format!("header announces {clauses} clauses, found {}", f.clauses.len())))
        }
        Some(_) => Ok(f),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverAnswer {
    Sat(Model),
    Unsat,
    Unknown,
}

/// Reads `s SATISFIABLE` / `s UNSATISFIABLE` / `s UNKNOWN` and the `v` lines.
/// Comment and other lines are ignored. The model covers the largest
/// variable mentioned; callers pad or check it against their formula.
pub fn parse_solver_output(text: &str) -> Result<SolverAnswer, DimacsError> {
    let malformed = |s: &str| DimacsError::MalformedSolverOutput(s.to_string());
    let mut status: Option<&str> = None;
    let mut lits: Vec<Lit> = Vec::new();
    let mut terminated = false;
    for line in text.lines() {
        let t = line.trim();
        if let Some(rest) = t.strip_prefix("s ") {
            if status.is_some() {
                return Err(malformed("more than one status line"));
            }
            status = Some(rest.trim());
        } else if let Some(rest) = t.strip_prefix('v') {
            if !(rest.is_empty() || rest.starts_with(char::is_whitespace)) {
                continue;
            }
            for tok in rest.split_whitespace() {
                let l: Lit = tok.parse().map_err(|_| malformed(&format!("bad literal `{tok}`")))?;
                if l == 0 {
                    terminated = true;
                } else {
                    lits.push(l);
                }
            }
        }
    }
    match status {
        Some("SATISFIABLE") => {
            if !terminated {
                return Err(malformed("model is not 0-terminated"));
            }
            let max = lits.iter().map(|l| l.unsigned_abs()).max().unwrap_or(0);
            Ok(SolverAnswer::Sat(Model::from_literals(max, &lits)))
        }
        Some("UNSATISFIABLE") => Ok(SolverAnswer::Unsat),
        Some("UNKNOWN") | Some("INDETERMINATE") => Ok(SolverAnswer::Unknown),
        Some(other) => Err(malformed(&format!("unknown status `{other}`"))),
        None => Err(malformed("no status line")),
    }
}
