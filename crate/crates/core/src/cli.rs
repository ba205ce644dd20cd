//! The `dispersable` command line.
//!
//! Exit codes: 0 success (an UNSAT answer is a success), 1 internal or
//! solver-process failure, 2 bad input, 3 verification failure, 4 solver
//! gave up within its budget.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::barnette::{self, Color};
use crate::book::verify;
use crate::dimacs::to_dimacs;
use crate::encoding::{encode, SymmetryBreaking};
use crate::generators;
use crate::graph::Graph;
use crate::io::{parse_embedding, parse_graph, parse_rotation, write_embedding, write_graph, write_rotation};
use crate::render::{render_svg, RenderSpec};
use crate::solver::{decide_dbt, solve_with, Backend, Budget, DbtOutcome, DecideOptions, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_UNKNOWN: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "dispersable", version, about = "Book embeddings with matching pages")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a named graph.
    Gen {
        name: String,
        /// Integer parameters, e.g. the ring length of a prism.
        params: Vec<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the rotation system (polyhedral instances only).
        #[arg(short, long)]
        rotation: Option<PathBuf>,
    },
    /// Check an embedding; exits 3 on violations.
    Verify {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(short, long)]
        embedding: PathBuf,
        #[arg(long)]
        dispersable: bool,
    },
    /// Write the CNF for a fixed page count.
    Encode {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(short, long)]
        pages: usize,
        #[arg(long)]
        dispersable: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Variable map, one `<var> <family> <args>` line per variable.
        #[arg(long)]
        map: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = SymmetryChoice::Default)]
        symmetry: SymmetryChoice,
    },
    /// Decide whether a layout with the given page count exists.
    Solve {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(short, long)]
        pages: usize,
        #[arg(long)]
        dispersable: bool,
        #[command(flatten)]
        solver: SolverArgs,
        /// Where to write the witness; printed after the verdict otherwise.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Find the least page count in a range.
    Dbt {
        #[arg(short, long)]
        graph: PathBuf,
        /// Defaults to the maximum degree.
        #[arg(long)]
        lower: Option<usize>,
        /// Defaults to `lower + 4`.
        #[arg(long)]
        upper: Option<usize>,
        /// Ordinary book thickness instead of the dispersable one.
        #[arg(long)]
        ordinary: bool,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Three-page layout of a 3-connected cubic bipartite plane graph.
    Barnette {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(short, long)]
        rotation: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Print one line per processed face to stderr.
        #[arg(long)]
        trace: bool,
        /// Write the two-page ordinary layout instead, green merged into
        /// the given color.
        #[arg(long, value_enum)]
        two_page: Option<MergeTarget>,
    },
    /// Draw an embedding as an SVG chord diagram.
    Render {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(short, long)]
        embedding: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        no_labels: bool,
    },
}

#[derive(Debug, Args)]
struct SolverArgs {
    /// `internal`, `portfolio:<k>`, or `cmd:<solver command>`.
    #[arg(long, default_value = "internal")]
    backend: String,
    /// Time budget in seconds.
    #[arg(long)]
    budget: Option<f64>,
    /// Conflict budget (internal backends).
    #[arg(long)]
    conflicts: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = SymmetryChoice::Default)]
    symmetry: SymmetryChoice,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SymmetryChoice {
    /// Pin vertex 0 first and edge 0 to page 0.
    Default,
    None,
    /// Every rule, including the star pinning for dispersable layouts.
    All,
}

impl SymmetryChoice {
    fn flags(self) -> SymmetryBreaking {
        match self {
            SymmetryChoice::Default => SymmetryBreaking::default(),
            SymmetryChoice::None => SymmetryBreaking::NONE,
            SymmetryChoice::All => SymmetryBreaking::ALL,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MergeTarget {
    Red,
    Blue,
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

fn bad_input(message: impl std::fmt::Display) -> Failure {
    Failure { code: EXIT_BAD_INPUT, message: message.to_string() }
}

fn failure(message: impl std::fmt::Display) -> Failure {
    Failure { code: EXIT_FAILURE, message: message.to_string() }
}

type Outcome = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_BAD_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
            } else {
                let _ = out.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| bad_input(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    parse_graph(&read(path)?).map_err(|e| bad_input(format!("{}: {e}", path.display())))
}

fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| failure(format!("{}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(failure),
    }
}

fn budget(args: &SolverArgs) -> Result<Budget, Failure> {
    let time = match args.budget {
        Some(s) if !(s.is_finite() && s >= 0.0) => return Err(bad_input(format!("bad budget {s}"))),
        Some(s) => Some(Duration::from_secs_f64(s)),
        None => None,
    };
    Ok(Budget { time, conflicts: args.conflicts })
}

fn backend(args: &SolverArgs) -> Result<Backend, Failure> {
    Backend::parse(&args.backend, args.seed).ok_or_else(|| bad_input(format!("unknown backend `{}`", args.backend)))
}

/// Writes a witness, then reads it back and verifies it from disk.
fn write_witness(
    g: &Graph,
    emb: &crate::book::BookEmbedding,
    dispersable: bool,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Outcome {
    let text = write_embedding(g, emb);
    emit(path, &text, out)?;
    let reread = match path {
        Some(p) => read(p)?,
        None => text,
    };
    let back = parse_embedding(&reread, g).map_err(|e| failure(format!("witness does not parse back: {e}")))?;
    let ok = verify(g, &back, dispersable).map(|r| r.valid()).unwrap_or(false);
    Ok(if ok { EXIT_OK } else { EXIT_INVALID })
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Gen { name, params, output, rotation } => {
            let g = generators::named_graph(&name, &params).map_err(bad_input)?;
            if let Some(rpath) = rotation {
                let k = params.first().copied();
                let rs = generators::barnette_instance(&name, k).map_err(bad_input)?;
                emit(Some(&rpath), &write_rotation(&rs), out)?;
            }
            emit(output.as_deref(), &write_graph(&g), out)?;
            Ok(EXIT_OK)
        }
        Command::Verify { graph, embedding, dispersable } => {
            let g = load_graph(&graph)?;
            let emb = parse_embedding(&read(&embedding)?, &g)
                .map_err(|e| bad_input(format!("{}: {e}", embedding.display())))?;
            let report = verify(&g, &emb, dispersable).map_err(bad_input)?;
            if report.valid() {
                let _ = writeln!(out, "valid");
                return Ok(EXIT_OK);
            }
            let _ = writeln!(out, "invalid");
            for v in &report.violations {
                let (e, f) = v.edges;
                let _ = writeln!(err, "{:?}: {:?} {:?}", v.kind, g.edge(e), g.edge(f));
            }
            Ok(EXIT_INVALID)
        }
        Command::Encode { graph, pages, dispersable, output, map, symmetry } => {
            let g = load_graph(&graph)?;
            if pages == 0 {
                return Err(bad_input("page count must be positive"));
            }
            let enc = encode(&g, pages, dispersable, symmetry.flags());
            if let Some(m) = map {
                emit(Some(&m), &enc.varmap.to_sidecar(), out)?;
            }
            emit(output.as_deref(), &to_dimacs(&enc.formula), out)?;
            let _ = writeln!(
                err,
                "{} variables, {} clauses",
                enc.formula.var_count,
                enc.formula.clauses.len()
            );
            Ok(EXIT_OK)
        }
        Command::Solve { graph, pages, dispersable, solver, output } => {
            let g = load_graph(&graph)?;
            if pages == 0 {
                return Err(bad_input("page count must be positive"));
            }
            let enc = encode(&g, pages, dispersable, solver.symmetry.flags());
            let result = solve_with(&backend(&solver)?, &enc.formula, budget(&solver)?).map_err(failure)?;
            let s = &result.stats;
            let _ = writeln!(
                err,
                "decisions {} propagations {} conflicts {} elapsed {:.3}s",
                s.decisions,
                s.propagations,
                s.conflicts,
                s.elapsed.as_secs_f64()
            );
            let _ = writeln!(out, "{}", result.verdict);
            match result.verdict {
                Verdict::Sat => {
                    let model = result.model.as_ref().expect("SAT carries a model");
                    let emb = enc.decode(&g, model).map_err(failure)?;
                    write_witness(&g, &emb, dispersable, output.as_deref(), out)
                }
                Verdict::Unsat => Ok(EXIT_OK),
                Verdict::Unknown => Ok(EXIT_UNKNOWN),
            }
        }
        Command::Dbt { graph, lower, upper, ordinary, solver, output } => {
            let g = load_graph(&graph)?;
            let lower = lower.unwrap_or(g.max_degree()).max(1);
            let upper = upper.unwrap_or(lower + 4);
            let opts = DecideOptions {
                dispersable: !ordinary,
                backend: backend(&solver)?,
                budget: budget(&solver)?,
                symmetry: solver.symmetry.flags(),
            };
            let result = decide_dbt(&g, lower, upper, &opts).map_err(|e| match e {
                crate::solver::DecideError::BadRange { .. } => bad_input(e),
                other => failure(other),
            })?;
            for (p, v) in &result.verdicts {
                let _ = writeln!(err, "{p} pages: {v}");
            }
            match result.outcome {
                DbtOutcome::Found { pages, witness } => {
                    let _ = writeln!(out, "{pages}");
                    write_witness(&g, &witness, !ordinary, output.as_deref(), out)
                }
                DbtOutcome::NoneInRange => {
                    let _ = writeln!(out, "none in [{lower}, {upper}]");
                    Ok(EXIT_OK)
                }
                DbtOutcome::Unknown => {
                    let _ = writeln!(out, "UNKNOWN");
                    Ok(EXIT_UNKNOWN)
                }
            }
        }
        Command::Barnette { graph, rotation, output, trace, two_page } => {
            let g = load_graph(&graph)?;
            let rs = parse_rotation(&read(&rotation)?, g.clone())
                .map_err(|e| bad_input(format!("{}: {e}", rotation.display())))?;
            let l = barnette::layout(&rs).map_err(|e| match e {
                barnette::BarnetteError::InvariantViolated { .. } | barnette::BarnetteError::Internal(_) => failure(e),
                other => bad_input(other),
            })?;
            if trace {
                for line in &l.trace {
                    let _ = writeln!(err, "{line}");
                }
            }
            let _ = writeln!(
                err,
                "cycle through {} vertices with {} graph edges on it",
                l.cycle.cycle.len(),
                l.cycle.edges_on.len()
            );
            match two_page {
                None => write_witness(&g, &l.embedding, true, output.as_deref(), out),
                Some(t) => {
                    let target = match t {
                        MergeTarget::Red => Color::Red,
                        MergeTarget::Blue => Color::Blue,
                    };
                    let emb = barnette::to_two_page(&rs, &l.cycle, &l.edge_coloring, target).map_err(failure)?;
                    write_witness(&g, &emb, false, output.as_deref(), out)
                }
            }
        }
        Command::Render { graph, embedding, output, no_labels } => {
            let g = load_graph(&graph)?;
            let emb = parse_embedding(&read(&embedding)?, &g)
                .map_err(|e| bad_input(format!("{}: {e}", embedding.display())))?;
            let spec = RenderSpec { labels: !no_labels, ..RenderSpec::default() };
            emit(output.as_deref(), &render_svg(&g, &emb, &spec), out)?;
            Ok(EXIT_OK)
        }
    }
}
