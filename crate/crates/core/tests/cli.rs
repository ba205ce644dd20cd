use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use dispersable_core::book::verify;
use dispersable_core::io::{parse_embedding, parse_graph};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dispersable"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn gen(dir: &Path, name: &str, params: &[&str]) -> PathBuf {
    let path = dir.join(format!("{name}.txt"));
    let mut args = vec!["gen", name];
    args.extend_from_slice(params);
    args.extend_from_slice(&["-o", p(&path)]);
    assert_eq!(run(&args).status.code(), Some(0));
    path
}

#[test]
fn dbt_heawood_writes_a_verified_witness() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen(dir.path(), "heawood", &[]);
    let w = dir.path().join("w.txt");
    let o = run(&["dbt", "-g", p(&g), "-o", p(&w)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).trim(), "3");
    let graph = parse_graph(&std::fs::read_to_string(&g).unwrap()).unwrap();
    let emb = parse_embedding(&std::fs::read_to_string(&w).unwrap(), &graph).unwrap();
    assert!(verify(&graph, &emb, true).unwrap().valid());
    assert_eq!(run(&["verify", "-g", p(&g), "-e", p(&w), "--dispersable"]).status.code(), Some(0));
}

#[test]
fn dbt_reports_empty_range_and_bad_range() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen(dir.path(), "heawood", &[]);
    let o = run(&["dbt", "-g", p(&g), "--lower", "1", "--upper", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "none in [1, 2]");
    assert_eq!(run(&["dbt", "-g", p(&g), "--lower", "4", "--upper", "3"]).status.code(), Some(2));
}

#[test]
fn solve_unsat_and_unknown() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen(dir.path(), "heawood", &[]);
    let o = run(&["solve", "-g", p(&g), "-p", "2", "--dispersable"]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "UNSAT"));
    let f = gen(dir.path(), "folkman", &[]);
    let o = run(&["solve", "-g", p(&f), "-p", "4", "--dispersable", "--conflicts", "1"]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(4), "UNKNOWN"));
}

#[test]
fn corrupted_embedding_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen(dir.path(), "cycle", &["4"]);
    let bad = dir.path().join("bad.txt");
    // The whole 4-cycle on one page: planar, but not a matching.
    std::fs::write(&bad, "1\n0 1 2 3\n0 1 0\n1 2 0\n2 3 0\n0 3 0\n").unwrap();
    let o = run(&["verify", "-g", p(&g), "-e", p(&bad), "--dispersable"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(stdout(&o).trim(), "invalid");
    assert_eq!(run(&["verify", "-g", p(&g), "-e", p(&bad)]).status.code(), Some(0));
}

#[test]
fn bad_input_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&["gen", "no-such-graph"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let missing = dir.path().join("missing.txt");
    assert_eq!(run(&["dbt", "-g", p(&missing)]).status.code(), Some(2));
    let broken = dir.path().join("broken.txt");
    std::fs::write(&broken, "3 2\n0 1\n").unwrap();
    assert_eq!(run(&["dbt", "-g", p(&broken)]).status.code(), Some(2));
    let g = gen(dir.path(), "heawood", &[]);
    assert_eq!(run(&["solve", "-g", p(&g), "-p", "0"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "-g", p(&g), "-p", "3", "--backend", "magic"]).status.code(), Some(2));
}

#[test]
fn encode_writes_dimacs_and_map() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen(dir.path(), "heawood", &[]);
    let cnf = dir.path().join("h.cnf");
    let map = dir.path().join("h.map");
    let o = run(&["encode", "-g", p(&g), "-p", "3", "--dispersable", "-o", p(&cnf), "--map", p(&map)]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&cnf).unwrap();
    assert!(text.starts_with("p cnf 364 "), "{}", &text[..40]);
    assert_eq!(std::fs::read_to_string(&map).unwrap().lines().filter(|l| !l.starts_with('c')).count(), 364);
}

#[test]
fn barnette_pipeline_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let rot = dir.path().join("cube.rot");
    let g = dir.path().join("cube.txt");
    assert_eq!(run(&["gen", "cube", "-o", p(&g), "-r", p(&rot)]).status.code(), Some(0));
    let w = dir.path().join("w.txt");
    let o = run(&["barnette", "-g", p(&g), "-r", p(&rot), "-o", p(&w), "--trace"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(run(&["verify", "-g", p(&g), "-e", p(&w), "--dispersable"]).status.code(), Some(0));
    let w2 = dir.path().join("w2.txt");
    let o = run(&["barnette", "-g", p(&g), "-r", p(&rot), "-o", p(&w2), "--two-page", "red"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&w2).unwrap().starts_with("2\n"));

    // K4 is planar and cubic but not bipartite.
    let k4 = dir.path().join("k4.txt");
    std::fs::write(&k4, "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap();
    let k4rot = dir.path().join("k4.rot");
    std::fs::write(&k4rot, "0: 0 1 2\n1: 0 4 3\n2: 1 3 5\n3: 2 5 4\n").unwrap();
    assert_eq!(run(&["barnette", "-g", p(&k4), "-r", p(&k4rot)]).status.code(), Some(2));
}

#[test]
fn render_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let golden = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let svg = dir.path().join("out.svg");
    let o = run(&[
        "render",
        "-g",
        p(&golden.join("k33.txt")),
        "-e",
        p(&golden.join("k33.emb")),
        "-o",
        p(&svg),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&svg).unwrap(), std::fs::read_to_string(golden.join("k33.svg")).unwrap());
}

#[test]
fn help_and_version() {
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    for cmd in ["gen", "verify", "encode", "solve", "dbt", "barnette", "render"] {
        assert!(stdout(&o).contains(cmd), "{cmd} missing from help");
    }
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}
