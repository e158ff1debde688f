use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use bdmp::grammar::ScoredGrammar;
use bdmp::matrix::ScoreMatrix;
use bdmp_cli::error::{CliError, EXIT_INPUT, EXIT_MISMATCH, EXIT_PRECONDITION};
use bdmp_cli::formats::{format_sequence, format_strings, parse_sequence, parse_strings};
use bdmp_cli::report::{BenchRow, RunReport};

fn fixture(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(rel)
}

fn bdmp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bdmp"))
        .args(args)
        .env_remove("BDMP_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn bd_multiply_verifies_and_matches_naive_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (fixture("matrices/a64.txt"), fixture("matrices/b64.txt"));
    let bd = dir.path().join("bd.txt");
    let naive = dir.path().join("naive.txt");
    let report = dir.path().join("report.json");
    let o = bdmp(&["multiply", "--a", p(&a), "--b", p(&b), "--out", p(&bd), "--verify", "--seed", "3", "--report", p(&report)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = bdmp(&["multiply", "--a", p(&a), "--b", p(&b), "--out", p(&naive), "--mode", "naive", "--seed", "3"]);
    assert!(o.status.success());
    assert_eq!(fs::read(&bd).unwrap(), fs::read(&naive).unwrap());
    let r: RunReport = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r.config.seed, 3);
    assert_eq!(r.config.w, Some(1));
    assert_eq!(r.phase_ms.len(), 3);
    assert!(stdout(&o).contains(&r.checksum));
}

#[test]
fn every_multiply_mode_agrees() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (fixture("matrices/a64.txt"), fixture("matrices/b64.txt"));
    let mut outputs = Vec::new();
    for mode in ["naive", "small", "bd", "bd-rows", "bd-cols"] {
        let out = dir.path().join(format!("{mode}.txt"));
        let o = bdmp(&["multiply", "--a", p(&a), "--b", p(&b), "--out", p(&out), "--mode", mode, "--verify", "--seed", "1"]);
        assert!(o.status.success(), "{mode}: {}", stderr(&o));
        outputs.push(fs::read(&out).unwrap());
    }
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn too_small_width_reports_a_cell() {
    let dir = tempfile::tempdir().unwrap();
    let a = fixture("matrices/a64.txt");
    let o = bdmp(&["multiply", "--a", p(&a), "--b", p(&a), "--out", p(&dir.path().join("c")), "--w", "0", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(EXIT_PRECONDITION));
    assert!(stderr(&o).contains("entries ("), "{}", stderr(&o));
}

#[test]
fn malformed_inputs_exit_with_the_format_code() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "2 2\n1 2\n3\n").unwrap();
    let o = bdmp(&["multiply", "--a", p(&bad), "--b", p(&bad), "--out", p(&dir.path().join("c")), "--seed", "1"]);
    assert_eq!(o.status.code(), Some(EXIT_INPUT));
    assert!(stderr(&o).contains("line 3"));
    let o = bdmp(&["multiply", "--a", p(&dir.path().join("missing")), "--b", p(&bad), "--out", "x", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(EXIT_INPUT));
    let o = bdmp(&["led", "--grammar", p(&fixture("grammars/dyck.cfg")), "--input", p(&fixture("strings/osg.txt")), "--seed", "1"]);
    assert_eq!(o.status.code(), Some(EXIT_INPUT));
}

#[test]
fn dimension_mismatch_is_a_precondition_failure() {
    let dir = tempfile::tempdir().unwrap();
    let small = dir.path().join("s.txt");
    fs::write(&small, "1 2\n0 1\n").unwrap();
    let o = bdmp(&["multiply", "--a", p(&small), "--b", p(&small), "--out", p(&dir.path().join("c")), "--mode", "naive", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(EXIT_PRECONDITION));
}

#[test]
fn general_grammars_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.cfg");
    fs::write(&g, "start S\n0 S -> 'a' S 'b'\n").unwrap();
    let o = bdmp(&["parse", "--grammar", p(&g), "--input", p(&fixture("strings/dyck.txt")), "--seed", "1"]);
    assert_eq!(o.status.code(), Some(EXIT_PRECONDITION));
}

#[test]
fn application_commands() {
    let o = bdmp(&["osg", "--input", p(&fixture("strings/osg.txt")), "--oracle", "--seed", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let first: u64 = stdout(&o).lines().next().unwrap().parse().unwrap();
    assert!(first <= 11);
    assert_eq!(stdout(&o), "11\n7\n");

    let o = bdmp(&["rna", "--input", p(&fixture("strings/rna.txt")), "--oracle", "--seed", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "2 0\n0 2\n2 1\n");

    let o = bdmp(&["led", "--grammar", p(&fixture("grammars/dyck.cfg")), "--input", p(&fixture("strings/dyck.txt")), "--oracle", "--seed", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "0\n1\n1\n2\n");

    let o = bdmp(&["parse", "--grammar", p(&fixture("grammars/dyck.cfg")), "--input", p(&fixture("strings/dyck.txt")), "--oracle", "--engine", "cyk", "--seed", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "0\ninf\ninf\ninf\n");
}

#[test]
fn convolve_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.txt");
    let o = bdmp(&[
        "convolve",
        "--a",
        p(&fixture("sequences/smooth.txt")),
        "--b",
        p(&fixture("sequences/rough.txt")),
        "--out",
        p(&out),
        "--verify",
        "--seed",
        "4",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(parse_sequence(&fs::read_to_string(&out).unwrap()).unwrap().len(), 127);
    let o = bdmp(&[
        "convolve",
        "--a",
        p(&fixture("sequences/rough.txt")),
        "--b",
        p(&fixture("sequences/smooth.txt")),
        "--bd-side",
        "a",
        "--w",
        "1",
        "--out",
        p(&out),
        "--seed",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(EXIT_PRECONDITION));
}

#[test]
fn missing_seed_is_drawn_and_printed() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let o = bdmp(&["osg", "--input", p(&fixture("strings/osg.txt")), "--report", p(&report)]);
    assert!(o.status.success());
    let line = stderr(&o).lines().find(|l| l.starts_with("seed ")).expect("seed printed").to_string();
    let seed: u64 = line[5..].parse().unwrap();
    let r: RunReport = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r.config.seed, seed);
}

#[test]
fn environment_overrides_flags() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let o = Command::new(env!("CARGO_BIN_EXE_bdmp"))
        .args(["bench", "--sizes", "16", "--modes", "deterministic"])
        .env("BDMP_SEED", "77")
        .env("BDMP_REPORT", &report)
        .env("BDMP_DELTAS", "2,4")
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(!stderr(&o).contains("seed "));
    assert_eq!(stdout(&o).lines().count(), 2);
    let r: RunReport = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r.config.seed, 77);
}

#[test]
fn bench_rows_cover_the_grid_and_repeat_exactly() {
    let run = |threads: &str| {
        let o = bdmp(&[
            "bench", "--sizes", "16,32", "--widths", "0,2", "--deltas", "2,n", "--rhos", "0,3", "--seed", "9", "--threads", threads,
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
        stdout(&o)
            .lines()
            .map(|l| serde_json::from_str::<BenchRow>(l).unwrap())
            .collect::<Vec<_>>()
    };
    let rows = run("1");
    assert_eq!(rows.len(), 2 * 2 * 2 * 2 * 2);
    assert!(rows.iter().all(|r| r.verified == Some(true)));
    let sums = |rows: &[BenchRow]| rows.iter().map(|r| r.checksum.clone()).collect::<Vec<_>>();
    assert_eq!(sums(&rows), sums(&run("4")));
    assert_eq!(sums(&rows), sums(&run("1")));
}

#[test]
fn bench_writes_json_lines_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bench.jsonl");
    let o = bdmp(&["bench", "--sizes", "8", "--out", p(&out), "--seed", "2"]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(&out).unwrap().lines().count(), 2);
}

#[test]
fn file_formats_round_trip() {
    let text = fs::read_to_string(fixture("matrices/a64.txt")).unwrap();
    let m = ScoreMatrix::parse_text(&text).unwrap();
    assert_eq!(m.to_text(), text);
    assert_eq!(ScoreMatrix::parse_text(&m.to_text()).unwrap(), m);

    let seq = fs::read_to_string(fixture("sequences/smooth.txt")).unwrap();
    assert_eq!(format_sequence(&parse_sequence(&seq).unwrap()), seq);

    let strings = fs::read_to_string(fixture("strings/rna.txt")).unwrap();
    assert_eq!(format_strings(&parse_strings(&strings)), strings);

    for entry in fs::read_dir(fixture("grammars")).unwrap() {
        let g = ScoredGrammar::parse_text(&fs::read_to_string(entry.unwrap().path()).unwrap()).unwrap();
        let written = g.to_text();
        let again = ScoredGrammar::parse_text(&written).unwrap();
        let sorted = |t: &str| {
            let mut v: Vec<String> = t.lines().map(str::to_string).collect();
            v.sort();
            v
        };
        assert_eq!(sorted(&again.to_text()), sorted(&written));
        assert_eq!(ScoredGrammar::parse_text(&again.to_text()).unwrap().to_text(), again.to_text());
    }
}

#[test]
fn exit_code_taxonomy() {
    use bdmp::error::Error;
    assert_eq!(CliError::Mismatch("x".into()).exit_code(), EXIT_MISMATCH);
    assert_eq!(CliError::Core(Error::Internal("x".into())).exit_code(), EXIT_MISMATCH);
    assert_eq!(CliError::Core(Error::UnknownSymbol("x".into())).exit_code(), EXIT_INPUT);
    assert_eq!(CliError::Core(Error::Overflow).exit_code(), EXIT_PRECONDITION);
}
