use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_vamp-bench");
const ONE_HALLWAY_44: &str = include_str!("../../core/tests/golden/one_hallway_44.txt");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn field(stdout: &str, key: &str) -> String {
    stdout
        .split_whitespace()
        .find_map(|kv| kv.strip_prefix(&format!("{key}=")))
        .unwrap_or_else(|| panic!("{key} missing in {stdout:?}"))
        .to_string()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn gen_writes_the_golden_map() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("map.txt");
    let res = run(&["gen", "--kind", "one-hallway", "--size", "44", "--out", p(&out)]);
    assert!(res.status.success(), "{res:?}");
    assert_eq!(std::fs::read_to_string(&out).unwrap(), ONE_HALLWAY_44);
}

#[test]
fn solve_agrees_across_methods() {
    let dir = tempfile::tempdir().unwrap();
    let map = dir.path().join("map.txt");
    std::fs::write(&map, ONE_HALLWAY_44).unwrap();
    let csv = dir.path().join("row.csv");
    let a = run(&["solve", "--map", p(&map), "--method", "baseline", "--m", "32"]);
    let b = run(&["solve", "--map", p(&map), "--method", "fpnnt", "--m", "32", "--csv", p(&csv)]);
    assert!(a.status.success() && b.status.success());
    let (a, b) = (String::from_utf8(a.stdout).unwrap(), String::from_utf8(b.stdout).unwrap());
    for key in ["steps", "violation_cells", "nodes_expanded"] {
        assert_eq!(field(&a, key), field(&b, key), "{key}");
    }
    assert_eq!(field(&a, "steps"), "42");
    let rows = vamp_bench::read_csv(std::fs::File::open(&csv).unwrap()).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].method, "fpnnt");
}

#[test]
fn solve_reports_no_path_with_exit_code_one() {
    let dir = tempfile::tempdir().unwrap();
    let map = dir.path().join("blocked.txt");
    // The goal row is cut off by a wall the robot cannot pass.
    let text = ONE_HALLWAY_44.replacen("#...........#", "#############", 1);
    std::fs::write(&map, text).unwrap();
    let res = run(&["solve", "--map", p(&map), "--method", "fpnnt"]);
    assert_eq!(res.status.code(), Some(1), "{res:?}");
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = p(dir.path());
    for args in [
        vec!["bench", "--kind", "one-hallway", "--sizes", "", "--trials", "1", "--out", out],
        vec!["bench", "--kind", "one-hallway", "--sizes", "100,50", "--out", out],
        vec!["bench", "--kind", "one-hallway", "--sizes", "44", "--trials", "0", "--out", out],
        vec!["bench", "--kind", "no-such-domain", "--sizes", "44", "--out", out],
        vec!["bench", "--kind", "one-hallway", "--sizes", "44", "--out", out, "--frobnicate"],
        vec!["gen", "--kind", "one-hallway", "--size", "10", "--out", out],
        vec!["solve", "--map", "/definitely/not/here.txt", "--method", "quantum"],
    ] {
        let res = run(&args);
        assert_eq!(res.status.code(), Some(2), "{args:?}: {res:?}");
    }
}

#[test]
fn malformed_map_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let map = dir.path().join("bad.txt");
    std::fs::write(&map, "vamp-grid v1 3 3 1 1 N\n###\n#?#\n###\n").unwrap();
    let res = run(&["solve", "--map", p(&map)]);
    assert_eq!(res.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&res.stderr).contains("line 3"));
}

#[test]
fn bench_writes_csv_and_charts() {
    let dir = tempfile::tempdir().unwrap();
    let out = p(dir.path());
    let res = run(&[
        "bench",
        "--kind",
        "horseshoe-hallway",
        "--sizes",
        "44,60",
        "--trials",
        "2",
        "--m",
        "8",
        "--out",
        out,
        "--svg",
    ]);
    assert!(res.status.success(), "{res:?}");
    let rows = vamp_bench::read_csv(std::fs::File::open(dir.path().join("horseshoe-hallway.csv")).unwrap()).unwrap();
    assert_eq!(rows.len(), 2 * 2 * 2);
    assert!(rows.iter().all(|r| r.m == 8 && r.steps > 0));
    for name in ["horseshoe-hallway_time.svg", "horseshoe-hallway_memory.svg"] {
        let svg = std::fs::read_to_string(dir.path().join(name)).unwrap();
        roxmltree::Document::parse(&svg).unwrap();
    }
}

#[test]
fn selftest_passes() {
    let res = run(&["selftest"]);
    let stdout = String::from_utf8_lossy(&res.stdout);
    assert!(res.status.success(), "{stdout}");
    assert!(!stdout.contains("FAIL"));
    assert!(stdout.lines().count() >= 9);
}
