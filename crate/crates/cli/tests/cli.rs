use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

const U4: &str = "space 4\n0 a b c\n0 1 1 1\n1 0 1/4 1\n1 1/4 0 1\n1 1 1 0\n";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ultralip"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn u4_file(dir: &TempDir) -> PathBuf {
    let p = dir.path().join("u4.txt");
    fs::write(&p, U4).unwrap();
    p
}

#[test]
fn validate_reports_ultrametric() {
    let dir = TempDir::new().unwrap();
    let f = u4_file(&dir);
    let o = run(&["validate", f.to_str().unwrap(), "--format", "tsv"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("is_ultrametric\ttrue\n"));
    assert!(out.contains("min_distance\t1/4\n"));

    let line = dir.path().join("line.txt");
    fs::write(&line, "space 3\n0 1 2\n0 1 2\n1 0 1\n2 1 0\n").unwrap();
    let out = stdout(&run(&["validate", line.to_str().unwrap(), "--format", "tsv"]));
    assert!(out.contains("is_ultrametric\tfalse\n"));
    assert!(out.contains("witness\t0,1,2\n"));
}

#[test]
fn parse_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "space 2\n0 a\n0 1\n2 0\n").unwrap();
    let o = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    assert_eq!(run(&["suite", "nope"]).status.code(), Some(2));
}

#[test]
fn gen_is_deterministic_and_valid() {
    let dir = TempDir::new().unwrap();
    let a = stdout(&run(&["gen", "--points", "8", "--seed", "42"]));
    let b = stdout(&run(&["gen", "--points", "8", "--seed", "42"]));
    assert_eq!(a, b);
    assert!(a.starts_with("dend\n"));
    let p = dir.path().join("g.dend");
    assert!(run(&["gen", "--points", "8", "--seed", "42", "-o", p.to_str().unwrap()]).status.success());
    assert_eq!(fs::read_to_string(&p).unwrap(), a);
    let out = stdout(&run(&["validate", p.to_str().unwrap(), "--format", "tsv"]));
    assert!(out.contains("points\t8\n") && out.contains("is_ultrametric\ttrue\n"));
    let one = stdout(&run(&["gen", "--points", "1", "--seed", "0"]));
    assert_eq!(one, "dend\n0\n");
}

#[test]
fn partition_and_trail() {
    let dir = TempDir::new().unwrap();
    let f = u4_file(&dir);
    let out = stdout(&run(&["partition", f.to_str().unwrap(), "--q", "1/2", "--trail", "b", "--format", "tsv"]));
    assert!(out.contains("2\t1/4\t0,a,b,c\n"));
    assert!(out.contains("## trail\nk\tlevel\tpoint\tdistance\n0\t-1\t0\t1\n1\t0\ta\t1/4\n2\t2\tb\t0\n"));
}

#[test]
fn freenorm_engines_agree() {
    let dir = TempDir::new().unwrap();
    let f = u4_file(&dir);
    let o = run(&["freenorm", f.to_str().unwrap(), "--element", "a:1,b:-1", "--format", "tsv"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("lp\t1/4\n") && out.contains("tree\t1/4\n"));
    assert!(out.contains("lp=tree\tPASS"));
    let out = stdout(&run(&["freenorm", f.to_str().unwrap(), "--element", "c:2", "--engine", "tree", "--format", "tsv"]));
    assert!(out.contains("tree\t2\n"));
}

#[test]
fn ywitness_scan() {
    let dir = TempDir::new().unwrap();
    let f = u4_file(&dir);
    let out = stdout(&run(&["ywitness", f.to_str().unwrap(), "--fn", "", "--eps", "1/2", "--format", "tsv"]));
    assert!(out.contains("N\tN_max\tblocking_pair\tblocking_slope\n1\t4\t-\t-\n"));
}

#[test]
fn extreme_ledger() {
    let dir = TempDir::new().unwrap();
    let f = u4_file(&dir);
    let o = run(&["extreme", f.to_str().unwrap(), "--q", "1/2", "--format", "tsv"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("b\t3/4\t1\n"));
    assert!(out.contains("norm-one\tPASS"));
}

#[test]
fn werner_and_demo() {
    let o = run(&["mideal", "werner", "--grid", "8", "--format", "tsv"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("1\t1\t2\t(1,p)\n"));
    let dir = TempDir::new().unwrap();
    let f = u4_file(&dir);
    let args = ["mideal", "demo", f.to_str().unwrap(), "--q", "1/2", "--N", "2", "--R", "2", "--eps", "1/4", "--seed", "9"];
    let a = run(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&run(&args)));
    let bad = run(&["mideal", "demo", f.to_str().unwrap(), "--q", "1/2", "--N", "1", "--R", "2", "--eps", "1/4"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn presented_space_commands() {
    let out = stdout(&run(&["spherical", "--builtin", "e2_omega_sc", "--depth", "20", "--format", "tsv"]));
    assert!(out.contains("## pseudo-limits\npoint\nω\n"));
    let o = run(&["audit", "--builtin", "e1_not_sc", "--depth", "12", "--phi", "1:1", "--format", "tsv"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("claim2\tPASS"));
    let o = run(&["membed", "--builtin", "discrete_n", "--depth", "12", "--yscale", "4", "--format", "tsv"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("3/2\t1/2\t1/3\n"));
    let o = run(&["membed", "--builtin", "e3_compact", "--depth", "12"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("no subsequence found"));
    assert_eq!(run(&["spherical", "--builtin", "nope"]).status.code(), Some(2));
}

#[test]
fn suite_membed_passes() {
    let o = run(&["suite", "membed", "--format", "tsv"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("# suite membed seed=0\n"));
    assert!(out.contains("\tPASS\t"));
}
