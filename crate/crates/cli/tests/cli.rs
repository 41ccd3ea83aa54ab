use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rootwork::format::parse_system;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rootwork"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn gen(dir: &Path, kind: &str, extra: &[&str]) -> PathBuf {
    let path = dir.join(format!("{kind}.txt"));
    let mut args = vec!["gen", kind, "--out", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = run(&args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn root_of_diamond() {
    let dir = tempfile::tempdir().unwrap();
    let f = gen(dir.path(), "diamond", &[]);
    let out = run(&["root", p(&f), "a"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "d\n");
}

#[test]
fn root_of_fork_lists_both() {
    let dir = tempfile::tempdir().unwrap();
    let f = gen(dir.path(), "fork", &[]);
    let out = run(&["root", p(&f), "a"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "{b, c}\n");
}

#[test]
fn color_check_exit_codes() {
    let ok = run(&["color-check", "2", "3", "5"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout(&ok), "admissible\n");

    let bad = run(&["color-check", "2", "3", "6"]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(stdout(&bad), "inadmissible\n");

    assert_eq!(run(&["color-check"]).status.code(), Some(0));
    assert_eq!(run(&["color-check", "4"]).status.code(), Some(1));
    assert_eq!(
        run(&["color-check", "2", "2", "2", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["color-check", "1", "1"]).status.code(), Some(2));
}

#[test]
fn check_reports_both_properties() {
    let dir = tempfile::tempdir().unwrap();
    let d = gen(dir.path(), "diamond", &[]);
    let out = run(&["check", p(&d)]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("cf: holds"));
    assert!(text.contains("  a 2\n"));
    assert!(text.contains("ee: holds"));

    let f = gen(dir.path(), "fork", &[]);
    let out = run(&["check", p(&f)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("ee: fails at a"));
}

#[test]
fn check_reports_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("cycle.txt");
    std::fs::write(&f, "v a\nv b\ne a b\ne b a\n").unwrap();
    let out = run(&["check", p(&f)]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("cf: fails (cycle a -> b -> a)"), "{text}");
    assert!(text.contains("ee: undefined"));
}

#[test]
fn parse_errors_exit_two_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.txt");
    std::fs::write(&f, "v a\n# fine\ne a zz\n").unwrap();
    let out = run(&["check", p(&f)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let d = gen(dir.path(), "diamond", &[]);
    assert_eq!(run(&["root", p(&d), "nope"]).status.code(), Some(2));
}

#[test]
fn machine_verify_records() {
    let dir = tempfile::tempdir().unwrap();
    let f = gen(dir.path(), "ee-failure", &[]);
    let out = run(&["--format", "machine", "verify", p(&f)]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines,
        [
            "k\tr1,r2\t2",
            "p\tr1,r2\t1",
            "r1\tr1\t0",
            "r2\tr2\t0",
            "x\tr1\t1",
            "y\tr2\t1",
        ]
    );
}

#[test]
fn least_counterexample_is_the_deeper_vertex() {
    let dir = tempfile::tempdir().unwrap();
    let f = gen(dir.path(), "ee-failure", &[]);
    let out = run(&["counterexample", p(&f)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "k: {r1, r2} (2 edge classes)\n");

    let d = gen(dir.path(), "diamond", &[]);
    let out = run(&["counterexample", p(&d)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "none\n");
}

#[test]
fn gen_round_trips_through_parser() {
    let dir = tempfile::tempdir().unwrap();
    for (kind, extra) in [
        ("diamond", vec![]),
        ("fork", vec![]),
        ("ee-failure", vec![]),
        ("factor", vec!["--n", "60"]),
        (
            "random",
            vec!["--vertices", "9", "--p", "0.4", "--seed", "5"],
        ),
    ] {
        let f = gen(dir.path(), kind, &extra);
        let text = std::fs::read_to_string(&f).unwrap();
        let sys = parse_system(&text).unwrap();
        assert_eq!(rootwork::format::write_system(&sys), text, "{kind}");
    }
}

#[test]
fn factor_demo_root() {
    let dir = tempfile::tempdir().unwrap();
    let f = gen(dir.path(), "factor", &["--n", "12"]);
    let out = run(&["root", p(&f), "12"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "2*2*3\n");
}

#[test]
fn random_dag_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let f = gen(
        dir.path(),
        "random",
        &["--vertices", "7", "--p", "0.3", "--seed", "42"],
    );
    let out = run(&["verify", p(&f)]);
    assert!(stdout(&out).contains("theorem: consistent"));
    assert!(run(&["gen", "random", "--p", "1.5"]).status.code() == Some(2));
}

#[test]
fn fullcut_and_cut_on_handle_demo() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("h.txt");
    std::fs::write(
        &f,
        "# demo\nr a\nr b\nr c\nr d\ng x\ng y\nl x a\nl x b\nl x c\nl x d\nl y c\nl y d\n",
    )
    .unwrap();

    let out = run(&["fullcut", p(&f), "--bound", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("ee holds, unique root agrees"), "{text}");
    let result = rootwork::format::parse_handle_graph(&text).unwrap().graph;
    assert_eq!(result.green_count(), 4);

    let out = run(&["cut", p(&f), "x"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(
        text.starts_with("# 3 link class(es) at x\n# class 0: a\n"),
        "{text}"
    );

    let out = run(&["cut", p(&f), "y"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("y admits no cut"));

    assert_eq!(run(&["cut", p(&f), "a"]).status.code(), Some(2));
    assert_eq!(
        run(&["fullcut", p(&f), "--bound", "1"]).status.code(),
        Some(2)
    );
}
