use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn otis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_otis"))
        .args(args)
        .env_remove("OTIS_SIZE_BOUND")
        .output()
        .expect("binary runs")
}

fn run(command: &str) -> Output {
    otis(&command.split_whitespace().collect::<Vec<_>>())
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn construct_edge_list() {
    let out = run("construct -p 2 -q 2 -d 2 --format edgelist");
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines, ["vertices 2", "0 0 1", "0 1 1", "1 0 1", "1 1 1"]);

    let out = run("construct -p 1 -q 4 -d 2 --format edgelist");
    assert_eq!(stdout(&out), "vertices 2\n0 1 2\n1 0 2\n");
}

#[test]
fn construct_rejects_bad_parameters() {
    let out = run("construct -p 3 -q 4 -d 5");
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("d does not divide pq"));
    assert!(stdout(&out).is_empty());

    let out = run("construct -p 3 -q 4 -d 1");
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("d must be greater than 1"));

    let out = run("construct -p 3");
    assert_eq!(code(&out), 2);
}

#[test]
fn other_formats() {
    let dot = stdout(&run("construct -p 1 -q 4 -d 2 --format dot"));
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("0 -> 1").count(), 2);
    let json = stdout(&run("construct -p 1 -q 4 -d 2 --format json"));
    assert_eq!(json.trim(), r#"{"vertices":2,"arcs":[[0,1,2],[1,0,2]]}"#);
}

#[test]
fn orbits_and_layout_test() {
    let out = run("orbits --p-prime 2 --q-prime 2");
    assert_eq!(stdout(&out), "lambda=2; orbits: {0,2} {1}; cyclic: no\n");
    assert_eq!(code(&out), 0);
    let out = run("orbits --p-prime 2 --q-prime 3");
    assert_eq!(stdout(&out), "lambda=1; orbits: {0,1,2,3}; cyclic: yes\n");

    let out = run("layout-test --p-prime 1 -n 2");
    assert_eq!(stdout(&out), "yes (gcd(1,3)=1)\n");
    assert_eq!(code(&out), 0);
    let out = run("layout-test --p-prime 2 -n 3");
    assert_eq!(stdout(&out), "no (gcd(2,4)=2)\n");
    assert_eq!(code(&out), 1);
    let out = run("layout-test --p-prime 9 -n 3");
    assert_eq!(code(&out), 2);
}

#[test]
fn layouts_report() {
    let out = run("layouts -d 2 -n 2");
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("layout_count=2\n"));
    assert!(text.contains("min_p_plus_q=(2,4)\n"));

    let out = run("layouts -d 2 -n 2 --json");
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["layout_count"], 2);
    assert_eq!(report["min_p_plus_q"], serde_json::json!([2, 4]));
}

#[test]
fn layouts_of_a_graph_file() {
    let dir = tempfile::tempdir().unwrap();
    let kd = write(
        dir.path(),
        "k3.txt",
        "vertices 3\n0 0 1\n0 1 1\n0 2 1\n1 0 1\n1 1 1\n1 2 1\n2 0 1\n2 1 1\n2 2 1\n",
    );
    let out = otis(&["layouts", "-d", "3", "--graph", &kd, "--json"]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["layout_count"], 1);
    assert_eq!(report["min_p_plus_q"], serde_json::json!([3, 3]));

    let out = otis(&["layouts", "-d", "2", "--graph", &kd]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("not 2-regular"));
}

#[test]
fn conjecture_report() {
    let out = run("conjecture -d 2 -n 3");
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).ends_with("conjecture at (d=2, n=3): holds\n"));
    let out = run("conjecture -d 2 -n 3 --json");
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["holds"], true);
    assert_eq!(report["report"]["layout_count"], 2);
}

#[test]
fn line_check_verdicts() {
    let out = run("line-check -p 3 -q 4 -d 2");
    assert_eq!(code(&out), 1);
    assert!(
        stdout(&out).starts_with("no: Heuchenne condition of order 1 fails at (u,v,w,x)=(0,2,5,3)")
    );

    let out = run("line-check -p 4 -q 4 -d 2");
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "yes: line digraph of order 1\n");

    let dir = tempfile::tempdir().unwrap();
    let b = stdout(&run("debruijn -d 2 -n 2"));
    let file = write(dir.path(), "b22.txt", &b);
    assert_eq!(code(&otis(&["line-check", "--graph", &file, "-n", "2"])), 0);
    assert_eq!(code(&otis(&["line-check", "--graph", &file, "-n", "3"])), 1);

    let sink = write(dir.path(), "sink.txt", "vertices 2\n0 1 1\n");
    let out = otis(&["line-check", "--graph", &sink]);
    assert_eq!(code(&out), 2);
}

#[test]
fn isomorphism_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let b = dir.path().join("b.txt");
    let h = dir.path().join("h.txt");
    let bad = dir.path().join("h44.txt");
    let (b, h, bad) = (
        b.to_str().unwrap(),
        h.to_str().unwrap(),
        bad.to_str().unwrap(),
    );
    assert_eq!(code(&otis(&["debruijn", "-d", "2", "-n", "3", "-o", b])), 0);
    assert_eq!(
        code(&otis(&[
            "construct",
            "-p",
            "2",
            "-q",
            "8",
            "-d",
            "2",
            "-o",
            h
        ])),
        0
    );
    assert_eq!(
        code(&otis(&[
            "construct",
            "-p",
            "4",
            "-q",
            "4",
            "-d",
            "2",
            "-o",
            bad
        ])),
        0
    );

    let out = otis(&["isomorphic", b, h]);
    assert_eq!((code(&out), stdout(&out).as_str()), (0, "yes\n"));
    let out = otis(&["isomorphic", b, bad]);
    assert_eq!((code(&out), stdout(&out).as_str()), (1, "no\n"));
}

#[test]
fn malformed_file_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "good.txt", "vertices 1\n0 0 1\n");
    let bad = write(dir.path(), "bad.txt", "vertices 2\n0 1 1\n1 x 1\n");
    let out = otis(&["isomorphic", &good, &bad]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
    let out = otis(&["isomorphic", &good, "/nonexistent/file"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn edge_list_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.txt");
    let first = first.to_str().unwrap();
    otis(&["construct", "-p", "6", "-q", "4", "-d", "3", "-o", first]);
    let again = stdout(&otis(&["line-check", "--graph", first]));
    assert!(!again.is_empty());
    let json = stdout(&run("construct -p 6 -q 4 -d 3 --format json"));
    let json_file = write(dir.path(), "g.json", &json);
    let out = otis(&["isomorphic", first, &json_file]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(first).unwrap();
    let reparsed = otis_layout::format::parse_edge_list(&text).unwrap();
    assert_eq!(otis_layout::format::to_edge_list(&reparsed), text);
}

#[test]
fn size_bound_flag_and_env() {
    let out = run("debruijn -d 2 -n 13");
    assert_eq!(code(&out), 2);
    let out = run("--size-bound 9000 debruijn -d 2 -n 13");
    assert_eq!(code(&out), 0);
    let out = Command::new(env!("CARGO_BIN_EXE_otis"))
        .args(["debruijn", "-d", "2", "-n", "4"])
        .env("OTIS_SIZE_BOUND", "8")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    let out = run("construct -p 1 -q 20000 -d 20000");
    assert_eq!(code(&out), 2);
}

#[test]
fn outputs_are_deterministic() {
    let runs = [
        "construct -p 6 -q 10 -d 4 --format dot",
        "debruijn -d 3 -n 3 --format json",
        "orbits --p-prime 6 --q-prime 9",
        "layouts -d 2 -n 4 --json",
        "conjecture -d 4 -n 2",
        "line-check -p 6 -q 10 -d 4 -n 2",
    ];
    for args in runs {
        let first = run(args);
        let second = run(args);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        assert_eq!(first.status, second.status, "{args:?}");
    }
}
