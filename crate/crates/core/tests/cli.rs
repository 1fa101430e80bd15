use std::path::Path;
use std::process::{Command, Output};

fn siltq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_siltq")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn enumerate_writes_census_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a3.json");
    let dot = dir.path().join("a3.dot");
    let o = siltq(&[
        "enumerate", "--builtin", "linear_a", "--params", "n=3", "--out", path(&out), "--dot", path(&dot),
        "--dot-vertex", "2", "--check-hasse",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("count 14 complete true"));
    assert!(stdout(&o).contains("covering true"));
    let census: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(census["metadata"]["count"], 14);
    assert_eq!(census["elements"].as_array().unwrap().len(), 14);
    let dot = std::fs::read_to_string(&dot).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("shape=box").count(), 7);
    assert_eq!(dot.matches("shape=circle").count(), 7);

    let r = siltq(&["report", path(&out)]);
    assert_eq!(r.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&r)).unwrap();
    assert_eq!(report["count"], 14);
    assert_eq!(report["regular_degree"], 3);
}

#[test]
fn symmetry_annotates_a_matching_census() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pi.json");
    let args = ["--builtin", "preprojective_a", "--params", "n=3"];
    let o = siltq(&[&["enumerate"][..], &args, &["--out", path(&out)]].concat());
    assert_eq!(o.status.code(), Some(0));
    let s = siltq(&[&["symmetry"][..], &args, &["--census", path(&out)]].concat());
    assert_eq!(s.status.code(), Some(0), "{}", String::from_utf8_lossy(&s.stderr));
    assert!(stdout(&s).contains("g-negation true"));
    let census: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let bis = census["symmetry"]["bisections"].as_array().unwrap();
    assert!(bis.iter().all(|b| b["minus"] == 12 && b["plus"] == 12));

    // the census belongs to a different algebra
    let other = siltq(&["symmetry", "--builtin", "linear_a", "--params", "n=3", "--census", path(&out)]);
    assert_eq!(other.status.code(), Some(2));
}

#[test]
fn bisect_and_mutate() {
    let b = siltq(&["bisect", "--builtin", "sym3", "--vertex", "2"]);
    assert_eq!(b.status.code(), Some(0));
    assert!(stdout(&b).contains("14/18"));

    let m = siltq(&["mutate", "--builtin", "linear_a", "--params", "n=2", "--at", "2"]);
    assert_eq!(m.status.code(), Some(0));
    assert!(stdout(&m).contains("added   [1, -1]"));

    // Λ[1] is the bottom of the window, so it has no left neighbour
    let m = siltq(&["mutate", "--builtin", "linear_a", "--params", "n=2", "--at", "2", "--shifted", "--direction", "left"]);
    assert_eq!(m.status.code(), Some(1));
    let m = siltq(&["mutate", "--builtin", "linear_a", "--params", "n=2", "--at", "2", "--shifted", "--direction", "right"]);
    assert_eq!(m.status.code(), Some(0));
}

#[test]
fn twice_exit_codes_follow_the_hypotheses() {
    let ok = siltq(&["twice", "--builtin", "brauer_triangle", "--vertex", "1"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("|2silt Λ| = |2silt Γ| = 32"));

    let dir = tempfile::tempdir().unwrap();
    let gamma = dir.path().join("gamma.json");
    let no = siltq(&["twice", "--builtin", "sym3", "--vertex", "2", "--gamma-out", path(&gamma)]);
    assert_eq!(no.status.code(), Some(1));
    assert!(stdout(&no).contains("|2silt Γ| = 28"));
    assert!(stdout(&no).contains("hypothesis failed"));

    // the written Γ is a valid input whose census has 28 elements
    let e = siltq(&["enumerate", "--input", path(&gamma)]);
    assert_eq!(e.status.code(), Some(0));
    assert!(stdout(&e).contains("count 28 complete true"));
}

#[test]
fn builtin_round_trips_through_input() {
    let b = siltq(&["builtin", "nakayama", "--params", "n=3,r=4", "--prime", "5"]);
    assert_eq!(b.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("n34.json");
    std::fs::write(&spec, b.stdout).unwrap();
    let e = siltq(&["enumerate", "--input", path(&spec)]);
    assert!(stdout(&e).contains("count 20 complete true"));

    let list = siltq(&["builtin", "--list"]);
    assert!(stdout(&list).lines().any(|l| l.starts_with("brauer_triangle")));
}

#[test]
fn bad_input_exits_with_two() {
    assert_eq!(siltq(&["enumerate", "--builtin", "nope"]).status.code(), Some(2));
    assert_eq!(siltq(&["enumerate", "--builtin", "linear_a", "--params", "n=zero"]).status.code(), Some(2));
    assert_eq!(siltq(&["bisect", "--builtin", "linear_a", "--params", "n=3", "--vertex", "9"]).status.code(), Some(2));
    assert_eq!(siltq(&["report", "/nonexistent/census.json"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("bad.json");
    std::fs::write(&spec, "{\"field\": {\"kind\": \"Q\"},\n \"vertices\": [\"1\"], \"arows\": []}").unwrap();
    let o = siltq(&["enumerate", "--input", path(&spec)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn incomplete_census_stops_bisection() {
    let o = siltq(&["bisect", "--builtin", "preprojective_a", "--params", "n=3", "--vertex", "1", "--cap", "5"]);
    assert_eq!(o.status.code(), Some(1));
}
