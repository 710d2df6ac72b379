use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use faultdiag::io::{parse_network, parse_problem, parse_tree};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn faultdiag(args: &[&str]) -> Run {
    let Output { status, stdout, stderr } = Command::new(env!("CARGO_BIN_EXE_faultdiag"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: status.code().expect("exited normally"),
        stdout: String::from_utf8(stdout).unwrap(),
        stderr: String::from_utf8(stderr).unwrap(),
    }
}

fn ok(args: &[&str]) -> String {
    let r = faultdiag(args);
    assert_eq!(r.code, 0, "{args:?} failed: {}", r.stderr);
    r.stdout
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const K3: &str = r#"{"n": 3, "edges": [[1, 2], [1, 3], [2, 3]]}"#;

#[test]
fn gen_s1_has_two_edges_per_variable() {
    let net = parse_network(&ok(&["gen", "s1", "--n", "3"])).unwrap();
    assert_eq!(net.edge_count(), 6);
    assert_eq!(net.input_variables(), &[1, 2, 3]);
}

#[test]
fn reduce_vc_on_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "k3.json", K3);
    for variant in ["q1", "q2"] {
        assert_eq!(ok(&["reduce", "vc", "--graph", s(&g), "--m", "2", "--variant", variant]), "YES\n");
        assert_eq!(ok(&["reduce", "vc", "--graph", s(&g), "--m", "1", "--variant", variant]), "NO\n");
    }
}

#[test]
fn exact_tree_for_two_classes_has_depth_one() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "k3.json", K3);
    let problem = write(dir.path(), "p.json", &ok(&["gen", "q1", "--graph", s(&g), "--m", "2"]));
    assert_eq!(parse_problem(&std::fs::read_to_string(&problem).unwrap()).unwrap().faults().len(), 2);
    let tree_text = ok(&["tree", "build", "--exact", "--problem", s(&problem)]);
    let (tree, arity) = parse_tree(&tree_text).unwrap();
    assert_eq!((tree.depth(), arity), (1, 3));

    let tree = write(dir.path(), "t.json", &tree_text);
    assert!(ok(&["tree", "verify", "--tree", s(&tree), "--problem", s(&problem)]).starts_with("VALID depth=1"));
    let dot = ok(&["tree", "export-dot", "--tree", s(&tree)]);
    assert_eq!(dot.lines().filter(|l| l.contains("[shape=")).count(), 3);
    assert_eq!(dot.lines().filter(|l| l.contains("->")).count(), 2);
}

#[test]
fn tree_run_identifies_the_injected_fault() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "k3.json", K3);
    let problem_text = ok(&["gen", "q1", "--graph", s(&g), "--m", "2"]);
    let problem = parse_problem(&problem_text).unwrap();
    let p = write(dir.path(), "p.json", &problem_text);
    let net = write(dir.path(), "n.json", &faultdiag::io::serialize_network(problem.network()));
    let tree = write(dir.path(), "t.json", &ok(&["tree", "build", "--problem", s(&p)]));
    let rho = write(dir.path(), "rho.json", &faultdiag::io::serialize_fault(&problem.faults()[1]));
    let out = ok(&["tree", "run", "--tree", s(&tree), "--network", s(&net), "--fault", s(&rho)]);
    assert_eq!(faultdiag::io::parse_fault(&out).unwrap(), problem.faults()[1]);
    let out = ok(&["tree", "run", "--tree", s(&tree), "--network", s(&net)]);
    assert!(faultdiag::io::parse_fault(&out).unwrap().is_empty());
}

#[test]
fn outputs_are_deterministic_and_independent_of_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let net = write(dir.path(), "n.json", &ok(&["gen", "shannon", "--n", "4", "--kind", "equal-mid"]));
    let one = ok(&["table", "--network", s(&net), "--jobs", "1"]);
    assert_eq!(one.lines().count(), 16);
    assert_eq!(one, ok(&["table", "--network", s(&net), "--jobs", "4"]));
    let s1 = write(dir.path(), "s1.json", &ok(&["gen", "s1", "--n", "2"]));
    let faults = ok(&["faults", "enum", "--network", s(&s1), "--type", "01"]);
    assert_eq!(faults, ok(&["faults", "enum", "--network", s(&s1), "--type", "01", "--jobs", "3"]));
    assert_eq!(faults, ok(&["faults", "enum", "--network", s(&s1), "--type", "01"]));
    assert_eq!(faults.matches("\"assignments\"").count(), 81);
}

#[test]
fn meta_goes_to_stderr_only() {
    let plain = faultdiag(&["verify", "remark1", "--max-n", "5"]);
    let meta = faultdiag(&["--meta", "verify", "remark1", "--max-n", "5"]);
    assert_eq!(plain.stdout, meta.stdout);
    assert!(plain.stderr.is_empty());
    assert!(meta.stderr.contains("\"version\""));
}

#[test]
fn eval_routes_agree() {
    let dir = tempfile::tempdir().unwrap();
    let net = write(dir.path(), "n.json", &ok(&["gen", "s2", "--n", "2"]));
    let fault = write(dir.path(), "f.json", r#"{"version": 1, "assignments": [{"edge": 1, "value": 1}]}"#);
    for input in ["00", "10", "01", "11"] {
        let a = ok(&["eval", "--network", s(&net), "--fault", s(&fault), "--input", input]);
        let b = ok(&["eval", "--network", s(&net), "--fault", s(&fault), "--input", input, "--paths"]);
        assert_eq!(a, b);
        // x1 · 1 · x2 · ~x2 is never satisfied
        assert_eq!(a, "0\n");
    }
}

#[test]
fn equiv_lists_differences() {
    let dir = tempfile::tempdir().unwrap();
    let net = write(dir.path(), "n.json", &ok(&["gen", "s1", "--n", "1"]));
    let f = write(dir.path(), "f.json", r#"{"version": 1, "assignments": [{"edge": 0, "value": 0}]}"#);
    assert_eq!(ok(&["equiv", "--network", s(&net)]), "EQUIVALENT\n");
    assert_eq!(ok(&["equiv", "--network", s(&net), "--fault-b", s(&f)]), "DIFFERENT\n1\n");
}

#[test]
fn verifiers_report_holding_bounds() {
    let t1: serde_json::Value = serde_json::from_str(&ok(&["verify", "theorem1", "--n", "3", "--type", "0"])).unwrap();
    assert_eq!(t1["distinguishing_number"], 8);
    let t2: serde_json::Value = serde_json::from_str(&ok(&["verify", "theorem2", "--n", "4", "--type", "1"])).unwrap();
    assert_eq!(t2["distinguishing_number"], 6);
    let lemma = {
        let dir = tempfile::tempdir().unwrap();
        let g = write(dir.path(), "k3.json", K3);
        let p = write(dir.path(), "p.json", &ok(&["gen", "q2", "--graph", s(&g), "--m", "2"]));
        ok(&["bound", "lemma1", "--problem", s(&p)])
    };
    let v: serde_json::Value = serde_json::from_str(&lemma).unwrap();
    assert_eq!(v["t"], 1);
}

#[test]
fn domain_errors_exit_one_with_code() {
    let dir = tempfile::tempdir().unwrap();
    let net = write(dir.path(), "n.json", &ok(&["gen", "s1", "--n", "2"]));
    let r = faultdiag(&["eval", "--network", s(&net), "--input", "101"]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.starts_with("error[E_ARITY]"), "{}", r.stderr);
    assert!(r.stdout.is_empty());

    let bad = write(dir.path(), "bad.json", "{\"version\": 1,\n \"nodes\": [0, 1], \"poles\": [0, 1], \"edges\": [], \"extra\": 1}");
    let r = faultdiag(&["validate", "--network", s(&bad)]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.starts_with("error[E_PARSE]"), "{}", r.stderr);
    assert!(r.stderr.contains("line 2"), "{}", r.stderr);

    let looped = write(
        dir.path(),
        "loop.json",
        r#"{"version": 1, "nodes": [0, 1], "poles": [0, 1],
            "edges": [{"id": 0, "u": 0, "v": 1, "var": 0, "negated": false},
                      {"id": 1, "u": 1, "v": 1, "var": 0, "negated": true}]}"#,
    );
    let r = faultdiag(&["validate", "--network", s(&looped)]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.starts_with("error[E_NETWORK]"), "{}", r.stderr);

    let r = faultdiag(&["gen", "s1", "--n", "0"]);
    assert_eq!(r.code, 1);
    let r = faultdiag(&["table", "--network", "/nonexistent/n.json"]);
    assert_eq!((r.code, r.stderr.starts_with("error[E_IO]")), (1, true));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(faultdiag(&["bogus"]).code, 2);
    assert_eq!(faultdiag(&["gen", "s1"]).code, 2);
    assert_eq!(faultdiag(&["reduce", "vc", "--graph", "g.json", "--m", "1", "--variant", "q3"]).code, 2);
    let help = faultdiag(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("Usage"));
}

#[test]
fn hand_written_single_edge_network() {
    let dir = tempfile::tempdir().unwrap();
    let net = write(
        dir.path(),
        "one.json",
        r#"{"version": 1, "nodes": [0, 1], "poles": [0, 1],
            "edges": [{"id": 0, "u": 0, "v": 1, "var": 0, "negated": false}]}"#,
    );
    assert_eq!(ok(&["validate", "--network", s(&net)]), "valid: 2 nodes, 1 edges, 1 inputs\n");
    assert_eq!(ok(&["table", "--network", s(&net)]), "0 0\n1 1\n");
}
