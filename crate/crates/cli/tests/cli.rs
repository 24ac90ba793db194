use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn copwin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_copwin")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const QUICK: &str = "# small run\n\
gammas = w\n\
tail_lengths = 2\n\
truncation_sizes = 4\n\
samples_per_claim = 10\n\
survival_budget_max = 2\n\
corpus_size = 10\n\
corpus_max_vertices = 5\n\
simulation_robbers = 5\n\
survival_pairs = 2\n";

#[test]
fn ord_normalizes() {
    let o = copwin(&["ord", "w*2+5 + w"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "w*3\n");
    assert_eq!(stdout(&copwin(&["ord", "w+w"])), "w*2\n");
    assert_eq!(code(&copwin(&["ord", "w+"])), 2);
}

#[test]
fn rho_values() {
    assert_eq!(stdout(&copwin(&["rho", "--gamma", "w^2", "--tail", "5"])), "w^2+5\n");
    assert_eq!(stdout(&copwin(&["rho", "--gamma", "w^2", "--no-diagonal"])), "w^2\n");
    // A cop on (a, a+1) sees no diagonal vertex, which costs one more move.
    assert_eq!(stdout(&copwin(&["rho", "--gamma", "w"])), "w+1\n");
    assert_eq!(code(&copwin(&["rho", "--gamma", "w+3"])), 2);
}

#[test]
fn eta_bounds_and_errors() {
    let o = copwin(&["eta", "--gamma", "w", "--u", "(5,5)", "--v", "(2,4)"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("exact w\n"), "{}", stdout(&o));
    let o = copwin(&["eta", "--gamma", "w", "--u", "(5,5)", "--v", "(2,3)"]);
    assert!(stdout(&o).contains("exact w+1\n"), "{}", stdout(&o));

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("eta.txt");
    let o = copwin(&["eta", "--gamma", "w", "--u", "(w_invalid)", "--v", "(1,1)", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad vertex"));
    assert!(!out.exists());
    assert_eq!(code(&copwin(&["eta", "--gamma", "w", "--u", "(w,1)", "--v", "(1,1)"])), 2);
    assert_eq!(code(&copwin(&["eta", "--gamma", "w", "--u", "T(1)", "--v", "(1,1)"])), 2);
}

#[test]
fn eta_structured() {
    let o = copwin(&["eta", "--gamma", "w^w", "--tail", "2", "--u", "T(2)", "--v", "T(3)", "--format", "structured"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["bounds"]["exact"], Value::Bool(true));
    assert_eq!(v["u"], "T(2)");
}

#[test]
fn solve_and_dismantle() {
    let dir = tempfile::tempdir().unwrap();
    let p5 = write(dir.path(), "p5.txt", "0 1\n1 2\n2 3\n3 4\n");
    let o = copwin(&["solve", "--graph", &p5]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("eta(G)=2,"), "{}", stdout(&o));

    let k2 = write(dir.path(), "k2.txt", "# K2\n0 1\n");
    assert_eq!(stdout(&copwin(&["solve", "--graph", &k2, "--pair", "0", "1"])), "1\n");

    let c4 = write(dir.path(), "c4.dot", "graph c4 {\n a -- b;\n b -- c;\n c -- d;\n d -- a;\n}\n");
    let o = copwin(&["solve", "--graph", &c4, "--format", "structured"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["eta_per_cop_start"].as_array().unwrap().iter().all(|x| x == "robber-wins"), "{v}");
    let o = copwin(&["dismantle", "--graph", &c4]);
    assert!(stdout(&o).starts_with("not dismantlable"));
    assert!(stdout(&copwin(&["dismantle", "--graph", &p5])).starts_with("dismantlable"));

    let bad = write(dir.path(), "bad.txt", "0 1\n1 2 3\n");
    let o = copwin(&["solve", "--graph", &bad]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn gen_writes_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t3.txt");
    let o = copwin(&["gen", "--grid", "3", "--tail", "1", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.contains("(0,0) (0,1)") && text.contains("(-1,0)"), "{text}");
    let o = copwin(&["gen", "--cycle", "5", "--dot"]);
    assert!(stdout(&o).starts_with("graph"));
    assert_eq!(stdout(&copwin(&["gen", "--random", "6", "--seed", "4"])), stdout(&copwin(&["gen", "--random", "6", "--seed", "4"])));
    assert_eq!(code(&copwin(&["gen", "--path", "3", "--cycle", "4"])), 2);
    assert_eq!(code(&copwin(&["gen"])), 2);
}

#[test]
fn simulate_stay_robber_is_captured() {
    let o = copwin(&["simulate", "--gamma", "w", "--cop", "(0,0)", "--robber", "(3,3)", "--robber-policy", "stay"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).trim_end().ends_with("captured after 1 cop moves"), "{}", stdout(&o));
    let args = ["simulate", "--gamma", "w^2", "--cop", "(5,0)", "--robber", "(w,3)", "--seed", "9", "--format", "structured"];
    let (a, b) = (stdout(&copwin(&args)), stdout(&copwin(&args)));
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["captured"], Value::Bool(true));
}

#[test]
fn certify_reports_violations() {
    let o = copwin(&["certify", "--gamma", "w*2", "--family", "x-axis-cop", "--samples", "30"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = copwin(&["certify", "--gamma", "w", "--family", "upper-assembly", "--u", "(0,0)", "--v", "(2,3)"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("no diagonal vertex"), "{}", stdout(&o));
    assert_eq!(code(&copwin(&["certify", "--gamma", "w", "--family", "nope"])), 2);
    assert_eq!(code(&copwin(&["certify", "--gamma", "w", "--family", "tail-cop"])), 2);
}

#[test]
fn verify_writes_reports_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "quick.cfg", QUICK);

    let paths = dir.path().join("paths.json");
    let o = copwin(&["verify", "--suite", "paths", "--format", "structured", "--out", paths.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&fs::read_to_string(&paths).unwrap()).unwrap();
    assert_eq!(v["exit_code"], 0);

    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = copwin(&["verify", "--config", &cfg, "--seed", "0", "--format", "structured", "--out", out.to_str().unwrap()]);
        let mut v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
        v.as_object_mut().unwrap().remove("environment");
        (code(&o), v)
    };
    let (c1, a) = run("a.json");
    let (c2, b) = run("b.json");
    // The limit-rho and diagonal-robber checks fail on cops at (a, a+1).
    assert_eq!((c1, c2), (1, 1));
    assert_eq!(a["exit_code"], 1);
    assert_eq!(a, b);
    assert_eq!(a["seed"], 0);

    let missing = dir.path().join("none.json");
    let o = copwin(&["verify", "--suite", "no-such-suite", "--out", missing.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(!missing.exists());
    let bad = write(dir.path(), "bad.cfg", "gammas = w+1\n");
    assert_eq!(code(&copwin(&["verify", "--suite", "paths", "--config", &bad])), 2);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&copwin(&[])), 2);
    assert_eq!(code(&copwin(&["frobnicate"])), 2);
    assert_eq!(code(&copwin(&["rho"])), 2);
    assert_eq!(code(&copwin(&["rho", "--gamma", "w", "--format", "xml"])), 2);
}
