use serde_json::Value;
use std::process::{Command, Output};

const EX51: &str = "alg:-1,1,2,2@[2/5,1/2]";

fn cantor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cantor")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut v = vec!["--json"];
    v.extend_from_slice(args);
    let o = cantor(&v);
    (o.status.code().unwrap(), serde_json::from_slice(&o.stdout).expect("JSON envelope"))
}

#[test]
fn alpha_kl_interval() {
    let o = cantor(&["alpha-kl", "--width", "1e-6"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("0.39433"), "{}", stdout(&o));
}

#[test]
fn unique_example() {
    let o = cantor(&["unique", "--alpha", "rat:9/25", "--t-seq", "(+-0)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "true");
}

#[test]
fn intersect_cubic_base_and_export() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("graph.json");
    let (code, v) = json(&["intersect", "--alpha", EX51, "--t", "sum-neg-alpha", "--export", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["command"], "intersect");
    assert_eq!(v["result"]["states"], 6);
    let d = &v["result"]["perron"]["dimension"];
    assert!((d["lower"].as_f64().unwrap() - 0.644297).abs() < 1e-5);
    let g: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(g["graph"]["matrix"].as_array().unwrap().len(), 6);
    assert_eq!(g["automaton"]["complete"], true);

    let text = stdout(&cantor(&["intersect", "--alpha", EX51, "--t", "sum-neg-alpha"]));
    assert!(text.starts_with("states=6, lambda~1.6956"), "{text}");
}

#[test]
fn boxcount_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let o = cantor(&["boxcount", "--alpha", EX51, "--t", "0", "--depth", "6", "--csv", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let body = std::fs::read_to_string(&path).unwrap();
    let mut lines = body.lines();
    assert_eq!(lines.next(), Some("n,lower,upper"));
    // t = 0: every pair of equal digit choices survives, so 2^n prefixes
    let rows: Vec<Vec<u64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 7);
    for r in rows {
        assert_eq!(r[2], 1 << r[0]);
    }
}

#[test]
fn boxcount_depth_cap_from_env() {
    let o = Command::new(env!("CARGO_BIN_EXE_cantor"))
        .args(["boxcount", "--alpha", EX51, "--t", "0", "--depth", "8"])
        .env("CANTOR_DEPTH_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn jobs_flag_gives_same_counts() {
    let a = json(&["--jobs", "1", "boxcount", "--alpha", EX51, "--t", "sum-neg-alpha", "--depth", "6"]).1;
    let b = json(&["--jobs", "2", "boxcount", "--alpha", EX51, "--t", "sum-neg-alpha", "--depth", "6"]).1;
    assert_eq!(a["result"]["rows"], b["result"]["rows"]);
}

#[test]
fn json_is_deterministic() {
    let args = ["dset", "--alpha", "rat:21/50"];
    let a = stdout(&cantor(&[&["--json"][..], &args[..]].concat()));
    let b = stdout(&cantor(&[&["--json"][..], &args[..]].concat()));
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["result"]["kind"], "FiniteList");
    assert_eq!(v["inputs"]["alpha"], "rat:21/50");
}

#[test]
fn exit_codes() {
    // domain error
    assert_eq!(cantor(&["dset", "--alpha", "3/10"]).status.code(), Some(1));
    // malformed sequence
    let o = cantor(&["unique", "--alpha", "9/25", "--t-seq", "(+x)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("sequences:"));
    // unknown flag and subcommand
    assert_eq!(cantor(&["unique", "--bogus"]).status.code(), Some(2));
    assert_eq!(cantor(&["nope"]).status.code(), Some(2));
    let (code, v) = json(&["dense-targets", "--alpha", "2/5"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "domain_error");
}

#[test]
fn words_and_expansions() {
    assert_eq!(stdout(&cantor(&["tm", "--what", "tau", "--n", "8"])).trim(), "0,1,1,0,1,0,0,1");
    assert_eq!(stdout(&cantor(&["tm", "--what", "zeta", "--n", "1"])).trim(), "0+");
    let (_, v) = json(&["tm", "--what", "w", "--n", "2"]);
    assert_eq!(v["result"]["digits"], serde_json::json!([1, 0, -1, 1]));
    let (_, v) = json(&["delta", "--alpha", "9/20", "--n", "3"]);
    assert_eq!(v["result"]["prefix"], "+-0");
    let (_, v) = json(&["delta", "--alpha", "alg:1,-3,1@[1/3,1/2]", "--alphabet", "0..2", "--n", "4"]);
    assert_eq!(v["result"]["ep_form"], "2,(1)");
    let (_, v) = json(&["expand", "--alpha", "2/5", "--x", "2/5", "--alphabet", "0..1", "--n", "4"]);
    assert_eq!(v["result"]["digits"], serde_json::json!([1, 0, 0, 0]));
}

#[test]
fn dimension_commands() {
    let (code, v) = json(&["dim", "--alpha", "9/25", "--t-seq", "(+-0)"]);
    assert_eq!(code, 0);
    let d = &v["result"]["dimension"];
    let oracle = (1.0 / 3.0) * 2f64.ln() / -(0.36f64.ln());
    assert!(d["lower"].as_f64().unwrap() <= oracle + 1e-12 && oracle - 1e-12 <= d["upper"].as_f64().unwrap());
    assert_eq!(cantor(&["dim", "--alpha", EX51, "--t-seq", "(-+)"]).status.code(), Some(1));

    let (_, v) = json(&["selfsimilar", "--alpha", "9/25", "--t-seq", "0+(-0)"]);
    assert_eq!(v["result"], "NotSelfSimilar");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hits.csv");
    let o = cantor(&["dense-targets", "--alpha", "9/25", "--targets", "0,1/2,1", "--csv", path.to_str().unwrap()]);
    assert!(o.status.success());
    let body = std::fs::read_to_string(&path).unwrap();
    assert_eq!(body.lines().count(), 4);
    assert!(body.starts_with("target,sequence,density,n1,n2"));
}

#[test]
fn liouville_reports_uniqueness() {
    let (code, v) = json(&["liouville", "--pq", "2/5", "--k", "3"]);
    assert_eq!(v["result"]["n_values"], serde_json::json!([1, 4, 20, 121]));
    // 2/5 lies above the golden threshold, so t is not uniquely coded there
    assert_eq!(code, 1);
    assert_eq!(v["status"], "failed");
    let (code, _) = json(&["liouville", "--pq", "7/20", "--k", "2", "--rule", "ones"]);
    assert_eq!(code, 0);
    assert_eq!(cantor(&["liouville", "--pq", "7/20", "--rule", "twos"]).status.code(), Some(2));
}

#[test]
fn verify_single_criterion() {
    let o = cantor(&["verify-paper", "--only", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("criterion  1  PASS"), "{}", stdout(&o));
    assert_eq!(cantor(&["verify-paper", "--only", "12"]).status.code(), Some(2));
}
