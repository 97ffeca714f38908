use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_branchwise"))
        .args(args)
        .env_remove("BRANCHWISE_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> String {
    let dir = std::env::temp_dir().join(format!("branchwise-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name).to_string_lossy().into_owned()
}

#[test]
fn mbv_on_a_path_has_no_branch_vertex() {
    let out = run(&["mbv", &fixture("path4.txt")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["b"], 0);
    assert_eq!(v["branch"], serde_json::json!([]));
    assert_eq!(v["parent"].as_array().unwrap().len(), 4);
}

#[test]
fn oracle_check_agrees_on_the_star() {
    let out = run(&["mbv", &fixture("star14.txt"), "--oracle-check"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["b"], 1);
    assert_eq!(v["oracle_agrees"], true);
}

#[test]
fn disconnected_input_exits_with_one() {
    let out = run(&["cbv", &fixture("disconnected.txt")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("disconnected"));
}

#[test]
fn weighted_file_pays_both_hubs() {
    let out = run(&["cbv", &fixture("weighted.txt"), "--oracle-check"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["cost"], 11);
    assert_eq!(v["oracle_agrees"], true);
}

#[test]
fn dimacs_weights_are_one_based() {
    // the middle vertex of P3 never branches
    let out = run(&["cbv", &fixture("p3.dimacs")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["cost"], 0);
    let out = run(&["oracle", &fixture("p3.dimacs"), "--format", "dimacs"]);
    assert_eq!(json(&out)["w"], 0);
}

#[test]
fn psc_of_a_star_is_one_spider() {
    let out = run(&["psc", &fixture("star14.txt")]);
    let v = json(&out);
    assert_eq!(v["spi"], 1);
    assert_eq!(v["pieces"][0]["kind"], "spider");
    assert_eq!(v["pieces"].as_array().unwrap().len(), 1);
}

#[test]
fn pp_lists_paths() {
    let out = run(&["pp", &fixture("star14.txt"), "--oracle-check"]);
    let v = json(&out);
    assert_eq!(v["ham"], 3);
    assert_eq!(v["oracle_agrees"], true);
    assert!(v["pieces"]
        .as_array()
        .unwrap()
        .iter()
        .all(|p| p["kind"] == "path"));
}

#[test]
fn decompose_emits_nested_nodes() {
    let v = json(&run(&["decompose", &fixture("star14.txt")]));
    assert_eq!(v["kind"], "series");
    assert_eq!(v["children"].as_array().unwrap().len(), 2);
    let v = json(&run(&["decompose", &fixture("bull.txt")]));
    assert_eq!(v["kind"], "prime");
}

#[test]
fn certificates_verify_and_tampering_is_caught() {
    let g = fixture("spider.txt");
    let cert = scratch("spider.mbv.json");
    assert_eq!(run(&["mbv", &g, "--output", &cert]).status.code(), Some(0));
    let out = run(&["verify", &g, &cert]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["valid"], true);

    let text = std::fs::read_to_string(&cert).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["branch"] = serde_json::json!([]);
    let forged = scratch("spider.forged.json");
    std::fs::write(&forged, v.to_string()).unwrap();
    let out = run(&["verify", &g, &forged]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["valid"], false);

    let cover = scratch("spider.psc.json");
    assert_eq!(run(&["psc", &g, "--output", &cover]).status.code(), Some(0));
    assert_eq!(run(&["verify", &g, &cover]).status.code(), Some(0));
}

#[test]
fn zero_budget_is_an_internal_failure() {
    let out = Command::new(env!("CARGO_BIN_EXE_branchwise"))
        .args(["mbv", &fixture("star14.txt")])
        .env("BRANCHWISE_BUDGET", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["mbv", &fixture("star14.txt"), "--budget", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(run(&["mbv"]).status.code(), Some(64));
    assert_eq!(
        run(&["mbv", "x", "--format", "xml"]).status.code(),
        Some(64)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn missing_file_and_bad_syntax_exit_1() {
    assert_eq!(
        run(&["mbv", "/nonexistent/graph.txt"]).status.code(),
        Some(1)
    );
    let bad = scratch("bad.txt");
    std::fs::write(&bad, "3 1\n0 zz\n").unwrap();
    let out = run(&["mbv", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn oracle_cap_is_enforced_and_can_be_raised() {
    let out = run(&["oracle", &fixture("petersen.txt")]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["oracle", &fixture("petersen.txt"), "--cap", "10"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    let v = json(&out);
    assert_eq!(v["b"], 0);
    assert_eq!(v["ham"], 1);
}

#[test]
fn gen_is_seeded_and_parses_back() {
    let a = run(&["gen", "--n", "9", "--seed", "5", "--max-weight", "10"]);
    let b = run(&["gen", "--n", "9", "--seed", "5", "--max-weight", "10"]);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["gen", "--n", "9", "--seed", "6", "--max-weight", "10"]);
    assert_ne!(a.stdout, c.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let parsed = branchwise::io::parse_graph(&text, branchwise::io::Format::Edgelist).unwrap();
    assert_eq!(parsed.graph.vertex_count(), 9);
    assert!(parsed.graph.is_connected());
}
