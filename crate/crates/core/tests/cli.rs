//! End-to-end runs of the command line interface.

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["digitop"];
    argv.extend_from_slice(args);
    let mut out = Vec::new();
    let code = digitop::cli::run(argv, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let (code, text) = run(&a);
    (code, serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}")))
}

fn values(v: &Value) -> Vec<u64> {
    v["result"]["values"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect()
}

#[test]
fn cube_fixed_point_spectrum() {
    let (code, v) = run_json(&["spectrum", "fix", "--image", "cube"]);
    assert_eq!(code, 0);
    assert_eq!(v["op"], "spectrum");
    assert_eq!(values(&v), vec![0, 1, 2, 3, 4, 5, 6, 8]);
    assert_eq!(v["result"]["complete"], true);
    assert_eq!(v["exit_status"], 0);
}

#[test]
fn starred_cycle_spectrum() {
    let (code, v) = run_json(&["hcs", "--image", "cycle:5", "--f", "id", "--g", "const:0", "--star"]);
    assert_eq!(code, 0);
    assert_eq!(values(&v), vec![1]);
}

#[test]
fn fig1_divergence_at_one_point() {
    let (code, v) = run_json(&["divergence", "--image", "fig1", "--point", "7", "--family", "paper"]);
    assert_eq!(code, 0);
    let p = &v["result"]["points"][0];
    assert_eq!(p["k"], 3);
    assert_eq!(p["label"], 8);
    assert_eq!(p["agrees"], true);
}

#[test]
fn invalid_images_exit_2() {
    for image in [
        r#"{"kind":"graph","size":2,"edges":[[1,1]]}"#,
        r#"{"kind":"lattice","dim":1,"t":1,"points":[[0],[0]]}"#,
        "no-such-key",
    ] {
        let (code, v) = run_json(&["info", "--image", image]);
        assert_eq!(code, 2, "{image}");
        assert_eq!(v["exit_status"], 2);
    }
}

#[test]
fn bad_arguments_exit_2() {
    assert_eq!(run(&["spectrum", "nope", "--image", "cube"]).0, 2);
    assert_eq!(run(&["continuity", "--image", "cycle:4", "--f", "[0,2,0,0]"]).0, 2);
    assert_eq!(run(&["retract", "--image", "cycle:4", "--subset", "0,9"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn budget_hit_exits_3() {
    let (code, v) = run_json(&["count-maps", "--image", "cube", "--budget-nodes", "100"]);
    assert_eq!(code, 3);
    assert_eq!(v["stats"]["exhausted"], false);
}

#[test]
fn image_file_round_trip() {
    let (_, info) = run_json(&["info", "--image", "fig1"]);
    let x = digitop::catalog::load_key("fig1").unwrap();
    let path = std::env::temp_dir().join(format!("digitop-fig1-{}.json", std::process::id()));
    std::fs::write(&path, x.to_json()).unwrap();
    let file = path.to_str().unwrap();

    let (code, v) = run_json(&["iso", "--image", file, "--other", "fig1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["isomorphic"], true);
    let (_, again) = run_json(&["info", "--image", file]);
    assert_eq!(again["result"]["size"], info["result"]["size"]);
    assert_eq!(again["result"]["edge_count"], info["result"]["edge_count"]);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn table_format_is_line_oriented() {
    let (code, text) = run(&["spectrum", "fix", "--image", "cycle:5"]);
    assert_eq!(code, 0);
    assert!(text.lines().next().unwrap().starts_with("op: spectrum"), "{text}");
    assert!(text.contains("exit: 0"));
}

#[test]
fn output_ignores_parallelism() {
    let a = run(&["spectrum", "cs", "--image", "cycle:5", "--format", "json", "--parallelism", "1"]);
    let b = run(&["spectrum", "cs", "--image", "cycle:5", "--format", "json", "--parallelism", "3"]);
    assert_eq!(a, b);
}
