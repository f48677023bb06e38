use std::process::{Command, Output};

use serde_json::Value;

fn contspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_contspec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = contspec(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn submonoid_three_five() {
    let v = json(&["submonoid", "-g", "3,5", "-N", "10"]);
    assert_eq!(v["canonical"]["gaps"], serde_json::json!([1, 2, 4, 7]));
    assert_eq!(v["members"], serde_json::json!([0, 3, 5, 6, 8, 9, 10]));
}

#[test]
fn submonoid_empty_and_mixed() {
    let v = json(&["submonoid", "-g", "", "-N", "3"]);
    assert_eq!(v["canonical"]["variant"], "zero");
    assert_eq!(v["members"], serde_json::json!([0]));
    let v = json(&["submonoid", "-g", "3,-5", "-N", "3"]);
    assert_eq!(v["canonical"], serde_json::json!({"variant": "group", "d": 1}));
    assert_eq!(v["members"], serde_json::json!([-3, -2, -1, 0, 1, 2, 3]));
}

#[test]
fn malformed_integer_exits_2() {
    assert_eq!(contspec(&["submonoid", "-g", "3,five"]).status.code(), Some(2));
}

#[test]
fn realize_line_example() {
    let v = json(&["realize-line", "-g", "3,4,5", "-N", "6"]);
    assert_eq!(v["spectrum"], serde_json::json!([0, 3, 4, 5, 6]));
    assert_eq!(v["w"], 12);
    let f1 = v["iterates"].as_array().unwrap().iter().find(|it| it["exponent"] == 1).unwrap();
    assert_eq!(f1["continuous"], false);
    assert_eq!(f1["witnesses"][0]["point"], serde_json::json!([1, 1]));
    let col0 = &v["space"]["columns"].as_array().unwrap()[12];
    assert_eq!(col0["index"], 0);
}

#[test]
fn realize_line_whole_integers() {
    let v = json(&["realize-line", "-g", "1,-1", "-N", "3"]);
    assert_eq!(v["spectrum"], serde_json::json!([-3, -2, -1, 0, 1, 2, 3]));
    let v = json(&["realize-line", "-g", "1", "-N", "3"]);
    assert_eq!(v["spectrum"], serde_json::json!([0, 1, 2, 3]));
}

#[test]
fn realize_line_svg_and_figure_file() {
    let out = contspec(&["realize-line", "-g", "3,4,5", "-N", "6", "--format", "svg"]);
    assert!(out.status.success());
    let svg = String::from_utf8(out.stdout).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("discontinuous at (0, 1)"));

    let dir = std::env::temp_dir().join(format!("contspec-fig-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fig.svg");
    let v = json(&["realize-line", "-g", "3,4,5", "-N", "6", "--figure", path.to_str().unwrap()]);
    assert_eq!(v["matches"], true);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), svg);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn small_window_exits_3() {
    let out = contspec(&["realize-line", "-g", "3,4,5", "-N", "6", "-W", "11"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("need W >= 12"));
}

#[test]
fn output_is_deterministic() {
    let a = contspec(&["realize-line", "-g", "3,5", "-N", "5"]).stdout;
    let b = contspec(&["realize-line", "-g", "5,3,3", "-N", "5"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn topologies_three_points() {
    let v = json(&["topologies", "-n", "3"]);
    assert_eq!(v["labeled"], 29);
    assert_eq!(v["classes"], 9);
    let mut orders: Vec<u64> = v["table"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row["group_order"].as_u64().unwrap())
        .collect();
    orders.sort();
    assert_eq!(orders, vec![1, 1, 2, 2, 2, 2, 2, 6, 6]);
    let v = json(&["topologies", "-n", "1"]);
    assert_eq!((v["labeled"].as_u64(), v["classes"].as_u64()), (Some(1), Some(1)));
}

#[test]
fn topologies_cap() {
    let out = contspec(&["topologies", "-n", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds exhaustive cap"));
}

#[test]
fn group_s3_rotations() {
    let v = json(&["group", "--builtin", "s3", "--subset", "e,r1,r2", "--variant", "open"]);
    assert_eq!(v["spectrum"], serde_json::json!(["e", "r1", "r2"]));
    assert_eq!(v["composition_law"], true);
    assert_eq!(v["isomorphic_pair"], true);
}

#[test]
fn group_z6_compact() {
    let v = json(&["group", "--builtin", "z6", "--subset", "0,3", "--variant", "compact"]);
    assert_eq!(v["spectrum"], serde_json::json!(["0", "3"]));
    assert_eq!(v["inverse_closed"], true);
}

#[test]
fn group_monoid_table() {
    let v = json(&["group", "--table", &fixture("m2.json"), "--subset", "e", "--variant", "monoid"]);
    assert_eq!(v["spectrum"], serde_json::json!(["e"]));
    assert_eq!(v["all_bijective"], false);
    assert_eq!(v["structure"], "monoid");
}

#[test]
fn group_input_errors_exit_2() {
    let bad = contspec(&["group", "--table", &fixture("not_assoc.json"), "--subset", "0"]);
    assert_eq!(bad.status.code(), Some(2));
    let not_closed = contspec(&["group", "--builtin", "z6", "--subset", "0,1"]);
    assert_eq!(not_closed.status.code(), Some(2));
    let monoid_as_group = contspec(&["group", "--builtin", "m2", "--subset", "e"]);
    assert_eq!(monoid_as_group.status.code(), Some(2));
}
