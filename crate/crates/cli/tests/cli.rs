use std::process::{Command, Output};

use serde_json::Value;

fn dwinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dwinv")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = dwinv(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn anyons_table() {
    let v = json(&["anyons", "--q", "11", "--p", "5", "--n", "4", "--u", "1"]);
    let objs = v["objects"].as_array().unwrap();
    assert_eq!(objs.len(), 49);
    let b10 = objs.iter().find(|o| o["label"] == "B_{1,0}").unwrap();
    assert_eq!(b10["twist_fraction"], serde_json::json!([1, 25]));
    assert_eq!(b10["dim"], 11);
}

#[test]
fn anyons_u0_b_twists_are_fifth_roots() {
    let v = json(&["anyons", "--u", "0"]);
    for o in v["objects"].as_array().unwrap() {
        if o["label"].as_str().unwrap().starts_with('B') {
            let den = o["twist_fraction"][1].as_u64().unwrap();
            assert!(5 % den == 0, "{o}");
        }
    }
}

#[test]
fn invalid_group_exits_2() {
    let out = dwinv(&["anyons", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("order"));
}

#[test]
fn inconsistent_coloring_exits_3() {
    let out = dwinv(&["invariant", "--braid", "s1", "--strands", "2", "--colors", "B_{1,0}", "A_{1,4}"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("[1, 2]"));
}

#[test]
fn whitehead_entry() {
    let v = json(&[
        "invariant", "--u", "1", "--braid", "s2^-2 s1 s2^-1 s1", "--strands", "3", "--colors", "B_{1,0}", "A_{1,4}",
    ]);
    // Z0 = θ_B θ_A W with W = 55 ζ_11^{-2} ζ_25^{-1} and θ_A = ζ_11^4, θ_B = ζ_25: 55 ζ_11^2.
    assert_eq!(v["zero_framed"]["exact"], "55*z^50 (z = zeta_275)");
    assert_eq!(v["components"].as_array().unwrap().len(), 2);
}

#[test]
fn empty_braid_gives_dimension() {
    let v = json(&["invariant", "--braid", "", "--strands", "1", "--colors", "B_{2,3}"]);
    assert_eq!(v["framed"]["exact"], "11");
}

#[test]
fn modular_u3_passes() {
    let v = json(&["modular", "--u", "3"]);
    let r = &v["results"][0];
    assert_eq!(r["modular_data"]["c_mod_8"], 0);
    assert_eq!(r["verlinde_certified"], true);
    assert_eq!(r["report"]["unitary"], true);
}

#[test]
fn wmatrix_u1_closed_form() {
    let v = json(&["wmatrix", "--u", "1"]);
    let r = &v["results"][0];
    assert_eq!(r["ba_closed_form"]["checked"], 440);
    assert!(r["ba_closed_form"]["mismatches"].as_array().unwrap().is_empty());
}

#[test]
fn distinguish_all() {
    let with_w = json(&["distinguish", "--all"]);
    assert_eq!(with_w["classes"], serde_json::json!([[0], [1], [2], [3], [4]]));
    let st = json(&["distinguish", "--all", "--st-only"]);
    assert_eq!(st["classes"], serde_json::json!([[0], [1, 4], [2, 3]]));
}

#[test]
fn distinguish_pair_reports_obstruction() {
    let v = json(&["distinguish", "--u", "1", "4"]);
    assert_eq!(v["verdict"], "NOT-EQUIVALENT");
    let ob = &v["obstruction"];
    assert_eq!(ob["t_allowed"], serde_json::json!(["A_{1,4}", "A_{2,2}"]));
    assert_eq!(ob["w_required"], serde_json::json!(["A_{1,1}", "A_{2,6}"]));
    let st = json(&["distinguish", "--u", "1", "4", "--st-only"]);
    assert_eq!(st["verdict"], "EQUIVALENT");
}

#[test]
fn lens_values() {
    let v = json(&["lens", "--lp", "1", "--lq", "1"]);
    assert_eq!(v["value"]["exact"], "1/55");
    let v = json(&["lens", "--u", "2", "--lp", "5", "--lq", "2", "--engine"]);
    assert_eq!(v["engine_agrees"], true);
    assert_eq!(v["continued_fraction"], serde_json::json!([2, 3]));
}

#[test]
fn quandle_check() {
    let v = json(&["quandle", "--braid", "s1 s2^-1 s1 s2^-1", "--strands", "3", "--k", "2", "--s", "1"]);
    assert_eq!(v["coloring_count"], 121);
    assert_eq!(v["holds"], true);
}

#[test]
fn csv_output_is_deterministic() {
    let dir = std::env::temp_dir().join(format!("dwinv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("anyons.csv");
    let p = path.to_str().unwrap();
    assert!(dwinv(&["anyons", "--format", "csv", "--out", p]).status.success());
    let first = std::fs::read(&path).unwrap();
    assert!(dwinv(&["anyons", "--format", "csv", "--out", p]).status.success());
    assert_eq!(first, std::fs::read(&path).unwrap());
    let text = String::from_utf8(first).unwrap();
    assert_eq!(text.lines().count(), 50);
    assert!(text.starts_with("label,dim,twist_fraction\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}
