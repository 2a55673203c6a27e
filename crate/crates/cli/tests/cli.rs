//! End-to-end runs of the `galqm` binary.

use std::process::{Command, Output};

use galqm::labels;
use galqm::tensor::joint_table;
use galqm::Rational;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galqm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let v: Value = serde_json::from_str(&stdout(args)).unwrap();
    assert_eq!(v["schema"], "galqm/1");
    v
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

#[test]
fn field_report() {
    let v = json(&["field", "--p", "2", "--n", "2"]);
    assert_eq!(v["modulus"], "x^2+x+1");
    assert_eq!(v["field"], "GF(2^2)/x^2+x+1");
    assert_eq!(v["elements"], serde_json::json!(["0", "1", "t", "t+1"]));
    let mul = v["multiplication"].as_array().unwrap();
    assert_eq!(mul.len(), 4);
    assert_eq!(mul[2], serde_json::json!(["0", "t", "t+1", "1"]));
    assert_eq!(v["addition"].as_array().unwrap().len(), 4);

    let v = json(&["field", "--p", "2", "--n", "1"]);
    assert_eq!(v["addition"], serde_json::json!([["0", "1"], ["1", "0"]]));
    assert_eq!(v["multiplication"], serde_json::json!([["0", "0"], ["0", "1"]]));

    // Tables are omitted above q = 16.
    let v = json(&["field", "--p", "17"]);
    assert!(v.get("addition").is_none());
}

#[test]
fn validation_errors_exit_2() {
    assert_eq!(code(&["field", "--p", "4", "--n", "1"]), 2);
    assert_eq!(code(&["field", "--p", "2", "--n", "0"]), 2);
    assert_eq!(code(&["table", "--state", "S", "--p", "3"]), 2);
    assert_eq!(code(&["table", "--state", "nope"]), 2);
    assert_eq!(code(&["table", "--coords", "0,0,0,0"]), 2);
    assert_eq!(code(&["table", "--coords", "1,0,0"]), 2);
    assert_eq!(code(&["table", "--state", "S", "--N", "3"]), 2);
    assert_eq!(code(&["table"]), 2);
    assert_eq!(code(&["hv", "--state", "S", "--uniform"]), 2);
}

#[test]
fn scale_guards_exit_3() {
    assert_eq!(code(&["chsh", "--p", "7"]), 3);
    assert_eq!(code(&["states", "--two-party", "--p", "17"]), 3);
    assert_eq!(code(&["states", "--p", "2", "--N", "17"]), 3);
    assert_eq!(code(&["hv", "--state", "S", "--p", "2", "--n", "2", "--coords", "1,0,0,0"]), 2);
    assert_eq!(code(&["hv", "--coords", "1,0,0,0", "--p", "2", "--n", "2"]), 3);
}

#[test]
fn singlet_table_csv_matches_golden() {
    let golden = include_str!("golden/table_singlet_gf2.csv");
    assert_eq!(stdout(&["table", "--state", "S", "--p", "2", "--format", "csv"]), golden);
}

#[test]
fn named_state_tables() {
    let v = json(&["table", "--state", "ab", "--p", "2"]);
    let s = labels::entangled_state("ab").unwrap();
    let tables = v["tables"].as_array().unwrap();
    assert_eq!(tables.len(), 9);
    for t in tables {
        let a = labels::spin_by_name(t["first"].as_str().unwrap()).unwrap();
        let b = labels::spin_by_name(t["second"].as_str().unwrap()).unwrap();
        let expected = joint_table(&s, &a, &b).unwrap();
        let got: Vec<&str> = ["++", "+-", "-+", "--"].iter().map(|k| t[k].as_str().unwrap()).collect();
        let want: Vec<String> = expected.probs.iter().map(ToString::to_string).collect();
        assert_eq!(got, want);
        assert_eq!(t["ev"], expected.expectation().to_string());
    }
}

#[test]
fn product_state_tables_factorize() {
    let v = json(&["table", "--coords", "1,0,0,0", "--p", "2"]);
    assert_eq!(v["state"]["product"], true);
    assert_eq!(v["state"]["factors"], serde_json::json!([["1", "0"], ["1", "0"]]));
    let a = labels::ket('a').unwrap();
    for t in v["tables"].as_array().unwrap() {
        let x = labels::spin_by_name(t["first"].as_str().unwrap()).unwrap();
        let y = labels::spin_by_name(t["second"].as_str().unwrap()).unwrap();
        let px = x.outcome_probabilities(&a).unwrap();
        let py = y.outcome_probabilities(&a).unwrap();
        for (k, key) in ["++", "+-", "-+", "--"].iter().enumerate() {
            let expected = px.probs()[k / 2] * py.probs()[k % 2];
            assert_eq!(t[key], expected.to_string());
        }
    }
}

#[test]
fn gf3_tables_cover_all_spin_pairs() {
    let v = json(&["table", "--coords", "0,1,2,0", "--p", "3"]);
    assert_eq!(v["state"]["product"], false);
    let tables = v["tables"].as_array().unwrap();
    assert_eq!(tables.len(), 36);
    for t in tables {
        let total: Rational = ["++", "+-", "-+", "--"]
            .iter()
            .map(|k| t[k].as_str().unwrap().parse::<Rational>().unwrap())
            .sum();
        assert_eq!(total, Rational::from_integer(1));
    }
}

#[test]
fn chsh_reports() {
    for p in ["2", "3"] {
        let v = json(&["chsh", "--p", p]);
        assert_eq!(v["max_abs"], "2");
        assert_eq!(v["mode"], "all");
        assert!(v["witness_count"].as_u64().unwrap() > 0);
    }
    let v = json(&["chsh", "--p", "2", "--mode", "singlet", "--witnesses", "3"]);
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 3);
    assert_eq!(v["witness_count"], 432);
    let w = &v["witnesses"][0];
    assert_eq!(w["state"], serde_json::json!(["0", "1", "1", "0"]));
    assert!(["2", "-2"].contains(&w["value"].as_str().unwrap()));
}

#[test]
fn hv_reports() {
    let v = json(&["hv", "--state", "S", "--p", "2"]);
    assert_eq!(v["feasible"], false);
    assert_eq!(v["strategies"], 64);
    assert_eq!(v["zero_cell_survivors"], 0);
    assert_eq!(v["certificate"]["kind"], "infeasible");
    assert!(!v["certificate"]["zero_cells"]["cells"].as_array().unwrap().is_empty());

    let v = json(&["hv", "--uniform"]);
    assert_eq!(v["feasible"], true);
    assert_eq!(v["certificate"]["kind"], "mixture");
}

#[test]
fn hv_instance_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("product.json");
    let path_str = path.to_str().unwrap();
    stdout(&["hv", "--coords", "1,1,0,0", "--emit-instance", "--out", path_str]);
    let v = json(&["hv", "--instance", path_str]);
    assert_eq!(v["feasible"], true);
    let weights = v["certificate"]["weights"].as_array().unwrap();
    assert!(!weights.is_empty());

    let entangled = dir.path().join("singlet.json");
    stdout(&["hv", "--state", "S", "--emit-instance", "--out", entangled.to_str().unwrap()]);
    let v = json(&["hv", "--instance", entangled.to_str().unwrap()]);
    assert_eq!(v["feasible"], false);

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"menu1":["A"],"menu2":["B"],"tables":[{"first":"A","second":"B","probs":["1/2","1/2","1/2","0"]}]}"#).unwrap();
    assert_eq!(code(&["hv", "--instance", bad.to_str().unwrap()]), 2);
    std::fs::write(&bad, "not json").unwrap();
    assert_eq!(code(&["hv", "--instance", bad.to_str().unwrap()]), 2);
}

#[test]
fn orbit_partitions() {
    let sizes = |v: &Value| -> Vec<(u64, bool)> {
        v["orbits"]
            .as_array()
            .unwrap()
            .iter()
            .map(|o| (o["size"].as_u64().unwrap(), o["product"].as_bool().unwrap()))
            .collect()
    };
    assert_eq!(sizes(&json(&["orbits", "--p", "2"])), vec![(9, true), (6, false)]);
    assert_eq!(sizes(&json(&["orbits", "--p", "2", "--exhaustive"])), vec![(9, true), (6, false)]);
    assert_eq!(sizes(&json(&["orbits", "--p", "3"])), vec![(16, true), (24, false)]);
}

#[test]
fn states_listing() {
    let v = json(&["states", "--two-party", "--p", "2"]);
    assert_eq!(v["count"], 15);
    assert_eq!(v["product_count"], 9);
    assert_eq!(v["entangled_count"], 6);
    let v = json(&["states", "--p", "3", "--N", "3"]);
    assert_eq!(v["count"], 13);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["orbits", "--p", "3"][..],
        &["chsh", "--p", "3", "--mode", "entangled"],
        &["hv", "--state", "S"],
        &["table", "--state", "S", "--format", "text"],
    ] {
        assert_eq!(stdout(args), stdout(args), "{args:?}");
    }
}

#[test]
fn formats_and_out_file() {
    for cmd in [&["field", "--p", "3"][..], &["states", "--two-party"], &["chsh"], &["hv", "--state", "S"], &["orbits"]] {
        for format in ["csv", "text"] {
            let mut args = cmd.to_vec();
            args.extend(["--format", format]);
            assert!(!stdout(&args).trim().is_empty(), "{args:?}");
        }
    }
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let printed = stdout(&["table", "--state", "S", "--format", "csv"]);
    assert!(stdout(&["table", "--state", "S", "--format", "csv", "--out", path.to_str().unwrap()]).is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), printed);
}
