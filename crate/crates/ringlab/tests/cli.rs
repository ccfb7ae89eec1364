//! Exit codes, output formats, schema shape, and env-var handling for
//! the `ringlab` binary.

use std::process::{Command, Output};

fn run(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ringlab"));
    cmd.args(args);
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap_or(-1)
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn classify_table_and_exit_codes() {
    let out = run(&["classify", "Z8"], &[]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let rows = v["results"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0]["ideal"], "zero");
    assert_eq!(rows[0]["predicate"], "cdf");
    assert_eq!(rows[0]["holds"], false);
    assert_eq!(rows[3]["predicate"], "proper");

    let out = run(&["classify", "Z9 x Z9", "--ideal", "gen((0,1))"], &[]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let cdf = &v["results"][0];
    assert_eq!(cdf["predicate"], "cdf");
    assert_eq!(cdf["holds"], false);
    assert_eq!(cdf["witness"]["elements"][0], "(1,0)");

    assert_eq!(code(&run(&["classify", "Z"], &[])), 2);
    assert_eq!(code(&run(&["classify", "Z1"], &[])), 2);
}

#[test]
fn classify_whole_ideal_is_input_error() {
    assert_eq!(code(&run(&["classify", "Z8", "--ideal", "gen(1)"], &[])), 2);
}

#[test]
fn cutoff_env_var() {
    assert_eq!(code(&run(&["classify", "Z16"], &[("RINGLAB_CUTOFF", "2")])), 4);
    assert_eq!(code(&run(&["classify", "Z16"], &[("RINGLAB_CUTOFF", "64")])), 0);
    assert_eq!(code(&run(&["classify", "Z16"], &[("RINGLAB_CUTOFF", "soon")])), 2);
}

#[test]
fn audit_exit_codes() {
    let out = run(&["audit", "all"], &[]);
    assert_eq!(code(&out), 3);
    let v = json(&out);
    let claims = v["claims"].as_array().unwrap();
    assert_eq!(claims.len(), 25);
    for c in claims {
        assert!(c["tag"].is_string());
        assert!(c["status"].is_string());
        assert!(c["instances"].is_u64());
        assert!(c["nonvacuous"].is_u64());
    }

    let out = run(&["audit", "REM_PRIME_IMPLIES_CDF"], &[]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["claims"][0]["status"], "Confirmed");

    assert_eq!(code(&run(&["audit", "BOGUS"], &[])), 2);
}

#[test]
fn search_ranges_and_errors() {
    let out = run(&["search", "2", "10", "prime"], &[]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let m: Vec<u64> = v["search"]["matches"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect();
    assert_eq!(m, vec![2, 3, 5, 7]);

    let out = run(&["search", "2", "40", "cdf"], &[]);
    let v = json(&out);
    let m: Vec<u64> = v["search"]["matches"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect();
    for n in [6, 12, 15, 21, 33, 39] {
        assert!(m.contains(&n), "{n} missing");
    }
    for n in [8, 9, 16, 35] {
        assert!(!m.contains(&n), "{n} unexpectedly present");
    }

    assert_eq!(code(&run(&["search", "9", "2", "cdf"], &[])), 2);
    assert_eq!(code(&run(&["search", "2", "10", "green"], &[])), 2);
}

#[test]
fn witness_exit_codes() {
    let out = run(&["witness", "Z35", "zero", "3", "33"], &[]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["witness_check"]["valid_counterexample"], true);
    assert_eq!(v["witness_check"]["quad_in_ideal"], false);

    assert_eq!(code(&run(&["witness", "Z6", "zero", "2", "2"], &[])), 1);
    assert_eq!(code(&run(&["witness", "Z6", "zero", "(1,2)", "2"], &[])), 2);
}

#[test]
fn markdown_is_semantically_identical() {
    let js = run(&["classify", "Z8", "--ideal", "gen(4)"], &[]);
    let md = run(&["classify", "Z8", "--ideal", "gen(4)", "--format", "md"], &[]);
    assert_eq!(code(&js), 0);
    assert_eq!(code(&md), 0);
    let v = json(&js);
    let md_text = String::from_utf8(md.stdout).unwrap();
    for row in v["results"].as_array().unwrap() {
        let line = format!(
            "| {} | {} | {} | {} |",
            row["ring"].as_str().unwrap(),
            row["ideal"].as_str().unwrap(),
            row["predicate"].as_str().unwrap(),
            row["holds"]
        );
        assert!(md_text.contains(&line), "missing markdown row: {line}");
    }
}

#[test]
fn nonzero_flag_switches_mode() {
    let out = run(&["classify", "Z8", "--ideal", "zero", "--nonzero-only"], &[]);
    let v = json(&out);
    for row in v["results"].as_array().unwrap() {
        if row["predicate"] == "prime" || row["predicate"] == "cube-condition" {
            continue;
        }
        assert_eq!(row["mode"], "nonzero-pairs");
    }
    assert!(v["command"].as_str().unwrap().ends_with("--nonzero-only"));
}

#[test]
fn reports_validate_against_shipped_schema() {
    // Structural validation against the schema's required/allowed keys,
    // kept dependency-free.
    let schema: serde_json::Value =
        serde_json::from_str(include_str!("../schema/report.schema.json")).unwrap();
    let object_keys = |v: &serde_json::Value| -> Vec<String> {
        v.as_object().unwrap().keys().cloned().collect()
    };
    let allowed_top = object_keys(&schema["properties"]);
    let allowed_row = object_keys(&schema["definitions"]["predicateRow"]["properties"]);
    let allowed_claim = object_keys(&schema["definitions"]["claimRow"]["properties"]);

    for args in [
        vec!["classify", "Z8"],
        vec!["audit", "THM_CHAR3"],
        vec!["search", "2", "10", "cdf"],
        vec!["witness", "Z35", "zero", "3", "33"],
    ] {
        let out = run(&args, &[]);
        let v = json(&out);
        for key in object_keys(&v) {
            assert!(allowed_top.contains(&key), "unexpected top-level key {key}");
        }
        assert!(v["command"].is_string());
        assert!(v["version"].is_string());
        if let Some(rows) = v["results"].as_array() {
            for row in rows {
                for key in object_keys(row) {
                    assert!(allowed_row.contains(&key), "unexpected result key {key}");
                }
            }
        }
        if let Some(claims) = v["claims"].as_array() {
            for claim in claims {
                for key in object_keys(claim) {
                    assert!(allowed_claim.contains(&key), "unexpected claim key {key}");
                }
            }
        }
    }
}
