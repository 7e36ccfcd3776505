use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn mzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mzeta"))
        .args(args)
        .env_remove("MZETA_BUDGET")
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = mzeta(&full);
    let stdout = String::from_utf8(out.stdout).unwrap();
    let v: Value = serde_json::from_str(&stdout)
        .unwrap_or_else(|e| panic!("{e}: {stdout}\n{}", String::from_utf8_lossy(&out.stderr)));
    validate(&v);
    (out.status.code().unwrap(), v)
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn type_ok(v: &Value, ty: &str) -> bool {
    match ty {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "boolean" => v.is_boolean(),
        "integer" => v.is_u64() || v.is_i64(),
        other => panic!("schema type {other} not handled"),
    }
}

/// Checks the subset of JSON Schema used by schema/report.schema.json.
fn check_against(v: &Value, schema: &Value, at: &str) {
    if let Some(c) = schema.get("const") {
        assert_eq!(v, c, "{at}: const");
    }
    if let Some(ty) = schema.get("type").and_then(Value::as_str) {
        assert!(type_ok(v, ty), "{at}: expected {ty}, got {v}");
    }
    if let Some(pat) = schema.get("pattern").and_then(Value::as_str) {
        assert_eq!(pat, "^[0-9a-f]{64}$");
        let s = v.as_str().unwrap();
        assert!(s.len() == 64 && s.chars().all(|c| c.is_ascii_hexdigit() && !c.is_ascii_uppercase()), "{at}");
    }
    if let Some(req) = schema.get("required").and_then(Value::as_array) {
        for k in req {
            assert!(v.get(k.as_str().unwrap()).is_some(), "{at}: missing {k}");
        }
    }
    if let Some(props) = schema.get("properties").and_then(Value::as_object) {
        let obj = v.as_object().unwrap();
        if schema.get("additionalProperties") == Some(&Value::Bool(false)) {
            for k in obj.keys() {
                assert!(props.contains_key(k), "{at}: unexpected key {k}");
            }
        }
        for (k, sub) in props {
            if let Some(x) = obj.get(k) {
                check_against(x, sub, &format!("{at}.{k}"));
            }
        }
    }
    if let Some(items) = schema.get("items") {
        for (i, x) in v.as_array().unwrap().iter().enumerate() {
            check_against(x, items, &format!("{at}[{i}]"));
        }
    }
}

fn validate(v: &Value) {
    let text = std::fs::read_to_string(crate_dir().join("schema/report.schema.json")).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    check_against(v, &schema, "$");
    let checks_pass = v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == Value::Bool(true));
    assert_eq!(v["pass"], Value::Bool(checks_pass));
}

#[test]
fn sncd_examples() {
    let (code, v) = report(&["sncd", "kodaira_II.json", "--lct"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["lct"]["value"], "-1/6");

    let (code, v) = report(&["sncd", "one_component.json", "--series", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["series"]["value"], serde_json::json!(["c", "c", "c"]));

    let (code, v) = report(&["sncd", "kodaira_I0star.json", "--poles"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["poles"]["value"], serde_json::json!([{"s": "1/2", "order": 1}]));
    assert!(v["caveats"].as_array().unwrap().iter().any(|c| c == "pole certification relative to free-symbol model"));
}

#[test]
fn sncd_from_path_and_gmp_with() {
    let path = crate_dir().join("data/kodaira/kodaira_IV.json");
    let (code, v) = report(&["sncd", path.to_str().unwrap(), "--h1", "--monodromy-zeta", "--gmp-with", "t-1,t^2+t+1,t-1"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["h1_char_poly"]["value"], "t^2 + t + 1");
    assert_eq!(v["results"]["monodromy_zeta"]["degree"], 0);

    let (code, v) = report(&["sncd", path.to_str().unwrap(), "--gmp-with", "t-1,t^2+1,t-1"]);
    assert_eq!(code, 1);
    assert_eq!(v["pass"], false);
}

#[test]
fn abelian_examples() {
    let (code, v) = report(&["abelian", "--type", "In", "--n", "3", "--verify"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["verify"]["poles"], serde_json::json!([{"s": "0", "order": 2}]));

    let (code, v) = report(&["abelian", "--type", "I0", "--series", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["series"]["value"], serde_json::json!(["b", "b"]));

    let (code, v) = report(&["abelian", "--type", "II", "--gmp"]);
    assert_eq!(code, 0);
    let entries = v["results"]["gmp"]["report"]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0]["cyclotomic"], "t^2 - t + 1");
    assert_eq!(entries[0]["matched"], 1);
}

#[test]
fn abelian_from_neron_file() {
    let path = crate_dir().join("data/neron/neron_IIIstar.json");
    let (code, v) = report(&["abelian", "--neron", path.to_str().unwrap(), "--verify", "--euler-check", "12", "--chi", "b=0"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["c"], "3/4");
    let out = mzeta(&["abelian", "--neron", path.to_str().unwrap(), "--gmp"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_tag_lists_available() {
    let out = mzeta(&["abelian", "--type", "V"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    for tag in ["I0", "In", "II", "III", "IV", "I0star", "Instar", "IVstar", "IIIstar", "IIstar"] {
        assert!(err.contains(tag), "{err}");
    }
}

#[test]
fn igusa_examples() {
    let (code, v) = report(&["igusa", "--poly", "x", "-p", "2", "-M", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["counts"], serde_json::json!([1, 1, 1, 1]));

    let (code, v) = report(&["igusa", "--poly", "x+y^2", "-p", "5", "-M", "6", "--fit"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["fit"]["value"], "5/(1 - 5*T)");

    let (code, v) = report(&["igusa", "--poly", "x^2", "-p", "3", "-m", "10", "--check-poinzeta"]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"][0]["pass"], true);

    let (code, _) = report(&["igusa", "--poly", "x^2", "-p", "3", "-M", "10", "--check-poinzeta", "--corrupt-zeta", "4"]);
    assert_eq!(code, 1);
}

#[test]
fn igusa_budget_refusal_suggests_smaller_m() {
    let out = Command::new(env!("CARGO_BIN_EXE_mzeta"))
        .args(["igusa", "--poly", "x^2 + y^2", "-p", "7", "-M", "6"])
        .env("MZETA_BUDGET", "1000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("largest feasible M is 1"), "{err}");

    let out = Command::new(env!("CARGO_BIN_EXE_mzeta"))
        .args(["igusa", "--poly", "x", "-p", "2"])
        .env("MZETA_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_input_exits_two_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"mode": "calabi_yau", "components": [{"id": "E", "N": 0, "mu": 0}], "strata": []}"#).unwrap();
    let out = mzeta(&["sncd", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("bad.json") && err.contains("components"), "{err}");

    let out = mzeta(&["sncd", "no_such_model.json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = mzeta(&["igusa", "--poly", "x^", "-p", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = mzeta(&["igusa", "--poly", "x", "-p", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical() {
    for args in [
        vec!["--json", "sncd", "kodaira_IIstar.json", "--lct", "--delta", "--poles", "--series", "12", "--monodromy-zeta"],
        vec!["--json", "abelian", "--type", "Instar", "--n", "3", "--verify", "--gmp", "--euler-check", "10"],
        vec!["sncd", "kodaira_III.json"],
    ] {
        let a = mzeta(&args);
        let b = mzeta(&args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

fn copy_dir(from: &Path, to: &Path) {
    std::fs::create_dir_all(to).unwrap();
    for entry in std::fs::read_dir(from).unwrap() {
        let entry = entry.unwrap();
        let target = to.join(entry.file_name());
        if entry.file_type().unwrap().is_dir() {
            copy_dir(&entry.path(), &target);
        } else {
            std::fs::copy(entry.path(), target).unwrap();
        }
    }
}

#[test]
fn verify_all_passes_and_detects_corruption() {
    let (code, v) = report(&["verify-all"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["checks"].as_array().unwrap().len(), 9);

    // phi0 of one residue class of IV changed from 3 to 2: the two routes disagree
    let dir = tempfile::tempdir().unwrap();
    copy_dir(&crate_dir().join("data"), dir.path());
    let file = dir.path().join("neron/neron_IV.json");
    let mut nd: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    nd["classes"][1]["phi0"] = Value::from(2);
    std::fs::write(&file, serde_json::to_string_pretty(&nd).unwrap()).unwrap();
    let (code, v) = report(&["--data-dir", dir.path().to_str().unwrap(), "verify-all"]);
    assert_eq!(code, 1);
    assert_eq!(v["pass"], false);
    assert_eq!(v["checks"][0]["pass"], false);

    // an unparsable sncd file fails the criteria that read it
    let dir = tempfile::tempdir().unwrap();
    copy_dir(&crate_dir().join("data"), dir.path());
    std::fs::write(dir.path().join("kodaira/kodaira_III.json"), "{ not json").unwrap();
    let (code, v) = report(&["--data-dir", dir.path().to_str().unwrap(), "verify-all"]);
    assert_eq!(code, 1);
    assert_eq!(v["checks"][2]["pass"], false);
}
