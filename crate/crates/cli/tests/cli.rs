use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_borelbocs")).args(args).env("BORELBOCS_THREADS", "2").output().unwrap()
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("borelbocs-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn fixture_file(name: &str) -> PathBuf {
    scratch(&format!("{name}.json"), &format!(r#"{{"field": "Q", "fixture": "{name}"}}"#))
}

#[test]
fn fixture_f1_reports_all_false_table() {
    let o = run(&["fixtures", "run", "F1"]);
    let out = String::from_utf8_lossy(&o.stdout);
    assert!(o.status.success(), "{out}");
    assert!(out.contains("pass F1 equivalence verdicts: [false, false, false, false]"), "{out}");
    assert!(out.lines().all(|l| l.starts_with("pass ")), "{out}");
}

#[test]
fn one_vertex_identity_passes_every_flag() {
    let o = run(&["borel", "check", fixture_file("F0").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    for flag in ["b1", "b2", "b3", "h", "n", "r"] {
        assert_eq!(v["result"][flag]["status"], "pass", "{flag}");
    }
}

#[test]
fn ext_comparison_on_f3() {
    let f = fixture_file("F3");
    let o = run(&["ext", f.to_str().unwrap(), "--from", "1", "--to", "3", "--degree", "1", "--over", "compare", "--recheck"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json_of(&o);
    let c = &v["result"]["comparison"];
    assert_eq!((c["source_dim"].as_u64(), c["target_dim"].as_u64()), (Some(0), Some(1)));
    assert_eq!(c["epi"], false);
    assert!(v["recheck"].as_array().unwrap().iter().all(|r| r["ok"] == true));
}

#[test]
fn reports_are_byte_identical() {
    let f = fixture_file("F5");
    let a = run(&["borel", "check", f.to_str().unwrap()]);
    let b = run(&["borel", "check", f.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
    let v = json_of(&a);
    assert!(v["digest"].as_str().unwrap().starts_with("sha256:"));
    assert!(v.get("timings").is_none());
}

#[test]
fn schema_errors_exit_two_with_a_pointer() {
    let f = scratch("bad.json", r#"{"field": "Q", "algebra": {"quiver": {"vertices": ["1"], "arows": []}}}"#);
    let o = run(&["algebra", "validate", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json_of(&o)["error"]["pointer"], "/algebra/quiver/arows");
}

#[test]
fn missing_subalgebra_is_a_precondition() {
    let o = run(&["borel", "check", root().join("problems/kite.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json_of(&o)["error"]["pointer"], "/subalgebra");
}

#[test]
fn shipped_problems_load() {
    for entry in std::fs::read_dir(root().join("problems")).unwrap() {
        let p = entry.unwrap().path();
        let o = run(&["algebra", "validate", p.to_str().unwrap()]);
        let code = o.status.code();
        let v = json_of(&o);
        if v["error"]["pointer"] == "/algebra" {
            // A bocs file has no algebra of its own.
            assert!(p.to_str().unwrap().contains("bocs"), "{p:?}");
        } else {
            assert_eq!(code, Some(0), "{p:?}: {v}");
        }
    }
}

#[test]
fn serialised_dual_coring_round_trips_as_a_bocs() {
    let o = run(&["coring", "build", fixture_file("F4").to_str().unwrap(), "--recheck"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    let bocs = serde_json::json!({"field": "Q", "bocs": v["result"]["coring"]});
    let f = scratch("f4bocs.json", &bocs.to_string());
    let r = run(&["roundtrip", f.to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(0), "{}", String::from_utf8_lossy(&r.stdout));
    let rt = json_of(&r);
    assert_eq!(rt["result"]["right_algebra_dim"], 18);
}

#[test]
fn regularisation_trace_for_f5() {
    let o = run(&["bocs", "regularize", root().join("problems/f5_bocs.json").to_str().unwrap(), "--recheck"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["result"]["steps"].as_array().unwrap().len(), 1);
    assert_eq!(v["result"]["regular"], true);
}

#[test]
fn schema_covers_the_problem_keys() {
    let text = std::fs::read_to_string(root().join("schemas/problem.schema.json")).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    let props = schema["properties"].as_object().unwrap();
    for key in ["field", "fixture", "algebra", "subalgebra", "order", "orderB", "bocs", "options"] {
        assert!(props.contains_key(key), "{key}");
    }
    let opts = schema["properties"]["options"]["properties"].as_object().unwrap();
    for key in ["pathLengthBound", "extCutoffOverride", "groupLikeBudget", "primesForEnumeration"] {
        assert!(opts.contains_key(key), "{key}");
    }
}
