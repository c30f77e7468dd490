use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};
use std::sync::Arc;

use qls_core::extensions::{catalog, catalog_descriptor, CatalogName};
use qls_core::json::{descriptor_to_json, qls_to_json};
use qls_core::sample::orthonormal_space;
use qls_core::{Qls, SuperForm};
use serde_json::{json, Value};
use tempfile::TempDir;

struct Run {
    code: i32,
    json: Value,
    stdout: String,
}

fn finish(out: Output) -> Run {
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    Run { code: out.status.code().unwrap(), json, stdout }
}

fn qls(args: &[&str]) -> Run {
    qls_env(args, None)
}

fn qls_env(args: &[&str], field: Option<&str>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qls"));
    cmd.args(args).env_remove("QLS_FIELD");
    if let Some(f) = field {
        cmd.env("QLS_FIELD", f);
    }
    finish(cmd.output().unwrap())
}

fn write(dir: &TempDir, name: &str, v: &Value) -> String {
    let path: PathBuf = dir.path().join(name);
    std::fs::write(&path, serde_json::to_string(v).unwrap()).unwrap();
    path.to_str().unwrap().to_owned()
}

fn named(s: &str) -> CatalogName {
    s.parse().unwrap()
}

#[test]
fn catalog_output_is_the_library_value_and_deterministic() {
    let first = qls(&["catalog", "--name", "g4,1s"]);
    assert_eq!(first.code, 0);
    assert_eq!(first.json, qls_to_json(&catalog(&named("g4,1s")).unwrap()));
    assert_eq!(first.json["brackets"].as_array().unwrap().len(), 2);
    assert_eq!(first.stdout, qls(&["catalog", "--name", "g4,1s"]).stdout);
    assert_eq!(qls(&["catalog", "--name", "g[3]"]).code, 2);
}

#[test]
fn partition_tables() {
    let symp = qls(&["partitions", "--m", "4", "--eps", "-1"]);
    assert_eq!(symp.json, json!([[4], [2, 2], [2, 1, 1], [1, 1, 1, 1]]));
    let orth = qls(&["partitions", "--m", "4", "--eps", "1"]);
    assert_eq!(orth.json.as_array().unwrap().len(), 3);
    let odd = qls(&["partitions", "--m", "3", "--eps", "-1"]);
    assert_eq!(odd.code, 1);
    assert_eq!(odd.json["error"], "out-of-range");
    assert_eq!(qls(&["partitions", "--m", "4", "--eps", "2"]).code, 2);
}

#[test]
fn build_check_and_classify() {
    let dir = TempDir::new().unwrap();
    let d = catalog_descriptor(&named("g4,2s")).unwrap().unwrap();
    let desc = write(&dir, "d.json", &descriptor_to_json(&d));
    let built = qls(&["build", "--descriptor", &desc]);
    assert_eq!(built.code, 0);
    assert_eq!(built.json, qls_to_json(&catalog(&named("g4,2s")).unwrap()));

    let alg = write(&dir, "g.json", &built.json);
    let check = qls(&["check", "--algebra", &alg]);
    assert_eq!(check.code, 0);
    assert_eq!(check.json["jacobi"], true);
    assert!(check.json["witness"].is_null());

    let g6s = write(&dir, "g6s.json", &qls(&["catalog", "--name", "g6s"]).json);
    let class = qls(&["classify", "--algebra", &g6s]);
    assert_eq!(class.code, 0);
    assert_eq!(
        class.json,
        json!({"dup": 1, "type": "singular_s1", "elementary": true, "center_dim": 3, "derived_dim": 3, "reduced": true, "quadratic_dimension": 3})
    );
}

#[test]
fn corrupted_algebra_fails_the_check() {
    let space = orthonormal_space(1, 2);
    let alpha = SuperForm::generator(&space, 0);
    let s = SuperForm::generator(&space, 1);
    let form = alpha.wedge(&s.wedge(&s).unwrap()).unwrap();
    let broken = Qls::from_invariant_form_unchecked(Arc::clone(&space), &form).unwrap();
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "bad.json", &qls_to_json(&broken));
    let check = qls(&["check", "--algebra", &path]);
    assert_eq!(check.code, 1);
    assert_eq!(check.json["jacobi"], false);
    assert_eq!(check.json["invariance"], true);
    assert_eq!(check.json["witness"]["property"], "jacobi");
    let class = qls(&["classify", "--algebra", &path]);
    assert_eq!(class.code, 1);
    assert_eq!(class.json["error"], "not-quadratic");
}

#[test]
fn orbits_and_comparisons() {
    let dir = TempDir::new().unwrap();
    let nil = write(&dir, "n.json", &json!([[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, -1, 0]]));
    let orbit = qls(&["orbit", "--matrix", &nil, "--eps", "-1"]);
    assert_eq!(orbit.code, 0);
    assert_eq!(orbit.json["nilpotent"], json!([2, 2]));
    assert_eq!(orbit.json["eps"], -1);

    let c = write(&dir, "c.json", &json!({"matrix": [[1, 0], [0, -1]], "eps": -1}));
    let c2 = write(&dir, "c2.json", &json!({"matrix": [[2, 0], [0, -2]], "gram": [[0, 1], [-1, 0]]}));
    assert_eq!(qls(&["compare", "--a", &c, "--b", &c2]).json, json!({"equal": false}));
    assert_eq!(qls(&["compare", "--a", &c, "--b", &c2, "--projective"]).json, json!({"equal": true}));

    let descriptor = |s: &str| descriptor_to_json(&catalog_descriptor(&named(s)).unwrap().unwrap());
    let a = write(&dir, "a.json", &descriptor("j(4,1/2)"));
    let b = write(&dir, "b.json", &descriptor("j(4,-1/2)"));
    let g41 = write(&dir, "g41.json", &descriptor("g4,1s"));
    let g42 = write(&dir, "g42.json", &descriptor("g4,2s"));
    assert_eq!(qls(&["compare", "--a", &a, "--b", &b]).json, json!({"i_isomorphic": true}));
    assert_eq!(qls(&["compare", "--a", &g41, "--b", &g42]).json["i_isomorphic"], false);
    assert_eq!(qls(&["compare", "--a", &a, "--b", &c]).code, 2);
}

#[test]
fn field_selection() {
    let dir = TempDir::new().unwrap();
    let rotation = write(&dir, "r.json", &json!({"matrix": [[0, 1], [-1, 0]], "gram": [[1, 0], [0, 1]]}));
    let rational = qls_env(&["orbit", "--matrix", &rotation, "--eps", "1"], None);
    assert_eq!(rational.code, 1);
    assert_eq!(rational.json["error"], "non-split-spectrum");
    let gaussian = qls_env(&["orbit", "--matrix", &rotation, "--eps", "1"], Some("gaussian"));
    assert_eq!(gaussian.code, 0);
    assert_eq!(gaussian.json["invertible"][0]["lambda"], json!({"re": "0", "im": "1"}));
    assert_eq!(qls_env(&["partitions", "--m", "2", "--eps", "1"], Some("quaternion")).code, 2);
}

#[test]
fn malformed_input_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("junk.json");
    std::fs::write(&path, "{ not json").unwrap();
    let junk = path.to_str().unwrap();
    for args in [
        vec!["check", "--algebra", junk],
        vec!["check", "--algebra", "/nonexistent/file.json"],
        vec!["orbit", "--matrix", junk, "--eps", "1"],
        vec!["frobnicate"],
    ] {
        assert_eq!(qls(&args).code, 2, "{args:?}");
    }
    let mismatch = write(&dir, "m.json", &json!({"matrix": [[0]], "eps": 1}));
    assert_eq!(qls(&["orbit", "--matrix", &mismatch, "--eps", "-1"]).code, 2);
}

#[test]
fn reads_standard_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_qls"))
        .args(["orbit", "--matrix", "-", "--eps", "1"])
        .env_remove("QLS_FIELD")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"[[0, 0], [0, 0]]").unwrap();
    let run = finish(child.wait_with_output().unwrap());
    assert_eq!(run.code, 0);
    assert_eq!(run.json["nilpotent"], json!([1, 1]));
}
