use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn assets() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("assets")
}

fn example(name: &str) -> String {
    assets().join("examples").join(name).display().to_string()
}

fn k3lat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3lat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn schema(name: &str) -> Value {
    let text = std::fs::read_to_string(assets().join("schemas").join(name)).unwrap();
    serde_json::from_str(&text).unwrap()
}

/// Checks the subset of JSON Schema used by the shipped schemas: type,
/// required, properties, items, enum, anyOf, minimum, pattern (digits
/// only) and local `$ref`s into `$defs`.
fn validate(root: &Value, s: &Value, v: &Value, path: &str) -> Result<(), String> {
    if let Some(r) = s.get("$ref").and_then(Value::as_str) {
        let name = r.strip_prefix("#/$defs/").ok_or(format!("unsupported ref {r}"))?;
        return validate(root, &root["$defs"][name], v, path);
    }
    if let Some(options) = s.get("anyOf").and_then(Value::as_array) {
        if !options.iter().any(|o| validate(root, o, v, path).is_ok()) {
            return Err(format!("{path}: no anyOf branch matches {v}"));
        }
    }
    if let Some(t) = s.get("type") {
        let types: Vec<&str> = match t {
            Value::String(x) => vec![x.as_str()],
            Value::Array(xs) => xs.iter().filter_map(Value::as_str).collect(),
            _ => vec![],
        };
        let ok = types.iter().any(|t| match *t {
            "object" => v.is_object(),
            "array" => v.is_array(),
            "string" => v.is_string(),
            "integer" => v.is_i64() || v.is_u64(),
            "boolean" => v.is_boolean(),
            "null" => v.is_null(),
            _ => false,
        });
        if !ok {
            return Err(format!("{path}: {v} is not of type {t}"));
        }
    }
    if let Some(e) = s.get("enum").and_then(Value::as_array) {
        if !e.contains(v) {
            return Err(format!("{path}: {v} not in enum"));
        }
    }
    if let (Some(m), Some(x)) = (s.get("minimum").and_then(Value::as_i64), v.as_i64()) {
        if x < m {
            return Err(format!("{path}: {x} below {m}"));
        }
    }
    if let (Some(_), Some(x)) = (s.get("pattern"), v.as_str()) {
        let digits = x.strip_prefix('-').unwrap_or(x);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("{path}: {x} is not an integer string"));
        }
    }
    if let Some(req) = s.get("required").and_then(Value::as_array) {
        for k in req.iter().filter_map(Value::as_str) {
            if v.get(k).is_none() {
                return Err(format!("{path}: missing {k}"));
            }
        }
    }
    if let (Some(props), Some(obj)) = (s.get("properties").and_then(Value::as_object), v.as_object()) {
        for (k, sub) in props {
            if let Some(x) = obj.get(k) {
                validate(root, sub, x, &format!("{path}.{k}"))?;
            }
        }
    }
    if let (Some(items), Some(arr)) = (s.get("items"), v.as_array()) {
        for (i, x) in arr.iter().enumerate() {
            validate(root, items, x, &format!("{path}[{i}]"))?;
        }
    }
    Ok(())
}

fn assert_valid(schema_name: &str, v: &Value) {
    let s = schema(schema_name);
    if let Err(e) = validate(&s, &s, v, "$") {
        panic!("{schema_name}: {e}");
    }
}

#[test]
fn validator_rejects_bad_documents() {
    let s = schema("lattice.schema.json");
    assert!(validate(&s, &s, &serde_json::json!({"gram": [[2]]}), "$").is_ok());
    assert!(validate(&s, &s, &serde_json::json!({"gram": [["x"]]}), "$").is_err());
    assert!(validate(&s, &s, &serde_json::json!({"label": "a"}), "$").is_err());
}

#[test]
fn construct_hyperbolic_plane() {
    let out = k3lat(&["construct", "U"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["gram"], serde_json::json!([[0, 1], [1, 0]]));
    assert_valid("lattice.schema.json", &v);
}

#[test]
fn construct_todorov_pair() {
    let v = json_of(&k3lat(&["construct", "--todorov", "0,9"]));
    assert_eq!(v["rank"], 10);
    assert_eq!(v["determinant"], -256);
    assert_eq!(v["disc_order"], 256);
    assert_eq!(v["signature"], serde_json::json!({"positive": 1, "negative": 9}));
}

#[test]
fn construct_round_trips_through_gram_file() {
    let out = k3lat(&["construct", "--gram", &example("m010.json")]);
    let v = json_of(&out);
    assert_eq!(v["rank"], 11);
    assert_eq!(v["determinant"], 1024);
}

#[test]
fn invalid_inputs_exit_2() {
    for args in [
        vec!["construct", "--todorov", "1,9"],
        vec!["construct", "--todorov", "nine"],
        vec!["construct", "E9"],
        vec!["compute", "disc"],
        vec!["compute", "disc", "--in", "/nonexistent/file.json"],
        vec!["compute", "fm-count", "--classes", "2", "--verdicts", "certified"],
        vec![
            "compute",
            "embed",
            "--sub",
            &example("u.json"),
            "--amb",
            &example("e8minus.json"),
        ],
        vec!["verify-paper", "--node-budget", "0"],
        vec!["no-such-command"],
    ] {
        let out = k3lat(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn disc_of_unimodular_is_trivial() {
    let v = json_of(&k3lat(&["compute", "disc", "--in", &example("e8minus.json")]));
    assert_eq!(v["order"], 1);
    assert_eq!(v["trivial"], true);
}

#[test]
fn aut_of_signed_permutations() {
    let v = json_of(&k3lat(&["compute", "aut", "--in", &example("neg2cube.json")]));
    assert_eq!(v["order"], 48);
}

#[test]
fn budget_exhaustion_exits_3() {
    let out = k3lat(&["compute", "aut", "--in", &example("e8minus.json"), "--node-budget", "5"]);
    assert_eq!(out.status.code(), Some(3));
    let v = json_of(&out);
    assert_eq!(v["status"], "budget_exceeded");
    assert_eq!(v["lattice"]["rank"], 8);
}

#[test]
fn embed_todorov_lattice_into_k3() {
    let out = k3lat(&[
        "compute",
        "embed",
        "--sub",
        &example("m09.json"),
        "--amb",
        &example("k3.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["status"], "found");
    assert_eq!(v["primitive"], true);
    let t = &v["complement"]["sublattice"];
    assert_eq!(t["signature"], serde_json::json!({"positive": 2, "negative": 10}));
    assert_eq!(t["disc_order"], 256);
    assert_valid("embedding.schema.json", &v["embedding"]);
    assert_valid("embedding.schema.json", &v["complement"]["embedding"]);
}

#[test]
fn complement_and_saturate_tasks() {
    let dir = std::env::temp_dir().join(format!("k3lat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    // 2(e + f) inside U + <-2>: imprimitive, index 2
    let path = dir.join("emb.json");
    std::fs::write(&path, r#"{"gram": [[0,1,0],[1,0,0],[0,0,-2]], "basis": [[2,2,0]]}"#).unwrap();
    let p = path.display().to_string();
    let v = json_of(&k3lat(&["compute", "saturate", "--in", &p]));
    assert_eq!(v["index_in_saturation"], 2);
    assert_eq!(v["index"], 1);
    assert_eq!(v["sublattice"]["gram"], serde_json::json!([[2]]));
    let v = json_of(&k3lat(&["compute", "complement", "--in", &p]));
    assert_eq!(v["sublattice"]["rank"], 2);
    assert_eq!(v["sublattice"]["determinant"], 4);
    assert_eq!(
        v["sublattice"]["signature"],
        serde_json::json!({"positive": 0, "negative": 2})
    );
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn fm_count_task() {
    let v = json_of(&k3lat(&[
        "compute",
        "fm-count",
        "--classes",
        "one",
        "--verdicts",
        "certified",
    ]));
    assert_eq!(v, serde_json::json!({"kind": "exact", "count": 1}));
    let v = json_of(&k3lat(&[
        "compute",
        "fm-count",
        "--classes",
        "3",
        "--verdicts",
        "certified,certified,certified",
    ]));
    assert_eq!(v["count"], 3);
    let v = json_of(&k3lat(&[
        "compute",
        "fm-count",
        "--classes",
        "2",
        "--verdicts",
        "certified,inconclusive",
    ]));
    assert_eq!(v, serde_json::json!({"kind": "interval", "lower": 1, "upper": 2}));
}

#[test]
fn verify_paper_json_is_valid_and_deterministic() {
    let a = k3lat(&["verify-paper", "--format", "json", "--seed", "0"]);
    let b = k3lat(&["verify-paper", "--format", "json", "--seed", "0"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json_of(&a);
    assert_valid("report.schema.json", &v);
    let rows = v["rows"].as_array().unwrap();
    assert!(rows.len() >= 9);
    for r in rows {
        let verdict = r["verdict"].as_str().unwrap();
        assert!(verdict == "pass" || verdict == "certified_via_assumption", "{r}");
    }
}

#[test]
fn verify_paper_without_axioms() {
    let out = k3lat(&["verify-paper", "--axioms", "off", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for id in ["todorov-0-9-partners", "todorov-0-10-partners"] {
        let line = text.lines().find(|l| l.starts_with(id)).unwrap();
        assert!(line.ends_with("INCONCLUSIVE"), "{line}");
    }
    assert!(text.contains("marker: inconclusive-without-axioms"));
    assert!(!text.contains("conclusion:"));
}
