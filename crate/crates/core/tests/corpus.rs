//! Runs every case under `corpus/cases` end to end. CLI cases go through the
//! compiled binary; the few operations without a verb go through the library.

use std::path::{Path, PathBuf};
use std::process::Command;

use quiver_si::faces::face_of_weight;
use quiver_si::homext::is_prehomogeneous;
use quiver_si::partition::staircase_partition;
use quiver_si::stability::root_quiver;
use quiver_si::{double_quiver, DimVector, Quiver, Weight};
use serde_json::{json, Value};

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

/// Bare `.json` arguments are corpus-relative paths.
fn resolve(arg: &str) -> String {
    if arg.ends_with(".json") && !arg.starts_with('{') && !arg.starts_with('[') {
        corpus().join(arg).to_string_lossy().into_owned()
    } else {
        arg.to_string()
    }
}

fn run_cli(args: &[String]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_quiver-si"))
        .args(args.iter().map(|a| resolve(a)))
        .output()
        .expect("binary runs");
    let code = out.status.code().unwrap_or(-1);
    let doc = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, doc)
}

fn quiver(input: &Value) -> Quiver {
    let path = resolve(input["quiver"].as_str().unwrap());
    Quiver::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn ints(v: &Value) -> Vec<i64> {
    serde_json::from_value(v.clone()).unwrap()
}

fn run_lib(op: &str, input: &Value) -> Value {
    let r = match op {
        "staircase_partition" => {
            let p = staircase_partition(&ints(&input["x"]), &ints(&input["y"])).unwrap();
            json!(p.parts())
        }
        "double_quiver" => {
            let d = double_quiver(&quiver(input));
            json!({"vertices": d.doubled.n(), "arrows": d.doubled.arrows().len()})
        }
        "root_quiver" => {
            let roots: Vec<DimVector> = input["roots"].as_array().unwrap().iter().map(|r| DimVector(ints(r))).collect();
            let rq = root_quiver(&quiver(input), &roots).unwrap();
            json!({"arrows": rq.quiver.arrows().len()})
        }
        "face_of_weight" => {
            let f = face_of_weight(&quiver(input), &DimVector(ints(&input["alpha"])), &Weight(ints(&input["sigma"]))).unwrap();
            let roots: Vec<Vec<i64>> = f.roots.iter().map(|r| r.0.clone()).collect();
            json!({"roots": roots, "r": f.r()})
        }
        "is_prehomogeneous" => json!(is_prehomogeneous(&quiver(input), &DimVector(ints(&input["alpha"]))).unwrap()),
        other => panic!("unknown corpus op `{other}`"),
    };
    json!({ "result": r })
}

/// Object patterns match any superset; everything else must be equal.
fn matches(pattern: &Value, v: &Value) -> bool {
    match (pattern, v) {
        (Value::Object(p), Value::Object(o)) => p.iter().all(|(k, pv)| o.get(k).is_some_and(|ov| matches(pv, ov))),
        _ => pattern == v,
    }
}

fn check(name: &str, doc: &Value, c: &Value) {
    let ptr = c["pointer"].as_str().unwrap();
    let got = doc.pointer(ptr).unwrap_or_else(|| panic!("{name}: no value at {ptr} in {doc}"));
    if let Some(e) = c.get("equals") {
        assert_eq!(got, e, "{name}: {ptr}");
    }
    if let Some(n) = c.get("len") {
        assert_eq!(got.as_array().map(Vec::len), n.as_u64().map(|n| n as usize), "{name}: {ptr}");
    }
    if let Some(p) = c.get("contains") {
        let items = got.as_array().unwrap_or_else(|| panic!("{name}: {ptr} is not an array"));
        assert!(items.iter().any(|x| matches(p, x)), "{name}: {ptr} lacks {p}");
    }
}

fn cases() -> Vec<(String, Value)> {
    let mut out: Vec<(String, Value)> = std::fs::read_dir(corpus().join("cases"))
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            (name, serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap())
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

#[test]
fn corpus_cases() {
    let all = cases();
    assert!(all.len() >= 50);
    for (name, case) in &all {
        let doc = if let Some(args) = case.get("args") {
            let args: Vec<String> = serde_json::from_value(args.clone()).unwrap();
            let (code, doc) = run_cli(&args);
            assert_eq!(code, 0, "{name}: {doc}");
            doc
        } else {
            run_lib(case["op"].as_str().unwrap(), &case["input"])
        };
        for c in case["checks"].as_array().unwrap() {
            check(name, &doc, c);
        }
    }
}

#[test]
fn output_is_byte_stable() {
    let args: Vec<String> = ["walls", "--quiver", "quivers/octahedron.json", "--alpha", "[1,1,2,1,1]"]
        .iter()
        .map(|s| resolve(s))
        .collect();
    let once = || Command::new(env!("CARGO_BIN_EXE_quiver-si")).args(&args).output().unwrap().stdout;
    let first = once();
    assert!(!first.is_empty());
    assert_eq!(first, once());
}

#[test]
fn exit_codes() {
    let theta = "quivers/theta2.json".to_string();
    let s = |x: &str| x.to_string();
    // Missing seed on a randomized verb.
    let (code, _) = run_cli(&[s("oracle"), s("--quiver"), theta.clone(), s("--alpha"), s("[1,1]"), s("--beta"), s("[1,1]")]);
    assert_eq!(code, 2);
    let (code, _) = run_cli(&[s("ext"), s("--quiver"), s("missing.json"), s("--alpha"), s("[1,1]"), s("--beta"), s("[1,1]")]);
    assert_eq!(code, 2);
    // ⟨α,β⟩ ≠ 0 is a domain error naming the precondition.
    let (code, doc) = run_cli(&[s("circ"), s("--quiver"), theta, s("--alpha"), s("[1,0]"), s("--beta"), s("[1,0]")]);
    assert_eq!(code, 1);
    assert_eq!(doc["error"]["kind"], json!("precondition"));
    assert!(doc["error"]["name"].is_string());
}
