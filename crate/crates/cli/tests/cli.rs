use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn gla(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gla"))
        .args(args)
        .env_remove("GLA_MAX_DEGREE")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn report(o: &Output) -> Value {
    assert_eq!(code(o), 0, "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

fn write(dir: &Path, name: &str, v: &Value) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p
}

fn one_even() -> Value {
    json!({"field": "Q", "basis": [{"name": "x", "degree": 2}], "brackets": []})
}

#[test]
fn example3_enveloping_dims_at_most_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("e3.json");
    let o = gla(&["example", "example3", "--truncate", "100", "-o", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let r = report(&gla(&["series", "--pbw", out.to_str().unwrap()]));
    assert_eq!(r["result"]["max_ul_dim"], "1");
    assert_eq!(r["config"]["truncation"], 100);
    let dims = r["result"]["ul_dims"]["dims"].as_array().unwrap();
    assert_eq!(dims.len(), 101);
}

#[test]
fn depth_of_one_even_generator_is_one() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "x.json", &one_even());
    let r = report(&gla(&["depth", p.to_str().unwrap()]));
    assert_eq!(r["result"]["certificate"]["grade"], 1);
    assert_eq!(r["result"]["certificate"]["field"], "Q");
    let r = report(&gla(&["depth", p.to_str().unwrap(), "--field", "Fp:7"]));
    assert_eq!(r["result"]["certificate"]["grade"], 1);
    assert_eq!(r["result"]["certificate"]["field"], json!({"Fp": 7}));
}

#[test]
fn broken_jacobi_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let bad = json!({
        "field": "Q",
        "basis": [
            {"name": "x", "degree": 2}, {"name": "y", "degree": 2}, {"name": "z", "degree": 2},
            {"name": "w", "degree": 4}, {"name": "v", "degree": 6}
        ],
        "brackets": [
            {"left": "y", "right": "z", "value": [{"basis": "w", "coeff": "1"}]},
            {"left": "x", "right": "w", "value": [{"basis": "v", "coeff": "1"}]}
        ]
    });
    let p = write(dir.path(), "bad.json", &bad);
    let o = gla(&["validate", p.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["result"]["valid"], false);
    let v = &r["result"]["violations"][0];
    assert_eq!(v["axiom"], "jacobi");
    let mut triple: Vec<&str> = v["elements"].as_array().unwrap().iter().map(|e| e.as_str().unwrap()).collect();
    triple.sort();
    assert_eq!(triple, ["x", "y", "z"]);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "x.json", &one_even());
    let o = gla(&["depth", p.to_str().unwrap(), "--field", "Fp:2"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("characteristic 2"));
    assert_eq!(code(&gla(&["depth", p.to_str().unwrap(), "--no-such-flag"])), 1);
    assert_eq!(code(&gla(&["frobnicate"])), 1);
    assert_eq!(code(&gla(&["example", "example3"])), 1);
    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "{ not json").unwrap();
    assert_eq!(code(&gla(&["depth", junk.to_str().unwrap()])), 2);
    let wrong = write(dir.path(), "w.json", &json!({"basis": [{"name": "x"}]}));
    assert_eq!(code(&gla(&["validate", wrong.to_str().unwrap()])), 2);
}

#[test]
fn identical_runs_give_identical_bytes() {
    let args = ["check", "--theorem", "2", "example4", "--truncate", "30"];
    let a = gla(&args);
    let b = gla(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn flat_formats() {
    let o = gla(&["example", "example3", "--truncate", "10", "--format", "tsv"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("key\tvalue\n"));
    assert!(text.contains("config.truncation\t10\n"));
    let o = gla(&["example", "example3", "--truncate", "10", "--format", "md"]);
    assert!(String::from_utf8(o.stdout).unwrap().contains("| config.truncation | 10 |"));
}

#[test]
fn max_degree_cap_applies() {
    let o = Command::new(env!("CARGO_BIN_EXE_gla"))
        .args(["example", "example3", "--truncate", "500"])
        .env("GLA_MAX_DEGREE", "50")
        .output()
        .unwrap();
    let r = report(&o);
    assert_eq!(r["config"]["truncation"], 50);
    assert_eq!(r["config"]["truncation_requested"], 500);
    assert_eq!(r["config"]["max_degree_cap"], 50);
}

#[test]
fn direct_sum_bracket_and_window_statement() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "x.json", &one_even());
    let s = p.to_str().unwrap();
    let r = report(&gla(&["check", "--theorem", "p4", s, s]));
    assert_eq!(r["result"]["verdict"], "holds");
    assert_eq!(r["result"]["details"]["bracket"], json!(["2", "2"]));

    let dims = dir.path().join("free.json");
    let o = gla(&["free", "--gens", "1,1", "--truncate", "40", "--dims-only", "-o", dims.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let r = report(&gla(&["check", "--theorem", "5", "--d", "1", "--r", "1,2,3", dims.to_str().unwrap()]));
    let found: Vec<bool> = r["result"]["checks"].as_array().unwrap().iter().map(|c| c["holds"] == true).collect();
    assert_eq!(found, [true, true, true]);
}

#[test]
fn example4_growth_flags_the_claim() {
    let r = report(&gla(&["growth", "--polybd", "--claim", "2", "example4", "--truncate", "60"]));
    let claim = &r["result"]["claim"];
    assert_eq!(claim["claimed_polybd"], "2");
    assert_eq!(claim["window_limited"], true);
    assert!(r["result"]["growth"]["fitted_exponent"]["diagnostic"] == true);
}

#[test]
fn presentations_round_trip_through_quotient() {
    let dir = tempfile::tempdir().unwrap();
    let pres = json!({
        "field": "Q", "truncation": 5,
        "generators": [{"name": "a", "degree": 1}, {"name": "b", "degree": 1}],
        "relators": [["br", "a", "a"], ["br", "b", "b"]]
    });
    let p = write(dir.path(), "p.json", &pres);
    let r = report(&gla(&["quotient", p.to_str().unwrap()]));
    let dims: Vec<&str> = r["result"]["dims"]["dims"].as_array().unwrap().iter().map(|d| d.as_str().unwrap()).collect();
    // free on two odd generators with [a,a] = [b,b] = 0
    assert_eq!(dims[..3], ["0", "2", "1"]);
    let out = dir.path().join("q.json");
    std::fs::write(&out, serde_json::to_vec(&r).unwrap()).unwrap();
    let v = report(&gla(&["validate", out.to_str().unwrap()]));
    assert_eq!(v["result"]["valid"], true);
}

#[test]
fn grade_with_module_file() {
    let dir = tempfile::tempdir().unwrap();
    let l = json!({
        "field": "Q",
        "basis": [{"name": "a", "degree": 1}],
        "brackets": []
    });
    let lp = write(dir.path(), "l.json", &l);
    let m = json!({"basis": [{"name": "m", "degree": 0}], "action": []});
    let mp = write(dir.path(), "m.json", &m);
    let r = report(&gla(&["grade", lp.to_str().unwrap(), "--module", mp.to_str().unwrap()]));
    assert_eq!(r["result"]["certificate"]["grade"], 0);
    let r = report(&gla(&["grade", lp.to_str().unwrap(), "--module", "free"]));
    assert_eq!(r["result"]["certificate"]["grade"], 0);
}
