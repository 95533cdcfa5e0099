use std::path::Path;
use std::process::Command;

use serde_json::{json, Value};

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_orbifusion")).args(args).env_remove("ORBIFUSION_SEED").output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf8"))
}

fn ok(args: &[&str]) -> Value {
    let (code, out) = run(args);
    assert_eq!(code, 0, "{args:?} -> {out}");
    serde_json::from_str(&out).expect("json")
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p.to_str().unwrap().to_owned()
}

fn component_circles(svg: &str) -> usize {
    svg.matches("stroke-width=\"3\"").count()
}

#[test]
fn klein_h2() {
    assert_eq!(ok(&["cohomology", "--group", "[2,2]", "--degree", "2"]), json!({"invariant_factors": [2]}));
}

#[test]
fn degenerate_level_exits_one() {
    let (code, out) = run(&["interpolate", "ty", "--p", "5", "--k", "25"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"], "degenerate");
}

#[test]
fn missing_file_exits_two() {
    assert_eq!(run(&["fcat", "pentagon", "missing.json"]).0, 2);
    assert_eq!(run(&["trivialize", "/nonexistent/x.json"]).0, 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["bogus"]).0, 2);
    assert_eq!(run(&["cohomology", "--group", "Z2", "--degree", "2", "--frobnicate"]).0, 2);
    assert_eq!(run(&["cohomology", "--group", "Z2"]).0, 2);
    assert_eq!(run(&["--tol", "-1", "cohomology", "--group", "Z2", "--degree", "2"]).0, 2);
}

#[test]
fn domain_errors_carry_code() {
    let (code, out) = run(&["orbisheaf", "dihedral", "--n", "2"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"], "invalid_input");
    assert!(v.get("witness").is_some());

    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.json", &json!({"degree": 2}));
    assert_eq!(run(&["trivialize", &f]).0, 1);
}

#[test]
fn trivialize_generator_and_coboundary() {
    let dir = tempfile::tempdir().unwrap();
    let h = ok(&["cohomology", "--group", "Z3", "--degree", "3", "--generators"]);
    assert_eq!(h["invariant_factors"], json!([3]));
    let gen = write(dir.path(), "gen.json", &h["generators"][0]);
    let v = ok(&["trivialize", &gen]);
    assert_eq!(v, json!({"trivial": false, "primitive": null}));

    let zero = json!({"degree": 2, "group": {"type": "abelian", "factors": [2, 2]}, "values": {}});
    let z = write(dir.path(), "zero.json", &zero);
    assert_eq!(ok(&["trivialize", &z])["trivial"], true);
}

#[test]
fn klein_twisted_regular() {
    assert_eq!(ok(&["twistedrep", "decompose", "--klein"]), json!([{"dim": 2, "mult": 2}]));
    assert_eq!(ok(&["twistedrep", "decompose", "--group", "S3"]).as_array().unwrap().len(), 3);
}

#[test]
fn frobenius_and_nakayama() {
    let v = ok(&["twistedrep", "frobenius", "--klein", "--subgroup", "0,1"]);
    assert_eq!(v["passes"], true);
    let v = ok(&["twistedrep", "nakayama", "--klein", "--subgroup", "0,2"]);
    assert_eq!(v["passes"], true);
    let v = ok(&["twistedrep", "nakayama", "--group", "Q8", "--subgroup", "0,4"]);
    assert_eq!(v["passes"], true);
}

#[test]
fn pointed_and_ty_pentagon() {
    let dir = tempfile::tempdir().unwrap();
    for a in 0..3 {
        let c = ok(&["fcat", "build", "pointed", "--group", "Z3", "--class", &a.to_string()]);
        let f = write(dir.path(), "p.json", &c);
        assert_eq!(ok(&["fcat", "pentagon", &f])["passes"], true);
    }
    for tau in ["+", "-"] {
        let c = ok(&["fcat", "build", "ty", "--group", "[2]", "--chi", "1/2", "--tau", tau]);
        let f = write(dir.path(), "ty.json", &c);
        let r = ok(&["fcat", "pentagon", &f]);
        assert_eq!(r["passes"], true);
        assert!(r["instances"].as_u64().unwrap() > 0);
    }
}

#[test]
fn tampered_category_fails_pentagon() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = ok(&["fcat", "build", "pointed", "--group", "Z2", "--class", "1"]);
    let entries = c["f"].as_array_mut().unwrap();
    let last = entries.last_mut().unwrap();
    last["value"]["phase"] = json!("1/4");
    let f = write(dir.path(), "bad.json", &c);
    let r = ok(&["fcat", "pentagon", &f]);
    assert_eq!(r["passes"], false);
    assert!(!r["violations"].as_array().unwrap().is_empty());
}

#[test]
fn quad_counts() {
    assert_eq!(ok(&["quad", "enumerate", "--group", "Z2"])["count"], 4);
    assert_eq!(ok(&["quad", "enumerate", "--group", "Z5"])["count"], 5);
    assert_eq!(ok(&["quad", "refine", "--group", "[2]", "--chi", "1/2", "--all"])["count"], 2);
}

#[test]
fn centre_tables() {
    assert_eq!(ok(&["centre", "su2", "--k", "5"])["label"], "Semi");
    assert_eq!(ok(&["centre", "su2", "--k", "2"])["label"], "sVec");
    assert_eq!(ok(&["centre", "so4", "--a", "1", "--b", "0"])["quotient"]["label"], "sVec");
    assert_eq!(ok(&["centre", "so4", "--a", "1", "--b", "2"])["quotient"]["label"], "Vec");
    let c = ok(&["centre", "circle", "--k", "3"]);
    assert_eq!(c["form"]["group"]["factors"], json!([6]));
    assert_eq!(c["form"]["values"]["1"], "1/12");
}

#[test]
fn centre_quotient_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let cover = ok(&["centre", "so4", "--a", "1", "--b", "0"]);
    let f = write(dir.path(), "q.json", &cover["cover"]["form"]);
    let q = ok(&["centre", "quotient", &f, "--z", "1,1"]);
    assert_eq!(q, cover["quotient"]);
}

#[test]
fn su2_level_four_figure() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("su2.svg");
    let r = ok(&["interpolate", "su2", "--k", "4", "--svg", svg.to_str().unwrap()]);
    let manifolds: Vec<&str> = r["components"].as_array().unwrap().iter().map(|c| c["manifold"].as_str().unwrap()).collect();
    assert_eq!(manifolds, ["S³", "S³", "ℝP³"]);
    assert_eq!(component_circles(&std::fs::read_to_string(&svg).unwrap()), 3);
}

#[test]
fn ty3_svg_two_circles_and_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    ok(&["interpolate", "ty", "--p", "3", "--k", "3", "--tau", "+", "--svg", a.to_str().unwrap()]);
    ok(&["interpolate", "ty", "--p", "3", "--k", "3", "--tau", "+", "--svg", b.to_str().unwrap()]);
    let sa = std::fs::read(&a).unwrap();
    assert_eq!(sa, std::fs::read(&b).unwrap());
    assert_eq!(component_circles(std::str::from_utf8(&sa).unwrap()), 2);
}

#[test]
fn ty5_accepts_level_five() {
    let v = ok(&["interpolate", "ty", "--p", "5", "--k", "5", "--tau", "+"]);
    assert_eq!(v["p"], 5);
    assert_eq!(v["report"]["admissible"], true);
}

#[test]
fn dihedral_report() {
    let v = ok(&["orbisheaf", "dihedral", "--n", "4"]);
    assert_eq!(v["mobile_identities"]["passes"], true);
    assert_eq!(v["mobile_identities"]["unit_dim"], "1/2");
    assert_eq!(v["simples"].as_array().unwrap().len(), 5);
}

fn flip_model() -> Value {
    json!({
        "group": {"type": "abelian", "factors": [2]},
        "action": [[0, 1, 2], [1, 0, 2]],
        "theta": {}
    })
}

#[test]
fn sheaf_check_and_adjunction() {
    let dir = tempfile::tempdir().unwrap();
    let base = flip_model();
    let sheaf = json!({
        "base": base,
        "fibers": {"0": 1, "1": 1, "2": 1},
        "phi": [
            [[[1, 0], [0, 0], [0, 0]], [[0, 0], [1, 0], [0, 0]], [[0, 0], [0, 0], [1, 0]]],
            [[[0, 0], [1, 0], [0, 0]], [[1, 0], [0, 0], [0, 0]], [[0, 0], [0, 0], [-1, 0]]]
        ]
    });
    let f = write(dir.path(), "s.json", &sheaf);
    let v = ok(&["orbisheaf", "check", &f]);
    assert_eq!(v["valid"], true);
    assert_eq!(v["end_dim"], 2);
    assert_eq!(v["support"], json!([0, 1]));

    let m = write(dir.path(), "m.json", &base);
    let a = ok(&["orbisheaf", "adjunction", &m]);
    assert_eq!(a["passes"], true);
}

#[test]
fn broken_sheaf_reports_witness() {
    let dir = tempfile::tempdir().unwrap();
    let sheaf = json!({
        "base": flip_model(),
        "fibers": {"0": 1, "1": 1, "2": 1},
        "phi": [
            [[[1, 0], [0, 0], [0, 0]], [[0, 0], [1, 0], [0, 0]], [[0, 0], [0, 0], [1, 0]]],
            [[[0, 0], [1, 0], [0, 0]], [[1, 0], [0, 0], [0, 0]], [[0, 0], [0, 0], [2, 0]]]
        ]
    });
    let f = write(dir.path(), "s.json", &sheaf);
    let v = ok(&["orbisheaf", "check", &f]);
    assert_eq!(v["valid"], false);
    assert!(!v["witness"].is_null());
}

#[test]
fn emitted_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let h = ok(&["cohomology", "--group", "[2,2]", "--degree", "2", "--generators"]);
    let gen = &h["generators"][0];
    let f = write(dir.path(), "g.json", gen);
    let (_, text) = run(&["trivialize", &f]);
    assert_eq!(serde_json::from_str::<Value>(&text).unwrap()["trivial"], false);
    let reparsed: Value = serde_json::from_str(&std::fs::read_to_string(&f).unwrap()).unwrap();
    assert_eq!(&reparsed, gen);

    let c = ok(&["fcat", "build", "ty", "--group", "[3]", "--chi", "1/3", "--tau", "-"]);
    let f = write(dir.path(), "c.json", &c);
    let text = std::fs::read_to_string(&f).unwrap();
    assert_eq!(text, c.to_string());
    assert_eq!(ok(&["fcat", "pentagon", &f])["passes"], true);
}

#[test]
fn seed_override_is_respected() {
    let out = Command::new(env!("CARGO_BIN_EXE_orbifusion"))
        .args(["twistedrep", "decompose", "--klein"])
        .env("ORBIFUSION_SEED", "7")
        .output()
        .unwrap();
    assert!(out.status.success());
    let bad = Command::new(env!("CARGO_BIN_EXE_orbifusion"))
        .args(["twistedrep", "decompose", "--klein"])
        .env("ORBIFUSION_SEED", "seven")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
