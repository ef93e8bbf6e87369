use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn fanshift(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fanshift"))
        .args(args)
        .env_remove("FANSHIFT_SEED")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn verify_to(dir: &Path, file: &str, args: &[&str]) -> (i32, String) {
    let path = dir.join(file);
    let mut all = vec!["verify"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--report", path.to_str().unwrap()]);
    let o = fanshift(&all);
    let text = fs::read_to_string(&path).unwrap_or_else(|_| panic!("{args:?}: {}", String::from_utf8_lossy(&o.stderr)));
    (code(&o), text)
}

fn schema() -> Value {
    let o = fanshift(&["schema"]);
    assert_eq!(code(&o), 0);
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn schema_lists_core_fields_and_version() {
    let s = schema();
    let text = s.to_string();
    for f in ["\"name\"", "\"params\"", "\"pass\""] {
        assert!(text.contains(f));
    }
    assert_eq!(s["properties"]["schema"]["const"], "v1");
}

#[test]
fn every_report_validates() {
    let dir = tempfile::tempdir().unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema()).unwrap();
    let runs: &[&[&str]] = &[
        &["decomposition", "--kmax", "4", "--samples", "50"],
        &["diam", "--kmax", "3", "--samples", "20"],
        &["cantor", "--kmax", "2", "--depth", "6"],
        &["impression", "--seed-t", "0.5", "--depth", "10"],
        &["product", "--samples", "100"],
        &["hlavna", "--depth", "4"],
        &["quotient", "--samples", "50"],
        &["juma", "--a", "1,4", "--depth", "3"],
        &["distinguish", "--a", "1,4,5", "--b", "2,4,5"],
        &["orbit", "--eps", "1/4", "--window", "1", "--timings"],
    ];
    for (i, args) in runs.iter().enumerate() {
        let (c, text) = verify_to(dir.path(), &format!("r{i}.json"), args);
        assert!(c == 0 || c == 1, "{args:?} exited {c}");
        let v: Value = serde_json::from_str(&text).unwrap();
        assert!(compiled.is_valid(&v), "{args:?}");
        assert_eq!(v["name"], args[0]);
        assert_eq!(v["pass"], c == 0);
    }
    let bogus = serde_json::json!({ "schema": "v0", "name": "diam", "params": {}, "pass": true, "witnesses": null });
    assert!(!compiled.is_valid(&bogus));
}

#[test]
fn documented_examples() {
    let dir = tempfile::tempdir().unwrap();
    let (c, _) = verify_to(dir.path(), "d.json", &["decomposition", "--kmax", "8", "--samples", "1000"]);
    assert_eq!(c, 0);
    let (c, text) = verify_to(dir.path(), "x.json", &["distinguish", "--a", "1,4,5", "--b", "2,4,5"]);
    assert_eq!(c, 0);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["witnesses"]["certificate"]["k"], 1);
    let (c, _) = verify_to(dir.path(), "i.json", &["impression", "--seed-t", "0.5", "--eps", "0.0625", "--depth", "40"]);
    assert_eq!(c, 0);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    // the sampled slice bound does not hold, so diam fails with a witness
    let (c, text) = verify_to(dir.path(), "diam.json", &["diam", "--kmax", "3", "--samples", "200"]);
    assert_eq!(c, 1);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert!(!v["witnesses"]["slices"][1]["witness"].is_null());

    let usage: &[&[&str]] = &[
        &["verify", "nope"],
        &["verify", "orbit", "--eps", "-1"],
        &["verify", "orbit", "--eps", "x/2"],
        &["verify", "decomposition", "--kmax", "0"],
        &["verify", "distinguish", "--a", "1,3"],
        &["verify", "distinguish", "--a", "1,4"],
        &["verify", "impression", "--seed-t", "1.5"],
        &["render", "fig9", "--out", "/dev/null"],
        &["render", "fig1", "--out", "/dev/null", "--depth", "0"],
        &["render", "fig1"],
        &["frobnicate"],
    ];
    for args in usage {
        assert_eq!(code(&fanshift(args)), 2, "{args:?}");
    }
}

#[test]
fn reports_and_figures_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["quotient", "--samples", "100", "--seed", "99"];
    let (_, a) = verify_to(dir.path(), "a.json", &args);
    let (_, b) = verify_to(dir.path(), "b.json", &args);
    assert!(!a.is_empty());
    assert_eq!(a, b);
    for fig in ["fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "glue"] {
        let p1 = dir.path().join(format!("{fig}-1.svg"));
        let p2 = dir.path().join(format!("{fig}-2.svg"));
        for p in [&p1, &p2] {
            assert_eq!(code(&fanshift(&["render", fig, "--out", p.to_str().unwrap(), "--depth", "3"])), 0);
        }
        let s = fs::read_to_string(&p1).unwrap();
        assert!(s.starts_with("<svg"));
        assert_eq!(s, fs::read_to_string(&p2).unwrap());
    }
}

#[test]
fn seed_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# product run\nseed = 5\nsamples = 30\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let seed_of = |text: &str| serde_json::from_str::<Value>(text).unwrap()["params"]["seed"].clone();

    let (_, t) = verify_to(dir.path(), "1.json", &["product", "--config", cfg]);
    assert_eq!(seed_of(&t), 5);
    let (_, t) = verify_to(dir.path(), "2.json", &["product", "--config", cfg, "--seed", "6"]);
    assert_eq!(seed_of(&t), 6);

    let out = dir.path().join("3.json");
    let o = Command::new(env!("CARGO_BIN_EXE_fanshift"))
        .args(["verify", "product", "--samples", "30", "--report", out.to_str().unwrap()])
        .env("FANSHIFT_SEED", "41")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(seed_of(&fs::read_to_string(&out).unwrap()), 41);

    let (_, t) = verify_to(dir.path(), "4.json", &["product", "--samples", "30"]);
    assert_eq!(seed_of(&t), 7);

    let bad = dir.path().join("bad.cfg");
    fs::write(&bad, "colour = red\n").unwrap();
    assert_eq!(code(&fanshift(&["verify", "product", "--config", bad.to_str().unwrap()])), 2);
}
