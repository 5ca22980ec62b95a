use dirac_point_cli::{render, run, JobConfig};
use serde_json::Value;
use std::process::{Command, Output};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dirac-point")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = cli(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn classify_massless_whole_plane() {
    let doc = json(&["classify", "--m", "0", "--A", "0,0,2,0,-2,0,0,0"]);
    assert_eq!(doc["command"], "classify");
    assert_eq!(doc["result"]["case"], "1a");
    assert_eq!(doc["result"]["point_spectrum"], "NonRealPlane");
}

#[test]
fn spectrum_of_scalar_coupling() {
    let doc = json(&["spectrum", "--A", "2,0,0,0,0,0,2,0", "--m", "1"]);
    let ev = doc["result"]["eigenvalues"].as_array().unwrap();
    assert_eq!(ev.len(), 1);
    assert_eq!(ev[0]["z"], serde_json::json!([0.0, 0.0]));
    assert_eq!(ev[0]["multiplicity"], 1);
}

#[test]
fn approx_converge_column_decreases() {
    let doc = json(&["approx-converge", "--eps", "0.2,0.1,0.05"]);
    assert_eq!(doc["result"]["strictly_decreasing"], true);
    let out = cli(&["approx-converge", "--eps", "0.2,0.1,0.05", "--format", "csv"]);
    assert!(out.status.success());
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(reader.headers().unwrap().iter().collect::<Vec<_>>()[..2], ["epsilon", "hs_distance"]);
    let col: Vec<f64> = reader.records().map(|r| r.unwrap()[1].parse().unwrap()).collect();
    assert_eq!(col.len(), 3);
    assert!(col.windows(2).all(|w| w[1] < w[0]), "{col:?}");
}

#[test]
fn nonrel_converge_halves_with_speed_of_light() {
    let doc = json(&["nonrel-converge", "--A", "-2,0,0,0,0,0,0,0", "--c", "10,20,40"]);
    for r in doc["result"]["ratios"].as_array().unwrap() {
        assert!((r.as_f64().unwrap() - 2.0).abs() < 0.6, "{r}");
    }
    assert_eq!(doc["input"]["z"], serde_json::json!([-1.0, 0.0]));
}

#[test]
fn approx_spectrum_and_oracle_agree() {
    let doc = json(&["approx-spectrum", "--eps", "0.2"]);
    let z = &doc["result"]["runs"][0]["eigenvalues"][0]["z"];
    assert!(z[0].as_f64().unwrap() < 0.0 && z[0].as_f64().unwrap() > -0.1);
    let doc = json(&["oracle-verify", "--eps", "0.2", "--L", "10", "--N", "2048", "--region=-0.5,0.5,-0.3,0.3"]);
    assert_eq!(doc["result"]["agree"], true, "{doc}");
}

#[test]
fn resolvent_samples_grid() {
    let doc = json(&["resolvent", "--z", "0.2,0.5", "--N", "3", "--L", "1"]);
    let samples = doc["result"]["samples"].as_array().unwrap();
    assert_eq!(samples.len(), 9);
    assert_eq!(samples[0]["x"], -1.0);
    assert_eq!(samples[0]["kernel"].as_array().unwrap().len(), 2);
}

#[test]
fn documents_round_trip_and_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["classify", "--A", "1,0.5,0.3,-1,-0.2,1,-2,0.1", "--m", "-0.7"],
        vec!["approx-spectrum", "--A", "1,1,0.5,0,-0.5,0,1,-0.5", "--eps", "0.3,0.1", "--profile", "triangle", "--region=-0.9,0.9,-3,3"],
        vec!["approx-converge", "--eps", "0.2,0.1", "--N", "160"],
    ] {
        let paths: Vec<_> = (0..2).map(|i| dir.path().join(format!("{}-{i}.json", args[0]))).collect();
        for p in &paths {
            let mut full = args.clone();
            let p = p.to_str().unwrap();
            full.extend(["--out", p]);
            assert!(cli(&full).status.success());
        }
        let first = std::fs::read(&paths[0]).unwrap();
        assert_eq!(first, std::fs::read(&paths[1]).unwrap(), "{args:?} is not deterministic");

        let doc: Value = serde_json::from_slice(&first).unwrap();
        let cfg: JobConfig = serde_json::from_value(doc["input"].clone()).unwrap();
        cfg.validate().unwrap();
        assert_eq!(render(&cfg, &run(&cfg).unwrap()), first);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&["classify", "--A", "1,2"]).status.code(), Some(2));
    assert_eq!(cli(&["bogus"]).status.code(), Some(2));
    assert_eq!(cli(&["classify", "--format", "csv"]).status.code(), Some(2));
    assert_eq!(cli(&["approx-spectrum", "--profile", "nope"]).status.code(), Some(2));
    assert_eq!(cli(&["approx-spectrum", "--eps", "-0.1"]).status.code(), Some(2));
    assert_eq!(cli(&["resolvent", "--z", "2,0"]).status.code(), Some(2));
    let singular = cli(&["resolvent", "--A", "0,0,2,0,-2,0,0,0", "--z", "0,1"]);
    assert_eq!(singular.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&singular.stderr).contains("not in the resolvent set"));
    assert_eq!(cli(&["spectrum", "--A", "0,0,2,0,-2,0,0,0"]).status.code(), Some(3));
}

#[test]
fn profile_file_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bump.txt");
    std::fs::write(&path, "-0.5 0.2\n-0.25 1.0\n0.0 1.5\n0.25 1.0\n0.5 0.2\n").unwrap();
    let spec = format!("file:{}", path.display());
    let doc = json(&["approx-spectrum", "--eps", "0.2", "--profile", &spec]);
    assert_eq!(doc["result"]["runs"][0]["eigenvalues"].as_array().unwrap().len(), 1);
}
