mod common;

use std::path::Path;
use std::process::{Command, Output};

use qals::parse_qubo_file;
use qals_core::random_qubo;
use qals_core::rng::{root_stream, Substream};
use serde_json::Value;

fn qals(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qals")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn solve_and_oracle_on_antiferromagnetic_pair() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "af.qubo", "qubo 2\n0 1 1.0\n");
    let out = qals(&["solve", &file, "--sampler", "exact"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("f_best: -2\n"), "{}", stdout(&out));

    let out = qals(&["oracle", &file]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "f_min: -2\nz_min: [-1, 1]\n");
}

#[test]
fn json_report_schema() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "af.qubo", "qubo 2\n0 1 1.0\n");
    let out = qals(&["solve", &file, "--sampler", "random", "--i-max", "5", "--trace", "--json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in ["f_returned", "f_best", "final_p", "final_lambda"] {
        assert!(v[key].is_f64(), "{key}");
    }
    for key in ["best_iteration", "iterations", "evaluations", "tabu_count"] {
        assert!(v[key].is_u64(), "{key}");
    }
    for key in ["z_returned", "z_best"] {
        let z = v[key].as_array().unwrap();
        assert_eq!(z.len(), 2);
        assert!(z.iter().all(|s| s == 1 || s == -1));
    }
    assert!(["iteration_limit", "stalled"].contains(&v["termination"].as_str().unwrap()));
    let trace = v["trace"].as_array().unwrap();
    assert_eq!(trace.len() as u64, v["iterations"].as_u64().unwrap());
    for t in trace {
        for key in [
            "iteration",
            "p",
            "temperature",
            "lambda",
            "f_prime",
            "outcome",
            "e",
            "d",
            "f_star",
            "f_best",
            "tabu_count",
        ] {
            assert!(t.get(key).is_some(), "{key}");
        }
    }
    let out = qals(&["solve", &file, "--sampler", "random", "--i-max", "5", "--json"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v.get("trace").is_none());
}

#[test]
fn gen_output_parses_bit_exactly() {
    let out = qals(&["gen", "--n", "9", "--density", "0.4", "--range", "-3:2.5", "--seed", "77"]);
    assert!(out.status.success());
    let parsed = parse_qubo_file(&stdout(&out)).unwrap();
    let expected = random_qubo(9, 0.4, (-3.0, 2.5), &mut root_stream(77, Substream::Instance)).unwrap();
    let bits = |p: &qals_core::QuboProblem| p.as_slice().iter().map(|v| v.to_bits()).collect::<Vec<_>>();
    assert_eq!(bits(&parsed), bits(&expected));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "ok.qubo", "qubo 2\n0 1 1.0\n");
    let bad = write(dir.path(), "bad.qubo", "qubo 2\n1 0 1.0\n");
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["solve", &bad], 1),
        (vec!["solve", "/nonexistent/file"], 1),
        (vec!["solve", &good, "--graph", "chimera:1"], 1),
        (vec!["solve", &good, "--sampler", "quantum"], 1),
        (vec!["solve", &good, "--q", "0"], 1),
        (vec!["solve", &good, "--sampler", "exact", "--sweeps", "5"], 1),
        (vec!["solve", &good, "--bogus"], 1),
        (vec!["gen", "--n", "3", "--range", "2"], 1),
        (vec!["oracle", &bad], 1),
        (vec![], 1),
        (vec!["--help"], 0),
    ];
    for (args, code) in cases {
        let out = qals(&args);
        assert_eq!(out.status.code(), Some(code), "{args:?}");
        if code == 1 {
            assert!(!out.stderr.is_empty());
        }
    }
    let dead = format!("remote:{}", common::dead_endpoint());
    let out = qals(&["solve", &good, "--sampler", &dead]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("transport"));
}

#[test]
fn bench_emits_json_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(
        dir.path(),
        "exp.conf",
        "# small calibration\nn = 5\nreplicas = 4\nbackend = exact\ni_max = 50\nseed = 3\n",
    );
    let csv = dir.path().join("out.csv");
    let out = qals(&["bench", &config, "--csv", csv.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["spec"]["n"], 5);
    assert_eq!(v["spec"]["backend"]["kind"], "exact");
    assert_eq!(v["replicas"].as_array().unwrap().len(), 4);
    assert!(v["aggregates"]["success_rate"].is_f64());
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 5);

    let broken = write(dir.path(), "broken.conf", "n = 5\nfoo = 1\n");
    let out = qals(&["bench", &broken]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let remote = write(
        dir.path(),
        "remote.conf",
        &format!("n = 4\nreplicas = 2\nbackend = remote:{}\n", common::dead_endpoint()),
    );
    assert_eq!(qals(&["bench", &remote]).status.code(), Some(2));
}

#[test]
fn solve_json_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let gen = qals(&["gen", "--n", "8", "--seed", "5"]);
    let file = write(dir.path(), "g.qubo", &stdout(&gen));
    for sampler in ["exact", "sa", "random"] {
        let mut args = vec!["solve", &file, "--sampler", sampler, "--seed", "42", "--i-max", "40", "--trace", "--json"];
        if sampler == "sa" {
            args.extend(["--sweeps", "20"]);
        }
        let a = qals(&args);
        let b = qals(&args);
        assert!(a.status.success(), "{sampler}");
        assert_eq!(a.stdout, b.stdout, "{sampler}");
    }
}
