use std::path::PathBuf;
use std::process::{Command, Output};

use ktrmatrix::ktfactory::SeriesMat;
use ktrmatrix::reference::{reference_matrix, Kind, Variant};
use ktrmatrix::rootsys::Algebra;

fn ktrmatrix(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_ktrmatrix"));
    c.args(args).env_remove("KTRMATRIX_ORDER").env_remove("KTRMATRIX_FOCK").env_remove("KTRMATRIX_CONFIG");
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ktrmatrix-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn closed_form_json_round_trips() {
    let o = ktrmatrix(&["compute", "r", "--algebra", "a1", "--s", "-2", "--s1", "-1", "--backend", "rational", "--format", "json"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["exponents"], serde_json::json!([-2, -1]));
    let parsed = SeriesMat::from_json(&v["matrix"]).unwrap();
    let r = reference_matrix(Kind::R, Algebra::A1, Variant::Plain, &[-2, -1]).unwrap();
    assert_eq!(parsed, r.matrix);
    assert_eq!(r.to_json()["prefactor"], v["prefactor"]);
}

#[test]
fn engine_json_round_trips() {
    let o = ktrmatrix(&["compute", "l", "--algebra", "a1", "--side", "phi-psi", "--s", "1", "--s1", "0", "--order", "3", "--format", "json"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["backend"], "series");
    let m = SeriesMat::from_json(&v["matrix"]).unwrap();
    let again = serde_json::to_string(&m.to_json("oscillator-series")).unwrap();
    assert_eq!(serde_json::from_str::<serde_json::Value>(&again).unwrap(), v["matrix"]);
}

#[test]
fn order_zero_shows_the_cartan_factor() {
    let o = ktrmatrix(&["compute", "l", "--algebra", "a1", "--side", "chi-phi", "--s", "1", "--s1", "0", "--order", "0"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["E11", "q^(1", "D1)"]), "{text}");
    assert!(text.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["E22", "q^(-1", "D1)"]), "{text}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(ktrmatrix(&["compute", "r", "--algebra", "a3", "--s", "1", "--s1", "0"], &[]).status.code(), Some(2));
    assert_eq!(ktrmatrix(&["compute", "r", "--algebra", "a1"], &[]).status.code(), Some(2));
    assert_eq!(ktrmatrix(&["compute", "l", "--algebra", "a1", "--side", "phi-phi", "--s", "1", "--s1", "0"], &[]).status.code(), Some(2));
    assert_eq!(ktrmatrix(&["verify", "ybe", "--config", "/nonexistent/ktrmatrix.conf"], &[]).status.code(), Some(2));
    assert_eq!(ktrmatrix(&["--help"], &[]).status.code(), Some(0));
}

#[test]
fn verify_reports_sorted_verdicts() {
    let o = ktrmatrix(&["verify", "ybe", "--format", "json"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let v: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.len(), 12);
    assert!(v.iter().all(|x| x["pass"] == true && x["first_failure"].is_null()));
    let algs: Vec<&str> = v.iter().map(|x| x["algebra"].as_str().unwrap()).collect();
    let mut sorted = algs.clone();
    sorted.sort();
    assert_eq!(algs, sorted);
}

#[test]
fn verify_at_given_exponents() {
    let o = ktrmatrix(&["verify", "gauge", "--algebra", "a2", "--s", "3", "--s1", "-1", "--s2", "2"], &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("[3, -1, 2]"));
}

#[test]
fn config_and_environment_defaults() {
    let cfg = scratch("defaults.conf");
    std::fs::write(&cfg, "# defaults\nformat = json\norder = 2\nbackend = series\n").unwrap();
    let cfg_s = cfg.to_str().unwrap();
    let args = ["compute", "r", "--algebra", "a1", "--s", "1", "--s1", "0", "--config", cfg_s];
    let v: serde_json::Value = serde_json::from_str(&stdout(&ktrmatrix(&args, &[]))).unwrap();
    assert_eq!(v["order"], 2);
    let v: serde_json::Value = serde_json::from_str(&stdout(&ktrmatrix(&args, &[("KTRMATRIX_ORDER", "1")]))).unwrap();
    assert_eq!(v["order"], 1);
    let mut flagged = args.to_vec();
    flagged.extend(["--order", "3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&ktrmatrix(&flagged, &[("KTRMATRIX_ORDER", "1")]))).unwrap();
    assert_eq!(v["order"], 3);

    std::fs::write(&cfg, "colour = red\n").unwrap();
    assert_eq!(ktrmatrix(&args, &[]).status.code(), Some(2));
}

#[test]
fn out_writes_a_file() {
    let path = scratch("variants.txt");
    let o = ktrmatrix(&["list", "variants", "--out", path.to_str().unwrap()], &[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let body = std::fs::read_to_string(&path).unwrap();
    assert_eq!(body.lines().count(), 15);
    assert!(body.contains("inverse-derived"));
}

#[test]
fn fock_dump_has_dense_blocks() {
    let o = ktrmatrix(&["compute", "l", "--algebra", "a1", "--s", "1", "--s1", "0", "--order", "1", "--fock", "4", "--format", "json"], &[]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["fock"]["dim"], 4);
    let block = &v["fock"]["entries"][0]["matrix"];
    assert_eq!(block.as_array().unwrap().len(), 4);
}
