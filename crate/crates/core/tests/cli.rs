use std::path::PathBuf;
use std::process::{Command, Output};

use galnorm::group::GroupAlgebraElem;

fn galnorm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galnorm")).args(args).env_remove("GALNORM_SEED").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn field(out: &str, key: &str) -> String {
    out.lines().find_map(|l| l.strip_prefix(&format!("{key}: "))).unwrap_or_else(|| panic!("no {key} in {out}")).to_string()
}

fn temp_fixture(name: &str, edit: impl FnOnce(&mut serde_json::Value)) -> PathBuf {
    let src = galnorm::fixture::builtin(name).unwrap().to_json();
    let mut v: serde_json::Value = serde_json::from_str(&src).unwrap();
    edit(&mut v);
    let path = std::env::temp_dir().join(format!("galnorm-{name}-{}.json", std::process::id()));
    std::fs::write(&path, serde_json::to_string_pretty(&v).unwrap()).unwrap();
    path
}

#[test]
fn validate() {
    let o = galnorm(&["validate", "builtin:cyclotomic5"]);
    assert_eq!(o.status.code(), Some(0));
    let bad = temp_fixture("gaussian", |v| v["group"]["generators"][0] = serde_json::json!(["1", "1"]));
    let o = galnorm(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("automorphism invariant violated"));
    let bad = temp_fixture("s3", |v| v["group"]["u"] = serde_json::json!(1));
    let o = galnorm(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("relation violated"), "{}", stderr(&o));
    let bad = temp_fixture("gaussian", |v| v["modulus"][1] = serde_json::json!("1/0"));
    let o = galnorm(&["validate", bad.to_str().unwrap()]);
    assert!(stderr(&o).contains("modulus[1]"), "{}", stderr(&o));
    let o = galnorm(&["validate", "/nonexistent/fixture.json"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn normal_test() {
    let o = galnorm(&["normal-test", "builtin:gaussian", "1,1", "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(field(&stdout(&o), "verdict"), "Normal");
    assert_eq!(field(&stdout(&o), "oracle"), "normal");
    let o = galnorm(&["normal-test", "builtin:gaussian", "0,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(field(&stdout(&o), "verdict"), "ProbablyNotNormal");
    assert_eq!(field(&stdout(&o), "bound").parse::<f64>().unwrap(), 2.0 / (1u64 << 20) as f64);
    let o = galnorm(&["normal-test", "builtin:gaussian", "0,1", "--epsilon", "1e-9", "--trials", "3"]);
    assert_eq!(field(&stdout(&o), "trials"), "3");
    assert!(field(&stdout(&o), "bound").parse::<f64>().unwrap() <= 1e-9);
}

#[test]
fn oracle_guard() {
    let alpha = vec!["1"; 16].join(",");
    let o = galnorm(&["normal-test", "builtin:cyclotomic17", &alpha, "--oracle", "--guard", "8"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("guard exceeded: degree 16 > 8"), "{}", stderr(&o));
}

#[test]
fn find_normal_then_check() {
    for name in ["builtin:cyclotomic5", "builtin:s3"] {
        let o = galnorm(&["find-normal", name, "--seed", "9"]);
        assert_eq!(o.status.code(), Some(0));
        let alpha = field(&stdout(&o), "alpha");
        field(&stdout(&o), "certificate");
        let check = galnorm(&["normal-test", name, &alpha, "--oracle"]);
        assert_eq!(field(&stdout(&check), "oracle"), "normal");
        let again = galnorm(&["find-normal", name, "--seed", "9"]);
        assert_eq!(stdout(&again).lines().next(), stdout(&o).lines().next());
    }
    let o = galnorm(&["find-normal", "builtin:gaussian", "--budget", "0"]);
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn seed_from_environment() {
    let run = |seed: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_galnorm"))
            .args(["find-normal", "builtin:cyclotomic7"])
            .env("GALNORM_SEED", seed)
            .output()
            .unwrap();
        field(&stdout(&o), "alpha")
    };
    assert_eq!(run("4"), field(&stdout(&galnorm(&["find-normal", "builtin:cyclotomic7", "--seed", "4"])), "alpha"));
    assert_ne!(run("4"), run("5"));
}

#[test]
fn convert() {
    let fx = "builtin:cyclotomic5";
    let alpha = field(&stdout(&galnorm(&["find-normal", fx, "--seed", "1"])), "alpha");
    let o = galnorm(&["convert", fx, &alpha, "--direction", "to-power", "1,0,0,0"]);
    assert_eq!(stdout(&o).lines().next().unwrap(), alpha);
    let o = galnorm(&["convert", fx, &alpha, "--direction", "to-normal", &alpha]);
    assert_eq!(stdout(&o).lines().next().unwrap(), "1,0,0,0");
    let c = "3,-1/2,0,7";
    let u = stdout(&galnorm(&["convert", fx, &alpha, "--direction", "to-power", c])).lines().next().unwrap().to_string();
    let back = galnorm(&["convert", fx, &alpha, "--direction", "to-normal", &u]);
    assert_eq!(stdout(&back).lines().next().unwrap(), c);
}

#[test]
fn group_algebra() {
    let o = galnorm(&["ga", "abelian:4", "invert", "0,1,0,0"]);
    assert_eq!(stdout(&o).trim(), "0,0,0,1");
    let o = galnorm(&["ga", "abelian:4", "invert", "1,1,1,1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("Phi_2"));
    let o = galnorm(&["ga", "builtin:s3", "divide", "2,1,0,0,1,0", "1,2,3,4,5,6"]);
    assert_eq!(o.status.code(), Some(0));
    let q = galnorm::fixture::parse_coeffs(stdout(&o).trim()).unwrap();
    let beta = galnorm::fixture::parse_coeffs("2,1,0,0,1,0").unwrap();
    let gp = galnorm::fixture::builtin("s3").unwrap().presentation().unwrap();
    let prod = galnorm::group::ga_mul(&gp, &GroupAlgebraElem::new(beta), &GroupAlgebraElem::new(q)).unwrap();
    assert_eq!(prod.to_string(), "1,2,3,4,5,6");
}

#[test]
fn usage_errors_and_bench() {
    assert_eq!(galnorm(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(galnorm(&["--help"]).status.code(), Some(0));
    let o = galnorm(&["bench", "cyclic", "--sizes", "8,16"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("family,n,phase,ops,millis"));
    assert!(lines.all(|l| l.split(',').count() == 5));
    let o = galnorm(&["bench", "dihedral", "--sizes", "8,16"]);
    assert!(stderr(&o).contains("outer=2"));
    assert!(stdout(&galnorm(&["bench", "elementary-abelian", "--sizes", "4", "--field", "rational"])).contains("elementary-abelian,4,unit,"));
}
