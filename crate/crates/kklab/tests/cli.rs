use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn kklab(dir: &Path, suite: &str, config: &str, extra: &[&str], env: Option<&str>) -> Output {
    let path = dir.join(format!("{suite}.conf"));
    std::fs::write(&path, config).unwrap();
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_kklab"));
    cmd.arg(suite).arg("--config").arg(&path).args(extra);
    cmd.env_remove("KKLAB_MAX_FIELD");
    if let Some(cap) = env {
        cmd.env("KKLAB_MAX_FIELD", cap);
    }
    cmd.output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn results(r: &Value) -> &Vec<Value> {
    r["results"].as_array().unwrap()
}

#[test]
fn cw_scan_binary_conics() {
    let dir = tempfile::tempdir().unwrap();
    let out = kklab(dir.path(), "cw-scan", "q = 2\nn = 2\nd = 2", &["--seed", "3"], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["suite"], "cw-scan");
    assert_eq!(r["config"]["seed"], "3");
    for x in results(&r) {
        assert_eq!(x["status"], "pass");
        assert_eq!(x["detail"]["forms_checked"], 63);
    }
}

#[test]
fn reciprocity_over_f3() {
    let dir = tempfile::tempdir().unwrap();
    let out = kklab(dir.path(), "reciprocity", "seed = 7\nsamples = 100\np = 3", &[], None);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(results(&r).len(), 1);
    assert_eq!(results(&r)[0]["status"], "pass");
}

#[test]
fn growth_single_tuple() {
    let dir = tempfile::tempdir().unwrap();
    let out = kklab(dir.path(), "growth", "seed = 1\nmu_max = 50\nn = 4\nr = 1\ne = 2\nd = 2", &[], None);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    // One recurrence property and ratios for i = 1, 2 (r·d^i ≤ n).
    assert_eq!(results(&r).len(), 3);
    assert_eq!(results(&r)[1]["detail"]["limit"], "5/2");
}

#[test]
fn same_seed_same_report() {
    let dir = tempfile::tempdir().unwrap();
    let strip = |out: &Output| {
        let mut r = report(out);
        r.as_object_mut().unwrap().remove("elapsed_ms");
        serde_json::to_string(&r).unwrap()
    };
    let config = "seed = 11\nfields = 3\nsamples = 30";
    let a = kklab(dir.path(), "reciprocity", config, &[], None);
    let b = kklab(dir.path(), "reciprocity", config, &[], None);
    assert_eq!(strip(&a), strip(&b));
    let c = kklab(dir.path(), "cw-scan", "seed = 5\nq = 3\nn = 2\nd = 2\nsamples = 40", &[], None);
    let d = kklab(dir.path(), "cw-scan", "seed = 5\nq = 3\nn = 2\nd = 2\nsamples = 40", &[], None);
    assert_eq!(strip(&c), strip(&d));
}

#[test]
fn report_written_to_out() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = kklab(
        dir.path(),
        "t-expand",
        "seed = 2\nsamples = 5\nbound_samples = 5",
        &["--out", path.to_str().unwrap()],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let at: Vec<usize> = ["suite", "anchors", "config", "results", "elapsed_ms"]
        .iter()
        .map(|k| text.find(&format!("\"{k}\"")).unwrap())
        .collect();
    assert!(at.windows(2).all(|w| w[0] < w[1]), "field order {at:?}");
    let r: Value = serde_json::from_str(&text).unwrap();
    assert!(!r["anchors"].as_array().unwrap().is_empty());
}

#[test]
fn configuration_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(kklab(dir.path(), "no-such-suite", "seed = 1", &[], None).status.code(), Some(2));
    assert_eq!(kklab(dir.path(), "growth", "mu_max = 5", &[], None).status.code(), Some(2));
    assert_eq!(kklab(dir.path(), "growth", "seed = 1\nbogus = 5", &[], None).status.code(), Some(2));
    assert_eq!(kklab(dir.path(), "growth", "seed = 1\nmax_field = 2000000", &[], None).status.code(), Some(2));
    assert_eq!(kklab(dir.path(), "normic", "suite = growth\nseed = 1", &[], None).status.code(), Some(2));
    let missing = Command::new(env!("CARGO_BIN_EXE_kklab"))
        .args(["growth", "--config", "/nonexistent/kklab.conf"])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn environment_cap_only_lowers() {
    let dir = tempfile::tempdir().unwrap();
    let config = "seed = 1\nfield = 9\nform = X0^2 + X1^2\nbound = 1";
    assert_eq!(kklab(dir.path(), "norm-group-finite", config, &[], Some("8")).status.code(), Some(2));
    let out = kklab(dir.path(), "norm-group-finite", config, &[], Some("81"));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["config"]["max_field"], "81");
    let capped = "seed = 1\nmax_field = 8\nfield = 9\nform = X0^2 + X1^2\nbound = 1";
    assert_eq!(kklab(dir.path(), "norm-group-finite", capped, &[], Some("1000")).status.code(), Some(2));
}
