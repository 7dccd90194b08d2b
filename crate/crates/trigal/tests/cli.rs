use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;
use trigal::records::{parse_records, RECORD_HEADER};

fn trigal(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trigal"))
        .args(args)
        .env("TRIGAL_OUT_DIR", out)
        .env_remove("TRIGAL_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const SMALL: &str = r#"{"kind":"iid-diag","diag":[[0,1,2],[1,1,2]],"n":12,"x":2000,"k_max":2,"samples":6,"seed":3}"#;

#[test]
fn wreath_prints_seventy_six() {
    let dir = TempDir::new().unwrap();
    let o = trigal(dir.path(), &["wreath", "--m", "6", "--k", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("76"));
    assert!(dir.path().join("wreath_m6_k6.json").exists());
    assert!(dir.path().join("wreath_m6_k6.manifest.json").exists());
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let o = trigal(dir.path(), &["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
}

#[test]
fn config_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("bad.json");
    fs::write(&cfg, r#"{"kind":"iid-diag","diag":[[0,1,3],[1,1,3]],"n":8}"#).unwrap();
    let o = trigal(dir.path(), &["population", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("diag"));

    fs::write(&cfg, r#"{"kind":"iid-diag","diag":[[0,1,2],[1,"half",2]],"n":8}"#).unwrap();
    let o = trigal(dir.path(), &["population", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("diag[1]"));
}

#[test]
fn unwritable_output_exits_with_three() {
    let dir = TempDir::new().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let o = trigal(&blocker, &["wreath", "--m", "3", "--k", "2"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn failing_checks_exit_with_one() {
    let dir = TempDir::new().unwrap();
    let o = trigal(dir.path(), &["chebotarev", "--poly", "1,-3", "--x", "2000", "--k-max", "1", "--expect", "1:1.5:2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL A1_in_[1.5,2]"));
    let o = trigal(dir.path(), &["report"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(dir.path().join("report.json").exists());
}

#[test]
fn records_file_round_trips() {
    let dir = TempDir::new().unwrap();
    let o = trigal(dir.path(), &["chebotarev", "--poly", "1,0,1", "--x", "3000", "--k-max", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let csv = fs::read_to_string(dir.path().join("chebotarev_records.csv")).unwrap();
    assert!(csv.starts_with(RECORD_HEADER));
    assert!(!csv.contains('\r'));
    let records = parse_records(&csv).unwrap();
    assert!(records.windows(2).all(|w| w[0].p < w[1].p));
    assert!(records.iter().all(|r| r.p > 3000 && r.p <= 6000));
}

#[test]
fn summaries_do_not_depend_on_thread_count() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("small.json");
    fs::write(&cfg, SMALL).unwrap();
    let mut outputs = Vec::new();
    for threads in ["1", "3"] {
        let out = dir.path().join(format!("t{threads}"));
        let o = trigal(&out, &["--threads", threads, "population", "--config", cfg.to_str().unwrap()]);
        assert!(matches!(o.status.code(), Some(0 | 1)), "{}", String::from_utf8_lossy(&o.stderr));
        let summary = fs::read(out.join("population_iid-diag_n12.json")).unwrap();
        let samples = fs::read(out.join("population_iid-diag_n12_samples.csv")).unwrap();
        let manifest = fs::read_to_string(out.join("population_iid-diag_n12.manifest.json")).unwrap();
        assert!(manifest.contains(&format!("\"threads\": {threads}")));
        outputs.push((summary, samples));
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn seed_flag_changes_the_digest() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("small.json");
    fs::write(&cfg, SMALL).unwrap();
    let digest = |seed: &str| {
        let out = dir.path().join(format!("s{seed}"));
        trigal(&out, &["--seed", seed, "population", "--config", cfg.to_str().unwrap(), "--no-chebotarev"]);
        let text = fs::read_to_string(out.join("population_iid-diag_n12.json")).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        (v["master_seed"].as_u64().unwrap(), v["config_digest"].as_str().unwrap().to_string())
    };
    let (a, b) = (digest("3"), digest("4"));
    assert_eq!((a.0, b.0), (3, 4));
    assert_ne!(a.1, b.1);
}
