use std::path::Path;
use std::process::{Command, Output};

fn tronetl(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tronetl"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn generate_run_verify_stats() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let generated = tronetl(&["fixtures", "generate", "--out", "fx", "--blocks", "40", "--seed", "9"], d);
    assert_eq!(code(&generated), 0, "{}", String::from_utf8_lossy(&generated.stderr));

    let run = tronetl(
        &["etl", "run", "--source", "fx", "--sink", "out", "--from", "0", "--to", "39", "--batch", "10"],
        d,
    );
    assert_eq!(code(&run), 0, "{}", String::from_utf8_lossy(&run.stderr));
    let report: serde_json::Value = serde_json::from_slice(&run.stdout).unwrap();
    assert_eq!(report["blocksProcessed"], 40);
    assert_eq!(report["checkpoint"], 39);

    let verify = tronetl(&["etl", "verify", "--source", "fx", "--sink", "out", "--from", "0", "--to", "39"], d);
    assert_eq!(code(&verify), 0);

    let stats = tronetl(&["stats", "witness_distribution", "--sink", "out"], d);
    assert_eq!(code(&stats), 0);
    let csv = String::from_utf8(stats.stdout).unwrap();
    assert_eq!(csv.lines().next(), Some("witnessAddress,blocks"));
    assert_eq!(csv.lines().skip(1).map(|l| l.rsplit(',').next().unwrap()).collect::<Vec<_>>(), ["10"; 4]);

    std::fs::remove_dir_all(d.join("out/events")).unwrap();
    let verify = tronetl(&["etl", "verify", "--source", "fx", "--sink", "out", "--from", "0", "--to", "39"], d);
    assert_eq!(code(&verify), 4);
    assert!(String::from_utf8_lossy(&verify.stdout).contains("\"events\""));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let bad_range = tronetl(
        &["etl", "run", "--source", "synthetic:blocks=5", "--sink", "out", "--from", "4", "--to", "1"],
        d,
    );
    assert_eq!(code(&bad_range), 1);
    assert!(!d.join("out").exists());

    let past_head = tronetl(
        &["etl", "run", "--source", "synthetic:blocks=5", "--sink", "out", "--from", "0", "--to", "9"],
        d,
    );
    assert_eq!(code(&past_head), 2);

    std::fs::write(d.join("file"), b"x").unwrap();
    let bad_sink = tronetl(
        &["etl", "run", "--source", "synthetic:blocks=5", "--sink", "file", "--from", "0", "--to", "4"],
        d,
    );
    assert_eq!(code(&bad_sink), 3);

    let unknown = tronetl(&["stats", "nope", "--sink", "out"], d);
    assert_eq!(code(&unknown), 1);
}

#[test]
fn schema_emit() {
    let dir = tempfile::tempdir().unwrap();
    let ddl = tronetl(&["schema", "emit", "--table", "events", "--dialect", "adapter"], dir.path());
    assert_eq!(code(&ddl), 0);
    assert!(String::from_utf8_lossy(&ddl.stdout).contains("ReplacingMergeTree"));

    let manifest = tronetl(&["schema", "emit", "--manifest"], dir.path());
    let v: serde_json::Value = serde_json::from_slice(&manifest.stdout).unwrap();
    assert!(v["tables"].as_array().unwrap().len() > 40);
}
