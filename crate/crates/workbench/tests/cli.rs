mod common;

use std::process::{Command, Output};

use common::fixture;

fn homonym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homonym"))
        .args(args)
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn prepare_then_run() {
    let dir = tempfile::tempdir().unwrap();
    let f = fixture("light");
    let (prep, run) = (dir.path().join("p"), dir.path().join("r"));
    let out = homonym(&[
        "prepare",
        "--corpus",
        f.join("corpus.jsonl").to_str().unwrap(),
        "--index",
        f.join("sense_index.tsv").to_str().unwrap(),
        "--inventory",
        f.join("inventory.tsv").to_str().unwrap(),
        "--out",
        prep.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let out = homonym(&[
        "run",
        "--prepared",
        prep.to_str().unwrap(),
        "--embeddings",
        f.join("embeddings.jsonl").to_str().unwrap(),
        "--algorithms",
        "ward,dbscan",
        "--projections",
        "pca",
        "--seed",
        "4",
        "--out",
        run.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value =
        serde_json::from_slice(&std::fs::read(run.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["seed"], 4);
    assert_eq!(report["algorithms"], serde_json::json!(["ward", "dbscan"]));
    assert_eq!(std::fs::read_dir(run.join("plots")).unwrap().count(), 2 * 2);

    let replot = dir.path().join("again");
    let out = homonym(&[
        "plot",
        "--report",
        run.join("report.json").to_str().unwrap(),
        "--out",
        replot.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let f = fixture("light");
    let cfg = dir.path().join("cfg.toml");
    std::fs::write(
        &cfg,
        format!(
            "corpus = {:?}\nsense_index = {:?}\ninventory = {:?}\nseed = 3\nradius = 2\n",
            f.join("corpus.jsonl"),
            f.join("sense_index.tsv"),
            f.join("inventory.tsv")
        ),
    )
    .unwrap();
    let out_dir = dir.path().join("p");
    let out = homonym(&[
        "prepare",
        "--config",
        cfg.to_str().unwrap(),
        "--seed",
        "11",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let manifest: serde_json::Value =
        serde_json::from_slice(&std::fs::read(out_dir.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["seed"], 11);
    assert_eq!(manifest["radius"], 2);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&homonym(&["--help"])), 0);
    assert_eq!(code(&homonym(&["--version"])), 0);
    assert_eq!(code(&homonym(&[])), 1);
    assert_eq!(code(&homonym(&["frobnicate"])), 1);
    assert_eq!(code(&homonym(&["run", "--algorithms", "kmeans"])), 1);
    // Missing required inputs is a usage error.
    assert_eq!(code(&homonym(&["run"])), 1);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.jsonl");
    std::fs::write(&bad, "{\"sentence_id\":\"s\",\"tokens\":[\"a\"],\"target_index\":3,\"lemma\":\"a\",\"pos\":\"n\",\"sense_key\":\"k\"}\n").unwrap();
    let f = fixture("light");
    let out = homonym(&[
        "prepare",
        "--corpus",
        bad.to_str().unwrap(),
        "--index",
        f.join("sense_index.tsv").to_str().unwrap(),
        "--inventory",
        f.join("inventory.tsv").to_str().unwrap(),
        "--out",
        dir.path().join("o").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("bad.jsonl:1"), "{stderr}");

    let out = homonym(&[
        "plot",
        "--report",
        "/nonexistent/report.json",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn empty_corpus_warns_and_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.jsonl");
    std::fs::write(&empty, "").unwrap();
    let f = fixture("light");
    let out = homonym(&[
        "prepare",
        "--corpus",
        empty.to_str().unwrap(),
        "--index",
        f.join("sense_index.tsv").to_str().unwrap(),
        "--inventory",
        f.join("inventory.tsv").to_str().unwrap(),
        "--out",
        dir.path().join("o").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr)
        .to_lowercase()
        .contains("empty"));
}
