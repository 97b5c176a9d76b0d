#![allow(dead_code)]

use std::path::{Path, PathBuf};

use homonym_workbench::{cmd_prepare, cmd_run, Manifest, Report, RunConfig};

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn prepare_config(name: &str, out: &Path) -> RunConfig {
    let dir = fixture(name);
    RunConfig {
        corpus: Some(dir.join("corpus.jsonl")),
        sense_index: Some(dir.join("sense_index.tsv")),
        inventory: Some(dir.join("inventory.tsv")),
        out: Some(out.to_path_buf()),
        ..RunConfig::default()
    }
}

pub fn run_config(name: &str, prepared: &Path, out: &Path, seed: u64) -> RunConfig {
    RunConfig {
        prepared: Some(prepared.to_path_buf()),
        embeddings: Some(fixture(name).join("embeddings.jsonl")),
        out: Some(out.to_path_buf()),
        seed,
        ..RunConfig::default()
    }
}

/// Prepares and runs a bundled fixture under `root`.
pub fn run_fixture(name: &str, root: &Path, seed: u64) -> (Manifest, Report) {
    let prepared = root.join("prepared");
    let manifest = cmd_prepare(&prepare_config(name, &prepared)).unwrap();
    let report = cmd_run(&run_config(name, &prepared, &root.join("run"), seed)).unwrap();
    (manifest, report)
}

/// Every file under `dir` with its bytes, sorted by relative path.
pub fn snapshot(dir: &Path) -> Vec<(PathBuf, Vec<u8>)> {
    let mut out = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in std::fs::read_dir(&d).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                out.push((
                    path.strip_prefix(dir).unwrap().to_path_buf(),
                    std::fs::read(&path).unwrap(),
                ));
            }
        }
    }
    out.sort();
    out
}
