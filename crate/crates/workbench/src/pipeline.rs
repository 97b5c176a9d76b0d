//! The `prepare`, `run` and `plot` stages.
//!
//! `prepare` resolves homonym groups and writes one instance file per
//! surviving word plus `manifest.json`. `run` averages the embeddings of
//! each manifest word per sense, clusters, projects, scores and plots, and
//! writes `report.json`. `plot` re-renders the SVGs from a report.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use homonym_core::cluster::{cluster, Algorithm};
use homonym_core::corpus::{
    assign_groups, filter_multigroup, GroupedInstance, PartOfSpeech, SkipTally, WordKey,
};
use homonym_core::dimred::{
    mds_project, pca_project, tsne_project, DimredError, Projection, ProjectionMethod,
};
use homonym_core::embed::{average_by_sense, context_window, EmbeddingRecord};
use homonym_core::eval::{
    corpus_report, majority_baseline, AlgorithmOutcome, CorpusSummary, SkippedProjection,
    WordReport,
};
use log::{info, warn};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::{Result, WorkbenchError};
use crate::formats;
use crate::viz::{scatter_svg, PlotSpec};

pub const MANIFEST_FILE: &str = "manifest.json";
pub const REPORT_FILE: &str = "report.json";
pub const WORDS_DIR: &str = "words";
pub const PLOTS_DIR: &str = "plots";

/// A grouped instance with its context window, as written by `prepare`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreparedInstance {
    #[serde(flatten)]
    pub grouped: GroupedInstance,
    pub window: Vec<String>,
    pub window_target_index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestWord {
    pub lemma: String,
    pub pos: PartOfSpeech,
    /// Instance file, relative to the prepared directory.
    pub file: String,
    pub instances: usize,
    pub senses: usize,
    pub attested_groups: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub seed: u64,
    pub radius: usize,
    pub corpus_instances: usize,
    pub skipped: SkipTally,
    pub words: Vec<ManifestWord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedWord {
    pub lemma: String,
    pub pos: PartOfSpeech,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub seed: u64,
    pub algorithms: Vec<Algorithm>,
    pub projections: Vec<ProjectionMethod>,
    pub words: Vec<WordReport>,
    pub skipped: Vec<SkippedWord>,
    /// Absent when no word could be evaluated.
    pub summary: Option<CorpusSummary>,
}

/// File stem for a word: `<lemma>_<pos>`, with characters outside
/// `[A-Za-z0-9._-]` replaced by `_`.
pub fn word_stem(lemma: &str, pos: PartOfSpeech) -> String {
    let clean: String = lemma
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || matches!(c, '.' | '_' | '-') {
                c
            } else {
                '_'
            }
        })
        .collect();
    format!("{clean}_{pos}")
}

pub fn plot_file_name(
    lemma: &str,
    pos: PartOfSpeech,
    algorithm: Algorithm,
    method: ProjectionMethod,
) -> String {
    format!(
        "{}_{}_{}.svg",
        word_stem(lemma, pos),
        algorithm.name(),
        method.name()
    )
}

fn create_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| WorkbenchError::io(dir, e))
}

pub fn cmd_prepare(cfg: &RunConfig) -> Result<Manifest> {
    let corpus_path = cfg.require(&cfg.corpus, "corpus")?;
    let index_path = cfg.require(&cfg.sense_index, "index")?;
    let inventory_path = cfg.require(&cfg.inventory, "inventory")?;
    let out = cfg.require(&cfg.out, "out")?;

    let instances = formats::parse_corpus(corpus_path)?;
    let index = formats::parse_sense_index(index_path)?;
    let inventory = formats::parse_inventory(inventory_path)?;
    if instances.is_empty() {
        warn!(
            "{}: corpus is empty; the manifest will list no words",
            corpus_path.display()
        );
    }
    let corpus_instances = instances.len();
    let assignment = assign_groups(instances, &index, &inventory);
    if assignment.skipped.total() > 0 {
        info!(
            "dropped {} instances ({} unknown sense keys, {} word mismatches, {} senses without a group)",
            assignment.skipped.total(),
            assignment.skipped.unknown_sense_key,
            assignment.skipped.word_mismatch,
            assignment.skipped.not_in_inventory
        );
    }
    let datasets = filter_multigroup(assignment.grouped);

    create_dir(&out.join(WORDS_DIR))?;
    let mut words = Vec::with_capacity(datasets.len());
    for (word, ds) in &datasets {
        let file = format!("{WORDS_DIR}/{}.jsonl", word_stem(&word.lemma, word.pos));
        let rows: Vec<PreparedInstance> = ds
            .instances
            .iter()
            .map(|g| {
                let (window, at) =
                    context_window(&g.instance.tokens, g.instance.target_index, cfg.radius)
                        .expect("instances were validated on read");
                PreparedInstance {
                    window: window.to_vec(),
                    window_target_index: at,
                    grouped: g.clone(),
                }
            })
            .collect();
        formats::write_records(&rows, &out.join(&file))?;
        words.push(ManifestWord {
            lemma: word.lemma.clone(),
            pos: word.pos,
            file,
            instances: ds.instances.len(),
            senses: ds.sense_keys().len(),
            attested_groups: ds.attested_groups.iter().copied().collect(),
        });
    }
    let manifest = Manifest {
        seed: cfg.seed,
        radius: cfg.radius,
        corpus_instances,
        skipped: assignment.skipped,
        words,
    };
    formats::write_json(&manifest, "manifest", &out.join(MANIFEST_FILE))?;
    Ok(manifest)
}

fn project(
    method: ProjectionMethod,
    points: &[Vec<f64>],
    cfg: &RunConfig,
) -> std::result::Result<Projection, DimredError> {
    match method {
        ProjectionMethod::Pca => pca_project(points, 2),
        ProjectionMethod::Mds => mds_project(points, &cfg.mds_config()),
        ProjectionMethod::Tsne => tsne_project(points, &cfg.tsne_config()),
    }
}

enum WordOutcome {
    Done(Box<WordReport>),
    Skipped(SkippedWord),
}

/// Embedding records of one manifest word, restricted to the prepared
/// (sentence, sense key) pairs and checked against their groups.
fn word_records(
    word: &ManifestWord,
    prepared: &[PreparedInstance],
    records: &[&EmbeddingRecord],
) -> Result<Vec<EmbeddingRecord>> {
    let label = format!("{}/{}", word.lemma, word.pos);
    let groups: BTreeMap<(&str, &str), u32> = prepared
        .iter()
        .map(|p| {
            (
                (
                    p.grouped.instance.sentence_id.as_str(),
                    p.grouped.instance.sense_key.as_str(),
                ),
                p.grouped.group_id,
            )
        })
        .collect();
    let mut out = Vec::new();
    for r in records {
        if let Some(&g) = groups.get(&(r.sentence_id.as_str(), r.sense_key.as_str())) {
            if g != r.group_id {
                return Err(WorkbenchError::Inconsistent {
                    word: label,
                    reason: format!(
                        "sentence {} sense {} has group {} in the embeddings but {g} in the prepared data",
                        r.sentence_id, r.sense_key, r.group_id
                    ),
                });
            }
            out.push((*r).clone());
        }
    }
    Ok(out)
}

fn analyse_word(
    word: &ManifestWord,
    records: Vec<EmbeddingRecord>,
    cfg: &RunConfig,
) -> Result<WordOutcome> {
    let label = format!("{}/{}", word.lemma, word.pos);
    let skip = |reason: String| {
        Ok(WordOutcome::Skipped(SkippedWord {
            lemma: word.lemma.clone(),
            pos: word.pos,
            reason,
        }))
    };
    if records.is_empty() {
        return skip("no embeddings for any prepared instance".into());
    }
    let averaged = average_by_sense(&records).map_err(|source| WorkbenchError::Embed {
        word: label.clone(),
        source,
    })?;
    if averaged.len() < 2 {
        return skip(format!(
            "only {} embedded sense; need at least 2",
            averaged.len()
        ));
    }
    let points: Vec<Vec<f64>> = averaged.iter().map(|a| a.mean_vector.clone()).collect();
    let gold: Vec<u32> = averaged.iter().map(|a| a.group_id).collect();
    let n_groups = gold.iter().collect::<BTreeSet<_>>().len();

    let mut results = Vec::with_capacity(cfg.algorithms.len());
    for &algorithm in &cfg.algorithms {
        let cluster_err = |source| WorkbenchError::Cluster {
            word: label.clone(),
            source,
        };
        let params = cfg
            .cluster_params(algorithm, n_groups)
            .resolve(&points)
            .map_err(cluster_err)?;
        let result = cluster(&points, &params).map_err(cluster_err)?;
        let outcome = AlgorithmOutcome::evaluate(params, &result, &gold).map_err(|source| {
            WorkbenchError::Eval {
                word: label.clone(),
                source,
            }
        })?;
        results.push(outcome);
    }

    let mut projections = Vec::new();
    let mut skipped_projections = Vec::new();
    for &method in &cfg.projections {
        match project(method, &points, cfg) {
            Ok(p) => projections.push(p),
            Err(e) => skipped_projections.push(SkippedProjection {
                method,
                reason: e.to_string(),
            }),
        }
    }

    Ok(WordOutcome::Done(Box::new(WordReport {
        lemma: word.lemma.clone(),
        pos: word.pos,
        n_points: points.len(),
        sense_keys: averaged.iter().map(|a| a.sense_key.clone()).collect(),
        majority_baseline: majority_baseline(&gold).map_err(|source| WorkbenchError::Eval {
            word: label,
            source,
        })?,
        gold_groups: gold,
        results,
        projections,
        skipped_projections,
    })))
}

/// Writes one SVG per (algorithm, projection) pair of `word` into `dir`.
pub fn plot_word(word: &WordReport, seed: u64, dir: &Path) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    for outcome in &word.results {
        for projection in &word.projections {
            let name = plot_file_name(&word.lemma, word.pos, outcome.algorithm, projection.method);
            let mut spec = PlotSpec::new(
                projection.coords.clone(),
                word.gold_groups.clone(),
                outcome.labels.clone(),
                format!(
                    "{}/{} {} {}",
                    word.lemma,
                    word.pos,
                    outcome.algorithm,
                    projection.method.name()
                ),
            );
            spec.seed = Some(seed);
            let path = dir.join(name);
            scatter_svg(&spec, &path)?;
            written.push(path);
        }
    }
    Ok(written)
}

pub fn cmd_run(cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let prepared_dir = cfg.require(&cfg.prepared, "prepared")?;
    let embeddings_path = cfg.require(&cfg.embeddings, "embeddings")?;
    let out = cfg.require(&cfg.out, "out")?;

    let manifest: Manifest = formats::read_json(&prepared_dir.join(MANIFEST_FILE))?;
    let embeddings = formats::parse_embeddings(embeddings_path)?;
    let mut by_word: BTreeMap<WordKey, Vec<&EmbeddingRecord>> = BTreeMap::new();
    for r in &embeddings.records {
        by_word
            .entry(WordKey::new(r.lemma.clone(), r.pos))
            .or_default()
            .push(r);
    }

    let plots = out.join(PLOTS_DIR);
    create_dir(&plots)?;
    let mut words: Vec<&ManifestWord> = manifest.words.iter().collect();
    words.sort_by(|a, b| (&a.lemma, a.pos).cmp(&(&b.lemma, b.pos)));

    let outcomes: Vec<WordOutcome> = words
        .par_iter()
        .map(|word| {
            let prepared: Vec<PreparedInstance> =
                formats::read_json_lines(&prepared_dir.join(&word.file))?;
            let key = WordKey::new(word.lemma.clone(), word.pos);
            let records = word_records(
                word,
                &prepared,
                by_word.get(&key).map_or(&[][..], Vec::as_slice),
            )?;
            let outcome = analyse_word(word, records, cfg)?;
            if let WordOutcome::Done(report) = &outcome {
                plot_word(report, cfg.seed, &plots)?;
            }
            Ok(outcome)
        })
        .collect::<Result<_>>()?;

    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    for outcome in outcomes {
        match outcome {
            WordOutcome::Done(r) => reports.push(*r),
            WordOutcome::Skipped(s) => {
                warn!("skipping {}/{}: {}", s.lemma, s.pos, s.reason);
                skipped.push(s);
            }
        }
    }
    let summary = if reports.is_empty() {
        warn!("no word could be evaluated");
        None
    } else {
        Some(corpus_report(&reports).expect("non-empty reports"))
    };
    let report = Report {
        seed: cfg.seed,
        algorithms: cfg.algorithms.clone(),
        projections: cfg.projections.clone(),
        words: reports,
        skipped,
        summary,
    };
    formats::write_json(&report, "report", &out.join(REPORT_FILE))?;
    Ok(report)
}

/// Re-renders every plot recorded in a report. Returns the files written.
pub fn cmd_plot(report_path: &Path, out: &Path) -> Result<Vec<PathBuf>> {
    let report: Report = formats::read_json(report_path)?;
    create_dir(out)?;
    let mut written = Vec::new();
    for word in &report.words {
        written.extend(plot_word(word, report.seed, out)?);
    }
    Ok(written)
}
