use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use super::{adjusted_rand_index, align_labels, homonym_decision, EvalError};
use crate::cluster::{Algorithm, ClusterParams, ClusterResult};
use crate::corpus::PartOfSpeech;
use crate::dimred::{Projection, ProjectionMethod};

/// One clustering run on one word, scored against the gold groups.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct AlgorithmOutcome {
    pub algorithm: Algorithm,
    /// Parameters as actually run, data-dependent defaults filled in.
    pub params: ClusterParams,
    pub labels: Vec<i32>,
    pub n_clusters: usize,
    pub mapping: Vec<(i32, u32)>,
    pub aligned_accuracy: f64,
    pub ari: f64,
    pub verdict: bool,
}

impl AlgorithmOutcome {
    pub fn evaluate(
        params: ClusterParams,
        result: &ClusterResult,
        gold: &[u32],
    ) -> Result<Self, EvalError> {
        let alignment = align_labels(&result.labels, gold)?;
        Ok(AlgorithmOutcome {
            algorithm: params.algorithm(),
            params,
            labels: result.labels.clone(),
            n_clusters: result.n_clusters,
            mapping: alignment.mapping,
            aligned_accuracy: alignment.accuracy,
            ari: adjusted_rand_index(&result.labels, gold)?,
            verdict: homonym_decision(result),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct SkippedProjection {
    pub method: ProjectionMethod,
    pub reason: String,
}

/// Everything computed for one word type.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct WordReport {
    pub lemma: String,
    pub pos: PartOfSpeech,
    pub n_points: usize,
    /// Sense key of each averaged point.
    pub sense_keys: Vec<String>,
    pub gold_groups: Vec<u32>,
    /// Accuracy of always predicting the largest gold group.
    pub majority_baseline: f64,
    pub results: Vec<AlgorithmOutcome>,
    pub projections: Vec<Projection>,
    pub skipped_projections: Vec<SkippedProjection>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct AlgorithmSummary {
    pub algorithm: Algorithm,
    pub words: usize,
    pub mean_accuracy: f64,
    pub mean_ari: f64,
    pub mean_majority_baseline: f64,
    pub homonymous_verdicts: usize,
    pub non_homonymous_verdicts: usize,
    /// Every evaluated word is a homonym by construction, so the verdict
    /// confusion matrix reduces to recall.
    pub verdict_recall: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct CorpusSummary {
    pub words: usize,
    pub algorithms: Vec<AlgorithmSummary>,
}

#[derive(Default)]
struct Totals {
    words: usize,
    accuracy: f64,
    ari: f64,
    baseline: f64,
    positive: usize,
}

/// Per-algorithm means over all word reports, ordered by algorithm.
pub fn corpus_report(reports: &[WordReport]) -> Result<CorpusSummary, EvalError> {
    if reports.is_empty() {
        return Err(EvalError::EmptyInput);
    }
    let mut totals: BTreeMap<Algorithm, Totals> = BTreeMap::new();
    for report in reports {
        for outcome in &report.results {
            let t = totals.entry(outcome.algorithm).or_default();
            t.words += 1;
            t.accuracy += outcome.aligned_accuracy;
            t.ari += outcome.ari;
            t.baseline += report.majority_baseline;
            t.positive += usize::from(outcome.verdict);
        }
    }
    let algorithms = totals
        .into_iter()
        .map(|(algorithm, t)| {
            let w = t.words as f64;
            AlgorithmSummary {
                algorithm,
                words: t.words,
                mean_accuracy: t.accuracy / w,
                mean_ari: t.ari / w,
                mean_majority_baseline: t.baseline / w,
                homonymous_verdicts: t.positive,
                non_homonymous_verdicts: t.words - t.positive,
                verdict_recall: t.positive as f64 / w,
            }
        })
        .collect();
    Ok(CorpusSummary {
        words: reports.len(),
        algorithms,
    })
}
