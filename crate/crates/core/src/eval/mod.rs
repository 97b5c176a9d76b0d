//! Agreement between cluster labels and gold homonym groups.
//!
//! Accuracy is the share of points that land in a cluster matched to their
//! gold group under the best one-to-one matching of clusters to groups.
//! Noise points never match, and clusters left over when there are more
//! clusters than groups contribute nothing, so over-clustering is penalized.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::cluster::{ClusterResult, NOISE};

mod hungarian;
mod report;

pub use hungarian::max_weight_assignment;
pub use report::{
    corpus_report, AlgorithmOutcome, AlgorithmSummary, CorpusSummary, SkippedProjection, WordReport,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("label lists differ in length: {pred} predicted, {gold} gold")]
    LengthMismatch { pred: usize, gold: usize },
    #[error("nothing to evaluate")]
    EmptyInput,
}

fn check_lengths(pred: usize, gold: usize) -> Result<(), EvalError> {
    if pred != gold {
        return Err(EvalError::LengthMismatch { pred, gold });
    }
    if pred == 0 {
        return Err(EvalError::EmptyInput);
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Alignment {
    /// Cluster label → gold group, for matched pairs that share points.
    pub mapping: Vec<(i32, u32)>,
    pub matched: usize,
    pub accuracy: f64,
}

/// Best one-to-one matching of predicted clusters to gold groups.
pub fn align_labels(pred: &[i32], gold: &[u32]) -> Result<Alignment, EvalError> {
    check_lengths(pred.len(), gold.len())?;
    let mut clusters: Vec<i32> = pred.iter().copied().filter(|&l| l != NOISE).collect();
    clusters.sort_unstable();
    clusters.dedup();
    let mut groups: Vec<u32> = gold.to_vec();
    groups.sort_unstable();
    groups.dedup();

    let cols = groups.len();
    let mut table = alloc::vec![0i64; clusters.len() * cols];
    for (&p, &g) in pred.iter().zip(gold) {
        if p == NOISE {
            continue;
        }
        let r = clusters.binary_search(&p).expect("label collected above");
        let c = groups.binary_search(&g).expect("group collected above");
        table[r * cols + c] += 1;
    }

    let assignment = max_weight_assignment(&table, clusters.len(), cols);
    let mut mapping = Vec::new();
    let mut matched = 0usize;
    for (r, col) in assignment.into_iter().enumerate() {
        if let Some(c) = col {
            let count = table[r * cols + c];
            if count > 0 {
                mapping.push((clusters[r], groups[c]));
                matched += count as usize;
            }
        }
    }
    Ok(Alignment {
        mapping,
        matched,
        accuracy: matched as f64 / pred.len() as f64,
    })
}

fn pairs(x: u64) -> f64 {
    (x * x.saturating_sub(1) / 2) as f64
}

/// Adjusted Rand index between two partitions given as label lists.
///
/// Any label value, noise included, is treated as an ordinary cluster. When
/// the chance-adjusted denominator vanishes (both partitions trivial) the
/// index is defined as 1.
pub fn adjusted_rand_index<A: Ord, B: Ord>(pred: &[A], gold: &[B]) -> Result<f64, EvalError> {
    check_lengths(pred.len(), gold.len())?;
    let mut joint: BTreeMap<(&A, &B), u64> = BTreeMap::new();
    let mut rows: BTreeMap<&A, u64> = BTreeMap::new();
    let mut cols: BTreeMap<&B, u64> = BTreeMap::new();
    for (a, b) in pred.iter().zip(gold) {
        *joint.entry((a, b)).or_default() += 1;
        *rows.entry(a).or_default() += 1;
        *cols.entry(b).or_default() += 1;
    }
    let index: f64 = joint.values().map(|&c| pairs(c)).sum();
    let sum_rows: f64 = rows.values().map(|&c| pairs(c)).sum();
    let sum_cols: f64 = cols.values().map(|&c| pairs(c)).sum();
    let total = pairs(pred.len() as u64);
    if total == 0.0 {
        return Ok(1.0);
    }
    let expected = sum_rows * sum_cols / total;
    let max = 0.5 * (sum_rows + sum_cols);
    if max == expected {
        return Ok(1.0);
    }
    Ok((index - expected) / (max - expected))
}

/// A word is judged homonymous when clustering finds at least two clusters.
pub fn homonym_decision(result: &ClusterResult) -> bool {
    result.n_clusters >= 2
}

/// Accuracy of predicting the largest gold group for every point.
pub fn majority_baseline(gold: &[u32]) -> Result<f64, EvalError> {
    if gold.is_empty() {
        return Err(EvalError::EmptyInput);
    }
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for &g in gold {
        *counts.entry(g).or_default() += 1;
    }
    let largest = counts.values().copied().max().unwrap_or(0);
    Ok(largest as f64 / gold.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn perfect_partition() {
        let a = align_labels(&[0, 0, 1], &[100, 100, 400]).unwrap();
        assert_eq!(a.mapping, vec![(0, 100), (1, 400)]);
        assert_eq!(a.accuracy, 1.0);
    }

    #[test]
    fn crossing_partition() {
        let a = align_labels(&[0, 1, 0], &[100, 100, 400]).unwrap();
        assert_eq!(a.matched, 2);
        assert!((a.accuracy - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn all_noise_scores_zero() {
        let a = align_labels(&[-1, -1, -1], &[100, 400, 100]).unwrap();
        assert_eq!(a.accuracy, 0.0);
        assert!(a.mapping.is_empty());
    }

    #[test]
    fn extra_clusters_go_unmatched() {
        let a = align_labels(&[0, 1, 2, 3], &[100, 100, 400, 400]).unwrap();
        assert_eq!(a.matched, 2);
    }

    #[test]
    fn length_checks() {
        assert_eq!(
            align_labels(&[0], &[1, 2]),
            Err(EvalError::LengthMismatch { pred: 1, gold: 2 })
        );
        assert_eq!(align_labels(&[], &[]), Err(EvalError::EmptyInput));
        assert!(adjusted_rand_index::<i32, u32>(&[0, 1], &[1]).is_err());
    }

    #[test]
    fn ari_values() {
        assert_eq!(
            adjusted_rand_index(&[0, 0, 1, 1], &[100u32, 100, 400, 400]).unwrap(),
            1.0
        );
        let v = adjusted_rand_index(&[0, 1, 0, 1], &[100u32, 100, 400, 400]).unwrap();
        assert!((v + 0.5).abs() < 1e-12);
        assert_eq!(adjusted_rand_index(&[0, 0, 0], &[7u32, 7, 7]).unwrap(), 1.0);
    }

    #[test]
    fn verdicts() {
        let r = |labels: Vec<i32>| ClusterResult {
            n_clusters: crate::cluster::count_clusters(&labels),
            labels,
            modes: None,
            merge_history: None,
        };
        assert!(!homonym_decision(&r(vec![2, 2, 2])));
        assert!(homonym_decision(&r(vec![0, 0, 1])));
        assert!(!homonym_decision(&r(vec![-1, -1, 0])));
    }

    #[test]
    fn baseline() {
        assert_eq!(majority_baseline(&[100, 100, 400, 100]).unwrap(), 0.75);
    }
}
