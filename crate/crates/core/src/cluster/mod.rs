//! Clustering algorithms that do not need the number of clusters up front.
//!
//! All three work on Euclidean distance and are fully deterministic: every
//! tie is broken by index, so repeated runs give identical labels.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

mod bandwidth;
mod dbscan;
mod meanshift;
mod ward;

pub use bandwidth::estimate_bandwidth;
pub use dbscan::dbscan;
pub use meanshift::{mean_shift, mean_shift_step};
pub use ward::agglomerative_ward;

/// Label given to points that belong to no cluster.
pub const NOISE: i32 = -1;

/// Default quantile of pairwise distances used to pick a bandwidth.
pub const DEFAULT_QUANTILE: f64 = 0.3;
pub const DEFAULT_MIN_SAMPLES: usize = 3;
pub const DEFAULT_MAX_ITER: usize = 300;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ClusterError {
    #[error("no points to cluster")]
    EmptyInput,
    #[error("points do not share one dimension")]
    RaggedInput,
    #[error("k = {k} is outside 1..={n}")]
    KOutOfRange { k: usize, n: usize },
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("bandwidth must be positive, got {0}")]
    NonPositiveBandwidth(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Algorithm {
    Ward,
    MeanShift,
    Dbscan,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Ward, Algorithm::MeanShift, Algorithm::Dbscan];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Ward => "ward",
            Algorithm::MeanShift => "meanshift",
            Algorithm::Dbscan => "dbscan",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = ClusterError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ward" => Ok(Algorithm::Ward),
            "meanshift" => Ok(Algorithm::MeanShift),
            "dbscan" => Ok(Algorithm::Dbscan),
            _ => Err(ClusterError::InvalidParameter("unknown algorithm")),
        }
    }
}

/// When Ward merging stops.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum WardStop {
    /// Merge until exactly this many clusters remain.
    Clusters(usize),
    /// Merge only pairs whose Ward cost is at most this value.
    DistanceThreshold(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct MeanShiftParams {
    /// Flat-kernel radius; estimated from `quantile` when `None`.
    pub bandwidth: Option<f64>,
    pub quantile: f64,
    pub max_iter: usize,
}

impl Default for MeanShiftParams {
    fn default() -> Self {
        MeanShiftParams {
            bandwidth: None,
            quantile: DEFAULT_QUANTILE,
            max_iter: DEFAULT_MAX_ITER,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct DbscanParams {
    /// Neighborhood radius; estimated as the 0.3 distance quantile when `None`.
    pub eps: Option<f64>,
    pub min_samples: usize,
}

impl Default for DbscanParams {
    fn default() -> Self {
        DbscanParams {
            eps: None,
            min_samples: DEFAULT_MIN_SAMPLES,
        }
    }
}

/// Algorithm choice together with its hyperparameters.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "algorithm", rename_all = "lowercase"))]
pub enum ClusterParams {
    Ward { stop: WardStop },
    MeanShift(MeanShiftParams),
    Dbscan(DbscanParams),
}

impl ClusterParams {
    pub fn algorithm(&self) -> Algorithm {
        match self {
            ClusterParams::Ward { .. } => Algorithm::Ward,
            ClusterParams::MeanShift(_) => Algorithm::MeanShift,
            ClusterParams::Dbscan(_) => Algorithm::Dbscan,
        }
    }

    /// Fills in data-dependent defaults (bandwidth, eps) so the returned
    /// parameters describe exactly what was run.
    pub fn resolve(&self, points: &[Vec<f64>]) -> Result<ClusterParams, ClusterError> {
        Ok(match *self {
            ClusterParams::Ward { stop } => ClusterParams::Ward { stop },
            ClusterParams::MeanShift(p) => ClusterParams::MeanShift(MeanShiftParams {
                bandwidth: Some(match p.bandwidth {
                    Some(b) => b,
                    None if points.len() < 2 => 1.0,
                    None => estimate_bandwidth(points, p.quantile)?,
                }),
                ..p
            }),
            ClusterParams::Dbscan(p) => ClusterParams::Dbscan(DbscanParams {
                eps: Some(match p.eps {
                    Some(e) => e,
                    None if points.len() < 2 => 1.0,
                    None => estimate_bandwidth(points, DEFAULT_QUANTILE)?,
                }),
                ..p
            }),
        })
    }
}

/// One Ward merge: the two cluster ids joined and the cost paid.
///
/// Points are clusters `0..n`; the cluster created by the `s`-th merge gets
/// id `n + s`. `left < right` always.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Merge {
    pub left: usize,
    pub right: usize,
    pub cost: f64,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct ClusterResult {
    /// One label per input point; [`NOISE`] for outliers.
    pub labels: Vec<i32>,
    pub n_clusters: usize,
    /// Mean-shift modes, indexed by label.
    pub modes: Option<Vec<Vec<f64>>>,
    pub merge_history: Option<Vec<Merge>>,
}

impl ClusterResult {
    pub(crate) fn from_labels(labels: Vec<i32>) -> Self {
        let n_clusters = count_clusters(&labels);
        ClusterResult {
            labels,
            n_clusters,
            modes: None,
            merge_history: None,
        }
    }
}

/// Number of distinct non-noise labels.
pub fn count_clusters(labels: &[i32]) -> usize {
    let mut seen: Vec<i32> = labels.iter().copied().filter(|&l| l != NOISE).collect();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

/// Runs whichever algorithm `params` selects.
///
/// Bandwidth and eps defaults are resolved first, see [`ClusterParams::resolve`].
pub fn cluster(points: &[Vec<f64>], params: &ClusterParams) -> Result<ClusterResult, ClusterError> {
    validate(points)?;
    match params.resolve(points)? {
        ClusterParams::Ward { stop } => agglomerative_ward(points, stop),
        ClusterParams::MeanShift(p) => mean_shift(points, &p),
        ClusterParams::Dbscan(p) => dbscan(points, p.eps.unwrap_or(1.0), p.min_samples),
    }
}

pub(crate) fn validate(points: &[Vec<f64>]) -> Result<usize, ClusterError> {
    if points.is_empty() {
        return Err(ClusterError::EmptyInput);
    }
    crate::geometry::common_dimension(points).ok_or(ClusterError::RaggedInput)
}

/// Renumbers labels so that clusters are numbered by first appearance in
/// point order. Noise stays noise.
pub(crate) fn relabel_by_first_appearance(raw: &[i32]) -> Vec<i32> {
    let mut map: Vec<(i32, i32)> = Vec::new();
    raw.iter()
        .map(|&l| {
            if l == NOISE {
                return NOISE;
            }
            match map.iter().find(|(from, _)| *from == l) {
                Some(&(_, to)) => to,
                None => {
                    let to = map.len() as i32;
                    map.push((l, to));
                    to
                }
            }
        })
        .collect()
}
