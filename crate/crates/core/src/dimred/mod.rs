//! Two-dimensional projections of averaged embeddings for plotting.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

pub mod linalg;
mod mds;
mod pca;
mod tsne;

pub use mds::{mds_project, raw_stress, smacof, MdsConfig, SmacofOutcome};
pub use pca::{pca_fit, pca_project, PcaModel};
pub use tsne::{
    calibrate_rows, default_perplexity, joint_probabilities, kl_divergence, kl_gradient, tsne,
    tsne_project, RowCalibration, TsneConfig, TsneOutcome,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DimredError {
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("cannot keep {requested} dimensions from {available}")]
    DimsTooLarge { requested: usize, available: usize },
    #[error("perplexity {perplexity} is not reachable with {n} points")]
    PerplexityTooLarge { perplexity: f64, n: usize },
    #[error("points do not share one dimension")]
    RaggedInput,
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum ProjectionMethod {
    Pca,
    Mds,
    Tsne,
}

impl ProjectionMethod {
    pub const ALL: [ProjectionMethod; 3] = [
        ProjectionMethod::Pca,
        ProjectionMethod::Mds,
        ProjectionMethod::Tsne,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProjectionMethod::Pca => "pca",
            ProjectionMethod::Mds => "mds",
            ProjectionMethod::Tsne => "tsne",
        }
    }
}

impl fmt::Display for ProjectionMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProjectionMethod {
    type Err = DimredError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pca" => Ok(ProjectionMethod::Pca),
            "mds" => Ok(ProjectionMethod::Mds),
            "tsne" => Ok(ProjectionMethod::Tsne),
            _ => Err(DimredError::InvalidParameter("unknown projection method")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "method", rename_all = "lowercase"))]
pub enum Diagnostics {
    Pca {
        explained_variance: Vec<f64>,
    },
    Mds {
        final_stress: f64,
        iterations: usize,
    },
    Tsne {
        final_kl: f64,
        iterations: usize,
    },
}

/// Low-dimensional coordinates aligned index-for-index with the input.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Projection {
    pub method: ProjectionMethod,
    pub coords: Vec<Vec<f64>>,
    pub diagnostics: Diagnostics,
}

pub(crate) fn check_points(points: &[Vec<f64>], needed: usize) -> Result<usize, DimredError> {
    if points.len() < needed {
        return Err(DimredError::TooFewPoints {
            needed,
            got: points.len(),
        });
    }
    crate::geometry::common_dimension(points).ok_or(DimredError::RaggedInput)
}

/// Splits a flat row-major `n × dims` buffer into per-point vectors.
pub(crate) fn unflatten(flat: &[f64], dims: usize) -> Vec<Vec<f64>> {
    flat.chunks(dims).map(<[f64]>::to_vec).collect()
}
