use std::path::{Path, PathBuf};

use homonym_core::cluster::{
    Algorithm, ClusterParams, DbscanParams, MeanShiftParams, WardStop, DEFAULT_MAX_ITER,
    DEFAULT_MIN_SAMPLES, DEFAULT_QUANTILE,
};
use homonym_core::dimred::{MdsConfig, ProjectionMethod, TsneConfig};
use homonym_core::embed::DEFAULT_RADIUS;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WorkbenchError};

/// Ward stops at `k` clusters, or merges up to `distance_threshold`. With
/// neither set, `k` is the number of gold groups of the word.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WardConfig {
    pub k: Option<usize>,
    pub distance_threshold: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MeanShiftConfig {
    pub bandwidth: Option<f64>,
    pub quantile: f64,
    pub max_iter: usize,
}

impl Default for MeanShiftConfig {
    fn default() -> Self {
        MeanShiftConfig {
            bandwidth: None,
            quantile: DEFAULT_QUANTILE,
            max_iter: DEFAULT_MAX_ITER,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DbscanConfig {
    pub eps: Option<f64>,
    pub min_samples: usize,
}

impl Default for DbscanConfig {
    fn default() -> Self {
        DbscanConfig {
            eps: None,
            min_samples: DEFAULT_MIN_SAMPLES,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MdsSettings {
    pub max_iter: usize,
    pub tol: f64,
    pub n_init: usize,
}

impl Default for MdsSettings {
    fn default() -> Self {
        let d = MdsConfig::default();
        MdsSettings {
            max_iter: d.max_iter,
            tol: d.tol,
            n_init: d.n_init,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TsneSettings {
    pub perplexity: Option<f64>,
    pub max_iter: usize,
}

impl Default for TsneSettings {
    fn default() -> Self {
        TsneSettings {
            perplexity: None,
            max_iter: TsneConfig::default().max_iter,
        }
    }
}

/// Everything a `prepare` or `run` invocation needs. Loaded from a TOML or
/// JSON file, then overridden by command-line flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub corpus: Option<PathBuf>,
    pub sense_index: Option<PathBuf>,
    pub inventory: Option<PathBuf>,
    pub embeddings: Option<PathBuf>,
    pub prepared: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub radius: usize,
    pub seed: u64,
    pub algorithms: Vec<Algorithm>,
    pub projections: Vec<ProjectionMethod>,
    pub ward: WardConfig,
    pub meanshift: MeanShiftConfig,
    pub dbscan: DbscanConfig,
    pub mds: MdsSettings,
    pub tsne: TsneSettings,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            corpus: None,
            sense_index: None,
            inventory: None,
            embeddings: None,
            prepared: None,
            out: None,
            radius: DEFAULT_RADIUS,
            seed: 0,
            algorithms: Algorithm::ALL.to_vec(),
            projections: ProjectionMethod::ALL.to_vec(),
            ward: WardConfig::default(),
            meanshift: MeanShiftConfig::default(),
            dbscan: DbscanConfig::default(),
            mds: MdsSettings::default(),
            tsne: TsneSettings::default(),
        }
    }
}

impl RunConfig {
    /// Reads a `.toml` or `.json` file; other extensions are tried as TOML.
    pub fn load(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path).map_err(|e| WorkbenchError::io(path, e))?;
        let parsed = if path.extension().is_some_and(|e| e == "json") {
            serde_json::from_str(&text).map_err(|e| e.to_string())
        } else {
            toml::from_str(&text).map_err(|e| e.to_string())
        };
        parsed.map_err(|e| WorkbenchError::Config(format!("{}: {e}", path.display())))
    }

    pub fn require<'a>(&self, field: &'a Option<PathBuf>, flag: &str) -> Result<&'a Path> {
        field.as_deref().ok_or_else(|| {
            WorkbenchError::Config(format!(
                "missing --{flag} (or `{}` in the config file)",
                flag.replace('-', "_")
            ))
        })
    }

    /// Rejects settings no algorithm could run with.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(WorkbenchError::Config(m.to_string()));
        if self.ward.k.is_some() && self.ward.distance_threshold.is_some() {
            return bad("ward takes either k or distance_threshold, not both");
        }
        if self.ward.k == Some(0) {
            return bad("ward k must be positive");
        }
        if self.ward.distance_threshold.is_some_and(|t| !(t > 0.0)) {
            return bad("ward distance_threshold must be positive");
        }
        if self.meanshift.bandwidth.is_some_and(|b| !(b > 0.0)) {
            return bad("meanshift bandwidth must be positive");
        }
        if !(self.meanshift.quantile > 0.0 && self.meanshift.quantile <= 1.0) {
            return bad("meanshift quantile must lie in (0, 1]");
        }
        if self.dbscan.eps.is_some_and(|e| !(e > 0.0)) {
            return bad("dbscan eps must be positive");
        }
        if self.dbscan.min_samples == 0 {
            return bad("dbscan min_samples must be positive");
        }
        if self.tsne.perplexity.is_some_and(|p| !(p >= 1.0)) {
            return bad("tsne perplexity must be at least 1");
        }
        if self.mds.n_init == 0 {
            return bad("mds n_init must be positive");
        }
        if self.algorithms.is_empty() {
            return bad("no clustering algorithm selected");
        }
        Ok(())
    }

    /// Parameters for `algorithm` on a word with `gold_groups` distinct groups.
    pub fn cluster_params(&self, algorithm: Algorithm, gold_groups: usize) -> ClusterParams {
        match algorithm {
            Algorithm::Ward => ClusterParams::Ward {
                stop: match self.ward.distance_threshold {
                    Some(t) => WardStop::DistanceThreshold(t),
                    None => WardStop::Clusters(self.ward.k.unwrap_or(gold_groups)),
                },
            },
            Algorithm::MeanShift => ClusterParams::MeanShift(MeanShiftParams {
                bandwidth: self.meanshift.bandwidth,
                quantile: self.meanshift.quantile,
                max_iter: self.meanshift.max_iter,
            }),
            Algorithm::Dbscan => ClusterParams::Dbscan(DbscanParams {
                eps: self.dbscan.eps,
                min_samples: self.dbscan.min_samples,
            }),
        }
    }

    pub fn mds_config(&self) -> MdsConfig {
        MdsConfig {
            max_iter: self.mds.max_iter,
            tol: self.mds.tol,
            n_init: self.mds.n_init,
            seed: self.seed,
            ..MdsConfig::default()
        }
    }

    pub fn tsne_config(&self) -> TsneConfig {
        TsneConfig {
            perplexity: self.tsne.perplexity,
            max_iter: self.tsne.max_iter,
            seed: self.seed,
            ..TsneConfig::default()
        }
    }
}
