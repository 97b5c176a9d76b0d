//! Exact t-SNE. Per-word point counts are small, so every step is O(n^2)
//! with no tree approximation.

use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use super::{check_points, unflatten, Diagnostics, DimredError, Projection, ProjectionMethod};
use crate::geometry::squared_distance_matrix;

const BISECTION_STEPS: usize = 50;
const PERPLEXITY_TOL: f64 = 1e-5;
const MIN_GAIN: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TsneConfig {
    pub out_dims: usize,
    /// Defaults to [`default_perplexity`] when `None`.
    pub perplexity: Option<f64>,
    pub max_iter: usize,
    pub seed: u64,
    pub learning_rate: f64,
    pub early_exaggeration: f64,
    /// Iterations run with exaggerated affinities and the initial momentum.
    pub exaggeration_iters: usize,
    pub initial_momentum: f64,
    pub final_momentum: f64,
    pub init_std: f64,
}

impl Default for TsneConfig {
    fn default() -> Self {
        TsneConfig {
            out_dims: 2,
            perplexity: None,
            max_iter: 1000,
            seed: 0,
            learning_rate: 200.0,
            early_exaggeration: 12.0,
            exaggeration_iters: 250,
            initial_momentum: 0.5,
            final_momentum: 0.8,
            init_std: 1e-4,
        }
    }
}

/// `min(30, max(2, floor((n - 1) / 3)))`: the usual 30 shrunk for small sets.
pub fn default_perplexity(n: usize) -> f64 {
    (n.saturating_sub(1) / 3).clamp(2, 30) as f64
}

/// Row-conditional affinities `p(j|i)` and the perplexity each row reached.
#[derive(Debug, Clone, PartialEq)]
pub struct RowCalibration {
    /// Row-major `n × n`, rows sum to one, zero diagonal.
    pub conditional: Vec<f64>,
    /// Gaussian precision `1 / (2 sigma_i^2)` per row.
    pub betas: Vec<f64>,
    pub perplexities: Vec<f64>,
}

/// Entropy (nats) of the row distribution at precision `beta`, writing the
/// probabilities into `row`. `shifted` holds `d_ij - min_j d_ij`.
fn row_entropy(shifted: &[f64], skip: usize, beta: f64, row: &mut [f64]) -> f64 {
    let mut z = 0.0;
    for (j, (&d, p)) in shifted.iter().zip(row.iter_mut()).enumerate() {
        *p = if j == skip { 0.0 } else { libm::exp(-beta * d) };
        z += *p;
    }
    let mut weighted = 0.0;
    for (&d, p) in shifted.iter().zip(row.iter_mut()) {
        *p /= z;
        weighted += *p * d;
    }
    libm::log(z) + beta * weighted
}

/// Finds, for every row of the squared-distance matrix, the Gaussian
/// precision whose conditional distribution has the target perplexity.
///
/// Bisection runs on `ln(beta)` over a bracket of e^±50 around the row's
/// distance scale, for at most 50 steps.
pub fn calibrate_rows(sq_distances: &[f64], n: usize, perplexity: f64) -> RowCalibration {
    let target = libm::log(perplexity);
    let mut conditional = alloc::vec![0.0; n * n];
    let mut betas = alloc::vec![0.0; n];
    let mut perplexities = alloc::vec![0.0; n];
    let mut shifted = alloc::vec![0.0; n];

    for i in 0..n {
        let dists = &sq_distances[i * n..(i + 1) * n];
        let min = (0..n)
            .filter(|&j| j != i)
            .map(|j| dists[j])
            .fold(f64::INFINITY, f64::min);
        for j in 0..n {
            shifted[j] = if j == i { 0.0 } else { dists[j] - min };
        }
        let spread = shifted.iter().sum::<f64>() / (n - 1) as f64;
        let row = &mut conditional[i * n..(i + 1) * n];

        let center = if spread > 0.0 {
            -libm::log(spread)
        } else {
            0.0
        };
        let (mut lo, mut hi) = (center - 50.0, center + 50.0);
        let mut log_beta = center;
        let mut entropy = row_entropy(&shifted, i, libm::exp(log_beta), row);
        for _ in 0..BISECTION_STEPS {
            if spread == 0.0 || libm::fabs(libm::exp(entropy) - perplexity) < PERPLEXITY_TOL {
                break;
            }
            // Entropy falls as beta grows.
            if entropy > target {
                lo = log_beta;
            } else {
                hi = log_beta;
            }
            log_beta = 0.5 * (lo + hi);
            entropy = row_entropy(&shifted, i, libm::exp(log_beta), row);
        }
        betas[i] = libm::exp(log_beta);
        perplexities[i] = libm::exp(entropy);
    }
    RowCalibration {
        conditional,
        betas,
        perplexities,
    }
}

fn validate(points: &[Vec<f64>], perplexity: f64) -> Result<usize, DimredError> {
    check_points(points, 4)?;
    let n = points.len();
    if !(perplexity >= 1.0) || perplexity > (n - 1) as f64 {
        return Err(DimredError::PerplexityTooLarge { perplexity, n });
    }
    Ok(n)
}

/// Symmetric joint affinities `(p(j|i) + p(i|j)) / 2n`, row-major `n × n`.
pub fn joint_probabilities(points: &[Vec<f64>], perplexity: f64) -> Result<Vec<f64>, DimredError> {
    let n = validate(points, perplexity)?;
    let cal = calibrate_rows(&squared_distance_matrix(points), n, perplexity);
    Ok(symmetrize(&cal.conditional, n))
}

fn symmetrize(conditional: &[f64], n: usize) -> Vec<f64> {
    let mut p = alloc::vec![0.0; n * n];
    let scale = 1.0 / (2.0 * n as f64);
    for i in 0..n {
        for j in 0..n {
            p[i * n + j] = (conditional[i * n + j] + conditional[j * n + i]) * scale;
        }
    }
    p
}

/// Student-t kernel `1 / (1 + |y_i - y_j|^2)` (zero diagonal) and its sum.
fn student_kernel(y: &[f64], dims: usize) -> (Vec<f64>, f64) {
    let n = y.len() / dims;
    let mut w = alloc::vec![0.0; n * n];
    let mut sum = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let d2: f64 = (0..dims)
                .map(|k| {
                    let diff = y[i * dims + k] - y[j * dims + k];
                    diff * diff
                })
                .sum();
            let v = 1.0 / (1.0 + d2);
            w[i * n + j] = v;
            w[j * n + i] = v;
            sum += 2.0 * v;
        }
    }
    (w, sum)
}

/// `KL(P || Q)` for the flat `n × dims` layout `y`.
pub fn kl_divergence(p: &[f64], y: &[f64], dims: usize) -> f64 {
    let n = y.len() / dims;
    let (w, sum) = student_kernel(y, dims);
    let mut kl = 0.0;
    for i in 0..n {
        for j in 0..n {
            let pij = p[i * n + j];
            if i != j && pij > 0.0 {
                kl += pij * libm::log(pij * sum / w[i * n + j]);
            }
        }
    }
    kl
}

/// Gradient `4 sum_j (p_ij - q_ij) (y_i - y_j) / (1 + |y_i - y_j|^2)`.
pub fn kl_gradient(p: &[f64], y: &[f64], dims: usize) -> Vec<f64> {
    let n = y.len() / dims;
    let (w, sum) = student_kernel(y, dims);
    let mut grad = alloc::vec![0.0; n * dims];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let wij = w[i * n + j];
            let coeff = 4.0 * (p[i * n + j] - wij / sum) * wij;
            for k in 0..dims {
                grad[i * dims + k] += coeff * (y[i * dims + k] - y[j * dims + k]);
            }
        }
    }
    grad
}

#[derive(Debug, Clone, PartialEq)]
pub struct TsneOutcome {
    /// Flat row-major `n × out_dims` layout.
    pub coords: Vec<f64>,
    /// `(iterations completed, KL)` every 50 iterations, at the end of early
    /// exaggeration and after the last iteration. KL uses the plain `P`.
    pub kl_history: Vec<(usize, f64)>,
    pub iterations: usize,
    pub perplexity: f64,
}

impl TsneOutcome {
    pub fn final_kl(&self) -> f64 {
        self.kl_history.last().map_or(f64::NAN, |&(_, kl)| kl)
    }

    pub fn kl_at(&self, iteration: usize) -> Option<f64> {
        self.kl_history
            .iter()
            .find(|&&(it, _)| it == iteration)
            .map(|&(_, kl)| kl)
    }
}

/// Runs gradient descent with momentum and per-coordinate adaptive gains
/// from a small Gaussian start. Affinities are multiplied by
/// `early_exaggeration` for the first `exaggeration_iters` iterations.
pub fn tsne(points: &[Vec<f64>], config: &TsneConfig) -> Result<TsneOutcome, DimredError> {
    let perplexity = config
        .perplexity
        .unwrap_or_else(|| default_perplexity(points.len()));
    let n = validate(points, perplexity)?;
    let dims = config.out_dims;
    if dims == 0 {
        return Err(DimredError::InvalidParameter("out_dims must be positive"));
    }
    let cal = calibrate_rows(&squared_distance_matrix(points), n, perplexity);
    let p = symmetrize(&cal.conditional, n);
    let exaggerated: Vec<f64> = p.iter().map(|v| v * config.early_exaggeration).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let normal =
        Normal::new(0.0, config.init_std).map_err(|_| DimredError::InvalidParameter("init_std"))?;
    let mut y: Vec<f64> = (0..n * dims).map(|_| normal.sample(&mut rng)).collect();
    let mut velocity = alloc::vec![0.0; n * dims];
    let mut gains: Vec<f64> = alloc::vec![1.0; n * dims];
    let mut history = Vec::new();

    for it in 0..config.max_iter {
        let early = it < config.exaggeration_iters;
        let grad = kl_gradient(if early { &exaggerated } else { &p }, &y, dims);
        let momentum = if early {
            config.initial_momentum
        } else {
            config.final_momentum
        };
        for ((g, v), gain) in grad.iter().zip(velocity.iter_mut()).zip(gains.iter_mut()) {
            *gain = if (*g > 0.0) != (*v > 0.0) {
                *gain + 0.2
            } else {
                (*gain * 0.8).max(MIN_GAIN)
            };
            *v = momentum * *v - config.learning_rate * *gain * g;
        }
        y.iter_mut().zip(&velocity).for_each(|(yi, v)| *yi += v);
        for k in 0..dims {
            let mean = (0..n).map(|i| y[i * dims + k]).sum::<f64>() / n as f64;
            (0..n).for_each(|i| y[i * dims + k] -= mean);
        }

        let done = it + 1;
        if done % 50 == 0 || done == config.exaggeration_iters || done == config.max_iter {
            history.push((done, kl_divergence(&p, &y, dims)));
        }
    }
    Ok(TsneOutcome {
        coords: y,
        kl_history: history,
        iterations: config.max_iter,
        perplexity,
    })
}

pub fn tsne_project(points: &[Vec<f64>], config: &TsneConfig) -> Result<Projection, DimredError> {
    let outcome = tsne(points, config)?;
    Ok(Projection {
        method: ProjectionMethod::Tsne,
        coords: unflatten(&outcome.coords, config.out_dims),
        diagnostics: Diagnostics::Tsne {
            final_kl: outcome.final_kl(),
            iterations: outcome.iterations,
        },
    })
}
