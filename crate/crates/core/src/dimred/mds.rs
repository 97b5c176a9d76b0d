use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_points, unflatten, Diagnostics, DimredError, Projection, ProjectionMethod};
use crate::geometry::{euclidean, squared_distance_matrix};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MdsConfig {
    pub out_dims: usize,
    pub max_iter: usize,
    /// Stop once an iteration lowers stress by less than `tol` relative to
    /// the previous stress.
    pub tol: f64,
    pub seed: u64,
    /// Independent random starts; the lowest final stress wins.
    pub n_init: usize,
}

impl Default for MdsConfig {
    fn default() -> Self {
        MdsConfig {
            out_dims: 2,
            max_iter: 300,
            tol: 1e-6,
            seed: 0,
            n_init: 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SmacofOutcome {
    /// Flat row-major `n × out_dims` configuration.
    pub coords: Vec<f64>,
    /// Stress of the initial configuration followed by the stress after
    /// every Guttman transform.
    pub stress_history: Vec<f64>,
    pub iterations: usize,
}

impl SmacofOutcome {
    pub fn final_stress(&self) -> f64 {
        *self
            .stress_history
            .last()
            .expect("history holds the initial stress")
    }
}

/// Raw stress `sum_{i<j} (d_ij - delta_ij)^2` of a flat configuration.
pub fn raw_stress(coords: &[f64], dims: usize, dissimilarities: &[f64]) -> f64 {
    let n = coords.len() / dims;
    let mut stress = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let d = euclidean(
                &coords[i * dims..(i + 1) * dims],
                &coords[j * dims..(j + 1) * dims],
            );
            let r = d - dissimilarities[i * n + j];
            stress += r * r;
        }
    }
    stress
}

/// Metric MDS by stress majorization with unit weights.
///
/// `dissimilarities` is a symmetric row-major `n × n` matrix. Each of the
/// `n_init` starts is uniform noise in `[-1, 1]` drawn in sequence from one
/// generator seeded with `seed`; each step applies the Guttman transform
/// `X <- B(X) X / n`, which never increases stress. The run ending at the
/// lowest stress is returned (earliest start on ties).
pub fn smacof(dissimilarities: &[f64], n: usize, config: &MdsConfig) -> SmacofOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut best: Option<SmacofOutcome> = None;
    for _ in 0..config.n_init.max(1) {
        let start: Vec<f64> = (0..n * config.out_dims)
            .map(|_| rng.random_range(-1.0..=1.0))
            .collect();
        let run = majorize(dissimilarities, n, start, config);
        if best
            .as_ref()
            .is_none_or(|b| run.final_stress() < b.final_stress())
        {
            best = Some(run);
        }
    }
    best.expect("at least one start")
}

fn majorize(
    dissimilarities: &[f64],
    n: usize,
    mut x: Vec<f64>,
    config: &MdsConfig,
) -> SmacofOutcome {
    let dims = config.out_dims;
    let total: f64 = dissimilarities.iter().map(|d| d * d).sum::<f64>() / 2.0;
    let exact = 1e-30 * total.max(f64::MIN_POSITIVE);
    let mut history = alloc::vec![raw_stress(&x, dims, dissimilarities)];
    let mut next = alloc::vec![0.0; n * dims];
    let mut iterations = 0;
    while iterations < config.max_iter {
        next.iter_mut().for_each(|v| *v = 0.0);
        for i in 0..n {
            let xi = &x[i * dims..(i + 1) * dims];
            for j in 0..n {
                if i == j {
                    continue;
                }
                let xj = &x[j * dims..(j + 1) * dims];
                let d = euclidean(xi, xj);
                if d <= 0.0 {
                    continue;
                }
                let ratio = dissimilarities[i * n + j] / d;
                for k in 0..dims {
                    next[i * dims + k] += ratio * (xi[k] - xj[k]);
                }
            }
        }
        let inv_n = 1.0 / n as f64;
        next.iter_mut().for_each(|v| *v *= inv_n);
        core::mem::swap(&mut x, &mut next);
        iterations += 1;

        let prev = *history.last().expect("non-empty");
        let stress = raw_stress(&x, dims, dissimilarities);
        history.push(stress);
        if stress <= exact || prev - stress < config.tol * prev {
            break;
        }
    }
    SmacofOutcome {
        coords: x,
        stress_history: history,
        iterations,
    }
}

/// Embeds the Euclidean distances between `points` with [`smacof`].
pub fn mds_project(points: &[Vec<f64>], config: &MdsConfig) -> Result<Projection, DimredError> {
    check_points(points, 2)?;
    if config.out_dims == 0 {
        return Err(DimredError::InvalidParameter("out_dims must be positive"));
    }
    let n = points.len();
    let mut dissim = squared_distance_matrix(points);
    dissim.iter_mut().for_each(|d| *d = libm::sqrt(*d));
    let outcome = smacof(&dissim, n, config);
    Ok(Projection {
        method: ProjectionMethod::Mds,
        coords: unflatten(&outcome.coords, config.out_dims),
        diagnostics: Diagnostics::Mds {
            final_stress: outcome.final_stress(),
            iterations: outcome.iterations,
        },
    })
}
