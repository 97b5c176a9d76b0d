use alloc::vec::Vec;

use super::{estimate_bandwidth, validate, ClusterError, ClusterResult, MeanShiftParams};
use crate::geometry::{euclidean, squared_euclidean};

/// Moves every candidate to the mean of the points within `bandwidth` of it
/// (flat kernel, boundary inclusive).
///
/// A candidate with no point in range stays where it is; that cannot happen
/// for candidates produced by this function from data points.
pub fn mean_shift_step(
    points: &[Vec<f64>],
    candidates: &[Vec<f64>],
    bandwidth: f64,
) -> Vec<Vec<f64>> {
    candidates
        .iter()
        .map(|c| shift_once(points, c, bandwidth).unwrap_or_else(|| c.clone()))
        .collect()
}

fn shift_once(points: &[Vec<f64>], center: &[f64], radius: f64) -> Option<Vec<f64>> {
    let mut sum = alloc::vec![0.0; center.len()];
    let mut count = 0usize;
    for p in points {
        if euclidean(p, center) <= radius {
            for (s, x) in sum.iter_mut().zip(p) {
                *s += x;
            }
            count += 1;
        }
    }
    if count == 0 {
        return None;
    }
    let c = count as f64;
    sum.iter_mut().for_each(|s| *s /= c);
    Some(sum)
}

/// Flat-kernel mean shift seeded at every point.
///
/// Each seed climbs until it moves less than `1e-3 * bandwidth` or
/// `max_iter` steps pass. Converged modes are ranked by basin size (points
/// within `bandwidth` of the mode, larger first, then seed index) and a mode
/// is dropped when it lies closer than `bandwidth` to a better-ranked one.
/// Points take the label of the nearest surviving mode; labels follow the
/// ranking, and modes that win no point are discarded.
pub fn mean_shift(
    points: &[Vec<f64>],
    params: &MeanShiftParams,
) -> Result<ClusterResult, ClusterError> {
    validate(points)?;
    let bandwidth = match params.bandwidth {
        Some(b) => b,
        None if points.len() < 2 => 1.0,
        None => estimate_bandwidth(points, params.quantile)?,
    };
    if !(bandwidth > 0.0) || !bandwidth.is_finite() {
        return Err(ClusterError::NonPositiveBandwidth(bandwidth));
    }
    let stop_sq = (1e-3 * bandwidth) * (1e-3 * bandwidth);

    // (seed index, mode, basin size)
    let mut converged: Vec<(usize, Vec<f64>, usize)> = Vec::with_capacity(points.len());
    for (seed, start) in points.iter().enumerate() {
        let mut mode = start.clone();
        for _ in 0..params.max_iter {
            let Some(next) = shift_once(points, &mode, bandwidth) else {
                break;
            };
            let moved = squared_euclidean(&next, &mode);
            mode = next;
            if moved < stop_sq {
                break;
            }
        }
        let basin = points
            .iter()
            .filter(|p| euclidean(p, &mode) <= bandwidth)
            .count();
        converged.push((seed, mode, basin));
    }
    converged.sort_by(|a, b| b.2.cmp(&a.2).then(a.0.cmp(&b.0)));

    let mut kept: Vec<Vec<f64>> = Vec::new();
    for (_, mode, _) in converged {
        if kept.iter().all(|k| euclidean(k, &mode) >= bandwidth) {
            kept.push(mode);
        }
    }

    let nearest: Vec<usize> = points
        .iter()
        .map(|p| {
            let mut best = 0;
            let mut best_d = f64::INFINITY;
            for (i, m) in kept.iter().enumerate() {
                let d = squared_euclidean(p, m);
                if d < best_d {
                    best = i;
                    best_d = d;
                }
            }
            best
        })
        .collect();

    let mut new_label = alloc::vec![None; kept.len()];
    let mut modes = Vec::new();
    for (i, mode) in kept.into_iter().enumerate() {
        if nearest.contains(&i) {
            new_label[i] = Some(modes.len() as i32);
            modes.push(mode);
        }
    }
    let labels = nearest
        .iter()
        .map(|&i| new_label[i].expect("assigned mode survives"))
        .collect();
    Ok(ClusterResult {
        labels,
        n_clusters: modes.len(),
        modes: Some(modes),
        merge_history: None,
    })
}
