use alloc::vec::Vec;

use super::{validate, ClusterError};
use crate::geometry::euclidean;

/// Nearest-rank `quantile` of all pairwise Euclidean distances.
///
/// With `m = n(n-1)/2` sorted distances the result is the one at rank
/// `ceil(quantile * m)`. A zero result is replaced by the smallest positive
/// distance, or by `1.0` when every distance is zero, so the returned
/// bandwidth is always usable as a kernel radius.
pub fn estimate_bandwidth(points: &[Vec<f64>], quantile: f64) -> Result<f64, ClusterError> {
    validate(points)?;
    if points.len() < 2 {
        return Err(ClusterError::TooFewPoints {
            needed: 2,
            got: points.len(),
        });
    }
    if !(quantile > 0.0 && quantile <= 1.0) {
        return Err(ClusterError::InvalidParameter(
            "quantile must lie in (0, 1]",
        ));
    }

    let n = points.len();
    let mut distances = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            distances.push(euclidean(&points[i], &points[j]));
        }
    }
    distances.sort_unstable_by(f64::total_cmp);

    let m = distances.len();
    let rank = (libm::ceil(quantile * m as f64) as usize).clamp(1, m);
    let picked = distances[rank - 1];
    if picked > 0.0 {
        return Ok(picked);
    }
    Ok(distances.iter().copied().find(|&d| d > 0.0).unwrap_or(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn full_quantile_is_the_diameter() {
        let pts = vec![vec![0.0], vec![1.0], vec![2.0]];
        assert_eq!(estimate_bandwidth(&pts, 1.0).unwrap(), 2.0);
    }

    #[test]
    fn single_distance() {
        assert_eq!(
            estimate_bandwidth(&[vec![0.0], vec![3.0]], 0.5).unwrap(),
            3.0
        );
    }

    #[test]
    fn coincident_points_fall_back() {
        let pts = vec![vec![1.0, 1.0]; 4];
        assert_eq!(estimate_bandwidth(&pts, 0.3).unwrap(), 1.0);
        let pts = vec![vec![0.0], vec![0.0], vec![0.0], vec![5.0]];
        // Three zero distances out of six: the 0.3 quantile is zero.
        assert_eq!(estimate_bandwidth(&pts, 0.3).unwrap(), 5.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            estimate_bandwidth(&[vec![0.0]], 0.3),
            Err(ClusterError::TooFewPoints { needed: 2, got: 1 })
        );
        assert!(estimate_bandwidth(&[vec![0.0], vec![1.0]], 0.0).is_err());
        assert!(estimate_bandwidth(&[vec![0.0], vec![1.0]], 1.5).is_err());
    }
}
