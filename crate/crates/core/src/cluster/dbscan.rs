use alloc::vec::Vec;

use super::{relabel_by_first_appearance, validate, ClusterError, ClusterResult, NOISE};
use crate::geometry::euclidean;

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        // Lower index becomes the root so roots are stable.
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        parent[hi] = lo;
    }
}

/// Density clustering with noise.
///
/// A point is core when at least `min_samples` points, itself included, lie
/// within distance `eps` (inclusive). Core points within `eps` of each other
/// share a cluster. A non-core point within `eps` of some core point joins
/// the cluster of the lowest-index such core point; every other point is
/// [`NOISE`]. Clusters are numbered by their lowest point index.
pub fn dbscan(
    points: &[Vec<f64>],
    eps: f64,
    min_samples: usize,
) -> Result<ClusterResult, ClusterError> {
    validate(points)?;
    if !(eps > 0.0) {
        return Err(ClusterError::InvalidParameter("eps must be positive"));
    }
    if min_samples == 0 {
        return Err(ClusterError::InvalidParameter(
            "min_samples must be at least 1",
        ));
    }
    let n = points.len();

    let mut neighbors: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
    for i in 0..n {
        neighbors[i].push(i);
        for j in (i + 1)..n {
            if euclidean(&points[i], &points[j]) <= eps {
                neighbors[i].push(j);
                neighbors[j].push(i);
            }
        }
    }
    for list in &mut neighbors {
        list.sort_unstable();
    }
    let core: Vec<bool> = neighbors.iter().map(|nb| nb.len() >= min_samples).collect();

    let mut parent: Vec<usize> = (0..n).collect();
    for i in (0..n).filter(|&i| core[i]) {
        for &j in &neighbors[i] {
            if core[j] {
                union(&mut parent, i, j);
            }
        }
    }

    let raw: Vec<i32> = (0..n)
        .map(|i| {
            let anchor = if core[i] {
                Some(i)
            } else {
                neighbors[i].iter().copied().find(|&j| core[j])
            };
            match anchor {
                Some(c) => find(&mut parent, c) as i32,
                None => NOISE,
            }
        })
        .collect();
    Ok(ClusterResult::from_labels(relabel_by_first_appearance(
        &raw,
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn lone_point_is_noise() {
        let r = dbscan(&[vec![0.0, 0.0]], 1.0, 2).unwrap();
        assert_eq!(r.labels, vec![NOISE]);
        assert_eq!(r.n_clusters, 0);
    }

    #[test]
    fn chain_reachability() {
        let r = dbscan(&[vec![0.0], vec![0.1], vec![0.2]], 0.15, 2).unwrap();
        assert_eq!(r.labels, vec![0, 0, 0]);
    }

    #[test]
    fn border_goes_to_lowest_core() {
        // x = 1.5 is a border point reached by core 2.25 (index 1) and core
        // 0.75 (index 8).
        let pts: Vec<Vec<f64>> = [1.5, 2.25, 2.5, 2.75, 3.0, 0.0, 0.25, 0.5, 0.75]
            .iter()
            .map(|&x| vec![x])
            .collect();
        let r = dbscan(&pts, 0.8, 4).unwrap();
        assert_eq!(r.labels, vec![0, 0, 0, 0, 0, 1, 1, 1, 1]);
    }

    #[test]
    fn sparse_points_are_noise() {
        let pts: Vec<Vec<f64>> = [0.0, 10.0, 20.0, 20.5, 21.0]
            .iter()
            .map(|&x| vec![x])
            .collect();
        let r = dbscan(&pts, 1.0, 3).unwrap();
        assert_eq!(r.labels, vec![NOISE, NOISE, 0, 0, 0]);
    }

    #[test]
    fn rejects_bad_params() {
        assert!(dbscan(&[vec![0.0]], 0.0, 1).is_err());
        assert!(dbscan(&[vec![0.0]], 1.0, 0).is_err());
    }
}
