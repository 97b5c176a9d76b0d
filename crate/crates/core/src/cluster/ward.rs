use alloc::vec::Vec;

use super::{validate, ClusterError, ClusterResult, Merge, WardStop};
use crate::geometry::squared_euclidean;

struct Node {
    id: usize,
    members: Vec<usize>,
}

/// Bottom-up Ward clustering.
///
/// The cost of joining clusters `A` and `B` is
/// `|A||B| / (|A| + |B|) * ||mean(A) - mean(B)||^2`, the growth in total
/// within-cluster sum of squares. Each step merges the cheapest pair; equal
/// costs go to the pair with the smallest `(left, right)` cluster ids. Costs
/// are kept in a matrix updated with the Lance-Williams recurrence for Ward
/// linkage, which is exact for this cost.
///
/// Final labels number clusters by their lowest point index.
pub fn agglomerative_ward(
    points: &[Vec<f64>],
    stop: WardStop,
) -> Result<ClusterResult, ClusterError> {
    validate(points)?;
    let n = points.len();
    match stop {
        WardStop::Clusters(k) if k == 0 || k > n => return Err(ClusterError::KOutOfRange { k, n }),
        WardStop::DistanceThreshold(t) if !(t > 0.0) => {
            return Err(ClusterError::InvalidParameter(
                "distance threshold must be positive",
            ))
        }
        _ => {}
    }

    let mut cost = alloc::vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let c = 0.5 * squared_euclidean(&points[i], &points[j]);
            cost[i * n + j] = c;
            cost[j * n + i] = c;
        }
    }
    let mut slots: Vec<Option<Node>> = (0..n)
        .map(|i| {
            Some(Node {
                id: i,
                members: alloc::vec![i],
            })
        })
        .collect();
    let mut active = n;
    let mut history = Vec::new();

    while active > 1 {
        if let WardStop::Clusters(k) = stop {
            if active <= k {
                break;
            }
        }

        // (cost, low id, high id, slot a, slot b)
        let mut best: Option<(f64, usize, usize, usize, usize)> = None;
        for a in 0..n {
            let Some(na) = &slots[a] else { continue };
            for b in (a + 1)..n {
                let Some(nb) = &slots[b] else { continue };
                let c = cost[a * n + b];
                let (lo, hi) = if na.id < nb.id {
                    (na.id, nb.id)
                } else {
                    (nb.id, na.id)
                };
                let better = match best {
                    None => true,
                    Some((bc, blo, bhi, _, _)) => c < bc || (c == bc && (lo, hi) < (blo, bhi)),
                };
                if better {
                    best = Some((c, lo, hi, a, b));
                }
            }
        }
        let (merge_cost, lo, hi, a, b) = best.expect("at least two active clusters");
        if let WardStop::DistanceThreshold(t) = stop {
            if merge_cost > t {
                break;
            }
        }

        let node_b = slots[b].take().expect("active slot");
        let size_a = slots[a].as_ref().expect("active slot").members.len() as f64;
        let size_b = node_b.members.len() as f64;
        for c in 0..n {
            if c == a || c == b {
                continue;
            }
            let Some(nc) = &slots[c] else { continue };
            let size_c = nc.members.len() as f64;
            let updated = ((size_a + size_c) * cost[a * n + c]
                + (size_b + size_c) * cost[b * n + c]
                - size_c * merge_cost)
                / (size_a + size_b + size_c);
            cost[a * n + c] = updated;
            cost[c * n + a] = updated;
        }
        let node_a = slots[a].as_mut().expect("active slot");
        node_a.members.extend(node_b.members);
        node_a.id = n + history.len();
        history.push(Merge {
            left: lo,
            right: hi,
            cost: merge_cost,
            size: node_a.members.len(),
        });
        active -= 1;
    }

    let mut labels = alloc::vec![0i32; n];
    let mut clusters: Vec<&Node> = slots.iter().flatten().collect();
    clusters.sort_by_key(|node| node.members.iter().min().copied());
    for (label, node) in clusters.iter().enumerate() {
        for &m in &node.members {
            labels[m] = label as i32;
        }
    }
    Ok(ClusterResult {
        n_clusters: clusters.len(),
        labels,
        modes: None,
        merge_history: Some(history),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn line(xs: &[f64]) -> Vec<Vec<f64>> {
        xs.iter().map(|&x| vec![x]).collect()
    }

    #[test]
    fn dominant_gap_splits_first() {
        let r = agglomerative_ward(&line(&[0.0, 1.0, 10.0]), WardStop::Clusters(2)).unwrap();
        assert_eq!(r.labels, vec![0, 0, 1]);
        assert_eq!(r.n_clusters, 2);
        let h = r.merge_history.unwrap();
        assert_eq!(
            h,
            vec![Merge {
                left: 0,
                right: 1,
                cost: 0.5,
                size: 2
            }]
        );
    }

    #[test]
    fn single_point() {
        let r = agglomerative_ward(&line(&[3.0]), WardStop::Clusters(1)).unwrap();
        assert_eq!(r.labels, vec![0]);
        assert_eq!(r.n_clusters, 1);
    }

    #[test]
    fn k_bounds() {
        let pts = line(&[0.0, 1.0, 2.0]);
        assert_eq!(
            agglomerative_ward(&pts, WardStop::Clusters(4)),
            Err(ClusterError::KOutOfRange { k: 4, n: 3 })
        );
        assert!(agglomerative_ward(&pts, WardStop::Clusters(0)).is_err());
        let all = agglomerative_ward(&pts, WardStop::Clusters(3)).unwrap();
        assert_eq!(all.labels, vec![0, 1, 2]);
        let one = agglomerative_ward(&pts, WardStop::Clusters(1)).unwrap();
        assert_eq!(one.labels, vec![0, 0, 0]);
    }

    #[test]
    fn merged_cost_matches_definition() {
        // {0,1} then {10}: centroids 0.5 and 10, sizes 2 and 1.
        let r = agglomerative_ward(&line(&[0.0, 1.0, 10.0]), WardStop::Clusters(1)).unwrap();
        let h = r.merge_history.unwrap();
        assert_eq!(h[1].left, 2);
        assert_eq!(h[1].right, 3);
        let expected = (2.0 * 1.0 / 3.0) * 9.5 * 9.5;
        assert!((h[1].cost - expected).abs() < 1e-12);
    }

    #[test]
    fn threshold_stops_before_expensive_merges() {
        let r = agglomerative_ward(
            &line(&[0.0, 1.0, 10.0, 11.0]),
            WardStop::DistanceThreshold(1.0),
        )
        .unwrap();
        assert_eq!(r.labels, vec![0, 0, 1, 1]);
        assert_eq!(r.merge_history.unwrap().len(), 2);
    }

    #[test]
    fn ties_prefer_lowest_ids() {
        let r = agglomerative_ward(&line(&[0.0, 1.0, 2.0, 3.0]), WardStop::Clusters(3)).unwrap();
        assert_eq!(
            r.merge_history.unwrap()[0],
            Merge {
                left: 0,
                right: 1,
                cost: 0.5,
                size: 2
            }
        );
        assert_eq!(r.labels, vec![0, 0, 1, 2]);
    }
}
