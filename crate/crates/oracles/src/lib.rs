//! Slow, obviously-correct reference implementations for the test suites.
//!
//! Nothing here shares code with `homonym-core`; each function recomputes
//! its answer from first principles (exhaustive search, brute-force
//! recomputation, a third-party eigensolver, finite differences).

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform_points(rng: &mut ChaCha8Rng, n: usize, d: usize, lo: f64, hi: f64) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| (0..d).map(|_| rng.random_range(lo..hi)).collect())
        .collect()
}

/// `per_blob` isotropic Gaussian samples around every center, blob by blob.
pub fn gaussian_blobs(
    rng: &mut ChaCha8Rng,
    centers: &[Vec<f64>],
    per_blob: usize,
    sigma: f64,
) -> Vec<Vec<f64>> {
    let normal = Normal::new(0.0, sigma).unwrap();
    centers
        .iter()
        .flat_map(|c| {
            (0..per_blob)
                .map(|_| {
                    c.iter()
                        .map(|x| x + normal.sample(&mut *rng))
                        .collect::<Vec<f64>>()
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// DBSCAN by exhaustive region queries and breadth-first expansion from each
/// unvisited core point in index order. Border points take the cluster of
/// their lowest-index core neighbor; clusters are renumbered by first
/// appearance in point order.
pub fn dbscan(points: &[Vec<f64>], eps: f64, min_samples: usize) -> Vec<i32> {
    let n = points.len();
    let region = |i: usize| -> Vec<usize> {
        (0..n)
            .filter(|&j| dist(&points[i], &points[j]) <= eps)
            .collect()
    };
    let regions: Vec<Vec<usize>> = (0..n).map(region).collect();
    let core: Vec<bool> = regions.iter().map(|r| r.len() >= min_samples).collect();

    let mut component = vec![None; n];
    let mut next = 0;
    for start in 0..n {
        if !core[start] || component[start].is_some() {
            continue;
        }
        let mut queue = VecDeque::from([start]);
        component[start] = Some(next);
        while let Some(p) = queue.pop_front() {
            for &q in &regions[p] {
                if core[q] && component[q].is_none() {
                    component[q] = Some(next);
                    queue.push_back(q);
                }
            }
        }
        next += 1;
    }
    let raw: Vec<i32> = (0..n)
        .map(|i| {
            if core[i] {
                component[i].unwrap() as i32
            } else {
                match regions[i].iter().find(|&&j| core[j]) {
                    Some(&j) => component[j].unwrap() as i32,
                    None => -1,
                }
            }
        })
        .collect();
    renumber(&raw)
}

/// Renumbers non-negative labels by first appearance.
pub fn renumber(raw: &[i32]) -> Vec<i32> {
    let mut map = BTreeMap::new();
    raw.iter()
        .map(|&l| {
            if l < 0 {
                -1
            } else {
                let len = map.len() as i32;
                *map.entry(l).or_insert(len)
            }
        })
        .collect()
}

/// True when the two label lists induce the same partition and the same
/// noise set.
pub fn same_partition(a: &[i32], b: &[i32]) -> bool {
    a.len() == b.len() && renumber(a) == renumber(b)
}

/// Ward merge recorded by [`ward`]: `(low id, high id, cost)`.
pub type WardMerge = (usize, usize, f64);

/// Ward clustering that recomputes every centroid and every pairwise cost
/// from scratch at each step. Clusters are ids `0..n` for points and
/// `n + s` for the `s`-th merge; ties go to the smallest `(low, high)`.
pub fn ward(points: &[Vec<f64>], k: usize) -> (Vec<i32>, Vec<WardMerge>) {
    let n = points.len();
    let d = points[0].len();
    let mut clusters: Vec<(usize, Vec<usize>)> = (0..n).map(|i| (i, vec![i])).collect();
    let mut merges = Vec::new();
    while clusters.len() > k {
        let centroid = |members: &[usize]| -> Vec<f64> {
            (0..d)
                .map(|c| members.iter().map(|&m| points[m][c]).sum::<f64>() / members.len() as f64)
                .collect()
        };
        let mut best: Option<(f64, usize, usize, usize, usize)> = None;
        for a in 0..clusters.len() {
            for b in (a + 1)..clusters.len() {
                let (ia, ma) = &clusters[a];
                let (ib, mb) = &clusters[b];
                let (na, nb) = (ma.len() as f64, mb.len() as f64);
                let gap = dist(&centroid(ma), &centroid(mb));
                let cost = na * nb / (na + nb) * gap * gap;
                let (lo, hi) = ((*ia).min(*ib), (*ia).max(*ib));
                let better = match best {
                    None => true,
                    Some((bc, blo, bhi, _, _)) => {
                        cost < bc || (cost == bc && (lo, hi) < (blo, bhi))
                    }
                };
                if better {
                    best = Some((cost, lo, hi, a, b));
                }
            }
        }
        let (cost, lo, hi, a, b) = best.unwrap();
        let (_, mb) = clusters.remove(b);
        let mut members = clusters.remove(a).1;
        members.extend(mb);
        clusters.push((n + merges.len(), members));
        merges.push((lo, hi, cost));
    }
    clusters.sort_by_key(|(_, m)| *m.iter().min().unwrap());
    let mut labels = vec![0; n];
    for (label, (_, members)) in clusters.iter().enumerate() {
        for &m in members {
            labels[m] = label as i32;
        }
    }
    (labels, merges)
}

/// Nearest-rank quantile of the fully sorted list of pairwise distances.
pub fn distance_quantile(points: &[Vec<f64>], quantile: f64) -> f64 {
    let mut all = Vec::new();
    for i in 0..points.len() {
        for j in 0..i {
            all.push(dist(&points[i], &points[j]));
        }
    }
    all.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let rank = (quantile * all.len() as f64).ceil() as usize;
    all[rank.max(1) - 1]
}

/// Per-key sum and count, divided at the end.
pub fn per_key_means(records: &[(String, Vec<f64>)]) -> BTreeMap<String, (Vec<f64>, usize)> {
    let mut sums: BTreeMap<String, (Vec<f64>, usize)> = BTreeMap::new();
    for (key, v) in records {
        let e = sums
            .entry(key.clone())
            .or_insert_with(|| (vec![0.0; v.len()], 0));
        for (s, x) in e.0.iter_mut().zip(v) {
            *s += x;
        }
        e.1 += 1;
    }
    for (sum, count) in sums.values_mut() {
        for s in sum.iter_mut() {
            *s /= *count as f64;
        }
    }
    sums
}

/// Best matched-point count over every injective map from clusters to
/// groups (each cluster may also stay unmatched). Noise (`-1`) never matches.
pub fn exhaustive_alignment(pred: &[i32], gold: &[u32]) -> usize {
    let clusters: Vec<i32> = pred
        .iter()
        .copied()
        .filter(|&l| l >= 0)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let groups: Vec<u32> = gold
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let count = |c: i32, g: u32| {
        pred.iter()
            .zip(gold)
            .filter(|&(&p, &q)| p == c && q == g)
            .count()
    };

    fn search(
        idx: usize,
        clusters: &[i32],
        groups: &[u32],
        used: &mut Vec<bool>,
        count: &dyn Fn(i32, u32) -> usize,
    ) -> usize {
        if idx == clusters.len() {
            return 0;
        }
        let mut best = search(idx + 1, clusters, groups, used, count);
        for g in 0..groups.len() {
            if !used[g] {
                used[g] = true;
                best = best.max(
                    count(clusters[idx], groups[g])
                        + search(idx + 1, clusters, groups, used, count),
                );
                used[g] = false;
            }
        }
        best
    }
    search(
        0,
        &clusters,
        &groups,
        &mut vec![false; groups.len()],
        &count,
    )
}

/// Adjusted Rand index from raw pair counts over all `n(n-1)/2` point pairs.
///
/// With `n11` pairs together in both partitions, `n00` apart in both, and
/// `n10`/`n01` the disagreements, ARI equals
/// `2 (n00 n11 - n01 n10) / ((n00 + n01)(n01 + n11) + (n00 + n10)(n10 + n11))`.
pub fn ari_by_pairs<A: PartialEq, B: PartialEq>(a: &[A], b: &[B]) -> f64 {
    let (mut n11, mut n10, mut n01, mut n00) = (0f64, 0f64, 0f64, 0f64);
    for i in 0..a.len() {
        for j in (i + 1)..a.len() {
            match (a[i] == a[j], b[i] == b[j]) {
                (true, true) => n11 += 1.0,
                (true, false) => n10 += 1.0,
                (false, true) => n01 += 1.0,
                (false, false) => n00 += 1.0,
            }
        }
    }
    let denom = (n00 + n01) * (n01 + n11) + (n00 + n10) * (n10 + n11);
    if denom == 0.0 {
        return 1.0;
    }
    2.0 * (n00 * n11 - n01 * n10) / denom
}

/// Eigenvalues of the sample covariance (divisor `n - 1`), descending,
/// computed by nalgebra.
pub fn covariance_eigenvalues(points: &[Vec<f64>]) -> Vec<f64> {
    let n = points.len();
    let d = points[0].len();
    let x = DMatrix::from_fn(n, d, |i, j| points[i][j]);
    let mean = x.row_mean();
    let centered = DMatrix::from_fn(n, d, |i, j| x[(i, j)] - mean[j]);
    let cov = centered.transpose() * &centered / (n as f64 - 1.0);
    let mut values: Vec<f64> = cov.symmetric_eigen().eigenvalues.iter().copied().collect();
    values.sort_by(|a, b| b.partial_cmp(a).unwrap());
    values
}

/// Central finite-difference gradient of `f` at `x`.
pub fn central_difference(f: impl Fn(&[f64]) -> f64, x: &[f64], h: f64) -> Vec<f64> {
    let mut probe = x.to_vec();
    (0..x.len())
        .map(|k| {
            probe[k] = x[k] + h;
            let up = f(&probe);
            probe[k] = x[k] - h;
            let down = f(&probe);
            probe[k] = x[k];
            (up - down) / (2.0 * h)
        })
        .collect()
}

/// Entropy-based perplexity `exp(-sum p ln p)` of one probability row.
pub fn perplexity(row: &[f64]) -> f64 {
    (-row
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p * p.ln())
        .sum::<f64>())
    .exp()
}

pub fn mean_pairwise_distance(
    coords: &[Vec<f64>],
    pairs: impl Iterator<Item = (usize, usize)>,
) -> f64 {
    let (sum, count) = pairs.fold((0.0, 0usize), |(s, c), (i, j)| {
        (s + dist(&coords[i], &coords[j]), c + 1)
    });
    sum / count as f64
}

pub fn sorted_pairwise_distances(coords: &[Vec<f64>]) -> Vec<f64> {
    let mut out = Vec::new();
    for i in 0..coords.len() {
        for j in (i + 1)..coords.len() {
            out.push(dist(&coords[i], &coords[j]));
        }
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out
}
