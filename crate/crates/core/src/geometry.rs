//! Small vector helpers shared by the clustering and projection code.

use alloc::vec::Vec;

#[inline]
pub fn squared_euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[inline]
pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    libm::sqrt(squared_euclidean(a, b))
}

/// Common dimension of `points`, or `None` when the set is empty or ragged.
pub fn common_dimension(points: &[Vec<f64>]) -> Option<usize> {
    let dim = points.first()?.len();
    points.iter().all(|p| p.len() == dim).then_some(dim)
}

/// Component-wise mean of a non-empty set of equal-length vectors.
pub fn centroid<'a, I>(members: I, dim: usize) -> Vec<f64>
where
    I: IntoIterator<Item = &'a [f64]>,
{
    let mut sum = alloc::vec![0.0; dim];
    let mut count = 0usize;
    for v in members {
        for (s, x) in sum.iter_mut().zip(v) {
            *s += x;
        }
        count += 1;
    }
    let count = count.max(1) as f64;
    sum.iter_mut().for_each(|s| *s /= count);
    sum
}

/// Full symmetric matrix of pairwise squared distances, row-major `n × n`.
pub fn squared_distance_matrix(points: &[Vec<f64>]) -> Vec<f64> {
    let n = points.len();
    let mut out = alloc::vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = squared_euclidean(&points[i], &points[j]);
            out[i * n + j] = d;
            out[j * n + i] = d;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn distances() {
        assert_eq!(squared_euclidean(&[0.0, 0.0], &[3.0, 4.0]), 25.0);
        assert_eq!(euclidean(&[0.0, 0.0], &[3.0, 4.0]), 5.0);
    }

    #[test]
    fn ragged_points_have_no_dimension() {
        assert_eq!(common_dimension(&[vec![1.0], vec![1.0, 2.0]]), None);
        assert_eq!(common_dimension(&[]), None);
        assert_eq!(common_dimension(&[vec![1.0, 2.0]]), Some(2));
    }

    #[test]
    fn centroid_of_two() {
        let pts = [vec![1.0, 3.0], vec![3.0, 5.0]];
        assert_eq!(centroid(pts.iter().map(Vec::as_slice), 2), vec![2.0, 4.0]);
    }
}
