use alloc::vec::Vec;

use super::linalg::symmetric_eigen;
use super::{check_points, Diagnostics, DimredError, Projection, ProjectionMethod};
use crate::geometry::centroid;

/// Principal axes of a point set.
#[derive(Debug, Clone, PartialEq)]
pub struct PcaModel {
    pub mean: Vec<f64>,
    /// Unit principal axes, largest variance first.
    pub components: Vec<Vec<f64>>,
    /// Sample-covariance eigenvalue for each component.
    pub explained_variance: Vec<f64>,
}

impl PcaModel {
    pub fn transform(&self, point: &[f64]) -> Vec<f64> {
        self.components
            .iter()
            .map(|c| {
                c.iter()
                    .zip(point)
                    .zip(&self.mean)
                    .map(|((w, x), m)| w * (x - m))
                    .sum()
            })
            .collect()
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) -> f64 {
    let norm = libm::sqrt(dot(v, v));
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
    norm
}

/// Largest-magnitude entry (first on ties) made positive.
fn fix_sign(v: &mut [f64]) {
    let mut pivot = 0.0;
    for &x in v.iter() {
        if libm::fabs(x) > libm::fabs(pivot) {
            pivot = x;
        }
    }
    if pivot < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

/// A unit vector orthogonal to every vector in `basis`.
fn orthogonal_complement(basis: &[Vec<f64>], dim: usize) -> Vec<f64> {
    for axis in 0..dim {
        let mut v = alloc::vec![0.0; dim];
        v[axis] = 1.0;
        for _ in 0..2 {
            for b in basis {
                let p = dot(&v, b);
                v.iter_mut().zip(b).for_each(|(x, y)| *x -= p * y);
            }
        }
        if normalize(&mut v) > 1e-6 {
            return v;
        }
    }
    unreachable!("basis smaller than the space always has a complement")
}

/// Fits `out_dims` principal axes from the sample covariance.
///
/// Uses the `d × d` covariance when `d <= n` and the `n × n` Gram matrix of
/// the centered data otherwise; both give the same nonzero spectrum. Axes
/// are signed so their largest-magnitude entry is positive.
pub fn pca_fit(points: &[Vec<f64>], out_dims: usize) -> Result<PcaModel, DimredError> {
    let d = check_points(points, 2)?;
    let n = points.len();
    if out_dims == 0 || out_dims > n.min(d) {
        return Err(DimredError::DimsTooLarge {
            requested: out_dims,
            available: n.min(d),
        });
    }
    let mean = centroid(points.iter().map(Vec::as_slice), d);
    let centered: Vec<Vec<f64>> = points
        .iter()
        .map(|p| p.iter().zip(&mean).map(|(x, m)| x - m).collect())
        .collect();
    let denom = (n - 1) as f64;

    let mut components: Vec<Vec<f64>> = Vec::with_capacity(out_dims);
    let mut explained_variance = Vec::with_capacity(out_dims);
    if d <= n {
        let mut cov = alloc::vec![0.0; d * d];
        for row in &centered {
            for i in 0..d {
                for j in i..d {
                    cov[i * d + j] += row[i] * row[j];
                }
            }
        }
        cov.iter_mut().for_each(|c| *c /= denom);
        let eig = symmetric_eigen(&cov, d);
        for k in 0..out_dims {
            components.push(eig.vectors[k].clone());
            explained_variance.push(eig.values[k].max(0.0));
        }
    } else {
        let mut gram = alloc::vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                gram[i * n + j] = dot(&centered[i], &centered[j]) / denom;
            }
        }
        let eig = symmetric_eigen(&gram, n);
        let top = eig.values[0].max(0.0);
        for k in 0..out_dims {
            let value = eig.values[k].max(0.0);
            let axis = if value > 1e-12 * top && value > 0.0 {
                let mut v = alloc::vec![0.0; d];
                for (row, &u) in centered.iter().zip(&eig.vectors[k]) {
                    v.iter_mut().zip(row).for_each(|(acc, x)| *acc += u * x);
                }
                normalize(&mut v);
                v
            } else {
                orthogonal_complement(&components, d)
            };
            components.push(axis);
            explained_variance.push(value);
        }
    }
    components.iter_mut().for_each(|c| fix_sign(c));
    Ok(PcaModel {
        mean,
        components,
        explained_variance,
    })
}

pub fn pca_project(points: &[Vec<f64>], out_dims: usize) -> Result<Projection, DimredError> {
    let model = pca_fit(points, out_dims)?;
    Ok(Projection {
        method: ProjectionMethod::Pca,
        coords: points.iter().map(|p| model.transform(p)).collect(),
        diagnostics: Diagnostics::Pca {
            explained_variance: model.explained_variance,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use core::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn collinear_points() {
        let pts: Vec<Vec<f64>> = (0..5).map(|i| vec![i as f64, i as f64]).collect();
        let m = pca_fit(&pts, 2).unwrap();
        assert!((m.components[0][0] - FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((m.components[0][1] - FRAC_1_SQRT_2).abs() < 1e-12);
        assert!(m.explained_variance[1].abs() < 1e-12);
    }

    #[test]
    fn axis_aligned_data_is_identity() {
        let pts = vec![
            vec![-2.0, 0.0],
            vec![2.0, 0.0],
            vec![0.0, 0.5],
            vec![0.0, -0.5],
        ];
        let p = pca_project(&pts, 2).unwrap();
        for (orig, proj) in pts.iter().zip(&p.coords) {
            assert!((orig[0].abs() - proj[0].abs()).abs() < 1e-12);
            assert!((orig[1].abs() - proj[1].abs()).abs() < 1e-12);
        }
    }

    #[test]
    fn wide_data_uses_gram_route() {
        // 3 points in 5-D: rank 2 after centering, so the third axis is a
        // completion orthogonal to the first two.
        let pts = vec![
            vec![1.0, 0.0, 0.0, 2.0, 0.0],
            vec![0.0, 1.0, 0.0, 0.0, 1.0],
            vec![0.0, 0.0, 3.0, 0.0, 0.0],
        ];
        let m = pca_fit(&pts, 3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((dot(&m.components[i], &m.components[j]) - expected).abs() < 1e-10);
            }
        }
        assert!(m.explained_variance[2] < 1e-12);
    }

    #[test]
    fn errors() {
        assert_eq!(
            pca_fit(&[vec![1.0, 2.0]], 2),
            Err(DimredError::TooFewPoints { needed: 2, got: 1 })
        );
        assert_eq!(
            pca_fit(&[vec![1.0], vec![2.0], vec![3.0]], 2),
            Err(DimredError::DimsTooLarge {
                requested: 2,
                available: 1
            })
        );
    }
}
