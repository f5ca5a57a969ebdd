//! Points on S^d, generators, sphere constants and point-set files.

mod generate;
mod io;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{digamma, ln_gamma_ratio, CompensatedSum};

pub use generate::{fibonacci_sphere, named_design, random_uniform, NAMED_DESIGNS};
pub(crate) use generate::Gaussian;

pub(crate) fn generate_gaussian(seed: u64) -> Gaussian {
    Gaussian::new(seed)
}
pub use io::{load_pointset, parse_pointset, save_pointset, write_pointset};

/// Unit vector in R^{d+1}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpherePoint {
    coords: Vec<f64>,
}

impl SpherePoint {
    /// Normalizes `coords` onto the sphere.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 || coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::domain("a sphere point needs at least two finite coordinates"));
        }
        let norm = coords.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::domain("cannot normalize the zero vector"));
        }
        if (norm - 1.0).abs() <= 4.0 * f64::EPSILON {
            // already unit to rounding; keep the bits so files round-trip
            return Ok(Self { coords });
        }
        Ok(Self {
            coords: coords.into_iter().map(|c| c / norm).collect(),
        })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Sphere dimension d (the point lives in R^{d+1}).
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn dot(&self, other: &SpherePoint) -> f64 {
        dot(&self.coords, &other.coords)
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Chordal distance sqrt(2 - 2 x.y).
pub fn chord(inner: f64) -> f64 {
    (2.0 - 2.0 * inner.clamp(-1.0, 1.0)).sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSet {
    dim: usize,
    points: Vec<SpherePoint>,
    pub label: String,
}

impl PointSet {
    pub fn new(dim: usize, points: Vec<SpherePoint>, label: impl Into<String>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::domain("sphere dimension must be at least 2"));
        }
        if points.is_empty() {
            return Err(Error::domain("a point set needs at least one point"));
        }
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::domain(format!(
                "point with {} coordinates in a set on S^{dim}",
                p.coords.len()
            )));
        }
        Ok(Self {
            dim,
            points,
            label: label.into(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[SpherePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Applies a linear map given row-major as a (d+1)x(d+1) matrix.
    pub fn transformed(&self, matrix: &[f64]) -> Result<Self> {
        let n = self.dim + 1;
        if matrix.len() != n * n {
            return Err(Error::domain("matrix size does not match the point dimension"));
        }
        let points = self
            .points
            .iter()
            .map(|p| SpherePoint::new((0..n).map(|i| dot(&matrix[i * n..(i + 1) * n], p.coords())).collect()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.dim, points, self.label.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SphereConstants {
    pub d: usize,
    pub c_d: f64,
    pub omega_ratio: f64,
}

impl SphereConstants {
    pub fn new(d: usize) -> Self {
        let omega_ratio = omega_ratio(d);
        Self {
            d,
            c_d: omega_ratio / d as f64,
            omega_ratio,
        }
    }
}

/// omega_{d-1} / omega_d = Gamma((d+1)/2) / (sqrt(pi) Gamma(d/2)).
pub fn omega_ratio(d: usize) -> f64 {
    let h = d as f64 / 2.0;
    ln_gamma_ratio(&[h + 0.5], &[0.5, h]).expect("positive arguments").exp()
}

/// C_d = omega_ratio(d) / d.
pub fn c_d_const(d: usize) -> f64 {
    omega_ratio(d) / d as f64
}

/// (1/N^2) sum_{j,k} |x_j - x_k|^lambda from coordinate differences, with
/// the diagonal omitted for lambda > 0.
pub fn distance_power_mean(ps: &PointSet, lambda: f64) -> f64 {
    let pts = ps.points();
    let n = pts.len();
    let mut acc = CompensatedSum::new();
    for j in 0..n {
        for k in j + 1..n {
            let d2: f64 = pts[j].coords().iter().zip(pts[k].coords()).map(|(a, b)| (a - b) * (a - b)).sum();
            acc.add(d2.powf(lambda / 2.0));
        }
    }
    let diag = if lambda == 0.0 { n as f64 } else { 0.0 };
    (2.0 * acc.value() + diag) / (n * n) as f64
}

/// Double integral of |x - y|^lambda over S^d x S^d.
pub fn v_lambda(d: usize, lambda: f64) -> Result<f64> {
    let df = d as f64;
    if df + lambda <= 0.0 {
        return Err(Error::domain(format!("V_lambda needs d + lambda > 0, got {}", df + lambda)));
    }
    let lg = ln_gamma_ratio(&[(df + 1.0) / 2.0, (df + lambda) / 2.0], &[0.5, df + lambda / 2.0])?;
    Ok(((df - 1.0 + lambda) * std::f64::consts::LN_2 + lg).exp())
}

/// Double integral of |x - y|^{2L} ln |x - y| over S^d x S^d.
pub fn v_log(d: usize, l: usize) -> Result<f64> {
    let df = d as f64;
    let lf = l as f64;
    let v = v_lambda(d, 2.0 * lf)?;
    Ok(v / 2.0 * (digamma(lf + df / 2.0)? + 2.0 * std::f64::consts::LN_2 - digamma(lf + df)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma;
    use std::f64::consts::PI;

    #[test]
    fn octahedron_distance_mean() {
        let oct = named_design("octahedron").unwrap();
        let m = distance_power_mean(&oct, 1.0);
        assert!((m - (24.0 * 2f64.sqrt() + 12.0) / 36.0).abs() < 1e-15);
        assert_eq!(distance_power_mean(&oct, 0.0), 1.0);
        assert!((distance_power_mean(&oct, 2.0) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn sphere_constants() {
        assert!((c_d_const(2) - 0.25).abs() < 1e-15);
        assert!((c_d_const(3) - 2.0 / (3.0 * PI)).abs() < 1e-15);
        assert!((c_d_const(4) - 3.0 / 16.0).abs() < 1e-15);
        for d in 2..=10 {
            let df = d as f64;
            let direct = gamma((df + 1.0) / 2.0) / (PI.sqrt() * gamma(df / 2.0));
            let c = SphereConstants::new(d);
            assert!((c.c_d * df - direct).abs() < 1e-14);
            assert!((c.omega_ratio - direct).abs() < 1e-14);
        }
    }

    #[test]
    fn distance_integrals() {
        assert!((v_lambda(2, 1.0).unwrap() - 4.0 / 3.0).abs() < 1e-14);
        for d in 2..7 {
            assert!((v_lambda(d, 0.0).unwrap() - 1.0).abs() < 1e-14);
            assert!((v_lambda(d, 2.0).unwrap() - 2.0).abs() < 1e-14);
        }
        assert!(matches!(v_lambda(2, -2.0), Err(Error::Domain(_))));
        let v = v_log(2, 1).unwrap();
        assert!((v - (2.0 * std::f64::consts::LN_2 - 0.5)).abs() < 1e-14);
    }

    #[test]
    fn point_normalization() {
        let p = SpherePoint::new(vec![3.0, 0.0, 4.0]).unwrap();
        assert_eq!(p.coords(), &[0.6, 0.0, 0.8]);
        assert!(SpherePoint::new(vec![0.0, 0.0, 0.0]).is_err());
        assert_eq!(chord(-1.0), 2.0);
        assert_eq!(chord(1.0 + 1e-15), 0.0);
    }

    #[test]
    fn pointset_dimension_checked() {
        let p = SpherePoint::new(vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(PointSet::new(2, vec![p], "x").is_err());
        assert!(PointSet::new(2, vec![], "x").is_err());
    }
}
