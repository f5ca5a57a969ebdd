//! Brute-force quadrature and Monte Carlo used to check the closed forms.

mod kernel_def;
mod mc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{gauss_jacobi, gauss_legendre};
use crate::spheregeom::{omega_ratio, SpherePoint};

pub use kernel_def::{kernel_def_quadrature, DEFAULT_RESOLUTION};
pub use mc::{mc_pair_integral, McEstimate};

/// Product rule on S^d x [-1, 1]: sphere nodes with weights summing to one
/// and a Gauss–Legendre rule in t.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SphereCapRule {
    pub d: usize,
    pub resolution: usize,
    pub z_nodes: Vec<(SpherePoint, f64)>,
    pub t_nodes: Vec<(f64, f64)>,
}

impl SphereCapRule {
    /// Sphere rule of resolution `n` (n Gauss nodes in each polar factor, 2n
    /// in the azimuth) and `n_t` Gauss–Legendre nodes in t.
    pub fn new(d: usize, n: usize, n_t: usize) -> Result<Self> {
        Ok(Self {
            d,
            resolution: n,
            z_nodes: product_rule(d, n)?,
            t_nodes: gauss_legendre_t(n_t)?,
        })
    }

    /// The same construction with doubled resolution in every factor.
    pub fn refined(&self) -> Result<Self> {
        Self::new(self.d, 2 * self.resolution, 2 * self.t_nodes.len())
    }

    /// Iterates over (z, t, weight) of the full product.
    pub fn combined(&self) -> impl Iterator<Item = (&SpherePoint, f64, f64)> + '_ {
        self.z_nodes
            .iter()
            .flat_map(move |(z, wz)| self.t_nodes.iter().map(move |&(t, wt)| (z, t, wz * wt)))
    }
}

/// Gauss–Legendre in cos(theta) times the trapezoid rule in phi on S^2.
pub fn product_rule_s2(n_theta: usize, n_phi: usize) -> Result<Vec<(SpherePoint, f64)>> {
    if n_theta < 2 || n_phi < 4 {
        return Err(Error::domain("product rule needs n_theta >= 2 and n_phi >= 4"));
    }
    let gl = gauss_legendre(n_theta);
    let mut out = Vec::with_capacity(n_theta * n_phi);
    for (&u, &w) in gl.nodes.iter().zip(&gl.weights) {
        let r = (1.0 - u * u).max(0.0).sqrt();
        for j in 0..n_phi {
            let phi = 2.0 * std::f64::consts::PI * j as f64 / n_phi as f64;
            out.push((SpherePoint::new(vec![r * phi.cos(), r * phi.sin(), u])?, w / (2.0 * n_phi as f64)));
        }
    }
    Ok(out)
}

/// Product rule on S^d built recursively from Gauss–Gegenbauer rules in the
/// last coordinate; `n` nodes per polar factor and 2n in the azimuth.
pub fn product_rule(d: usize, n: usize) -> Result<Vec<(SpherePoint, f64)>> {
    if d < 2 {
        return Err(Error::domain("sphere dimension must be at least 2"));
    }
    if d == 2 {
        return product_rule_s2(n.max(2), (2 * n).max(4));
    }
    let lower = product_rule(d - 1, n)?;
    let a = d as f64 / 2.0 - 1.0;
    let gj = gauss_jacobi(n.max(2), a, a);
    let om = omega_ratio(d);
    let mut out = Vec::with_capacity(lower.len() * gj.len());
    for (&u, &w) in gj.nodes.iter().zip(&gj.weights) {
        let r = (1.0 - u * u).max(0.0).sqrt();
        for (y, wy) in &lower {
            let mut c: Vec<f64> = y.coords().iter().map(|v| r * v).collect();
            c.push(u);
            out.push((SpherePoint::new(c)?, om * w * wy));
        }
    }
    Ok(out)
}

/// n-point Gauss–Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre_t(n: usize) -> Result<Vec<(f64, f64)>> {
    if n == 0 {
        return Err(Error::domain("need at least one node"));
    }
    let r = gauss_legendre(n);
    Ok(r.nodes.into_iter().zip(r.weights).collect())
}

/// Integral of a zonal function over S^d:
/// (omega_{d-1}/omega_d) int_{-1}^{1} f(t) (1 - t^2)^{d/2 - 1} dt.
///
/// The rule is graded towards t = 1, where kernels carry a power or
/// logarithmic singularity of the distance.
pub fn zonal_integral(d: usize, f: impl Fn(f64) -> f64, n: usize) -> f64 {
    let a = d as f64 / 2.0 - 1.0;
    // [-1, 0]: Gauss–Jacobi with (1 + t)^a, remaining factor (1 - t)^a
    let left = gauss_jacobi(n, 0.0, a);
    let scale = 0.5f64.powf(a + 1.0);
    let mut acc = crate::specfun::CompensatedSum::new();
    for (&x, &w) in left.nodes.iter().zip(&left.weights) {
        let t = (x - 1.0) / 2.0;
        acc.add(scale * w * f(t) * (1.0 - t).powf(a));
    }
    // [0, 1]: 1 - t = s^4
    let gl = gauss_legendre(n).mapped(0.0, 1.0);
    for (&s, &w) in gl.nodes.iter().zip(&gl.weights) {
        let s3 = s * s * s;
        let one_minus = s3 * s;
        let t = 1.0 - one_minus;
        acc.add(w * 4.0 * s3 * f(t) * (one_minus * (1.0 + t)).powf(a));
    }
    omega_ratio(d) * acc.value()
}
