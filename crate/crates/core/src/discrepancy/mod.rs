//! Worst-case error and discrepancy of point sets.
//!
//! Two routes to the squared worst-case error are provided: the Gram sum
//! over kernel values and the L2 norm of the local discrepancy over caps.

mod cells;
mod quadrature;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{c_beta_const, kernel_eval, kernel_mean, SmoothnessParam};
use crate::specfun::{gauss_2f1, gegenbauer_all, ln_gamma_ratio, CompensatedSum, SeriesControl};
use crate::spheregeom::{distance_power_mean, v_lambda, PointSet, SpherePoint};

pub use cells::cap_discrepancy_sq_exact;
pub use quadrature::{
    lp_discrepancy, stolarsky_check, wce_quadrature, wce_quadrature_checked, ClassicalDecomposition,
    StolarskyRecord,
};

/// Squared values in [-WCE_CLAMP, 0) are reported as zero.
pub const WCE_CLAMP: f64 = 1e-10;
pub const DESIGN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyReport {
    pub n_points: usize,
    pub d: usize,
    pub beta: f64,
    pub wce_kernel: f64,
    pub wce_quadrature: Option<f64>,
    pub gram_mean: f64,
    pub kernel_mean: f64,
    pub identity_gap: Option<f64>,
}

impl DiscrepancyReport {
    /// Fills in the cap-quadrature value and the gap between the squares.
    pub fn with_quadrature(mut self, wce_q: f64) -> Self {
        self.wce_quadrature = Some(wce_q);
        self.identity_gap = Some((self.wce_kernel.powi(2) - wce_q.powi(2)).abs());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignCertificate {
    pub strength_tested: usize,
    pub residuals: Vec<f64>,
    pub is_design: bool,
    pub tolerance: f64,
}

impl DesignCertificate {
    /// Largest t with r_1..r_t below tolerance.
    pub fn strength(&self) -> usize {
        self.residuals.iter().take_while(|&&r| r < self.tolerance).count()
    }
}

/// Record of a two-sided identity check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
}

impl IdentityCheck {
    pub(crate) fn new(lhs: f64, rhs: f64) -> Self {
        Self { lhs, rhs, gap: (lhs - rhs).abs() }
    }
}

/// Integral over z of (x.z - t)_+^{beta-1}; independent of x.
pub fn truncated_power_cap_integral(d: usize, beta: f64, t: f64) -> Result<f64> {
    if d < 2 {
        return Err(Error::domain("sphere dimension must be at least 2"));
    }
    if !(beta > 0.0) {
        return Err(Error::domain("beta must be positive"));
    }
    if !(t.abs() <= 1.0) {
        return Err(Error::domain(format!("cap height {t} outside [-1, 1]")));
    }
    if t == 1.0 {
        return Ok(0.0);
    }
    let h = d as f64 / 2.0;
    let pre = ln_gamma_ratio(&[h + 0.5, beta], &[0.5, beta + h])?.exp() * 2f64.powf(h - 1.0);
    let f = gauss_2f1(1.0 - h, h, beta + h, (1.0 - t) / 2.0, &SeriesControl::default())?;
    Ok(pre * (1.0 - t).powf(beta + h - 1.0) * f)
}

/// Truncated power (u - t)_+^{beta - 1}; the cap indicator at beta = 1 with
/// weight 1/2 on the boundary.
pub(crate) fn truncated_power(u: f64, t: f64, beta: f64) -> f64 {
    if beta == 1.0 {
        return if u > t {
            1.0
        } else if u == t {
            0.5
        } else {
            0.0
        };
    }
    if u > t {
        (u - t).powf(beta - 1.0)
    } else {
        0.0
    }
}

/// Shift applied to t when a point sits on a singular cap boundary.
const BOUNDARY_SHIFT: f64 = 1e-15;

/// (1/N) sum_j (x_j.z - t)_+^{beta-1} minus its mean over the sphere.
pub fn local_discrepancy(ps: &PointSet, beta: f64, z: &SpherePoint, t: f64) -> Result<f64> {
    if z.dim() != ps.dim() {
        return Err(Error::domain("z is not on the sphere of the point set"));
    }
    if !(beta > 0.0) {
        return Err(Error::domain("beta must be positive"));
    }
    let us: Vec<f64> = ps.points().iter().map(|x| x.dot(z)).collect();
    let mut t = t;
    if beta < 1.0 && us.contains(&t) {
        log::warn!("point on the cap boundary with beta < 1; shifting t by {BOUNDARY_SHIFT:e}");
        t += BOUNDARY_SHIFT;
    }
    let s: f64 = us.iter().map(|&u| truncated_power(u, t, beta)).collect::<CompensatedSum>().value();
    Ok(s / us.len() as f64 - truncated_power_cap_integral(ps.dim(), beta, t.min(1.0))?)
}

/// Pairwise sum over j < k in a fixed order, rows computed in parallel.
fn pair_sum(ps: &PointSet, f: impl Fn(f64) -> Result<f64> + Sync) -> Result<f64> {
    let pts = ps.points();
    let rows: Vec<f64> = (0..pts.len())
        .into_par_iter()
        .map(|j| {
            let mut acc = CompensatedSum::new();
            for k in j + 1..pts.len() {
                acc.add(f(pts[j].dot(&pts[k]).clamp(-1.0, 1.0))?);
            }
            Ok(acc.value())
        })
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().collect::<CompensatedSum>().value())
}

/// Mean of f(x_j . x_k) over all ordered pairs including j = k.
pub(crate) fn pair_mean(ps: &PointSet, diag: f64, f: impl Fn(f64) -> Result<f64> + Sync) -> Result<f64> {
    let n = ps.len() as f64;
    let off = pair_sum(ps, f)?;
    Ok((n * diag + 2.0 * off) / (n * n))
}

/// Worst-case error through the Gram sum of the kernel.
pub fn wce_kernel(ps: &PointSet, sp: &SmoothnessParam, ctl: &SeriesControl) -> Result<DiscrepancyReport> {
    let d = ps.dim();
    let diag = kernel_eval(d, sp, 1.0, ctl)?.value;
    let gram_mean = pair_mean(ps, diag, |t| Ok(kernel_eval(d, sp, t, ctl)?.value))?;
    let mean = kernel_mean(d, sp, ctl)?;
    let sq = clamp_square(gram_mean - mean)?;
    Ok(DiscrepancyReport {
        n_points: ps.len(),
        d,
        beta: sp.beta(),
        wce_kernel: sq.sqrt(),
        wce_quadrature: None,
        gram_mean,
        kernel_mean: mean,
        identity_gap: None,
    })
}

pub(crate) fn clamp_square(v: f64) -> Result<f64> {
    if v >= 0.0 {
        Ok(v)
    } else if v >= -WCE_CLAMP {
        Ok(0.0)
    } else {
        Err(Error::Precondition(format!("squared worst-case error is negative ({v:e})")))
    }
}

/// r_n = (1/N^2) sum_{j,k} P_n(x_j . x_k) for n = 1..t_max.
pub fn design_residual(ps: &PointSet, t_max: usize) -> Result<DesignCertificate> {
    design_residual_with_tol(ps, t_max, DESIGN_TOL)
}

pub fn design_residual_with_tol(ps: &PointSet, t_max: usize, tol: f64) -> Result<DesignCertificate> {
    if t_max < 1 {
        return Err(Error::domain("t_max must be at least 1"));
    }
    let d = ps.dim();
    let pts = ps.points();
    let rows: Vec<Vec<f64>> = (0..pts.len())
        .into_par_iter()
        .map(|j| {
            let mut acc = vec![CompensatedSum::new(); t_max + 1];
            for k in j + 1..pts.len() {
                let p = gegenbauer_all(t_max, d, pts[j].dot(&pts[k]).clamp(-1.0, 1.0));
                for (a, v) in acc.iter_mut().zip(p) {
                    a.add(v);
                }
            }
            acc.iter().map(|a| a.value()).collect()
        })
        .collect();
    let n = pts.len() as f64;
    let residuals: Vec<f64> = (1..=t_max)
        .map(|deg| {
            let off = rows.iter().map(|r| r[deg]).collect::<CompensatedSum>().value();
            ((n + 2.0 * off) / (n * n)).max(0.0)
        })
        .collect();
    Ok(DesignCertificate {
        strength_tested: t_max,
        is_design: residuals.iter().all(|&r| r < tol),
        residuals,
        tolerance: tol,
    })
}

/// Compares wce^2 for beta = M with the distance form valid on (M-1)-designs.
pub fn tdesign_identity_check(ps: &PointSet, m: usize, ctl: &SeriesControl) -> Result<IdentityCheck> {
    if m < 1 {
        return Err(Error::domain("M must be a positive integer"));
    }
    if m >= 2 {
        let cert = design_residual(ps, m - 1)?;
        if let Some((i, &r)) = cert.residuals.iter().enumerate().find(|(_, &r)| r >= cert.tolerance) {
            return Err(Error::NotADesign {
                required: m - 1,
                degree: i + 1,
                residual: r,
            });
        }
    }
    let d = ps.dim();
    let sp = SmoothnessParam::new(m as f64)?;
    let lhs = wce_kernel(ps, &sp, ctl)?.wce_kernel.powi(2);
    let lam = (2 * m - 1) as f64;
    let dist_mean = distance_power_mean(ps, lam);
    // (-1)^{M+1}: M = 1 must give the classical principle with +C_d
    let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
    let rhs = sign * c_beta_const(d, &sp)? * (v_lambda(d, lam)? - dist_mean);
    Ok(IdentityCheck::new(lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::gauss_jacobi;
    use crate::spheregeom::{named_design, omega_ratio, random_uniform};

    fn ctl() -> SeriesControl {
        SeriesControl::default()
    }

    fn single(d: usize) -> PointSet {
        let mut c = vec![0.0; d + 1];
        c[d] = 1.0;
        PointSet::new(d, vec![SpherePoint::new(c).unwrap()], "single").unwrap()
    }

    #[test]
    fn cap_integral_values() {
        for &t in &[-1.0, -0.3, 0.0, 0.7] {
            let v = truncated_power_cap_integral(2, 1.0, t).unwrap();
            assert!((v - (1.0 - t) / 2.0).abs() < 1e-15);
        }
        assert_eq!(truncated_power_cap_integral(3, 1.7, 1.0).unwrap(), 0.0);
        assert!(truncated_power_cap_integral(2, 1.0, 1.5).is_err());
    }

    #[test]
    fn cap_integral_against_funk_hecke() {
        // omega_ratio int_t^1 (u - t)^{beta-1} (1 - u^2)^{d/2-1} du
        for &(d, beta, t) in &[(2usize, 2.0, 0.0), (3, 1.5, -0.4), (4, 0.7, 0.2), (5, 2.3, 0.9)] {
            let a = d as f64 / 2.0 - 1.0;
            let r = gauss_jacobi(60, a, beta - 1.0);
            let h = (1.0 - t) / 2.0;
            let s: f64 = r
                .nodes
                .iter()
                .zip(&r.weights)
                .map(|(&x, &w)| {
                    let u = t + h * (x + 1.0);
                    w * (1.0 + u).powf(a)
                })
                .sum();
            let oracle = omega_ratio(d) * s * h.powf(a + beta);
            let v = truncated_power_cap_integral(d, beta, t).unwrap();
            assert!((v - oracle).abs() < 1e-12 * oracle, "{d} {beta} {t}: {v} {oracle}");
        }
    }

    #[test]
    fn local_discrepancy_examples() {
        let oct = named_design("octahedron").unwrap();
        let z = oct.points()[0].clone();
        assert!(local_discrepancy(&oct, 1.0, &z, 0.0).unwrap().abs() < 1e-15);
        let one = single(2);
        let x = one.points()[0].clone();
        assert!((local_discrepancy(&one, 1.0, &x, 0.5).unwrap() - 0.75).abs() < 1e-15);
        let ps = random_uniform(2, 7, 3).unwrap();
        let a = local_discrepancy(&ps, 2.0, &x, 0.2 - 1e-6).unwrap();
        let b = local_discrepancy(&ps, 2.0, &x, 0.2 + 1e-6).unwrap();
        assert!((a - b).abs() < 1e-4);
        // singular boundary is shifted, not rejected
        assert!(local_discrepancy(&one, 0.8, &x, 1.0).unwrap().is_finite());
    }

    #[test]
    fn wce_kernel_examples() {
        let sp = SmoothnessParam::new(1.0).unwrap();
        let r = wce_kernel(&single(2), &sp, &ctl()).unwrap();
        assert!((r.wce_kernel.powi(2) - 1.0 / 3.0).abs() < 1e-14);
        let e = SpherePoint::new(vec![0.0, 0.0, 1.0]).unwrap();
        let f = SpherePoint::new(vec![0.0, 0.0, -1.0]).unwrap();
        let pair = PointSet::new(2, vec![e, f], "pair").unwrap();
        let r = wce_kernel(&pair, &sp, &ctl()).unwrap();
        assert!((r.wce_kernel.powi(2) - 1.0 / 12.0).abs() < 1e-14);
        let r = wce_kernel(&named_design("octahedron").unwrap(), &sp, &ctl()).unwrap();
        let exact = 1.0 / 3.0 - (24.0 * 2f64.sqrt() + 12.0) / 144.0;
        assert!((r.wce_kernel.powi(2) - exact).abs() < 1e-14, "{}", r.wce_kernel.powi(2));
    }

    #[test]
    fn design_residuals() {
        let c = design_residual(&named_design("octahedron").unwrap(), 4).unwrap();
        assert!(c.residuals[..3].iter().all(|&r| r < 1e-14));
        assert!((c.residuals[3] - 21.0 / 36.0).abs() < 1e-14);
        assert_eq!(c.strength(), 3);
        assert!(!c.is_design);
        let c = design_residual(&named_design("icosahedron").unwrap(), 6).unwrap();
        assert!(c.residuals[..5].iter().all(|&r| r < 1e-12));
        assert!(c.residuals[5] > 0.0);
        let c = design_residual(&single(2), 1).unwrap();
        assert_eq!(c.residuals, vec![1.0]);
        assert!(design_residual(&single(2), 0).is_err());
    }

    #[test]
    fn tdesign_identity() {
        let oct = named_design("octahedron").unwrap();
        assert!(tdesign_identity_check(&oct, 1, &ctl()).unwrap().gap < 1e-12);
        let ico = named_design("icosahedron").unwrap();
        for m in 2..=3 {
            let c = tdesign_identity_check(&ico, m, &ctl()).unwrap();
            assert!(c.gap < 1e-10, "M={m}: {c:?}");
        }
        let ps = random_uniform(2, 12, 4).unwrap();
        assert!(matches!(
            tdesign_identity_check(&ps, 2, &ctl()),
            Err(Error::NotADesign { required: 1, .. })
        ));
    }
}
