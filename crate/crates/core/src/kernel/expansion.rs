//! Ultraspherical expansion K(t) = sum_k lambda_k Z(d,k) P_k(t).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{c_beta_const, exceptional, general, log_coeff, neg_pow, Branch, SmoothnessParam};
use crate::error::{Error, Result};
use crate::quad::gauss_jacobi;
use crate::specfun::{digamma, gegenbauer_all, pfq_terminating, pochhammer, pochhammer_ratio, SeriesControl};
use crate::spheregeom::{omega_ratio, v_lambda};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpansionPart {
    /// Contribution of the smooth part.
    pub smooth: f64,
    /// Contribution of the signed distance power, when present.
    pub distance: Option<f64>,
    /// Contribution of the distance-power logarithm term, when present.
    pub log: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionTable {
    pub d: usize,
    pub beta: f64,
    pub s: f64,
    pub lambda: Vec<f64>,
    pub parts: Vec<ExpansionPart>,
}

/// Coefficient of Z(d,k) P_k(t) in |x - y|^lam.
pub fn distance_coeff(d: usize, lam: f64, k: usize) -> Result<f64> {
    let df = d as f64;
    Ok(v_lambda(d, lam)? * pochhammer_ratio(-lam / 2.0, df + lam / 2.0, k))
}

/// Coefficient of Z(d,k) P_k(t) in |x - y|^{2L} ln |x - y|, the lam-derivative
/// of `distance_coeff` at lam = 2L.
pub fn log_distance_coeff(d: usize, l: usize, k: usize) -> Result<f64> {
    let df = d as f64;
    let lf = l as f64;
    let v = v_lambda(d, 2.0 * lf)?;
    let dln_r: f64 = (0..k).map(|j| 0.5 / (df + lf + j as f64)).sum();
    if k <= l {
        let dln_v = std::f64::consts::LN_2 + 0.5 * digamma(lf + df / 2.0)? - 0.5 * digamma(df + lf)?;
        let pr = pochhammer_ratio(-lf, df + lf, k);
        let dln_p: f64 = (0..k).map(|j| -0.5 / (j as f64 - lf)).sum();
        Ok(v * pr * (dln_v + dln_p - dln_r))
    } else {
        // the factor j = L of (-L)_k vanishes; its derivative is -1/2
        let dp: f64 = (0..k)
            .map(|j| {
                let den = df + lf + j as f64;
                if j == l {
                    -0.5 / den
                } else {
                    (j as f64 - lf) / den
                }
            })
            .product();
        Ok(v * dp)
    }
}

/// Coefficient of Z(d,k) P_k(t) in 2F1(-n, b; c; (1-t)/2).
pub fn gegenbauer_coeff_2f1(d: usize, n: usize, b: f64, c: f64, k: usize) -> Result<f64> {
    if k > n {
        return Ok(0.0);
    }
    let df = d as f64;
    let kf = k as f64;
    let nf = n as f64;
    let pre = neg_pow(k) * pochhammer(-nf, k) * pochhammer(b, k) * pochhammer(df / 2.0, k)
        / (pochhammer(c, k) * pochhammer(df, 2 * k));
    if pre == 0.0 {
        return Ok(0.0);
    }
    let f = pfq_terminating(&[kf - nf, kf + b, kf + df / 2.0], &[kf + c, 2.0 * kf + df], 1.0)?;
    Ok(pre * f)
}

fn projection_nodes(kmax: usize) -> usize {
    (2 * kmax + 200).max(600)
}

/// lambda_k for k = 0..=kmax with their parts; fails with PositivityViolation
/// if any coefficient is not positive.
pub fn expansion_coeffs(d: usize, sp: &SmoothnessParam, kmax: usize, ctl: &SeriesControl) -> Result<ExpansionTable> {
    let beta = sp.effective_beta();
    let smooth: Vec<f64> = match sp.branch() {
        Branch::Integer { m } => integer_smooth(d, m, kmax)?,
        Branch::General { .. } => project(d, kmax, |z| general::smooth_part(d, beta, z, ctl).map(|r| r.0))?,
        Branch::HalfExceptional { l } => project(d, kmax, |z| exceptional::smooth_part(d, l, z, ctl).map(|r| r.0))?,
    };
    let mut parts = Vec::with_capacity(kmax + 1);
    for (k, &a) in smooth.iter().enumerate() {
        let part = match sp.branch() {
            Branch::Integer { m } => ExpansionPart {
                smooth: a,
                distance: Some(neg_pow(m) * c_beta_const(d, sp)? * distance_coeff(d, 2.0 * m as f64 - 1.0, k)?),
                log: None,
            },
            Branch::General { l, .. } => ExpansionPart {
                smooth: a,
                distance: Some(neg_pow(l + 1) * c_beta_const(d, sp)? * distance_coeff(d, 2.0 * beta - 1.0, k)?),
                log: None,
            },
            Branch::HalfExceptional { l } => ExpansionPart {
                smooth: a,
                distance: None,
                log: Some(neg_pow(l + 1) * log_coeff(d, l) * log_distance_coeff(d, l, k)?),
            },
        };
        parts.push(part);
    }
    let lambda: Vec<f64> = parts
        .iter()
        .map(|p| p.smooth + p.distance.unwrap_or(0.0) + p.log.unwrap_or(0.0))
        .collect();
    if let Some((index, &value)) = lambda.iter().enumerate().find(|(_, &v)| !(v > 0.0)) {
        return Err(Error::PositivityViolation { index, value });
    }
    Ok(ExpansionTable {
        d,
        beta,
        s: sp.s(d),
        lambda,
        parts,
    })
}

fn integer_smooth(d: usize, m: usize, kmax: usize) -> Result<Vec<f64>> {
    let mf = m as f64;
    let g = (d as f64 + 1.0) / 2.0;
    let (b, c) = (1.0 - mf, 1.5 - mf);
    let mut out = vec![0.0; kmax + 1];
    for n in 0..m {
        let nf = n as f64;
        let cn = pochhammer(0.5 - mf, n) * pochhammer(1.0 - mf, n) / (pochhammer(g, n) * pochhammer(1.0, n));
        for (k, o) in out.iter_mut().enumerate().take(n.min(kmax) + 1) {
            *o += cn * gegenbauer_coeff_2f1(d, n, b, c, k)?;
        }
        let _ = nf;
    }
    let scale = 1.0 / (2.0 * mf - 1.0);
    Ok(out.into_iter().map(|v| v * scale).collect())
}

/// Funk–Hecke projection of a zonal function given in z = (1 - t)/2.
fn project(d: usize, kmax: usize, f: impl Fn(f64) -> Result<f64> + Sync) -> Result<Vec<f64>> {
    let a = d as f64 / 2.0 - 1.0;
    let rule = gauss_jacobi(projection_nodes(kmax), a, a);
    let rows: Vec<Vec<f64>> = rule
        .nodes
        .par_iter()
        .zip(rule.weights.par_iter())
        .map(|(&t, &w)| {
            let v = f((1.0 - t) / 2.0)?;
            Ok(gegenbauer_all(kmax, d, t).into_iter().map(|p| w * v * p).collect())
        })
        .collect::<Result<_>>()?;
    let om = omega_ratio(d);
    Ok((0..=kmax)
        .map(|k| om * crate::specfun::compensated_sum(rows.iter().map(|r| r[k])))
        .collect())
}

/// Spread of lambda_n n^{2s} around its median over n in [K/2, K].
pub fn coeff_asymptotic_check(table: &ExpansionTable) -> Result<f64> {
    let kmax = table.lambda.len().saturating_sub(1);
    if kmax < 40 {
        return Err(Error::Precondition(format!("need at least 40 coefficients, got {kmax}")));
    }
    let r: Vec<f64> = (kmax / 2..=kmax)
        .map(|n| table.lambda[n] * (n as f64).powf(2.0 * table.s))
        .collect();
    let mut sorted = r.clone();
    sorted.sort_by(f64::total_cmp);
    let med = sorted[sorted.len() / 2];
    Ok(r.iter().map(|v| (v / med - 1.0).abs()).fold(0.0, f64::max))
}
