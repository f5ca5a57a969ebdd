//! Reproducing kernels K_beta on S^d.
//!
//! K_beta(x, y) = int_{-1}^{1} int_{S^d} (x.z - t)_+^{beta-1} (y.z - t)_+^{beta-1} dsigma(z) dt
//! is zonal. It splits into a smooth part and a distance term whose form
//! depends on beta: |x-y|^{2 beta - 1} in general, and
//! |x-y|^{2L} ln |x-y| when beta = L + 1/2.

mod exceptional;
mod expansion;
mod general;
mod integer;
mod mean;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{gauss_2f1, ln_gamma_ratio, pfq_unit, pochhammer, sinpi, SeriesControl};
use crate::spheregeom::omega_ratio;

pub use expansion::{
    coeff_asymptotic_check, distance_coeff, expansion_coeffs, gegenbauer_coeff_2f1, log_distance_coeff,
    ExpansionPart, ExpansionTable,
};
pub use integer::{q_mean_integer, q_mean_integer_s2};

/// Tolerance for routing beta to the integer or exceptional branch.
pub const BRANCH_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Integer { m: usize },
    HalfExceptional { l: usize },
    General { l: usize, eps: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchTag {
    Integer,
    HalfExceptional,
    General,
}

impl Branch {
    pub fn tag(&self) -> BranchTag {
        match self {
            Branch::Integer { .. } => BranchTag::Integer,
            Branch::HalfExceptional { .. } => BranchTag::HalfExceptional,
            Branch::General { .. } => BranchTag::General,
        }
    }
}

/// Smoothness parameter beta > 1/2 with its branch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmoothnessParam {
    beta: f64,
    branch: Branch,
}

impl SmoothnessParam {
    pub fn new(beta: f64) -> Result<Self> {
        if !(beta > 0.5) || !beta.is_finite() {
            return Err(Error::domain("beta must exceed 1/2"));
        }
        let m = beta.round();
        let h = (beta - 0.5).round();
        let branch = if (beta - m).abs() < BRANCH_TOL {
            Branch::Integer { m: m as usize }
        } else if h >= 1.0 && (beta - 0.5 - h).abs() < BRANCH_TOL {
            Branch::HalfExceptional { l: h as usize }
        } else {
            let l = (beta - 0.5).floor();
            Branch::General {
                l: l as usize,
                eps: beta - 0.5 - l,
            }
        };
        Ok(Self { beta, branch })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    /// beta snapped onto the branch it was routed to.
    pub fn effective_beta(&self) -> f64 {
        match self.branch {
            Branch::Integer { m } => m as f64,
            Branch::HalfExceptional { l } => l as f64 + 0.5,
            Branch::General { .. } => self.beta,
        }
    }

    /// Sobolev index s = beta - 1/2 + d/2.
    pub fn s(&self, d: usize) -> f64 {
        self.effective_beta() - 0.5 + d as f64 / 2.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelValue {
    pub value: f64,
    pub branch_used: BranchTag,
    pub terms_used: usize,
}

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::domain("sphere dimension must be at least 2"));
    }
    Ok(())
}

fn neg_pow(k: usize) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Constant c_d(beta) of the distance term.
pub fn c_beta_const(d: usize, sp: &SmoothnessParam) -> Result<f64> {
    check_dim(d)?;
    let df = d as f64;
    match sp.branch {
        Branch::Integer { m } => {
            let mf = m as f64;
            let lg = ln_gamma_ratio(&[mf, mf], &[])?;
            Ok(4f64.powi(-(m as i32)) * omega_ratio(d) * lg.exp() / (pochhammer(0.5, m) * pochhammer(df / 2.0, m)))
        }
        Branch::General { eps, .. } => {
            let b = sp.beta;
            let lg = ln_gamma_ratio(&[(df + 1.0) / 2.0, b, b], &[b + df / 2.0, b + 0.5])?;
            Ok(4f64.powf(-b) / sinpi(eps) * lg.exp())
        }
        Branch::HalfExceptional { .. } => Err(Error::Branch(
            "the exceptional branch has a logarithmic term; use log_coeff".into(),
        )),
    }
}

/// Magnitude of the coefficient of |x-y|^{2L} ln |x-y| for beta = L + 1/2.
pub fn log_coeff(d: usize, l: usize) -> f64 {
    let g = (d as f64 + 1.0) / 2.0;
    pochhammer(0.5, l).powi(2) / (4f64.powi(l as i32) * pochhammer(g, l) * pochhammer(1.0, l))
}

/// K_beta(x, x).
pub fn kernel_diag(d: usize, beta: f64) -> Result<f64> {
    check_dim(d)?;
    if beta == 0.5 {
        return Err(Error::pole("kernel_diag at beta = 1/2"));
    }
    if !(beta > 0.0) {
        return Err(Error::domain("kernel_diag needs beta > 0"));
    }
    let df = d as f64;
    let lg = ln_gamma_ratio(
        &[(df + 1.0) / 2.0, 2.0 * beta + df / 2.0 - 1.0],
        &[beta + (df - 1.0) / 2.0, beta + df / 2.0],
    )?;
    Ok(lg.exp() / (2.0 * beta - 1.0))
}

/// K_beta(x, y) as a function of t = x.y.
pub fn kernel_eval(d: usize, sp: &SmoothnessParam, inner: f64, ctl: &SeriesControl) -> Result<KernelValue> {
    check_dim(d)?;
    if !(inner.abs() <= 1.0 + 1e-12) {
        return Err(Error::domain(format!("inner product {inner} outside [-1, 1]")));
    }
    let t = inner.clamp(-1.0, 1.0);
    let z = (1.0 - t) / 2.0;
    let dist = (2.0 - 2.0 * t).sqrt();
    let tag = sp.branch.tag();
    let (value, terms_used) = match sp.branch {
        Branch::Integer { m } => {
            let q = integer::smooth_part(d, m, z)?;
            let c = c_beta_const(d, sp)?;
            (q + neg_pow(m) * c * dist.powi(2 * m as i32 - 1), m)
        }
        Branch::General { l, .. } => {
            let (q, n) = general::smooth_part(d, sp.beta, z, ctl)?;
            let c = c_beta_const(d, sp)?;
            (q + neg_pow(l + 1) * c * dist.powf(2.0 * sp.beta - 1.0), n)
        }
        Branch::HalfExceptional { l } => {
            if z == 0.0 {
                (kernel_diag(d, l as f64 + 0.5)?, 0)
            } else {
                let (q, n) = exceptional::smooth_part(d, l, z, ctl)?;
                let lt = dist.powi(2 * l as i32) * dist.ln();
                (q + neg_pow(l + 1) * log_coeff(d, l) * lt, n)
            }
        }
    };
    Ok(KernelValue {
        value,
        branch_used: tag,
        terms_used,
    })
}

/// K_beta(x, -x).
pub fn kernel_antipodal(d: usize, sp: &SmoothnessParam, ctl: &SeriesControl) -> Result<f64> {
    check_dim(d)?;
    let b = sp.beta;
    match sp.branch {
        Branch::Integer { .. } => Ok(kernel_eval(d, sp, -1.0, ctl)?.value),
        Branch::HalfExceptional { l } => exceptional::antipodal(d, l, ctl),
        Branch::General { l, .. } => {
            let c = c_beta_const(d, sp)?;
            // read as 3F2 with three upper and two lower parameters, matching the smooth series at z = 1
            let f = pfq_unit(&[0.5 - b, 1.0 - b, 0.5], &[1.5 - b, (d as f64 + 1.0) / 2.0], ctl)?;
            Ok(neg_pow(l + 1) * c * 2f64.powf(2.0 * b - 1.0) + f / (2.0 * b - 1.0))
        }
    }
}

/// Double integral of K_beta over S^d x S^d.
pub fn kernel_mean(d: usize, sp: &SmoothnessParam, ctl: &SeriesControl) -> Result<f64> {
    check_dim(d)?;
    mean::kernel_mean_beta(d, sp.effective_beta(), ctl)
}

/// H_beta(a, b) = int_{-1}^{1} (a - t)_+^{beta-1} (b - t)_+^{beta-1} dt.
pub fn h_beta(a: f64, b: f64, beta: f64, ctl: &SeriesControl) -> Result<f64> {
    if !(a.abs() <= 1.0 && b.abs() <= 1.0) {
        return Err(Error::domain("H_beta needs a, b in [-1, 1]"));
    }
    if !(beta > 0.0) {
        return Err(Error::domain("H_beta needs beta > 0"));
    }
    let lo = a.min(b);
    let hi = a.max(b);
    if lo == -1.0 {
        return Ok(0.0);
    }
    if a == b {
        if beta <= 0.5 {
            return Err(Error::domain("H_beta(a, a) needs beta > 1/2"));
        }
        return Ok((1.0 + a).powf(2.0 * beta - 1.0) / (2.0 * beta - 1.0));
    }
    let r = (1.0 + lo) / (1.0 + hi);
    let f = gauss_2f1(1.0 - beta, 1.0, 1.0 + beta, r, ctl)?;
    Ok((1.0 + lo).powf(beta) * (1.0 + hi).powf(beta - 1.0) * f / beta)
}
