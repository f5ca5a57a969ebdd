//! Kampé de Fériet double hypergeometric series.
//!
//! F(x, y) = sum_{m,n} J_{m+n} X_m Y_n x^m y^n / (m! n!), where the joint
//! factor J carries Pochhammer symbols in m + n and X, Y carry those in m and
//! n alone.

use serde::{Deserialize, Serialize};

use super::gamma::is_nonpositive_integer;
use super::hyper::{truncation_degree, SeriesControl};
use super::sum::{exponent_ladder, richardson, CompensatedSum};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KdfParams {
    pub joint_upper: Vec<f64>,
    pub joint_lower: Vec<f64>,
    pub x_upper: Vec<f64>,
    pub x_lower: Vec<f64>,
    pub y_upper: Vec<f64>,
    pub y_lower: Vec<f64>,
}

/// Index limits implied by terminating upper parameters.
#[derive(Debug, Clone, Copy)]
struct Limits {
    joint: Option<usize>,
    m: Option<usize>,
    n: Option<usize>,
}

fn min_opt(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn add_opt(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    Some(a? + b?)
}

impl KdfParams {
    pub fn new(
        joint: (Vec<f64>, Vec<f64>),
        x: (Vec<f64>, Vec<f64>),
        y: (Vec<f64>, Vec<f64>),
    ) -> Result<Self> {
        let p = Self {
            joint_upper: joint.0,
            joint_lower: joint.1,
            x_upper: x.0,
            x_lower: x.1,
            y_upper: y.0,
            y_lower: y.1,
        };
        p.limits()?;
        Ok(p)
    }

    fn limits(&self) -> Result<Limits> {
        let joint = truncation_degree(&self.joint_upper);
        let tx = truncation_degree(&self.x_upper);
        let ty = truncation_degree(&self.y_upper);
        let lim = Limits {
            joint,
            m: min_opt(joint, tx),
            n: min_opt(joint, ty),
        };
        let reach_joint = min_opt(joint, add_opt(tx, ty));
        let checks = [
            (&self.joint_lower, reach_joint, "joint"),
            (&self.x_lower, lim.m, "x"),
            (&self.y_lower, lim.n, "y"),
        ];
        for (lowers, reach, label) in checks {
            for &b in lowers.iter() {
                if is_nonpositive_integer(b) {
                    let pole = (-b) as usize;
                    if !matches!(reach, Some(r) if r <= pole) {
                        return Err(Error::pole(format!("{label} lower parameter {b} is reached before truncation")));
                    }
                }
            }
        }
        Ok(lim)
    }
}

/// Builds `f_0 = 1, f_{k+1} = f_k * prod(u + k) / prod(l + k) * s / (k + 1)` up to
/// index `len - 1`, stopping at a truncation limit.
fn factor_table(uppers: &[f64], lowers: &[f64], s: f64, len: usize, limit: Option<usize>, factorial: bool) -> Vec<f64> {
    let top = limit.map_or(len, |l| (l + 1).min(len));
    let mut out = Vec::with_capacity(top);
    let mut f = 1.0;
    for k in 0..top {
        out.push(f);
        let kf = k as f64;
        let mut r = s;
        if factorial {
            r /= kf + 1.0;
        }
        for &u in uppers {
            r *= u + kf;
        }
        for &l in lowers {
            r /= l + kf;
        }
        f *= r;
    }
    out
}

/// Evaluates the series at real (x, y).
///
/// Terminating directions are summed exactly. Non-terminating series at
/// x = y = 1 (or one unit argument with the other direction absent) are
/// accelerated with Richardson extrapolation over anti-diagonal partial sums.
pub fn kampe_de_feriet(p: &KdfParams, x: f64, y: f64, ctl: &SeriesControl) -> Result<f64> {
    let mut lim = p.limits()?;
    if x == 0.0 {
        lim.m = Some(0);
    }
    if y == 0.0 {
        lim.n = Some(0);
    }
    let total = min_opt(lim.joint, add_opt(lim.m, lim.n));
    if let Some(t) = total {
        let s = anti_diagonal_sums(p, x, y, lim, t + 1);
        return Ok(s.last().copied().unwrap_or(1.0));
    }
    let unit_x = x == 1.0 && lim.m.is_none();
    let unit_y = y == 1.0 && lim.n.is_none();
    if unit_x || unit_y {
        return unit_accelerated(p, x, y, lim, unit_x, unit_y, ctl);
    }
    // ordinary convergent double series
    let mut len = 256usize;
    loop {
        let sums = anti_diagonal_sums(p, x, y, lim, len);
        let total = *sums.last().unwrap();
        if !total.is_finite() {
            return Err(Error::no_conv("Kampé de Fériet series overflowed", len));
        }
        let window = ctl.tail_window.min(len - 2);
        let quiet = (1..=window).all(|k| {
            let d = sums[len - k] - sums[len - k - 1];
            let prev = sums[len - k - 1] - sums[len - k - 2];
            let r = if prev != 0.0 { (d / prev).abs() } else { 0.0 };
            let tail = if r < 1.0 { d.abs() / (1.0 - r) } else { f64::INFINITY };
            tail <= ctl.rel_tol * total.abs() + ctl.abs_tol
        });
        if quiet {
            return Ok(total);
        }
        if len >= ctl.max_terms {
            return Err(Error::no_conv("Kampé de Fériet series", len));
        }
        len = (len * 2).min(ctl.max_terms);
    }
}

/// Cumulative anti-diagonal partial sums S_N = sum_{m+n<N}.
fn anti_diagonal_sums(p: &KdfParams, x: f64, y: f64, lim: Limits, len: usize) -> Vec<f64> {
    let jt = factor_table(&p.joint_upper, &p.joint_lower, 1.0, len, lim.joint, false);
    let xt = factor_table(&p.x_upper, &p.x_lower, x, len, lim.m, true);
    let yt = factor_table(&p.y_upper, &p.y_lower, y, len, lim.n, true);
    let mut out = Vec::with_capacity(len);
    let mut acc = CompensatedSum::new();
    for nn in 0..len {
        if nn < jt.len() {
            let lo = nn.saturating_sub(yt.len() - 1);
            let hi = nn.min(xt.len() - 1);
            let mut diag = CompensatedSum::new();
            for m in lo..=hi.max(lo) {
                if m <= hi {
                    diag.add(xt[m] * yt[nn - m]);
                }
            }
            acc.add(jt[nn] * diag.value());
        }
        out.push(acc.value());
    }
    out
}

fn sigma(lowers: &[f64], uppers: &[f64]) -> f64 {
    lowers.iter().sum::<f64>() - uppers.iter().sum::<f64>()
}

fn unit_accelerated(
    p: &KdfParams,
    x: f64,
    y: f64,
    lim: Limits,
    unit_x: bool,
    unit_y: bool,
    ctl: &SeriesControl,
) -> Result<f64> {
    let sj = sigma(&p.joint_lower, &p.joint_upper);
    let sx = sigma(&p.x_lower, &p.x_upper);
    let sy = sigma(&p.y_lower, &p.y_upper);
    let mut families = Vec::new();
    if unit_x {
        families.push(sj + sx);
    }
    if unit_y {
        families.push(sj + sy);
    }
    if unit_x && unit_y {
        families.push(sj + sx + sy);
    }
    if families.iter().any(|&f| f <= 0.0) {
        return Err(Error::domain("Kampé de Fériet series diverges at unit argument"));
    }
    const LEVELS: usize = 7;
    let exps = exponent_ladder(&families, LEVELS - 1);
    let mut n0 = 64usize;
    loop {
        let len = n0 << (LEVELS - 1);
        let sums = anti_diagonal_sums(p, x, y, lim, len);
        let picks: Vec<f64> = (0..LEVELS).map(|i| sums[(n0 << i) - 1]).collect();
        let r = richardson(&picks, &exps);
        if r.error <= ctl.rel_tol * r.value.abs().max(1e-3) + ctl.abs_tol {
            return Ok(r.value);
        }
        if (n0 << LEVELS) > ctl.max_terms.min(1 << 16) {
            return Err(Error::no_conv("Kampé de Fériet series at unit argument", len));
        }
        n0 <<= 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::hyper::gauss_2f1;

    fn ctl() -> SeriesControl {
        SeriesControl::default()
    }

    fn params(j: (&[f64], &[f64]), x: (&[f64], &[f64]), y: (&[f64], &[f64])) -> KdfParams {
        KdfParams::new(
            (j.0.to_vec(), j.1.to_vec()),
            (x.0.to_vec(), x.1.to_vec()),
            (y.0.to_vec(), y.1.to_vec()),
        )
        .unwrap()
    }

    #[test]
    fn origin_is_one() {
        let p = params((&[2.0], &[3.0]), (&[1.0], &[]), (&[1.0], &[]));
        assert_eq!(kampe_de_feriet(&p, 0.0, 0.0, &ctl()).unwrap(), 1.0);
    }

    #[test]
    fn reduces_to_gauss() {
        // joint (a; c), x block (b; ), y absent, y = 0
        let p = params((&[0.4], &[1.9]), (&[0.7], &[]), (&[], &[]));
        for &x in &[0.3, -0.6, 0.8] {
            let v = kampe_de_feriet(&p, x, 0.0, &ctl()).unwrap();
            let g = gauss_2f1(0.4, 0.7, 1.9, x, &ctl()).unwrap();
            assert!((v - g).abs() < 1e-13 * g.abs(), "x={x}");
        }
    }

    #[test]
    fn unit_argument_matches_gauss_sum() {
        let p = params((&[0.3], &[2.1]), (&[0.5], &[]), (&[], &[]));
        let v = kampe_de_feriet(&p, 1.0, 0.0, &ctl()).unwrap();
        let g = gauss_2f1(0.3, 0.5, 2.1, 1.0, &ctl()).unwrap();
        assert!((v - g).abs() < 1e-12 * g, "{v} {g}");
    }

    #[test]
    fn product_separates() {
        // without joint parameters the blocks factor
        let p = params((&[], &[]), (&[1.0, 1.0], &[2.0]), (&[0.5, 1.0], &[1.5]));
        let (x, y) = (0.4, -0.3);
        let v = kampe_de_feriet(&p, x, y, &ctl()).unwrap();
        let fx = gauss_2f1(1.0, 1.0, 2.0, x, &ctl()).unwrap();
        let fy = gauss_2f1(0.5, 1.0, 1.5, y, &ctl()).unwrap();
        assert!((v - fx * fy).abs() < 1e-12, "{v} {}", fx * fy);
    }

    #[test]
    fn terminating_is_exact() {
        let p = params((&[-2.0], &[1.0]), (&[1.0], &[]), (&[1.0], &[]));
        // diagonals contribute 1, -2 * 2 and 1 * 3
        let v = kampe_de_feriet(&p, 1.0, 1.0, &ctl()).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn lower_pole_rejected() {
        let r = KdfParams::new((vec![1.0], vec![-1.0]), (vec![], vec![]), (vec![], vec![]));
        assert!(matches!(r, Err(Error::Pole(_))));
    }
}
