//! Smooth part Q of the kernel for non-integer, non-exceptional beta.
//!
//! With z = (1 - t)/2 the smooth part is
//! Q = (2 beta - 1)^{-1} sum_n c_n F_n(z),  c_n = (1/2-beta)_n (1-beta)_n / (((d+1)/2)_n n!),
//! F_n = 2F1(-n, 1-beta; 3/2-beta; z).
//! The inner index m of F_n runs over 0..=n. This explicit double series is
//! used as the definition, not a Kampé de Fériet block labelling.
//! Small z uses the expansion of the same function about z = 0, which
//! splits into a power series and a z^delta series.

use crate::error::{Error, Result};
use crate::specfun::{accelerate_series, gamma, rgamma, CompensatedSum, SeriesControl};

const CONNECTION_SWITCH: f64 = 0.5;
const INTERP_HALF_WIDTH: f64 = 0.01;
const INTERP_STEP: f64 = 0.004;

/// Q(z) and the number of series terms used.
pub(crate) fn smooth_part(d: usize, beta: f64, z: f64, ctl: &SeriesControl) -> Result<(f64, usize)> {
    if z > CONNECTION_SWITCH {
        return forward_series(d, beta, z, ctl);
    }
    let delta = d as f64 / 2.0 - 1.0 + 2.0 * beta;
    let off = delta - delta.round();
    if d % 2 == 1 && off.abs() < 2.0 * INTERP_HALF_WIDTH {
        // the two pieces of the expansion have cancelling poles at integer delta
        let center = beta - off / 2.0;
        let mut xs = Vec::with_capacity(8);
        let mut ys = Vec::with_capacity(8);
        let mut used = 0;
        for k in 1..=4 {
            for sgn in [-1.0, 1.0] {
                let b = center + sgn * (k as f64 - 0.5) * INTERP_STEP;
                let (v, n) = connection(d, b, z)?;
                xs.push(b);
                ys.push(v);
                used += n;
            }
        }
        return Ok((neville(&xs, &ys, beta), used));
    }
    connection(d, beta, z)
}

fn neville(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let mut p = ys.to_vec();
    let n = xs.len();
    for m in 1..n {
        for i in 0..n - m {
            p[i] = ((x - xs[i + m]) * p[i] + (xs[i] - x) * p[i + 1]) / (xs[i] - xs[i + m]);
        }
    }
    p[0]
}

/// Expansion about z = 0: sum_k p_k z^k + z^delta sum_j r_j z^j.
fn connection(d: usize, beta: f64, z: f64) -> Result<(f64, usize)> {
    let a = 0.5 - beta;
    let b = 1.0 - beta;
    let c = 1.5 - beta;
    let g = (d as f64 + 1.0) / 2.0;
    let de = g - a - b;
    let mut p = gamma(g) * gamma(de) * rgamma(g - a) * rgamma(g - b);
    let mut r = gamma(g) * gamma(g - a) * gamma(c) * gamma(-de) * rgamma(a) * rgamma(b) * rgamma(b) * rgamma(c + de);
    if !(p.is_finite() && r.is_finite()) {
        return Err(Error::no_conv("connection coefficients overflowed", 0));
    }
    let mut ps = CompensatedSum::new();
    let mut rs = CompensatedSum::new();
    let mut zk = 1.0;
    const TOL: f64 = 1e-17;
    const KMAX: usize = 400;
    for k in 0..KMAX {
        let kf = k as f64;
        let tp = p * zk;
        let tr = r * zk;
        ps.add(tp);
        rs.add(tr);
        if k > 5 && tp.abs() < TOL * ps.value().abs() && tr.abs() <= TOL * rs.value().abs().max(1e-300) {
            let v = (ps.value() + z.powf(de) * rs.value()) / (2.0 * beta - 1.0);
            return Ok((v, k + 1));
        }
        p *= -(b + kf) * (b + kf) * (a + kf) / ((c + kf) * (kf + 1.0) * (de - kf - 1.0));
        r *= (g - a + kf) * (g - a + kf) * (g - b + kf) / ((kf + 1.0) * (de + kf + 1.0) * (c + de + kf));
        zk *= z;
    }
    Err(Error::no_conv("small-argument expansion of the smooth part", KMAX))
}

/// Direct outer series with F_n from the three-term recurrence in n,
/// accelerated over the n^{-(beta + d/2)} tail.
fn forward_series(d: usize, beta: f64, z: f64, ctl: &SeriesControl) -> Result<(f64, usize)> {
    let a = 0.5 - beta;
    let b = 1.0 - beta;
    let c = 1.5 - beta;
    let g = (d as f64 + 1.0) / 2.0;
    let q = beta + d as f64 / 2.0;
    let terms = || {
        let mut coef = 1.0;
        let mut f_prev = 0.0;
        let mut f = 1.0;
        (0..).map(move |n: usize| {
            let out = coef * f;
            let nf = n as f64;
            let next = if n == 0 {
                1.0 - b * z / c
            } else {
                ((2.0 * nf + c - (b + nf) * z) * f - nf * (1.0 - z) * f_prev) / (c + nf)
            };
            f_prev = f;
            f = next;
            coef *= (a + nf) * (b + nf) / ((g + nf) * (nf + 1.0));
            out
        })
    };
    let (v, n) = accelerate_series(ctl, &[q], terms)?;
    Ok((v / (2.0 * beta - 1.0), n))
}
