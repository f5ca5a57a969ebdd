//! Smooth part for beta = L + 1/2, where the distance term carries a logarithm.

use crate::error::Result;
use crate::specfun::{accelerate_series, digamma, gamma, gauss_2f1, pochhammer, CompensatedSum, SeriesControl};

const LN2: f64 = std::f64::consts::LN_2;

fn factorial(n: usize) -> f64 {
    gamma(n as f64 + 1.0)
}

/// (1/2)_L^2 / (((d+1)/2)_L L!).
fn x_const(d: usize, l: usize) -> f64 {
    let g = (d as f64 + 1.0) / 2.0;
    pochhammer(0.5, l).powi(2) / (pochhammer(g, l) * factorial(l))
}

/// Smooth part Q~ at z = (1 - t)/2 and the number of terms used.
pub(crate) fn smooth_part(d: usize, l: usize, z: f64, ctl: &SeriesControl) -> Result<(f64, usize)> {
    let g = (d as f64 + 1.0) / 2.0;
    let lf = l as f64;
    let w = 1.0 - z;
    let sign = if l % 2 == 0 { -1.0 } else { 1.0 }; // (-1)^{L+1}

    // finite sum of terminating 2F1 polynomials in w
    let mut p1 = CompensatedSum::new();
    for n in 0..l {
        let nf = n as f64;
        let coef = pochhammer(0.5 - lf, n) * pochhammer(0.5, n) / (pochhammer(g, n) * factorial(n));
        p1.add(coef / (lf - nf) * gauss_2f1(-nf, 0.5 - lf, 0.5 - nf, w, ctl)?);
    }
    let p1 = 0.5 * p1.value();

    // infinite part through S(z)
    let (s, used) = if z <= 0.5 { s_small(d, l, z)? } else { s_series(d, l, z, ctl)? };
    let p2 = -0.5 * pochhammer(0.5, l) * gamma(g) / (factorial(l) * gamma(0.5 - lf)) * z.powi(l as i32) * s;

    // finite power sum
    let mut p3 = CompensatedSum::new();
    for k in 1..=l {
        let kf = k as f64;
        let sg = if k % 2 == 0 { 1.0 } else { -1.0 };
        p3.add(sg / kf * pochhammer(-lf, k) / pochhammer(0.5 - lf, k) * z.powi((l - k) as i32) * w.powi(k as i32));
    }
    let p3 = 0.5 * pochhammer(0.5 - lf, l) * pochhammer(0.5, l) / (pochhammer(g, l) * factorial(l)) * p3.value();

    // digamma block
    let psi = 2.0 * LN2 + digamma(lf + 1.0)? + digamma(lf + g)? - digamma(0.5)? - digamma(lf + 0.5)?;
    let p4 = -sign * 0.5 * x_const(d, l) * z.powi(l as i32) * psi;

    Ok((p1 + p2 + p3 + p4, used + l))
}

/// S(z) = sum_{n>=1} (1/n) Gamma(n+1/2)/Gamma(n+L+(d+1)/2) 2F1(-n, 1/2; L+1; z)
/// summed directly with acceleration.
fn s_series(d: usize, l: usize, z: f64, ctl: &SeriesControl) -> Result<(f64, usize)> {
    let g = (d as f64 + 1.0) / 2.0;
    let lf = l as f64;
    let q = lf + 0.5 + d as f64 / 2.0;
    let bb = 0.5;
    let cc = lf + 1.0;
    let t0 = gamma(1.5) / gamma(1.0 + lf + g);
    let terms = || {
        let mut gm1 = 0.0;
        let mut gn = 1.0;
        let mut t = t0;
        (0..).map(move |n: usize| {
            let nf = n as f64;
            let next = if n == 0 {
                1.0 - bb * z / cc
            } else {
                ((2.0 * nf + cc - (bb + nf) * z) * gn - nf * (1.0 - z) * gm1) / (cc + nf)
            };
            gm1 = gn;
            gn = next;
            let m = nf + 1.0;
            let out = t / m * gn;
            t *= (m + 0.5) / (m + lf + g);
            out
        })
    };
    accelerate_series(ctl, &[q], terms)
}

/// S(z) from its expansion about z = 0.
fn s_small(d: usize, l: usize, z: f64) -> Result<(f64, usize)> {
    let g = (d as f64 + 1.0) / 2.0;
    let lf = l as f64;
    let e = lf + d as f64 / 2.0;
    let gfun = |s: f64| {
        gamma(s + 0.5).powi(2) * gamma(s) * factorial(l)
            / (gamma(0.5) * gamma(lf + 1.0 + s) * gamma(e) * gamma(e + 0.5))
    };
    const TOL: f64 = 1e-17;
    const KMAX: usize = 400;
    let mut acc = CompensatedSum::new();
    acc.add(gamma(0.5) / gamma(lf + g) * (digamma(lf + g)? - digamma(e)?));
    let mut used = 0;

    // regular power terms (-z)^j / j! gfun(j) Gamma(E - j)
    let even = d % 2 == 0;
    let jmax = if even { e as usize - 1 } else { KMAX };
    let mut t = -z * gfun(1.0) * gamma(e - 1.0);
    for j in 1..=jmax {
        acc.add(t);
        used += 1;
        if !even && j > 5 && t.abs() < TOL * acc.value().abs() {
            break;
        }
        let jf = j as f64;
        t *= -z * (jf + 0.5).powi(2) * jf / ((jf + 1.0) * (lf + 1.0 + jf) * (e - jf - 1.0));
    }

    if even {
        let ei = e as usize;
        let sgn_e = if ei % 2 == 0 { 1.0 } else { -1.0 };
        let lz = z.ln();
        let n0 = e;
        let mut coef = gfun(n0) * z.powi(ei as i32) / factorial(ei);
        let mut psi_h = digamma(n0 + 0.5)?;
        let mut psi_n = digamma(n0)?;
        let mut psi_l = digamma(lf + 1.0 + n0)?;
        let mut psi_n1 = digamma(n0 + 1.0)?;
        let mut psi_m1 = digamma(1.0)?;
        for m in 0..KMAX {
            let mf = m as f64;
            let n = n0 + mf;
            let term = sgn_e * coef * (lz + 2.0 * psi_h + psi_n - psi_l - psi_n1 - psi_m1);
            acc.add(-term);
            used += 1;
            if m > 5 && term.abs() < TOL * acc.value().abs() {
                break;
            }
            coef *= (n + 0.5).powi(2) * n / (lf + 1.0 + n) * z / ((n + 1.0) * (mf + 1.0));
            psi_h += 1.0 / (n + 0.5);
            psi_n += 1.0 / n;
            psi_l += 1.0 / (lf + 1.0 + n);
            psi_n1 += 1.0 / (n + 1.0);
            psi_m1 += 1.0 / (mf + 1.0);
        }
    } else {
        // singular terms (-1)^m/m! Gamma(-E-m) gfun(E+m) z^{E+m}
        let mut t = gamma(-e) * gfun(e) * z.powf(e);
        for m in 0..KMAX {
            acc.add(t);
            used += 1;
            if m > 5 && t.abs() < TOL * acc.value().abs() {
                break;
            }
            let mf = m as f64;
            let s = e + mf;
            t *= z * (s + 0.5).powi(2) * s / ((mf + 1.0) * (s + 1.0) * (lf + 1.0 + s));
        }
    }
    Ok((acc.value(), used))
}

/// K(x, -x) on the exceptional branch.
pub(crate) fn antipodal(d: usize, l: usize, ctl: &SeriesControl) -> Result<f64> {
    let g = (d as f64 + 1.0) / 2.0;
    let lf = l as f64;
    // sum_{n != L} (1/(n-L)) (1/2-L)_n (1/2)_n / ((g)_n n!)
    let terms = || {
        let mut c = 1.0;
        (0..).map(move |n: usize| {
            let nf = n as f64;
            let out = if n == l { 0.0 } else { c / (nf - lf) };
            c *= (0.5 - lf + nf) * (0.5 + nf) / ((g + nf) * (nf + 1.0));
            out
        })
    };
    let (s, _) = accelerate_series(ctl, &[lf + g], terms)?;
    let sign = if l % 2 == 0 { -1.0 } else { 1.0 };
    let psi = digamma(lf + 1.0)? + digamma(lf + g)? - digamma(0.5)? - digamma(lf + 0.5)?;
    Ok(-0.5 * s - sign * 0.5 * x_const(d, l) * psi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_expansions_agree() {
        let ctl = SeriesControl::default();
        for d in 2..=5 {
            for l in 1..=2 {
                for &z in &[0.3, 0.5] {
                    let (a, _) = s_small(d, l, z).unwrap();
                    let (b, _) = s_series(d, l, z, &ctl).unwrap();
                    assert!((a - b).abs() < 1e-11 * a.abs().max(1.0), "d={d} L={l} z={z}: {a} {b}");
                }
            }
        }
    }
}
