//! Gamma-family functions on the real line.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS_COEF: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_746,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_76e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_65e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// B_{2k} / (2k), k = 1..8.
const DIGAMMA_ASYMP: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
];

pub(crate) fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// sin(pi x) with exact zeros at the integers.
pub fn sinpi(x: f64) -> f64 {
    if x == x.round() {
        return 0.0;
    }
    let mut r = x % 2.0;
    if r > 1.0 {
        r -= 2.0;
    } else if r < -1.0 {
        r += 2.0;
    }
    if r > 0.5 {
        r = 1.0 - r;
    } else if r < -0.5 {
        r = -1.0 - r;
    }
    (PI * r).sin()
}

/// cos(pi x) with exact zeros at the half-integers.
pub fn cospi(x: f64) -> f64 {
    let y = x.abs() % 2.0;
    if y == 0.5 || y == 1.5 {
        return 0.0;
    }
    sinpi(y + 0.5)
}

fn lanczos_sum(x: f64) -> f64 {
    // x here is the shifted argument (original minus one)
    let mut a = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    a
}

/// Gamma function; `inf` at the poles.
pub fn gamma(x: f64) -> f64 {
    if x.is_nan() {
        return x;
    }
    if is_nonpositive_integer(x) {
        return f64::INFINITY;
    }
    if x == x.round() && x <= 24.0 {
        let mut p = 1.0;
        let mut k = 2.0;
        while k < x {
            p *= k;
            k += 1.0;
        }
        return p;
    }
    if x < 0.5 {
        return PI / (sinpi(x) * gamma(1.0 - x));
    }
    if x > 171.7 {
        return f64::INFINITY;
    }
    let xm = x - 1.0;
    let t = xm + LANCZOS_G + 0.5;
    let a = lanczos_sum(xm);
    // split the power to delay overflow
    let p = t.powf(0.5 * (xm + 0.5));
    (2.0 * PI).sqrt() * p * (p * (-t).exp()) * a
}

/// Reciprocal gamma; exactly zero at the poles.
pub fn rgamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        0.0
    } else {
        1.0 / gamma(x)
    }
}

/// ln |Gamma(x)|.
pub fn ln_gamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return f64::INFINITY;
    }
    if x < 0.5 {
        return PI.ln() - sinpi(x).abs().ln() - ln_gamma(1.0 - x);
    }
    if x == 1.0 || x == 2.0 {
        return 0.0;
    }
    if x < 24.0 {
        return gamma(x).abs().ln();
    }
    let xm = x - 1.0;
    let t = xm + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (xm + 0.5) * t.ln() - t + lanczos_sum(xm).ln()
}

/// Digamma function psi(x).
pub fn digamma(x: f64) -> Result<f64> {
    if is_nonpositive_integer(x) {
        return Err(Error::pole(format!("digamma at {x}")));
    }
    if x < 0.0 {
        // psi(x) = psi(1 - x) - pi cot(pi x)
        return Ok(digamma(1.0 - x)? - PI * cospi(x) / sinpi(x));
    }
    let mut acc = 0.0;
    let mut y = x;
    while y < 8.0 {
        acc -= 1.0 / y;
        y += 1.0;
    }
    let inv2 = 1.0 / (y * y);
    let mut series = 0.0;
    let mut pw = inv2;
    for c in DIGAMMA_ASYMP {
        series += c * pw;
        pw *= inv2;
    }
    Ok(acc + y.ln() - 0.5 / y - series)
}

/// Rising factorial a (a+1) ... (a+n-1).
pub fn pochhammer(a: f64, n: usize) -> f64 {
    let mut p = 1.0;
    for k in 0..n {
        p *= a + k as f64;
        if p == 0.0 {
            break;
        }
    }
    p
}

/// (a)_n / (b)_n as a running product, free of intermediate overflow.
pub fn pochhammer_ratio(a: f64, b: f64, n: usize) -> f64 {
    let mut p = 1.0;
    for k in 0..n {
        let kf = k as f64;
        p *= (a + kf) / (b + kf);
        if p == 0.0 {
            break;
        }
    }
    p
}

/// Sum of ln Gamma over `nums` minus the sum over `dens`, i.e. the log of
/// the absolute gamma quotient. Arguments are sorted and paired so that
/// each subtraction involves values of similar magnitude.
pub fn ln_gamma_ratio(nums: &[f64], dens: &[f64]) -> Result<f64> {
    if let Some(&p) = nums.iter().chain(dens).find(|&&v| is_nonpositive_integer(v)) {
        return Err(Error::pole(format!("gamma argument {p}")));
    }
    let mut a = nums.to_vec();
    let mut b = dens.to_vec();
    a.sort_by(|x, y| x.partial_cmp(y).unwrap());
    b.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let mut acc = super::CompensatedSum::new();
    let paired = a.len().min(b.len());
    for i in 0..paired {
        acc.add(ln_gamma_diff(a[i], b[i]));
    }
    for &v in &a[paired..] {
        acc.add(ln_gamma(v));
    }
    for &v in &b[paired..] {
        acc.add(-ln_gamma(v));
    }
    Ok(acc.value())
}

fn ln_gamma_diff(a: f64, b: f64) -> f64 {
    let delta = a - b;
    if delta == delta.round() && delta.abs() <= 64.0 {
        let n = delta.abs() as usize;
        let lo = a.min(b);
        let lp = pochhammer(lo, n).abs().ln();
        return if delta >= 0.0 { lp } else { -lp };
    }
    ln_gamma(a) - ln_gamma(b)
}
