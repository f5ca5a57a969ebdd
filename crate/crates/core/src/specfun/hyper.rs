//! Gauss and generalized hypergeometric series.

use serde::{Deserialize, Serialize};

use super::gamma::{digamma, gamma, is_nonpositive_integer, rgamma};
use super::sum::{exponent_ladder, richardson, CompensatedSum};
use crate::error::{Error, Result};

/// Stopping controls shared by every series evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesControl {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_terms: usize,
    /// Consecutive sub-tolerance terms required before stopping.
    pub tail_window: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            rel_tol: 1e-13,
            abs_tol: 1e-300,
            max_terms: 100_000,
            tail_window: 5,
        }
    }
}

impl SeriesControl {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || self.max_terms < 1 {
            return Err(Error::domain("series control needs rel_tol > 0 and max_terms >= 1"));
        }
        Ok(())
    }

    fn small(&self, term: f64, sum: f64) -> bool {
        term.abs() <= self.rel_tol * sum.abs() + self.abs_tol
    }
}

/// Degree at which a series with these upper parameters truncates.
pub(crate) fn truncation_degree(uppers: &[f64]) -> Option<usize> {
    uppers
        .iter()
        .filter(|&&a| is_nonpositive_integer(a))
        .map(|&a| (-a) as usize)
        .min()
}

/// Product of gamma values over `nums` divided by those over `dens`.
/// Zero when a denominator argument sits on a pole.
pub(crate) fn gamma_quotient(nums: &[f64], dens: &[f64]) -> f64 {
    let mut v = 1.0;
    for &x in dens {
        v *= rgamma(x);
    }
    if v == 0.0 {
        return 0.0;
    }
    for &x in nums {
        v *= gamma(x);
    }
    v
}

/// Sums `sum_n t_n` with `t_0 = 1` and `t_{n+1} = t_n * ratio(n)`.
fn power_series(ctl: &SeriesControl, max_terms: usize, mut ratio: impl FnMut(f64) -> f64) -> Result<f64> {
    let mut acc = CompensatedSum::new();
    let mut term = 1.0;
    acc.add(term);
    let mut quiet = 0;
    for n in 0..max_terms {
        let r = ratio(n as f64);
        term *= r;
        acc.add(term);
        // geometric estimate of the remainder
        let tail = if r.abs() < 1.0 { term * r / (1.0 - r.abs()) } else { term };
        if ctl.small(tail, acc.value()) {
            quiet += 1;
            if quiet >= ctl.tail_window {
                return Ok(acc.value());
            }
        } else {
            quiet = 0;
        }
        if !term.is_finite() {
            return Err(Error::no_conv("hypergeometric series overflowed", n));
        }
    }
    Err(Error::no_conv("hypergeometric series", max_terms))
}

/// Exact finite sum of a terminating pFq.
fn finite_pfq(uppers: &[f64], lowers: &[f64], z: f64, degree: usize) -> f64 {
    let mut uppers = uppers.to_vec();
    let mut lowers = lowers.to_vec();
    uppers.sort_by(f64::total_cmp);
    lowers.sort_by(f64::total_cmp);
    let mut acc = CompensatedSum::new();
    let mut term = 1.0;
    acc.add(term);
    for n in 0..degree {
        let nf = n as f64;
        let mut r = z / (nf + 1.0);
        for &a in &uppers {
            r *= a + nf;
        }
        for &b in &lowers {
            r /= b + nf;
        }
        term *= r;
        acc.add(term);
    }
    acc.value()
}

/// Errors when a lower parameter reaches its pole at or before `degree`.
fn check_lower_poles(lowers: &[f64], degree: Option<usize>) -> Result<()> {
    for &b in lowers {
        if is_nonpositive_integer(b) {
            let p = (-b) as usize;
            match degree {
                Some(m) if m <= p => {}
                _ => return Err(Error::pole(format!("lower parameter {b} is reached before truncation"))),
            }
        }
    }
    Ok(())
}

/// Gauss hypergeometric function 2F1(a, b; c; z) for real arguments, z <= 1.
pub fn gauss_2f1(a: f64, b: f64, c: f64, z: f64, ctl: &SeriesControl) -> Result<f64> {
    if !(a.is_finite() && b.is_finite() && c.is_finite() && z.is_finite()) {
        return Err(Error::domain("non-finite 2F1 argument"));
    }
    // canonical order makes the result exactly symmetric in (a, b)
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    let degree = truncation_degree(&[a, b]);
    check_lower_poles(&[c], degree)?;
    if let Some(m) = degree {
        return Ok(finite_pfq(&[a, b], &[c], z, m));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    if z > 1.0 {
        return Err(Error::domain(format!("2F1 argument {z} > 1")));
    }
    let s = c - a - b;
    if z == 1.0 {
        if s <= 0.0 {
            return Err(Error::domain("2F1 at z = 1 diverges unless c - a - b > 0"));
        }
        return Ok(gamma_quotient(&[c, s], &[c - a, c - b]));
    }
    if z < -0.5 {
        // Pfaff: (1-z)^{-a} 2F1(a, c-b; c; z/(z-1))
        let w = z / (z - 1.0);
        return Ok((1.0 - z).powf(-a) * gauss_2f1(a, c - b, c, w, ctl)?);
    }
    if z <= 0.9 {
        return power_series(ctl, ctl.max_terms, |n| (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z);
    }
    let m = s.round();
    if s == m {
        if m < 0.0 {
            // Euler: (1-z)^{c-a-b} 2F1(c-a, c-b; c; z)
            return Ok((1.0 - z).powf(s) * log_case(c - a, c - b, -m as usize, z, ctl)?);
        }
        return log_case(a, b, m as usize, z, ctl);
    }
    if (s - m).abs() < 1e-8 {
        return power_series(ctl, ctl.max_terms.saturating_mul(10), |n| {
            (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z
        });
    }
    let w = 1.0 - z;
    let a1 = gamma_quotient(&[c, s], &[c - a, c - b]);
    let a2 = gamma_quotient(&[c, -s], &[a, b]);
    let f1 = if a1 == 0.0 { 0.0 } else { gauss_2f1(a, b, 1.0 - s, w, ctl)? };
    let f2 = if a2 == 0.0 { 0.0 } else { gauss_2f1(c - a, c - b, 1.0 + s, w, ctl)? };
    Ok(a1 * f1 + a2 * w.powf(s) * f2)
}

/// 2F1(a, b; a+b+m; z) for integer m >= 0 and z close to one, via the
/// logarithmic connection formula.
fn log_case(a: f64, b: f64, m: usize, z: f64, ctl: &SeriesControl) -> Result<f64> {
    let w = 1.0 - z;
    let c = a + b + m as f64;
    let mf = m as f64;
    let mut head = CompensatedSum::new();
    if m > 0 {
        let pref = gamma_quotient(&[mf, c], &[a + mf, b + mf]);
        let mut t = 1.0;
        for n in 0..m {
            head.add(t);
            let nf = n as f64;
            t *= (a + nf) * (b + nf) / ((nf + 1.0) * (1.0 - mf + nf)) * w;
        }
        head = CompensatedSum::from_iter([pref * head.value()]);
    }
    // (z-1)^m Gamma(c)/(Gamma(a)Gamma(b)) sum_n (a+m)_n (b+m)_n / (n! (n+m)!) w^n [...]
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let pref = sign * w.powi(m as i32) * gamma_quotient(&[c], &[a, b]);
    if pref == 0.0 {
        return Ok(head.value());
    }
    let lw = w.ln();
    let mut psi_n1 = digamma(1.0)?;
    let mut psi_nm1 = digamma(mf + 1.0)?;
    let mut psi_a = digamma(a + mf)?;
    let mut psi_b = digamma(b + mf)?;
    let mut coef = 1.0 / gamma(mf + 1.0);
    let mut tail = CompensatedSum::new();
    let mut quiet = 0;
    for n in 0..ctl.max_terms {
        let t = coef * (lw - psi_n1 - psi_nm1 + psi_a + psi_b);
        tail.add(t);
        if ctl.small(t, tail.value()) {
            quiet += 1;
            if quiet >= ctl.tail_window {
                return Ok(head.value() - pref * tail.value());
            }
        } else {
            quiet = 0;
        }
        let nf = n as f64;
        coef *= (a + mf + nf) * (b + mf + nf) / ((nf + 1.0) * (nf + mf + 1.0)) * w;
        psi_n1 += 1.0 / (nf + 1.0);
        psi_nm1 += 1.0 / (nf + mf + 1.0);
        psi_a += 1.0 / (a + mf + nf);
        psi_b += 1.0 / (b + mf + nf);
    }
    Err(Error::no_conv("2F1 logarithmic case", ctl.max_terms))
}

/// Terminating generalized hypergeometric series, summed exactly.
pub fn pfq_terminating(uppers: &[f64], lowers: &[f64], z: f64) -> Result<f64> {
    let degree = truncation_degree(uppers)
        .ok_or_else(|| Error::domain("no upper parameter is a nonpositive integer"))?;
    check_lower_poles(lowers, Some(degree))?;
    Ok(finite_pfq(uppers, lowers, z, degree))
}

/// Generalized hypergeometric series q+1Fq at unit argument. Non-terminating
/// series are summed with Richardson acceleration of the algebraic tail.
pub fn pfq_unit(uppers: &[f64], lowers: &[f64], ctl: &SeriesControl) -> Result<f64> {
    let degree = truncation_degree(uppers);
    check_lower_poles(lowers, degree)?;
    if let Some(m) = degree {
        return Ok(finite_pfq(uppers, lowers, 1.0, m));
    }
    if uppers.len() != lowers.len() + 1 {
        return Err(Error::domain("pFq at unit argument needs p = q + 1"));
    }
    let excess: f64 = lowers.iter().sum::<f64>() - uppers.iter().sum::<f64>();
    if excess <= 0.0 {
        return Err(Error::domain("pFq at unit argument diverges"));
    }
    let ratio = |n: f64| {
        let mut r = 1.0 / (n + 1.0);
        for &a in uppers {
            r *= a + n;
        }
        for &b in lowers {
            r /= b + n;
        }
        r
    };
    Ok(accelerate_series(ctl, &[excess], || ratio_terms(ratio))?.0)
}

const RICH_N0: usize = 128;
const RICH_LEVELS: usize = 7;

/// Sums a series whose tail decays algebraically with leading exponents
/// drawn from `families` (each followed by its integer shifts). `terms`
/// restarts the term stream; partial sums at N0 * 2^i are extrapolated.
/// Returns the value and the number of terms summed.
pub(crate) fn accelerate_series<I: Iterator<Item = f64>>(
    ctl: &SeriesControl,
    families: &[f64],
    mut terms: impl FnMut() -> I,
) -> Result<(f64, usize)> {
    let exps = exponent_ladder(families, RICH_LEVELS - 1);
    let mut n0 = RICH_N0;
    loop {
        let nmax = n0 << (RICH_LEVELS - 1);
        let mut sums = Vec::with_capacity(RICH_LEVELS);
        let mut acc = CompensatedSum::new();
        let mut next = n0;
        for (n, t) in terms().take(nmax).enumerate() {
            acc.add(t);
            if n + 1 == next {
                sums.push(acc.value());
                next <<= 1;
            }
        }
        if sums.len() < RICH_LEVELS {
            // the stream ended early: the series is finite
            return Ok((acc.value(), nmax));
        }
        let r = richardson(&sums, &exps);
        if !r.value.is_finite() {
            return Err(Error::no_conv("accelerated series overflowed", nmax));
        }
        if r.error <= ctl.rel_tol * r.value.abs().max(1e-3) + ctl.abs_tol {
            return Ok((r.value, nmax));
        }
        if n0 << RICH_LEVELS > ctl.max_terms {
            return Err(Error::no_conv("accelerated series", nmax));
        }
        n0 <<= 1;
    }
}

/// Terms t_0 = 1, t_{n+1} = t_n * ratio(n).
pub(crate) fn ratio_terms(ratio: impl Fn(f64) -> f64) -> impl Iterator<Item = f64> {
    let mut t = 1.0;
    (0..).map(move |n| {
        let out = t;
        t *= ratio(n as f64);
        out
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctl() -> SeriesControl {
        SeriesControl::default()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(gauss_2f1(0.3, 7.1, 2.0, 0.0, &ctl()).unwrap(), 1.0);
        assert!((gauss_2f1(-1.0, 2.0, 3.0, 0.5, &ctl()).unwrap() - 2.0 / 3.0).abs() < 2e-16);
        let v = gauss_2f1(1.0, 1.0, 2.0, 0.5, &ctl()).unwrap();
        assert!(rel(v, 2.0 * std::f64::consts::LN_2) < 1e-13);
    }

    #[test]
    fn closed_forms_across_regions() {
        // 2F1(1,1;2;z) = -ln(1-z)/z
        for &z in &[-5.0, -0.7, -0.2, 0.3, 0.85, 0.93, 0.999] {
            let v = gauss_2f1(1.0, 1.0, 2.0, z, &ctl()).unwrap();
            let exact = -(1.0f64 - z).ln() / z;
            assert!(rel(v, exact) < 1e-13, "z={z}: {v} vs {exact}");
        }
        // 2F1(a,b;b;z) = (1-z)^{-a}, non-integer c-a-b
        for &z in &[-3.0, 0.5, 0.95] {
            let v = gauss_2f1(0.3, 1.7, 1.7, z, &ctl()).unwrap();
            assert!(rel(v, (1.0 - z).powf(-0.3)) < 1e-13, "z={z}");
        }
        // 2F1(1/2,1;3/2;z^2) = atanh(z)/z
        for &x in &[0.5f64, 0.97] {
            let v = gauss_2f1(0.5, 1.0, 1.5, x * x, &ctl()).unwrap();
            assert!(rel(v, x.atanh() / x) < 1e-13);
        }
    }

    #[test]
    fn logarithmic_case_against_mpmath() {
        // reference values from an arbitrary-precision evaluation
        let v = gauss_2f1(0.3, 0.7, 3.0, 0.95, &ctl()).unwrap();
        assert!(rel(v, 1.099_531_347_703_773_5) < 1e-13, "{v}");
        let v = gauss_2f1(-0.5, 1.0, 2.5, 0.97, &ctl()).unwrap();
        assert!(rel(v, 0.760_736_350_341_743_3) < 1e-13, "{v}");
        let v = gauss_2f1(0.25, 0.75, 1.0, 0.99, &ctl()).unwrap();
        assert!(rel(v, 1.974_908_683_881_454_3) < 1e-13, "{v}");
        // negative integer c-a-b goes through Euler's transform
        let v = gauss_2f1(1.5, 1.5, 2.0, 0.95, &ctl()).unwrap();
        assert!(rel(v, 24.528_138_666_051_432) < 1e-12, "{v}");
    }

    #[test]
    fn unit_argument_gauss_sum() {
        let v = gauss_2f1(0.2, 0.3, 1.5, 1.0, &ctl()).unwrap();
        let exact = gamma(1.5) * gamma(1.0) / (gamma(1.3) * gamma(1.2));
        assert!(rel(v, exact) < 1e-14);
        assert!(matches!(gauss_2f1(1.0, 1.0, 2.0, 1.0, &ctl()), Err(Error::Domain(_))));
        assert!(matches!(gauss_2f1(1.0, 1.0, 2.0, 1.5, &ctl()), Err(Error::Domain(_))));
    }

    #[test]
    fn poles() {
        assert!(matches!(gauss_2f1(1.0, 1.0, -2.0, 0.5, &ctl()), Err(Error::Pole(_))));
        // terminates at degree 2 before the lower pole at n = 3
        assert!(gauss_2f1(-2.0, 1.0, -2.0, 0.5, &ctl()).is_ok());
        assert!(matches!(gauss_2f1(-3.0, 1.0, -2.0, 0.5, &ctl()), Err(Error::Pole(_))));
    }

    #[test]
    fn terminating_pfq() {
        assert_eq!(pfq_terminating(&[0.0, 2.0], &[3.0], 0.7).unwrap(), 1.0);
        assert!((pfq_terminating(&[-1.0, 1.0, 1.0], &[2.0, 2.0], 1.0).unwrap() - 0.75).abs() < 1e-16);
        // upper and lower 1-M are not cancelled: the sum stops at n = M-1
        let m = 1.0;
        let v = pfq_terminating(&[1.0 - m, 0.5 - m, m + 1.0, 1.0], &[1.0 - m, 1.5, 2.0], 1.0).unwrap();
        assert_eq!(v, 1.0);
        let m = 3.0;
        let v = pfq_terminating(&[1.0 - m, 0.5 - m, m + 1.0, 1.0], &[1.0 - m, 1.5, 2.0], 1.0).unwrap();
        let brute: f64 = (0..3)
            .map(|n| {
                let n = n as f64;
                let p = |a: f64| (0..n as usize).map(|k| a + k as f64).product::<f64>();
                p(0.5 - m) * p(m + 1.0) / (p(1.5) * p(2.0))
            })
            .sum();
        assert!((v - brute).abs() < 1e-14);
        assert!(matches!(pfq_terminating(&[1.0, 2.0], &[3.0], 0.5), Err(Error::Domain(_))));
        assert!(matches!(pfq_terminating(&[-3.0], &[-1.0], 0.5), Err(Error::Pole(_))));
    }

    #[test]
    fn unit_pfq_accelerated() {
        // 3F2(1,1,1;2,2;1) = zeta(2)
        let v = pfq_unit(&[1.0, 1.0, 1.0], &[2.0, 2.0], &ctl()).unwrap();
        assert!(rel(v, std::f64::consts::PI.powi(2) / 6.0) < 1e-13);
        // 2F1 at 1 against Gauss summation with slow decay
        let v = pfq_unit(&[0.3, 0.4], &[1.2], &ctl()).unwrap();
        let exact = gamma(1.2) * gamma(0.5) / (gamma(0.9) * gamma(0.8));
        assert!(rel(v, exact) < 1e-12, "{v} {exact}");
    }
}
