//! Integer smoothness beta = M: the smooth part is a polynomial of degree M-1.

use crate::error::Result;
use crate::specfun::{gamma, pfq_terminating, pochhammer};

/// Q_{M-1}(z), z = (1 - t)/2.
///
/// The lower parameter 2 - d/2 - 2M is a nonpositive integer for even d; the
/// series stops at n = M - 1 before reaching it. The repeated 1 - M is kept
/// in both places rather than cancelled.
pub(crate) fn smooth_part(d: usize, m: usize, z: f64) -> Result<f64> {
    let df = d as f64;
    let mf = m as f64;
    let k = 2 * m - 1;
    let pre = 2f64.powi(k as i32) / k as f64 * pochhammer(df / 2.0, k) / pochhammer(df, k);
    let f = pfq_terminating(&[1.0 - mf, 0.5 - mf, 1.0 - mf], &[1.5 - mf, 2.0 - df / 2.0 - 2.0 * mf], z)?;
    Ok(pre * f)
}

/// Double integral of Q_{M-1} over S^d x S^d through the terminating 4F3.
pub fn q_mean_integer(d: usize, m: usize) -> Result<f64> {
    assert!(m >= 1, "M must be positive");
    let df = d as f64;
    let mf = m as f64;
    let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
    let pre = sign * gamma(mf) / pochhammer(1.5, m - 1);
    let f = pfq_terminating(
        &[1.0 - mf, 0.5 - mf, mf + df - 1.0, df / 2.0],
        &[1.0 - mf, (df + 1.0) / 2.0, df],
        1.0,
    )?;
    Ok(pre * f)
}

/// Closed form of `q_mean_integer` on S^2.
pub fn q_mean_integer_s2(m: usize) -> f64 {
    assert!(m >= 1, "M must be positive");
    let mf = m as f64;
    let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
    4f64.powi(m as i32) / (2.0 * mf * mf * (2.0 * mf + 1.0))
        + sign * gamma(mf) / (2.0 * mf * (2.0 * mf + 1.0) * pochhammer(0.5, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_for_m1() {
        for d in 2..6 {
            for &z in &[0.0, 0.4, 1.0] {
                assert_eq!(smooth_part(d, 1, z).unwrap(), 1.0);
            }
            assert_eq!(q_mean_integer(d, 1).unwrap(), 1.0);
        }
    }

    #[test]
    fn s2_closed_form_matches() {
        let expected = [1.0, 1.0 / 3.0, 0.533_333_333_333_333_3, 0.876_190_476_190_476_2];
        for m in 1..=6 {
            let a = q_mean_integer(2, m).unwrap();
            let b = q_mean_integer_s2(m);
            assert!((a - b).abs() < 1e-12 * b.abs(), "M={m}: {a} {b}");
            if m <= 4 {
                assert!((a - expected[m - 1]).abs() < 1e-14);
            }
        }
    }
}
