use crate::error::Result;
use crate::specfun::{kampe_de_feriet, ln_gamma_ratio, KdfParams, SeriesControl};

/// Double integral of K_beta over S^d x S^d.
pub(crate) fn kernel_mean_beta(d: usize, beta: f64, ctl: &SeriesControl) -> Result<f64> {
    if d == 2 {
        return Ok(4f64.powf(beta) / (2.0 * beta * beta * (2.0 * beta + 1.0)));
    }
    let df = d as f64;
    let a = 2.0 * beta + df - 1.0;
    // 2^{beta-1/2+d/2} Gamma((d+1)/2) Gamma(beta) / (sqrt(pi) Gamma(beta+d/2))
    let ln_inner = (beta - 0.5 + df / 2.0) * std::f64::consts::LN_2
        + ln_gamma_ratio(&[(df + 1.0) / 2.0, beta], &[0.5, beta + df / 2.0])?;
    let pre = 2f64.powf(df - 2.0) * (2.0 * ln_inner).exp() / a;
    let block = (vec![1.0 - df / 2.0, df / 2.0], vec![beta + df / 2.0]);
    let params = KdfParams::new((vec![a], vec![a + 1.0]), block.clone(), block)?;
    Ok(pre * kampe_de_feriet(&params, 1.0, 1.0, ctl)?)
}
