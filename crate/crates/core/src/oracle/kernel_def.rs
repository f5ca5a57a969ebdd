use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernel::h_beta;
use crate::quad::{gauss_jacobi, gauss_legendre, Rule};
use crate::specfun::{CompensatedSum, SeriesControl};
use crate::spheregeom::omega_ratio;

pub const DEFAULT_RESOLUTION: usize = 128;

/// K_beta(x, y) from its defining double integral, computed in cylinder
/// coordinates about the pole (x - y)/|x - y|.
///
/// Evaluates at `resolution` and `2 * resolution` nodes per factor and
/// returns the finer value, or `RuleTooCoarse` when the two differ by more
/// than `10 * tol` relative.
pub fn kernel_def_quadrature(d: usize, beta: f64, inner: f64, resolution: usize, tol: f64) -> Result<f64> {
    if d < 2 {
        return Err(Error::domain("sphere dimension must be at least 2"));
    }
    if !(beta > 0.5) {
        return Err(Error::domain("beta must exceed 1/2"));
    }
    if !(inner.abs() <= 1.0) {
        return Err(Error::domain(format!("inner product {inner} outside [-1, 1]")));
    }
    if resolution < 4 {
        return Err(Error::domain("resolution must be at least 4"));
    }
    let coarse = evaluate(d, beta, inner, resolution)?;
    let fine = evaluate(d, beta, inner, 2 * resolution)?;
    let estimate = (fine - coarse).abs() / fine.abs().max(1e-300);
    if estimate > 10.0 * tol {
        return Err(Error::RuleTooCoarse {
            estimate,
            tolerance: 10.0 * tol,
        });
    }
    Ok(fine)
}

fn evaluate(d: usize, beta: f64, inner: f64, n: usize) -> Result<f64> {
    let ctl = SeriesControl::default();
    let v = ((1.0 - inner) / 2.0).max(0.0).sqrt();
    let cv = (1.0 - v * v).max(0.0).sqrt();
    let a = d as f64 / 2.0 - 1.0;
    let (u_nodes, u_weights) = u_rule(n, a, beta);
    let tau = tau_rule(d, n);
    let rows: Vec<f64> = u_nodes
        .par_iter()
        .zip(&u_weights)
        .map(|(&u, &wu)| {
            let cu = (1.0 - u * u).max(0.0).sqrt();
            let mut acc = CompensatedSum::new();
            for (&t, &wt) in tau.nodes.iter().zip(&tau.weights) {
                let s = cv * cu * t;
                let x = (u * v + s).clamp(-1.0, 1.0);
                let y = (-u * v + s).clamp(-1.0, 1.0);
                acc.add(wt * h_beta(x, y, beta, &ctl)?);
            }
            Ok(wu * acc.value())
        })
        .collect::<Result<_>>()?;
    Ok(2.0 * omega_ratio(d) * rows.into_iter().collect::<CompensatedSum>().value())
}

/// Nodes on [0, 1] for the weight (1 - u^2)^a, graded at u = 0 where the
/// two arguments of H coincide.
fn u_rule(n: usize, a: f64, beta: f64) -> (Vec<f64>, Vec<f64>) {
    let kappa = if beta == beta.round() { 1.0 } else { 3.0 };
    let gl = gauss_legendre(n).mapped(0.0, 0.5);
    let mut nodes = Vec::with_capacity(2 * n);
    let mut weights = Vec::with_capacity(2 * n);
    // [0, 1/2]: u = 2^{kappa-1} s^kappa
    let c = 2f64.powf(kappa - 1.0);
    for (&s, &w) in gl.nodes.iter().zip(&gl.weights) {
        let u = c * s.powf(kappa);
        nodes.push(u);
        weights.push(w * c * kappa * s.powf(kappa - 1.0) * (1.0 - u * u).powf(a));
    }
    // [1/2, 1]: Gauss–Jacobi with (1 - u)^a, remaining factor (1 + u)^a
    let gj = gauss_jacobi(n, a, 0.0);
    let scale = 0.25f64.powf(a + 1.0);
    for (&x, &w) in gj.nodes.iter().zip(&gj.weights) {
        let u = 0.75 + 0.25 * x;
        nodes.push(u);
        weights.push(scale * w * (1.0 + u).powf(a));
    }
    (nodes, weights)
}

/// Normalized zonal measure on S^{d-1} in the variable tau.
fn tau_rule(d: usize, n: usize) -> Rule {
    if d == 2 {
        // tau = cos(phi), (1/pi) dphi on [0, pi]
        let r = gauss_legendre(2 * n).mapped(0.0, std::f64::consts::PI);
        return Rule {
            nodes: r.nodes.iter().map(|p| p.cos()).collect(),
            weights: r.weights.iter().map(|w| w / std::f64::consts::PI).collect(),
        };
    }
    let b = (d as f64 - 3.0) / 2.0;
    let r = gauss_jacobi(2 * n, b, b);
    let om = omega_ratio(d - 1);
    Rule {
        nodes: r.nodes,
        weights: r.weights.iter().map(|w| w * om).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{kernel_eval, SmoothnessParam};
    use crate::spheregeom::c_d_const;

    #[test]
    fn classical_case() {
        for &t in &[-0.9, 0.0, 0.5] {
            let v = kernel_def_quadrature(2, 1.0, t, 32, 1e-8).unwrap();
            let exact = 1.0 - c_d_const(2) * (2.0 - 2.0 * t).sqrt();
            assert!((v - exact).abs() < 1e-8, "{t}: {v} {exact}");
        }
    }

    #[test]
    fn higher_dimensions() {
        let ctl = SeriesControl::default();
        for &(d, beta) in &[(3usize, 2.0), (4, 1.0)] {
            let sp = SmoothnessParam::new(beta).unwrap();
            let k = kernel_eval(d, &sp, 0.3, &ctl).unwrap().value;
            let q = kernel_def_quadrature(d, beta, 0.3, 32, 1e-7).unwrap();
            assert!(((q - k) / k).abs() < 1e-7, "d={d}: {q} {k}");
        }
    }

    #[test]
    fn coarse_rule_is_flagged() {
        let r = kernel_def_quadrature(2, 0.8, 0.5, 4, 1e-12);
        assert!(matches!(r, Err(Error::RuleTooCoarse { .. })));
        assert!(kernel_def_quadrature(2, 0.4, 0.0, 16, 1e-6).is_err());
    }
}
