//! Gauss–Jacobi and Gauss–Legendre rules on [-1, 1].

use crate::specfun::ln_gamma;

/// Nodes and weights of a one-dimensional rule.
#[derive(Debug, Clone)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Maps the rule from [-1, 1] onto [a, b].
    pub fn mapped(&self, a: f64, b: f64) -> Rule {
        let h = 0.5 * (b - a);
        let m = 0.5 * (a + b);
        Rule {
            nodes: self.nodes.iter().map(|&x| m + h * x).collect(),
            weights: self.weights.iter().map(|&w| h * w).collect(),
        }
    }
}

/// Gauss–Legendre rule with n nodes.
pub fn gauss_legendre(n: usize) -> Rule {
    gauss_jacobi(n, 0.0, 0.0)
}

/// Gauss–Jacobi rule with n nodes for the weight (1-x)^alpha (1+x)^beta.
pub fn gauss_jacobi(n: usize, alpha: f64, beta: f64) -> Rule {
    assert!(n >= 1 && alpha > -1.0 && beta > -1.0);
    let mut nodes = jacobi_matrix_eigenvalues(n, alpha, beta);
    let ab = alpha + beta;
    // ln of Gamma(n+a+1)Gamma(n+b+1)/(Gamma(n+a+b+1) n!) 2^{a+b+1}
    let nf = n as f64;
    let lnc = ln_gamma(nf + alpha + 1.0) + ln_gamma(nf + beta + 1.0)
        - ln_gamma(nf + ab + 1.0)
        - ln_gamma(nf + 1.0)
        + (ab + 1.0) * std::f64::consts::LN_2;
    let mut weights = Vec::with_capacity(n);
    for x in nodes.iter_mut() {
        let mut z = *x;
        let mut dp = 0.0;
        for _ in 0..10 {
            let (p, d) = jacobi_with_derivative(n, alpha, beta, z);
            dp = d;
            let step = p / d;
            z -= step;
            if step.abs() <= 1e-16 * z.abs().max(1e-3) {
                break;
            }
        }
        let (_, d) = jacobi_with_derivative(n, alpha, beta, z);
        if d.is_finite() {
            dp = d;
        }
        *x = z;
        weights.push((lnc - (dp * dp * (1.0 - z * z)).ln()).exp());
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| nodes[i].partial_cmp(&nodes[j]).unwrap());
    Rule {
        nodes: idx.iter().map(|&i| nodes[i]).collect(),
        weights: idx.iter().map(|&i| weights[i]).collect(),
    }
}

/// Value and derivative of P_n^{(a,b)}(x).
fn jacobi_with_derivative(n: usize, a: f64, b: f64, x: f64) -> (f64, f64) {
    let ab = a + b;
    let mut p0 = 1.0;
    let mut p1 = 0.5 * (a - b) + 0.5 * (ab + 2.0) * x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let c = 2.0 * kf + ab;
        let a1 = 2.0 * kf * (kf + ab) * (c - 2.0);
        let a2 = (c - 1.0) * (c * (c - 2.0) * x + a * a - b * b);
        let a3 = 2.0 * (kf + a - 1.0) * (kf + b - 1.0) * c;
        let p2 = (a2 * p1 - a3 * p0) / a1;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let c = 2.0 * nf + ab;
    let d = (nf * (a - b - c * x) * p1 + 2.0 * (nf + a) * (nf + b) * p0) / (c * (1.0 - x * x));
    (p1, d)
}

/// Eigenvalues of the symmetric tridiagonal Jacobi matrix (Golub–Welsch).
fn jacobi_matrix_eigenvalues(n: usize, a: f64, b: f64) -> Vec<f64> {
    let ab = a + b;
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n];
    for (k, dk) in diag.iter_mut().enumerate() {
        let kf = k as f64;
        let c = 2.0 * kf + ab;
        *dk = if k == 0 {
            (b - a) / (ab + 2.0)
        } else {
            (b * b - a * a) / (c * (c + 2.0))
        };
    }
    for k in 1..n {
        let kf = k as f64;
        let c = 2.0 * kf + ab;
        off[k] = if k == 1 {
            (4.0 * (1.0 + a) * (1.0 + b) / (c * c * (c + 1.0))).sqrt()
        } else {
            (4.0 * kf * (kf + a) * (kf + b) * (kf + ab) / (c * c * (c + 1.0) * (c - 1.0))).sqrt()
        };
    }
    tridiagonal_ql(&mut diag, &mut off);
    diag
}

/// Implicit QL iteration for the eigenvalues of a symmetric tridiagonal
/// matrix with diagonal `d` and sub-diagonal `e[1..]`. Eigenvalues replace `d`.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    if n > 0 {
        e[n - 1] = 0.0;
    }
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                break;
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let bb = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * bb;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - bb;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_small() {
        let r = gauss_legendre(2);
        let x = 1.0 / 3f64.sqrt();
        assert!((r.nodes[0] + x).abs() < 1e-15 && (r.nodes[1] - x).abs() < 1e-15);
        assert!((r.weights[0] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn legendre_exactness() {
        for &n in &[5usize, 40, 300] {
            let r = gauss_legendre(n);
            let s: f64 = r.weights.iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "n={n}");
            let deg = (2 * n - 2).min(40);
            let m: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * x.powi(deg as i32)).sum();
            assert!((m - 2.0 / (deg as f64 + 1.0)).abs() < 1e-13, "n={n}");
        }
    }

    #[test]
    fn jacobi_moments() {
        // int (1-x)^a (1+x)^b dx = 2^{a+b+1} B(a+1, b+1)
        let (a, b) = (0.5, -0.5);
        let r = gauss_jacobi(30, a, b);
        let s: f64 = r.weights.iter().sum();
        assert!((s - std::f64::consts::PI).abs() < 1e-13);
        let (a, b) = (2.0, 1.0);
        let r = gauss_jacobi(400, a, b);
        let s: f64 = r.weights.iter().sum();
        assert!((s - 4.0 / 3.0).abs() < 1e-12, "{s}");
        // x^2 moment against weight (1-x^2)^{1/2}: pi/8
        let r = gauss_jacobi(12, 0.5, 0.5);
        let m: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * x * x).sum();
        assert!((m - std::f64::consts::PI / 8.0).abs() < 1e-14);
    }

    #[test]
    fn mapped_interval() {
        let r = gauss_legendre(8).mapped(0.0, 2.0);
        let m: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * x.powi(3)).sum();
        assert!((m - 4.0).abs() < 1e-13);
    }
}
