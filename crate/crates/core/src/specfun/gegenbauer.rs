//! Normalized Gegenbauer polynomials on S^d.

/// P_n^{(d)}(t), normalized so that P_n^{(d)}(1) = 1.
pub fn gegenbauer_p(n: usize, d: usize, t: f64) -> f64 {
    gegenbauer_all(n, d, t)[n]
}

/// P_0^{(d)}(t), ..., P_n^{(d)}(t).
pub fn gegenbauer_all(n: usize, d: usize, t: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    if t == 1.0 {
        out.resize(n + 1, 1.0);
        return out;
    }
    if t == -1.0 {
        out.extend((0..=n).map(|k| if k % 2 == 0 { 1.0 } else { -1.0 }));
        return out;
    }
    let df = d as f64;
    out.push(1.0);
    if n == 0 {
        return out;
    }
    out.push(t);
    for k in 1..n {
        let kf = k as f64;
        let den = kf + df - 1.0;
        let next = (2.0 * kf + df - 1.0) / den * t * out[k] - kf / den * out[k - 1];
        out.push(next);
    }
    out
}

/// Dimension of the space of degree-n spherical harmonics on S^d.
pub fn z_dim(d: usize, n: usize) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let df = d as f64;
    // (2n + d - 1) (d - 1)_n / ((d - 1) n!)
    let mut r = (2.0 * n as f64 + df - 1.0) / (df - 1.0);
    for k in 1..=n {
        r *= (df - 2.0 + k as f64) / k as f64;
    }
    if r < 9.0e15 {
        r.round()
    } else {
        r
    }
}
