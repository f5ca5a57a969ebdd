use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spheregeom::generate_gaussian;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n_samples: usize,
    pub seed: u64,
}

/// Mean of f(x.y) over n independent uniform pairs (x, y) on S^d.
pub fn mc_pair_integral(d: usize, f: impl Fn(f64) -> f64, n: usize, seed: u64) -> Result<McEstimate> {
    if n < 1000 {
        return Err(Error::Precondition("Monte Carlo needs at least 1000 samples".into()));
    }
    let mut g = generate_gaussian(seed);
    let (mut mean, mut m2) = (0.0, 0.0);
    for i in 0..n {
        let x = g.point(d);
        let y = g.point(d);
        let v = f(x.dot(&y).clamp(-1.0, 1.0));
        let delta = v - mean;
        mean += delta / (i + 1) as f64;
        m2 += delta * (v - mean);
    }
    let var = m2 / (n - 1) as f64;
    Ok(McEstimate {
        mean,
        std_error: (var / n as f64).sqrt(),
        n_samples: n,
        seed,
    })
}
