use rand_xoshiro::rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use super::{PointSet, SpherePoint};
use crate::error::{Error, Result};

pub const NAMED_DESIGNS: [&str; 4] = ["octahedron", "cube", "icosahedron", "dodecahedron"];

/// Standard normal stream: SplitMix64 uniforms fed through Box–Muller.
pub(crate) struct Gaussian {
    rng: SplitMix64,
    spare: Option<f64>,
}

impl Gaussian {
    pub(crate) fn new(seed: u64) -> Self {
        Self {
            rng: SplitMix64::seed_from_u64(seed),
            spare: None,
        }
    }

    /// Uniform on [0, 1) with 53 random bits.
    pub(crate) fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub(crate) fn sample(&mut self) -> f64 {
        if let Some(v) = self.spare.take() {
            return v;
        }
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let th = 2.0 * std::f64::consts::PI * u2;
        self.spare = Some(r * th.sin());
        r * th.cos()
    }

    pub(crate) fn point(&mut self, d: usize) -> SpherePoint {
        loop {
            let v: Vec<f64> = (0..=d).map(|_| self.sample()).collect();
            if let Ok(p) = SpherePoint::new(v) {
                return p;
            }
        }
    }
}

/// n i.i.d. uniform points on S^d.
pub fn random_uniform(d: usize, n: usize, seed: u64) -> Result<PointSet> {
    if n == 0 {
        return Err(Error::domain("need at least one point"));
    }
    let mut g = Gaussian::new(seed);
    let points = (0..n).map(|_| g.point(d)).collect();
    PointSet::new(d, points, format!("random:{n}:seed={seed}"))
}

/// Spherical Fibonacci lattice with n points on S^2.
pub fn fibonacci_sphere(n: usize) -> Result<PointSet> {
    if n == 0 {
        return Err(Error::domain("need at least one point"));
    }
    let golden_conj = (5f64.sqrt() - 1.0) / 2.0;
    let points = (0..n)
        .map(|j| {
            let z = 1.0 - (2.0 * j as f64 + 1.0) / n as f64;
            let phi = 2.0 * std::f64::consts::PI * ((j as f64 * golden_conj) % 1.0);
            let r = (1.0 - z * z).max(0.0).sqrt();
            SpherePoint::new(vec![r * phi.cos(), r * phi.sin(), z])
        })
        .collect::<Result<Vec<_>>>()?;
    PointSet::new(2, points, format!("fibonacci:{n}"))
}

fn signs(v: &[f64]) -> Vec<Vec<f64>> {
    // every sign pattern over the nonzero entries
    let mut out = vec![Vec::new()];
    for &x in v {
        out = out
            .into_iter()
            .flat_map(|p: Vec<f64>| {
                if x == 0.0 {
                    vec![[p.as_slice(), &[0.0]].concat()]
                } else {
                    vec![[p.as_slice(), &[x]].concat(), [p.as_slice(), &[-x]].concat()]
                }
            })
            .collect();
    }
    out
}

fn cyclic(v: [f64; 3]) -> Vec<Vec<f64>> {
    (0..3)
        .flat_map(|s| signs(&[v[s % 3], v[(s + 1) % 3], v[(s + 2) % 3]]))
        .collect()
}

/// Vertex sets of the regular polyhedra on S^2.
pub fn named_design(name: &str) -> Result<PointSet> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let raw: Vec<Vec<f64>> = match name {
        "octahedron" => cyclic([1.0, 0.0, 0.0]),
        "cube" => signs(&[1.0, 1.0, 1.0]),
        "icosahedron" => cyclic([0.0, 1.0, phi]),
        "dodecahedron" => {
            let mut v = signs(&[1.0, 1.0, 1.0]);
            v.extend(cyclic([0.0, 1.0 / phi, phi]));
            v
        }
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    let points = raw.into_iter().map(SpherePoint::new).collect::<Result<Vec<_>>>()?;
    PointSet::new(2, points, name)
}
