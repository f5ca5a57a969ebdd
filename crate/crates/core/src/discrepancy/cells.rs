//! Cubature on S^2 adapted to the great circles (x_j - x_k) . z = 0.
//!
//! Between those circles the sorted order of the x_j . z is fixed, so the
//! exact-in-t cap discrepancy is a polynomial in z on each cell.

use rayon::prelude::*;

use super::quadrature::exact_t_beta1_s2;
use crate::error::{Error, Result};
use crate::quad::gauss_legendre;
use crate::specfun::CompensatedSum;
use crate::spheregeom::PointSet;

type V3 = [f64; 3];

const CLIP_EPS: f64 = 1e-13;
const TRI_ORDER: usize = 20;

fn dot3(a: &V3, b: &V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn unit(v: V3) -> V3 {
    let n = dot3(&v, &v).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

fn det3(a: &V3, b: &V3, c: &V3) -> f64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
}

fn octants() -> Vec<Vec<V3>> {
    let mut out = Vec::with_capacity(8);
    for sx in [1.0, -1.0] {
        for sy in [1.0, -1.0] {
            for sz in [1.0, -1.0] {
                out.push(vec![[sx, 0.0, 0.0], [0.0, sy, 0.0], [0.0, 0.0, sz]]);
            }
        }
    }
    out
}

/// Splits a convex spherical polygon by the plane w . z = 0; `None` when the
/// plane does not cross its interior.
fn clip(poly: &[V3], w: &V3) -> Option<(Vec<V3>, Vec<V3>)> {
    let s: Vec<f64> = poly.iter().map(|v| dot3(w, v)).collect();
    if s.iter().all(|&x| x >= -CLIP_EPS) || s.iter().all(|&x| x <= CLIP_EPS) {
        return None;
    }
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for i in 0..poly.len() {
        let j = (i + 1) % poly.len();
        let (a, b, sa, sb) = (&poly[i], &poly[j], s[i], s[j]);
        if sa >= -CLIP_EPS {
            pos.push(*a);
        }
        if sa <= CLIP_EPS {
            neg.push(*a);
        }
        if (sa > CLIP_EPS && sb < -CLIP_EPS) || (sa < -CLIP_EPS && sb > CLIP_EPS) {
            let (wa, wb) = (sb.abs(), sa.abs());
            let p = unit([wa * a[0] + wb * b[0], wa * a[1] + wb * b[1], wa * a[2] + wb * b[2]]);
            pos.push(p);
            neg.push(p);
        }
    }
    Some((pos, neg))
}

/// Distinct plane normals up to sign.
fn normals(ps: &PointSet) -> Vec<V3> {
    let pts: Vec<V3> = ps.points().iter().map(|p| [p.coords()[0], p.coords()[1], p.coords()[2]]).collect();
    let mut out: Vec<V3> = Vec::new();
    for j in 0..pts.len() {
        for k in j + 1..pts.len() {
            let w = [pts[j][0] - pts[k][0], pts[j][1] - pts[k][1], pts[j][2] - pts[k][2]];
            if dot3(&w, &w).sqrt() < 1e-12 {
                continue;
            }
            let mut w = unit(w);
            let lead = w.iter().copied().find(|c| c.abs() > 1e-12).unwrap_or(1.0);
            if lead < 0.0 {
                w = [-w[0], -w[1], -w[2]];
            }
            if !out.iter().any(|o| (0..3).all(|i| (o[i] - w[i]).abs() < 1e-12)) {
                out.push(w);
            }
        }
    }
    out
}

fn arrangement(ps: &PointSet) -> Vec<Vec<V3>> {
    let mut cells = octants();
    for w in normals(ps) {
        let mut next = Vec::with_capacity(cells.len() + 16);
        for c in cells {
            match clip(&c, &w) {
                None => next.push(c),
                Some((p, n)) => {
                    next.extend([p, n].into_iter().filter(|q| q.len() >= 3));
                }
            }
        }
        cells = next;
    }
    cells
}

/// Collapsed Gauss rule on the unit triangle: barycentric (b, c) and weight.
fn triangle_rule() -> Vec<(f64, f64, f64)> {
    let g = gauss_legendre(TRI_ORDER).mapped(0.0, 1.0);
    let mut out = Vec::with_capacity(TRI_ORDER * TRI_ORDER);
    for (&x, &wx) in g.nodes.iter().zip(&g.weights) {
        for (&y, &wy) in g.nodes.iter().zip(&g.weights) {
            out.push((x - x * y, x * y, wx * wy * x));
        }
    }
    out
}

/// Integral over S^2 (normalized) of f, exact up to the cell rule for f
/// smooth on every cell of the arrangement.
fn integrate_cells(cells: &[Vec<V3>], f: impl Fn(&V3) -> f64 + Sync) -> f64 {
    let rule = triangle_rule();
    let parts: Vec<f64> = cells
        .par_iter()
        .map(|poly| {
            let mut acc = CompensatedSum::new();
            let a = &poly[0];
            for k in 1..poly.len() - 1 {
                let (b, c) = (&poly[k], &poly[k + 1]);
                let det = det3(a, b, c).abs();
                for &(s, t, w) in &rule {
                    let p = [
                        a[0] + s * (b[0] - a[0]) + t * (c[0] - a[0]),
                        a[1] + s * (b[1] - a[1]) + t * (c[1] - a[1]),
                        a[2] + s * (b[2] - a[2]) + t * (c[2] - a[2]),
                    ];
                    let r = dot3(&p, &p).sqrt();
                    acc.add(w * det / (r * r * r) * f(&[p[0] / r, p[1] / r, p[2] / r]));
                }
            }
            acc.value()
        })
        .collect();
    parts.into_iter().collect::<CompensatedSum>().value() / (4.0 * std::f64::consts::PI)
}

/// Squared L2 cap discrepancy at beta = 1 on S^2, integrated exactly in t
/// and cell-wise in z.
pub fn cap_discrepancy_sq_exact(ps: &PointSet) -> Result<f64> {
    if ps.dim() != 2 {
        return Err(Error::domain("the exact cap discrepancy is implemented on S^2 only"));
    }
    let pts: Vec<V3> = ps.points().iter().map(|p| [p.coords()[0], p.coords()[1], p.coords()[2]]).collect();
    let cells = arrangement(ps);
    Ok(integrate_cells(&cells, |z| {
        let mut us: Vec<f64> = pts.iter().map(|x| dot3(x, z)).collect();
        us.sort_by(|a, b| a.partial_cmp(b).unwrap());
        exact_t_beta1_s2(&us)
    }))
}
