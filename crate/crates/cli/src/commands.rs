use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use sphkern::discrepancy::{
    cap_discrepancy_sq_exact, design_residual_with_tol, stolarsky_check, wce_kernel, wce_quadrature,
    ClassicalDecomposition,
};
use sphkern::kernel::{coeff_asymptotic_check, expansion_coeffs, kernel_eval, kernel_mean, SmoothnessParam};
use sphkern::oracle::{kernel_def_quadrature, SphereCapRule};
use sphkern::specfun::SeriesControl;
use sphkern::spheregeom::{
    c_d_const, fibonacci_sphere, load_pointset, named_design, random_uniform, PointSet, SpherePoint,
};
use sphkern::{Error, Result};

use crate::args::Source;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KernelRecord {
    pub d: usize,
    pub beta: f64,
    pub inner: f64,
    pub value: f64,
    pub branch: String,
    pub terms_used: usize,
    pub oracle: Option<f64>,
    pub oracle_gap: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InvarianceRecord {
    pub point_set: String,
    pub n_points: usize,
    pub d: usize,
    pub beta: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    pub classical: Option<ClassicalRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassicalRecord {
    pub identity: String,
    pub rule: ClassicalDecomposition,
    /// Cap discrepancy integrated exactly in t and cell-wise in z (S^2 only).
    pub exact_residual: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeanRecord {
    pub d: usize,
    pub beta: f64,
    pub kernel_mean: f64,
}

fn ctl() -> SeriesControl {
    SeriesControl::default()
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

fn parse_count(s: &str) -> Result<usize> {
    s.parse().map_err(|_| usage(format!("bad point count `{s}`")))
}

pub fn load_source(src: &Source) -> Result<PointSet> {
    match (&src.input, &src.gen) {
        (Some(path), _) => {
            if !path.exists() {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("cannot read {}", path.display()),
                });
            }
            load_pointset(path)
        }
        (None, Some(spec)) => match spec.split_once(':') {
            Some(("random", n)) => random_uniform(src.d, parse_count(n)?, src.seed),
            Some(("fibonacci", n)) => fibonacci_sphere(parse_count(n)?),
            Some(("named", name)) => named_design(name),
            _ => Err(usage(format!("unknown generator `{spec}`; use random:N, fibonacci:N or named:<name>"))),
        },
        (None, None) => Err(usage("give a point set with --in <path> or --gen <spec>")),
    }
}

fn parse_point(s: &str) -> Result<SpherePoint> {
    let coords = s
        .split(',')
        .map(|c| c.trim().parse::<f64>().map_err(|_| usage(format!("bad coordinate `{c}`"))))
        .collect::<Result<Vec<_>>>()?;
    SpherePoint::new(coords)
}

#[allow(clippy::too_many_arguments)]
pub fn kernel(
    d: usize,
    beta: f64,
    inner: Option<f64>,
    x: Option<&str>,
    y: Option<&str>,
    oracle: bool,
    res: usize,
    tol: f64,
) -> Result<Value> {
    let sp = SmoothnessParam::new(beta)?;
    let inner = match (inner, x, y) {
        (Some(t), _, _) => t,
        (None, Some(x), Some(y)) => {
            let (p, q) = (parse_point(x)?, parse_point(y)?);
            if p.dim() != d || q.dim() != d {
                return Err(usage(format!("points must have {} coordinates", d + 1)));
            }
            p.dot(&q).clamp(-1.0, 1.0)
        }
        _ => return Err(usage("give --inner or both --x and --y")),
    };
    let kv = kernel_eval(d, &sp, inner, &ctl())?;
    let (oracle_value, oracle_gap) = if oracle {
        let q = kernel_def_quadrature(d, beta, inner, res, tol)?;
        (Some(q), Some((q - kv.value).abs()))
    } else {
        (None, None)
    };
    let rec = KernelRecord {
        d,
        beta,
        inner,
        value: kv.value,
        branch: serde_json::to_value(kv.branch_used)
            .ok()
            .and_then(|b| b.as_str().map(String::from))
            .unwrap_or_default(),
        terms_used: kv.terms_used,
        oracle: oracle_value,
        oracle_gap,
    };
    Ok(serde_json::to_value(rec).expect("serializable"))
}

pub fn wce(src: &Source, beta: f64, quadrature: Option<usize>, t_nodes: usize) -> Result<Value> {
    let sp = SmoothnessParam::new(beta)?;
    let ps = load_source(src)?;
    let mut report = wce_kernel(&ps, &sp, &ctl())?;
    if let Some(res) = quadrature {
        let rule = SphereCapRule::new(ps.dim(), res, t_nodes)?;
        report = report.with_quadrature(wce_quadrature(&ps, beta, &rule)?);
    }
    let mut v = serde_json::to_value(&report).expect("serializable");
    v["point_set"] = json!(ps.label);
    Ok(v)
}

pub fn invariance(src: &Source, beta: f64, res: usize, t_nodes: usize) -> Result<Value> {
    let sp = SmoothnessParam::new(beta)?;
    let ps = load_source(src)?;
    let rule = SphereCapRule::new(ps.dim(), res, t_nodes)?;
    let r = stolarsky_check(&ps, &sp, &rule, &ctl())?;
    let classical = match r.classical {
        Some(c) => {
            let exact_residual = if ps.dim() == 2 {
                let sq = cap_discrepancy_sq_exact(&ps)?;
                Some(c.distance_average + sq / c_d_const(2) - c.v1)
            } else {
                None
            };
            Some(ClassicalRecord {
                identity: "dist_avg + (1/C_d)*D^2 = V_1".into(),
                rule: c,
                exact_residual,
            })
        }
        None => None,
    };
    let rec = InvarianceRecord {
        point_set: ps.label.clone(),
        n_points: ps.len(),
        d: ps.dim(),
        beta,
        lhs: r.lhs,
        rhs: r.rhs,
        gap: r.gap,
        classical,
    };
    Ok(serde_json::to_value(rec).expect("serializable"))
}

pub fn design(src: &Source, t_max: usize, tol: f64) -> Result<Value> {
    let ps = load_source(src)?;
    let cert = design_residual_with_tol(&ps, t_max, tol)?;
    let mut v = serde_json::to_value(&cert).expect("serializable");
    v["point_set"] = json!(ps.label);
    v["strength"] = json!(cert.strength());
    Ok(v)
}

pub fn expand(d: usize, beta: f64, k: usize) -> Result<Value> {
    let sp = SmoothnessParam::new(beta)?;
    let table = expansion_coeffs(d, &sp, k, &ctl())?;
    let spread = coeff_asymptotic_check(&table).ok();
    let rows: Vec<Value> = table
        .lambda
        .iter()
        .zip(&table.parts)
        .enumerate()
        .map(|(n, (l, p))| json!({"k": n, "lambda": l, "smooth": p.smooth, "distance": p.distance, "log": p.log}))
        .collect();
    Ok(json!({
        "d": d,
        "beta": beta,
        "s": table.s,
        "all_positive": table.lambda.iter().all(|&l| l > 0.0),
        "decay_spread": spread,
        "coefficients": rows,
    }))
}

pub fn mean(d: usize, beta: f64) -> Result<Value> {
    let sp = SmoothnessParam::new(beta)?;
    let rec = MeanRecord {
        d,
        beta,
        kernel_mean: kernel_mean(d, &sp, &ctl())?,
    };
    Ok(serde_json::to_value(rec).expect("serializable"))
}
