use proptest::prelude::*;
use sphkern::discrepancy::{design_residual, wce_kernel, DesignCertificate, DiscrepancyReport};
use sphkern::kernel::SmoothnessParam;
use sphkern::specfun::SeriesControl;
use sphkern::spheregeom::{named_design, random_uniform, PointSet};

fn ctl() -> SeriesControl {
    SeriesControl::default()
}

/// Rotation of R^3 from a unit quaternion.
fn rotation(q: [f64; 4]) -> Vec<f64> {
    let n = q.iter().map(|v| v * v).sum::<f64>().sqrt();
    let [w, x, y, z] = q.map(|v| v / n);
    vec![
        1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - w * z), 2.0 * (x * z + w * y),
        2.0 * (x * y + w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - w * x),
        2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y),
    ]
}

fn quaternion() -> impl Strategy<Value = [f64; 4]> {
    prop::array::uniform4(-1.0f64..1.0).prop_filter("nonzero", |q| q.iter().map(|v| v * v).sum::<f64>() > 1e-2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn wce_is_rotation_invariant(q in quaternion(), seed in 0u64..1000, beta in prop::sample::select(vec![0.8, 1.0, 1.5, 2.0])) {
        let ps = random_uniform(2, 15, seed).unwrap();
        let rot = ps.transformed(&rotation(q)).unwrap();
        let sp = SmoothnessParam::new(beta).unwrap();
        let a = wce_kernel(&ps, &sp, &ctl()).unwrap().wce_kernel;
        let b = wce_kernel(&rot, &sp, &ctl()).unwrap().wce_kernel;
        prop_assert!((a.powi(2) - b.powi(2)).abs() < 1e-10);
    }

    #[test]
    fn design_residual_invariances(q in quaternion(), shift in 1usize..12) {
        let ico = named_design("icosahedron").unwrap();
        let base = design_residual(&ico, 8).unwrap();
        let rot = design_residual(&ico.transformed(&rotation(q)).unwrap(), 8).unwrap();
        let mut pts = ico.points().to_vec();
        pts.rotate_left(shift);
        let perm = design_residual(&PointSet::new(2, pts, "perm").unwrap(), 8).unwrap();
        for i in 0..8 {
            prop_assert!((base.residuals[i] - rot.residuals[i]).abs() < 1e-13);
            prop_assert!((base.residuals[i] - perm.residuals[i]).abs() < 1e-13);
        }
    }
}

#[test]
fn wce_decreases_in_median() {
    let sp = SmoothnessParam::new(1.0).unwrap();
    let median = |n: usize| {
        let mut v: Vec<f64> = (0..10)
            .map(|s| wce_kernel(&random_uniform(2, n, s).unwrap(), &sp, &ctl()).unwrap().wce_kernel)
            .collect();
        v.sort_by(f64::total_cmp);
        v[5]
    };
    let m: Vec<f64> = [25, 50, 100, 200].iter().map(|&n| median(n)).collect();
    assert!(m.windows(2).all(|w| w[1] < w[0]), "{m:?}");
}

#[test]
fn reports_round_trip_through_json() {
    let sp = SmoothnessParam::new(1.5).unwrap();
    let r = wce_kernel(&named_design("cube").unwrap(), &sp, &ctl()).unwrap().with_quadrature(0.1);
    let s = serde_json::to_string(&r).unwrap();
    assert!(s.contains("\"wce_kernel\"") && s.contains("\"identity_gap\""));
    let back: DiscrepancyReport = serde_json::from_str(&s).unwrap();
    assert_eq!(back, r);
    let c = design_residual(&named_design("cube").unwrap(), 4).unwrap();
    let back: DesignCertificate = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
    assert_eq!(back, c);
}
