use nalgebra::DMatrix;
use sphkern::kernel::{expansion_coeffs, kernel_eval, kernel_mean, SmoothnessParam};
use sphkern::oracle::kernel_def_quadrature;
use sphkern::quad::gauss_legendre;
use sphkern::specfun::SeriesControl;
use sphkern::spheregeom::random_uniform;

fn ctl() -> SeriesControl {
    SeriesControl::default()
}

#[test]
fn gram_matrices_are_positive_semidefinite() {
    for &beta in &[0.8, 1.0, 1.5, 2.0, 3.0] {
        let sp = SmoothnessParam::new(beta).unwrap();
        for seed in 0..50 {
            let ps = random_uniform(2, 8, seed).unwrap();
            let pts = ps.points();
            let g = DMatrix::from_fn(8, 8, |i, j| {
                kernel_eval(2, &sp, pts[i].dot(&pts[j]).clamp(-1.0, 1.0), &ctl()).unwrap().value
            });
            let min = g.symmetric_eigenvalues().min();
            assert!(min > -1e-9, "beta={beta} seed={seed}: {min}");
        }
    }
}

#[test]
fn mean_consistency() {
    for &beta in &[0.8, 1.0, 1.3, 1.5, 2.0, 2.7] {
        let sp = SmoothnessParam::new(beta).unwrap();
        let m = kernel_mean(2, &sp, &ctl()).unwrap();
        let table = expansion_coeffs(2, &sp, 4, &ctl()).unwrap();
        assert!((table.lambda[0] - m).abs() < 1e-8, "beta={beta}");
        // d = 2: the zonal weight is 1/2 dt; split at 1 - 2^-k to follow the endpoint power
        let mut q = 0.0;
        let mut a = -1.0;
        for k in 1..=40 {
            let b = 1.0 - 2f64.powi(-k);
            let r = gauss_legendre(40).mapped(a, b);
            q += r.nodes.iter().zip(&r.weights).map(|(&t, &w)| w * kernel_eval(2, &sp, t, &ctl()).unwrap().value).sum::<f64>();
            a = b;
        }
        q /= 2.0;
        assert!((q - m).abs() < 1e-8, "beta={beta}: {q} {m}");
    }
}

#[test]
fn oracle_refinement_converges() {
    let target = kernel_eval(2, &SmoothnessParam::new(2.5).unwrap(), 0.2, &ctl()).unwrap().value;
    let errs: Vec<f64> = [4usize, 8, 16]
        .iter()
        .map(|&n| (kernel_def_quadrature(2, 2.5, 0.2, n, 1.0).unwrap() - target).abs())
        .collect();
    assert!(errs[2] < 1e-6, "{errs:?}");
    assert!(errs[1] <= errs[0] / 4.0 || errs[1] < 1e-13, "{errs:?}");
}

#[test]
fn oracle_matches_in_higher_dimensions() {
    for &(d, beta) in &[(3usize, 1.5), (3, 0.8), (4, 2.2)] {
        let sp = SmoothnessParam::new(beta).unwrap();
        for &t in &[-0.6, 0.4] {
            let k = kernel_eval(d, &sp, t, &ctl()).unwrap().value;
            let q = kernel_def_quadrature(d, beta, t, 64, 1e-4).unwrap();
            assert!(((q - k) / k).abs() < 1e-5, "d={d} beta={beta} t={t}: {q} {k}");
        }
    }
}
