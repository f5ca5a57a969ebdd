use proptest::prelude::*;
use sphkern::quad::gauss_jacobi;
use sphkern::specfun::{
    digamma, gamma, gauss_2f1, gegenbauer_all, gegenbauer_p, kampe_de_feriet, ln_gamma, pochhammer, z_dim,
    KdfParams, SeriesControl,
};
use sphkern::spheregeom::omega_ratio;

fn ctl() -> SeriesControl {
    SeriesControl::default()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn pochhammer_splits(a in -6.0f64..6.0, m in 0usize..=20, n in 0usize..=20) {
        let whole = pochhammer(a, m + n);
        let parts = pochhammer(a, m) * pochhammer(a + m as f64, n);
        prop_assert!((whole - parts).abs() <= 1e-12 * whole.abs().max(1e-300) || whole == parts);
    }

    #[test]
    fn gamma_matches_statrs(x in 0.05f64..40.0) {
        prop_assert!(rel(gamma(x), statrs::function::gamma::gamma(x)) < 1e-12);
        prop_assert!((ln_gamma(x) - statrs::function::gamma::ln_gamma(x)).abs() < 1e-12 * ln_gamma(x).abs().max(1.0));
        let dg = digamma(x).unwrap();
        prop_assert!((dg - statrs::function::gamma::digamma(x)).abs() < 1e-11 * dg.abs().max(1.0));
    }

    #[test]
    fn gegenbauer_bounded(n in 0usize..=50, d in 2usize..=6, t in -1.0f64..=1.0) {
        let p = gegenbauer_p(n, d, t);
        prop_assert!(p.abs() <= 1.0 + 1e-13);
        prop_assert_eq!(gegenbauer_all(n, d, t)[n], p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn gauss_2f1_symmetric_to_the_bit(a in -3.0f64..3.0, b in -3.0f64..3.0, dc in 0.1f64..4.0, z in -3.0f64..0.98) {
        let c = a.max(b).max(0.0) + dc;
        let f = gauss_2f1(a, b, c, z, &ctl());
        let g = gauss_2f1(b, a, c, z, &ctl());
        match (f, g) {
            (Ok(f), Ok(g)) => prop_assert_eq!(f.to_bits(), g.to_bits()),
            (Err(_), Err(_)) => {}
            _ => prop_assert!(false, "asymmetric failure"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gauss_sum_at_unity(a in -1.5f64..1.5, b in -1.5f64..1.5, excess in 2.5f64..4.0) {
        let c = a + b + excess;
        prop_assume!(c > 0.2);
        let at_one = gauss_2f1(a, b, c, 1.0, &ctl()).unwrap();
        // linear extrapolation of the series from just below 1
        let h = 1e-6;
        let f1 = gauss_2f1(a, b, c, 1.0 - h, &ctl()).unwrap();
        let f2 = gauss_2f1(a, b, c, 1.0 - 2.0 * h, &ctl()).unwrap();
        let extrap = 2.0 * f1 - f2;
        prop_assert!((at_one - extrap).abs() < 1e-11 * at_one.abs().max(1e-3), "{} {}", at_one, extrap);
    }

    #[test]
    fn kdf_empty_block_is_gauss(a in -2.0f64..2.0, b in -2.0f64..2.0, dc in 0.2f64..3.0, x in -0.9f64..0.9) {
        let c = a.max(b).max(0.0) + dc;
        let p = KdfParams::new((vec![a], vec![c]), (vec![b], vec![]), (vec![], vec![])).unwrap();
        let v = kampe_de_feriet(&p, x, 0.0, &ctl()).unwrap();
        let g = gauss_2f1(a, b, c, x, &ctl()).unwrap();
        prop_assert!((v - g).abs() <= 1e-12 * g.abs().max(1e-2));
    }
}

#[test]
fn gegenbauer_orthogonality() {
    for d in 2..=4 {
        let a = d as f64 / 2.0 - 1.0;
        let r = gauss_jacobi(40, a, a);
        for m in 0..=12 {
            for n in 0..=12 {
                let s: f64 = r
                    .nodes
                    .iter()
                    .zip(&r.weights)
                    .map(|(&t, &w)| w * gegenbauer_p(m, d, t) * gegenbauer_p(n, d, t))
                    .sum();
                if m == n {
                    let expected = 1.0 / (omega_ratio(d) * z_dim(d, n));
                    assert!(((s - expected) / expected).abs() < 1e-10, "d={d} n={n}");
                } else {
                    assert!(s.abs() < 1e-12, "d={d} m={m} n={n}: {s}");
                }
            }
        }
    }
}

#[test]
fn kdf_unit_argument_identity() {
    // Integral representation with beta = 1, gamma = 3 and explicit 2F1 values:
    // int_0^1 (1 - t) 2F1(1, 1; 3; t) dt.
    let p = KdfParams::new((vec![1.0], vec![3.0]), (vec![1.0, 1.0], vec![3.0]), (vec![], vec![])).unwrap();
    let series = 0.5 * kampe_de_feriet(&p, 1.0, 0.0, &ctl()).unwrap();
    let r = sphkern::quad::gauss_legendre(80).mapped(0.0, 1.0);
    let quad: f64 = r
        .nodes
        .iter()
        .zip(&r.weights)
        .map(|(&t, &w)| w * (1.0 - t) * gauss_2f1(1.0, 1.0, 3.0, t, &ctl()).unwrap())
        .sum();
    assert!(rel(series, quad) < 1e-10, "{series} {quad}");
}
