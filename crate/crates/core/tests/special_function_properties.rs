use emrate::hankel_integrals::{i_closed, IntegralKey};
use emrate::mie::SphereMedium;
use emrate::rates::{series_f, EvalPoint, Orientation, SeriesOptions};
use emrate::specfun::{sph_bessel_j, sph_bessel_y, sph_hankel1};
use num_complex::Complex64;
use proptest::prelude::*;

fn argument() -> impl Strategy<Value = Complex64> {
    (0.1f64..50.0, -5.0f64..5.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn close(a: Complex64, b: Complex64, scale: f64, tol: f64) -> bool {
    (a - b).norm() <= tol * scale
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn wronskian(ell in 1usize..60, z in argument()) {
        let w = sph_bessel_j(ell, z).unwrap() * sph_bessel_y(ell - 1, z).unwrap()
            - sph_bessel_j(ell - 1, z).unwrap() * sph_bessel_y(ell, z).unwrap();
        prop_assert!((w * z * z - 1.0).norm() < 1e-9, "W z^2 = {}", w * z * z);
    }

    #[test]
    fn hankel_is_j_plus_i_y(ell in 0usize..60, z in argument()) {
        let j = sph_bessel_j(ell, z).unwrap();
        let y = sph_bessel_y(ell, z).unwrap();
        let h = sph_hankel1(ell, z).unwrap();
        let scale = j.norm().max(y.norm());
        prop_assert!(close(h, j + Complex64::i() * y, scale, 1e-10));
    }

    #[test]
    fn three_term_recurrence(ell in 1usize..60, z in argument()) {
        let factor = (2 * ell + 1) as f64 / z;
        for f in [sph_bessel_j, sph_bessel_y, sph_hankel1] {
            let lhs = f(ell - 1, z).unwrap() + f(ell + 1, z).unwrap();
            let rhs = f(ell, z).unwrap() * factor;
            let scale = f(ell - 1, z).unwrap().norm().max(f(ell + 1, z).unwrap().norm());
            prop_assert!(close(lhs, rhs, scale, 1e-11), "l = {ell}, z = {z}");
        }
    }

    #[test]
    fn parity_and_conjugation(ell in 0usize..40, z in argument()) {
        let sign = if ell % 2 == 0 { 1.0 } else { -1.0 };
        let j = sph_bessel_j(ell, z).unwrap();
        prop_assert!(close(sph_bessel_j(ell, -z).unwrap(), j * sign, j.norm(), 1e-12));
        prop_assert!(close(sph_bessel_j(ell, z.conj()).unwrap(), j.conj(), j.norm(), 1e-12));
        let y = sph_bessel_y(ell, z).unwrap();
        prop_assert!(close(sph_bessel_y(ell, z.conj()).unwrap(), y.conj(), y.norm(), 1e-12));
    }

    #[test]
    fn integrals_are_symmetric_in_the_orders(a in 0usize..12, b in 0usize..12, zeta in 0.3f64..20.0) {
        prop_assume!(a != b);
        let x = i_closed(IntegralKey::new(a, b, 0), zeta).unwrap();
        let y = i_closed(IntegralKey::new(b, a, 0), zeta).unwrap();
        prop_assert!(close(x, y, x.norm(), 1e-12));
    }

    #[test]
    fn unit_permittivity_gives_zero(q in 0.0f64..3.0, gap in 1e-3f64..10.0, par in any::<bool>()) {
        let medium = SphereMedium::new(q, Complex64::new(1.0, 0.0)).unwrap();
        let o = if par { Orientation::Parallel } else { Orientation::Perpendicular };
        let r = series_f(EvalPoint::new(q + gap).unwrap(), &medium, o, &SeriesOptions::default()).unwrap();
        prop_assert_eq!(r.f, 0.0);
        prop_assert!(r.converged);
    }
}
