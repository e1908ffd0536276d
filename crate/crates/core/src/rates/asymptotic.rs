//! Closed asymptotic forms and the point-scatterer limit.

use num_complex::Complex64;

use super::jint::j_closed;
use super::{require_outside, EvalPoint, Kind, Orientation};
use crate::mie::{amplitude_ladder, dipole_ratio, SphereMedium};
use crate::specfun::MAX_ORDER;
use crate::{Error, Result};

/// `sum_l i^l l(l+1) (B^e_l - B^m_l)`.
pub fn far_amplitude_sum(medium: &SphereMedium) -> Result<Complex64> {
    if medium.is_dipole_limit() {
        return Err(Error::domain(
            "far_amplitude_sum",
            "q must be positive; the q -> 0 limit is handled separately",
        ));
    }
    let lmax = ((30.0 + 1.5 * medium.q).ceil() as usize).min(MAX_ORDER - 2);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut quiet = 0;
    for a in amplitude_ladder(lmax, medium)? {
        let ll1 = (a.ell * (a.ell + 1)) as f64;
        let t = (a.electric - a.magnetic)
            .scale(ll1)
            .rotate_i(a.ell as i64)
            .to_complex_lossy();
        sum += t;
        quiet = if t.norm() <= 1e-17 * sum.norm() {
            quiet + 1
        } else {
            0
        };
        if quiet >= 3 {
            break;
        }
    }
    Ok(sum)
}

fn orientation_factor(orientation: Orientation, zeta: f64) -> Complex64 {
    match orientation {
        Orientation::Perpendicular => Complex64::new(1.0, 0.0),
        Orientation::Parallel => Complex64::new(0.0, 1.0 / zeta),
    }
}

/// Large-distance form
/// `f = -(3/(2 q^3 zeta)) Im[sum_l i^l l(l+1)(B^e_l - B^m_l) e^{2i zeta}]`,
/// with an extra `i/zeta` inside for the parallel orientation. For `q = 0`
/// this is `(3/zeta) Im[(eps-1)/(eps+2) e^{2i zeta}]` (same extra factor).
pub fn f_asymptotic_far(
    point: EvalPoint,
    medium: &SphereMedium,
    orientation: Orientation,
) -> Result<f64> {
    let zeta = point.zeta_a;
    let phase = Complex64::new(0.0, 2.0 * zeta).exp() * orientation_factor(orientation, zeta);
    if medium.is_dipole_limit() {
        return Ok(3.0 / zeta * (dipole_ratio(medium.epsilon) * phase).im);
    }
    let q3 = medium.q * medium.q * medium.q;
    Ok(-3.0 / (2.0 * q3 * zeta) * (far_amplitude_sum(medium)? * phase).im)
}

/// Contact form `f_perp = -(3/(4 q^2 (zeta - q))) Im[(eps-1)/(eps+1)]`;
/// `f_par` is twice that. For `q = 0` see [`dipole_limit_near`].
pub fn f_asymptotic_near(
    point: EvalPoint,
    medium: &SphereMedium,
    orientation: Orientation,
) -> Result<f64> {
    if medium.is_dipole_limit() {
        return dipole_limit_near(point, medium.epsilon, orientation);
    }
    let (zeta, q) = (point.zeta_a, medium.q);
    require_outside(zeta, q)?;
    let eps = medium.epsilon;
    let perp = -3.0 / (4.0 * q * q * (zeta - q)) * ((eps - 1.0) / (eps + 1.0)).im;
    Ok(match orientation {
        Orientation::Perpendicular => perp,
        Orientation::Parallel => 2.0 * perp,
    })
}

/// Short-distance form of the point-scatterer limit:
/// `-(3/2) Im[(eps-1)/(eps+2)] / zeta^3` (perpendicular), twice that (parallel).
pub fn dipole_limit_near(
    point: EvalPoint,
    epsilon: Complex64,
    orientation: Orientation,
) -> Result<f64> {
    let zeta = point.zeta_a;
    let perp = -1.5 * dipole_ratio(epsilon).im / (zeta * zeta * zeta);
    Ok(match orientation {
        Orientation::Perpendicular => perp,
        Orientation::Parallel => 2.0 * perp,
    })
}

/// `q -> 0` limit, where only `B^e_1 = i q^3 (eps-1)/(eps+2)` survives:
/// `f = 6 Im[(eps-1)/(eps+2) J^e_1(zeta)]`.
pub fn dipole_limit_f(
    point: EvalPoint,
    epsilon: Complex64,
    orientation: Orientation,
) -> Result<f64> {
    let j = j_closed(1, point.zeta_a, orientation, Kind::Electric)?;
    Ok(6.0 * (dipole_ratio(epsilon) * j).im)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pt(z: f64) -> EvalPoint {
        EvalPoint::new(z).unwrap()
    }

    #[test]
    fn exact_complex_ratios() {
        // (0.5+0.5i)/(3.5+0.5i) = 0.16 + 0.12i and (0.5+0.5i)/(2.5+0.5i) = (1.5 + i)/6.5
        let r2 = dipole_ratio(c(1.5, 0.5));
        assert!((r2 - c(0.16, 0.12)).norm() < 1e-16);
        let r1 = c(0.5, 0.5) / c(2.5, 0.5);
        assert!((r1 - c(1.5 / 6.5, 1.0 / 6.5)).norm() < 1e-16);
    }

    #[test]
    fn near_form_values() {
        let m = SphereMedium::new(0.5, c(1.5, 0.5)).unwrap();
        let perp = f_asymptotic_near(pt(0.51), &m, Orientation::Perpendicular).unwrap();
        let expected = -3.0 / (4.0 * 0.25 * 0.01) / 6.5;
        assert!((perp - expected).abs() < 1e-12 * expected.abs());
        let par = f_asymptotic_near(pt(0.51), &m, Orientation::Parallel).unwrap();
        assert_eq!(par / perp, 2.0);
        let lossless = SphereMedium::new(0.5, c(1.5, 0.0)).unwrap();
        assert_eq!(
            f_asymptotic_near(pt(0.51), &lossless, Orientation::Perpendicular).unwrap(),
            0.0
        );
    }

    #[test]
    fn dipole_limit_near_origin() {
        let eps = c(1.5, 0.5);
        let z: f64 = 0.02;
        let f = dipole_limit_f(pt(z), eps, Orientation::Perpendicular).unwrap();
        assert!((f * z.powi(3) / -0.18 - 1.0).abs() < 0.03);
        let f = dipole_limit_f(pt(1e-3), c(1.5, 0.0), Orientation::Perpendicular).unwrap();
        assert!(f.abs() * 1e-9 < 1e-3);
    }

    #[test]
    fn parallel_far_form_decays_faster() {
        let m = SphereMedium::new(0.5, c(1.5, 0.5)).unwrap();
        for z in [5.0, 20.0, 80.0] {
            let p = f_asymptotic_far(pt(z), &m, Orientation::Perpendicular).unwrap();
            let s = f_asymptotic_far(pt(z), &m, Orientation::Parallel).unwrap();
            let bound = 3.0 / (2.0 * 0.125) * far_amplitude_sum(&m).unwrap().norm();
            assert!(p.abs() * z <= bound * (1.0 + 1e-12));
            assert!(s.abs() * z * z <= bound * (1.0 + 1e-12));
        }
    }

    #[test]
    fn point_scatterer_far_form_is_the_small_sphere_limit() {
        let eps = c(1.5, 0.5);
        let z = 7.0;
        let small = SphereMedium::new(1e-3, eps).unwrap();
        let point = SphereMedium::new(0.0, eps).unwrap();
        for o in Orientation::ALL {
            let a = f_asymptotic_far(pt(z), &small, o).unwrap();
            let b = f_asymptotic_far(pt(z), &point, o).unwrap();
            assert!((a - b).abs() < 1e-4 * b.abs(), "{o}: {a} {b}");
        }
    }
}
