//! The distance integrals `J^p_l` in closed form, reassembled from `I`
//! integrals, and at large distance.

use num_complex::Complex64;

use super::weights::{d_weight, h_weight};
use super::{Kind, Orientation};
use crate::hankel_integrals::{IntegralKey, IntegralSource};
use crate::scaled::Scaled;
use crate::specfun::{exp_integral_e1_neg2i, HankelLadder};
use crate::{Error, Result};

/// Hankel ladder, `E1(-2i zeta)` and the running sum
/// `S_l = h_0^2/2 + sum_{k=1}^{l} (2k+1)/(2k(k+1)) h_k^2`, shared by every
/// `J` at one `zeta`.
#[derive(Debug, Clone)]
pub struct JContext {
    zeta: f64,
    ladder: HankelLadder,
    e1: Complex64,
    running: Vec<Scaled>,
}

impl JContext {
    pub fn new(lmax: usize, zeta: f64) -> Result<Self> {
        if !(zeta > 0.0 && zeta.is_finite()) {
            return Err(Error::domain(
                "j_closed",
                format!("zeta = {zeta} must be positive"),
            ));
        }
        let ladder = HankelLadder::new(lmax.max(1), Complex64::new(zeta, 0.0))?;
        let e1 = exp_integral_e1_neg2i(zeta)?;
        let mut running = Vec::with_capacity(lmax + 1);
        let mut s = ladder.get(0).square().scale(0.5);
        running.push(s);
        for k in 1..=lmax {
            let kf = k as f64;
            s = s + ladder
                .get(k as i64)
                .square()
                .scale((2.0 * kf + 1.0) / (2.0 * kf * (kf + 1.0)));
            running.push(s);
        }
        Ok(JContext {
            zeta,
            ladder,
            e1,
            running,
        })
    }

    pub fn zeta(&self) -> f64 {
        self.zeta
    }

    pub fn lmax(&self) -> usize {
        self.running.len() - 1
    }

    /// `J^p_l` in scaled form.
    pub fn j_scaled(&self, ell: usize, orientation: Orientation, kind: Kind) -> Result<Scaled> {
        if ell == 0 || ell > self.lmax() {
            return Err(Error::domain(
                "j_closed",
                format!("order {ell} outside 1..={}", self.lmax()),
            ));
        }
        let z = self.zeta;
        let (z2, z3) = (z * z, z * z * z);
        let (z4, z5) = (z2 * z2, z2 * z3);
        let l = ell as f64;
        let ll1 = l * (l + 1.0);
        let l1 = l + 1.0;
        let (c_hh, c_mm, c_hm) = match (orientation, kind) {
            (Orientation::Perpendicular, Kind::Electric) => (
                -z5 / (6.0 * ll1) - z3 * (2.0 * l * l - 2.0 * l - 3.0) / (6.0 * ll1)
                    + z * l / (2.0 * l1),
                -z5 / (6.0 * ll1) - z3 * (2.0 * l * l + 2.0 * l - 3.0) / (6.0 * ll1),
                z4 / (3.0 * l1) + z2 * (2.0 * l * l + 3.0 * l - 2.0) / (3.0 * l1),
            ),
            (Orientation::Perpendicular, Kind::Magnetic) => (
                z5 / (6.0 * ll1) - z3 * (2.0 * l + 1.0) / (3.0 * l1),
                z5 / (6.0 * ll1) - 2.0 * z3 / 3.0,
                -z4 / (3.0 * l1) + 2.0 * z2 * (2.0 * l + 1.0) / 3.0,
            ),
            (Orientation::Parallel, Kind::Electric) => (
                z5 / (3.0 * ll1) - z3 * (4.0 * l * l + 2.0 * l - 3.0) / (3.0 * ll1) + z * l / l1,
                z5 / (3.0 * ll1) - z3 * (4.0 * l * l + 4.0 * l - 3.0) / (3.0 * ll1),
                -2.0 * z4 / (3.0 * l1) + 2.0 * z2 * (4.0 * l * l + 6.0 * l - 1.0) / (3.0 * l1),
            ),
            (Orientation::Parallel, Kind::Magnetic) => (
                -z5 / (3.0 * ll1) - 2.0 * z3 * (l - 1.0) / (3.0 * l1),
                -z5 / (3.0 * ll1) - 2.0 * z3 / 3.0,
                2.0 * z4 / (3.0 * l1) + 2.0 * z2 * (2.0 * l + 1.0) / 3.0,
            ),
        };
        let multiplicity = match orientation {
            Orientation::Perpendicular => 1.0,
            Orientation::Parallel => 2.0,
        };
        let h = self.ladder.get(ell as i64);
        let hm = self.ladder.get(ell as i64 - 1);
        Ok(Scaled::from_complex(self.e1 * (multiplicity * z))
            + h.square().scale(c_hh)
            + hm.square().scale(c_mm)
            + (h * hm).scale(c_hm)
            - self.running[ell].scale(multiplicity * z3))
    }
}

/// Closed-form `J^p_l(zeta)` for either orientation.
pub fn j_closed(ell: usize, zeta: f64, orientation: Orientation, kind: Kind) -> Result<Complex64> {
    JContext::new(ell, zeta)?
        .j_scaled(ell, orientation, kind)?
        .to_complex("j_closed")
}

/// `J^p_l(zeta)` assembled from `I` integrals supplied by `source`.
///
/// With `t = zeta u`, `int_zeta^inf t^{-m} h_a h_b dt = zeta^{1-m} I_{a,b,m}`;
/// the square of the Riccati derivative expands as
/// `t^2 h_{l-1}^2 - 2l t h_l h_{l-1} + l^2 h_l^2`.
pub fn j_from_i(
    ell: usize,
    zeta: f64,
    orientation: Orientation,
    kind: Kind,
    source: &dyn IntegralSource,
) -> Result<Complex64> {
    if ell == 0 {
        return Err(Error::domain("j_from_i", "order must be at least 1"));
    }
    let i_val = |a: usize, b: usize, n: i32| source.integral(IntegralKey::new(a, b, n), zeta);
    let wh = h_weight(orientation);
    let wd = d_weight(orientation);
    let l = ell as f64;
    let (z2, z3) = (zeta * zeta, zeta * zeta * zeta);
    let mut total = Complex64::new(0.0, 0.0);
    match kind {
        Kind::Electric => {
            for ((k, a), (_, d)) in wh.terms().into_iter().zip(wd.terms()) {
                let c = 2.0 * l * (l + 1.0) * a + l * l * d;
                if c != 0.0 {
                    total += i_val(ell, ell, k)? * (zeta * c);
                }
                if d != 0.0 {
                    total += i_val(ell - 1, ell - 1, k - 2)? * (z3 * d);
                    total += i_val(ell, ell - 1, k - 1)? * (-2.0 * l * z2 * d);
                }
            }
        }
        Kind::Magnetic => {
            for (k, d) in wd.terms() {
                if d != 0.0 {
                    total += i_val(ell, ell, k - 2)? * (z3 * d);
                }
            }
        }
    }
    Ok(total)
}

/// Large-distance form: `(-1)^{l+1} e^{2i zeta}/(2 zeta)` (electric),
/// opposite sign (magnetic), times `i/zeta` for the parallel orientation.
pub fn j_asymptotic_far(
    ell: usize,
    zeta: f64,
    orientation: Orientation,
    kind: Kind,
) -> Result<Complex64> {
    if !(zeta > 0.0) {
        return Err(Error::domain(
            "j_asymptotic_far",
            format!("zeta = {zeta} must be positive"),
        ));
    }
    let odd = (ell + if kind == Kind::Electric { 1 } else { 0 }) % 2 == 1;
    let sign = if odd { -1.0 } else { 1.0 };
    let base = Complex64::new(0.0, 2.0 * zeta).exp() * (sign / (2.0 * zeta));
    Ok(match orientation {
        Orientation::Perpendicular => base,
        Orientation::Parallel => base * Complex64::new(0.0, 1.0 / zeta),
    })
}
