//! Averaged correction straight from the volume integral over sphere
//! positions, using only the Green components and their radial weights.

use num_complex::Complex64;

use super::green::green_pair;
use super::weights::{radial_weight_rr, radial_weight_tt};
use super::{require_outside, EvalPoint, Orientation};
use crate::mie::{amplitude_ladder, SphereMedium};
use crate::quadrature::{integrate_half_line, QuadratureOptions};
use crate::specfun::MAX_ORDER;
use crate::{Error, Result};

/// Multipole order after which `(q/zeta)^(2l)` is below double resolution.
fn volume_lmax(zeta: f64, q: f64) -> usize {
    let l = 18.5 / (zeta / q).ln() + 6.0;
    (l.ceil() as usize).clamp(4, MAX_ORDER - 20)
}

/// `f = (24 pi/q^3) Im int_zeta^inf dr [w_rr G_rr + w_tt G_tt]`, with the
/// radial integral taken along `r = zeta + i s`.
pub fn volume_integral_oracle(
    point: EvalPoint,
    medium: &SphereMedium,
    orientation: Orientation,
    tol: f64,
) -> Result<f64> {
    let zeta = point.zeta_a;
    if medium.is_dipole_limit() {
        return Err(Error::InvalidParameter(
            "the volume integral needs a finite sphere size".into(),
        ));
    }
    require_outside(zeta, medium.q)?;
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tolerance {tol} must be positive"
        )));
    }
    let amps = amplitude_ladder(volume_lmax(zeta, medium.q), medium)?;
    let integrand = |s: f64| -> Result<Complex64> {
        let r = Complex64::new(zeta, s);
        let (rr, tt) = green_pair(r, &amps)?;
        let w = radial_weight_rr(orientation, zeta, r) * rr.value
            + radial_weight_tt(orientation, zeta, r) * tt.value;
        Ok(w * Complex64::i())
    };
    let opts = QuadratureOptions::relative(tol);
    let integral = integrate_half_line(integrand, 0.0, (0.5 / zeta).clamp(0.05, 2.0), &opts)?;
    let q3 = medium.q * medium.q * medium.q;
    Ok(24.0 * std::f64::consts::PI / q3 * integral.value.im)
}
