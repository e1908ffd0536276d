//! Scattering part of the Green tensor of one sphere at coincident points,
//! in units of the wave number.

use num_complex::Complex64;

use crate::mie::{amplitude_ladder, ScaledAmplitudes, SphereMedium};
use crate::scaled::Scaled;
use crate::specfun::{HankelLadder, MAX_IMAG_ARGUMENT};
use crate::{Error, Result};

/// Truncated multipole sum together with the size of its last term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenSum {
    pub value: Complex64,
    pub last_term: f64,
}

impl GreenSum {
    /// True when the last retained term is not small against the sum.
    pub fn truncation_warning(&self, tol: f64) -> bool {
        self.last_term > tol * self.value.norm()
    }
}

/// `(G_rr, G_tt)` and their last terms at a possibly complex radius.
pub(crate) fn green_pair(r: Complex64, amps: &[ScaledAmplitudes]) -> Result<(GreenSum, GreenSum)> {
    let zero = GreenSum {
        value: Complex64::new(0.0, 0.0),
        last_term: 0.0,
    };
    if r.im > MAX_IMAG_ARGUMENT {
        // e^{-2 Im r} is far below the double range
        return Ok((zero, zero));
    }
    let lmax = amps.len();
    let ladder = HankelLadder::new(lmax.max(1), r)?;
    let mut rr = Scaled::ZERO;
    let mut tt = Scaled::ZERO;
    let (mut last_rr, mut last_tt) = (Scaled::ZERO, Scaled::ZERO);
    for a in amps {
        let ell = a.ell;
        let ll1 = (ell * (ell + 1)) as f64;
        let h = ladder.get(ell as i64);
        let d = ladder.riccati(ell);
        let term_rr = (a.electric * h.square())
            .scale(ll1 * ll1)
            .rotate_i(-(ell as i64));
        let rh = h.scale_complex(r);
        let term_tt = (a.electric * d.square() + a.magnetic * rh.square())
            .scale(ll1)
            .rotate_i(-(ell as i64));
        rr = rr + term_rr;
        tt = tt + term_tt;
        last_rr = term_rr;
        last_tt = term_tt;
    }
    let four_pi_r2 = r * r * (4.0 * std::f64::consts::PI);
    let rr = rr.to_complex_lossy() / four_pi_r2;
    let tt = tt.to_complex_lossy() / (four_pi_r2 * 2.0);
    Ok((
        GreenSum {
            value: rr,
            last_term: (last_rr.to_complex_lossy() / four_pi_r2).norm(),
        },
        GreenSum {
            value: tt,
            last_term: (last_tt.to_complex_lossy() / (four_pi_r2 * 2.0)).norm(),
        },
    ))
}

fn amplitudes_outside(
    r_scaled: f64,
    medium: &SphereMedium,
    lmax: usize,
) -> Result<Vec<ScaledAmplitudes>> {
    if !(r_scaled > medium.q) || !r_scaled.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "r = {r_scaled} must lie outside the sphere (q = {})",
            medium.q
        )));
    }
    if lmax == 0 {
        return Err(Error::InvalidParameter("lmax must be at least 1".into()));
    }
    amplitude_ladder(lmax, medium)
}

/// `G_rr / k` at coincident points `r = r_scaled / k`:
/// `(1/(4 pi r^2)) sum_l (-i)^l [l(l+1)]^2 B^e_l h_l(r)^2`.
pub fn green_component_rr(r_scaled: f64, medium: &SphereMedium, lmax: usize) -> Result<GreenSum> {
    let amps = amplitudes_outside(r_scaled, medium, lmax)?;
    Ok(green_pair(Complex64::new(r_scaled, 0.0), &amps)?.0)
}

/// `G_thth / k = G_phph / k`:
/// `(1/(8 pi r^2)) sum_l (-i)^l l(l+1) {B^e_l [(r h_l)']^2 + B^m_l [r h_l]^2}`.
pub fn green_component_tt(r_scaled: f64, medium: &SphereMedium, lmax: usize) -> Result<GreenSum> {
    let amps = amplitudes_outside(r_scaled, medium, lmax)?;
    Ok(green_pair(Complex64::new(r_scaled, 0.0), &amps)?.1)
}
