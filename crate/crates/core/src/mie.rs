//! Multipole scattering amplitudes of a homogeneous dielectric sphere.

use num_complex::Complex64;
use serde::Serialize;

use crate::scaled::Scaled;
use crate::specfun::{bessel_j_ladder, HankelLadder, MAX_ORDER};
use crate::{Error, Result};

/// Denominators below this magnitude are treated as degenerate.
pub const DENOMINATOR_FLOOR: f64 = 1e-280;

/// Size parameter `q = k a` and relative permittivity of the spheres.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SphereMedium {
    pub q: f64,
    pub epsilon: Complex64,
}

impl SphereMedium {
    /// Validated medium; `q = 0` denotes the point-scatterer limit.
    pub fn new(q: f64, epsilon: Complex64) -> Result<Self> {
        if !(q >= 0.0) || !q.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "size parameter q = {q} must be finite and non-negative"
            )));
        }
        if !(epsilon.re.is_finite() && epsilon.im.is_finite()) {
            return Err(Error::InvalidParameter(
                "permittivity must be finite".into(),
            ));
        }
        if epsilon.im < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "Im(epsilon) = {} must be non-negative for a passive medium",
                epsilon.im
            )));
        }
        Ok(SphereMedium { q, epsilon })
    }

    pub fn is_dipole_limit(&self) -> bool {
        self.q == 0.0
    }

    /// `q' = sqrt(epsilon) q` on the principal branch.
    pub fn q_inside(&self) -> Complex64 {
        self.epsilon.sqrt() * self.q
    }

    pub fn is_vacuum(&self) -> bool {
        self.epsilon == Complex64::new(1.0, 0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BesselFamily {
    Bessel,
    Hankel,
}

/// `f_l(z) = (l+1) j_l(z) - z j_{l+1}(z)`, or the same combination of `h_l`.
pub fn aux_f(ell: usize, z: Complex64, family: BesselFamily) -> Result<Complex64> {
    if ell == 0 || ell >= MAX_ORDER {
        return Err(Error::domain(
            "aux_f",
            format!("order {ell} outside 1..{MAX_ORDER}"),
        ));
    }
    let (a, b) = match family {
        BesselFamily::Bessel => {
            let j = bessel_j_ladder(ell + 1, z)?;
            (j[ell], j[ell + 1])
        }
        BesselFamily::Hankel => {
            let h = HankelLadder::new(ell + 1, z)?;
            (h.get(ell as i64), h.get(ell as i64 + 1))
        }
    };
    aux_combination(ell, z, a, b).to_complex("aux_f")
}

fn aux_combination(ell: usize, z: Complex64, f_l: Scaled, f_next: Scaled) -> Scaled {
    f_l.scale((ell + 1) as f64) - f_next.scale_complex(z)
}

/// Electric and magnetic amplitudes for one multipole order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MultipoleAmplitudes {
    pub ell: usize,
    pub b_e: Complex64,
    pub b_m: Complex64,
}

/// Amplitudes kept in scaled form; they fall off like `q^(2l+1) / [(2l-1)!!]^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledAmplitudes {
    pub ell: usize,
    pub electric: Scaled,
    pub magnetic: Scaled,
}

fn require_finite_size(medium: &SphereMedium, function: &'static str) -> Result<()> {
    if medium.q > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(
            function,
            "q must be positive; the q -> 0 limit has its own evaluation path",
        ))
    }
}

/// `B^e_l, B^m_l` for `l = 1 ..= lmax`.
pub fn amplitude_ladder(lmax: usize, medium: &SphereMedium) -> Result<Vec<ScaledAmplitudes>> {
    require_finite_size(medium, "multipole_amplitudes")?;
    if lmax >= MAX_ORDER {
        return Err(Error::domain(
            "multipole_amplitudes",
            format!("order {lmax} exceeds {}", MAX_ORDER - 1),
        ));
    }
    let q = Complex64::new(medium.q, 0.0);
    let qp = medium.q_inside();
    let eps = medium.epsilon;
    let j = bessel_j_ladder(lmax + 1, q)?;
    let jp = bessel_j_ladder(lmax + 1, qp)?;
    let h = HankelLadder::new(lmax + 1, q)?;
    let floor = DENOMINATOR_FLOOR.ln();
    let mut out = Vec::with_capacity(lmax);
    for ell in 1..=lmax {
        let f_q = aux_combination(ell, q, j[ell], j[ell + 1]);
        let f_qp = aux_combination(ell, qp, jp[ell], jp[ell + 1]);
        let h_l = h.get(ell as i64);
        let fh_q = aux_combination(ell, q, h_l, h.get(ell as i64 + 1));
        // with epsilon = 1 both numerators cancel bit for bit
        let n_e = (f_q * jp[ell]).scale_complex(eps) - j[ell] * f_qp;
        let n_m = f_q * jp[ell] - j[ell] * f_qp;
        let d_e = (fh_q * jp[ell]).scale_complex(eps) - h_l * f_qp;
        let d_m = fh_q * jp[ell] - h_l * f_qp;
        for (d, kind) in [(d_e, "electric"), (d_m, "magnetic")] {
            if !(d.ln_abs() > floor) {
                return Err(Error::DegenerateDenominator { ell, kind });
            }
        }
        let lf = ell as f64;
        let prefactor =
            Scaled::from_real((2.0 * lf + 1.0) / (lf * (lf + 1.0))).rotate_i(ell as i64 + 1);
        out.push(ScaledAmplitudes {
            ell,
            electric: prefactor * (n_e / d_e),
            magnetic: prefactor * (n_m / d_m),
        });
    }
    Ok(out)
}

/// `B^e_l` and `B^m_l` as plain doubles (values below the double range
/// flush to zero).
pub fn multipole_amplitudes(ell: usize, medium: &SphereMedium) -> Result<MultipoleAmplitudes> {
    if ell == 0 {
        return Err(Error::domain(
            "multipole_amplitudes",
            "order must be at least 1",
        ));
    }
    let a = amplitude_ladder(ell, medium)?[ell - 1];
    Ok(MultipoleAmplitudes {
        ell,
        b_e: a.electric.to_complex_lossy(),
        b_m: a.magnetic.to_complex_lossy(),
    })
}

/// `ln (2l-1)!!`, summed in log space.
pub fn ln_double_factorial_odd(ell: usize) -> f64 {
    (1..=ell).map(|k| ((2 * k - 1) as f64).ln()).sum()
}

/// Large-order electric amplitude
/// `i^l / (l^2 [(2l-1)!!]^2) (eps-1)/(eps+1) q^(2l+1)` in scaled form.
pub fn large_ell_amplitude_scaled(ell: usize, medium: &SphereMedium) -> Result<Scaled> {
    require_finite_size(medium, "multipole_amplitude_large_ell")?;
    if ell == 0 {
        return Err(Error::domain(
            "multipole_amplitude_large_ell",
            "order must be at least 1",
        ));
    }
    let eps = medium.epsilon;
    let lf = ell as f64;
    let ln_mag =
        (2.0 * lf + 1.0) * medium.q.ln() - 2.0 * lf.ln() - 2.0 * ln_double_factorial_odd(ell);
    let ratio = (eps - 1.0) / (eps + 1.0);
    Ok(
        (Scaled::exp(Complex64::new(ln_mag, 0.0)) * Scaled::from_complex(ratio))
            .rotate_i(ell as i64),
    )
}

pub fn multipole_amplitude_large_ell(ell: usize, medium: &SphereMedium) -> Result<Complex64> {
    Ok(large_ell_amplitude_scaled(ell, medium)?.to_complex_lossy())
}

/// `(eps - 1)/(eps + 2)`, the polarizability ratio of a point scatterer.
pub fn dipole_ratio(epsilon: Complex64) -> Complex64 {
    (epsilon - 1.0) / (epsilon + 2.0)
}
