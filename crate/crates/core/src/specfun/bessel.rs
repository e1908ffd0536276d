//! Spherical Bessel and Hankel functions of complex argument.
//!
//! `j_l` is the minimal solution of the three-term recurrence
//! `f_{l-1} + f_{l+1} = (2l+1)/z f_l` and is generated by Miller's downward
//! recurrence, normalised against `j_0` or `j_1` (whichever is larger, so a
//! zero of `j_0` never sets the scale). `h_l^(1)` is dominant and is generated
//! upward from its elementary `l = -1, 0` members. Both ladders are stored in
//! [`Scaled`] form and may be taken far past the double range.

use num_complex::Complex64;

use crate::scaled::Scaled;
use crate::{Error, Result};

/// Largest order accepted by the scalar entry points.
pub const MAX_ORDER: usize = 300;

/// `|Im z|` beyond which `sin z`, `cos z` and `e^{iz}` are no longer safe.
pub const MAX_IMAG_ARGUMENT: f64 = 700.0;

/// Rescale the recurrence pair once it exceeds `2^RESCALE_BITS`.
const RESCALE_BITS: i64 = 600;

/// Extra orders above `max(l, |z|)` where the downward recurrence starts.
const MILLER_MARGIN: usize = 60;

fn check_argument(function: &'static str, z: Complex64) -> Result<()> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain(function, "non-finite argument"));
    }
    if z.im.abs() > MAX_IMAG_ARGUMENT {
        return Err(Error::domain(
            function,
            format!("|Im z| = {} exceeds {}", z.im.abs(), MAX_IMAG_ARGUMENT),
        ));
    }
    Ok(())
}

fn check_order(function: &'static str, ell: usize) -> Result<()> {
    if ell > MAX_ORDER {
        return Err(Error::domain(
            function,
            format!("order {ell} exceeds {MAX_ORDER}"),
        ));
    }
    Ok(())
}

fn sinc(z: Complex64) -> Complex64 {
    if z.norm() < 1e-4 {
        let z2 = z * z;
        Complex64::new(1.0, 0.0) - z2 / 6.0 + z2 * z2 / 120.0
    } else {
        z.sin() / z
    }
}

/// `j_1(z)`, by its series near the origin where the closed form cancels.
fn j1_elementary(z: Complex64) -> Complex64 {
    if z.norm() < 0.25 {
        let z2 = z * z;
        let mut term = z / 3.0;
        let mut sum = term;
        for k in 1..12 {
            let k = k as f64;
            term *= -z2 / (2.0 * k * (2.0 * k + 3.0));
            sum += term;
        }
        sum
    } else {
        z.sin() / (z * z) - z.cos() / z
    }
}

/// `j_0 .. j_lmax` at `z` in scaled form.
pub fn bessel_j_ladder(lmax: usize, z: Complex64) -> Result<Vec<Scaled>> {
    check_argument("sph_bessel_j", z)?;
    let mut out = vec![Scaled::ZERO; lmax + 1];
    if z.re == 0.0 && z.im == 0.0 {
        out[0] = Scaled::from_real(1.0);
        return Ok(out);
    }
    let start = lmax.max(z.norm().ceil() as usize) + MILLER_MARGIN;
    let limit = 2f64.powi(RESCALE_BITS as i32);

    // Unnormalised downward sweep. `upper` is f_{l+1}, `current` is f_l,
    // both relative to the shared exponent `exp`.
    let mut upper = Complex64::new(0.0, 0.0);
    let mut current = Complex64::new(1e-300, 0.0);
    let mut exp: i64 = 0;
    let mut raw = vec![Scaled::ZERO; lmax.max(1) + 1];
    for l in (1..=start).rev() {
        let lower = current * ((2 * l + 1) as f64) / z - upper;
        upper = current;
        current = lower;
        if current.norm() > limit {
            let s = 2f64.powi(-(RESCALE_BITS as i32));
            current *= s;
            upper *= s;
            exp += RESCALE_BITS;
        }
        let index = l - 1;
        if index < raw.len() {
            raw[index] = Scaled::new(current, exp);
        }
        if l < raw.len() {
            raw[l] = Scaled::new(upper, exp);
        }
    }

    let j0 = sinc(z);
    let j1 = j1_elementary(z);
    let norm = if j0.norm() >= j1.norm() {
        Scaled::from_complex(j0) / raw[0]
    } else {
        Scaled::from_complex(j1) / raw[1]
    };
    for (slot, value) in out.iter_mut().zip(raw.iter()) {
        *slot = *value * norm;
    }
    Ok(out)
}

/// `h^(1)_l(z)` for `l = -1 ..= lmax` in scaled form.
#[derive(Debug, Clone)]
pub struct HankelLadder {
    z: Complex64,
    values: Vec<Scaled>,
}

impl HankelLadder {
    pub fn new(lmax: usize, z: Complex64) -> Result<Self> {
        check_argument("sph_hankel1", z)?;
        if z.re == 0.0 && z.im == 0.0 {
            return Err(Error::Singularity {
                function: "sph_hankel1",
            });
        }
        let i = Complex64::i();
        // e^{iz} / z in scaled form; the contour quadrature probes Im z >> 1.
        let phase = Scaled::exp(i * z).scale_complex(z.inv());
        let h_minus1 = phase;
        let h0 = phase.scale_complex(-i);
        let mut values = Vec::with_capacity(lmax + 2);
        values.push(h_minus1);
        values.push(h0);

        let exp = h0.exponent();
        let mut prev = lossy_at(h_minus1, exp);
        let mut current = h0.mantissa();
        let mut exp = exp;
        let limit = 2f64.powi(RESCALE_BITS as i32);
        let zinv = z.inv();
        for l in 0..lmax {
            let next = current * ((2 * l + 1) as f64) * zinv - prev;
            prev = current;
            current = next;
            if current.norm() > limit {
                let s = 2f64.powi(-(RESCALE_BITS as i32));
                current *= s;
                prev *= s;
                exp += RESCALE_BITS;
            }
            values.push(Scaled::new(current, exp));
        }
        Ok(HankelLadder { z, values })
    }

    pub fn argument(&self) -> Complex64 {
        self.z
    }

    pub fn lmax(&self) -> usize {
        self.values.len() - 2
    }

    /// `h_l` for `l >= -1`.
    pub fn get(&self, ell: i64) -> Scaled {
        self.values[(ell + 1) as usize]
    }

    /// `d/dz [z h_l(z)] = z h_{l-1} - l h_l`.
    pub fn riccati(&self, ell: usize) -> Scaled {
        self.get(ell as i64 - 1).scale_complex(self.z) - self.get(ell as i64).scale(ell as f64)
    }
}

/// Mantissa of `x` expressed relative to `2^exponent`.
fn lossy_at(x: Scaled, exponent: i64) -> Complex64 {
    Scaled::new(x.mantissa(), x.exponent() - exponent).to_complex_lossy()
}

/// `y_0 .. y_lmax` by upward recurrence (dominant for `l > |z|`).
pub fn bessel_y_ladder(lmax: usize, z: Complex64) -> Result<Vec<Scaled>> {
    check_argument("sph_bessel_y", z)?;
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::Singularity {
            function: "sph_bessel_y",
        });
    }
    let y0 = -z.cos() / z;
    let y1 = -z.cos() / (z * z) - z.sin() / z;
    let mut out = vec![Scaled::from_complex(y0)];
    if lmax >= 1 {
        out.push(Scaled::from_complex(y1));
    }
    let (mut prev, mut current, mut exp) = (y0, y1, 0i64);
    let limit = 2f64.powi(RESCALE_BITS as i32);
    for l in 1..lmax {
        let next = current * ((2 * l + 1) as f64) / z - prev;
        prev = current;
        current = next;
        if current.norm() > limit {
            let s = 2f64.powi(-(RESCALE_BITS as i32));
            current *= s;
            prev *= s;
            exp += RESCALE_BITS;
        }
        out.push(Scaled::new(current, exp));
    }
    Ok(out)
}

/// Spherical Bessel function `j_l(z)`.
///
/// Accepts `l <= 300` and `|Im z| <= 700`; `z = 0` returns the limits
/// `j_0(0) = 1`, `j_l(0) = 0`.
pub fn sph_bessel_j(ell: usize, z: Complex64) -> Result<Complex64> {
    check_order("sph_bessel_j", ell)?;
    bessel_j_ladder(ell, z)?[ell].to_complex("sph_bessel_j")
}

/// Spherical Bessel function of the second kind `y_l(z)`.
pub fn sph_bessel_y(ell: usize, z: Complex64) -> Result<Complex64> {
    check_order("sph_bessel_y", ell)?;
    bessel_y_ladder(ell, z)?[ell].to_complex("sph_bessel_y")
}

/// Spherical Hankel function of the first kind `h^(1)_l(z) = j_l + i y_l`.
///
/// Errors at `z = 0` and when `|h_l|` exceeds 1e250.
pub fn sph_hankel1(ell: usize, z: Complex64) -> Result<Complex64> {
    check_order("sph_hankel1", ell)?;
    HankelLadder::new(ell, z)?
        .get(ell as i64)
        .to_complex("sph_hankel1")
}

/// Riccati derivative `d/dt [t h^(1)_l(t)]`, `l >= 1`.
pub fn riccati_deriv(ell: usize, t: Complex64) -> Result<Complex64> {
    if ell == 0 {
        return Err(Error::domain("riccati_deriv", "order must be at least 1"));
    }
    check_order("riccati_deriv", ell)?;
    HankelLadder::new(ell, t)?
        .riccati(ell)
        .to_complex("riccati_deriv")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Ascending series `j_l(z) = z^l sum_k (-z^2/2)^k / (k! (2l+2k+1)!!)`.
    fn j_power_series(ell: usize, z: Complex64, terms: usize) -> Complex64 {
        let mut dfact = 1.0;
        for m in (1..=2 * ell + 1).step_by(2) {
            dfact *= m as f64;
        }
        let mut term = z.powu(ell as u32) / dfact;
        let mut sum = term;
        let w = -z * z / 2.0;
        for k in 1..terms {
            term = term * w / ((k as f64) * ((2 * ell + 2 * k + 1) as f64));
            sum += term;
        }
        sum
    }

    #[test]
    fn elementary_values() {
        assert!(sph_bessel_j(0, c(PI, 0.0)).unwrap().norm() < 1e-15);
        assert_eq!(sph_bessel_j(3, c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert_eq!(sph_bessel_j(0, c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn j1_against_power_series() {
        let z = c(1.0, 0.5);
        let oracle = j_power_series(1, z, 60);
        // frozen from a 40-digit evaluation
        let frozen = c(0.32363383660725742, 0.122363045122366848);
        assert!((oracle - frozen).norm() < 1e-15);
        let got = sph_bessel_j(1, z).unwrap();
        assert!((got - frozen).norm() < 1e-14 * frozen.norm());
    }

    #[test]
    fn j_near_zero_of_j0_keeps_precision() {
        // j_0 vanishes at pi; j_1(pi) = 1/pi
        let got = sph_bessel_j(1, c(PI, 0.0)).unwrap();
        assert!((got.re - 1.0 / PI).abs() < 1e-15);
    }

    #[test]
    fn hankel_closed_forms() {
        for z in [c(0.3, 0.0), c(2.0, 0.0), c(1.5, 0.7), c(40.0, 1.0)] {
            let h0 = sph_hankel1(0, z).unwrap();
            let expected = -Complex64::i() * (Complex64::i() * z).exp() / z;
            assert!((h0 - expected).norm() < 1e-15 * expected.norm());
        }
        let h1 = sph_hankel1(1, c(1.0, 0.0)).unwrap();
        let expected = c(0.301168678939756789, -1.38177329067603622);
        assert!((h1 - expected).norm() < 1e-15);
        let elementary = -(Complex64::i()).exp() * (c(1.0, 1.0));
        assert!((h1 - elementary).norm() < 1e-15);
    }

    #[test]
    fn singular_and_out_of_range_arguments() {
        assert!(matches!(
            sph_hankel1(2, c(0.0, 0.0)),
            Err(Error::Singularity { .. })
        ));
        assert!(matches!(
            riccati_deriv(2, c(0.0, 0.0)),
            Err(Error::Singularity { .. })
        ));
        assert!(matches!(
            sph_bessel_j(2, c(1.0, 800.0)),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            sph_bessel_j(301, c(1.0, 0.0)),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            sph_hankel1(200, c(0.1, 0.0)),
            Err(Error::Overflow { .. })
        ));
    }

    #[test]
    fn scaled_ladders_go_past_the_double_range() {
        let h = HankelLadder::new(400, c(0.5, 0.0)).unwrap();
        let j = bessel_j_ladder(400, c(0.5, 0.0)).unwrap();
        // j_l h_l -> -i / ((2l+1) z) for l >> |z|
        let prod = (h.get(400) * j[400]).to_complex_lossy();
        let expected = -Complex64::i() / (801.0 * 0.5);
        assert!((prod - expected).norm() < 1e-3 * expected.norm());
        assert!(h.get(400).ln_abs() > 700.0 * std::f64::consts::LN_10);
    }

    #[test]
    fn riccati_identity_at_order_one() {
        let t = c(1.7, 0.2);
        let lhs = riccati_deriv(1, t).unwrap();
        let rhs = t * sph_hankel1(0, t).unwrap() - sph_hankel1(1, t).unwrap();
        assert!((lhs - rhs).norm() < 1e-15 * rhs.norm());
    }
}
