//! Sine and cosine integrals and `E1` on the negative imaginary axis.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Crossover between the ascending series and the continued fraction.
pub const SERIES_CROSSOVER: f64 = 8.0;

/// Ascending series for `(Si(x), Ci(x))`; accurate for `0 < x <= 8`.
pub(crate) fn si_ci_series(x: f64) -> (f64, f64) {
    // Si = sum_{n odd}  (-1)^((n-1)/2) x^n / (n n!)
    // Ci = gamma + ln x + sum_{n even >= 2} (-1)^(n/2) x^n / (n n!)
    let mut si = 0.0;
    let mut ci = 0.0;
    let mut power = 1.0; // x^n / n!
    for n in 1..200u32 {
        power *= x / n as f64;
        let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let term = sign * power / n as f64;
        if n % 2 == 1 {
            si += term;
        } else {
            ci += term;
        }
        if n as f64 > x && term.abs() < 1e-18 {
            break;
        }
    }
    (si, EULER_GAMMA + x.ln() + ci)
}

/// `(Si(x), Ci(x))` from the auxiliary functions, with `f + i g` obtained
/// from the continued fraction of `E1(ix)`; accurate for `x >= 2`.
pub(crate) fn si_ci_auxiliary(x: f64) -> (f64, f64) {
    // Modified Lentz on E1(ix) e^{ix} = 1/(1+ix- 1/(3+ix- 4/(5+ix- ...
    let tiny = 1e-300;
    let mut b = Complex64::new(1.0, x);
    let mut c = Complex64::new(1.0 / tiny, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 2..1000 {
        let a = -(((i - 1) * (i - 1)) as f64);
        b += 2.0;
        d = (d * a + b).inv();
        c = b + c.inv() * a;
        let del = c * d;
        h *= del;
        if (del - 1.0).norm() < 1e-16 {
            break;
        }
    }
    let e1 = Complex64::new(x.cos(), -x.sin()) * h;
    (FRAC_PI_2 + e1.im, -e1.re)
}

/// Sine and cosine integrals `Si(x)`, `Ci(x)` for `x > 0`.
pub fn sine_cosine_integrals(x: f64) -> Result<(f64, f64)> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(
            "sine_cosine_integrals",
            format!("x = {x} must be positive and finite"),
        ));
    }
    Ok(if x <= SERIES_CROSSOVER {
        si_ci_series(x)
    } else {
        si_ci_auxiliary(x)
    })
}

/// `E1(-2i zeta) = -Ci(2 zeta) - i Si(2 zeta) + i pi/2` for `zeta > 0`.
pub fn exp_integral_e1_neg2i(zeta: f64) -> Result<Complex64> {
    if !(zeta > 0.0) || !zeta.is_finite() {
        return Err(Error::domain(
            "exp_integral_e1_neg2i",
            format!("zeta = {zeta} must be positive and finite"),
        ));
    }
    let (si, ci) = sine_cosine_integrals(2.0 * zeta)?;
    Ok(Complex64::new(-ci, FRAC_PI_2 - si))
}
