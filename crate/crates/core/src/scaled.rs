//! Complex numbers with an explicit binary exponent.
//!
//! High-order spherical Hankel functions at small argument grow like
//! `(2l-1)!! / z^(l+1)` while the matching Mie amplitudes shrink at the same
//! rate, so the factors of a single series term routinely leave the range of
//! `f64` even though their product is of order one. [`Scaled`] keeps a
//! mantissa with `max(|re|, |im|)` in `[0.5, 1)` together with a power-of-two
//! exponent; products and sums stay exact up to ordinary rounding.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

/// Largest magnitude the public API hands out as a plain double.
pub const PUBLIC_MAGNITUDE_LIMIT: f64 = 1e250;

/// Multiply by `2^k` without intermediate overflow or premature underflow.
pub(crate) fn ldexp(x: f64, mut k: i64) -> f64 {
    let mut y = x;
    while k > 1000 {
        y *= 2f64.powi(1000);
        k -= 1000;
    }
    while k < -1000 {
        y *= 2f64.powi(-1000);
        k += 1000;
        if y == 0.0 {
            return y;
        }
    }
    y * 2f64.powi(k as i32)
}

fn ldexp_complex(z: Complex64, k: i64) -> Complex64 {
    Complex64::new(ldexp(z.re, k), ldexp(z.im, k))
}

/// Binary exponent `e` such that `x = m * 2^e` with `m` in `[0.5, 1)`.
fn frexp_exponent(x: f64) -> i64 {
    debug_assert!(x.is_finite() && x > 0.0);
    let bits = x.to_bits();
    let biased = ((bits >> 52) & 0x7ff) as i64;
    if biased == 0 {
        // subnormal: renormalise first
        frexp_exponent(x * 2f64.powi(64)) - 64
    } else {
        biased - 1022
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    mantissa: Complex64,
    exponent: i64,
}

impl Scaled {
    pub const ZERO: Scaled = Scaled {
        mantissa: Complex64 { re: 0.0, im: 0.0 },
        exponent: 0,
    };

    pub fn new(mantissa: Complex64, exponent: i64) -> Self {
        Scaled { mantissa, exponent }.normalized()
    }

    pub fn from_complex(z: Complex64) -> Self {
        Scaled::new(z, 0)
    }

    pub fn from_real(x: f64) -> Self {
        Scaled::new(Complex64::new(x, 0.0), 0)
    }

    /// `exp(w)` without overflow for any finite `w`.
    pub fn exp(w: Complex64) -> Self {
        let k = (w.re / std::f64::consts::LN_2).floor();
        let r = w.re - k * std::f64::consts::LN_2;
        let m = Complex64::from_polar(r.exp(), w.im);
        Scaled::new(m, k as i64)
    }

    fn normalized(self) -> Self {
        let a = self.mantissa.re.abs().max(self.mantissa.im.abs());
        if a == 0.0 || !a.is_finite() {
            return Scaled {
                mantissa: self.mantissa,
                exponent: if a == 0.0 { 0 } else { self.exponent },
            };
        }
        let shift = frexp_exponent(a);
        Scaled {
            mantissa: ldexp_complex(self.mantissa, -shift),
            exponent: self.exponent + shift,
        }
    }

    pub fn mantissa(&self) -> Complex64 {
        self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.re == 0.0 && self.mantissa.im == 0.0
    }

    pub fn is_finite(&self) -> bool {
        self.mantissa.re.is_finite() && self.mantissa.im.is_finite()
    }

    /// Natural logarithm of the modulus; `-inf` for zero.
    pub fn ln_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        self.mantissa.norm().ln() + self.exponent as f64 * std::f64::consts::LN_2
    }

    pub fn scale(self, x: f64) -> Self {
        Scaled::new(self.mantissa * x, self.exponent)
    }

    pub fn scale_complex(self, z: Complex64) -> Self {
        Scaled::new(self.mantissa * z, self.exponent)
    }

    /// Multiply by `i^k` exactly.
    pub fn rotate_i(self, k: i64) -> Self {
        let m = self.mantissa;
        let rotated = match k.rem_euclid(4) {
            0 => m,
            1 => Complex64::new(-m.im, m.re),
            2 => Complex64::new(-m.re, -m.im),
            _ => Complex64::new(m.im, -m.re),
        };
        Scaled {
            mantissa: rotated,
            exponent: self.exponent,
        }
    }

    pub fn square(self) -> Self {
        self * self
    }

    pub fn recip(self) -> Self {
        Scaled::new(self.mantissa.inv(), -self.exponent)
    }

    /// Plain double value; values below the double range flush to zero.
    pub fn to_complex_lossy(&self) -> Complex64 {
        ldexp_complex(self.mantissa, self.exponent)
    }

    /// Plain double value, refusing anything above [`PUBLIC_MAGNITUDE_LIMIT`].
    pub fn to_complex(&self, function: &'static str) -> crate::Result<Complex64> {
        if !self.is_finite() {
            return Err(crate::Error::overflow(function, "non-finite intermediate"));
        }
        if self.ln_abs() > PUBLIC_MAGNITUDE_LIMIT.ln() {
            return Err(crate::Error::overflow(
                function,
                format!("|value| = exp({:.1})", self.ln_abs()),
            ));
        }
        Ok(self.to_complex_lossy())
    }
}

impl From<Complex64> for Scaled {
    fn from(z: Complex64) -> Self {
        Scaled::from_complex(z)
    }
}

impl Mul for Scaled {
    type Output = Scaled;
    fn mul(self, rhs: Scaled) -> Scaled {
        Scaled::new(self.mantissa * rhs.mantissa, self.exponent + rhs.exponent)
    }
}

impl Div for Scaled {
    type Output = Scaled;
    fn div(self, rhs: Scaled) -> Scaled {
        Scaled::new(self.mantissa / rhs.mantissa, self.exponent - rhs.exponent)
    }
}

impl Add for Scaled {
    type Output = Scaled;
    fn add(self, rhs: Scaled) -> Scaled {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (big, small) = if self.exponent >= rhs.exponent {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let shift = small.exponent - big.exponent;
        if shift < -1100 {
            return big;
        }
        let aligned = ldexp_complex(small.mantissa, shift);
        Scaled::new(big.mantissa + aligned, big.exponent)
    }
}

impl Neg for Scaled {
    type Output = Scaled;
    fn neg(self) -> Scaled {
        Scaled {
            mantissa: -self.mantissa,
            exponent: self.exponent,
        }
    }
}

impl Sub for Scaled {
    type Output = Scaled;
    fn sub(self, rhs: Scaled) -> Scaled {
        self + (-rhs)
    }
}

impl std::iter::Sum for Scaled {
    fn sum<I: Iterator<Item = Scaled>>(iter: I) -> Scaled {
        iter.fold(Scaled::ZERO, |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_of_ordinary_values() {
        let z = Complex64::new(-3.25, 1e-3);
        assert_eq!(Scaled::from_complex(z).to_complex_lossy(), z);
    }

    #[test]
    fn products_beyond_double_range() {
        let big = Scaled::new(Complex64::new(1.0, 0.0), 3000);
        let tiny = Scaled::new(Complex64::new(0.0, 2.0), -3000);
        assert!(big
            .to_complex("t")
            .unwrap_err()
            .to_string()
            .contains("overflow"));
        let p = (big * tiny).to_complex("t").unwrap();
        assert_eq!(p, Complex64::new(0.0, 2.0));
    }

    #[test]
    fn addition_aligns_exponents() {
        let a = Scaled::new(Complex64::new(1.0, 0.0), 2000);
        let b = Scaled::new(Complex64::new(1.0, 0.0), 1999);
        let s = (a + b) * Scaled::new(Complex64::new(1.0, 0.0), -2000);
        assert_eq!(s.to_complex_lossy(), Complex64::new(1.5, 0.0));
        let c = a - a;
        assert!(c.is_zero());
    }

    #[test]
    fn exp_matches_std_in_range_and_survives_outside() {
        let w = Complex64::new(1.3, -0.7);
        let e = Scaled::exp(w).to_complex_lossy();
        assert!((e - w.exp()).norm() < 1e-15 * w.exp().norm());
        let huge = Scaled::exp(Complex64::new(2000.0, 0.3));
        assert!((huge.ln_abs() - 2000.0).abs() < 1e-10);
    }

    #[test]
    fn rotation_by_powers_of_i() {
        let z = Scaled::from_complex(Complex64::new(2.0, 3.0));
        for k in -5..6 {
            let expected = Complex64::new(2.0, 3.0) * Complex64::i().powi(k as i32);
            assert!((z.rotate_i(k).to_complex_lossy() - expected).norm() < 1e-14);
        }
    }
}
