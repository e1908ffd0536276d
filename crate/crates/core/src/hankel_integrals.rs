//! Integrals of products of spherical Hankel functions,
//!
//! `I_{l1,l2,n}(zeta) = int_1^inf u^{-n} h_{l1}(zeta u) h_{l2}(zeta u) du`,
//!
//! in closed form from a single Hankel ladder at `zeta`, by contour
//! quadrature, and through the two recurrences that tie them together.

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::quadrature::{integrate_half_line, QuadratureOptions};
use crate::specfun::{exp_integral_e1_neg2i, HankelLadder, MAX_IMAG_ARGUMENT};
use crate::{Error, Result};

/// Index triple `(l1, l2, n)`; the integral is symmetric in `l1, l2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IntegralKey {
    pub ell1: usize,
    pub ell2: usize,
    pub n: i32,
}

impl IntegralKey {
    pub const fn new(ell1: usize, ell2: usize, n: i32) -> Self {
        IntegralKey { ell1, ell2, n }
    }

    /// Same integral with `ell1 >= ell2`.
    pub fn canonical(self) -> Self {
        if self.ell1 >= self.ell2 {
            self
        } else {
            IntegralKey::new(self.ell2, self.ell1, self.n)
        }
    }

    /// Keys whose closed form has a vanishing denominator.
    pub fn is_singular(self) -> bool {
        let k = self.canonical();
        matches!((k.ell1, k.ell2, k.n), (0, 0, 1) | (1, 1, 3) | (1, 0, 2))
    }

    /// Keys with a closed form.
    pub fn has_closed_form(self) -> bool {
        if self.is_singular() {
            return false;
        }
        let IntegralKey { ell1, ell2, n } = self.canonical();
        if ell1 == ell2 {
            match n {
                -2..=0 => true,
                1 => ell1 >= 1,
                3 => ell1 >= 2,
                _ => false,
            }
        } else if n == 0 {
            true
        } else if ell1 == ell2 + 1 {
            n == -1 || (n == 2 && ell1 >= 2)
        } else {
            false
        }
    }

    /// Keys the integral layer can evaluate (closed form or singular case).
    pub fn is_supported(self) -> bool {
        self.has_closed_form() || self.is_singular()
    }

    fn max_ell(self) -> usize {
        self.ell1.max(self.ell2)
    }
}

impl fmt::Display for IntegralKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.ell1, self.ell2, self.n)
    }
}

/// Provider of `I` values. The verification ladder takes one of these so a
/// deliberately broken provider can be swapped in.
pub trait IntegralSource: Send + Sync {
    fn name(&self) -> &str;
    fn integral(&self, key: IntegralKey, zeta: f64) -> Result<Complex64>;
}

/// Closed forms, with the singular keys served by contour quadrature.
#[derive(Debug, Clone, Copy, Default)]
pub struct ClosedForms;

impl IntegralSource for ClosedForms {
    fn name(&self) -> &str {
        "closed-forms"
    }
    fn integral(&self, key: IntegralKey, zeta: f64) -> Result<Complex64> {
        if key.is_singular() {
            i_singular_special(key, zeta)
        } else {
            i_closed(key, zeta)
        }
    }
}

/// Contour quadrature for every key.
#[derive(Debug, Clone, Copy)]
pub struct ContourQuadrature {
    pub tol: f64,
}

impl IntegralSource for ContourQuadrature {
    fn name(&self) -> &str {
        "contour-quadrature"
    }
    fn integral(&self, key: IntegralKey, zeta: f64) -> Result<Complex64> {
        i_quadrature(key, zeta, self.tol)
    }
}

fn check_zeta(function: &'static str, zeta: f64) -> Result<()> {
    if zeta > 0.0 && zeta.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(
            function,
            format!("zeta = {zeta} must be positive"),
        ))
    }
}

/// Hankel ladder, `E1(-2i zeta)` and the running sums the closed forms
/// share, all at one `zeta`.
#[derive(Debug, Clone)]
pub struct ClosedFormContext {
    zeta: f64,
    h: Vec<Complex64>,
    e1: Complex64,
    /// `sum_{k=0}^{l} h_k^2`
    sum_sq: Vec<Complex64>,
    /// `sum_{k=1}^{l} (2k+1)/(2k(k+1)) h_k^2`
    sum_weighted: Vec<Complex64>,
}

impl ClosedFormContext {
    /// Context serving every key with `max(l1, l2) <= lmax`.
    pub fn new(lmax: usize, zeta: f64) -> Result<Self> {
        check_zeta("i_closed", zeta)?;
        let ladder = HankelLadder::new(lmax + 1, Complex64::new(zeta, 0.0))?;
        let h = (-1..=(lmax as i64 + 1))
            .map(|l| ladder.get(l).to_complex("i_closed"))
            .collect::<Result<Vec<_>>>()?;
        let e1 = exp_integral_e1_neg2i(zeta)?;
        let mut sum_sq = Vec::with_capacity(lmax + 1);
        let mut sum_weighted = Vec::with_capacity(lmax + 1);
        let (mut s, mut w) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for k in 0..=lmax {
            let hk2 = h[k + 1] * h[k + 1];
            s += hk2;
            if k >= 1 {
                let kf = k as f64;
                w += hk2 * ((2.0 * kf + 1.0) / (2.0 * kf * (kf + 1.0)));
            }
            sum_sq.push(s);
            sum_weighted.push(w);
        }
        Ok(ClosedFormContext {
            zeta,
            h,
            e1,
            sum_sq,
            sum_weighted,
        })
    }

    pub fn zeta(&self) -> f64 {
        self.zeta
    }

    pub fn lmax(&self) -> usize {
        self.sum_sq.len() - 1
    }

    /// `h_l(zeta)` for `-1 <= l <= lmax + 1`.
    pub fn h(&self, ell: i64) -> Complex64 {
        self.h[(ell + 1) as usize]
    }

    pub fn e1(&self) -> Complex64 {
        self.e1
    }

    pub fn eval(&self, key: IntegralKey) -> Result<Complex64> {
        if key.is_singular() {
            return Err(Error::SingularKey(key));
        }
        if !key.has_closed_form() {
            return Err(Error::UnsupportedKey(key));
        }
        if key.max_ell() > self.lmax() {
            return Err(Error::InvalidParameter(format!(
                "key {key} exceeds the ladder order {}",
                self.lmax()
            )));
        }
        let z = self.zeta;
        let i = Complex64::i();
        let e1 = self.e1;
        if key.n == 0 && key.ell1 != key.ell2 {
            let (a, b) = (key.ell1 as i64, key.ell2 as i64);
            let h = |l: i64| self.h(l);
            let cross = (h(a) * h(b - 1) - h(a - 1) * h(b)) * (z / (a - b) as f64);
            return Ok((cross + h(a) * h(b)) / (a + b + 1) as f64);
        }
        let key = key.canonical();
        let l = key.ell1 as i64;
        let lf = l as f64;
        let hl = self.h(l);
        let hm = self.h(l - 1);
        let value = if key.ell1 == key.ell2 {
            match key.n {
                0 => {
                    let d = 2.0 * lf + 1.0;
                    -2.0 * i * e1 / (d * z) + self.sum_sq[l as usize] * (2.0 / d) - hl * hl / d
                }
                1 => {
                    let c = z * z / (2.0 * lf * (lf + 1.0));
                    hl * hl * (0.5 / (lf + 1.0) - c) - hm * hm * c + hl * hm * (z / (lf + 1.0))
                }
                3 => {
                    let a = -z.powi(4) / (3.0 * (lf - 1.0) * lf * (lf + 1.0) * (lf + 2.0));
                    let chh = a - z * z / (6.0 * (lf + 1.0) * (lf + 2.0)) + 0.5 / (lf + 2.0);
                    let cmm = a - z * z / (6.0 * (lf - 1.0) * (lf + 2.0));
                    let chm = 2.0 * z.powi(3) / (3.0 * (lf - 1.0) * (lf + 1.0) * (lf + 2.0))
                        + z / (3.0 * (lf + 2.0));
                    hl * hl * chh + hm * hm * cmm + hl * hm * chm
                }
                -2 => {
                    let hp = self.h(l + 1);
                    -(hl * hl) * 0.5 - hp * hp * 0.5 + hl * hp * ((2.0 * lf + 1.0) / (2.0 * z))
                }
                -1 => {
                    let h0 = self.h(0);
                    -e1 / (z * z) + self.sum_weighted[l as usize] + h0 * h0 * 0.5
                        - hl * hl / (2.0 * (lf + 1.0))
                }
                _ => unreachable!("filtered by has_closed_form"),
            }
        } else {
            match key.n {
                -1 => -i * e1 / (z * z) + self.sum_sq[l as usize - 1] / z,
                2 => {
                    let a = -z.powi(3) / (3.0 * (lf - 1.0) * lf * (lf + 1.0));
                    let chh = a - z / (6.0 * (lf + 1.0));
                    let cmm = a - z / (6.0 * (lf - 1.0));
                    let chm = 2.0 * z * z / (3.0 * (lf - 1.0) * (lf + 1.0)) + 1.0 / 3.0;
                    hl * hl * chh + hm * hm * cmm + hl * hm * chm
                }
                _ => unreachable!("filtered by has_closed_form"),
            }
        };
        Ok(value)
    }
}

/// Closed-form `I_{l1,l2,n}(zeta)` for keys with [`IntegralKey::has_closed_form`].
pub fn i_closed(key: IntegralKey, zeta: f64) -> Result<Complex64> {
    if key.is_singular() {
        return Err(Error::SingularKey(key));
    }
    if !key.has_closed_form() {
        return Err(Error::UnsupportedKey(key));
    }
    ClosedFormContext::new(key.max_ell(), zeta)?.eval(key)
}

/// Tolerance used for the singular keys.
pub const SINGULAR_KEY_TOL: f64 = 1e-13;

/// The keys `(0,0,1)`, `(1,1,3)`, `(1,0,2)` by contour quadrature.
pub fn i_singular_special(key: IntegralKey, zeta: f64) -> Result<Complex64> {
    if !key.is_singular() {
        return Err(Error::InvalidParameter(format!(
            "key {key} is not one of the singular cases"
        )));
    }
    i_quadrature(key, zeta, SINGULAR_KEY_TOL)
}

/// `I_{l1,l2,n}(zeta)` along `u = 1 + i s`, where the integrand decays as
/// `e^{-2 zeta s}`.
pub fn i_quadrature(key: IntegralKey, zeta: f64, tol: f64) -> Result<Complex64> {
    check_zeta("i_quadrature", zeta)?;
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tolerance {tol} must be positive"
        )));
    }
    let lmax = key.max_ell();
    let i = Complex64::i();
    let integrand = |s: f64| -> Result<Complex64> {
        if zeta * s > MAX_IMAG_ARGUMENT {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let u = Complex64::new(1.0, s);
        let ladder = HankelLadder::new(lmax, u * zeta)?;
        let product = ladder.get(key.ell1 as i64) * ladder.get(key.ell2 as i64);
        Ok(product.to_complex_lossy() * u.powi(-key.n) * i)
    };
    let scale = (0.5 / zeta).clamp(0.05, 2.0);
    let opts = QuadratureOptions::relative(tol);
    Ok(integrate_half_line(integrand, 0.0, scale, &opts)?.value)
}

/// The two recurrences linking neighbouring integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Recurrence {
    /// `I_{l1-1,l2,n} + I_{l1+1,l2,n} = (2 l1 + 1)/zeta I_{l1,l2,n+1}`
    OrderShift,
    /// `(n-l1-l2) I_{l1-1,l2,n} + (n+l1-l2+1) I_{l1+1,l2,n} + (2 l1+1) I_{l1,l2+1,n}
    ///  = (2 l1 + 1)/zeta h_{l1} h_{l2}`
    Boundary,
}

impl Recurrence {
    /// Left-hand side as coefficient/key pairs and the right-hand side as
    /// either an integral or the boundary product.
    pub fn terms(self, key: IntegralKey) -> Option<Vec<(f64, IntegralKey)>> {
        let IntegralKey { ell1, ell2, n } = key;
        if ell1 == 0 {
            return None;
        }
        let (l1, l2, nf) = (ell1 as f64, ell2 as f64, n as f64);
        Some(match self {
            Recurrence::OrderShift => vec![
                (1.0, IntegralKey::new(ell1 - 1, ell2, n)),
                (1.0, IntegralKey::new(ell1 + 1, ell2, n)),
            ],
            Recurrence::Boundary => vec![
                (nf - l1 - l2, IntegralKey::new(ell1 - 1, ell2, n)),
                (nf + l1 - l2 + 1.0, IntegralKey::new(ell1 + 1, ell2, n)),
                (2.0 * l1 + 1.0, IntegralKey::new(ell1, ell2 + 1, n)),
            ],
        })
    }

    /// Whether every integral with a nonzero coefficient is supported.
    pub fn is_evaluable(self, key: IntegralKey) -> bool {
        let Some(terms) = self.terms(key) else {
            return false;
        };
        let lhs_ok = terms.iter().all(|(c, k)| *c == 0.0 || k.is_supported());
        let rhs_ok = match self {
            Recurrence::OrderShift => {
                IntegralKey::new(key.ell1, key.ell2, key.n + 1).is_supported()
            }
            Recurrence::Boundary => true,
        };
        lhs_ok && rhs_ok
    }
}

/// Both sides of a recurrence at `key`, with integrals from `source`.
pub fn recurrence_lhs_rhs(
    relation: Recurrence,
    key: IntegralKey,
    zeta: f64,
    source: &dyn IntegralSource,
) -> Result<(Complex64, Complex64)> {
    check_zeta("recurrence_lhs_rhs", zeta)?;
    let terms = relation.terms(key).ok_or(Error::UnsupportedKey(key))?;
    let mut lhs = Complex64::new(0.0, 0.0);
    for (c, k) in terms {
        if c != 0.0 {
            lhs += source.integral(k, zeta)? * c;
        }
    }
    let scale = (2 * key.ell1 + 1) as f64 / zeta;
    let rhs = match relation {
        Recurrence::OrderShift => {
            source.integral(IntegralKey::new(key.ell1, key.ell2, key.n + 1), zeta)? * scale
        }
        Recurrence::Boundary => {
            let ladder = HankelLadder::new(key.max_ell(), Complex64::new(zeta, 0.0))?;
            (ladder.get(key.ell1 as i64) * ladder.get(key.ell2 as i64))
                .to_complex("recurrence_lhs_rhs")?
                * scale
        }
    };
    Ok((lhs, rhs))
}

/// Every supported key with `max(l1, l2) <= lmax`, in canonical order.
pub fn supported_keys(lmax: usize) -> Vec<IntegralKey> {
    let mut keys = Vec::new();
    for ell1 in 0..=lmax {
        for ell2 in 0..=ell1 {
            for n in -2..=3 {
                let key = IntegralKey::new(ell1, ell2, n);
                if key.is_supported() {
                    keys.push(key);
                }
            }
        }
    }
    keys
}
