//! Weight polynomials of the distance integrals.
//!
//! In `x = zeta/t` the `J` integrands read
//! `J^e = int dt [2l(l+1) w_h(x) h_l^2 + w_d(x) ((t h_l)')^2]`,
//! `J^m = int dt t^2 w_d(x) h_l^2`.

use num_complex::Complex64;

use super::Orientation;

/// `x3 x^3 + x1 x + x0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightPolynomial {
    pub x3: f64,
    pub x1: f64,
    pub x0: f64,
}

impl WeightPolynomial {
    /// Coefficients paired with the power of `x` they multiply.
    pub fn terms(&self) -> [(i32, f64); 3] {
        [(3, self.x3), (1, self.x1), (0, self.x0)]
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        x * x * x * self.x3 + x * self.x1 + self.x0
    }

    /// `int_zeta^inf x^k t^{-2l-2} dt` summed with the weights, times `zeta^{2l+1}`.
    pub fn power_moment(&self, ell: usize) -> f64 {
        let base = (2 * ell + 1) as f64;
        self.terms()
            .iter()
            .map(|&(k, c)| c / (base + k as f64))
            .sum()
    }
}

/// Weight of `h_l^2` in `J^e` (divided by `2l(l+1)`).
pub fn h_weight(orientation: Orientation) -> WeightPolynomial {
    match orientation {
        Orientation::Perpendicular => WeightPolynomial {
            x3: 1.0 / 3.0,
            x1: -1.0,
            x0: 2.0 / 3.0,
        },
        Orientation::Parallel => WeightPolynomial {
            x3: -2.0 / 3.0,
            x1: 0.0,
            x0: 2.0 / 3.0,
        },
    }
}

/// Weight of `((t h_l)')^2` in `J^e`; also `J^m` with an extra `t^2`.
pub fn d_weight(orientation: Orientation) -> WeightPolynomial {
    match orientation {
        Orientation::Perpendicular => WeightPolynomial {
            x3: -1.0 / 3.0,
            x1: -1.0,
            x0: 4.0 / 3.0,
        },
        Orientation::Parallel => WeightPolynomial {
            x3: 2.0 / 3.0,
            x1: -2.0,
            x0: 4.0 / 3.0,
        },
    }
}

/// Radial weight of the `rr` Green component in the volume integral,
/// `r^2 w_h(zeta/r)`.
pub fn radial_weight_rr(orientation: Orientation, zeta: f64, r: Complex64) -> Complex64 {
    r * r * h_weight(orientation).eval(zeta / r)
}

/// Combined radial weight of the two transverse components, `r^2 w_d(zeta/r)`.
pub fn radial_weight_tt(orientation: Orientation, zeta: f64, r: Complex64) -> Complex64 {
    r * r * d_weight(orientation).eval(zeta / r)
}

/// The three separate weights `(rr, theta theta, phi phi)` for a
/// perpendicular dipole at real `r`.
pub fn perpendicular_component_weights(zeta: f64, r: f64) -> (f64, f64, f64) {
    let z3 = zeta * zeta * zeta;
    (
        z3 / (3.0 * r) - zeta * r + 2.0 * r * r / 3.0,
        -z3 / (3.0 * r) + r * r / 3.0,
        -zeta * r + r * r,
    )
}

/// Coefficient `c_l` of the small-distance form
/// `J^e_l ~ -[(2l-1)!!]^2 c_l zeta^{-2l-1}`.
pub fn quasi_static_coefficient(ell: usize, orientation: Orientation) -> f64 {
    let lf = ell as f64;
    2.0 * lf * (lf + 1.0) * h_weight(orientation).power_moment(ell)
        + lf * lf * d_weight(orientation).power_moment(ell)
}
