//! Special functions: spherical Bessel/Hankel ladders, sine and cosine
//! integrals, and the exponential integral on the imaginary axis.

mod bessel;
mod sici;

pub use bessel::{
    bessel_j_ladder, bessel_y_ladder, riccati_deriv, sph_bessel_j, sph_bessel_y, sph_hankel1,
    HankelLadder, MAX_IMAG_ARGUMENT, MAX_ORDER,
};
pub use sici::{exp_integral_e1_neg2i, sine_cosine_integrals, EULER_GAMMA, SERIES_CROSSOVER};

/// Scalar used throughout the crate.
pub type ComplexValue = num_complex::Complex64;
