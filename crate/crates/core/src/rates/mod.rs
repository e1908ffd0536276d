//! Decay-rate correction functions `f_perp` and `f_par`.
//!
//! The averaged correction is a multipole series
//! `f = (3/q^3) Im sum_l (-i)^l l(l+1) [B^e_l J^e_l + B^m_l J^m_l]`, where the
//! `J` integrals collect the distance dependence. Everything here works in
//! units of the wave number: `zeta = k z_a`, `r = k r`.

mod asymptotic;
mod green;
mod jint;
pub mod methods;
mod series;
mod volume;
pub mod weights;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::{Error, Result};

pub use asymptotic::{
    dipole_limit_f, dipole_limit_near, f_asymptotic_far, f_asymptotic_near, far_amplitude_sum,
};
pub use green::{green_component_rr, green_component_tt, GreenSum};
pub use jint::{j_asymptotic_far, j_closed, j_from_i, JContext};
pub use methods::{MethodRegistry, RateMethod};
pub use series::{
    series_f, series_terms, SeriesOptions, NEAR_CONTACT_EXACT_TERMS, NEAR_CONTACT_RATIO,
};
pub use volume::volume_integral_oracle;

/// Dipole orientation relative to the half-space normal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Orientation {
    Perpendicular,
    Parallel,
}

impl Orientation {
    pub const ALL: [Orientation; 2] = [Orientation::Perpendicular, Orientation::Parallel];

    pub fn short_name(self) -> &'static str {
        match self {
            Orientation::Perpendicular => "perp",
            Orientation::Parallel => "par",
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for Orientation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "perp" | "perpendicular" => Ok(Orientation::Perpendicular),
            "par" | "parallel" => Ok(Orientation::Parallel),
            other => Err(Error::InvalidParameter(format!(
                "unknown orientation '{other}' (expected perp or par)"
            ))),
        }
    }
}

/// Electric or magnetic multipole.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Kind {
    Electric,
    Magnetic,
}

impl Kind {
    pub const ALL: [Kind; 2] = [Kind::Electric, Kind::Magnetic];
}

/// Scaled atom–interface distance `zeta_a = k z_a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalPoint {
    pub zeta_a: f64,
}

impl EvalPoint {
    pub fn new(zeta_a: f64) -> Result<Self> {
        if zeta_a > 0.0 && zeta_a.is_finite() {
            Ok(EvalPoint { zeta_a })
        } else {
            Err(Error::InvalidParameter(format!(
                "zeta_a = {zeta_a} must be positive and finite"
            )))
        }
    }
}

/// Value of a correction function with its convergence record.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesResult {
    pub f: f64,
    pub terms_used: usize,
    pub tail_estimate: f64,
    pub converged: bool,
}

impl SeriesResult {
    /// Result of a closed expression that needs no truncation.
    pub fn exact(f: f64) -> Self {
        SeriesResult {
            f,
            terms_used: 0,
            tail_estimate: 0.0,
            converged: true,
        }
    }
}

fn require_outside(zeta: f64, q: f64) -> Result<()> {
    if zeta > q {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "zeta_a = {zeta} must exceed q = {q} (atom outside the nearest sphere)"
        )))
    }
}
