//! Verification ladder run as named suites of checks.
//!
//! Every check evaluates a grid of samples, reduces each one to a
//! nonnegative error measure and compares the worst one with a tolerance.
//! For agreement checks the measure is a relative deviation; for property
//! checks (signs, finiteness, exact zeros) it is the size of the violation.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::hankel_integrals::{
    recurrence_lhs_rhs, supported_keys, ContourQuadrature, IntegralKey, IntegralSource, Recurrence,
};
use crate::mie::{multipole_amplitudes, SphereMedium};
use crate::rates::{
    dipole_limit_f, f_asymptotic_far, f_asymptotic_near, green_component_rr, green_component_tt,
    j_closed, j_from_i, series_f, series_terms, volume_integral_oracle, EvalPoint, Kind,
    Orientation, SeriesOptions,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Suite {
    Integrals,
    Rates,
    Asymptotics,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 4] = ["integrals", "rates", "asymptotics", "all"];

    fn includes(self, group: Suite) -> bool {
        self == Suite::All || self == group
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Integrals => "integrals",
            Suite::Rates => "rates",
            Suite::Asymptotics => "asymptotics",
            Suite::All => "all",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "integrals" => Ok(Suite::Integrals),
            "rates" => Ok(Suite::Rates),
            "asymptotics" => Ok(Suite::Asymptotics),
            "all" => Ok(Suite::All),
            other => Err(Error::InvalidParameter(format!(
                "unknown suite '{other}' (expected one of {})",
                Suite::NAMES.join(", ")
            ))),
        }
    }
}

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub check_id: String,
    pub max_rel_err: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub samples: usize,
    /// Label of the sample with the largest error.
    pub worst_case: String,
}

/// Worst error over a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Measurement {
    pub max_rel_err: f64,
    pub samples: usize,
    pub worst_case: String,
}

type Evaluator = fn(&dyn IntegralSource) -> Result<Measurement>;

/// A named grid with its tolerance and the pair of evaluations it compares.
pub struct Check {
    pub id: &'static str,
    pub group: Suite,
    pub tolerance: f64,
    pub description: &'static str,
    evaluate: Evaluator,
}

impl Check {
    pub fn measure(&self, source: &dyn IntegralSource) -> Result<Measurement> {
        (self.evaluate)(source).map_err(|e| Error::Check {
            check_id: self.id,
            source: Box::new(e),
        })
    }
}

impl fmt::Debug for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Check")
            .field("id", &self.id)
            .field("group", &self.group)
            .field("tolerance", &self.tolerance)
            .finish()
    }
}

/// All checks, sorted by id.
pub static CHECKS: &[Check] = &[
    Check {
        id: "asymptotics.dipole_limit_contact",
        group: Suite::Asymptotics,
        tolerance: 0.03,
        description:
            "point-scatterer f zeta^3 at zeta = 0.02 against -(3/2) Im[(eps-1)/(eps+2)] = -0.18",
        evaluate: dipole_limit_contact,
    },
    Check {
        id: "asymptotics.dipole_limit_small_sphere",
        group: Suite::Asymptotics,
        tolerance: 1e-4,
        description: "series at q = 1e-3 against the point-scatterer limit, zeta = 1",
        evaluate: dipole_limit_small_sphere,
    },
    Check {
        id: "asymptotics.far_agreement_z10",
        group: Suite::Asymptotics,
        tolerance: 0.05,
        description:
            "series against the far asymptote at zeta = 10, q = 0.5, eps in {1.5, 1.5+0.5i}",
        evaluate: far_agreement_z10,
    },
    Check {
        id: "asymptotics.far_agreement_z5",
        group: Suite::Asymptotics,
        tolerance: 0.10,
        description:
            "series against the far asymptote at zeta = 5, q = 0.5, eps in {1.5, 1.5+0.5i}",
        evaluate: far_agreement_z5,
    },
    Check {
        id: "asymptotics.near_contact",
        group: Suite::Asymptotics,
        tolerance: 0.15,
        description: "series at zeta = q + 0.01 against the contact asymptote",
        evaluate: near_contact,
    },
    Check {
        id: "asymptotics.near_contact_ratio",
        group: Suite::Asymptotics,
        tolerance: 0.2,
        description: "|f_par / f_perp - 2| at zeta = q + 0.01",
        evaluate: near_contact_ratio,
    },
    Check {
        id: "integrals.decay",
        group: Suite::Integrals,
        tolerance: 1.0,
        description: "max |zeta^2 I_{1,1,0}(zeta)| over zeta in [10, 100]",
        evaluate: integral_decay,
    },
    Check {
        id: "integrals.dual_path",
        group: Suite::Integrals,
        tolerance: 1e-8,
        description: "I closed forms against contour quadrature, l <= 12",
        evaluate: integral_dual_path,
    },
    Check {
        id: "integrals.recurrence_boundary",
        group: Suite::Integrals,
        tolerance: 1e-10,
        description: "three-term recurrence with the boundary product, l <= 10",
        evaluate: recurrence_boundary,
    },
    Check {
        id: "integrals.recurrence_order_shift",
        group: Suite::Integrals,
        tolerance: 1e-10,
        description: "order-shift recurrence, l <= 10",
        evaluate: recurrence_order_shift,
    },
    Check {
        id: "rates.far_decay_slope",
        group: Suite::Rates,
        tolerance: 0.1,
        description: "log-log slope of the maxima of |f| on [20, 60]: -1 (perp), -2 (par)",
        evaluate: far_decay_slope,
    },
    Check {
        id: "rates.j_dual_path",
        group: Suite::Rates,
        tolerance: 1e-10,
        description: "J closed forms against their assembly from I integrals",
        evaluate: j_dual_path,
    },
    Check {
        id: "rates.lossless_contact",
        group: Suite::Rates,
        tolerance: 0.0,
        description: "lossless sphere gives a finite converged series at zeta = q + 1e-3",
        evaluate: lossless_contact,
    },
    Check {
        id: "rates.near_contact_sign",
        group: Suite::Rates,
        tolerance: 0.0,
        description: "absorbing spheres give f < 0 close to contact (count of violations)",
        evaluate: near_contact_sign,
    },
    Check {
        id: "rates.normalization_far",
        group: Suite::Rates,
        tolerance: 1e-12,
        description: "reduced far-asymptote prefactor against the unreduced rate formula",
        evaluate: normalization_far,
    },
    Check {
        id: "rates.normalization_series",
        group: Suite::Rates,
        tolerance: 1e-12,
        description: "reduced series prefactor 3/q^3 against the unreduced rate formula",
        evaluate: normalization_series,
    },
    Check {
        id: "rates.null_contrast",
        group: Suite::Rates,
        tolerance: 0.0,
        description: "eps = 1 gives exactly zero on every evaluation path",
        evaluate: null_contrast,
    },
    Check {
        id: "rates.series_vs_volume",
        group: Suite::Rates,
        tolerance: 1e-6,
        description: "series against direct quadrature of the Green-tensor volume integral",
        evaluate: series_vs_volume,
    },
    Check {
        id: "rates.term_ratio",
        group: Suite::Rates,
        tolerance: 0.05,
        description: "|t_l / t_(l-1)| / (q/zeta)^2 - 1 for l in [10, 20] at zeta = 2q",
        evaluate: term_ratio,
    },
];

/// Checks belonging to `suite`, in id order.
pub fn checks_in(suite: Suite) -> Vec<&'static Check> {
    CHECKS.iter().filter(|c| suite.includes(c.group)).collect()
}

pub fn find_check(id: &str) -> Option<&'static Check> {
    CHECKS.iter().find(|c| c.id == id)
}

/// Runs `name` with the closed forms as the integral provider.
pub fn run_suite(
    name: &str,
    tol_overrides: Option<&BTreeMap<String, f64>>,
) -> Result<Vec<CheckReport>> {
    run_suite_with(name, tol_overrides, &crate::hankel_integrals::ClosedForms)
}

/// Runs `name` with `source` supplying every `I` the checks consume.
pub fn run_suite_with(
    name: &str,
    tol_overrides: Option<&BTreeMap<String, f64>>,
    source: &dyn IntegralSource,
) -> Result<Vec<CheckReport>> {
    let suite: Suite = name.parse()?;
    if let Some(map) = tol_overrides {
        for (id, tol) in map {
            if find_check(id).is_none() {
                return Err(Error::InvalidParameter(format!("no check named '{id}'")));
            }
            if !(*tol >= 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "tolerance {tol} for '{id}' must be nonnegative"
                )));
            }
        }
    }
    let checks = checks_in(suite);
    let mut reports = checks
        .par_iter()
        .map(|check| {
            let m = check.measure(source)?;
            let tolerance = tol_overrides
                .and_then(|map| map.get(check.id).copied())
                .unwrap_or(check.tolerance);
            Ok(CheckReport {
                check_id: check.id.to_string(),
                max_rel_err: m.max_rel_err,
                tolerance,
                passed: m.max_rel_err <= tolerance,
                samples: m.samples,
                worst_case: m.worst_case,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    reports.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    Ok(reports)
}

fn rel(a: Complex64, reference: Complex64) -> f64 {
    (a - reference).norm() / reference.norm()
}

fn rel_real(a: f64, reference: f64) -> f64 {
    (a - reference).abs() / reference.abs()
}

/// Evaluates every labelled sample in parallel and keeps the worst.
fn worst<T, F>(samples: Vec<(String, T)>, eval: F) -> Result<Measurement>
where
    T: Send + Sync,
    F: Fn(&T) -> Result<f64> + Send + Sync,
{
    let errors = samples
        .par_iter()
        .map(|(_, s)| eval(s).map(|e| if e.is_nan() { f64::INFINITY } else { e }))
        .collect::<Result<Vec<_>>>()?;
    let mut best = (0.0, String::new());
    for ((label, _), e) in samples.iter().zip(&errors) {
        if best.1.is_empty() || *e > best.0 {
            best = (*e, label.clone());
        }
    }
    Ok(Measurement {
        max_rel_err: best.0,
        samples: samples.len(),
        worst_case: best.1,
    })
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn absorber() -> SphereMedium {
    SphereMedium {
        q: 0.5,
        epsilon: c(1.5, 0.5),
    }
}

fn point(zeta: f64) -> Result<EvalPoint> {
    EvalPoint::new(zeta)
}

const FAR_OPTIONS: SeriesOptions = SeriesOptions {
    tol: 1e-12,
    lmax_cap: 60,
};

fn integral_dual_path(source: &dyn IntegralSource) -> Result<Measurement> {
    let quadrature = ContourQuadrature { tol: 1e-12 };
    let mut samples = Vec::new();
    for zeta in [0.6, 1.0, 2.0, 5.0, 10.0] {
        for key in supported_keys(12) {
            samples.push((format!("{key} at zeta = {zeta}"), (key, zeta)));
        }
    }
    worst(samples, |&(key, zeta)| {
        let reference = source.integral(key, zeta)?;
        Ok(rel(quadrature.integral(key, zeta)?, reference))
    })
}

fn recurrence(relation: Recurrence, source: &dyn IntegralSource) -> Result<Measurement> {
    let mut samples = Vec::new();
    for zeta in [1.0, 3.0] {
        for ell1 in 1..=10 {
            for ell2 in 0..=10 {
                for n in -3..=4 {
                    let key = IntegralKey::new(ell1, ell2, n);
                    if relation.is_evaluable(key) {
                        samples.push((format!("{key} at zeta = {zeta}"), (key, zeta)));
                    }
                }
            }
        }
    }
    worst(samples, |&(key, zeta)| {
        let (lhs, rhs) = recurrence_lhs_rhs(relation, key, zeta, source)?;
        Ok((lhs - rhs).norm() / lhs.norm().max(rhs.norm()))
    })
}

fn recurrence_order_shift(source: &dyn IntegralSource) -> Result<Measurement> {
    recurrence(Recurrence::OrderShift, source)
}

fn recurrence_boundary(source: &dyn IntegralSource) -> Result<Measurement> {
    recurrence(Recurrence::Boundary, source)
}

fn integral_decay(source: &dyn IntegralSource) -> Result<Measurement> {
    let samples = (0..=180)
        .map(|i| {
            let zeta = 10.0 + 0.5 * i as f64;
            (format!("zeta = {zeta}"), zeta)
        })
        .collect();
    worst(samples, |&zeta| {
        Ok(zeta * zeta * source.integral(IntegralKey::new(1, 1, 0), zeta)?.norm())
    })
}

fn j_dual_path(source: &dyn IntegralSource) -> Result<Measurement> {
    let mut samples = Vec::new();
    for zeta in [0.6, 1.0, 2.0, 5.0] {
        for ell in 1..=8 {
            for o in Orientation::ALL {
                for kind in Kind::ALL {
                    samples.push((
                        format!("l = {ell}, {o}, {kind:?} at zeta = {zeta}"),
                        (ell, zeta, o, kind),
                    ));
                }
            }
        }
    }
    worst(samples, |&(ell, zeta, o, kind)| {
        let closed = j_closed(ell, zeta, o, kind)?;
        Ok(rel(j_from_i(ell, zeta, o, kind, source)?, closed))
    })
}

fn series_vs_volume(_: &dyn IntegralSource) -> Result<Measurement> {
    let mut samples = Vec::new();
    for zeta in [1.0, 2.0, 5.0] {
        for o in Orientation::ALL {
            samples.push((format!("{o} at zeta = {zeta}"), (zeta, o)));
        }
    }
    let opts = SeriesOptions {
        tol: 1e-13,
        lmax_cap: 200,
    };
    worst(samples, |&(zeta, o)| {
        let p = point(zeta)?;
        let series = series_f(p, &absorber(), o, &opts)?.f;
        Ok(rel_real(
            volume_integral_oracle(p, &absorber(), o, 1e-11)?,
            series,
        ))
    })
}

fn near_contact_sign(_: &dyn IntegralSource) -> Result<Measurement> {
    let mut samples = Vec::new();
    for eps in [
        c(1.5, 0.5),
        c(2.0, 1.0),
        c(1.1, 0.01),
        c(4.0, 0.2),
        c(-3.0, 0.5),
    ] {
        for gap in [1e-3, 5e-3, 1e-2] {
            for o in Orientation::ALL {
                samples.push((format!("eps = {eps}, zeta - q = {gap}, {o}"), (eps, gap, o)));
            }
        }
    }
    worst(samples, |&(eps, gap, o)| {
        let medium = SphereMedium::new(0.5, eps)?;
        let f = series_f(point(0.5 + gap)?, &medium, o, &SeriesOptions::default())?.f;
        Ok(if f < 0.0 { 0.0 } else { 1.0 })
    })
}

/// Least-squares slope of `ln|f|` against `ln zeta` through the local
/// maxima of `|f|`.
fn maxima_slope(zetas: &[f64], values: &[f64]) -> f64 {
    let (mut sx, mut sy, mut sxx, mut sxy, mut n) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for i in 1..values.len() - 1 {
        let (a, b, c) = (values[i - 1].abs(), values[i].abs(), values[i + 1].abs());
        if b > a && b >= c {
            let (x, y) = (zetas[i].ln(), b.ln());
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            n += 1.0;
        }
    }
    if n < 3.0 {
        return f64::NAN;
    }
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

fn far_decay_slope(_: &dyn IntegralSource) -> Result<Measurement> {
    let mut samples = Vec::new();
    for eps in [c(1.5, 0.0), c(1.5, 0.5)] {
        for o in Orientation::ALL {
            samples.push((format!("eps = {eps}, {o}"), (eps, o)));
        }
    }
    let zetas: Vec<f64> = (0..=4000).map(|i| 20.0 + 0.01 * i as f64).collect();
    worst(samples, |&(eps, o)| {
        let medium = SphereMedium::new(0.5, eps)?;
        let values = zetas
            .par_iter()
            .map(|&z| Ok(series_f(point(z)?, &medium, o, &FAR_OPTIONS)?.f))
            .collect::<Result<Vec<_>>>()?;
        let expected = match o {
            Orientation::Perpendicular => -1.0,
            Orientation::Parallel => -2.0,
        };
        Ok((maxima_slope(&zetas, &values) - expected).abs())
    })
}

fn term_ratio(_: &dyn IntegralSource) -> Result<Measurement> {
    let medium = absorber();
    let zeta = 2.0 * medium.q;
    let rho = (medium.q / zeta).powi(2);
    let mut samples = Vec::new();
    for o in Orientation::ALL {
        for ell in 10..=20 {
            samples.push((format!("l = {ell}, {o}"), (ell, o)));
        }
    }
    let terms: BTreeMap<Orientation, Vec<Complex64>> = Orientation::ALL
        .iter()
        .map(|&o| Ok((o, series_terms(point(zeta)?, &medium, o, 20)?)))
        .collect::<Result<_>>()?;
    worst(samples, |&(ell, o)| {
        let t = &terms[&o];
        Ok(((t[ell - 1] / t[ell - 2]).norm() / rho - 1.0).abs())
    })
}

#[derive(Debug, Clone, Copy)]
enum NullPath {
    Series(f64, f64, Orientation),
    Dipole(f64, Orientation),
    Far(f64, f64, Orientation),
    Near(f64, f64, Orientation),
    Volume(f64, Orientation),
    GreenRr(f64),
    GreenTt(f64),
}

fn null_contrast(_: &dyn IntegralSource) -> Result<Measurement> {
    let mut paths = Vec::new();
    for o in Orientation::ALL {
        for zeta in [0.501, 0.51, 2.0, 30.0] {
            paths.push(NullPath::Series(0.5, zeta, o));
        }
        paths.push(NullPath::Series(0.0, 1.0, o));
        paths.push(NullPath::Series(2.0, 2.5, o));
        paths.push(NullPath::Dipole(0.02, o));
        paths.push(NullPath::Dipole(3.0, o));
        for (q, zeta) in [(0.5, 5.0), (0.0, 5.0), (2.0, 40.0)] {
            paths.push(NullPath::Far(q, zeta, o));
        }
        for (q, zeta) in [(0.5, 0.51), (0.0, 0.1)] {
            paths.push(NullPath::Near(q, zeta, o));
        }
        paths.push(NullPath::Volume(2.0, o));
    }
    paths.push(NullPath::GreenRr(2.0));
    paths.push(NullPath::GreenTt(2.0));
    let samples = paths.into_iter().map(|p| (format!("{p:?}"), p)).collect();
    let vacuum = |q: f64| SphereMedium::new(q, c(1.0, 0.0));
    let one = c(1.0, 0.0);
    worst(samples, |&p| {
        let f = match p {
            NullPath::Series(q, zeta, o) => {
                series_f(point(zeta)?, &vacuum(q)?, o, &SeriesOptions::default())?.f
            }
            NullPath::Dipole(zeta, o) => dipole_limit_f(point(zeta)?, one, o)?,
            NullPath::Far(q, zeta, o) => f_asymptotic_far(point(zeta)?, &vacuum(q)?, o)?,
            NullPath::Near(q, zeta, o) => f_asymptotic_near(point(zeta)?, &vacuum(q)?, o)?,
            NullPath::Volume(zeta, o) => {
                volume_integral_oracle(point(zeta)?, &vacuum(0.5)?, o, 1e-10)?
            }
            NullPath::GreenRr(r) => green_component_rr(r, &vacuum(0.5)?, 20)?.value.norm(),
            NullPath::GreenTt(r) => green_component_tt(r, &vacuum(0.5)?, 20)?.value.norm(),
        };
        Ok(f.abs())
    })
}

fn far_agreement(zeta: f64) -> Result<Measurement> {
    let samples = [c(1.5, 0.0), c(1.5, 0.5)]
        .into_iter()
        .map(|eps| (format!("eps = {eps}, perp at zeta = {zeta}"), eps))
        .collect();
    worst(samples, |&eps| {
        let medium = SphereMedium::new(0.5, eps)?;
        let p = point(zeta)?;
        let series = series_f(p, &medium, Orientation::Perpendicular, &FAR_OPTIONS)?.f;
        Ok(rel_real(
            f_asymptotic_far(p, &medium, Orientation::Perpendicular)?,
            series,
        ))
    })
}

fn far_agreement_z5(_: &dyn IntegralSource) -> Result<Measurement> {
    far_agreement(5.0)
}

fn far_agreement_z10(_: &dyn IntegralSource) -> Result<Measurement> {
    far_agreement(10.0)
}

const CONTACT_GAP: f64 = 0.01;

fn contact_values() -> Result<(f64, f64)> {
    let medium = absorber();
    let p = point(medium.q + CONTACT_GAP)?;
    let opts = SeriesOptions::default();
    let perp = series_f(p, &medium, Orientation::Perpendicular, &opts)?.f;
    let par = series_f(p, &medium, Orientation::Parallel, &opts)?.f;
    Ok((perp, par))
}

fn near_contact(_: &dyn IntegralSource) -> Result<Measurement> {
    let q: f64 = 0.5;
    let expected = -3.0 / (4.0 * q * q * CONTACT_GAP) / 6.5;
    worst(vec![("perp at zeta = q + 0.01".to_string(), ())], |_| {
        Ok(rel_real(contact_values()?.0, expected))
    })
}

fn near_contact_ratio(_: &dyn IntegralSource) -> Result<Measurement> {
    worst(vec![("zeta = q + 0.01".to_string(), ())], |_| {
        let (perp, par) = contact_values()?;
        Ok((par / perp - 2.0).abs())
    })
}

fn dipole_limit_contact(_: &dyn IntegralSource) -> Result<Measurement> {
    let zeta: f64 = 0.02;
    worst(vec![("perp at zeta = 0.02".to_string(), ())], |_| {
        let f = dipole_limit_f(point(zeta)?, c(1.5, 0.5), Orientation::Perpendicular)?;
        Ok(rel_real(f * zeta.powi(3), -1.5 * 0.12))
    })
}

fn dipole_limit_small_sphere(_: &dyn IntegralSource) -> Result<Measurement> {
    let samples = Orientation::ALL
        .iter()
        .map(|&o| (format!("{o} at zeta = 1"), o))
        .collect();
    worst(samples, |&o| {
        let eps = c(1.5, 0.5);
        let p = point(1.0)?;
        let small = SphereMedium::new(1e-3, eps)?;
        let series = series_f(p, &small, o, &SeriesOptions::default())?.f;
        Ok(rel_real(series, dipole_limit_f(p, eps, o)?))
    })
}

fn lossless_contact(_: &dyn IntegralSource) -> Result<Measurement> {
    let samples = Orientation::ALL
        .iter()
        .map(|&o| (format!("{o} at zeta = q + 1e-3"), o))
        .collect();
    worst(samples, |&o| {
        let medium = SphereMedium::new(0.5, c(1.5, 0.0))?;
        let r = series_f(point(0.501)?, &medium, o, &SeriesOptions::default())?;
        Ok(if r.f.is_finite() && r.converged {
            0.0
        } else {
            1.0
        })
    })
}

/// Rate constants for the unreduced formulas; the reduced `f` must not
/// depend on them.
const WAVE_NUMBERS: [f64; 2] = [1.7, 0.05];
const DENSITIES: [f64; 2] = [0.37, 1.25e4];
const GAMMA0: f64 = 2.3;

/// `f = -16 <Gamma> / (3 n v0 Gamma0)`, `v0 = 4 pi a^3 / 3`, `a = q/k`.
fn f_from_rate(rate: f64, n: f64, k: f64, q: f64) -> f64 {
    let a = q / k;
    let v0 = 4.0 * std::f64::consts::PI * a.powi(3) / 3.0;
    -16.0 * rate / (3.0 * n * v0 * GAMMA0)
}

fn normalization_series(_: &dyn IntegralSource) -> Result<Measurement> {
    let mut samples = Vec::new();
    for zeta in [1.0, 2.0, 5.0] {
        for o in Orientation::ALL {
            for k in WAVE_NUMBERS {
                for n in DENSITIES {
                    samples.push((
                        format!("{o} at zeta = {zeta}, k = {k}, n = {n}"),
                        (zeta, o, k, n),
                    ));
                }
            }
        }
    }
    let medium = absorber();
    worst(samples, |&(zeta, o, k, n)| {
        let reduced = series_f(point(zeta)?, &medium, o, &SeriesOptions::default())?;
        let mut sum = c(0.0, 0.0);
        for ell in 1..=reduced.terms_used {
            let a = multipole_amplitudes(ell, &medium)?;
            let je = j_closed(ell, zeta, o, Kind::Electric)?;
            let jm = j_closed(ell, zeta, o, Kind::Magnetic)?;
            let l = ell as f64;
            sum += c(0.0, -1.0).powi(ell as i32) * (l * (l + 1.0)) * (a.b_e * je + a.b_m * jm);
        }
        let rate = -(3.0 * std::f64::consts::PI * n / (4.0 * k.powi(3))) * GAMMA0 * sum.im;
        Ok(rel_real(f_from_rate(rate, n, k, medium.q), reduced.f))
    })
}

fn normalization_far(_: &dyn IntegralSource) -> Result<Measurement> {
    let mut samples = Vec::new();
    for zeta in [3.0, 10.0, 40.0] {
        for o in Orientation::ALL {
            for k in WAVE_NUMBERS {
                for n in DENSITIES {
                    samples.push((
                        format!("{o} at zeta = {zeta}, k = {k}, n = {n}"),
                        (zeta, o, k, n),
                    ));
                }
            }
        }
    }
    let medium = absorber();
    worst(samples, |&(zeta, o, k, n)| {
        let reduced = f_asymptotic_far(point(zeta)?, &medium, o)?;
        let mut sum = c(0.0, 0.0);
        for ell in 1..=40 {
            let a = multipole_amplitudes(ell, &medium)?;
            let l = ell as f64;
            let phase = match o {
                Orientation::Perpendicular => c(0.0, 1.0).powi(ell as i32),
                Orientation::Parallel => c(0.0, 1.0).powi(ell as i32 + 1),
            };
            sum += phase * (l * (l + 1.0)) * (a.b_e - a.b_m);
        }
        let power = match o {
            Orientation::Perpendicular => 1,
            Orientation::Parallel => 2,
        };
        let rate = 3.0 * std::f64::consts::PI * n / (8.0 * k.powi(3) * zeta.powi(power))
            * GAMMA0
            * (sum * c(0.0, 2.0 * zeta).exp()).im;
        Ok(rel_real(f_from_rate(rate, n, k, medium.q), reduced))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_sorted_and_unique() {
        let ids: Vec<_> = CHECKS.iter().map(|c| c.id).collect();
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(ids, sorted);
    }

    #[test]
    fn every_invariant_has_one_check() {
        let required = [
            "integrals.dual_path",
            "integrals.recurrence_order_shift",
            "integrals.recurrence_boundary",
            "integrals.decay",
            "rates.j_dual_path",
            "rates.series_vs_volume",
            "rates.near_contact_sign",
            "rates.far_decay_slope",
            "rates.term_ratio",
            "rates.null_contrast",
        ];
        for id in required {
            assert_eq!(CHECKS.iter().filter(|c| c.id == id).count(), 1, "{id}");
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for name in Suite::NAMES {
            assert_eq!(name.parse::<Suite>().unwrap().to_string(), name);
        }
        assert!("everything".parse::<Suite>().is_err());
        assert!(run_suite("bogus", None).is_err());
    }

    #[test]
    fn suites_partition_the_registry() {
        let total: usize = [Suite::Integrals, Suite::Rates, Suite::Asymptotics]
            .iter()
            .map(|&s| checks_in(s).len())
            .sum();
        assert_eq!(total, CHECKS.len());
        assert_eq!(checks_in(Suite::All).len(), CHECKS.len());
    }

    #[test]
    fn overrides_must_name_known_checks() {
        let mut map = BTreeMap::new();
        map.insert("integrals.nope".to_string(), 1.0);
        assert!(run_suite("integrals", Some(&map)).is_err());
    }

    #[test]
    fn slope_of_a_pure_power_law() {
        let zetas: Vec<f64> = (0..=4000).map(|i| 20.0 + 0.01 * i as f64).collect();
        let values: Vec<f64> = zetas.iter().map(|z| (2.0 * z).sin() / (z * z)).collect();
        assert!((maxima_slope(&zetas, &values) + 2.0).abs() < 0.01);
    }
}
