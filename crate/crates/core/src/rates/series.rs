//! Truncated multipole series for `f_perp` and `f_par`.

use num_complex::Complex64;
use serde::Serialize;

use super::asymptotic::dipole_limit_f;
use super::jint::JContext;
use super::weights::quasi_static_coefficient;
use super::{require_outside, EvalPoint, Kind, Orientation, SeriesResult};
use crate::mie::{amplitude_ladder, ScaledAmplitudes, SphereMedium};
use crate::specfun::MAX_ORDER;
use crate::{Error, Result};

/// Below this `zeta_a / q` the series is finished with a model tail.
pub const NEAR_CONTACT_RATIO: f64 = 1.05;

/// Exact terms summed before the model tail takes over.
pub const NEAR_CONTACT_EXACT_TERMS: usize = 40;

const ABSOLUTE_FLOOR: f64 = 1e-300;
const MODEL_TERM_LIMIT: usize = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesOptions {
    pub tol: f64,
    pub lmax_cap: usize,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        SeriesOptions {
            tol: 1e-10,
            lmax_cap: 200,
        }
    }
}

impl SeriesOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "tolerance {} must lie in (0, 1)",
                self.tol
            )));
        }
        if self.lmax_cap < 3 || self.lmax_cap > MAX_ORDER - 2 {
            return Err(Error::InvalidParameter(format!(
                "lmax cap {} must lie in 3..={}",
                self.lmax_cap,
                MAX_ORDER - 2
            )));
        }
        Ok(())
    }
}

fn term(ctx: &JContext, a: &ScaledAmplitudes, orientation: Orientation) -> Result<Complex64> {
    let ell = a.ell;
    let je = ctx.j_scaled(ell, orientation, Kind::Electric)?;
    let jm = ctx.j_scaled(ell, orientation, Kind::Magnetic)?;
    let t = (a.electric * je + a.magnetic * jm)
        .scale((ell * (ell + 1)) as f64)
        .rotate_i(-(ell as i64));
    t.to_complex("series_f")
}

/// The series terms `(-i)^l l(l+1) [B^e_l J^e_l + B^m_l J^m_l]`, `l = 1..=lmax`.
pub fn series_terms(
    point: EvalPoint,
    medium: &SphereMedium,
    orientation: Orientation,
    lmax: usize,
) -> Result<Vec<Complex64>> {
    require_outside(point.zeta_a, medium.q)?;
    let amps = amplitude_ladder(lmax, medium)?;
    let ctx = JContext::new(lmax, point.zeta_a)?;
    amps.iter().map(|a| term(&ctx, a, orientation)).collect()
}

/// Small-size, small-distance form of the series term,
/// `-((l+1)/l) c_l (eps-1)/(eps+(l+1)/l) x^(2l+1)` with `x = q/zeta`.
fn model_term(ell: usize, x_pow: f64, eps: Complex64, orientation: Orientation) -> Complex64 {
    let r = (ell + 1) as f64 / ell as f64;
    (eps - 1.0) / (eps + r) * (-r * quasi_static_coefficient(ell, orientation) * x_pow)
}

/// `f = (3/q^3) Im sum_l t_l`.
///
/// Terms are added until three in a row change `f` by less than
/// `tol |f|` and the geometric remainder `|c| rho/(1-rho)`, `rho = (q/zeta)^2`,
/// is below the same bound. For `zeta/q < 1.05` the sum stops after 40 exact
/// terms and the rest is taken from the model terms, rescaled to match the
/// last exact one.
pub fn series_f(
    point: EvalPoint,
    medium: &SphereMedium,
    orientation: Orientation,
    opts: &SeriesOptions,
) -> Result<SeriesResult> {
    let near = point.zeta_a / medium.q < NEAR_CONTACT_RATIO;
    summed(point, medium, orientation, opts, near)
}

fn summed(
    point: EvalPoint,
    medium: &SphereMedium,
    orientation: Orientation,
    opts: &SeriesOptions,
    near: bool,
) -> Result<SeriesResult> {
    opts.validate()?;
    if medium.is_dipole_limit() {
        let f = dipole_limit_f(point, medium.epsilon, orientation)?;
        return Ok(SeriesResult {
            f,
            terms_used: 1,
            tail_estimate: 0.0,
            converged: true,
        });
    }
    let zeta = point.zeta_a;
    let q = medium.q;
    require_outside(zeta, q)?;
    let prefactor = 3.0 / (q * q * q);
    let x = q / zeta;
    let rho = x * x;
    let lmax = opts.lmax_cap;
    let switch = NEAR_CONTACT_EXACT_TERMS.min(lmax);
    let amps = amplitude_ladder(lmax, medium)?;
    let ctx = JContext::new(lmax, zeta)?;

    let mut sum = Complex64::new(0.0, 0.0);
    let mut quiet = 0;
    let mut tail = f64::INFINITY;
    let mut recent = [Complex64::new(0.0, 0.0); 2];
    for a in &amps {
        let ell = a.ell;
        let t = term(&ctx, a, orientation)?;
        sum += t;
        recent = [recent[1], t];
        let f = prefactor * sum.im;
        let c = (prefactor * t.im).abs();
        let bound = opts.tol * f.abs() + ABSOLUTE_FLOOR;
        quiet = if c <= bound { quiet + 1 } else { 0 };
        tail = c * rho / (1.0 - rho);
        if quiet >= 3 && tail <= bound {
            return Ok(SeriesResult {
                f,
                terms_used: ell,
                tail_estimate: tail,
                converged: true,
            });
        }
        if near && ell == switch {
            return Ok(near_contact_tail(
                sum,
                recent,
                ell,
                x,
                medium,
                orientation,
                prefactor,
                opts.tol,
            ));
        }
    }
    let f = prefactor * sum.im;
    Ok(SeriesResult {
        f,
        terms_used: lmax,
        tail_estimate: tail,
        converged: tail <= opts.tol * f.abs() + ABSOLUTE_FLOOR,
    })
}

#[allow(clippy::too_many_arguments)]
fn near_contact_tail(
    exact: Complex64,
    recent: [Complex64; 2],
    last: usize,
    x: f64,
    medium: &SphereMedium,
    orientation: Orientation,
    prefactor: f64,
    tol: f64,
) -> SeriesResult {
    let eps = medium.epsilon;
    let x2 = x * x;
    let x_last = x.powi(2 * last as i32 + 1);
    let m_last = model_term(last, x_last, eps, orientation);
    let m_prev = model_term(last - 1, x_last / x2, eps, orientation);
    let ratio = |t: Complex64, m: Complex64| {
        if m.norm() > 0.0 {
            t / m
        } else {
            Complex64::new(0.0, 0.0)
        }
    };
    let kappa = ratio(recent[1], m_last);
    let drift = kappa - ratio(recent[0], m_prev);

    let mut model_sum = Complex64::new(0.0, 0.0);
    let mut x_pow = x_last;
    let mut ell = last;
    loop {
        ell += 1;
        x_pow *= x2;
        let m = model_term(ell, x_pow, eps, orientation);
        model_sum += m;
        if m.norm() <= 1e-17 * model_sum.norm() || x_pow == 0.0 {
            break;
        }
        if ell >= MODEL_TERM_LIMIT {
            model_sum += m * (x2 / (1.0 - x2));
            break;
        }
    }
    let f = prefactor * (exact + kappa * model_sum).im;
    let tail = prefactor * last as f64 * (drift * model_sum).im.abs();
    SeriesResult {
        f,
        terms_used: last,
        tail_estimate: tail,
        converged: tail <= tol * f.abs() + ABSOLUTE_FLOOR,
    }
}
