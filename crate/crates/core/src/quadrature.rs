//! Adaptive 21-point Gauss–Kronrod quadrature for complex integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_233_583_340,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Weights of the embedded 10-point Gauss rule (nodes `XGK[1], XGK[3], ..`).
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadratureOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl QuadratureOptions {
    pub fn relative(rel_tol: f64) -> Self {
        QuadratureOptions {
            rel_tol,
            abs_tol: 0.0,
            max_subdivisions: 2000,
        }
    }
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions::relative(1e-12)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    /// error estimate is the roundoff floor; bisection cannot improve it
    at_floor: bool,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod21<F>(f: &F, a: f64, b: f64) -> Result<Panel>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut kronrod = fc * WGK[10];
    let mut gauss = Complex64::new(0.0, 0.0);
    let mut abs_sum = fc.norm() * WGK[10];
    let mut values = [(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)); 10];
    for (j, slot) in values.iter_mut().enumerate() {
        let dx = half * XGK[j];
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        kronrod += (f1 + f2) * WGK[j];
        abs_sum += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
        *slot = (f1, f2);
    }
    let mean = kronrod * 0.5;
    let mut asc = (fc - mean).norm() * WGK[10];
    for (j, (f1, f2)) in values.iter().enumerate() {
        asc += ((f1 - mean).norm() + (f2 - mean).norm()) * WGK[j];
    }
    let scale = half.abs();
    let value = kronrod * half;
    let res_abs = abs_sum * scale;
    let res_asc = asc * scale;
    let mut error = ((kronrod - gauss) * half).norm();
    // QUADPACK error rescaling
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * res_abs;
    let at_floor = res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) && error <= floor;
    if at_floor {
        error = floor;
    }
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(Error::QuadratureNonConvergence {
            estimate: f64::INFINITY,
            requested: 0.0,
        });
    }
    Ok(Panel {
        a,
        b,
        value,
        error,
        at_floor,
    })
}

/// Globally adaptive integration of `f` over `[a, b]`.
pub fn integrate<F>(f: F, a: f64, b: f64, opts: &QuadratureOptions) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let first = kronrod21(&f, a, b)?;
    let mut total = first.value;
    let mut error = first.error;
    let mut heap = BinaryHeap::new();
    let mut settled = Vec::new();
    if first.at_floor {
        settled.push(first);
    } else {
        heap.push(first);
    }
    let mut evaluations = 21;
    let mut subdivisions = 0;
    loop {
        let target = opts.abs_tol.max(opts.rel_tol * total.norm());
        if error <= target {
            break;
        }
        let worst = match heap.pop() {
            Some(p) => p,
            // every panel is limited by roundoff
            None => break,
        };
        let mid = 0.5 * (worst.a + worst.b);
        if subdivisions >= opts.max_subdivisions
            || (worst.b - worst.a).abs() <= 1e-13 * (worst.a.abs() + worst.b.abs())
        {
            return Err(Error::QuadratureNonConvergence {
                estimate: error,
                requested: target,
            });
        }
        let left = kronrod21(&f, worst.a, mid)?;
        let right = kronrod21(&f, mid, worst.b)?;
        evaluations += 42;
        subdivisions += 1;
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        for p in [left, right] {
            if p.at_floor {
                settled.push(p);
            } else {
                heap.push(p);
            }
        }
    }
    let heap = heap.into_iter().chain(settled).collect::<Vec<_>>();
    // resum to shed the drift of incremental updates
    let value = heap.iter().map(|p| p.value).sum();
    let error = heap.iter().map(|p| p.error).sum();
    Ok(QuadratureResult {
        value,
        error,
        evaluations,
    })
}

/// Integrate over `[a, inf)` for integrands that decay on the length scale
/// `scale`. Panels `[a, a+L], [a+L, a+3L], ..` double in width until both
/// the last panel and the integrand at its end are negligible.
pub fn integrate_half_line<F>(
    f: F,
    a: f64,
    scale: f64,
    opts: &QuadratureOptions,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let mut lo = a;
    let mut width = scale;
    let mut total = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    let mut evaluations = 0;
    for _ in 0..80 {
        let hi = lo + width;
        let panel_opts = QuadratureOptions {
            abs_tol: opts.abs_tol.max(0.25 * opts.rel_tol * total.norm()),
            ..*opts
        };
        let panel = integrate(&f, lo, hi, &panel_opts)?;
        total += panel.value;
        error += panel.error;
        evaluations += panel.evaluations;
        let tail = f(hi)?.norm() * scale;
        evaluations += 1;
        let negligible = 1e-2 * opts.abs_tol.max(opts.rel_tol * total.norm());
        if panel.value.norm() <= negligible.max(f64::MIN_POSITIVE) && tail <= negligible {
            return Ok(QuadratureResult {
                value: total,
                error,
                evaluations,
            });
        }
        if tail == 0.0 && panel.value.norm() == 0.0 && total.norm() == 0.0 {
            return Ok(QuadratureResult {
                value: total,
                error,
                evaluations,
            });
        }
        lo = hi;
        width *= 2.0;
    }
    Err(Error::QuadratureNonConvergence {
        estimate: f64::INFINITY,
        requested: opts.rel_tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(
            |x| Ok(Complex64::new(x.powi(5), -3.0 * x * x)),
            -1.0,
            2.0,
            &QuadratureOptions::relative(1e-14),
        )
        .unwrap();
        let expected = Complex64::new((64.0 - 1.0) / 6.0, -(8.0 + 1.0));
        assert!((r.value - expected).norm() < 1e-13);
    }

    #[test]
    fn peaked_integrand() {
        // int_0^1 1/(1e-4 + x^2) = atan(1e2)/1e-2
        let r = integrate(
            |x| Ok(Complex64::new(1.0 / (1e-4 + x * x), 0.0)),
            0.0,
            1.0,
            &QuadratureOptions::relative(1e-12),
        )
        .unwrap();
        let expected = (100.0f64).atan() * 100.0;
        assert!((r.value.re - expected).abs() < 1e-10 * expected);
    }

    #[test]
    fn half_line_damped_oscillation() {
        // int_0^inf e^{-(1-2i) s} ds = 1/(1-2i)
        let w = Complex64::new(1.0, -2.0);
        let r = integrate_half_line(
            |s| Ok((-w * s).exp()),
            0.0,
            1.0,
            &QuadratureOptions::relative(1e-13),
        )
        .unwrap();
        assert!((r.value - w.inv()).norm() < 1e-13);
    }

    #[test]
    fn identically_zero_integrand() {
        let r = integrate_half_line(
            |_| Ok(Complex64::new(0.0, 0.0)),
            0.0,
            1.0,
            &QuadratureOptions::default(),
        )
        .unwrap();
        assert_eq!(r.value, Complex64::new(0.0, 0.0));
    }
}
