//! Evaluation strategies for the correction function, selectable by name.

use std::collections::BTreeMap;

use super::{asymptotic, series, volume, EvalPoint, Orientation, SeriesOptions, SeriesResult};
use crate::mie::SphereMedium;
use crate::{Error, Result};

/// One way of evaluating `f` at a point.
pub trait RateMethod: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn evaluate(
        &self,
        point: EvalPoint,
        medium: &SphereMedium,
        orientation: Orientation,
        opts: &SeriesOptions,
    ) -> Result<SeriesResult>;
}

/// Multipole series; `q = 0` is routed to the point-scatterer limit.
pub struct Series;

impl RateMethod for Series {
    fn name(&self) -> &'static str {
        "series"
    }
    fn description(&self) -> &'static str {
        "multipole series with closed-form distance integrals"
    }
    fn evaluate(
        &self,
        point: EvalPoint,
        medium: &SphereMedium,
        orientation: Orientation,
        opts: &SeriesOptions,
    ) -> Result<SeriesResult> {
        series::series_f(point, medium, orientation, opts)
    }
}

pub struct DipoleLimit;

impl RateMethod for DipoleLimit {
    fn name(&self) -> &'static str {
        "dipole"
    }
    fn description(&self) -> &'static str {
        "point-scatterer limit q -> 0 (size parameter ignored)"
    }
    fn evaluate(
        &self,
        point: EvalPoint,
        medium: &SphereMedium,
        orientation: Orientation,
        _opts: &SeriesOptions,
    ) -> Result<SeriesResult> {
        let f = asymptotic::dipole_limit_f(point, medium.epsilon, orientation)?;
        Ok(SeriesResult::exact(f))
    }
}

pub struct FarAsymptote;

impl RateMethod for FarAsymptote {
    fn name(&self) -> &'static str {
        "far"
    }
    fn description(&self) -> &'static str {
        "large-distance asymptote"
    }
    fn evaluate(
        &self,
        point: EvalPoint,
        medium: &SphereMedium,
        orientation: Orientation,
        _opts: &SeriesOptions,
    ) -> Result<SeriesResult> {
        Ok(SeriesResult::exact(asymptotic::f_asymptotic_far(
            point,
            medium,
            orientation,
        )?))
    }
}

pub struct NearAsymptote;

impl RateMethod for NearAsymptote {
    fn name(&self) -> &'static str {
        "near"
    }
    fn description(&self) -> &'static str {
        "near-contact asymptote"
    }
    fn evaluate(
        &self,
        point: EvalPoint,
        medium: &SphereMedium,
        orientation: Orientation,
        _opts: &SeriesOptions,
    ) -> Result<SeriesResult> {
        Ok(SeriesResult::exact(asymptotic::f_asymptotic_near(
            point,
            medium,
            orientation,
        )?))
    }
}

pub struct VolumeIntegral;

impl RateMethod for VolumeIntegral {
    fn name(&self) -> &'static str {
        "volume"
    }
    fn description(&self) -> &'static str {
        "direct quadrature of the averaged Green tensor (slow)"
    }
    fn evaluate(
        &self,
        point: EvalPoint,
        medium: &SphereMedium,
        orientation: Orientation,
        opts: &SeriesOptions,
    ) -> Result<SeriesResult> {
        let f = volume::volume_integral_oracle(point, medium, orientation, opts.tol.max(1e-12))?;
        Ok(SeriesResult::exact(f))
    }
}

/// Named collection of [`RateMethod`]s.
pub struct MethodRegistry {
    methods: BTreeMap<&'static str, Box<dyn RateMethod>>,
}

impl Default for MethodRegistry {
    fn default() -> Self {
        let mut registry = MethodRegistry::empty();
        registry.register(Box::new(Series));
        registry.register(Box::new(DipoleLimit));
        registry.register(Box::new(FarAsymptote));
        registry.register(Box::new(NearAsymptote));
        registry.register(Box::new(VolumeIntegral));
        registry
    }
}

impl MethodRegistry {
    pub fn empty() -> Self {
        MethodRegistry {
            methods: BTreeMap::new(),
        }
    }

    /// Adds `method`, replacing any method of the same name.
    pub fn register(&mut self, method: Box<dyn RateMethod>) {
        self.methods.insert(method.name(), method);
    }

    pub fn get(&self, name: &str) -> Result<&dyn RateMethod> {
        self.methods.get(name).map(|m| m.as_ref()).ok_or_else(|| {
            Error::InvalidParameter(format!(
                "unknown method '{name}' (available: {})",
                self.names().join(", ")
            ))
        })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.methods.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn RateMethod> {
        self.methods.values().map(|m| m.as_ref())
    }
}
