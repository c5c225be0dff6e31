//! One-dimensional parameter sweeps over frequency, thickness, angle or
//! substrate permittivity.

use rayon::prelude::*;

use crate::error::{ModelError, Result};
use crate::impedance::SeriesControl;
use crate::optics::{evaluate, OpticalCoefficients};
use crate::slab::fresnel_slab;
use crate::units::{IncidentWave, MetalParameters, ReducedProblem, StackConfiguration};

/// Smallest frequency a sweep may start at; the model is singular at Omega = 0.
pub const MIN_OMEGA_START: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    OmegaRatio,
    ThicknessNm,
    /// Radians.
    Theta,
    Eps2,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::OmegaRatio => "omega_ratio",
            SweepAxis::ThicknessNm => "d_nm",
            SweepAxis::Theta => "theta",
            SweepAxis::Eps2 => "eps2",
        }
    }
}

/// Every model input for a single evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelInputs {
    pub metal: MetalParameters,
    pub stack: StackConfiguration,
    pub wave: IncidentWave,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    /// Values for the axes that are not swept.
    pub fixed: ModelInputs,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointResult {
    pub coefficients: OpticalCoefficients,
    pub oracle: Option<OpticalCoefficients>,
    pub terms_used: usize,
    pub tail_bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub omega_ratio: f64,
    pub d_nm: f64,
    /// Radians.
    pub theta: f64,
    pub eps1: f64,
    pub eps2: f64,
    pub outcome: Result<PointResult>,
}

impl SweepSpec {
    /// Evenly spaced axis values; the last one is exactly `stop`.
    pub fn grid(&self) -> Vec<f64> {
        let span = self.stop - self.start;
        let last = self.steps - 1;
        (0..self.steps)
            .map(|i| {
                if i == last {
                    self.stop
                } else {
                    self.start + span * i as f64 / last as f64
                }
            })
            .collect()
    }

    /// Inputs for every grid point, or the first invalid one as a
    /// configuration error.
    pub fn points(&self) -> Result<Vec<ModelInputs>> {
        if self.steps < 2 {
            return Err(ModelError::Config(format!(
                "steps = {} (need >= 2)",
                self.steps
            )));
        }
        if !(self.start.is_finite() && self.stop.is_finite() && self.start < self.stop) {
            return Err(ModelError::Config(format!(
                "{} range {}..{} must satisfy start < stop",
                self.axis.name(),
                self.start,
                self.stop
            )));
        }
        if self.axis == SweepAxis::OmegaRatio && self.start < MIN_OMEGA_START {
            return Err(ModelError::Config(format!(
                "omega_ratio sweep must start at >= {MIN_OMEGA_START}, got {}",
                self.start
            )));
        }
        let fixed = self.fixed;
        self.grid()
            .into_iter()
            .map(|value| {
                let (stack, wave) = (fixed.stack, fixed.wave);
                let mut point = fixed;
                match self.axis {
                    SweepAxis::OmegaRatio => point.wave = IncidentWave::new(value, wave.theta())?,
                    SweepAxis::Theta => point.wave = IncidentWave::new(wave.omega_ratio(), value)?,
                    SweepAxis::ThicknessNm => {
                        point.stack = StackConfiguration::new(stack.eps1(), stack.eps2(), value)?
                    }
                    SweepAxis::Eps2 => {
                        point.stack = StackConfiguration::new(stack.eps1(), value, stack.d_nm())?
                    }
                }
                Ok(point)
            })
            .collect::<Result<Vec<_>>>()
            .map_err(|e| ModelError::Config(format!("{} sweep: {e}", self.axis.name())))
    }
}

/// Evaluates the kinetic model (and optionally the local slab) at one point.
pub fn evaluate_point(
    inputs: &ModelInputs,
    control: &SeriesControl,
    with_oracle: bool,
) -> SweepRow {
    let ModelInputs { metal, stack, wave } = *inputs;
    let outcome = ReducedProblem::new(&metal, &stack, &wave).and_then(|problem| {
        let evaluation = evaluate(&problem, control)?;
        let oracle = if with_oracle {
            Some(fresnel_slab(&metal, &stack, &wave)?)
        } else {
            None
        };
        Ok(PointResult {
            coefficients: evaluation.coefficients,
            oracle,
            terms_used: evaluation.impedances.terms_used,
            tail_bound: evaluation.impedances.tail_bound,
        })
    });
    SweepRow {
        omega_ratio: wave.omega_ratio(),
        d_nm: stack.d_nm(),
        theta: wave.theta(),
        eps1: stack.eps1(),
        eps2: stack.eps2(),
        outcome,
    }
}

/// Runs the sweep with grid points evaluated in parallel. Rows come back in
/// axis order; failing points yield rows carrying the error.
pub fn run_sweep(
    spec: &SweepSpec,
    control: &SeriesControl,
    with_oracle: bool,
) -> Result<Vec<SweepRow>> {
    let points = spec.points()?;
    Ok(points
        .par_iter()
        .map(|p| evaluate_point(p, control, with_oracle))
        .collect())
}

/// Same as [`run_sweep`] on the calling thread only.
pub fn run_sweep_sequential(
    spec: &SweepSpec,
    control: &SeriesControl,
    with_oracle: bool,
) -> Result<Vec<SweepRow>> {
    let points = spec.points()?;
    Ok(points
        .iter()
        .map(|p| evaluate_point(p, control, with_oracle))
        .collect())
}
