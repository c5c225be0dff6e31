//! Transmittance, reflectance and absorptance of an S-wave from the two
//! surface impedances.
//!
//! The incident problem is a superposition of the antisymmetric and the
//! symmetric configurations. With
//! `p_j = (sqrt(eps1) cos(theta) Z_j - 1) / (sqrt(eps1) cos(theta) Z_j + 1)`,
//! `p = (p1 + p2) / 2`, `s = sqrt(eps12 - sin^2 theta)` and `c = cos(theta)`:
//!
//! ```text
//! R = | (s (p + p1 p2) + c (p - p1 p2)) / (s (1 + p) + c (1 - p)) |^2
//! T = c Re(s) | (p2 - p1) / (s (1 + p) + c (1 - p)) |^2
//! A = 1 - T - R
//! ```
//!
//! Beyond the critical angle `s` is purely imaginary and `T` vanishes.

use num_complex::Complex64;

use crate::error::{ModelError, Result};
use crate::impedance::{impedance_pair, ImpedancePair, SeriesControl};
use crate::units::{IncidentWave, MetalParameters, ReducedProblem, StackConfiguration};

/// Radicands of `sqrt(eps12 - sin^2 theta)` within this many ulps of zero are
/// treated as exactly critical.
const CRITICAL_ULPS: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudePair {
    pub p1: Complex64,
    pub p2: Complex64,
    pub p_bar: Complex64,
}

impl AmplitudePair {
    pub fn new(p1: Complex64, p2: Complex64) -> Self {
        Self {
            p1,
            p2,
            p_bar: (p1 + p2) / 2.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpticalCoefficients {
    pub transmittance: f64,
    pub reflectance: f64,
    pub absorptance: f64,
    /// `|1 - T - R - A|`; zero up to rounding.
    pub energy_residual: f64,
}

impl OpticalCoefficients {
    pub fn from_transmittance_reflectance(transmittance: f64, reflectance: f64) -> Self {
        let absorptance = absorptance(transmittance, reflectance);
        Self {
            transmittance,
            reflectance,
            absorptance,
            energy_residual: (1.0 - transmittance - reflectance - absorptance).abs(),
        }
    }
}

/// Amplitude factors from the impedance pair.
pub fn amplitude_factors(z: &ImpedancePair, eps1: f64, theta: f64) -> Result<AmplitudePair> {
    let cos = theta.cos();
    if !(cos > 0.0) {
        return Err(ModelError::domain("theta", theta, "cos(theta) > 0"));
    }
    let scale = eps1.sqrt() * cos;
    let factor = |z: Complex64| {
        let a = scale * z;
        let denominator = a + 1.0;
        if denominator == Complex64::new(0.0, 0.0) {
            return Err(ModelError::AmplitudePole);
        }
        Ok((a - 1.0) / denominator)
    };
    Ok(AmplitudePair::new(factor(z.z1)?, factor(z.z2)?))
}

/// `sqrt(eps12 - sin^2 theta)`, normal wavenumber in medium 2 relative to
/// `k1 / cos(theta)`. Non-negative real, or `+i sqrt(|.|)` beyond the critical
/// angle.
pub fn exit_normal_factor(eps12: f64, theta: f64) -> Complex64 {
    let sin_sq = theta.sin().powi(2);
    let radicand = eps12 - sin_sq;
    if radicand.abs() <= CRITICAL_ULPS * f64::EPSILON * eps12.max(sin_sq) {
        Complex64::new(0.0, 0.0)
    } else if radicand > 0.0 {
        Complex64::new(radicand.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-radicand).sqrt())
    }
}

fn common_denominator(p: &AmplitudePair, s: Complex64, cos: f64) -> Result<Complex64> {
    let d = s * (1.0 + p.p_bar) + cos * (1.0 - p.p_bar);
    if d.norm() < 1e-300 {
        return Err(ModelError::Degenerate("vanishing denominator in T/R"));
    }
    Ok(d)
}

fn check_eps12(eps12: f64) -> Result<()> {
    if eps12.is_finite() && eps12 > 0.0 {
        Ok(())
    } else {
        Err(ModelError::domain("eps12", eps12, "eps12 > 0"))
    }
}

pub fn reflectance(p: &AmplitudePair, eps12: f64, theta: f64) -> Result<f64> {
    check_eps12(eps12)?;
    let s = exit_normal_factor(eps12, theta);
    let cos = theta.cos();
    let product = p.p1 * p.p2;
    let numerator = s * (p.p_bar + product) + cos * (p.p_bar - product);
    Ok((numerator / common_denominator(p, s, cos)?).norm_sqr())
}

pub fn transmittance(p: &AmplitudePair, eps12: f64, theta: f64) -> Result<f64> {
    check_eps12(eps12)?;
    let s = exit_normal_factor(eps12, theta);
    let cos = theta.cos();
    let ratio = (p.p2 - p.p1) / common_denominator(p, s, cos)?;
    Ok(cos * s.re * ratio.norm_sqr())
}

pub fn absorptance(transmittance: f64, reflectance: f64) -> f64 {
    1.0 - transmittance - reflectance
}

/// Coefficients and the impedances they came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub coefficients: OpticalCoefficients,
    pub impedances: ImpedancePair,
}

pub fn evaluate(problem: &ReducedProblem, control: &SeriesControl) -> Result<Evaluation> {
    let context = || {
        format!(
            "omega_ratio={}, W={}, theta={}",
            problem.omega, problem.thickness, problem.theta
        )
    };
    let impedances = impedance_pair(problem, control).map_err(|e| e.context(context()))?;
    let amplitudes = amplitude_factors(&impedances, problem.eps1, problem.theta)
        .map_err(|e| e.context(context()))?;
    let eps12 = problem.eps12();
    let t = transmittance(&amplitudes, eps12, problem.theta).map_err(|e| e.context(context()))?;
    let r = reflectance(&amplitudes, eps12, problem.theta).map_err(|e| e.context(context()))?;
    Ok(Evaluation {
        coefficients: OpticalCoefficients::from_transmittance_reflectance(t, r),
        impedances,
    })
}

/// Full pipeline: impedances, amplitude factors, then T, R and A.
pub fn coefficients(
    metal: &MetalParameters,
    stack: &StackConfiguration,
    wave: &IncidentWave,
    control: &SeriesControl,
) -> Result<OpticalCoefficients> {
    let problem = ReducedProblem::new(metal, stack, wave)?;
    evaluate(&problem, control).map(|e| e.coefficients)
}
