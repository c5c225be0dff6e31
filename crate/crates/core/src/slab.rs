//! Local-response reference model: a homogeneous Drude slab between two
//! dielectrics, solved with s-polarized Fresnel coefficients and the Airy
//! sum for one layer.
//!
//! This path is deliberately separate from the impedance machinery. When the
//! Fermi velocity goes to zero the kinetic permittivity loses its wavevector
//! dependence and both must give the same T, R and A.

use num_complex::Complex64;

use crate::error::{ModelError, Result};
use crate::optics::OpticalCoefficients;
use crate::units::{reduced_thickness, IncidentWave, MetalParameters, StackConfiguration};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlabModel {
    /// `1 - 1 / (Omega (Omega + i eps))`.
    pub eps_film: Complex64,
    pub eps1: f64,
    pub eps2: f64,
    /// Phase across the film, `beta = Omega W kappa_film`.
    pub phase_thickness: Complex64,
    /// `sqrt(eps_j - eps1 sin^2 theta)` for incidence medium, film and exit medium.
    pub kappa: [Complex64; 3],
}

/// `sqrt(x)` on the branch with non-negative imaginary part (decaying or
/// outgoing wave); for real non-negative `x` this is the ordinary root.
fn forward_root(x: Complex64) -> Complex64 {
    if x.im == 0.0 {
        return if x.re >= 0.0 {
            Complex64::new(x.re.sqrt(), 0.0)
        } else {
            Complex64::new(0.0, (-x.re).sqrt())
        };
    }
    let r = x.sqrt();
    if r.im < 0.0 {
        -r
    } else {
        r
    }
}

impl SlabModel {
    pub fn new(
        metal: &MetalParameters,
        stack: &StackConfiguration,
        wave: &IncidentWave,
    ) -> Result<Self> {
        let omega = wave.omega_ratio();
        let eps_film = 1.0 - 1.0 / (omega * Complex64::new(omega, metal.eps_coll()));
        let (eps1, eps2) = (stack.eps1(), stack.eps2());
        let tangential = eps1 * wave.theta().sin().powi(2);
        let kappa = [
            Complex64::new(eps1.sqrt() * wave.theta().cos(), 0.0),
            forward_root(eps_film - tangential),
            forward_root(Complex64::new(eps2 - tangential, 0.0)),
        ];
        let w = reduced_thickness(metal, stack.d_nm())?;
        Ok(Self {
            eps_film,
            eps1,
            eps2,
            phase_thickness: omega * w * kappa[1],
            kappa,
        })
    }

    pub fn coefficients(&self) -> Result<OpticalCoefficients> {
        let [k1, kf, k2] = self.kappa;
        let reflection = |a: Complex64, b: Complex64| (a - b) / (a + b);
        let transmission = |a: Complex64, b: Complex64| 2.0 * a / (a + b);
        if (k1 + kf).norm() == 0.0 || (kf + k2).norm() == 0.0 {
            return Err(ModelError::Degenerate(
                "interface with kappa_a + kappa_b = 0",
            ));
        }
        let (r1f, rf2) = (reflection(k1, kf), reflection(kf, k2));
        let (t1f, tf2) = (transmission(k1, kf), transmission(kf, k2));
        let round_trip = (Complex64::i() * 2.0 * self.phase_thickness).exp();
        let denominator = 1.0 + r1f * rf2 * round_trip;
        if denominator.norm() < 1e-300 {
            return Err(ModelError::Degenerate(
                "slab resonance denominator vanishes",
            ));
        }
        let r = (r1f + rf2 * round_trip) / denominator;
        let t = t1f * tf2 * (Complex64::i() * self.phase_thickness).exp() / denominator;
        let transmittance = k2.re / k1.re * t.norm_sqr();
        Ok(OpticalCoefficients::from_transmittance_reflectance(
            transmittance,
            r.norm_sqr(),
        ))
    }
}

/// Drude-slab T, R and A for the given configuration.
pub fn fresnel_slab(
    metal: &MetalParameters,
    stack: &StackConfiguration,
    wave: &IncidentWave,
) -> Result<OpticalCoefficients> {
    SlabModel::new(metal, stack, wave)?.coefficients()
}
