//! Physical parameters and their reduction to dimensionless form.
//!
//! Everything here is CGS: velocities in cm/s, the plasma frequency in rad/s.
//! Film thickness is given in nanometres. Lengths are scaled by `c / omega_p`
//! and frequencies by `omega_p`, so the rest of the crate only ever sees
//! [`ReducedProblem`].

use crate::error::{ModelError, Result};

/// Speed of light in vacuum, cm/s.
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e10;

const NM_TO_CM: f64 = 1e-7;

/// Material parameters of the film metal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetalParameters {
    omega_p: f64,
    v_f: f64,
    eps_coll: f64,
}

impl MetalParameters {
    /// `omega_p` in rad/s, `v_f` in cm/s, `eps_coll` the collision frequency
    /// in units of the plasma frequency.
    pub fn new(omega_p: f64, v_f: f64, eps_coll: f64) -> Result<Self> {
        if !(omega_p.is_finite() && omega_p > 0.0) {
            return Err(ModelError::domain("omega_p", omega_p, "omega_p > 0"));
        }
        if !(v_f.is_finite() && v_f > 0.0 && v_f < SPEED_OF_LIGHT) {
            return Err(ModelError::domain("v_f", v_f, "0 < v_f < c"));
        }
        if !(eps_coll.is_finite() && eps_coll >= 0.0) {
            return Err(ModelError::domain("eps_coll", eps_coll, "eps_coll >= 0"));
        }
        Ok(Self {
            omega_p,
            v_f,
            eps_coll,
        })
    }

    /// Sodium: omega_p = 6.5e15 rad/s, v_F = 8.52e7 cm/s, nu = 0.001 omega_p.
    pub fn sodium() -> Self {
        Self {
            omega_p: 6.5e15,
            v_f: 8.52e7,
            eps_coll: 1e-3,
        }
    }

    pub fn omega_p(&self) -> f64 {
        self.omega_p
    }

    pub fn v_f(&self) -> f64 {
        self.v_f
    }

    pub fn eps_coll(&self) -> f64 {
        self.eps_coll
    }

    /// v_F / c.
    pub fn fermi_ratio(&self) -> f64 {
        self.v_f / SPEED_OF_LIGHT
    }

    /// Same metal with the Fermi velocity multiplied by `factor`.
    pub fn with_fermi_velocity_scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.omega_p, self.v_f * factor, self.eps_coll)
    }

    pub fn with_collision_ratio(&self, eps_coll: f64) -> Result<Self> {
        Self::new(self.omega_p, self.v_f, eps_coll)
    }
}

/// The two dielectric half-spaces and the film thickness between them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StackConfiguration {
    eps1: f64,
    eps2: f64,
    d_nm: f64,
}

impl StackConfiguration {
    /// `eps1` is the incidence side, `eps2` the exit side. Both are real:
    /// the surrounding media are taken as lossless.
    pub fn new(eps1: f64, eps2: f64, d_nm: f64) -> Result<Self> {
        if !(eps1.is_finite() && eps1 > 0.0) {
            return Err(ModelError::domain("eps1", eps1, "eps1 > 0"));
        }
        if !(eps2.is_finite() && eps2 > 0.0) {
            return Err(ModelError::domain("eps2", eps2, "eps2 > 0"));
        }
        if !(d_nm.is_finite() && d_nm > 0.0) {
            return Err(ModelError::domain("d_nm", d_nm, "d_nm > 0"));
        }
        Ok(Self { eps1, eps2, d_nm })
    }

    pub fn eps1(&self) -> f64 {
        self.eps1
    }

    pub fn eps2(&self) -> f64 {
        self.eps2
    }

    pub fn d_nm(&self) -> f64 {
        self.d_nm
    }
}

/// Incident plane wave: frequency in units of omega_p and angle of incidence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IncidentWave {
    omega_ratio: f64,
    theta: f64,
}

impl IncidentWave {
    /// `theta` in radians, `0 <= theta < pi/2`.
    pub fn new(omega_ratio: f64, theta: f64) -> Result<Self> {
        if !(omega_ratio.is_finite() && omega_ratio > 0.0) {
            return Err(ModelError::domain(
                "omega_ratio",
                omega_ratio,
                "omega_ratio > 0",
            ));
        }
        if !(theta.is_finite() && (0.0..std::f64::consts::FRAC_PI_2).contains(&theta)) {
            return Err(ModelError::domain("theta", theta, "0 <= theta < pi/2"));
        }
        Ok(Self { omega_ratio, theta })
    }

    pub fn from_degrees(omega_ratio: f64, theta_deg: f64) -> Result<Self> {
        Self::new(omega_ratio, theta_deg.to_radians())
    }

    pub fn omega_ratio(&self) -> f64 {
        self.omega_ratio
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

/// Reduced film thickness `W = omega_p d / c` with `d` given in nanometres.
pub fn reduced_thickness(metal: &MetalParameters, d_nm: f64) -> Result<f64> {
    if !(d_nm.is_finite() && d_nm > 0.0) {
        return Err(ModelError::domain("d_nm", d_nm, "d_nm > 0"));
    }
    Ok(metal.omega_p * d_nm * NM_TO_CM / SPEED_OF_LIGHT)
}

/// `eps2 / eps1`.
pub fn relative_permittivity_ratio(stack: &StackConfiguration) -> f64 {
    stack.eps2 / stack.eps1
}

/// Dimensionless form of one forward-model evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedProblem {
    /// Omega = omega / omega_p.
    pub omega: f64,
    /// nu / omega_p.
    pub eps_coll: f64,
    /// v_F / c.
    pub fermi_ratio: f64,
    /// W = omega_p d / c.
    pub thickness: f64,
    pub eps1: f64,
    pub eps2: f64,
    /// Angle of incidence, radians.
    pub theta: f64,
}

impl ReducedProblem {
    pub fn new(
        metal: &MetalParameters,
        stack: &StackConfiguration,
        wave: &IncidentWave,
    ) -> Result<Self> {
        Ok(Self {
            omega: wave.omega_ratio,
            eps_coll: metal.eps_coll,
            fermi_ratio: metal.fermi_ratio(),
            thickness: reduced_thickness(metal, stack.d_nm)?,
            eps1: stack.eps1,
            eps2: stack.eps2,
            theta: wave.theta,
        })
    }

    pub fn eps12(&self) -> f64 {
        self.eps2 / self.eps1
    }

    /// Squared tangential wavevector `eps1 Omega^2 sin^2 theta`, conserved
    /// across every interface.
    pub fn tangential_sq(&self) -> f64 {
        let s = self.theta.sin();
        self.eps1 * self.omega * self.omega * s * s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sodium_thickness_at_100_nm() {
        let w = reduced_thickness(&MetalParameters::sodium(), 100.0).unwrap();
        // 6.5e15 * 1e-5 / 2.99792458e10
        assert!((w - 2.168_166_618_787_988).abs() < 1e-12);
    }

    #[test]
    fn unit_thickness_when_omega_p_is_c_times_1e7() {
        let metal = MetalParameters::new(SPEED_OF_LIGHT * 1e7, 1e7, 0.0).unwrap();
        assert_eq!(reduced_thickness(&metal, 1.0).unwrap(), 1.0);
    }

    #[test]
    fn thickness_is_linear() {
        let na = MetalParameters::sodium();
        let w1 = reduced_thickness(&na, 100.0).unwrap();
        let w2 = reduced_thickness(&na, 200.0).unwrap();
        assert_eq!(w2, 2.0 * w1);
        let doubled = MetalParameters::new(2.0 * na.omega_p(), na.v_f(), na.eps_coll()).unwrap();
        assert_eq!(reduced_thickness(&doubled, 100.0).unwrap(), 2.0 * w1);
    }

    #[test]
    fn non_positive_thickness_rejected() {
        let na = MetalParameters::sodium();
        assert!(matches!(
            reduced_thickness(&na, 0.0),
            Err(ModelError::Domain { name: "d_nm", .. })
        ));
        assert!(reduced_thickness(&na, -3.0).is_err());
        assert!(StackConfiguration::new(1.0, 4.0, 0.0).is_err());
    }

    #[test]
    fn permittivity_ratio() {
        let r =
            |e1, e2| relative_permittivity_ratio(&StackConfiguration::new(e1, e2, 100.0).unwrap());
        assert_eq!(r(1.0, 4.0), 4.0);
        assert_eq!(r(2.5, 2.5), 1.0);
        assert_eq!(r(4.0, 1.0), 0.25);
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(StackConfiguration::new(0.0, 4.0, 100.0).is_err());
        assert!(StackConfiguration::new(-1.0, 4.0, 100.0).is_err());
        assert!(StackConfiguration::new(1.0, 0.0, 100.0).is_err());
        assert!(MetalParameters::new(0.0, 1e8, 0.0).is_err());
        assert!(MetalParameters::new(1e15, SPEED_OF_LIGHT, 0.0).is_err());
        assert!(MetalParameters::new(1e15, 1e8, -1e-3).is_err());
        assert!(IncidentWave::new(0.0, 0.0).is_err());
        assert!(IncidentWave::new(1.0, std::f64::consts::FRAC_PI_2).is_err());
        assert!(IncidentWave::new(1.0, -0.1).is_err());
    }
}
