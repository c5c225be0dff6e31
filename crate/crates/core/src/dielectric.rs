//! Transverse dielectric permittivity of a degenerate electron gas with
//! collisions, including spatial dispersion.
//!
//! With `w = Omega + i eps` and dimensionless wavenumber `q`,
//!
//! ```text
//! eps_tr = 1 - 3 / (4 Omega q^3) * [ 2 w q + (w^2 - q^2) ln((w - q) / (w + q)) ]
//! ```
//!
//! The bracket cancels to `O(q^3)` for small `q`: at `q = 1e-3 |w|` about
//! eight digits are gone. Below [`SMALL_Q_RATIO`]`* |w|` the power series
//!
//! ```text
//! eps_tr = 1 - (3 / Omega) sum_{k>=1} q^(2k-2) / ((4k^2 - 1) w^(2k-1))
//!        = 1 - 1/(Omega w) - q^2 / (5 Omega w^3) - 3 q^4 / (35 Omega w^5) - ...
//! ```
//!
//! is summed instead. It reduces to the local Drude permittivity at `q = 0`.

use num_complex::Complex64;

use crate::error::{ModelError, Result};
use crate::units::ReducedProblem;

/// Power series is used for `q1 < SMALL_Q_RATIO * |Omega + i eps|`.
pub const SMALL_Q_RATIO: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransverseArgument {
    /// Dimensionless wavenumber `q1 = (v_F / c) |Q|`.
    pub q1: f64,
    /// Omega = omega / omega_p.
    pub omega_ratio: f64,
    /// nu / omega_p.
    pub eps_coll: f64,
}

impl TransverseArgument {
    pub fn new(q1: f64, omega_ratio: f64, eps_coll: f64) -> Self {
        Self {
            q1,
            omega_ratio,
            eps_coll,
        }
    }
}

/// Evaluates the transverse permittivity.
///
/// Fails for `Omega <= 0`, negative `q1` or `eps_coll`, and at the logarithm
/// branch point `q1 == Omega` when `eps_coll == 0`.
pub fn epsilon_transverse(arg: &TransverseArgument) -> Result<Complex64> {
    let TransverseArgument {
        q1,
        omega_ratio: omega,
        eps_coll,
    } = *arg;
    if !(omega.is_finite() && omega > 0.0) {
        return Err(ModelError::domain("omega_ratio", omega, "omega_ratio > 0"));
    }
    if !(eps_coll.is_finite() && eps_coll >= 0.0) {
        return Err(ModelError::domain("eps_coll", eps_coll, "eps_coll >= 0"));
    }
    if !(q1.is_finite() && q1 >= 0.0) {
        return Err(ModelError::domain("q1", q1, "q1 >= 0"));
    }
    if eps_coll == 0.0 && q1 == omega {
        return Err(ModelError::BranchPoint { omega });
    }

    let w = Complex64::new(omega, eps_coll);
    if q1 < SMALL_Q_RATIO * w.norm() {
        Ok(small_q_series(q1, omega, w))
    } else {
        Ok(closed_form(q1, omega, w))
    }
}

/// Local (q = 0) limit, `1 - 1 / (Omega (Omega + i eps))`.
pub fn drude_permittivity(omega: f64, eps_coll: f64) -> Complex64 {
    let w = Complex64::new(omega, eps_coll);
    1.0 - 1.0 / (omega * w)
}

pub(crate) fn small_q_series(q: f64, omega: f64, w: Complex64) -> Complex64 {
    let x_sq = (q / w) * (q / w);
    let mut power = w.inv(); // q^(2k-2) / w^(2k-1)
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..=24u32 {
        let term = power / f64::from(4 * k * k - 1);
        sum += term;
        if term.norm() <= 1e-18 * sum.norm() {
            break;
        }
        power *= x_sq;
    }
    1.0 - 3.0 / omega * sum
}

pub(crate) fn closed_form(q: f64, omega: f64, w: Complex64) -> Complex64 {
    // ln(w - q) - ln(w + q) is the principal log of the ratio whenever
    // Im w >= 0, and picks the +i*pi side for eps = 0, q > Omega.
    let log_ratio = (w - q).ln() - (w + q).ln();
    let bracket = 2.0 * w * q + (w * w - q * q) * log_ratio;
    1.0 - bracket * (3.0 / (4.0 * omega * q * q * q))
}

/// Wavevector of one standing-wave mode inside the film.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeWavevector {
    /// `(v_F / c) sqrt(Q^2)`.
    pub q1: f64,
    /// `Q^2 = (pi n / W)^2 + eps1 Omega^2 sin^2 theta`.
    pub q_sq: f64,
}

pub fn mode_wavevector(n: u64, problem: &ReducedProblem) -> ModeWavevector {
    let qx = std::f64::consts::PI * n as f64 / problem.thickness;
    let q_sq = qx * qx + problem.tangential_sq();
    ModeWavevector {
        q1: problem.fermi_ratio * q_sq.sqrt(),
        q_sq,
    }
}
