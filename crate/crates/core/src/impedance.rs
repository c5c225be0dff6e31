//! Surface impedances of the film for specular electron reflection.
//!
//! The field inside the film is expanded over standing-wave modes
//! `Q_x = pi m / W`. For the antisymmetric configuration (case 1) only odd
//! `m` contribute, for the symmetric one (case 2) only even `m`:
//!
//! ```text
//! Z1 = (4 i Omega / W) sum_{m odd >= 1}  1 / (Omega^2 eps_tr(q1(m)) - Q^2(m))
//! Z2 = (2 i Omega / W) / (Omega^2 eps_tr(q1(0)) - Q^2(0))
//!    + (4 i Omega / W) sum_{m even >= 2} 1 / (Omega^2 eps_tr(q1(m)) - Q^2(m))
//! ```
//!
//! Terms fall off only as `1/m^2`. Past the last summed mode `M` the remainder
//! is replaced by an expansion in `1/m^2` with `B = Omega^2 eps_tr(q1(M)) - Q_z^2`
//! frozen at the cutoff:
//!
//! ```text
//! sum_{m > M} 1 / (B - P m^2) = -sum_j B^j / P^(j+1) * S_(2j+2),   P = (pi / W)^2
//! ```
//!
//! where `S_k` are parity-restricted power sums evaluated with the Hurwitz
//! zeta function. Summation stops at the first checkpoint where the estimated
//! error of this correction falls below `rel_tol` of the total.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::dielectric::{epsilon_transverse, mode_wavevector, TransverseArgument};
use crate::error::{ModelError, Result};
use crate::series::{hurwitz_zeta, CompensatedSum};
use crate::units::{IncidentWave, MetalParameters, ReducedProblem, StackConfiguration};

/// Convergence is tested every this many modes.
pub const CHECK_INTERVAL: usize = 16;

/// Denominators smaller than this are treated as exact resonances.
pub const RESONANCE_FLOOR: f64 = 1e-300;

/// Truncation control for the mode sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    rel_tol: f64,
    max_terms: usize,
}

impl SeriesControl {
    pub const DEFAULT_REL_TOL: f64 = 1e-9;
    pub const DEFAULT_MAX_TERMS: usize = 200_000;
    pub const MIN_TERMS: usize = 16;

    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol < 1.0) {
            return Err(ModelError::domain("rel_tol", rel_tol, "0 < rel_tol < 1"));
        }
        if max_terms < Self::MIN_TERMS {
            return Err(ModelError::domain(
                "max_terms",
                max_terms as f64,
                "max_terms >= 16",
            ));
        }
        Ok(Self { rel_tol, max_terms })
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    /// Cap on the number of modes in each of the two sums.
    pub fn max_terms(&self) -> usize {
        self.max_terms
    }
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            rel_tol: Self::DEFAULT_REL_TOL,
            max_terms: Self::DEFAULT_MAX_TERMS,
        }
    }
}

/// Which mode family a sum runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// m = 1, 3, 5, ...
    Odd,
    /// m = 2, 4, 6, ... (the unpaired m = 0 term is handled separately)
    Even,
}

impl Parity {
    /// Mode number of the `index`-th term of this parity.
    pub fn mode(self, index: usize) -> u64 {
        let k = index as u64;
        match self {
            Parity::Odd => 2 * k + 1,
            Parity::Even => 2 * k + 2,
        }
    }
}

/// Result of one impedance series. All complex values already carry the
/// `4 i Omega / W` prefactor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSum {
    pub value: Complex64,
    /// Modes summed explicitly (including m = 0 for the symmetric case).
    pub terms_used: usize,
    /// Analytic remainder added after the last summed mode.
    pub tail_correction: Complex64,
    /// Estimated magnitude of the error left after the tail correction.
    pub tail_bound: f64,
}

/// Antisymmetric (`Z1`) and symmetric (`Z2`) surface impedances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImpedancePair {
    pub z1: Complex64,
    pub z2: Complex64,
    /// Total modes summed over both series.
    pub terms_used: usize,
    /// Larger of the two error estimates.
    pub tail_bound: f64,
}

struct ModeTerm {
    value: Complex64,
    eps_tr: Complex64,
}

impl ModeTerm {
    fn evaluate(problem: &ReducedProblem, mode: u64) -> Result<Self> {
        let k = mode_wavevector(mode, problem);
        let eps_tr = epsilon_transverse(&TransverseArgument::new(
            k.q1,
            problem.omega,
            problem.eps_coll,
        ))
        .map_err(|e| e.context(format!("mode {mode}")))?;
        let denominator = problem.omega * problem.omega * eps_tr - k.q_sq;
        let magnitude = denominator.norm();
        if magnitude < RESONANCE_FLOOR {
            return Err(ModelError::ResonanceSingularity { mode, magnitude });
        }
        Ok(Self {
            value: denominator.inv(),
            eps_tr,
        })
    }
}

/// `1 / (Omega^2 eps_tr(q1(m)) - Q^2(m))` for one mode, without prefactor.
pub fn mode_term(problem: &ReducedProblem, mode: u64) -> Result<Complex64> {
    ModeTerm::evaluate(problem, mode).map(|t| t.value)
}

struct Tail {
    value: Complex64,
    error: f64,
}

impl Tail {
    /// Remainder of the unweighted series after `last_mode`, or `None` while
    /// the `1/m^2` expansion is not yet safely convergent.
    fn beyond(problem: &ReducedProblem, last_mode: u64, eps_tr_last: Complex64) -> Option<Self> {
        let p = (PI / problem.thickness).powi(2);
        let omega_sq = problem.omega * problem.omega;
        let b = omega_sq * eps_tr_last - problem.tangential_sq();
        let next = (last_mode + 2) as f64;
        if b.norm() > 0.25 * p * next * next {
            return None;
        }
        // Modes past `last_mode` of the same parity are 2 (a + k), k >= 0.
        let a = next / 2.0;
        let power_sum = |k: u32| hurwitz_zeta(k, a) / 2f64.powi(k as i32);
        let (s2, s4, s6, s8) = (power_sum(2), power_sum(4), power_sum(6), power_sum(8));

        let value = -(s2 / p + b * s4 / (p * p) + b * b * s6 / (p * p * p));
        let error = b.norm().powi(3) * s8 / p.powi(4)
            + omega_sq * (eps_tr_last - 1.0).norm() * s4 / (p * p);
        Some(Self { value, error })
    }
}

fn paired_weight(problem: &ReducedProblem) -> Complex64 {
    Complex64::new(0.0, 4.0 * problem.omega / problem.thickness)
}

/// Adaptive sum over the odd or even (m >= 2) modes, weighted by `4 i Omega / W`.
pub fn mode_series(
    problem: &ReducedProblem,
    parity: Parity,
    control: &SeriesControl,
) -> Result<ModeSum> {
    let weight = paired_weight(problem);
    let mut acc = CompensatedSum::default();
    let mut best = None;
    for index in 0..control.max_terms {
        let mode = parity.mode(index);
        let term = ModeTerm::evaluate(problem, mode)?;
        acc.add(term.value);
        let count = index + 1;
        if count % CHECK_INTERVAL != 0 {
            continue;
        }
        let Some(tail) = Tail::beyond(problem, mode, term.eps_tr) else {
            continue;
        };
        let total = acc.value() + tail.value;
        if tail.error <= control.rel_tol * total.norm() {
            return Ok(ModeSum {
                value: weight * total,
                terms_used: count,
                tail_correction: weight * tail.value,
                tail_bound: weight.norm() * tail.error,
            });
        }
        best = Some((total, tail.error));
    }
    let (estimate, error) = best.unwrap_or((acc.value(), f64::INFINITY));
    Err(ModelError::Convergence {
        terms: control.max_terms,
        estimate: weight * estimate,
        error_estimate: weight.norm() * error,
    })
}

/// Sum of exactly `terms` modes plus the tail correction, with no tolerance
/// test. If the tail expansion is not applicable at that cutoff the plain
/// partial sum is returned with an infinite `tail_bound`.
pub fn truncated_series(problem: &ReducedProblem, parity: Parity, terms: usize) -> Result<ModeSum> {
    assert!(terms >= 1);
    let weight = paired_weight(problem);
    let mut acc = CompensatedSum::default();
    let mut last = None;
    for index in 0..terms {
        let mode = parity.mode(index);
        let term = ModeTerm::evaluate(problem, mode)?;
        acc.add(term.value);
        last = Some((mode, term.eps_tr));
    }
    let (mode, eps_tr) = last.expect("at least one term");
    let partial = acc.value();
    Ok(match Tail::beyond(problem, mode, eps_tr) {
        Some(tail) => ModeSum {
            value: weight * (partial + tail.value),
            terms_used: terms,
            tail_correction: weight * tail.value,
            tail_bound: weight.norm() * tail.error,
        },
        None => ModeSum {
            value: weight * partial,
            terms_used: terms,
            tail_correction: Complex64::new(0.0, 0.0),
            tail_bound: f64::INFINITY,
        },
    })
}

/// The unpaired m = 0 contribution to `Z2`, `(2 i Omega / W) / (Omega^2 eps_tr - Q_z^2)`.
pub fn zero_mode_contribution(problem: &ReducedProblem) -> Result<Complex64> {
    let weight = Complex64::new(0.0, 2.0 * problem.omega / problem.thickness);
    Ok(weight * mode_term(problem, 0)?)
}

/// `Z1`, antisymmetric field configuration (odd modes).
pub fn antisymmetric_sum(problem: &ReducedProblem, control: &SeriesControl) -> Result<ModeSum> {
    mode_series(problem, Parity::Odd, control).map_err(|e| e.context("antisymmetric impedance"))
}

/// `Z2`, symmetric field configuration (m = 0 plus even modes).
pub fn symmetric_sum(problem: &ReducedProblem, control: &SeriesControl) -> Result<ModeSum> {
    let zero = zero_mode_contribution(problem).map_err(|e| e.context("symmetric impedance"))?;
    let mut sum = mode_series(problem, Parity::Even, control)
        .map_err(|e| e.context("symmetric impedance"))?;
    sum.value += zero;
    sum.terms_used += 1;
    Ok(sum)
}

pub fn impedance_antisymmetric(
    metal: &MetalParameters,
    stack: &StackConfiguration,
    wave: &IncidentWave,
    control: &SeriesControl,
) -> Result<ModeSum> {
    antisymmetric_sum(&ReducedProblem::new(metal, stack, wave)?, control)
}

pub fn impedance_symmetric(
    metal: &MetalParameters,
    stack: &StackConfiguration,
    wave: &IncidentWave,
    control: &SeriesControl,
) -> Result<ModeSum> {
    symmetric_sum(&ReducedProblem::new(metal, stack, wave)?, control)
}

pub fn impedance_pair(problem: &ReducedProblem, control: &SeriesControl) -> Result<ImpedancePair> {
    let z1 = antisymmetric_sum(problem, control)?;
    let z2 = symmetric_sum(problem, control)?;
    Ok(ImpedancePair {
        z1: z1.value,
        z2: z2.value,
        terms_used: z1.terms_used + z2.terms_used,
        tail_bound: z1.tail_bound.max(z2.tail_bound),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dielectric::drude_permittivity;
    use proptest::prelude::*;

    fn problem(omega: f64, d_nm: f64, theta_deg: f64) -> ReducedProblem {
        ReducedProblem::new(
            &MetalParameters::sodium(),
            &StackConfiguration::new(1.0, 4.0, d_nm).unwrap(),
            &IncidentWave::from_degrees(omega, theta_deg).unwrap(),
        )
        .unwrap()
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    /// Plain sum of `n` modes with no tail; test oracle.
    fn plain_sum(p: &ReducedProblem, parity: Parity, n: usize) -> Complex64 {
        let mut acc = CompensatedSum::default();
        for index in 0..n {
            acc.add(mode_term(p, parity.mode(index)).unwrap());
        }
        acc.value()
    }

    /// Richardson extrapolation of plain partial sums (error ~ 1/N).
    fn extrapolated_sum(p: &ReducedProblem, parity: Parity, n: usize) -> Complex64 {
        let half = plain_sum(p, parity, n / 2);
        let full = plain_sum(p, parity, n);
        paired_weight(p) * (2.0 * full - half)
    }

    #[test]
    fn golden_sodium_100nm_half_plasma_frequency() {
        // Independent reference: extrapolated 4e6-term sums in double precision.
        let p = problem(0.5, 100.0, 0.0);
        let pair = impedance_pair(&p, &SeriesControl::default()).unwrap();
        let z1 = Complex64::new(2.329_686_215_920_144e-4, -0.424_171_907_679_897);
        let z2 = Complex64::new(1.664_027_335_668_707e-3, -0.785_839_346_652_01);
        assert!(rel(pair.z1, z1) < 1e-9, "{}", pair.z1);
        assert!(rel(pair.z2, z2) < 1e-9, "{}", pair.z2);
    }

    #[test]
    fn first_odd_mode_denominator() {
        let p = problem(1.0, 100.0, 0.0);
        let q1 = 4.117_902_985_936_16e-3;
        let w = p.thickness;
        let eps_tr = epsilon_transverse(&TransverseArgument::new(q1, 1.0, 1e-3)).unwrap();
        let expected = (eps_tr - PI * PI / (w * w)).inv();
        assert!(rel(mode_term(&p, 1).unwrap(), expected) < 1e-12);
    }

    #[test]
    fn zero_mode_at_plasma_frequency() {
        let p = problem(1.0, 100.0, 0.0);
        let expected =
            Complex64::new(0.0, 2.0 / p.thickness) / (1.0 - Complex64::new(1.0, 1e-3).inv());
        let got = zero_mode_contribution(&p).unwrap();
        assert!(rel(got, expected) < 1e-12);
        assert!(got.norm() > 100.0);
    }

    #[test]
    fn collisionless_plasma_resonance_is_reported() {
        let metal = MetalParameters::sodium().with_collision_ratio(0.0).unwrap();
        let stack = StackConfiguration::new(1.0, 4.0, 100.0).unwrap();
        let wave = IncidentWave::new(1.0, 0.0).unwrap();
        let err =
            impedance_symmetric(&metal, &stack, &wave, &SeriesControl::default()).unwrap_err();
        assert!(
            matches!(err.root(), ModelError::ResonanceSingularity { mode: 0, .. }),
            "{err}"
        );
    }

    #[test]
    fn symmetric_is_zero_mode_plus_even_series() {
        let p = problem(0.8, 150.0, 20.0);
        let control = SeriesControl::default();
        let even = mode_series(&p, Parity::Even, &control).unwrap();
        let odd = mode_series(&p, Parity::Odd, &control).unwrap();
        let z1 = antisymmetric_sum(&p, &control).unwrap();
        let z2 = symmetric_sum(&p, &control).unwrap();
        assert_eq!(z1.value, odd.value);
        assert_eq!(z2.value, even.value + zero_mode_contribution(&p).unwrap());
        assert_eq!(z2.terms_used, even.terms_used + 1);
    }

    #[test]
    fn adaptive_matches_extrapolated_brute_force() {
        let control = SeriesControl::default();
        for (omega, d, theta) in [(0.5, 100.0, 0.0), (1.3, 200.0, 40.0), (2.2, 60.0, 70.0)] {
            let p = problem(omega, d, theta);
            let z1 = antisymmetric_sum(&p, &control).unwrap().value;
            let even = mode_series(&p, Parity::Even, &control).unwrap().value;
            assert!(rel(z1, extrapolated_sum(&p, Parity::Odd, 2_000_000)) < 2e-9);
            assert!(rel(even, extrapolated_sum(&p, Parity::Even, 2_000_000)) < 2e-9);
        }
    }

    #[test]
    fn local_limit_reproduces_closed_form_impedances() {
        // For a local film the mode sums collapse to
        // Z1 = -i Omega tan(k W / 2) / k,  Z2 = i Omega cot(k W / 2) / k,
        // k = Omega sqrt(eps_drude - eps1 sin^2 theta).
        let metal = MetalParameters::sodium()
            .with_fermi_velocity_scaled(1e-6)
            .unwrap();
        for (omega, theta_deg) in [(0.4, 0.0), (1.4, 30.0), (2.0, 60.0)] {
            let stack = StackConfiguration::new(1.0, 4.0, 120.0).unwrap();
            let wave = IncidentWave::from_degrees(omega, theta_deg).unwrap();
            let p = ReducedProblem::new(&metal, &stack, &wave).unwrap();
            let pair = impedance_pair(&p, &SeriesControl::default()).unwrap();
            let s = theta_deg.to_radians().sin();
            let k = omega * (drude_permittivity(omega, 1e-3) - s * s).sqrt();
            let half = k * p.thickness / 2.0;
            let i_omega = Complex64::new(0.0, omega);
            let z1 = -i_omega * half.tan() / k;
            let z2 = i_omega / (half.tan() * k);
            assert!(rel(pair.z1, z1) < 1e-8, "{} vs {}", pair.z1, z1);
            assert!(rel(pair.z2, z2) < 1e-8, "{} vs {}", pair.z2, z2);
        }
    }

    #[test]
    fn doubling_the_cutoff_changes_little() {
        let control = SeriesControl::default();
        for (omega, d, theta) in [(0.5, 100.0, 0.0), (1.7, 300.0, 10.0)] {
            let p = problem(omega, d, theta);
            for parity in [Parity::Odd, Parity::Even] {
                let adaptive = mode_series(&p, parity, &control).unwrap();
                let n = adaptive.terms_used;
                let doubled = truncated_series(&p, parity, 2 * n).unwrap();
                assert!(rel(adaptive.value, doubled.value) < control.rel_tol());
                assert!(adaptive.tail_bound.is_finite() && adaptive.tail_bound >= 0.0);

                let capped =
                    SeriesControl::new(control.rel_tol(), 2 * control.max_terms()).unwrap();
                assert_eq!(mode_series(&p, parity, &capped).unwrap(), adaptive);
            }
        }
    }

    #[test]
    fn tail_correction_is_reported() {
        let p = problem(0.5, 100.0, 0.0);
        let s = mode_series(&p, Parity::Odd, &SeriesControl::default()).unwrap();
        // Remainder is about -(4 i Omega / W) W^2 / (pi^2 2 (M + 2)).
        let m = (2 * s.terms_used + 1) as f64;
        let approx = Complex64::new(0.0, -4.0 * 0.5 / p.thickness) * p.thickness.powi(2)
            / (PI * PI * 2.0 * m);
        assert!(
            rel(s.tail_correction, approx) < 0.05,
            "{}",
            s.tail_correction
        );
        assert!(s.tail_bound < 1e-9 * s.value.norm());
    }

    #[test]
    fn hitting_the_cap_is_a_convergence_error() {
        let p = problem(0.5, 300.0, 0.0);
        let control = SeriesControl::new(1e-15, 16).unwrap();
        match antisymmetric_sum(&p, &control).unwrap_err().root() {
            ModelError::Convergence {
                terms, estimate, ..
            } => {
                assert_eq!(*terms, 16);
                assert!(estimate.norm().is_finite());
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn control_validation() {
        assert!(SeriesControl::new(0.0, 100).is_err());
        assert!(SeriesControl::new(1.0, 100).is_err());
        assert!(SeriesControl::new(1e-6, 15).is_err());
        assert!(SeriesControl::new(1e-6, 16).is_ok());
    }

    #[test]
    fn no_jitter_along_frequency() {
        let control = SeriesControl::default();
        for i in 0..40 {
            let omega = 0.6 + 0.0137 * i as f64;
            let p = problem(omega, 150.0, 25.0);
            for parity in [Parity::Odd, Parity::Even] {
                let adaptive = mode_series(&p, parity, &control).unwrap();
                let reference = truncated_series(&p, parity, 8 * adaptive.terms_used).unwrap();
                assert!(rel(adaptive.value, reference.value) < 2.0 * control.rel_tol());
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn film_is_passive(
            omega in 0.1f64..2.5,
            d in 50.0f64..300.0,
            theta in 0.0f64..85.0,
        ) {
            let pair = impedance_pair(&problem(omega, d, theta), &SeriesControl::default()).unwrap();
            prop_assert!(pair.z1.re > 0.0, "Z1 = {}", pair.z1);
            prop_assert!(pair.z2.re > 0.0, "Z2 = {}", pair.z2);
        }
    }
}
