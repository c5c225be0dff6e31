//! Forward model for an S-polarized electromagnetic wave incident on a thin
//! metal film that separates two dielectric media.
//!
//! The film is described kinetically: a degenerate electron gas with
//! collisions and specular electron reflection at both surfaces, which makes
//! the response spatially dispersive. Its surface impedances are mode sums
//! over the transverse permittivity, and transmittance, reflectance and
//! absorptance follow from the impedances. A local Drude slab solved with
//! Fresnel coefficients serves as an independent reference in the limit of
//! vanishing Fermi velocity.

pub mod cli;
pub mod dielectric;
pub mod error;
pub mod impedance;
pub mod optics;
pub mod series;
pub mod slab;
pub mod sweep;
pub mod units;

pub use error::{ModelError, Result};
pub use impedance::{ImpedancePair, SeriesControl};
pub use optics::{coefficients, OpticalCoefficients};
pub use units::{IncidentWave, MetalParameters, StackConfiguration};
