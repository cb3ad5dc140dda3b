//! Quantum optics of a two-level atom inside a degenerate parametric
//! oscillator operated below threshold, in the bad-cavity limit.
//!
//! * [`params`]: validated inputs and derived decay rates.
//! * [`analytic`]: closed-form spectra, correlations, photon numbers and
//!   quadrature variances.
//! * [`oracle`]: exact master-equation reference used to check them.

pub mod analytic;
pub mod error;
pub mod grid;
pub mod oracle;
pub mod params;

pub use error::{Error, Result};
pub use grid::UniformGrid;
pub use params::{derive_rates, DerivedRates, SystemParams};
