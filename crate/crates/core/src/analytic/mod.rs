//! Closed-form bad-cavity predictions.

pub mod atom;
pub mod correlation;
pub mod moments;
pub mod spectrum;

pub use atom::{reduced_atomic_ode, steady_state_atom, AtomicState};
pub use correlation::{g2, steady_upper_population, upper_level_population, CorrelationSeries};
pub use moments::{steady_state_moments, variances, QuadratureVariances, SteadyStateMoments};
pub use spectrum::{
    cavity_spectrum, fluorescent_spectrum, half_width, half_width_of, half_width_within,
    signal_spectrum, spectral_density, spectrum, LightKind, SpectrumCurve,
};
