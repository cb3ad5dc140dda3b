//! Numerically exact reference: the full master equation of the atom and
//! the damped, parametrically pumped cavity mode in a truncated Fock space.
//!
//! No adiabatic elimination is made here, so comparing against
//! [`crate::analytic`] measures the error of the bad-cavity approximation.
//! All times are in units of 1/κ.

pub mod correlation;
pub mod hilbert;
pub mod liouvillian;
pub mod observables;
pub mod state;

pub use correlation::{
    decayed_correlation, spectrum_from_correlation, two_time_correlation, CorrelationKind,
    CorrelationTransform, PropagationOptions, Propagator, TwoTimeSeries,
};
pub use hilbert::HilbertSpace;
pub use liouvillian::{
    build_liouvillian, build_liouvillian_unchecked, required_cutoff, Liouvillian,
};
pub use observables::{expectation, expectation_by_id, Observable};
pub use state::{steady_state, DensityMatrix};
