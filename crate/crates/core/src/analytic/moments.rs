//! Steady-state photon numbers and quadrature variances.
//!
//! With x = ε/κ, p = 4x² and γ = γ_c/κ the cavity photon number is
//!
//! ```text
//! n̄ = 2x²/(1 − p) − 2γx² / ((1 − p)(1 + p))
//! ```
//!
//! which splits into a signal part (pair production minus absorption by
//! the atom) and a fluorescent part (re-emission by the atom).

use serde::Serialize;

use crate::analytic::spectrum::LightKind;
use crate::params::SystemParams;

/// Variances of the quadratures a₊ = a† + a and a₋ = i(a† − a); the vacuum
/// level is 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureVariances {
    pub plus: f64,
    pub minus: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SteadyStateMoments {
    pub mean_photon_cavity: f64,
    pub mean_photon_signal: f64,
    pub mean_photon_fluorescent: f64,
    /// ⟨a²⟩ (real at steady state).
    pub a_squared_expect: f64,
    /// Cavity-mode quadrature variances.
    pub var_plus: f64,
    pub var_minus: f64,
    pub signal: QuadratureVariances,
    pub fluorescent: QuadratureVariances,
}

impl SteadyStateMoments {
    pub fn variances(&self, kind: LightKind) -> QuadratureVariances {
        match kind {
            LightKind::Cavity => QuadratureVariances {
                plus: self.var_plus,
                minus: self.var_minus,
            },
            LightKind::Signal => self.signal,
            LightKind::Fluorescent => self.fluorescent,
        }
    }

    pub fn mean_photons(&self, kind: LightKind) -> f64 {
        match kind {
            LightKind::Cavity => self.mean_photon_cavity,
            LightKind::Signal => self.mean_photon_signal,
            LightKind::Fluorescent => self.mean_photon_fluorescent,
        }
    }
}

pub fn mean_photon_cavity(params: &SystemParams) -> f64 {
    let (x, gc, p) = parts(params);
    2.0 * x * x / (1.0 - p) - 2.0 * gc * x * x / ((1.0 - p) * (1.0 + p))
}

/// Signal photons: the bare oscillator value minus what the atom absorbs.
pub fn mean_photon_signal(params: &SystemParams) -> f64 {
    let (x, gc, p) = parts(params);
    let below = 1.0 - p;
    2.0 * x * x / below - 4.0 * gc * x * x / (below * below * (1.0 + p))
}

pub fn mean_photon_fluorescent(params: &SystemParams) -> f64 {
    let (x, gc, p) = parts(params);
    let below = 1.0 - p;
    2.0 * gc * x * x / (below * below)
}

pub fn cavity_variances(params: &SystemParams) -> QuadratureVariances {
    let (x, gc, p) = parts(params);
    let num = 2.0 * x * (1.0 - gc) + 8.0 * x * x * x;
    QuadratureVariances {
        plus: 1.0 + num / ((1.0 - 2.0 * x) * (1.0 + p)),
        minus: 1.0 - num / ((1.0 + 2.0 * x) * (1.0 + p)),
    }
}

pub fn signal_variances(params: &SystemParams) -> QuadratureVariances {
    let (x, gc, p) = parts(params);
    let quartic = 1.0 - p * p;
    let num = 2.0 * x * (quartic - 2.0 * gc);
    QuadratureVariances {
        plus: 1.0 + num / ((1.0 - 2.0 * x) * quartic),
        minus: 1.0 - num / ((1.0 + 2.0 * x) * quartic),
    }
}

pub fn fluorescent_variances(params: &SystemParams) -> QuadratureVariances {
    let (x, gc, p) = parts(params);
    let num = 2.0 * gc * x;
    QuadratureVariances {
        plus: 1.0 + num / ((1.0 - 2.0 * x) * (1.0 - p)),
        minus: 1.0 - num / ((1.0 + 2.0 * x) * (1.0 - p)),
    }
}

pub fn variances(kind: LightKind, params: &SystemParams) -> QuadratureVariances {
    match kind {
        LightKind::Cavity => cavity_variances(params),
        LightKind::Signal => signal_variances(params),
        LightKind::Fluorescent => fluorescent_variances(params),
    }
}

pub fn steady_state_moments(params: &SystemParams) -> SteadyStateMoments {
    let (x, gc, p) = parts(params);
    let cavity = cavity_variances(params);
    SteadyStateMoments {
        mean_photon_cavity: mean_photon_cavity(params),
        mean_photon_signal: mean_photon_signal(params),
        mean_photon_fluorescent: mean_photon_fluorescent(params),
        // n̄ = 2x⟨a²⟩, written out so x = 0 needs no special case.
        a_squared_expect: x / (1.0 - p) - gc * x / ((1.0 - p) * (1.0 + p)),
        var_plus: cavity.plus,
        var_minus: cavity.minus,
        signal: signal_variances(params),
        fluorescent: fluorescent_variances(params),
    }
}

fn parts(params: &SystemParams) -> (f64, f64, f64) {
    (
        params.epsilon_over_kappa(),
        params.gamma_c_over_kappa(),
        params.pump_squared(),
    )
}
