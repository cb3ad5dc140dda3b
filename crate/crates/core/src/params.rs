//! Physical inputs and the rates derived from them.
//!
//! Everything is expressed as a ratio to the cavity damping constant κ.
//! The absolute scale `kappa` is carried along so callers can convert back,
//! but no formula in this crate depends on it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coupling ratio above which the bad-cavity approximation is flagged as
/// questionable.
pub const BAD_CAVITY_WARNING_LEVEL: f64 = 0.1;

fn default_kappa() -> f64 {
    1.0
}

/// Validated physical parameters of the oscillator-plus-atom system.
///
/// The coupling is given through the cavity-enhanced atomic decay rate
/// γ_c = 4g²/κ; the vacuum Rabi coupling g is derived from it on demand.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct SystemParams {
    epsilon_over_kappa: f64,
    gamma_c_over_kappa: f64,
    kappa: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    epsilon_over_kappa: f64,
    gamma_c_over_kappa: f64,
    #[serde(default = "default_kappa")]
    kappa: f64,
}

impl TryFrom<RawParams> for SystemParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        SystemParams::with_kappa(raw.epsilon_over_kappa, raw.gamma_c_over_kappa, raw.kappa)
    }
}

impl From<SystemParams> for RawParams {
    fn from(p: SystemParams) -> Self {
        RawParams {
            epsilon_over_kappa: p.epsilon_over_kappa,
            gamma_c_over_kappa: p.gamma_c_over_kappa,
            kappa: p.kappa,
        }
    }
}

impl SystemParams {
    /// Parameters with κ = 1.
    pub fn new(epsilon_over_kappa: f64, gamma_c_over_kappa: f64) -> Result<Self> {
        Self::with_kappa(epsilon_over_kappa, gamma_c_over_kappa, 1.0)
    }

    pub fn with_kappa(
        epsilon_over_kappa: f64,
        gamma_c_over_kappa: f64,
        kappa: f64,
    ) -> Result<Self> {
        if !epsilon_over_kappa.is_finite() || epsilon_over_kappa < 0.0 {
            return Err(Error::InvalidParameter {
                name: "epsilon_over_kappa",
                value: epsilon_over_kappa,
                reason: "must be finite and non-negative",
            });
        }
        if epsilon_over_kappa >= 0.5 {
            return Err(Error::ThresholdViolation(epsilon_over_kappa));
        }
        // γ_c = 0 is allowed: it is the "no atom" reference curve.
        if !gamma_c_over_kappa.is_finite() || gamma_c_over_kappa < 0.0 {
            return Err(Error::InvalidParameter {
                name: "gamma_c_over_kappa",
                value: gamma_c_over_kappa,
                reason: "must be finite and non-negative",
            });
        }
        if !kappa.is_finite() || kappa <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "kappa",
                value: kappa,
                reason: "must be finite and positive",
            });
        }
        Ok(Self {
            epsilon_over_kappa,
            gamma_c_over_kappa,
            kappa,
        })
    }

    pub fn epsilon_over_kappa(&self) -> f64 {
        self.epsilon_over_kappa
    }

    pub fn gamma_c_over_kappa(&self) -> f64 {
        self.gamma_c_over_kappa
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// Same system with a different pump ratio.
    pub fn with_epsilon(&self, epsilon_over_kappa: f64) -> Result<Self> {
        Self::with_kappa(epsilon_over_kappa, self.gamma_c_over_kappa, self.kappa)
    }

    /// Same system with a different atomic coupling.
    pub fn with_gamma_c(&self, gamma_c_over_kappa: f64) -> Result<Self> {
        Self::with_kappa(self.epsilon_over_kappa, gamma_c_over_kappa, self.kappa)
    }

    /// g/κ = √(γ_c/κ)/2.
    pub fn coupling_over_kappa(&self) -> f64 {
        self.gamma_c_over_kappa.sqrt() / 2.0
    }

    /// True when γ_c/κ is small enough for the adiabatic elimination of the
    /// cavity to be trusted.
    pub fn is_bad_cavity(&self) -> bool {
        self.gamma_c_over_kappa <= BAD_CAVITY_WARNING_LEVEL
    }

    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.is_bad_cavity() {
            out.push(format!(
                "gamma_c/kappa = {} exceeds {}; bad-cavity results may be inaccurate",
                self.gamma_c_over_kappa, BAD_CAVITY_WARNING_LEVEL
            ));
        }
        out
    }

    /// (2ε/κ)², the combination that appears in nearly every closed form.
    pub(crate) fn pump_squared(&self) -> f64 {
        4.0 * self.epsilon_over_kappa * self.epsilon_over_kappa
    }
}

/// Decay rates derived from [`SystemParams`], all in units of κ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedRates {
    /// η = γ_c / (1 − 4ε²/κ²)
    pub eta: f64,
    /// Γ = γ_c (1 + 4ε²/κ²) / (1 − 4ε²/κ²)², the pump-enhanced atomic decay rate.
    pub gamma_big: f64,
    /// λ± = Γ(½ ± ε/κ)
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    /// μ± = ½ ± ε/κ
    pub mu_plus: f64,
    pub mu_minus: f64,
}

pub fn derive_rates(params: &SystemParams) -> DerivedRates {
    let e = params.epsilon_over_kappa;
    let gc = params.gamma_c_over_kappa;
    let p = params.pump_squared();
    let below = 1.0 - p;
    let eta = gc / below;
    let gamma_big = gc * (1.0 + p) / (below * below);
    DerivedRates {
        eta,
        gamma_big,
        lambda_plus: gamma_big * (0.5 + e),
        lambda_minus: gamma_big * (0.5 - e),
        mu_plus: 0.5 + e,
        mu_minus: 0.5 - e,
    }
}

impl SystemParams {
    pub fn rates(&self) -> DerivedRates {
        derive_rates(self)
    }
}
