use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::check_ordered;
use crate::params::{DerivedRates, SystemParams};

/// Real-valued series over a delay or time grid (units of 1/κ).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationSeries {
    pub tau: Vec<f64>,
    pub values: Vec<f64>,
}

fn check_delays(tau: &[f64]) -> Result<()> {
    if let Some(&t) = tau.iter().find(|t| **t < 0.0) {
        return Err(Error::NegativeDelay(t));
    }
    check_ordered(tau)
}

/// Steady-state normalized intensity correlation of the fluorescent light,
/// g²(τ) = 1 − e^{−Γτ}.
pub fn g2(rates: &DerivedRates, tau: &[f64]) -> Result<CorrelationSeries> {
    check_delays(tau)?;
    Ok(CorrelationSeries {
        tau: tau.to_vec(),
        values: tau
            .iter()
            .map(|&t| -(-rates.gamma_big * t).exp_m1())
            .collect(),
    })
}

/// Steady-state probability of the upper atomic level, 4ε²/κ² / (1 + 4ε²/κ²).
pub fn steady_upper_population(params: &SystemParams) -> f64 {
    let p = params.pump_squared();
    p / (1.0 + p)
}

/// Upper-level population relaxing from `rho_aa_0` at rate Γ towards its
/// steady-state value.
pub fn upper_level_population(
    params: &SystemParams,
    rates: &DerivedRates,
    rho_aa_0: f64,
    t: &[f64],
) -> Result<CorrelationSeries> {
    if !(0.0..=1.0).contains(&rho_aa_0) {
        return Err(Error::PopulationOutOfRange(rho_aa_0));
    }
    check_delays(t)?;
    let steady = steady_upper_population(params);
    Ok(CorrelationSeries {
        tau: t.to_vec(),
        values: t
            .iter()
            .map(|&t| {
                let decay = (-rates.gamma_big * t).exp();
                rho_aa_0 * decay + steady * (1.0 - decay)
            })
            .collect(),
    })
}
