use std::fmt;
use std::str::FromStr;

use dpo_core::analytic::correlation::steady_upper_population;
use dpo_core::analytic::spectrum::{half_width, LightKind};
use dpo_core::analytic::{steady_state_moments, variances};
use dpo_core::{SystemParams, UniformGrid};
use rayon::prelude::*;

use crate::output::Table;
use crate::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    MeanPhotons(LightKind),
    VariancePlus(LightKind),
    VarianceMinus(LightKind),
    HalfWidth(LightKind),
    UpperPopulation,
}

impl Quantity {
    pub fn all() -> Vec<Quantity> {
        let mut out = Vec::new();
        for kind in [LightKind::Cavity, LightKind::Signal, LightKind::Fluorescent] {
            out.extend([
                Quantity::MeanPhotons(kind),
                Quantity::VariancePlus(kind),
                Quantity::VarianceMinus(kind),
                Quantity::HalfWidth(kind),
            ]);
        }
        out.push(Quantity::UpperPopulation);
        out
    }

    pub fn id(&self) -> String {
        match self {
            Quantity::MeanPhotons(k) => format!("mean_photon_{k}"),
            Quantity::VariancePlus(k) => format!("var_plus_{k}"),
            Quantity::VarianceMinus(k) => format!("var_minus_{k}"),
            Quantity::HalfWidth(k) => format!("half_width_{k}"),
            Quantity::UpperPopulation => "rho_aa_ss".to_string(),
        }
    }

    pub fn evaluate(&self, params: &SystemParams) -> Result<f64> {
        Ok(match *self {
            Quantity::MeanPhotons(k) => steady_state_moments(params).mean_photons(k),
            Quantity::VariancePlus(k) => variances(k, params).plus,
            Quantity::VarianceMinus(k) => variances(k, params).minus,
            Quantity::HalfWidth(k) => half_width(k, params)?,
            Quantity::UpperPopulation => steady_upper_population(params),
        })
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl FromStr for Quantity {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        Quantity::all()
            .into_iter()
            .find(|q| q.id() == s)
            .ok_or_else(|| CliError::UnknownQuantity(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub epsilon: UniformGrid,
    pub gamma_c_over_kappa: f64,
    /// Adds a `value2` column evaluated at this γ_c/κ.
    pub reference_gamma_c: Option<f64>,
}

/// `quantity` against ε/κ; a degenerate range gives a single row.
pub fn sweep(quantity: Quantity, config: &SweepConfig) -> Result<Table> {
    let eps = config.epsilon.values();
    if eps.len() > 1 && eps.len() < crate::MIN_POINTS {
        return Err(CliError::Usage(format!(
            "need at least {} points, got {}",
            crate::MIN_POINTS,
            eps.len()
        )));
    }
    let mut gammas = vec![config.gamma_c_over_kappa];
    gammas.extend(config.reference_gamma_c);
    // Validate every point before computing anything.
    let params: Vec<Vec<SystemParams>> = gammas
        .iter()
        .map(|&gc| eps.iter().map(|&e| SystemParams::new(e, gc)).collect())
        .collect::<std::result::Result<_, _>>()?;
    let columns = params
        .iter()
        .map(|col| {
            col.par_iter()
                .map(|p| quantity.evaluate(p))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table::new("epsilon_over_kappa", eps, columns))
}
