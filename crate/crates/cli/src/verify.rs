//! Exact master-equation results against the closed forms at a set of pump
//! strengths.

use dpo_core::analytic::correlation::steady_upper_population;
use dpo_core::analytic::moments::{cavity_variances, mean_photon_cavity};
use dpo_core::analytic::spectrum::{half_width, LightKind};
use dpo_core::analytic::steady_state_atom;
use dpo_core::oracle::{
    build_liouvillian, decayed_correlation, expectation, steady_state, two_time_correlation,
    CorrelationKind, CorrelationTransform, DensityMatrix, HilbertSpace, Liouvillian, Observable,
    PropagationOptions,
};
use dpo_core::SystemParams;
use rayon::prelude::*;
use serde::Serialize;

use crate::VERSION;

pub const DEFAULT_FOCK_CUTOFF: usize = 40;
pub const DEFAULT_GAMMA_C: f64 = 0.01;
pub const DEFAULT_POINTS: [f64; 3] = [0.1, 0.25, 0.35];

pub const PHOTON_TOLERANCE: f64 = 0.05;
pub const VARIANCE_TOLERANCE: f64 = 0.01;
pub const POPULATION_TOLERANCE: f64 = 0.02;
pub const G2_TOLERANCE: f64 = 0.05;
pub const HALF_WIDTH_TOLERANCE: f64 = 0.10;

/// g² is compared on Γτ ∈ [0, G2_WINDOW] with G2_SAMPLES points.
pub const G2_WINDOW: f64 = 5.0;
pub const G2_SAMPLES: usize = 51;
/// The g² band gates only up to this pump strength; above it the
/// elimination error (∝ γ_c/κ) exceeds the band at γ_c/κ = 0.01 and the
/// entry is informational.
pub const G2_GATED_EPSILON: f64 = 0.10;

/// Sampling step and longest window for the atomic correlation, 1/κ.
const CORRELATION_STEP: f64 = 1.0;
const CORRELATION_WINDOW: f64 = 1e5;

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub fock_cutoff: usize,
    pub gamma_c_over_kappa: f64,
    pub points: Vec<f64>,
    /// Also compare the fluorescent half-width (slow: needs the full decay
    /// of the atomic dipole).
    pub half_width: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            fock_cutoff: DEFAULT_FOCK_CUTOFF,
            gamma_c_over_kappa: DEFAULT_GAMMA_C,
            points: DEFAULT_POINTS.to_vec(),
            half_width: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Relative,
    Absolute,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Entry {
    pub quantity: String,
    pub oracle: Option<f64>,
    pub analytic: Option<f64>,
    pub deviation: Option<f64>,
    pub tolerance: f64,
    pub metric: Metric,
    /// Ungated entries are reported but do not affect the overall result.
    pub gated: bool,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Entry {
    fn compare(quantity: &str, oracle: f64, analytic: f64, tolerance: f64, metric: Metric) -> Self {
        let deviation = match metric {
            Metric::Relative => (oracle - analytic).abs() / analytic.abs(),
            Metric::Absolute => (oracle - analytic).abs(),
        };
        Self {
            quantity: quantity.to_string(),
            oracle: Some(oracle),
            analytic: Some(analytic),
            deviation: Some(deviation),
            tolerance,
            metric,
            gated: true,
            passed: deviation <= tolerance,
            error: None,
        }
    }

    fn failed(quantity: &str, tolerance: f64, metric: Metric, error: impl ToString) -> Self {
        Self {
            quantity: quantity.to_string(),
            oracle: None,
            analytic: None,
            deviation: None,
            tolerance,
            metric,
            gated: true,
            passed: false,
            error: Some(error.to_string()),
        }
    }

    fn ungated(mut self) -> Self {
        self.gated = false;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointReport {
    pub epsilon_over_kappa: f64,
    pub gamma_c_over_kappa: f64,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub top_fock_population: Option<f64>,
    pub entries: Vec<Entry>,
    pub passed: bool,
    #[serde(skip)]
    pub fock_populations: Option<Vec<f64>>,
}

impl PointReport {
    pub fn entry(&self, quantity: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.quantity == quantity)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub version: String,
    pub fock_cutoff: usize,
    pub gamma_c_over_kappa: f64,
    pub points: Vec<PointReport>,
    pub passed: bool,
}

/// Runs every configured point; oracle failures become failed entries.
pub fn verify(config: &VerifyConfig) -> Report {
    let points: Vec<PointReport> = config
        .points
        .par_iter()
        .map(|&e| verify_point(e, config))
        .collect();
    Report {
        version: VERSION.to_string(),
        fock_cutoff: config.fock_cutoff,
        gamma_c_over_kappa: config.gamma_c_over_kappa,
        passed: points.iter().all(|p| p.passed),
        points,
    }
}

fn verify_point(epsilon: f64, config: &VerifyConfig) -> PointReport {
    let mut report = PointReport {
        epsilon_over_kappa: epsilon,
        gamma_c_over_kappa: config.gamma_c_over_kappa,
        warnings: Vec::new(),
        top_fock_population: None,
        entries: Vec::new(),
        passed: false,
        fock_populations: None,
    };
    let setup = SystemParams::new(epsilon, config.gamma_c_over_kappa).and_then(|p| {
        report.warnings = p.warnings();
        let space = HilbertSpace::new(config.fock_cutoff)?;
        let l = build_liouvillian(&p, space)?;
        let rho = steady_state(&l)?;
        Ok((p, l, rho))
    });
    match setup {
        Ok((p, l, rho)) => {
            report.top_fock_population = Some(rho.top_population());
            report.fock_populations = Some(rho.fock_populations());
            report.entries = compare_point(&p, &l, &rho, config);
        }
        Err(err) => report
            .entries
            .push(Entry::failed("steady_state", 0.0, Metric::Absolute, err)),
    }
    report.passed = report.entries.iter().filter(|e| e.gated).all(|e| e.passed);
    report
}

fn compare_point(
    p: &SystemParams,
    l: &Liouvillian,
    rho: &DensityMatrix,
    config: &VerifyConfig,
) -> Vec<Entry> {
    let mut entries = Vec::new();
    let top = rho.top_population();
    entries.push(Entry {
        passed: rho.truncation_adequate(),
        ..Entry::compare("top_fock_population", top, 0.0, 1e-8, Metric::Absolute)
    });
    if let Err(err) = rho.check_invariants() {
        entries.push(Entry::failed("density_matrix", 0.0, Metric::Absolute, err));
    }

    let real = |obs| expectation(rho, obs).re;
    let vars = cavity_variances(p);
    let rates = p.rates();
    entries.push(Entry::compare(
        "mean_photon_cavity",
        real(Observable::PhotonNumber),
        mean_photon_cavity(p),
        PHOTON_TOLERANCE,
        Metric::Relative,
    ));
    entries.push(Entry::compare(
        "var_plus_cavity",
        real(Observable::VariancePlus),
        vars.plus,
        VARIANCE_TOLERANCE,
        Metric::Absolute,
    ));
    entries.push(Entry::compare(
        "var_minus_cavity",
        real(Observable::VarianceMinus),
        vars.minus,
        VARIANCE_TOLERANCE,
        Metric::Absolute,
    ));
    entries.push(Entry::compare(
        "rho_aa",
        0.5 * (1.0 + real(Observable::SigmaZ)),
        steady_upper_population(p),
        POPULATION_TOLERANCE,
        Metric::Relative,
    ));
    entries.push(Entry::compare(
        "sigma_plus_sigma_minus",
        real(Observable::SigmaPlusSigmaMinus),
        steady_state_atom(&rates).rho_aa,
        2.0 * p.gamma_c_over_kappa(),
        Metric::Relative,
    ));
    let g2 = g2_entry(l, rho, rates.gamma_big);
    entries.push(if p.epsilon_over_kappa() <= G2_GATED_EPSILON {
        g2
    } else {
        g2.ungated()
    });
    if config.half_width {
        entries.push(half_width_entry(p, l, rho).ungated());
    }
    entries
}

fn g2_entry(l: &Liouvillian, rho: &DensityMatrix, gamma: f64) -> Entry {
    let name = "g2_distance";
    let tau: Vec<f64> = (0..G2_SAMPLES)
        .map(|k| G2_WINDOW * k as f64 / (G2_SAMPLES - 1) as f64 / gamma)
        .collect();
    match two_time_correlation(
        l,
        rho,
        CorrelationKind::Intensity,
        &tau,
        PropagationOptions::default(),
    ) {
        Ok(series) => {
            let distance = tau
                .iter()
                .zip(&series.values)
                .map(|(t, v)| (v.re + (-gamma * t).exp_m1()).abs())
                .fold(0.0, f64::max);
            if !distance.is_finite() {
                return Entry::failed(
                    name,
                    G2_TOLERANCE,
                    Metric::Absolute,
                    "non-finite correlation",
                );
            }
            Entry {
                oracle: None,
                analytic: None,
                ..Entry::compare(name, distance, 0.0, G2_TOLERANCE, Metric::Absolute)
            }
        }
        Err(err) => Entry::failed(name, G2_TOLERANCE, Metric::Absolute, err),
    }
}

fn half_width_entry(p: &SystemParams, l: &Liouvillian, rho: &DensityMatrix) -> Entry {
    let name = "half_width_fluorescent";
    let measured = decayed_correlation(
        l,
        rho,
        CorrelationKind::Atomic,
        CORRELATION_STEP,
        CORRELATION_WINDOW,
        PropagationOptions::default(),
    )
    .and_then(|s| CorrelationTransform::new(&s)?.half_width());
    match (measured, half_width(LightKind::Fluorescent, p)) {
        (Ok(m), Ok(a)) => Entry::compare(name, m, a, HALF_WIDTH_TOLERANCE, Metric::Relative),
        (Err(err), _) | (_, Err(err)) => {
            Entry::failed(name, HALF_WIDTH_TOLERANCE, Metric::Relative, err)
        }
    }
}
