//! Normalized power spectra of the fluorescent, signal and cavity light.
//!
//! Each spectrum is a sum of zero-centred Lorentzians
//! `(w / 2π) / (w² + ω²)`, which integrates to ½ over the real line. The
//! fluorescent and signal spectra carry two such terms (total area 1); the
//! cavity spectrum is the average of the two.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{check_ordered, trapezoid, UniformGrid};
use crate::params::{DerivedRates, SystemParams};

/// Which component of the intracavity light a quantity refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LightKind {
    Fluorescent,
    Cavity,
    Signal,
}

impl LightKind {
    pub const ALL: [LightKind; 3] = [LightKind::Fluorescent, LightKind::Cavity, LightKind::Signal];

    pub fn as_str(&self) -> &'static str {
        match self {
            LightKind::Fluorescent => "fluorescent",
            LightKind::Cavity => "cavity",
            LightKind::Signal => "signal",
        }
    }
}

impl fmt::Display for LightKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LightKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "fluorescent" => Ok(LightKind::Fluorescent),
            "cavity" => Ok(LightKind::Cavity),
            "signal" => Ok(LightKind::Signal),
            other => Err(format!("unknown light kind `{other}`")),
        }
    }
}

/// Spectral density sampled on a frequency grid (ω in units of κ).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumCurve {
    pub kind: LightKind,
    pub omega_over_kappa: Vec<f64>,
    pub values: Vec<f64>,
}

impl SpectrumCurve {
    pub fn area(&self) -> f64 {
        trapezoid(&self.omega_over_kappa, &self.values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Half-widths and weights of the Lorentzian terms making up a spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct LorentzianSum {
    terms: Vec<(f64, f64)>,
}

impl LorentzianSum {
    /// Terms given as `(half_width, weight)`; a weight of 1 integrates to ½.
    fn new(terms: Vec<(f64, f64)>) -> Self {
        Self { terms }
    }

    pub fn for_kind(kind: LightKind, params: &SystemParams) -> Self {
        let rates = params.rates();
        match kind {
            LightKind::Fluorescent => {
                Self::new(vec![(rates.lambda_plus, 1.0), (rates.lambda_minus, 1.0)])
            }
            LightKind::Signal => Self::new(vec![(rates.mu_plus, 1.0), (rates.mu_minus, 1.0)]),
            LightKind::Cavity => Self::new(vec![
                (rates.mu_plus, 0.5),
                (rates.mu_minus, 0.5),
                (rates.lambda_plus, 0.5),
                (rates.lambda_minus, 0.5),
            ]),
        }
    }

    pub fn terms(&self) -> &[(f64, f64)] {
        &self.terms
    }

    pub fn density(&self, omega: f64) -> f64 {
        self.terms
            .iter()
            .map(|&(w, weight)| weight * lorentzian(w, omega))
            .sum()
    }
}

/// `(w/2π) / (w² + ω²)`; area ½.
pub fn lorentzian(half_width: f64, omega: f64) -> f64 {
    half_width / (2.0 * PI) / (half_width * half_width + omega * omega)
}

pub fn fluorescent_density(rates: &DerivedRates, omega: f64) -> f64 {
    lorentzian(rates.lambda_plus, omega) + lorentzian(rates.lambda_minus, omega)
}

/// Independent of the atom: only the pump ratio enters.
pub fn signal_density(params: &SystemParams, omega: f64) -> f64 {
    let e = params.epsilon_over_kappa();
    lorentzian(0.5 + e, omega) + lorentzian(0.5 - e, omega)
}

pub fn cavity_density(params: &SystemParams, rates: &DerivedRates, omega: f64) -> f64 {
    let e = params.epsilon_over_kappa();
    0.5 * (lorentzian(0.5 + e, omega)
        + lorentzian(0.5 - e, omega)
        + lorentzian(rates.lambda_plus, omega)
        + lorentzian(rates.lambda_minus, omega))
}

pub fn spectral_density(kind: LightKind, params: &SystemParams, omega: f64) -> f64 {
    match kind {
        LightKind::Fluorescent => fluorescent_density(&params.rates(), omega),
        LightKind::Signal => signal_density(params, omega),
        LightKind::Cavity => cavity_density(params, &params.rates(), omega),
    }
}

fn sample(kind: LightKind, omegas: &[f64], f: impl Fn(f64) -> f64) -> Result<SpectrumCurve> {
    check_ordered(omegas)?;
    Ok(SpectrumCurve {
        kind,
        omega_over_kappa: omegas.to_vec(),
        values: omegas.iter().map(|&w| f(w)).collect(),
    })
}

pub fn fluorescent_spectrum(rates: &DerivedRates, omegas: &[f64]) -> Result<SpectrumCurve> {
    sample(LightKind::Fluorescent, omegas, |w| {
        fluorescent_density(rates, w)
    })
}

pub fn signal_spectrum(params: &SystemParams, omegas: &[f64]) -> Result<SpectrumCurve> {
    sample(LightKind::Signal, omegas, |w| signal_density(params, w))
}

pub fn cavity_spectrum(
    params: &SystemParams,
    rates: &DerivedRates,
    omegas: &[f64],
) -> Result<SpectrumCurve> {
    sample(LightKind::Cavity, omegas, |w| {
        cavity_density(params, rates, w)
    })
}

pub fn spectrum(kind: LightKind, params: &SystemParams, omegas: &[f64]) -> Result<SpectrumCurve> {
    let rates = params.rates();
    match kind {
        LightKind::Fluorescent => fluorescent_spectrum(&rates, omegas),
        LightKind::Signal => signal_spectrum(params, omegas),
        LightKind::Cavity => cavity_spectrum(params, &rates, omegas),
    }
}

/// Default plotting grid: ±0.1κ for the narrow fluorescent and cavity
/// features, ±2κ for the signal light; 2001 points.
pub fn default_grid(kind: LightKind) -> UniformGrid {
    let span = match kind {
        LightKind::Fluorescent | LightKind::Cavity => 0.1,
        LightKind::Signal => 2.0,
    };
    UniformGrid {
        min: -span,
        max: span,
        points: 2001,
    }
}

/// Upper end of the half-width search interval, in units of κ.
pub const HALF_WIDTH_SEARCH_LIMIT: f64 = 10.0;
/// Absolute bisection tolerance on ω, in units of κ.
pub const HALF_WIDTH_TOLERANCE: f64 = 1e-10;

/// Half width at half maximum of a spectrum that decreases monotonically
/// for ω > 0, found by bisection on the closed form.
pub fn half_width_of(density: impl Fn(f64) -> f64) -> Result<f64> {
    half_width_within(density, HALF_WIDTH_SEARCH_LIMIT)
}

/// As [`half_width_of`], searching ω in (0, limit].
pub fn half_width_within(density: impl Fn(f64) -> f64, limit: f64) -> Result<f64> {
    let target = 0.5 * density(0.0);
    let excess = |w: f64| density(w) - target;
    let mut lo = 0.0;
    let mut hi = limit;
    if !(target > 0.0) || excess(hi) > 0.0 {
        return Err(Error::BracketNotFound(limit));
    }
    while hi - lo > HALF_WIDTH_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if excess(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

pub fn half_width(kind: LightKind, params: &SystemParams) -> Result<f64> {
    let rates = params.rates();
    match kind {
        LightKind::Fluorescent => half_width_of(|w| fluorescent_density(&rates, w)),
        LightKind::Signal => half_width_of(|w| signal_density(params, w)),
        LightKind::Cavity => half_width_of(|w| cavity_density(params, &rates, w)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn params(e: f64) -> SystemParams {
        SystemParams::new(e, 0.01).unwrap()
    }

    #[test]
    fn fluorescent_peak_value() {
        // (1/2π)(1/λ₊ + 1/λ₋) with λ₊ = 1/60, λ₋ = 1/180.
        let s0 = fluorescent_density(&params(0.25).rates(), 0.0);
        assert_relative_eq!(s0, 240.0 / (2.0 * PI), max_relative = 1e-12);
        assert!((s0 - 38.197).abs() < 1e-3);
    }

    #[test]
    fn zero_pump_is_single_lorentzian() {
        let p = SystemParams::new(0.0, 0.01).unwrap();
        let r = p.rates();
        for &w in &[0.0, 0.003, 0.02] {
            assert_relative_eq!(
                fluorescent_density(&r, w),
                2.0 * lorentzian(0.005, w),
                max_relative = 1e-14
            );
            assert_relative_eq!(
                signal_density(&p, w),
                2.0 * lorentzian(0.5, w),
                max_relative = 1e-14
            );
            assert_relative_eq!(
                cavity_density(&p, &r, w),
                lorentzian(0.5, w) + lorentzian(0.005, w),
                max_relative = 1e-14
            );
        }
        assert!((half_width(LightKind::Fluorescent, &p).unwrap() - 0.005).abs() < 1e-9);
        assert!((half_width(LightKind::Signal, &p).unwrap() - 0.5).abs() < 1e-9);
    }

    #[test]
    fn half_width_of_single_lorentzian() {
        for &a in &[1e-3, 0.0123, 0.5, 3.0] {
            let hw = half_width_of(|w| lorentzian(a, w)).unwrap();
            assert!((hw - a).abs() < 1e-6, "{hw} vs {a}");
        }
    }

    #[test]
    fn half_width_without_bracket_fails() {
        assert_eq!(
            half_width_of(|w| lorentzian(20.0, w)),
            Err(Error::BracketNotFound(HALF_WIDTH_SEARCH_LIMIT))
        );
        assert!(half_width_of(|_| 0.0).is_err());
    }

    #[test]
    fn quoted_half_widths() {
        let cases = [
            (LightKind::Fluorescent, 0.25, 0.0070, 2e-4),
            (LightKind::Fluorescent, 0.35, 0.0101, 2e-4),
            (LightKind::Cavity, 0.25, 0.0072, 2e-4),
            (LightKind::Cavity, 0.35, 0.0108, 2e-4),
            (LightKind::Signal, 0.25, 0.3168, 5e-4),
            (LightKind::Signal, 0.35, 0.1766, 5e-4),
        ];
        for (kind, e, expected, tol) in cases {
            let hw = half_width(kind, &params(e)).unwrap();
            assert!((hw - expected).abs() <= tol, "{kind} eps={e}: {hw}");
        }
    }

    #[test]
    fn signal_ignores_atom() {
        let grid = default_grid(LightKind::Signal).values();
        let a = signal_spectrum(&SystemParams::new(0.3, 0.01).unwrap(), &grid).unwrap();
        let b = signal_spectrum(&SystemParams::new(0.3, 0.05).unwrap(), &grid).unwrap();
        assert_eq!(a.values, b.values);
    }

    #[test]
    fn cavity_is_average_of_components() {
        let p = params(0.3);
        let r = p.rates();
        let grid = UniformGrid::symmetric(0.5, 401).unwrap().values();
        let c = cavity_spectrum(&p, &r, &grid).unwrap();
        let s = signal_spectrum(&p, &grid).unwrap();
        let f = fluorescent_spectrum(&r, &grid).unwrap();
        for i in 0..grid.len() {
            let avg = 0.5 * (s.values[i] + f.values[i]);
            assert!((c.values[i] - avg).abs() <= 1e-12 * avg);
        }
    }

    #[test]
    fn lorentzian_term_table_matches_density() {
        let p = params(0.2);
        for kind in LightKind::ALL {
            let sum = LorentzianSum::for_kind(kind, &p);
            let total: f64 = sum.terms().iter().map(|t| t.1).sum();
            assert_relative_eq!(total, 2.0);
            for &w in &[0.0, 0.004, 0.3] {
                assert_relative_eq!(
                    sum.density(w),
                    spectral_density(kind, &p, w),
                    max_relative = 1e-13
                );
            }
        }
    }

    #[test]
    fn unordered_grid_is_rejected() {
        assert!(spectrum(LightKind::Signal, &params(0.1), &[0.0, -1.0]).is_err());
    }

    #[test]
    fn kind_parses() {
        for kind in LightKind::ALL {
            assert_eq!(kind.as_str().parse::<LightKind>().unwrap(), kind);
        }
        assert!("laser".parse::<LightKind>().is_err());
    }
}
