//! Two-time correlations by the quantum regression theorem.
//!
//! For ⟨A(t) B(t+τ) C(t)⟩ at steady state the seed C ρ_ss A is evolved
//! under the Liouvillian and traced against B at each delay.
//!
//! Time stepping uses the (2,2) Padé approximant of e^{hL}, factored as
//! Π_r (I − hL/r)⁻¹(I + hL/r) over the roots r = 3 ± i√3. Each factor is
//! A-stable and annihilates nothing in the trace functional, so the seed
//! trace is conserved to round-off.

use std::collections::HashMap;
use std::f64::consts::PI;

use faer::linalg::solvers::Solve;
use faer::sparse::linalg::solvers::Lu;
use faer::Mat;
use num_complex::Complex64;
use serde::Serialize;

use crate::analytic::correlation::CorrelationSeries;
use crate::analytic::spectrum::{half_width_within, LightKind, SpectrumCurve};
use crate::error::{Error, Result};
use crate::grid::check_ordered;
use crate::oracle::hilbert::Operator;
use crate::oracle::liouvillian::Liouvillian;
use crate::oracle::observables::{expectation, Observable};
use crate::oracle::state::DensityMatrix;

/// Allowed drift of the seed trace over a propagation run.
pub const TRACE_DRIFT_LIMIT: f64 = 1e-8;
/// Required decay |C(τ_end)| / |C(0)| before a Fourier transform.
pub const DECAY_RATIO: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CorrelationKind {
    /// ⟨σ₊(t)σ₋(t+τ)⟩
    Atomic,
    /// ⟨a†(t)a(t+τ)⟩
    Field,
    /// ⟨σ₊(t)σ₊(t+τ)σ₋(t+τ)σ₋(t)⟩ / ⟨σ₊σ₋⟩²
    Intensity,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TwoTimeSeries {
    pub kind: CorrelationKind,
    pub tau: Vec<f64>,
    pub values: Vec<Complex64>,
}

impl TwoTimeSeries {
    pub fn real(&self) -> CorrelationSeries {
        CorrelationSeries {
            tau: self.tau.clone(),
            values: self.values.iter().map(|z| z.re).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagationOptions {
    /// Largest internal step, in units of 1/κ.
    pub max_step: f64,
}

impl Default for PropagationOptions {
    fn default() -> Self {
        Self { max_step: 1.0 }
    }
}

struct StepFactors {
    factors: Vec<(Complex64, Lu<usize, Complex64>)>,
}

/// Evolves vectorized operators under a fixed Liouvillian.
pub struct Propagator<'a> {
    l: &'a Liouvillian,
    options: PropagationOptions,
    cache: HashMap<u64, StepFactors>,
    scratch: Vec<Complex64>,
}

impl<'a> Propagator<'a> {
    pub fn new(l: &'a Liouvillian, options: PropagationOptions) -> Self {
        Self {
            l,
            options,
            cache: HashMap::new(),
            scratch: vec![Complex64::new(0.0, 0.0); l.size()],
        }
    }

    fn factors(&mut self, h: f64) -> Result<&StepFactors> {
        let key = h.to_bits();
        if !self.cache.contains_key(&key) {
            let s3 = 3.0f64.sqrt();
            let mut factors = Vec::with_capacity(2);
            for root in [Complex64::new(3.0, s3), Complex64::new(3.0, -s3)] {
                let scale = Complex64::new(h, 0.0) / root;
                let m = self.l.shifted(Complex64::new(1.0, 0.0), -scale, None)?;
                let lu = m.sp_lu().map_err(|e| Error::Solver(format!("{e:?}")))?;
                factors.push((scale, lu));
            }
            self.cache.insert(key, StepFactors { factors });
        }
        Ok(&self.cache[&key])
    }

    fn step(&mut self, v: &mut [Complex64], h: f64) -> Result<()> {
        let n = v.len();
        let mut scratch = std::mem::take(&mut self.scratch);
        let l = self.l;
        let factors = self.factors(h)?;
        for (scale, lu) in &factors.factors {
            l.apply(v, &mut scratch);
            let rhs = Mat::from_fn(n, 1, |i, _| v[i] + *scale * scratch[i]);
            let sol = lu.solve(&rhs);
            for (i, x) in v.iter_mut().enumerate() {
                *x = sol[(i, 0)];
            }
        }
        self.scratch = scratch;
        Ok(())
    }

    /// Advance `v` by `duration`, splitting into equal steps no longer than
    /// the configured maximum.
    pub fn advance(&mut self, v: &mut [Complex64], duration: f64) -> Result<()> {
        if duration <= 0.0 {
            return Ok(());
        }
        let steps = (duration / self.options.max_step).ceil().max(1.0) as usize;
        // Quantize so repeated equal intervals reuse one factorization.
        let h = duration / steps as f64;
        let h = f64::from_bits(h.to_bits() & !0xff);
        let covered = h * steps as f64;
        for _ in 0..steps {
            self.step(v, h)?;
        }
        let rest = duration - covered;
        if rest > 1e-14 * duration {
            self.step(v, rest)?;
        }
        Ok(())
    }
}

fn trace_of(l: &Liouvillian, v: &[Complex64]) -> Complex64 {
    l.trace_indices().into_iter().map(|i| v[i]).sum()
}

/// tr(B X) for vectorized X.
fn trace_against(op: &Operator, v: &[Complex64]) -> Complex64 {
    let d = op.nrows();
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..d {
        for i in 0..d {
            let o = op[(j, i)];
            if o != Complex64::new(0.0, 0.0) {
                acc += o * v[i + j * d];
            }
        }
    }
    acc
}

struct Seeded {
    seed: Vec<Complex64>,
    probe: Operator,
    norm: Complex64,
}

fn seed(rho: &DensityMatrix, kind: CorrelationKind) -> Seeded {
    let space = rho.space();
    let r = rho.matrix();
    let (seed_mat, probe, norm) = match kind {
        CorrelationKind::Atomic => (
            r * &space.sigma_plus(),
            space.sigma_minus(),
            Complex64::new(1.0, 0.0),
        ),
        CorrelationKind::Field => (
            r * &space.creation(),
            space.annihilation(),
            Complex64::new(1.0, 0.0),
        ),
        CorrelationKind::Intensity => {
            let sm = space.sigma_minus();
            let sp = space.sigma_plus();
            let pop = expectation(rho, Observable::SigmaPlusSigmaMinus);
            (&(&sm * r) * &sp, &sp * &sm, pop * pop)
        }
    };
    let d = space.dim();
    Seeded {
        seed: (0..d * d).map(|k| seed_mat[(k % d, k / d)]).collect(),
        probe,
        norm,
    }
}

fn evolve(
    l: &Liouvillian,
    seeded: &Seeded,
    kind: CorrelationKind,
    tau: &[f64],
    options: PropagationOptions,
    mut stop: impl FnMut(Complex64, Complex64) -> bool,
) -> Result<TwoTimeSeries> {
    let mut prop = Propagator::new(l, options);
    let mut v = seeded.seed.clone();
    let trace0 = trace_of(l, &v);
    let tol = TRACE_DRIFT_LIMIT * trace0.norm().max(1.0);
    let mut now = 0.0;
    let mut out = TwoTimeSeries {
        kind,
        tau: Vec::with_capacity(tau.len()),
        values: Vec::with_capacity(tau.len()),
    };
    let mut first = None;
    for &t in tau {
        prop.advance(&mut v, t - now)?;
        now = t;
        let drift = (trace_of(l, &v) - trace0).norm();
        if !(drift <= tol) {
            return Err(Error::PropagationUnstable {
                tau: t,
                trace_error: drift,
            });
        }
        let value = trace_against(&seeded.probe, &v) / seeded.norm;
        out.tau.push(t);
        out.values.push(value);
        let c0 = *first.get_or_insert(value);
        if stop(c0, value) {
            break;
        }
    }
    Ok(out)
}

/// Steady-state two-time correlation of the requested kind on `tau`.
pub fn two_time_correlation(
    l: &Liouvillian,
    rho_ss: &DensityMatrix,
    kind: CorrelationKind,
    tau: &[f64],
    options: PropagationOptions,
) -> Result<TwoTimeSeries> {
    if let Some(&t) = tau.iter().find(|t| **t < 0.0) {
        return Err(Error::NegativeDelay(t));
    }
    check_ordered(tau)?;
    let seeded = seed(rho_ss, kind);
    if kind == CorrelationKind::Intensity && seeded.norm.norm() == 0.0 {
        return Err(Error::InvalidAtomicState(
            "upper level unpopulated; g2 undefined".into(),
        ));
    }
    evolve(l, &seeded, kind, tau, options, |_, _| false)
}

/// First-order correlation on the uniform grid 0, dt, 2dt, … extended until
/// it has decayed below [`DECAY_RATIO`] of its initial value.
pub fn decayed_correlation(
    l: &Liouvillian,
    rho_ss: &DensityMatrix,
    kind: CorrelationKind,
    dt: f64,
    max_tau: f64,
    options: PropagationOptions,
) -> Result<TwoTimeSeries> {
    if kind == CorrelationKind::Intensity {
        return Err(Error::InvalidGrid(
            "intensity correlation does not decay to zero".into(),
        ));
    }
    if !(dt > 0.0) || !(max_tau > dt) {
        return Err(Error::InvalidGrid(format!(
            "need 0 < dt < max_tau, got dt={dt}, max_tau={max_tau}"
        )));
    }
    let points = (max_tau / dt).ceil() as usize + 1;
    let tau: Vec<f64> = (0..points).map(|k| k as f64 * dt).collect();
    let seeded = seed(rho_ss, kind);
    let series = evolve(l, &seeded, kind, &tau, options, |c0, c| {
        c.norm() < 0.1 * DECAY_RATIO * c0.norm()
    })?;
    let ratio = decay_ratio(&series);
    if ratio > DECAY_RATIO {
        return Err(Error::InsufficientDecay { ratio });
    }
    Ok(series)
}

fn decay_ratio(series: &TwoTimeSeries) -> f64 {
    match (series.values.first(), series.values.last()) {
        (Some(first), Some(last)) if first.norm() > 0.0 => last.norm() / first.norm(),
        _ => f64::INFINITY,
    }
}

/// One-sided transform of a sampled correlation, with the exact
/// normalization of an untruncated transform: ∫S dω = 2π Re C(0) ↦ 1.
#[derive(Debug, Clone)]
pub struct CorrelationTransform<'a> {
    series: &'a TwoTimeSeries,
    dt: f64,
    norm: f64,
}

impl<'a> CorrelationTransform<'a> {
    pub fn new(series: &'a TwoTimeSeries) -> Result<Self> {
        let tau = &series.tau;
        if tau.len() < 2 || tau[0] != 0.0 {
            return Err(Error::InvalidGrid(
                "delay grid must start at 0 with at least two points".into(),
            ));
        }
        let dt = tau[1] - tau[0];
        let uniform = tau
            .windows(2)
            .all(|w| ((w[1] - w[0]) - dt).abs() <= 1e-9 * dt.max(1.0));
        if !(dt > 0.0) || !uniform {
            return Err(Error::InvalidGrid("delay grid must be uniform".into()));
        }
        let ratio = decay_ratio(series);
        if ratio > DECAY_RATIO {
            return Err(Error::InsufficientDecay { ratio });
        }
        let norm = 2.0 * PI * series.values[0].re;
        if !(norm > 0.0) {
            return Err(Error::InvalidGrid(
                "correlation must be positive at zero delay".into(),
            ));
        }
        Ok(Self { series, dt, norm })
    }

    /// Normalized S(ω) = 2 Re ∫₀^∞ C(τ) e^{iωτ} dτ / (2π Re C(0)),
    /// trapezoidal rule.
    pub fn density(&self, omega: f64) -> f64 {
        let rot = Complex64::from_polar(1.0, omega * self.dt);
        let mut phase = Complex64::new(1.0, 0.0);
        let mut acc = Complex64::new(0.0, 0.0);
        let last = self.series.values.len() - 1;
        for (k, c) in self.series.values.iter().enumerate() {
            let w = if k == 0 || k == last { 0.5 } else { 1.0 };
            acc += w * c * phase;
            phase *= rot;
            // Renormalize occasionally to stop the phasor drifting.
            if k % 1024 == 1023 {
                phase = Complex64::from_polar(1.0, omega * self.dt * (k + 1) as f64);
            }
        }
        2.0 * (acc * self.dt).re / self.norm
    }

    /// Highest frequency the sampling resolves.
    pub fn nyquist(&self) -> f64 {
        PI / self.dt
    }

    pub fn half_width(&self) -> Result<f64> {
        half_width_within(|w| self.density(w), self.nyquist())
    }
}

pub fn spectrum_from_correlation(
    series: &TwoTimeSeries,
    kind: LightKind,
    omegas: &[f64],
) -> Result<SpectrumCurve> {
    check_ordered(omegas)?;
    let transform = CorrelationTransform::new(series)?;
    Ok(SpectrumCurve {
        kind,
        omega_over_kappa: omegas.to_vec(),
        values: omegas.iter().map(|&w| transform.density(w)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::spectrum::{fluorescent_density, lorentzian};
    use crate::oracle::hilbert::HilbertSpace;
    use crate::oracle::liouvillian::build_liouvillian;
    use crate::oracle::state::steady_state;
    use crate::params::SystemParams;

    fn exp_series(rates: &[(f64, f64)], dt: f64, t_end: f64) -> TwoTimeSeries {
        let n = (t_end / dt).round() as usize + 1;
        let tau: Vec<f64> = (0..n).map(|k| k as f64 * dt).collect();
        let values = tau
            .iter()
            .map(|&t| Complex64::new(rates.iter().map(|&(a, w)| w * (-a * t).exp()).sum(), 0.0))
            .collect();
        TwoTimeSeries {
            kind: CorrelationKind::Atomic,
            tau,
            values,
        }
    }

    #[test]
    fn single_exponential_gives_lorentzian() {
        let a = 0.05;
        let s = exp_series(&[(a, 1.0)], 0.05, 30.0 / a);
        let t = CorrelationTransform::new(&s).unwrap();
        for &w in &[0.0, 0.01, 0.05, 0.2] {
            assert!(
                (t.density(w) - 2.0 * lorentzian(a, w)).abs() < 1e-4 * 2.0 * lorentzian(a, 0.0)
            );
        }
        assert!((t.half_width().unwrap() - a).abs() < 1e-5);
    }

    #[test]
    fn analytic_atomic_correlation_reproduces_spectrum() {
        let p = SystemParams::new(0.25, 0.01).unwrap();
        let r = p.rates();
        let amp = (r.gamma_big - r.eta) / (4.0 * r.gamma_big);
        let s = exp_series(
            &[(r.lambda_plus, amp), (r.lambda_minus, amp)],
            0.2,
            30.0 / r.lambda_minus,
        );
        let omegas: Vec<f64> = (0..101).map(|k| -0.1 + 0.002 * k as f64).collect();
        let curve = spectrum_from_correlation(&s, LightKind::Fluorescent, &omegas).unwrap();
        for (w, v) in omegas.iter().zip(&curve.values) {
            assert!((v - fluorescent_density(&r, *w)).abs() < 1e-4, "omega={w}");
        }
    }

    #[test]
    fn short_window_rejected() {
        let s = exp_series(&[(0.01, 1.0)], 1.0, 100.0);
        assert!(matches!(
            CorrelationTransform::new(&s),
            Err(Error::InsufficientDecay { .. })
        ));
    }

    #[test]
    fn intensity_correlation_vanishes_at_zero_delay() {
        let p = SystemParams::new(0.25, 0.01).unwrap();
        let l = build_liouvillian(&p, HilbertSpace::new(16).unwrap()).unwrap();
        let rho = steady_state(&l).unwrap();
        let s = two_time_correlation(
            &l,
            &rho,
            CorrelationKind::Intensity,
            &[0.0, 10.0],
            PropagationOptions::default(),
        )
        .unwrap();
        assert_eq!(s.values[0], Complex64::new(0.0, 0.0));
        assert!(s.values[1].re > 0.0);
    }

    #[test]
    fn density_trace_conserved() {
        // Evolving ρ itself: trace stays 1 and ρ_ss is stationary.
        let p = SystemParams::new(0.3, 0.02).unwrap();
        let l = build_liouvillian(&p, HilbertSpace::new(18).unwrap()).unwrap();
        let rho = steady_state(&l).unwrap();
        let mut v = DensityMatrix::pure(l.space(), true, 0).to_vec();
        let mut prop = Propagator::new(&l, PropagationOptions::default());
        for _ in 0..20 {
            prop.advance(&mut v, 25.0).unwrap();
            assert!((trace_of(&l, &v) - Complex64::new(1.0, 0.0)).norm() < 1e-8);
        }
        let mut w = rho.to_vec();
        prop.advance(&mut w, 50.0).unwrap();
        let drift = w
            .iter()
            .zip(rho.to_vec())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(drift < 1e-9);
    }
}
