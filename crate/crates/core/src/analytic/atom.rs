//! Reduced atomic dynamics after the cavity has been eliminated.
//!
//! The mean dipole and inversion obey a linear system,
//!
//! ```text
//! d⟨σ₋⟩/dt = −(Γ/2)⟨σ₋⟩ − (ε/κ)Γ⟨σ₊⟩
//! d⟨σ₊⟩/dt = −(Γ/2)⟨σ₊⟩ − (ε/κ)Γ⟨σ₋⟩
//! d⟨σ_z⟩/dt = −Γ⟨σ_z⟩ − η
//! ```
//!
//! which decouples in z± = ⟨σ₋⟩ ± ⟨σ₊⟩ (decay rates λ±), so it is solved
//! in closed form rather than stepped.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::check_ordered;
use crate::params::{DerivedRates, SystemParams};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AtomicState {
    pub sigma_minus: Complex64,
    pub sigma_plus: Complex64,
    pub sigma_z: f64,
    pub rho_aa: f64,
}

const CONSISTENCY_TOL: f64 = 1e-12;

impl AtomicState {
    pub fn new(sigma_minus: Complex64, sigma_z: f64) -> Result<Self> {
        let state = Self {
            sigma_minus,
            sigma_plus: sigma_minus.conj(),
            sigma_z,
            rho_aa: 0.5 * (sigma_z + 1.0),
        };
        state.validate()?;
        Ok(state)
    }

    pub fn ground() -> Self {
        Self {
            sigma_minus: Complex64::new(0.0, 0.0),
            sigma_plus: Complex64::new(0.0, 0.0),
            sigma_z: -1.0,
            rho_aa: 0.0,
        }
    }

    pub fn excited() -> Self {
        Self {
            sigma_z: 1.0,
            rho_aa: 1.0,
            ..Self::ground()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidAtomicState(msg));
        if !(-1.0..=1.0).contains(&self.sigma_z) {
            return bad(format!("sigma_z = {} outside [-1, 1]", self.sigma_z));
        }
        if !self.sigma_minus.norm().is_finite() || self.sigma_minus.norm() > 1.0 {
            return bad(format!(
                "|sigma_minus| = {} exceeds 1",
                self.sigma_minus.norm()
            ));
        }
        if (self.sigma_plus - self.sigma_minus.conj()).norm() > CONSISTENCY_TOL {
            return bad("sigma_plus is not the conjugate of sigma_minus".into());
        }
        if (self.rho_aa - 0.5 * (self.sigma_z + 1.0)).abs() > CONSISTENCY_TOL {
            return bad("rho_aa inconsistent with sigma_z".into());
        }
        Ok(())
    }
}

/// Stationary point of the reduced equations: no mean dipole,
/// ⟨σ_z⟩ = −η/Γ and ⟨σ₊σ₋⟩ = (Γ − η)/2Γ.
pub fn steady_state_atom(rates: &DerivedRates) -> AtomicState {
    if rates.gamma_big == 0.0 {
        // Uncoupled atom: nothing drives it, report the ground state.
        return AtomicState::ground();
    }
    let sigma_z = -rates.eta / rates.gamma_big;
    AtomicState {
        sigma_minus: Complex64::new(0.0, 0.0),
        sigma_plus: Complex64::new(0.0, 0.0),
        sigma_z,
        rho_aa: (rates.gamma_big - rates.eta) / (2.0 * rates.gamma_big),
    }
}

/// Exact solution of the reduced equations at each time in `t`, starting
/// from `initial` at t = 0.
pub fn reduced_atomic_ode(
    _params: &SystemParams,
    rates: &DerivedRates,
    initial: &AtomicState,
    t: &[f64],
) -> Result<Vec<AtomicState>> {
    initial.validate()?;
    if let Some(&bad) = t.iter().find(|t| **t < 0.0) {
        return Err(Error::NegativeDelay(bad));
    }
    check_ordered(t)?;

    let z_plus = initial.sigma_minus + initial.sigma_plus;
    let z_minus = initial.sigma_minus - initial.sigma_plus;
    let z_inf = if rates.gamma_big == 0.0 {
        -1.0
    } else {
        -rates.eta / rates.gamma_big
    };
    Ok(t.iter()
        .map(|&t| {
            let zp = z_plus * (-rates.lambda_plus * t).exp();
            let zm = z_minus * (-rates.lambda_minus * t).exp();
            let decay = (-rates.gamma_big * t).exp();
            let sigma_z = if rates.gamma_big == 0.0 {
                initial.sigma_z
            } else {
                initial.sigma_z * decay + z_inf * (1.0 - decay)
            };
            let sigma_minus = 0.5 * (zp + zm);
            AtomicState {
                sigma_minus,
                sigma_plus: sigma_minus.conj(),
                sigma_z,
                rho_aa: 0.5 * (sigma_z + 1.0),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::correlation::{steady_upper_population, upper_level_population};
    use approx::assert_relative_eq;

    #[test]
    fn steady_inversion() {
        let p = SystemParams::new(0.0, 0.01).unwrap();
        let s = steady_state_atom(&p.rates());
        assert_eq!(s.sigma_z, -1.0);
        assert_eq!(s.rho_aa, 0.0);

        let p = SystemParams::new(0.25, 0.01).unwrap();
        let s = steady_state_atom(&p.rates());
        assert_relative_eq!(s.sigma_z, -0.6, max_relative = 1e-13);
        assert_relative_eq!(s.rho_aa, steady_upper_population(&p), max_relative = 1e-13);
        assert_eq!(s.sigma_minus, Complex64::new(0.0, 0.0));
        s.validate().unwrap();
    }

    #[test]
    fn ground_is_stationary_without_pump() {
        let p = SystemParams::new(0.0, 0.01).unwrap();
        let t: Vec<f64> = (0..30).map(|i| i as f64 * 50.0).collect();
        let out = reduced_atomic_ode(&p, &p.rates(), &AtomicState::ground(), &t).unwrap();
        assert!(out
            .iter()
            .all(|s| s.sigma_z == -1.0 && s.sigma_minus.norm() == 0.0));
    }

    #[test]
    fn inversion_tracks_population_formula() {
        let p = SystemParams::new(0.3, 0.01).unwrap();
        let r = p.rates();
        let t: Vec<f64> = (0..40).map(|i| i as f64 * 10.0).collect();
        let out = reduced_atomic_ode(&p, &r, &AtomicState::excited(), &t).unwrap();
        let pop = upper_level_population(&p, &r, 1.0, &t).unwrap();
        for (s, rho) in out.iter().zip(&pop.values) {
            assert!((s.sigma_z - (2.0 * rho - 1.0)).abs() < 1e-13);
        }
    }

    #[test]
    fn dipole_combinations_decay_exponentially() {
        let p = SystemParams::new(0.2, 0.02).unwrap();
        let r = p.rates();
        let init = AtomicState::new(Complex64::new(0.3, -0.2), 0.1).unwrap();
        let t = [0.0, 5.0, 40.0, 300.0];
        let out = reduced_atomic_ode(&p, &r, &init, &t).unwrap();
        let zp0 = init.sigma_minus + init.sigma_plus;
        let zm0 = init.sigma_minus - init.sigma_plus;
        for (s, &t) in out.iter().zip(&t) {
            let zp = s.sigma_minus + s.sigma_plus;
            let zm = s.sigma_minus - s.sigma_plus;
            assert!((zp - zp0 * (-r.lambda_plus * t).exp()).norm() < 1e-14);
            assert!((zm - zm0 * (-r.lambda_minus * t).exp()).norm() < 1e-14);
        }
    }

    #[test]
    fn closed_form_satisfies_equations_of_motion() {
        // Central finite difference against the right-hand side.
        let p = SystemParams::new(0.35, 0.01).unwrap();
        let r = p.rates();
        let e = p.epsilon_over_kappa();
        let init = AtomicState::new(Complex64::new(0.1, 0.25), 0.4).unwrap();
        let h = 1e-3;
        for &t in &[1.0, 30.0, 120.0] {
            let s = reduced_atomic_ode(&p, &r, &init, &[t - h, t, t + h]).unwrap();
            let dm = (s[2].sigma_minus - s[0].sigma_minus) / (2.0 * h);
            let dz = (s[2].sigma_z - s[0].sigma_z) / (2.0 * h);
            let rhs_m = -0.5 * r.gamma_big * s[1].sigma_minus - e * r.gamma_big * s[1].sigma_plus;
            let rhs_z = -r.gamma_big * s[1].sigma_z - r.eta;
            assert!((dm - rhs_m).norm() < 1e-9);
            assert!((dz - rhs_z).abs() < 1e-9);
        }
    }

    #[test]
    fn invalid_states_rejected() {
        assert!(AtomicState::new(Complex64::new(0.0, 0.0), 1.5).is_err());
        assert!(AtomicState::new(Complex64::new(1.0, 1.0), 0.0).is_err());
        let mut s = AtomicState::ground();
        s.rho_aa = 0.3;
        assert!(s.validate().is_err());
    }
}
