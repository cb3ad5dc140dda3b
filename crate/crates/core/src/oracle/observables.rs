use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::oracle::state::DensityMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Observable {
    /// ⟨a⟩
    A,
    /// ⟨a†a⟩
    PhotonNumber,
    /// ⟨a²⟩
    ASquared,
    /// ⟨σ₋⟩
    SigmaMinus,
    /// ⟨σ_z⟩
    SigmaZ,
    /// ⟨σ₊σ₋⟩, the upper-level population.
    SigmaPlusSigmaMinus,
    /// Δa₊² = 1 + 2⟨a†a⟩ + (⟨a†²⟩ + ⟨a²⟩)
    VariancePlus,
    /// Δa₋² = 1 + 2⟨a†a⟩ − (⟨a†²⟩ + ⟨a²⟩)
    VarianceMinus,
}

impl Observable {
    pub const ALL: [Observable; 8] = [
        Observable::A,
        Observable::PhotonNumber,
        Observable::ASquared,
        Observable::SigmaMinus,
        Observable::SigmaZ,
        Observable::SigmaPlusSigmaMinus,
        Observable::VariancePlus,
        Observable::VarianceMinus,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Observable::A => "a",
            Observable::PhotonNumber => "adag_a",
            Observable::ASquared => "a2",
            Observable::SigmaMinus => "sigma_minus",
            Observable::SigmaZ => "sigma_z",
            Observable::SigmaPlusSigmaMinus => "sigma_plus_sigma_minus",
            Observable::VariancePlus => "var_plus",
            Observable::VarianceMinus => "var_minus",
        }
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Observable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Observable::ALL
            .into_iter()
            .find(|o| o.id() == s)
            .ok_or_else(|| Error::UnknownObservable(s.to_string()))
    }
}

/// Expectation value tr(O ρ). The quadrature variances assume ⟨a⟩ = 0,
/// which holds at steady state by parity.
pub fn expectation(rho: &DensityMatrix, observable: Observable) -> Complex64 {
    let space = rho.space();
    match observable {
        Observable::A => rho.expect(&space.annihilation()),
        Observable::PhotonNumber => rho.expect(&(&space.creation() * &space.annihilation())),
        Observable::ASquared => {
            let a = space.annihilation();
            rho.expect(&(&a * &a))
        }
        Observable::SigmaMinus => rho.expect(&space.sigma_minus()),
        Observable::SigmaZ => rho.expect(&space.sigma_z()),
        Observable::SigmaPlusSigmaMinus => {
            rho.expect(&(&space.sigma_plus() * &space.sigma_minus()))
        }
        Observable::VariancePlus | Observable::VarianceMinus => {
            let n = expectation(rho, Observable::PhotonNumber);
            let a2 = expectation(rho, Observable::ASquared);
            let squeeze = a2.conj() + a2;
            let sign = if observable == Observable::VariancePlus {
                1.0
            } else {
                -1.0
            };
            Complex64::new(1.0, 0.0) + 2.0 * n + sign * squeeze
        }
    }
}

pub fn expectation_by_id(rho: &DensityMatrix, id: &str) -> Result<Complex64> {
    Ok(expectation(rho, id.parse()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::hilbert::HilbertSpace;

    #[test]
    fn vacuum_values() {
        let rho = DensityMatrix::pure(HilbertSpace::new(5).unwrap(), false, 0);
        assert_eq!(
            expectation(&rho, Observable::PhotonNumber),
            Complex64::new(0.0, 0.0)
        );
        assert_eq!(
            expectation(&rho, Observable::VariancePlus),
            Complex64::new(1.0, 0.0)
        );
        assert_eq!(
            expectation(&rho, Observable::VarianceMinus),
            Complex64::new(1.0, 0.0)
        );
        assert_eq!(
            expectation(&rho, Observable::SigmaZ),
            Complex64::new(-1.0, 0.0)
        );
    }

    #[test]
    fn fock_state_number() {
        let rho = DensityMatrix::pure(HilbertSpace::new(6).unwrap(), true, 3);
        assert!((expectation(&rho, Observable::PhotonNumber).re - 3.0).abs() < 1e-14);
        assert_eq!(expectation(&rho, Observable::SigmaPlusSigmaMinus).re, 1.0);
    }

    #[test]
    fn ids_round_trip() {
        for o in Observable::ALL {
            assert_eq!(o.id().parse::<Observable>().unwrap(), o);
        }
        assert_eq!(
            "photons".parse::<Observable>(),
            Err(Error::UnknownObservable("photons".into()))
        );
    }
}
