//! Truncated atom ⊗ Fock space and the operators acting on it.
//!
//! Basis ordering: index = atom · N + n, with atom 0 the lower level |b⟩
//! and atom 1 the upper level |a⟩.

use faer::Mat;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Operator = Mat<Complex64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HilbertSpace {
    fock_cutoff: usize,
}

impl HilbertSpace {
    pub fn new(fock_cutoff: usize) -> Result<Self> {
        if fock_cutoff < 2 {
            return Err(Error::InvalidCutoff(fock_cutoff));
        }
        Ok(Self { fock_cutoff })
    }

    /// Number of photon states kept (0..N−1).
    pub fn fock_cutoff(&self) -> usize {
        self.fock_cutoff
    }

    pub fn dim(&self) -> usize {
        2 * self.fock_cutoff
    }

    pub fn index(&self, excited: bool, photons: usize) -> usize {
        usize::from(excited) * self.fock_cutoff + photons
    }

    pub fn identity(&self) -> Operator {
        Mat::identity(self.dim(), self.dim())
    }

    /// Field annihilation operator a.
    pub fn annihilation(&self) -> Operator {
        let n = self.fock_cutoff;
        let mut a = Mat::zeros(self.dim(), self.dim());
        for atom in [false, true] {
            for k in 1..n {
                a[(self.index(atom, k - 1), self.index(atom, k))] =
                    Complex64::new((k as f64).sqrt(), 0.0);
            }
        }
        a
    }

    pub fn creation(&self) -> Operator {
        dagger(&self.annihilation())
    }

    /// Atomic lowering operator σ₋ = |b⟩⟨a|.
    pub fn sigma_minus(&self) -> Operator {
        let mut s = Mat::zeros(self.dim(), self.dim());
        for k in 0..self.fock_cutoff {
            s[(self.index(false, k), self.index(true, k))] = Complex64::new(1.0, 0.0);
        }
        s
    }

    pub fn sigma_plus(&self) -> Operator {
        dagger(&self.sigma_minus())
    }

    /// σ_z = |a⟩⟨a| − |b⟩⟨b|.
    pub fn sigma_z(&self) -> Operator {
        let mut s = Mat::zeros(self.dim(), self.dim());
        for k in 0..self.fock_cutoff {
            s[(self.index(true, k), self.index(true, k))] = Complex64::new(1.0, 0.0);
            s[(self.index(false, k), self.index(false, k))] = Complex64::new(-1.0, 0.0);
        }
        s
    }

    /// H = (iε/2)(a†² − a²) + ig(σ₊a − a†σ₋), in units of κ.
    pub fn hamiltonian(&self, epsilon: f64, coupling: f64) -> Operator {
        let a = self.annihilation();
        let ad = self.creation();
        let sm = self.sigma_minus();
        let sp = self.sigma_plus();
        let pump = &ad * &ad - &a * &a;
        let exchange = &sp * &a - &ad * &sm;
        let i = Complex64::new(0.0, 1.0);
        Mat::from_fn(self.dim(), self.dim(), |r, c| {
            i * (0.5 * epsilon * pump[(r, c)] + coupling * exchange[(r, c)])
        })
    }
}

pub fn dagger(op: &Operator) -> Operator {
    Mat::from_fn(op.ncols(), op.nrows(), |r, c| op[(c, r)].conj())
}

/// Non-zero entries `(row, col, value)` of a dense operator.
pub(crate) fn nonzeros(op: &Operator) -> Vec<(usize, usize, Complex64)> {
    let mut out = Vec::new();
    for c in 0..op.ncols() {
        for r in 0..op.nrows() {
            let v = op[(r, c)];
            if v != Complex64::new(0.0, 0.0) {
                out.push((r, c, v));
            }
        }
    }
    out
}
