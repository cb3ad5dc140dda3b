use faer::linalg::solvers::Solve;
use faer::{Mat, Side};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::oracle::hilbert::{HilbertSpace, Operator};
use crate::oracle::liouvillian::{build_liouvillian_unchecked, Liouvillian};
use crate::params::SystemParams;

/// Residual ‖L(ρ)‖∞ accepted from the direct solve.
pub const STEADY_STATE_RESIDUAL: f64 = 1e-9;
/// Stopping criterion ‖dρ/dt‖∞ for the time-marching fallback.
pub const MARCHING_RESIDUAL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct DensityMatrix {
    space: HilbertSpace,
    matrix: Mat<Complex64>,
}

impl DensityMatrix {
    pub fn from_matrix(space: HilbertSpace, matrix: Mat<Complex64>) -> Self {
        assert_eq!(matrix.nrows(), space.dim());
        assert_eq!(matrix.ncols(), space.dim());
        Self { space, matrix }
    }

    /// From a column-stacked vector.
    pub fn from_vec(space: HilbertSpace, v: &[Complex64]) -> Self {
        let d = space.dim();
        Self::from_matrix(space, Mat::from_fn(d, d, |i, j| v[i + j * d]))
    }

    /// |excited/ground⟩ ⊗ |photons⟩ as a pure state.
    pub fn pure(space: HilbertSpace, excited: bool, photons: usize) -> Self {
        let d = space.dim();
        let k = space.index(excited, photons);
        Self::from_matrix(
            space,
            Mat::from_fn(d, d, |i, j| {
                if i == k && j == k {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }),
        )
    }

    pub fn space(&self) -> HilbertSpace {
        self.space
    }

    pub fn matrix(&self) -> &Mat<Complex64> {
        &self.matrix
    }

    pub fn to_vec(&self) -> Vec<Complex64> {
        let d = self.space.dim();
        (0..d * d).map(|k| self.matrix[(k % d, k / d)]).collect()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.space.dim()).map(|i| self.matrix[(i, i)]).sum()
    }

    /// tr(O ρ).
    pub fn expect(&self, op: &Operator) -> Complex64 {
        let d = self.space.dim();
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..d {
            for j in 0..d {
                acc += op[(j, i)] * self.matrix[(i, j)];
            }
        }
        acc
    }

    pub fn hermiticity_error(&self) -> f64 {
        let d = self.space.dim();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..=i {
                worst = worst.max((self.matrix[(i, j)] - self.matrix[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        let eig = self
            .matrix
            .self_adjoint_eigenvalues(Side::Lower)
            .map_err(|e| Error::Solver(format!("{e:?}")))?;
        Ok(eig.into_iter().fold(f64::INFINITY, f64::min))
    }

    /// Photon-number distribution with the atom traced out.
    pub fn fock_populations(&self) -> Vec<f64> {
        let n = self.space.fock_cutoff();
        (0..n)
            .map(|k| {
                let g = self.space.index(false, k);
                let e = self.space.index(true, k);
                self.matrix[(g, g)].re + self.matrix[(e, e)].re
            })
            .collect()
    }

    /// Population in the two highest retained Fock levels.
    pub fn top_population(&self) -> f64 {
        let pops = self.fock_populations();
        pops[pops.len() - 2..].iter().sum()
    }

    /// Truncation is considered adequate when the top two Fock levels hold
    /// less than 1e−8 of the population.
    pub fn truncation_adequate(&self) -> bool {
        self.top_population() < 1e-8
    }

    /// Hermitian to 1e−12, unit trace to 1e−10, eigenvalues ≥ −1e−10.
    pub fn check_invariants(&self) -> Result<()> {
        let herm = self.hermiticity_error();
        if herm > 1e-12 {
            return Err(Error::Solver(format!(
                "density matrix not Hermitian ({herm:e})"
            )));
        }
        let tr = self.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > 1e-10 {
            return Err(Error::Solver(format!("density matrix trace {tr}")));
        }
        let min = self.min_eigenvalue()?;
        if min < -1e-10 {
            return Err(Error::Solver(format!("negative eigenvalue {min:e}")));
        }
        Ok(())
    }
}

fn max_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn residual(l: &Liouvillian, x: &[Complex64]) -> f64 {
    let mut y = vec![Complex64::new(0.0, 0.0); x.len()];
    l.apply(x, &mut y);
    max_norm(&y)
}

fn hermitize(space: HilbertSpace, x: &[Complex64]) -> DensityMatrix {
    let d = space.dim();
    let m = Mat::from_fn(d, d, |i, j| 0.5 * (x[i + j * d] + x[j + i * d].conj()));
    DensityMatrix::from_matrix(space, m)
}

/// Steady state of the master equation.
///
/// Solves L(ρ) = 0 with the equation for ρ₀₀ replaced by tr ρ = 1. If that
/// leaves a residual above [`STEADY_STATE_RESIDUAL`], falls back to implicit
/// time marching. A singular constrained system means the stationary state is
/// not unique and is reported as [`Error::DegenerateNullSpace`].
///
/// With zero coupling the atom is frozen and every atomic state is
/// stationary; the returned state is then the γ_c → 0⁺ limit, the cavity
/// steady state with the atom in its lower level.
pub fn steady_state(l: &Liouvillian) -> Result<DensityMatrix> {
    if l.coupling() == 0.0 {
        return decoupled_steady_state(l);
    }
    let n = l.size();
    let trace_row: Vec<(usize, Complex64)> = l
        .trace_indices()
        .into_iter()
        .map(|i| (i, Complex64::new(1.0, 0.0)))
        .collect();
    let constrained = l.shifted(
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        Some((0, &trace_row)),
    )?;
    let lu = constrained
        .sp_lu()
        .map_err(|_| Error::DegenerateNullSpace)?;
    let mut rhs = Mat::<Complex64>::zeros(n, 1);
    rhs[(0, 0)] = Complex64::new(1.0, 0.0);
    let sol = lu.solve(&rhs);
    let x: Vec<Complex64> = (0..n).map(|i| sol[(i, 0)]).collect();
    if x.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::DegenerateNullSpace);
    }
    if residual(l, &x) < STEADY_STATE_RESIDUAL {
        return Ok(hermitize(l.space(), &x));
    }
    march_to_steady_state(l, &x)
}

/// Inverse iteration with backward-Euler steps (I − hL)ρ' = ρ.
fn march_to_steady_state(l: &Liouvillian, start: &[Complex64]) -> Result<DensityMatrix> {
    let n = l.size();
    let step = 1e4;
    let op = l.shifted(Complex64::new(1.0, 0.0), Complex64::new(-step, 0.0), None)?;
    let lu = op.sp_lu().map_err(|e| Error::Solver(format!("{e:?}")))?;
    let trace_idx = l.trace_indices();
    let mut x = start.to_vec();
    let mut last = f64::INFINITY;
    for _ in 0..200 {
        let rhs = Mat::from_fn(n, 1, |i, _| x[i]);
        let sol = lu.solve(&rhs);
        let tr: Complex64 = trace_idx.iter().map(|&i| sol[(i, 0)]).sum();
        if tr.norm() == 0.0 || !tr.re.is_finite() {
            break;
        }
        x = (0..n).map(|i| sol[(i, 0)] / tr).collect();
        last = residual(l, &x);
        if last < MARCHING_RESIDUAL {
            return Ok(hermitize(l.space(), &x));
        }
    }
    Err(Error::NotConverged { residual: last })
}

fn decoupled_steady_state(l: &Liouvillian) -> Result<DensityMatrix> {
    // Solve the field-only problem on a space with the atom pinned low:
    // the ground-state block of L is closed when g = 0.
    let space = l.space();
    let n_fock = space.fock_cutoff();
    let d = space.dim();
    let block = |i: usize, j: usize| i + j * d;
    let in_block = |k: usize| (k % d) < n_fock && (k / d) < n_fock;
    let map = |k: usize| (k % d) + (k / d) * n_fock;
    let m = n_fock * n_fock;

    let mut trip = Vec::new();
    for (r, c, v) in l.triplets() {
        if in_block(r) && in_block(c) && map(r) != 0 {
            trip.push(faer::sparse::Triplet::new(map(r), map(c), v));
        }
    }
    for i in 0..n_fock {
        trip.push(faer::sparse::Triplet::new(
            0,
            i + i * n_fock,
            Complex64::new(1.0, 0.0),
        ));
    }
    let mat = faer::sparse::SparseColMat::<usize, Complex64>::try_new_from_triplets(m, m, &trip)
        .map_err(|e| Error::Solver(format!("{e:?}")))?;
    let lu = mat.sp_lu().map_err(|_| Error::DegenerateNullSpace)?;
    let mut rhs = Mat::<Complex64>::zeros(m, 1);
    rhs[(0, 0)] = Complex64::new(1.0, 0.0);
    let sol = lu.solve(&rhs);

    let mut x = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..n_fock {
        for j in 0..n_fock {
            x[block(i, j)] = sol[(i + j * n_fock, 0)];
        }
    }
    if x.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::DegenerateNullSpace);
    }
    let res = residual(l, &x);
    if res > STEADY_STATE_RESIDUAL {
        return Err(Error::NotConverged { residual: res });
    }
    Ok(hermitize(space, &x))
}

/// Convenience: Liouvillian and steady state for `params` on `space`,
/// without the cutoff rule.
pub fn steady_state_for(
    params: &SystemParams,
    space: HilbertSpace,
) -> Result<(Liouvillian, DensityMatrix)> {
    let l = build_liouvillian_unchecked(params, space);
    let rho = steady_state(&l)?;
    Ok((l, rho))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::liouvillian::build_liouvillian;

    #[test]
    fn bare_damped_cavity_relaxes_to_vacuum() {
        let p = SystemParams::new(0.0, 0.0).unwrap();
        let (_, rho) = steady_state_for(&p, HilbertSpace::new(10).unwrap()).unwrap();
        let vac = DensityMatrix::pure(rho.space(), false, 0);
        let d = rho.space().dim();
        for i in 0..d {
            for j in 0..d {
                assert!((rho.matrix()[(i, j)] - vac.matrix()[(i, j)]).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn coupled_state_satisfies_invariants() {
        let p = SystemParams::new(0.25, 0.01).unwrap();
        let l = build_liouvillian(&p, HilbertSpace::new(20).unwrap()).unwrap();
        let rho = steady_state(&l).unwrap();
        rho.check_invariants().unwrap();
        assert!(rho.min_eigenvalue().unwrap() > -1e-9);
        assert!(rho.truncation_adequate());
        assert!(residual(&l, &rho.to_vec()) < STEADY_STATE_RESIDUAL);
    }

    #[test]
    fn marching_fallback_agrees_with_direct_solve() {
        let p = SystemParams::new(0.2, 0.02).unwrap();
        let l = build_liouvillian(&p, HilbertSpace::new(16).unwrap()).unwrap();
        let direct = steady_state(&l).unwrap();
        let start = DensityMatrix::pure(l.space(), false, 0).to_vec();
        let marched = march_to_steady_state(&l, &start).unwrap();
        let d = l.space().dim();
        for i in 0..d {
            for j in 0..d {
                assert!((direct.matrix()[(i, j)] - marched.matrix()[(i, j)]).norm() < 1e-8);
            }
        }
    }
}
