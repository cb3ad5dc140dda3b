//! Vectorized master equation
//!
//! ```text
//! dρ/dt = −i[H, ρ] + κ(aρa† − ½{a†a, ρ})
//! ```
//!
//! using column stacking: ρ_ij lives at index i + j·d.

use faer::sparse::{SparseColMat, Triplet};
use num_complex::Complex64;

use crate::analytic::moments::mean_photon_cavity;
use crate::error::{Error, Result};
use crate::oracle::hilbert::{dagger, nonzeros, HilbertSpace, Operator};
use crate::params::SystemParams;

/// Minimum Fock cutoff for a state with `mean_photons` photons on average.
pub fn required_cutoff(mean_photons: f64) -> usize {
    (10.0 + 20.0 * mean_photons).ceil() as usize
}

/// Sparse superoperator in compressed-row form, time unit 1/κ.
#[derive(Debug, Clone)]
pub struct Liouvillian {
    space: HilbertSpace,
    params: SystemParams,
    coupling: f64,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<Complex64>,
}

impl Liouvillian {
    pub fn space(&self) -> HilbertSpace {
        self.space
    }

    pub fn params(&self) -> SystemParams {
        self.params
    }

    /// g/κ used in the Hamiltonian.
    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    /// Side length of the superoperator, (2N)².
    pub fn size(&self) -> usize {
        self.row_ptr.len() - 1
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// Index of ρ_ij in the vectorized state.
    pub fn vec_index(&self, i: usize, j: usize) -> usize {
        i + j * self.space.dim()
    }

    pub fn apply(&self, x: &[Complex64], y: &mut [Complex64]) {
        for (row, out) in y.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in self.row_ptr[row]..self.row_ptr[row + 1] {
                acc += self.vals[k] * x[self.cols[k]];
            }
            *out = acc;
        }
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (0..self.size()).flat_map(move |row| {
            (self.row_ptr[row]..self.row_ptr[row + 1])
                .map(move |k| (row, self.cols[k], self.vals[k]))
        })
    }

    /// `shift·I + scale·L` as a faer matrix, optionally with one row
    /// replaced.
    pub(crate) fn shifted(
        &self,
        shift: Complex64,
        scale: Complex64,
        replace_row: Option<(usize, &[(usize, Complex64)])>,
    ) -> Result<SparseColMat<usize, Complex64>> {
        let n = self.size();
        let skip = replace_row.map(|(r, _)| r);
        let mut trip: Vec<Triplet<usize, usize, Complex64>> = Vec::with_capacity(self.nnz() + n);
        for (r, c, v) in self.triplets() {
            if Some(r) != skip {
                trip.push(Triplet::new(r, c, scale * v));
            }
        }
        if shift != Complex64::new(0.0, 0.0) {
            for i in 0..n {
                if Some(i) != skip {
                    trip.push(Triplet::new(i, i, shift));
                }
            }
        }
        if let Some((r, entries)) = replace_row {
            for &(c, v) in entries {
                trip.push(Triplet::new(r, c, v));
            }
        }
        SparseColMat::try_new_from_triplets(n, n, &trip)
            .map_err(|e| Error::Solver(format!("{e:?}")))
    }

    /// Indices of the diagonal elements ρ_ii in the vectorized state.
    pub fn trace_indices(&self) -> Vec<usize> {
        (0..self.space.dim())
            .map(|i| self.vec_index(i, i))
            .collect()
    }

    /// Largest |Σ_i L[(ii), c]| over columns c; zero for a trace-preserving
    /// generator.
    pub fn trace_residual(&self) -> f64 {
        let d = self.space.dim();
        let mut col_sums = vec![Complex64::new(0.0, 0.0); self.size()];
        for (r, c, v) in self.triplets() {
            if r % (d + 1) == 0 {
                col_sums[c] += v;
            }
        }
        col_sums.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Builds the Liouvillian without checking the cutoff against the expected
/// photon number.
pub fn build_liouvillian_unchecked(params: &SystemParams, space: HilbertSpace) -> Liouvillian {
    let coupling = params.coupling_over_kappa();
    let ham = space.hamiltonian(params.epsilon_over_kappa(), coupling);
    let a = space.annihilation();
    let ad = dagger(&a);
    let number = &ad * &a;
    let d = space.dim();
    let idx = |i: usize, j: usize| i + j * d;

    let minus_i = Complex64::new(0.0, -1.0);
    let half = Complex64::new(-0.5, 0.0);
    let mut entries: Vec<(usize, usize, Complex64)> = Vec::new();

    // Left multiplication X → c·A·X.
    let left = |op: &Operator, c: Complex64, out: &mut Vec<_>| {
        for (k, i, v) in nonzeros(op) {
            for j in 0..d {
                out.push((idx(k, j), idx(i, j), c * v));
            }
        }
    };
    left(&ham, minus_i, &mut entries);
    left(&number, half, &mut entries);

    // Right multiplication X → c·X·B.
    let right = |op: &Operator, c: Complex64, out: &mut Vec<_>| {
        for (j, l, v) in nonzeros(op) {
            for i in 0..d {
                out.push((idx(i, l), idx(i, j), c * v));
            }
        }
    };
    right(&ham, -minus_i, &mut entries);
    right(&number, half, &mut entries);

    // Jump term a X a†.
    let a_nz = nonzeros(&a);
    let ad_nz = nonzeros(&ad);
    for &(k, i, va) in &a_nz {
        for &(j, l, vd) in &ad_nz {
            entries.push((idx(k, l), idx(i, j), va * vd));
        }
    }

    entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
    let n = d * d;
    let mut row_ptr = vec![0usize; n + 1];
    let mut cols = Vec::with_capacity(entries.len());
    let mut vals: Vec<Complex64> = Vec::with_capacity(entries.len());
    let mut last: Option<(usize, usize)> = None;
    for (r, c, v) in entries {
        if last == Some((r, c)) {
            *vals.last_mut().unwrap() += v;
        } else {
            cols.push(c);
            vals.push(v);
            row_ptr[r + 1] += 1;
            last = Some((r, c));
        }
    }
    for r in 0..n {
        row_ptr[r + 1] += row_ptr[r];
    }

    Liouvillian {
        space,
        params: *params,
        coupling,
        row_ptr,
        cols,
        vals,
    }
}

/// Builds the Liouvillian, refusing cutoffs below `10 + 20·n̄` where n̄ is
/// the closed-form cavity photon number.
pub fn build_liouvillian(params: &SystemParams, space: HilbertSpace) -> Result<Liouvillian> {
    let mean_photons = mean_photon_cavity(params);
    let required = required_cutoff(mean_photons);
    if space.fock_cutoff() < required {
        return Err(Error::CutoffTooSmall {
            cutoff: space.fock_cutoff(),
            required,
            mean_photons,
        });
    }
    Ok(build_liouvillian_unchecked(params, space))
}
