//! Problem instances: parameters, state vectors and the rank-2 Hamiltonian
//!
//!   H  =  E |w><w|  +  E' |s><s|
//!
//! where |w> is the unknown marked state and |s> the prepared initial state.
//! In the restricted version |w> is a computational basis state and |s> the
//! uniform superposition, giving overlap x = <w|s> = 1/sqrt(N).

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest dimension for which the dense N x N Hamiltonian may be built.
/// The dense form exists for validation, not scale; beyond the cap the
/// closed form and the two-level propagator are the only paths.
pub const DENSE_DIM_CAP: usize = 4096;

/// Norm / hermiticity tolerance enforced at construction time.
pub const CONSTRUCTION_TOL: f64 = 1e-12;

/// Physical instance of the search problem.
///
/// Holds the oracle energy E > 0, the driving energy E', the Hilbert-space
/// dimension N >= 2 and the overlap x = <w|s> in [0, 1] (made real and
/// non-negative by a phase choice). The mistuning ratio epsilon = E'/E is
/// derived once at construction and stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchParams {
    oracle_energy: f64,
    driving_energy: f64,
    dim: usize,
    overlap: f64,
    epsilon: f64,
}

impl SearchParams {
    /// Validated constructor. `overlap` defaults to 1/sqrt(N), the value of
    /// the restricted version, when not given. A negative driving energy is
    /// rejected here; see [`SearchParams::new_signed`].
    pub fn new(
        oracle_energy: f64,
        driving_energy: f64,
        dim: usize,
        overlap: Option<f64>,
    ) -> Result<Self> {
        if driving_energy < 0.0 {
            return Err(Error::NegativeDrivingEnergy(driving_energy));
        }
        Self::new_signed(oracle_energy, driving_energy, dim, overlap)
    }

    /// Like [`SearchParams::new`] but admits a negative driving energy
    /// (epsilon < 0). The oscillation frequency stays real for any real
    /// epsilon; the mixing-angle routines in [`crate::closed_form`] refuse
    /// such instances while the propagators handle them.
    pub fn new_signed(
        oracle_energy: f64,
        driving_energy: f64,
        dim: usize,
        overlap: Option<f64>,
    ) -> Result<Self> {
        if !oracle_energy.is_finite() || oracle_energy <= 0.0 {
            return Err(Error::NonPositiveEnergy(oracle_energy));
        }
        if !driving_energy.is_finite() {
            return Err(Error::NonFiniteEnergy(driving_energy));
        }
        if dim < 2 {
            return Err(Error::DimensionTooSmall { got: dim, need: 2 });
        }
        let overlap = match overlap {
            Some(x) => {
                if !(0.0..=1.0).contains(&x) {
                    return Err(Error::OverlapOutOfRange(x));
                }
                x
            }
            None => 1.0 / (dim as f64).sqrt(),
        };
        Ok(Self {
            oracle_energy,
            driving_energy,
            dim,
            overlap,
            epsilon: driving_energy / oracle_energy,
        })
    }

    /// Oracle energy E.
    pub fn oracle_energy(&self) -> f64 {
        self.oracle_energy
    }

    /// Driving energy E'.
    pub fn driving_energy(&self) -> f64 {
        self.driving_energy
    }

    /// Hilbert-space dimension N.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Overlap x = <w|s>, real and non-negative.
    pub fn overlap(&self) -> f64 {
        self.overlap
    }

    /// Mistuning ratio epsilon = E'/E.
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Same E, N and x with the driving energy set to `epsilon * E`.
    /// Used by the sweep drivers to walk an epsilon grid.
    pub fn with_epsilon(&self, epsilon: f64) -> Result<Self> {
        Self::new_signed(
            self.oracle_energy,
            epsilon * self.oracle_energy,
            self.dim,
            Some(self.overlap),
        )
    }
}

/// Unit-norm complex vector; houses |w>, |s> and |psi(t)>.
///
/// The norm is validated to 1 within [`CONSTRUCTION_TOL`] at construction;
/// values are immutable afterwards.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Wrap amplitudes that are already unit norm (within tolerance).
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::DimensionTooSmall { got: 0, need: 1 });
        }
        let norm = norm_of(&amplitudes);
        if !norm.is_finite() || (norm - 1.0).abs() > CONSTRUCTION_TOL {
            return Err(Error::NotUnitNorm(norm));
        }
        Ok(Self { amplitudes })
    }

    /// Normalize arbitrary amplitudes to unit norm.
    pub fn from_unnormalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::DimensionTooSmall { got: 0, need: 1 });
        }
        let norm = norm_of(&amplitudes);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroVector);
        }
        for a in &mut amplitudes {
            *a /= norm;
        }
        Ok(Self { amplitudes })
    }

    /// Standard basis vector e_index.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionTooSmall { got: 0, need: 1 });
        }
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, dim });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes })
    }

    /// Uniform superposition with every amplitude 1/sqrt(N).
    pub fn uniform(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionTooSmall { got: 0, need: 1 });
        }
        let a = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        Ok(Self {
            amplitudes: vec![a; dim],
        })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Euclidean norm; 1 within tolerance by construction.
    pub fn norm(&self) -> f64 {
        norm_of(&self.amplitudes)
    }

    /// Inner product <self|other> (conjugation on `self`).
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(inner_slices(&self.amplitudes, &other.amplitudes))
    }
}

pub(crate) fn inner_slices(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter()
        .zip(b.iter())
        .map(|(ai, bi)| ai.conj() * bi)
        .sum()
}

pub(crate) fn norm_of(v: &[Complex64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// Marked basis state and uniform initial state of the restricted version.
///
/// Returns (|w>, |s>) with w the standard basis vector at `w_index` and s
/// the uniform superposition, so <w|s> = 1/sqrt(N), real and positive.
pub fn build_restricted_instance(
    params: &SearchParams,
    w_index: usize,
) -> Result<(StateVector, StateVector)> {
    let w = StateVector::basis(params.dim(), w_index)?;
    let s = StateVector::uniform(params.dim())?;
    Ok((w, s))
}

/// Rotate the global phase of `s` so that <w|s> becomes real and
/// non-negative, and return that overlap together with the adjusted state.
///
/// If <w|s> is exactly zero, `s` is returned unchanged and x = 0. A state
/// whose overlap is already exactly real and non-negative is also returned
/// unchanged, so the common gauged case is a bit-exact fixed point; a fresh
/// rotation leaves at most an ulp-level imaginary residue.
pub fn overlap_phase_fix(w: &StateVector, s: &StateVector) -> Result<(f64, StateVector)> {
    let ip = w.inner(s)?;
    if ip.im == 0.0 && ip.re >= 0.0 {
        return Ok((ip.re, s.clone()));
    }
    let x = ip.norm();
    let phase = ip.conj() / x;
    let adjusted: Vec<Complex64> = s.amplitudes().iter().map(|a| a * phase).collect();
    Ok((x, StateVector { amplitudes: adjusted }))
}

/// Dense N x N Hermitian matrix H = E |w><w| + E' |s><s|.
///
/// Rank <= 2 by construction: any vector orthogonal to both |w> and |s> is
/// annihilated. Stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianDense {
    entries: Vec<Complex64>,
    dim: usize,
}

impl HamiltonianDense {
    /// Build the dense Hamiltonian from the projectors onto `w` and `s`.
    pub fn build(params: &SearchParams, w: &StateVector, s: &StateVector) -> Result<Self> {
        let n = params.dim();
        if w.dim() != n {
            return Err(Error::DimensionMismatch { left: w.dim(), right: n });
        }
        if s.dim() != n {
            return Err(Error::DimensionMismatch { left: s.dim(), right: n });
        }
        if n > DENSE_DIM_CAP {
            return Err(Error::DenseCapExceeded { dim: n, cap: DENSE_DIM_CAP });
        }
        let e = params.oracle_energy();
        let ep = params.driving_energy();
        let wa = w.amplitudes();
        let sa = s.amplitudes();
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = e * wa[i] * wa[j].conj() + ep * sa[i] * sa[j].conj();
            }
        }
        Ok(Self { entries, dim: n })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Sum of the diagonal; equals E + E' for the projector sum.
    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.entry(i, i)).sum()
    }

    /// Largest |H_ij - conj(H_ji)| over all pairs.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let d = (self.entry(i, j) - self.entry(j, i).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Matrix-vector product H v.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        self.apply_into(v, &mut out);
        out
    }

    /// Matrix-vector product into a caller-provided buffer.
    pub fn apply_into(&self, v: &[Complex64], out: &mut [Complex64]) {
        debug_assert_eq!(v.len(), self.dim);
        debug_assert_eq!(out.len(), self.dim);
        for (i, row) in self.entries.chunks_exact(self.dim).enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (h, x) in row.iter().zip(v.iter()) {
                acc += h * x;
            }
            out[i] = acc;
        }
    }
}
