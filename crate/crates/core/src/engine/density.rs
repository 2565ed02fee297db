use nalgebra::Vector4;
use num_complex::Complex;

use super::mixing::MixingProfile;
use super::operators::{MixingConvention, Operator4};
use super::state::QuantumInitialState;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Deviations of a matrix from the density-matrix conditions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityDiagnostics<T> {
    /// `max |ρ − ρ†|` over entries.
    pub hermiticity_error: T,
    /// `|Tr ρ − 1|`, including any imaginary part of the trace.
    pub trace_error: T,
    pub min_eigenvalue: T,
}

impl<T: Real> DensityDiagnostics<T> {
    pub fn is_valid(&self) -> bool {
        self.hermiticity_error <= T::algebraic_tolerance()
            && self.trace_error <= T::algebraic_tolerance()
            && self.min_eigenvalue >= -T::eigenvalue_tolerance()
    }
}

/// 4×4 density matrix over the basis LL, LH, HL, HH.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix4<T: Real> {
    entries: Operator4<T>,
}

impl<T: Real> DensityMatrix4<T> {
    /// Validates Hermiticity, unit trace and positive semidefiniteness.
    pub fn from_matrix(entries: Operator4<T>) -> Result<Self> {
        let rho = Self { entries };
        let d = rho.diagnostics();
        if !d.is_valid() {
            return Err(Error::InvalidDensity(format!(
                "hermiticity error {}, trace error {}, min eigenvalue {}",
                d.hermiticity_error, d.trace_error, d.min_eigenvalue
            )));
        }
        Ok(rho)
    }

    #[cfg(test)]
    pub(crate) fn from_raw_unchecked(entries: Operator4<T>) -> Self {
        Self { entries }
    }

    /// Maximally mixed state `I/4`.
    pub fn maximally_mixed() -> Self {
        let quarter = Complex::new(T::from_ratio(1, 4), T::zero());
        Self {
            entries: Operator4::identity() * quarter,
        }
    }

    pub fn entries(&self) -> &Operator4<T> {
        &self.entries
    }

    /// Real parts of the diagonal: the outcome distribution over LL, LH, HL, HH.
    pub fn populations(&self) -> [T; 4] {
        [0, 1, 2, 3].map(|i| self.entries[(i, i)].re)
    }

    pub fn diagnostics(&self) -> DensityDiagnostics<T> {
        let m = &self.entries;
        let diff = m - m.adjoint();
        let hermiticity_error = diff.iter().fold(T::zero(), |acc, z| {
            let n = z.norm_sqr();
            let n = nalgebra::ComplexField::sqrt(n);
            if n > acc {
                n
            } else {
                acc
            }
        });
        let tr = m.trace() - Complex::new(T::one(), T::zero());
        let trace_error = nalgebra::ComplexField::sqrt(tr.norm_sqr());
        // Eigenvalues of the Hermitian part; the anti-Hermitian residue is
        // already reported above.
        let herm = (m + m.adjoint()) * Complex::new(T::from_ratio(1, 2), T::zero());
        let eig = herm.symmetric_eigenvalues();
        let min_eigenvalue = eig.iter().fold(eig[0], |acc, &e| if e < acc { e } else { acc });
        DensityDiagnostics {
            hermiticity_error,
            trace_error,
            min_eigenvalue,
        }
    }

    /// `U ρ U†`
    pub fn conjugated(&self, unitary: &Operator4<T>) -> Self {
        Self {
            entries: unitary * self.entries * unitary.adjoint(),
        }
    }
}

/// `|ψ⟩⟨ψ|`
pub fn initial_density<T: Real>(state: &QuantumInitialState<T>) -> DensityMatrix4<T> {
    let psi = Vector4::from_column_slice(state.amplitudes());
    DensityMatrix4 {
        entries: psi * psi.adjoint(),
    }
}

/// Density after both players mix identity and flip, using the default
/// [`MixingConvention::Crossed`].
pub fn final_density<T: Real>(
    state: &QuantumInitialState<T>,
    mix: &MixingProfile<T>,
) -> DensityMatrix4<T> {
    final_density_with(state, mix, MixingConvention::default())
}

/// Convex combination of the four operator-pair conjugations of the initial
/// density, weighted `[pq, p(1−q), (1−p)q, (1−p)(1−q)]`.
pub fn final_density_with<T: Real>(
    state: &QuantumInitialState<T>,
    mix: &MixingProfile<T>,
    convention: MixingConvention,
) -> DensityMatrix4<T> {
    let rho = initial_density(state);
    let weights = mix.weights();
    let mut entries = Operator4::zeros();
    for (w, pair) in weights.into_iter().zip(convention.pairs()) {
        if w == T::zero() {
            continue;
        }
        let term = rho.conjugated(&pair.matrix());
        entries += term.entries * Complex::new(w, T::zero());
    }
    DensityMatrix4 { entries }
}
