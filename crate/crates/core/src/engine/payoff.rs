use std::fmt;

use num_complex::Complex;

use super::density::DensityMatrix4;
use super::mixing::MixingProfile;
use super::operators::{MixingConvention, Operator4};
use super::state::SquaredAmplitudes;
use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

/// One player's payoffs over the basis LL, LH, HL, HH: the diagonal of
/// their payoff operator.
#[derive(Clone, Debug, PartialEq)]
pub struct PayoffVector<T>(pub [T; 4]);

impl<T: Scalar> PayoffVector<T> {
    pub fn new(values: [T; 4]) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| !v.finite()) {
            return Err(Error::NonFinitePayoff {
                location: format!("basis index {i}"),
            });
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[T; 4] {
        &self.0
    }

    pub fn min(&self) -> T {
        self.0.iter().skip(1).fold(self.0[0].clone(), |m, v| if *v < m { v.clone() } else { m })
    }

    pub fn max(&self) -> T {
        self.0.iter().skip(1).fold(self.0[0].clone(), |m, v| if *v > m { v.clone() } else { m })
    }

    pub fn dot(&self, weights: &[T; 4]) -> T {
        self.0
            .iter()
            .zip(weights)
            .fold(T::zero(), |acc, (v, w)| acc + v.clone() * w.clone())
    }
}

/// Diagonal operator `Σ_j g_j |j⟩⟨j|`.
pub fn payoff_operator<T: Real>(vec: &PayoffVector<T>) -> Operator4<T> {
    let mut m = Operator4::zeros();
    for (i, v) in vec.0.iter().enumerate() {
        m[(i, i)] = Complex::new(*v, T::zero());
    }
    m
}

/// `Tr(P ρ)` computed from the full matrix product. Fails when the trace has
/// an imaginary part above the algebraic tolerance.
pub fn expected_payoff_trace<T: Real>(vec: &PayoffVector<T>, rho: &DensityMatrix4<T>) -> Result<T> {
    let tr = (payoff_operator(vec) * rho.entries()).trace();
    if Scalar::magnitude(&tr.im) > T::algebraic_tolerance() {
        return Err(Error::ImaginaryResidue {
            residue: tr.im.as_f64(),
        });
    }
    Ok(tr.re)
}

/// Outcome-probability matrix: row `k` is the distribution over LL, LH, HL,
/// HH after the operator pair carried by the `k`-th mixing weight, in the
/// default convention.
pub fn omega_matrix<T: Scalar>(state: &SquaredAmplitudes<T>) -> [[T; 4]; 4] {
    omega_matrix_with(state, MixingConvention::default())
}

pub fn omega_matrix_with<T: Scalar>(
    state: &SquaredAmplitudes<T>,
    convention: MixingConvention,
) -> [[T; 4]; 4] {
    let probs = state.to_array();
    // Pairs are involutions, so outcome j is fed by basis state permute(j).
    convention
        .pairs()
        .map(|pair| [0, 1, 2, 3].map(|j| probs[pair.permute(j)].clone()))
}

/// Payoff `constant + coeff_p·p + coeff_q·q + coeff_pq·p·q`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedFormPayoff<T> {
    pub constant: T,
    pub coeff_p: T,
    pub coeff_q: T,
    pub coeff_pq: T,
}

impl<T: Scalar> ClosedFormPayoff<T> {
    pub fn zero() -> Self {
        Self {
            constant: T::zero(),
            coeff_p: T::zero(),
            coeff_q: T::zero(),
            coeff_pq: T::zero(),
        }
    }

    pub fn eval(&self, p: &T, q: &T) -> T {
        self.constant.clone()
            + self.coeff_p.clone() * p.clone()
            + self.coeff_q.clone() * q.clone()
            + self.coeff_pq.clone() * p.clone() * q.clone()
    }

    pub fn eval_at(&self, mix: &MixingProfile<T>) -> T {
        self.eval(mix.p(), mix.q())
    }

    /// `∂/∂p` at fixed `q`.
    pub fn slope_p(&self, q: &T) -> T {
        self.coeff_p.clone() + self.coeff_pq.clone() * q.clone()
    }

    /// `∂/∂q` at fixed `p`.
    pub fn slope_q(&self, p: &T) -> T {
        self.coeff_q.clone() + self.coeff_pq.clone() * p.clone()
    }

    pub fn is_constant(&self) -> bool {
        self.coeff_p.approx_zero() && self.coeff_q.approx_zero() && self.coeff_pq.approx_zero()
    }

    pub fn coefficients(&self) -> [T; 4] {
        [
            self.constant.clone(),
            self.coeff_p.clone(),
            self.coeff_q.clone(),
            self.coeff_pq.clone(),
        ]
    }
}

impl<T: Scalar> fmt::Display for ClosedFormPayoff<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + {}·p + {}·q + {}·pq",
            self.constant, self.coeff_p, self.coeff_q, self.coeff_pq
        )
    }
}

pub fn closed_form_payoff<T: Scalar>(
    state: &SquaredAmplitudes<T>,
    vec: &PayoffVector<T>,
) -> ClosedFormPayoff<T> {
    closed_form_payoff_with(state, vec, MixingConvention::default())
}

/// Expands `Φ(p, q)·Ω·gᵀ` into bilinear coefficients.
pub fn closed_form_payoff_with<T: Scalar>(
    state: &SquaredAmplitudes<T>,
    vec: &PayoffVector<T>,
    convention: MixingConvention,
) -> ClosedFormPayoff<T> {
    let [r_ii, r_ic, r_ci, r_cc] = omega_matrix_with(state, convention).map(|row| vec.dot(&row));
    // pq·r_ii + p(1−q)·r_ic + (1−p)q·r_ci + (1−p)(1−q)·r_cc
    ClosedFormPayoff {
        constant: r_cc.clone(),
        coeff_p: r_ic.clone() - r_cc.clone(),
        coeff_q: r_ci.clone() - r_cc.clone(),
        coeff_pq: r_ii - r_ic - r_ci + r_cc,
    }
}
