use std::fmt;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

/// Squared magnitudes of the initial state over the basis LL, LH, HL, HH.
///
/// Field names follow the usual amplitude naming: `α` on LL, `γ` on LH, `δ`
/// on HL and `β` on HH. Every payoff in the quantized game depends on the
/// state only through these four numbers.
#[derive(Clone, Debug, PartialEq)]
pub struct SquaredAmplitudes<T> {
    alpha_sq: T,
    gamma_sq: T,
    delta_sq: T,
    beta_sq: T,
}

impl<T: Scalar> SquaredAmplitudes<T> {
    /// Arguments in basis order: LL (`α²`), LH (`γ²`), HL (`δ²`), HH (`β²`).
    pub fn new(alpha_sq: T, gamma_sq: T, delta_sq: T, beta_sq: T) -> Result<Self> {
        let names = ["alpha_sq", "gamma_sq", "delta_sq", "beta_sq"];
        for (name, v) in names.iter().zip([&alpha_sq, &gamma_sq, &delta_sq, &beta_sq]) {
            if !v.finite() || *v < T::zero() || *v > T::one() {
                return Err(Error::OutOfUnitInterval {
                    name,
                    value: v.as_f64(),
                });
            }
        }
        let sum = alpha_sq.clone() + gamma_sq.clone() + delta_sq.clone() + beta_sq.clone();
        if (sum.clone() - T::one()).magnitude() > T::normalization_tolerance() {
            return Err(Error::NotNormalized { sum: sum.as_f64() });
        }
        Ok(Self {
            alpha_sq,
            gamma_sq,
            delta_sq,
            beta_sq,
        })
    }

    /// Superposition of the two "correct expectation" outcomes LL and HH.
    pub fn diagonal(beta_sq: T) -> Result<Self> {
        check_unit("beta_sq", &beta_sq)?;
        Self::new(T::one() - beta_sq.clone(), T::zero(), T::zero(), beta_sq)
    }

    /// Superposition of the two "false expectation" outcomes LH and HL.
    pub fn anti_diagonal(gamma_sq: T) -> Result<Self> {
        check_unit("gamma_sq", &gamma_sq)?;
        Self::new(T::zero(), gamma_sq.clone(), T::one() - gamma_sq, T::zero())
    }

    pub fn alpha_sq(&self) -> &T {
        &self.alpha_sq
    }

    pub fn gamma_sq(&self) -> &T {
        &self.gamma_sq
    }

    pub fn delta_sq(&self) -> &T {
        &self.delta_sq
    }

    pub fn beta_sq(&self) -> &T {
        &self.beta_sq
    }

    /// Basis order LL, LH, HL, HH.
    pub fn to_array(&self) -> [T; 4] {
        [
            self.alpha_sq.clone(),
            self.gamma_sq.clone(),
            self.delta_sq.clone(),
            self.beta_sq.clone(),
        ]
    }
}

fn check_unit<T: Scalar>(name: &'static str, v: &T) -> Result<()> {
    if !v.finite() || *v < T::zero() || *v > T::one() {
        Err(Error::OutOfUnitInterval {
            name,
            value: v.as_f64(),
        })
    } else {
        Ok(())
    }
}

impl<T: Scalar> fmt::Display for SquaredAmplitudes<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "α²={} γ²={} δ²={} β²={}",
            self.alpha_sq, self.gamma_sq, self.delta_sq, self.beta_sq
        )
    }
}

/// Normalized two-qubit state `α|LL⟩ + γ|LH⟩ + δ|HL⟩ + β|HH⟩`. The first
/// qubit belongs to the row player.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumInitialState<T> {
    amps: [Complex<T>; 4],
}

impl<T: Real> QuantumInitialState<T> {
    /// Rejects amplitudes whose squared norm is not one.
    pub fn new(amps: [Complex<T>; 4]) -> Result<Self> {
        let norm_sq = norm_sq(&amps);
        if !Scalar::finite(&norm_sq)
            || Scalar::magnitude(&(norm_sq - T::one())) > T::algebraic_tolerance()
        {
            return Err(Error::NotNormalized {
                sum: norm_sq.as_f64(),
            });
        }
        Ok(Self { amps })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(amps: [Complex<T>; 4]) -> Result<Self> {
        let norm_sq = norm_sq(&amps);
        if !Scalar::finite(&norm_sq) {
            return Err(Error::NotNormalized {
                sum: norm_sq.as_f64(),
            });
        }
        if norm_sq <= T::zero() {
            return Err(Error::ZeroState);
        }
        let norm = nalgebra::ComplexField::sqrt(norm_sq);
        Ok(Self {
            amps: amps.map(|a| a / norm),
        })
    }

    pub fn from_real(amps: [T; 4]) -> Result<Self> {
        Self::new(amps.map(|a| Complex::new(a, T::zero())))
    }

    /// Nonnegative real amplitudes with the given squared magnitudes.
    pub fn from_squared(sq: &SquaredAmplitudes<T>) -> Self {
        let amps = sq
            .to_array()
            .map(|s| Complex::new(nalgebra::ComplexField::sqrt(s), T::zero()));
        Self { amps }
    }

    /// Basis state LL, LH, HL or HH by index 0..4.
    pub fn basis(index: usize) -> Self {
        let mut amps = [Complex::new(T::zero(), T::zero()); 4];
        amps[index] = Complex::new(T::one(), T::zero());
        Self { amps }
    }

    pub fn amplitudes(&self) -> &[Complex<T>; 4] {
        &self.amps
    }

    pub fn squared(&self) -> SquaredAmplitudes<T> {
        let total = norm_sq(&self.amps);
        let [a, g, d, b] = self.amps.map(|c| c.norm_sqr() / total);
        SquaredAmplitudes::new(a, g, d, b).expect("normalized state")
    }

    /// Multiplies each amplitude by `exp(i·phase)`.
    pub fn with_phases(&self, phases: [T; 4]) -> Self {
        let mut amps = self.amps;
        for (a, ph) in amps.iter_mut().zip(phases) {
            let rot = Complex::new(nalgebra::ComplexField::cos(ph), nalgebra::ComplexField::sin(ph));
            *a *= rot;
        }
        Self { amps }
    }
}

fn norm_sq<T: Real>(amps: &[Complex<T>; 4]) -> T {
    amps.iter().fold(T::zero(), |acc, a| acc + a.norm_sqr())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    #[test]
    fn squared_validation() {
        assert!(SquaredAmplitudes::new(0.5, 0.0, 0.0, 0.5).is_ok());
        assert!(matches!(
            SquaredAmplitudes::new(0.5, 0.0, 0.0, 0.4),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            SquaredAmplitudes::new(1.5, -0.5, 0.0, 0.0),
            Err(Error::OutOfUnitInterval { .. })
        ));
        let third = Rational64::new(1, 3);
        assert!(SquaredAmplitudes::anti_diagonal(third).is_ok());
        assert!(SquaredAmplitudes::diagonal(Rational64::new(3, 2)).is_err());
    }

    #[test]
    fn amplitude_normalization() {
        let c = |re: f64, im: f64| Complex::new(re, im);
        assert!(QuantumInitialState::new([c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).is_err());
        let s = QuantumInitialState::normalized([c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        let sq = s.squared();
        assert!((sq.alpha_sq() - 0.5).abs() < 1e-15);
        assert!((sq.gamma_sq() - 0.5).abs() < 1e-15);
        assert_eq!(
            QuantumInitialState::<f64>::normalized([c(0.0, 0.0); 4]),
            Err(Error::ZeroState)
        );
    }

    #[test]
    fn from_squared_round_trips() {
        let sq = SquaredAmplitudes::new(0.1f64, 0.2, 0.3, 0.4).unwrap();
        let back = QuantumInitialState::from_squared(&sq).squared();
        for (x, y) in back.to_array().iter().zip(sq.to_array()) {
            assert!((x - y).abs() < 1e-15f64);
        }
    }
}
