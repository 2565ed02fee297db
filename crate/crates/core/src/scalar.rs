//! Numeric abstractions shared by the classical and quantum layers.
//!
//! [`Scalar`] is the minimal ordered field the payoff algebra needs. It is
//! implemented for `f32`, `f64` and the exact rationals, so payoff tables and
//! closed-form coefficients can be computed without rounding when inputs are
//! rational. [`Real`] adds what the density-matrix route needs on top of that
//! (square roots, complex entries, Hermitian eigenvalues), which only the
//! floating point types provide.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{Num, ToPrimitive};

pub trait Scalar: Num + Neg<Output = Self> + Clone + PartialOrd + Debug + Display {
    /// Slopes and gaps with magnitude at or below this value count as zero.
    fn indifference_tolerance() -> Self;

    /// Allowed deviation of a probability vector's sum from one.
    fn normalization_tolerance() -> Self;

    fn from_ratio(numer: i64, denom: i64) -> Self;

    fn as_f64(&self) -> f64;

    fn finite(&self) -> bool {
        true
    }

    fn magnitude(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn approx_zero(&self) -> bool {
        self.magnitude() <= Self::indifference_tolerance()
    }
}

impl Scalar for f64 {
    fn indifference_tolerance() -> Self {
        1e-12
    }
    fn normalization_tolerance() -> Self {
        1e-12
    }
    fn from_ratio(numer: i64, denom: i64) -> Self {
        numer as f64 / denom as f64
    }
    fn as_f64(&self) -> f64 {
        *self
    }
    fn finite(&self) -> bool {
        f64::is_finite(*self)
    }
}

impl Scalar for f32 {
    fn indifference_tolerance() -> Self {
        1e-5
    }
    fn normalization_tolerance() -> Self {
        1e-5
    }
    fn from_ratio(numer: i64, denom: i64) -> Self {
        (numer as f64 / denom as f64) as f32
    }
    fn as_f64(&self) -> f64 {
        *self as f64
    }
    fn finite(&self) -> bool {
        f32::is_finite(*self)
    }
}

impl Scalar for Rational64 {
    fn indifference_tolerance() -> Self {
        Rational64::from_integer(0)
    }
    fn normalization_tolerance() -> Self {
        Rational64::from_integer(0)
    }
    fn from_ratio(numer: i64, denom: i64) -> Self {
        Rational64::new(numer, denom)
    }
    fn as_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for BigRational {
    fn indifference_tolerance() -> Self {
        BigRational::from_integer(BigInt::from(0))
    }
    fn normalization_tolerance() -> Self {
        BigRational::from_integer(BigInt::from(0))
    }
    fn from_ratio(numer: i64, denom: i64) -> Self {
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }
    fn as_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

/// Floating point scalar usable as the real part of complex amplitudes.
pub trait Real: Scalar + nalgebra::RealField + Copy {
    /// Tolerance for algebraic identities (Hermiticity, unit trace, imaginary
    /// residue of a trace).
    fn algebraic_tolerance() -> Self;

    /// Lower bound accepted for the smallest eigenvalue of a density matrix,
    /// negated.
    fn eigenvalue_tolerance() -> Self;
}

impl Real for f64 {
    fn algebraic_tolerance() -> Self {
        1e-12
    }
    fn eigenvalue_tolerance() -> Self {
        1e-10
    }
}

impl Real for f32 {
    fn algebraic_tolerance() -> Self {
        1e-5
    }
    fn eigenvalue_tolerance() -> Self {
        1e-4
    }
}
