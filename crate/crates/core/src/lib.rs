//! Quantized 2×2 games and the quantum Barro-Gordon monetary policy game.
//!
//! * [`classical`]: bimatrix games, the Barro-Gordon utilities and payoff
//!   tables, pure equilibria and dominance.
//! * [`engine`]: Marinatto-Weber quantization (density matrices, payoff
//!   operators, closed-form bilinear payoffs, equilibrium checks and
//!   enumeration).
//! * [`scenarios`]: the named candidate profiles and strategy families of the
//!   weak-policy-maker game, as structured reports.
//!
//! Payoff algebra is generic over [`Scalar`]; the density-matrix route is
//! generic over [`Real`]. The aliases below fix the common choices.

pub mod classical;
pub mod engine;
mod error;
pub mod scalar;
pub mod scenarios;

pub use error::{Error, Result};
pub use scalar::{Real, Scalar};

pub use num_rational::Rational64;

pub type BimatrixGameF64 = classical::BimatrixGame<f64>;
pub type ExactBimatrixGame = classical::BimatrixGame<Rational64>;
pub type PolicyParamsF64 = classical::PolicyParams<f64>;
pub type ExactPolicyParams = classical::PolicyParams<Rational64>;

pub type SquaredAmplitudesF64 = engine::SquaredAmplitudes<f64>;
pub type ExactSquaredAmplitudes = engine::SquaredAmplitudes<Rational64>;
pub type QuantumStateF64 = engine::QuantumInitialState<f64>;
pub type MixingProfileF64 = engine::MixingProfile<f64>;
pub type ExactMixingProfile = engine::MixingProfile<Rational64>;
pub type PayoffVectorF64 = engine::PayoffVector<f64>;
pub type DensityMatrixF64 = engine::DensityMatrix4<f64>;
pub type QuantumGameF64 = engine::QuantumGame<f64>;
pub type ExactQuantumGame = engine::QuantumGame<Rational64>;
pub type ScenarioReportF64 = scenarios::ScenarioReport<f64>;
