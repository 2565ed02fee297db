//! Marinatto-Weber quantization of 2×2 games.
//!
//! Two routes compute the same expected payoffs:
//!
//! * the density route ([`final_density`], [`expected_payoff_trace`]) builds
//!   the 4×4 density matrix after both players mix the identity and the flip
//!   operator and takes `Tr(P ρ)`;
//! * the closed-form route ([`omega_matrix`], [`closed_form_payoff`]) reads the
//!   outcome distribution off basis permutations and expands it into a
//!   bilinear polynomial in `(p, q)`.
//!
//! Equilibrium checks and enumeration work on the closed form, which is
//! generic over [`Scalar`](crate::Scalar) and therefore exact for rational
//! inputs.

mod density;
mod enumerate;
mod mixing;
mod nash;
mod operators;
mod payoff;
mod state;

pub use density::{final_density, final_density_with, initial_density, DensityDiagnostics, DensityMatrix4};
pub use enumerate::{enumerate_equilibria, equilibrium_regions, EquilibriumRegion, Interval, RegionKind};
pub use mixing::MixingProfile;
pub use nash::{nash_condition_gap, verify_nash, EquilibriumReport, GapCheck, Player, QuantumGame};
pub use operators::{
    flip_operator, identity_operator, LocalOp, MixingConvention, Operator2, Operator4, OperatorPair,
};
pub use payoff::{
    closed_form_payoff, closed_form_payoff_with, expected_payoff_trace, omega_matrix, omega_matrix_with,
    payoff_operator, ClosedFormPayoff, PayoffVector,
};
pub use state::{QuantumInitialState, SquaredAmplitudes};
