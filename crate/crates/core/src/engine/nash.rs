//! Equilibrium conditions for the quantized game.
//!
//! Each player's expected payoff is affine in their own probability when the
//! opponent's is held fixed, so the condition "no deviation in `[0, 1]`
//! improves the payoff" holds exactly when it holds at the two endpoints.
//! [`QuantumGame::verify`] checks only those endpoints.

use std::fmt;

use super::mixing::MixingProfile;
use super::operators::MixingConvention;
use super::payoff::{closed_form_payoff_with, ClosedFormPayoff, PayoffVector};
use super::state::SquaredAmplitudes;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Player {
    Row,
    Col,
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Row => "row",
            Player::Col => "col",
        })
    }
}

/// Payoff gap `payoff(candidate) − payoff(deviation)` for one player and one
/// endpoint deviation.
#[derive(Clone, Debug, PartialEq)]
pub struct GapCheck<T> {
    pub player: Player,
    pub deviation: T,
    pub gap: T,
    /// `gap ≥ −tolerance`
    pub weak_ok: bool,
    /// `gap > tolerance`, or the deviation coincides with the candidate.
    pub strict_ok: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquilibriumReport<T> {
    pub candidate: MixingProfile<T>,
    /// `(row payoff, column payoff)` at the candidate.
    pub payoffs: (T, T),
    /// Row gaps at `p = 0` and `p = 1`, then column gaps at `q = 0` and `q = 1`.
    pub checks: Vec<GapCheck<T>>,
    pub weak_nash: bool,
    pub strict_nash: bool,
}

impl<T: Scalar> EquilibriumReport<T> {
    pub fn violated(&self) -> impl Iterator<Item = &GapCheck<T>> {
        self.checks.iter().filter(|c| !c.weak_ok)
    }

    pub fn gap(&self, player: Player, deviation: &T) -> Option<&T> {
        self.checks
            .iter()
            .find(|c| c.player == player && c.deviation == *deviation)
            .map(|c| &c.gap)
    }
}

/// A 2×2 game after quantization, held as the bilinear payoff of each player.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumGame<T> {
    row: ClosedFormPayoff<T>,
    col: ClosedFormPayoff<T>,
}

impl<T: Scalar> QuantumGame<T> {
    pub fn new(
        state: &SquaredAmplitudes<T>,
        row_vec: &PayoffVector<T>,
        col_vec: &PayoffVector<T>,
        convention: MixingConvention,
    ) -> Self {
        Self {
            row: closed_form_payoff_with(state, row_vec, convention),
            col: closed_form_payoff_with(state, col_vec, convention),
        }
    }

    pub fn from_closed_forms(row: ClosedFormPayoff<T>, col: ClosedFormPayoff<T>) -> Self {
        Self { row, col }
    }

    pub fn row_payoff(&self) -> &ClosedFormPayoff<T> {
        &self.row
    }

    pub fn col_payoff(&self) -> &ClosedFormPayoff<T> {
        &self.col
    }

    pub fn payoffs(&self, mix: &MixingProfile<T>) -> (T, T) {
        (self.row.eval_at(mix), self.col.eval_at(mix))
    }

    /// Row gap at fixed `q*` and column gap at fixed `p*`.
    pub fn condition_gaps(&self, candidate: &MixingProfile<T>, deviation: &MixingProfile<T>) -> (T, T) {
        let (p_star, q_star) = (candidate.p(), candidate.q());
        let row_gap = self.row.eval(p_star, q_star) - self.row.eval(deviation.p(), q_star);
        let col_gap = self.col.eval(p_star, q_star) - self.col.eval(p_star, deviation.q());
        (row_gap, col_gap)
    }

    pub fn verify(&self, candidate: &MixingProfile<T>) -> EquilibriumReport<T> {
        let tol = T::indifference_tolerance();
        let mut checks = Vec::with_capacity(4);
        for player in [Player::Row, Player::Col] {
            for deviation in [T::zero(), T::one()] {
                let (dev_mix, own) = match player {
                    Player::Row => (candidate.with_p(deviation.clone()), candidate.p()),
                    Player::Col => (candidate.with_q(deviation.clone()), candidate.q()),
                };
                let dev_mix = dev_mix.expect("endpoint deviation lies in [0, 1]");
                let (row_gap, col_gap) = self.condition_gaps(candidate, &dev_mix);
                let gap = match player {
                    Player::Row => row_gap,
                    Player::Col => col_gap,
                };
                checks.push(GapCheck {
                    player,
                    weak_ok: gap >= -tol.clone(),
                    strict_ok: deviation == *own || gap > tol,
                    deviation,
                    gap,
                });
            }
        }
        let weak_nash = checks.iter().all(|c| c.weak_ok);
        let strict_nash = checks.iter().all(|c| c.strict_ok);
        EquilibriumReport {
            payoffs: self.payoffs(candidate),
            candidate: candidate.clone(),
            checks,
            weak_nash,
            strict_nash,
        }
    }
}

/// Gaps `($_row(p*, q*) − $_row(p, q*), $_col(p*, q*) − $_col(p*, q))` in the
/// default convention.
pub fn nash_condition_gap<T: Scalar>(
    state: &SquaredAmplitudes<T>,
    vec_row: &PayoffVector<T>,
    vec_col: &PayoffVector<T>,
    candidate: &MixingProfile<T>,
    deviation: &MixingProfile<T>,
) -> (T, T) {
    QuantumGame::new(state, vec_row, vec_col, MixingConvention::default())
        .condition_gaps(candidate, deviation)
}

pub fn verify_nash<T: Scalar>(
    state: &SquaredAmplitudes<T>,
    vec_row: &PayoffVector<T>,
    vec_col: &PayoffVector<T>,
    candidate: &MixingProfile<T>,
) -> EquilibriumReport<T> {
    QuantumGame::new(state, vec_row, vec_col, MixingConvention::default()).verify(candidate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    fn bg() -> (PayoffVector<f64>, PayoffVector<f64>) {
        (PayoffVector([0.0, -2.0, 1.0, -1.0]), PayoffVector([0.0, -1.0, -1.0, 0.0]))
    }

    fn mix(p: f64, q: f64) -> MixingProfile<f64> {
        MixingProfile::new(p, q).unwrap()
    }

    #[test]
    fn identical_profiles_have_zero_gap() {
        let (m, u) = bg();
        let s = SquaredAmplitudes::new(0.1, 0.2, 0.3, 0.4).unwrap();
        let c = mix(0.3, 0.8);
        assert_eq!(nash_condition_gap(&s, &m, &u, &c, &c), (0.0, 0.0));
    }

    #[test]
    fn row_gap_factorizes() {
        let (m, u) = bg();
        let s = SquaredAmplitudes::new(0.1, 0.2, 0.3, 0.4).unwrap();
        let (a, g, d, b) = (0.1, 0.2, 0.3, 0.4);
        for p in [0.0, 0.25, 0.7, 1.0] {
            let (row, col) = nash_condition_gap(&s, &m, &u, &mix(1.0, 1.0), &mix(p, 1.0));
            assert!((row - 2.0 * (1.0 - p) * (a - b + d - g)).abs() < 1e-12);
            assert_eq!(col, 0.0);
        }
    }

    #[test]
    fn correct_expectation_state_is_nash_at_identity() {
        let (m, u) = bg();
        let s = SquaredAmplitudes::new(0.8, 0.0, 0.0, 0.2).unwrap();
        let r = verify_nash(&s, &m, &u, &mix(1.0, 1.0));
        assert!(r.weak_nash && r.strict_nash);
        assert!((r.payoffs.0 + 0.2).abs() < 1e-15);
        assert_eq!(r.payoffs.1, 0.0);
        assert_eq!(r.violated().count(), 0);
    }

    #[test]
    fn false_expectation_state_is_never_nash() {
        let (m, u) = bg();
        let s = SquaredAmplitudes::new(0.0, 0.5, 0.5, 0.0).unwrap();
        let r = verify_nash(&s, &m, &u, &mix(1.0, 1.0));
        assert!(!r.weak_nash);
        let bad: Vec<_> = r.violated().collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].player, Player::Col);
        assert_eq!(*r.gap(Player::Col, &0.0).unwrap(), -1.0);
    }

    #[test]
    fn constant_payoffs_make_everything_nash() {
        let g = QuantumGame::from_closed_forms(ClosedFormPayoff::<f64>::zero(), ClosedFormPayoff::zero());
        for (p, q) in [(0.0, 0.0), (0.3, 0.9), (1.0, 0.5)] {
            let r = g.verify(&mix(p, q));
            assert!(r.weak_nash);
        }
    }

    #[test]
    fn weak_but_not_strict_at_boundary() {
        let half = Rational64::new(1, 2);
        let zero = Rational64::from_integer(0);
        let s = SquaredAmplitudes::new(half, zero, zero, half).unwrap();
        let m = PayoffVector([0, -2, 1, -1].map(Rational64::from_integer));
        let u = PayoffVector([0, -1, -1, 0].map(Rational64::from_integer));
        let one = Rational64::from_integer(1);
        let r = verify_nash(&s, &m, &u, &MixingProfile::new(one, one).unwrap());
        assert!(r.weak_nash);
        assert!(!r.strict_nash);
    }

    #[test]
    fn interior_candidate_is_never_strict() {
        let g = QuantumGame::from_closed_forms(ClosedFormPayoff::<f64>::zero(), ClosedFormPayoff::zero());
        assert!(!g.verify(&mix(0.5, 0.5)).strict_nash);
    }
}
