//! Named analyses of the quantum Barro-Gordon game with a weak policy maker.
//!
//! The payoff vectors come from [`build_bg_game`] with `a = b = 2`, and every
//! number in a [`ScenarioReport`] is produced by [`QuantumGame`] in the
//! default mixing convention. Inputs are squared magnitudes because every
//! payoff depends on the state only through them.
//!
//! | scenario      | candidate `(p, q)` | state                      |
//! |---------------|--------------------|----------------------------|
//! | `case-a`      | `(1, 1)`           | any                        |
//! | `case-b`      | `(0, 0)`           | any                        |
//! | `case-c`      | `(1/2, 1/2)`       | any                        |
//! | `strategy-i`  | `(1, 1)`           | `γ|LH⟩ + δ|HL⟩`            |
//! | `strategy-ii` | `(1, 1)`           | `α|LL⟩ + β|HH⟩`            |

use std::fmt;

use crate::classical::{build_bg_game, PolicyMaker, PolicyParams};
use crate::engine::{
    EquilibriumReport, MixingConvention, MixingProfile, PayoffVector, Player, QuantumGame,
    SquaredAmplitudes,
};
use crate::error::Result;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScenarioId {
    CaseA,
    CaseB,
    CaseC,
    StrategyI,
    StrategyII,
}

impl ScenarioId {
    pub fn key(self) -> &'static str {
        match self {
            ScenarioId::CaseA => "case-a",
            ScenarioId::CaseB => "case-b",
            ScenarioId::CaseC => "case-c",
            ScenarioId::StrategyI => "strategy-i",
            ScenarioId::StrategyII => "strategy-ii",
        }
    }
}

impl fmt::Display for ScenarioId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Equilibrium,
    NotEquilibrium,
    /// Equilibrium would need `α² + δ² < β² + γ²`, which a weak policy maker
    /// is assumed never to satisfy.
    RejectedByWeakAssumption,
    /// Both players receive `−1/2`.
    DominatedOutcome,
    /// The public loses `1` whatever the split; never an equilibrium.
    PublicAlwaysLoses,
    /// Equilibrium at the pure `|LL⟩` state with zero payoffs for both.
    TimeConsistent,
}

impl Verdict {
    pub fn key(self) -> &'static str {
        match self {
            Verdict::Equilibrium => "equilibrium",
            Verdict::NotEquilibrium => "not-equilibrium",
            Verdict::RejectedByWeakAssumption => "rejected-weak-assumption",
            Verdict::DominatedOutcome => "dominated-outcome",
            Verdict::PublicAlwaysLoses => "public-always-loses",
            Verdict::TimeConsistent => "time-consistent",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionCheck<T> {
    pub expression: &'static str,
    pub value: T,
    pub satisfied: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioReport<T> {
    pub id: ScenarioId,
    pub state: SquaredAmplitudes<T>,
    pub candidate: MixingProfile<T>,
    /// `(policy maker, public)`
    pub payoffs: (T, T),
    pub conditions: Vec<ConditionCheck<T>>,
    pub nash: EquilibriumReport<T>,
    pub verdict: Verdict,
}

/// Weak policy maker's and public's payoff vectors for `a = b = 2`.
pub fn bg_payoff_vectors<T: Scalar>() -> (PayoffVector<T>, PayoffVector<T>) {
    let two = T::one() + T::one();
    let params = PolicyParams::new(PolicyMaker::Weak, two.clone(), two).expect("a = b = 2 is valid");
    let game = build_bg_game(&params);
    (PayoffVector(game.row_vector()), PayoffVector(game.col_vector()))
}

pub fn bg_quantum_game<T: Scalar>(state: &SquaredAmplitudes<T>) -> QuantumGame<T> {
    let (m, u) = bg_payoff_vectors();
    QuantumGame::new(state, &m, &u, MixingConvention::default())
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeakAssumption<T> {
    pub holds: bool,
    /// `α² + δ² − β² − γ²`
    pub gap: T,
}

/// Whether `α² + δ² > β² + γ²` by more than the scalar's tolerance.
pub fn weak_assumption_holds<T: Scalar>(state: &SquaredAmplitudes<T>) -> WeakAssumption<T> {
    let gap = state.alpha_sq().clone() + state.delta_sq().clone()
        - state.beta_sq().clone()
        - state.gamma_sq().clone();
    WeakAssumption {
        holds: gap > T::indifference_tolerance(),
        gap,
    }
}

fn candidate<T: Scalar>(p: T, q: T) -> MixingProfile<T> {
    MixingProfile::new(p, q).expect("candidate in the unit square")
}

fn half<T: Scalar>() -> T {
    T::one() / (T::one() + T::one())
}

fn condition<T: Scalar>(nash: &EquilibriumReport<T>, player: Player, deviation: T, expression: &'static str) -> ConditionCheck<T> {
    let check = nash
        .checks
        .iter()
        .find(|c| c.player == player && c.deviation == deviation)
        .expect("report covers both endpoints");
    ConditionCheck {
        expression,
        value: check.gap.clone(),
        satisfied: check.weak_ok,
    }
}

fn evaluate<T: Scalar>(state: &SquaredAmplitudes<T>, p: T, q: T) -> (MixingProfile<T>, EquilibriumReport<T>) {
    let mix = candidate(p, q);
    let nash = bg_quantum_game(state).verify(&mix);
    (mix, nash)
}

fn nash_verdict<T: Scalar>(nash: &EquilibriumReport<T>) -> Verdict {
    if nash.weak_nash {
        Verdict::Equilibrium
    } else {
        Verdict::NotEquilibrium
    }
}

/// Both players keep the identity: `p* = q* = 1`.
pub fn run_case_a<T: Scalar>(state: &SquaredAmplitudes<T>) -> ScenarioReport<T> {
    let (mix, nash) = evaluate(state, T::one(), T::one());
    let conditions = vec![
        condition(&nash, Player::Row, T::zero(), "2(1-p)(α²-β²+δ²-γ²) ≥ 0 at p = 0"),
        condition(&nash, Player::Col, T::zero(), "(1-2(γ²+δ²))(1-q) ≥ 0 at q = 0, i.e. γ²+δ² ≤ 1/2"),
    ];
    ScenarioReport {
        id: ScenarioId::CaseA,
        state: state.clone(),
        candidate: mix,
        payoffs: nash.payoffs.clone(),
        verdict: nash_verdict(&nash),
        conditions,
        nash,
    }
}

/// Both players flip: `p* = q* = 0`.
pub fn run_case_b<T: Scalar>(state: &SquaredAmplitudes<T>) -> ScenarioReport<T> {
    let (mix, nash) = evaluate(state, T::zero(), T::zero());
    let conditions = vec![
        condition(&nash, Player::Row, T::one(), "-2p(α²-β²+δ²-γ²) ≥ 0 at p = 1"),
        condition(&nash, Player::Col, T::one(), "(1-2(δ²+γ²))q ≥ 0 at q = 1, i.e. γ²+δ² ≤ 1/2"),
    ];
    let verdict = if weak_assumption_holds(state).holds {
        Verdict::RejectedByWeakAssumption
    } else {
        nash_verdict(&nash)
    };
    ScenarioReport {
        id: ScenarioId::CaseB,
        state: state.clone(),
        candidate: mix,
        payoffs: nash.payoffs.clone(),
        verdict,
        conditions,
        nash,
    }
}

/// Both players mix evenly: `p* = q* = 1/2`.
pub fn run_case_c<T: Scalar>(state: &SquaredAmplitudes<T>) -> ScenarioReport<T> {
    let (mix, nash) = evaluate(state, half(), half());
    let conditions = vec![
        condition(&nash, Player::Row, T::zero(), "2(1/2-p)(α²-β²+δ²-γ²) ≥ 0 at p = 0"),
        condition(&nash, Player::Row, T::one(), "2(1/2-p)(α²-β²+δ²-γ²) ≥ 0 at p = 1"),
        condition(&nash, Player::Col, T::zero(), "(1-2(δ²+γ²))(1/2-q)(1-1) = 0 at q = 0"),
        condition(&nash, Player::Col, T::one(), "(1-2(δ²+γ²))(1/2-q)(1-1) = 0 at q = 1"),
    ];
    ScenarioReport {
        id: ScenarioId::CaseC,
        state: state.clone(),
        candidate: mix,
        payoffs: nash.payoffs.clone(),
        verdict: Verdict::DominatedOutcome,
        conditions,
        nash,
    }
}

/// Public always mispredicts: state `γ|LH⟩ + δ|HL⟩` with `δ² = 1 − γ²`.
pub fn run_strategy_i<T: Scalar>(gamma_sq: T) -> Result<ScenarioReport<T>> {
    let state = SquaredAmplitudes::anti_diagonal(gamma_sq)?;
    let (mix, nash) = evaluate(&state, T::one(), T::one());
    let conditions = vec![
        condition(&nash, Player::Row, T::zero(), "2(1-p)(δ²-γ²) ≥ 0 at p = 0"),
        condition(&nash, Player::Col, T::zero(), "γ²+δ² ≤ 1/2"),
    ];
    Ok(ScenarioReport {
        id: ScenarioId::StrategyI,
        state,
        candidate: mix,
        payoffs: nash.payoffs.clone(),
        verdict: Verdict::PublicAlwaysLoses,
        conditions,
        nash,
    })
}

/// Public always predicts correctly: state `α|LL⟩ + β|HH⟩` with `α² = 1 − β²`.
pub fn run_strategy_ii<T: Scalar>(beta_sq: T) -> Result<ScenarioReport<T>> {
    let state = SquaredAmplitudes::diagonal(beta_sq)?;
    let (mix, nash) = evaluate(&state, T::one(), T::one());
    let conditions = vec![
        condition(&nash, Player::Row, T::zero(), "2(1-p)(α²-β²) ≥ 0 at p = 0"),
        condition(&nash, Player::Col, T::zero(), "(1-q) ≥ 0 at q = 0"),
    ];
    let verdict = match (nash.weak_nash, state.beta_sq().approx_zero()) {
        (true, true) => Verdict::TimeConsistent,
        (true, false) => Verdict::Equilibrium,
        (false, _) => Verdict::NotEquilibrium,
    };
    Ok(ScenarioReport {
        id: ScenarioId::StrategyII,
        state,
        candidate: mix,
        payoffs: nash.payoffs.clone(),
        verdict,
        conditions,
        nash,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    fn sq(a: f64, g: f64, d: f64, b: f64) -> SquaredAmplitudes<f64> {
        SquaredAmplitudes::new(a, g, d, b).unwrap()
    }

    fn close(x: f64, y: f64) -> bool {
        (x - y).abs() < 1e-12
    }

    #[test]
    fn vectors_come_from_the_weak_table() {
        let (m, u) = bg_payoff_vectors::<Rational64>();
        assert_eq!(m.0, [0, -2, 1, -1].map(Rational64::from_integer));
        assert_eq!(u.0, [0, -1, -1, 0].map(Rational64::from_integer));
    }

    #[test]
    fn case_a_reference_state() {
        let r = run_case_a(&sq(0.5, 0.2, 0.2, 0.1));
        assert!(close(r.payoffs.0, -0.3));
        assert!(close(r.payoffs.1, -0.4));
        assert!(r.conditions.iter().all(|c| c.satisfied));
        assert!(r.nash.weak_nash);
        assert_eq!(r.verdict, Verdict::Equilibrium);
    }

    #[test]
    fn case_a_pure_ll_and_false_expectation() {
        let r = run_case_a(&sq(1.0, 0.0, 0.0, 0.0));
        assert_eq!(r.payoffs, (0.0, 0.0));
        assert!(r.nash.weak_nash);
        let r = run_case_a(&sq(0.0, 0.5, 0.5, 0.0));
        assert!(!r.conditions[1].satisfied);
        assert!(!r.nash.weak_nash);
    }

    #[test]
    fn case_b() {
        let r = run_case_b(&sq(0.1, 0.2, 0.2, 0.5));
        assert!(r.nash.weak_nash);
        assert_eq!(r.verdict, Verdict::Equilibrium);
        let r = run_case_b(&sq(1.0, 0.0, 0.0, 0.0));
        assert_eq!(r.payoffs, (-1.0, 0.0));
        assert!(!r.nash.weak_nash);
        assert_eq!(r.verdict, Verdict::RejectedByWeakAssumption);
    }

    #[test]
    fn case_c_payoffs_are_minus_half() {
        for s in [sq(1.0, 0.0, 0.0, 0.0), sq(0.1, 0.2, 0.3, 0.4), sq(0.0, 0.5, 0.5, 0.0)] {
            let r = run_case_c(&s);
            assert!(close(r.payoffs.0, -0.5) && close(r.payoffs.1, -0.5));
            assert_eq!(r.verdict, Verdict::DominatedOutcome);
            assert!(r.conditions[2].value.abs() < 1e-15 && r.conditions[3].value.abs() < 1e-15);
        }
    }

    #[test]
    fn strategy_i() {
        let r = run_strategy_i(0.0).unwrap();
        assert_eq!(r.payoffs, (1.0, -1.0));
        assert!(!r.nash.weak_nash);
        let third = Rational64::new(1, 3);
        let r = run_strategy_i(third).unwrap();
        assert_eq!(r.payoffs.0, Rational64::from_integer(0));
        assert!(run_strategy_i(1.5).is_err());
    }

    #[test]
    fn strategy_ii() {
        let r = run_strategy_ii(0.2).unwrap();
        assert!(close(r.payoffs.0, -0.2) && r.payoffs.1 == 0.0);
        assert!(r.nash.weak_nash);
        let r = run_strategy_ii(0.0).unwrap();
        assert_eq!(r.payoffs, (0.0, 0.0));
        assert_eq!(r.verdict, Verdict::TimeConsistent);
        let r = run_strategy_ii(0.7).unwrap();
        assert!(!r.nash.weak_nash);
        assert!(run_strategy_ii(-0.1).is_err());
    }

    #[test]
    fn weak_assumption() {
        assert!(weak_assumption_holds(&sq(1.0, 0.0, 0.0, 0.0)).holds);
        let uniform = weak_assumption_holds(&sq(0.25, 0.25, 0.25, 0.25));
        assert!(!uniform.holds);
        assert_eq!(uniform.gap, 0.0);
        assert!(weak_assumption_holds(&sq(0.8, 0.0, 0.0, 0.2)).holds);
    }
}
