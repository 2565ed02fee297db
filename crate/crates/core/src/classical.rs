//! Classical 2×2 bimatrix games and the Barro-Gordon policy game.
//!
//! The row player is the policy maker, the column player is the public.
//! Strategy index 0 is `L` (zero inflation) and index 1 is `H` (the
//! discretionary rate `b/a`).

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strategy {
    L,
    H,
}

impl Strategy {
    pub const ALL: [Strategy; 2] = [Strategy::L, Strategy::H];

    pub fn index(self) -> usize {
        match self {
            Strategy::L => 0,
            Strategy::H => 1,
        }
    }

    pub fn other(self) -> Strategy {
        match self {
            Strategy::L => Strategy::H,
            Strategy::H => Strategy::L,
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::L => "L",
            Strategy::H => "H",
        })
    }
}

/// Weak policy makers gain from surprise inflation; strong ones do not.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PolicyMaker {
    Weak,
    Strong,
}

impl PolicyMaker {
    pub fn from_theta(theta: u8) -> Result<Self> {
        match theta {
            1 => Ok(PolicyMaker::Weak),
            0 => Ok(PolicyMaker::Strong),
            other => Err(Error::InvalidParams(format!("theta must be 0 or 1, got {other}"))),
        }
    }

    pub fn theta(self) -> u8 {
        match self {
            PolicyMaker::Weak => 1,
            PolicyMaker::Strong => 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolicyParams<T> {
    kind: PolicyMaker,
    a: T,
    b: T,
}

impl<T: Scalar> PolicyParams<T> {
    /// `a` weighs the quadratic inflation cost, `b` the surprise benefit.
    pub fn new(kind: PolicyMaker, a: T, b: T) -> Result<Self> {
        if !(a.finite() && b.finite()) || a <= T::zero() || b <= T::zero() {
            return Err(Error::InvalidParams(format!(
                "a and b must be positive, got a = {a}, b = {b}"
            )));
        }
        Ok(Self { kind, a, b })
    }

    pub fn kind(&self) -> PolicyMaker {
        self.kind
    }

    pub fn theta(&self) -> T {
        match self.kind {
            PolicyMaker::Weak => T::one(),
            PolicyMaker::Strong => T::zero(),
        }
    }

    pub fn a(&self) -> &T {
        &self.a
    }

    pub fn b(&self) -> &T {
        &self.b
    }

    /// Inflation rate played by the `H` strategy.
    pub fn high_inflation(&self) -> T {
        self.b.clone() / self.a.clone()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InflationProfile<T> {
    pub actual: T,
    pub expected: T,
}

impl<T> InflationProfile<T> {
    pub fn new(actual: T, expected: T) -> Self {
        Self { actual, expected }
    }
}

/// `θ·b·(π − πᵉ) − a·π²/2`
pub fn policy_utility<T: Scalar>(profile: &InflationProfile<T>, params: &PolicyParams<T>) -> T {
    let surprise = profile.actual.clone() - profile.expected.clone();
    let two = T::one() + T::one();
    params.theta() * params.b.clone() * surprise
        - params.a.clone() * profile.actual.clone() * profile.actual.clone() / two
}

/// `−(π − πᵉ)²`
pub fn public_utility<T: Scalar>(profile: &InflationProfile<T>) -> T {
    let surprise = profile.actual.clone() - profile.expected.clone();
    -(surprise.clone() * surprise)
}

/// Unconstrained maximizer of the policy utility over actual inflation.
pub fn optimal_discretionary_inflation<T: Scalar>(params: &PolicyParams<T>) -> T {
    params.theta() * params.high_inflation()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PureProfile {
    pub row: Strategy,
    pub col: Strategy,
}

impl PureProfile {
    pub fn new(row: Strategy, col: Strategy) -> Self {
        Self { row, col }
    }

    pub fn all() -> impl Iterator<Item = PureProfile> {
        Strategy::ALL
            .into_iter()
            .flat_map(|r| Strategy::ALL.into_iter().map(move |c| PureProfile::new(r, c)))
    }
}

impl fmt::Display for PureProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BimatrixGame<T> {
    row_labels: [String; 2],
    col_labels: [String; 2],
    payoffs: [[(T, T); 2]; 2],
}

impl<T: Scalar> BimatrixGame<T> {
    /// `payoffs[row][col] = (row payoff, column payoff)`.
    pub fn new(
        row_labels: [String; 2],
        col_labels: [String; 2],
        payoffs: [[(T, T); 2]; 2],
    ) -> Result<Self> {
        for profile in PureProfile::all() {
            let (r, c) = &payoffs[profile.row.index()][profile.col.index()];
            if !(r.finite() && c.finite()) {
                return Err(Error::NonFinitePayoff {
                    location: profile.to_string(),
                });
            }
        }
        Ok(Self {
            row_labels,
            col_labels,
            payoffs,
        })
    }

    /// Game with `L`/`H` labels on both sides.
    pub fn with_lh_labels(payoffs: [[(T, T); 2]; 2]) -> Result<Self> {
        let lh = || ["L".to_string(), "H".to_string()];
        Self::new(lh(), lh(), payoffs)
    }

    pub fn row_labels(&self) -> &[String; 2] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String; 2] {
        &self.col_labels
    }

    pub fn payoffs(&self) -> &[[(T, T); 2]; 2] {
        &self.payoffs
    }

    pub fn cell(&self, profile: PureProfile) -> &(T, T) {
        &self.payoffs[profile.row.index()][profile.col.index()]
    }

    pub fn row_payoff(&self, profile: PureProfile) -> T {
        self.cell(profile).0.clone()
    }

    pub fn col_payoff(&self, profile: PureProfile) -> T {
        self.cell(profile).1.clone()
    }

    /// Row payoffs in basis order LL, LH, HL, HH.
    pub fn row_vector(&self) -> [T; 4] {
        let p = &self.payoffs;
        [p[0][0].0.clone(), p[0][1].0.clone(), p[1][0].0.clone(), p[1][1].0.clone()]
    }

    /// Column payoffs in basis order LL, LH, HL, HH.
    pub fn col_vector(&self) -> [T; 4] {
        let p = &self.payoffs;
        [p[0][0].1.clone(), p[0][1].1.clone(), p[1][0].1.clone(), p[1][1].1.clone()]
    }

    /// Game with the players' roles exchanged.
    pub fn transposed(&self) -> Self {
        let p = &self.payoffs;
        let swap = |cell: &(T, T)| (cell.1.clone(), cell.0.clone());
        Self {
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
            payoffs: [[swap(&p[0][0]), swap(&p[1][0])], [swap(&p[0][1]), swap(&p[1][1])]],
        }
    }

    pub fn is_pure_nash(&self, profile: PureProfile) -> bool {
        let row_dev = PureProfile::new(profile.row.other(), profile.col);
        let col_dev = PureProfile::new(profile.row, profile.col.other());
        self.row_payoff(profile) >= self.row_payoff(row_dev)
            && self.col_payoff(profile) >= self.col_payoff(col_dev)
    }
}

pub fn build_bg_game<T: Scalar>(params: &PolicyParams<T>) -> BimatrixGame<T> {
    let rate = |s: Strategy| match s {
        Strategy::L => T::zero(),
        Strategy::H => params.high_inflation(),
    };
    let cell = |row: Strategy, col: Strategy| {
        let profile = InflationProfile::new(rate(row), rate(col));
        (policy_utility(&profile, params), public_utility(&profile))
    };
    let payoffs = [
        [cell(Strategy::L, Strategy::L), cell(Strategy::L, Strategy::H)],
        [cell(Strategy::H, Strategy::L), cell(Strategy::H, Strategy::H)],
    ];
    BimatrixGame::with_lh_labels(payoffs).expect("utilities of valid parameters are finite")
}

/// Pure profiles from which neither player gains by deviating alone. Ties
/// count as no gain.
pub fn find_pure_nash<T: Scalar>(game: &BimatrixGame<T>) -> Vec<PureProfile> {
    PureProfile::all().filter(|p| game.is_pure_nash(*p)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DominanceKind {
    Strict,
    Weak,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dominated {
    pub strategy: Strategy,
    pub kind: DominanceKind,
}

pub fn find_dominated_rows<T: Scalar>(game: &BimatrixGame<T>) -> Vec<Dominated> {
    Strategy::ALL
        .into_iter()
        .filter_map(|row| {
            let diffs: Vec<T> = Strategy::ALL
                .into_iter()
                .map(|col| {
                    game.row_payoff(PureProfile::new(row.other(), col))
                        - game.row_payoff(PureProfile::new(row, col))
                })
                .collect();
            let zero = T::zero();
            if diffs.iter().all(|d| *d > zero) {
                Some(DominanceKind::Strict)
            } else if diffs.iter().all(|d| *d >= zero) && diffs.iter().any(|d| *d > zero) {
                Some(DominanceKind::Weak)
            } else {
                None
            }
            .map(|kind| Dominated {
                strategy: row,
                kind,
            })
        })
        .collect()
}

pub fn find_dominated_cols<T: Scalar>(game: &BimatrixGame<T>) -> Vec<Dominated> {
    find_dominated_rows(&game.transposed())
}
