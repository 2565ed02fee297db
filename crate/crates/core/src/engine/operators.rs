use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex;

use crate::scalar::Real;

pub type Operator2<T> = Matrix2<Complex<T>>;
pub type Operator4<T> = Matrix4<Complex<T>>;

/// The strategy-exchanging operator `C`: `C|L⟩ = |H⟩`, `C|H⟩ = |L⟩`.
pub fn flip_operator<T: Real>() -> Operator2<T> {
    let o = Complex::new(T::zero(), T::zero());
    let i = Complex::new(T::one(), T::zero());
    Matrix2::new(o, i, i, o)
}

pub fn identity_operator<T: Real>() -> Operator2<T> {
    Matrix2::identity()
}

/// Local action of one player on their own qubit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LocalOp {
    Identity,
    Flip,
}

impl LocalOp {
    pub fn matrix<T: Real>(self) -> Operator2<T> {
        match self {
            LocalOp::Identity => identity_operator(),
            LocalOp::Flip => flip_operator(),
        }
    }
}

/// Tensor product `row ⊗ col` of local operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OperatorPair {
    pub row: LocalOp,
    pub col: LocalOp,
}

impl OperatorPair {
    pub const IDENTITY: OperatorPair = OperatorPair::new(LocalOp::Identity, LocalOp::Identity);
    pub const FLIP_COL: OperatorPair = OperatorPair::new(LocalOp::Identity, LocalOp::Flip);
    pub const FLIP_ROW: OperatorPair = OperatorPair::new(LocalOp::Flip, LocalOp::Identity);
    pub const FLIP_BOTH: OperatorPair = OperatorPair::new(LocalOp::Flip, LocalOp::Flip);

    pub const fn new(row: LocalOp, col: LocalOp) -> Self {
        Self { row, col }
    }

    /// Kronecker product over the basis LL, LH, HL, HH.
    pub fn matrix<T: Real>(self) -> Operator4<T> {
        self.row.matrix::<T>().kronecker(&self.col.matrix::<T>()).fixed_view::<4, 4>(0, 0).into_owned()
    }

    /// Image of a basis index under the pair, read as a bit permutation
    /// (row qubit is the high bit).
    pub fn permute(self, index: usize) -> usize {
        let mut out = index;
        if self.row == LocalOp::Flip {
            out ^= 0b10;
        }
        if self.col == LocalOp::Flip {
            out ^= 0b01;
        }
        out
    }
}

/// Pairing between the mixing weights and the operator pairs they apply.
///
/// The weights are always taken in the order `[pq, p(1−q), (1−p)q,
/// (1−p)(1−q)]`.
///
/// * [`MixingConvention::Crossed`] (the default) applies `I⊗I, C⊗I, I⊗C,
///   C⊗C` under those weights, so the row qubit is flipped with probability
///   `1−q` and the column qubit with probability `1−p`. This is the
///   convention under which the row payoff has `p`-coefficient
///   `2(α²−β²+δ²−γ²)` for the Barro-Gordon payoffs, and the one every
///   closed form in [`crate::scenarios`] is written in.
/// * [`MixingConvention::Local`] applies `I⊗I, I⊗C, C⊗I, C⊗C`: each player's
///   own probability governs the operator on their own qubit. With a pure
///   `|LL⟩` state it embeds the classical game at the corners of the unit
///   square.
///
/// The two conventions differ only by exchanging the roles of `p` and `q` in
/// the outcome distribution.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MixingConvention {
    #[default]
    Crossed,
    Local,
}

impl MixingConvention {
    pub fn pairs(self) -> [OperatorPair; 4] {
        match self {
            MixingConvention::Crossed => [
                OperatorPair::IDENTITY,
                OperatorPair::FLIP_ROW,
                OperatorPair::FLIP_COL,
                OperatorPair::FLIP_BOTH,
            ],
            MixingConvention::Local => [
                OperatorPair::IDENTITY,
                OperatorPair::FLIP_COL,
                OperatorPair::FLIP_ROW,
                OperatorPair::FLIP_BOTH,
            ],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MixingConvention::Crossed => "crossed",
            MixingConvention::Local => "local",
        }
    }
}

impl std::str::FromStr for MixingConvention {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "crossed" => Ok(MixingConvention::Crossed),
            "local" => Ok(MixingConvention::Local),
            other => Err(format!("unknown mixing convention `{other}` (expected crossed or local)")),
        }
    }
}
