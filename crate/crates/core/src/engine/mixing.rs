use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Probabilities `(p, q)` with which the row and column player apply the
/// identity rather than the flip.
#[derive(Clone, Debug, PartialEq)]
pub struct MixingProfile<T> {
    p: T,
    q: T,
}

impl<T: Scalar> MixingProfile<T> {
    pub fn new(p: T, q: T) -> Result<Self> {
        for (name, v) in [("p", &p), ("q", &q)] {
            if !v.finite() || *v < T::zero() || *v > T::one() {
                return Err(Error::OutOfUnitInterval {
                    name,
                    value: v.as_f64(),
                });
            }
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> &T {
        &self.p
    }

    pub fn q(&self) -> &T {
        &self.q
    }

    /// `[pq, p(1−q), (1−p)q, (1−p)(1−q)]`
    pub fn weights(&self) -> [T; 4] {
        let (p, q) = (self.p.clone(), self.q.clone());
        let (np, nq) = (T::one() - p.clone(), T::one() - q.clone());
        [p.clone() * q.clone(), p * nq.clone(), np.clone() * q, np * nq]
    }

    pub fn with_p(&self, p: T) -> Result<Self> {
        Self::new(p, self.q.clone())
    }

    pub fn with_q(&self, q: T) -> Result<Self> {
        Self::new(self.p.clone(), q)
    }
}

impl<T: Scalar> fmt::Display for MixingProfile<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, q={})", self.p, self.q)
    }
}
