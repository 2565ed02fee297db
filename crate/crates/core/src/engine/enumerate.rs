//! Exact enumeration of the equilibrium set of a bilinear 2×2 game.
//!
//! A player's best response is `1` when their own slope is positive, `0` when
//! it is negative and the whole interval when it vanishes. The slope of the
//! row player is affine in `q`, so it changes sign at most once; likewise for
//! the column player in `p`. Splitting each axis at those roots gives cells on
//! which both best responses are constant, and intersecting the two graphs
//! cell by cell yields the equilibrium set as a finite union of closed boxes.

use std::fmt;

use super::nash::QuantumGame;
use super::operators::MixingConvention;
use super::payoff::{ClosedFormPayoff, PayoffVector};
use super::state::SquaredAmplitudes;
use crate::scalar::Scalar;

/// Closed interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Scalar> Interval<T> {
    pub fn point(x: T) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn unit() -> Self {
        Self {
            lo: T::zero(),
            hi: T::one(),
        }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &T) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn contains_within(&self, x: &T, slack: &T) -> bool {
        self.lo.clone() - slack.clone() <= *x && *x <= self.hi.clone() + slack.clone()
    }

    fn covers(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    fn touches(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    fn hull(&self, other: &Self) -> Self {
        Self {
            lo: if self.lo <= other.lo { self.lo.clone() } else { other.lo.clone() },
            hi: if self.hi >= other.hi { self.hi.clone() } else { other.hi.clone() },
        }
    }

    pub fn midpoint(&self) -> T {
        (self.lo.clone() + self.hi.clone()) / (T::one() + T::one())
    }
}

impl<T: Scalar> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegionKind {
    Point,
    Segment,
    Rectangle,
}

/// Product `p ∈ [p.lo, p.hi]`, `q ∈ [q.lo, q.hi]` of equilibrium profiles.
#[derive(Clone, Debug, PartialEq)]
pub struct EquilibriumRegion<T> {
    pub p: Interval<T>,
    pub q: Interval<T>,
}

impl<T: Scalar> EquilibriumRegion<T> {
    pub fn kind(&self) -> RegionKind {
        match (self.p.is_point(), self.q.is_point()) {
            (true, true) => RegionKind::Point,
            (false, false) => RegionKind::Rectangle,
            _ => RegionKind::Segment,
        }
    }

    pub fn contains(&self, p: &T, q: &T) -> bool {
        self.p.contains(p) && self.q.contains(q)
    }

    pub fn contains_within(&self, p: &T, q: &T, slack: &T) -> bool {
        self.p.contains_within(p, slack) && self.q.contains_within(q, slack)
    }

    /// Corner and centre profiles, for spot checks.
    pub fn sample_points(&self) -> Vec<(T, T)> {
        let mut pts = Vec::with_capacity(5);
        for p in [&self.p.lo, &self.p.hi] {
            for q in [&self.q.lo, &self.q.hi] {
                pts.push((p.clone(), q.clone()));
            }
        }
        pts.push((self.p.midpoint(), self.q.midpoint()));
        pts
    }

    fn covers(&self, other: &Self) -> bool {
        self.p.covers(&other.p) && self.q.covers(&other.q)
    }
}

impl<T: Scalar> fmt::Display for EquilibriumRegion<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} q={}", self.p, self.q)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum BestResponse {
    Zero,
    One,
    Any,
}

fn best_response<T: Scalar>(slope: &T) -> BestResponse {
    let tol = T::indifference_tolerance();
    if *slope > tol {
        BestResponse::One
    } else if *slope < -tol {
        BestResponse::Zero
    } else {
        BestResponse::Any
    }
}

/// Points and open gaps of `[0, 1]` on which `slope(x)` keeps its sign.
/// Each open gap is represented by its closure.
fn cells<T: Scalar>(constant: &T, linear: &T) -> Vec<Interval<T>> {
    let mut cuts = vec![T::zero(), T::one()];
    if !linear.approx_zero() {
        let root = -constant.clone() / linear.clone();
        if root > T::zero() && root < T::one() {
            cuts.insert(1, root);
        }
    }
    let mut out = Vec::with_capacity(2 * cuts.len() - 1);
    for (i, c) in cuts.iter().enumerate() {
        out.push(Interval::point(c.clone()));
        if let Some(next) = cuts.get(i + 1) {
            out.push(Interval {
                lo: c.clone(),
                hi: next.clone(),
            });
        }
    }
    out
}

/// Restriction of a best-response set to a cell, as a closed interval.
fn restrict<T: Scalar>(cell: &Interval<T>, br: BestResponse) -> Option<Interval<T>> {
    let open_gap = !cell.is_point();
    match br {
        BestResponse::Any => Some(cell.clone()),
        BestResponse::Zero if !open_gap && cell.lo == T::zero() => Some(Interval::point(T::zero())),
        BestResponse::One if !open_gap && cell.lo == T::one() => Some(Interval::point(T::one())),
        _ => None,
    }
}

pub fn equilibrium_regions<T: Scalar>(
    row: &ClosedFormPayoff<T>,
    col: &ClosedFormPayoff<T>,
) -> Vec<EquilibriumRegion<T>> {
    // Row slope in p is coeff_p + coeff_pq·q; column slope in q is coeff_q + coeff_pq·p.
    let q_cells = cells(&row.coeff_p, &row.coeff_pq);
    let p_cells = cells(&col.coeff_q, &col.coeff_pq);

    let mut regions = Vec::new();
    for q_cell in &q_cells {
        let row_br = best_response(&row.slope_p(&q_cell.midpoint()));
        for p_cell in &p_cells {
            let col_br = best_response(&col.slope_q(&p_cell.midpoint()));
            // p must lie in the p-cell and in the row's response to the q-cell.
            let p_part = restrict(p_cell, row_br);
            let q_part = restrict(q_cell, col_br);
            if let (Some(p), Some(q)) = (p_part, q_part) {
                regions.push(EquilibriumRegion { p, q });
            }
        }
    }
    simplify(regions)
}

/// Drops covered boxes and merges boxes that share one side and touch along
/// the other, until nothing changes.
fn simplify<T: Scalar>(mut regions: Vec<EquilibriumRegion<T>>) -> Vec<EquilibriumRegion<T>> {
    loop {
        let mut changed = false;
        'outer: for i in 0..regions.len() {
            for j in 0..regions.len() {
                if i == j {
                    continue;
                }
                let (a, b) = (&regions[i], &regions[j]);
                let merged = if a.covers(b) {
                    Some(a.clone())
                } else if a.p == b.p && a.q.touches(&b.q) {
                    Some(EquilibriumRegion {
                        p: a.p.clone(),
                        q: a.q.hull(&b.q),
                    })
                } else if a.q == b.q && a.p.touches(&b.p) {
                    Some(EquilibriumRegion {
                        p: a.p.hull(&b.p),
                        q: a.q.clone(),
                    })
                } else {
                    None
                };
                if let Some(m) = merged {
                    let (hi, lo) = if i > j { (i, j) } else { (j, i) };
                    regions.remove(hi);
                    regions.remove(lo);
                    regions.push(m);
                    changed = true;
                    break 'outer;
                }
            }
        }
        if !changed {
            break;
        }
    }
    regions.sort_by(|a, b| {
        let key = |r: &EquilibriumRegion<T>| (r.p.lo.as_f64(), r.q.lo.as_f64(), r.p.hi.as_f64(), r.q.hi.as_f64());
        key(a).partial_cmp(&key(b)).unwrap_or(std::cmp::Ordering::Equal)
    });
    regions
}

impl<T: Scalar> QuantumGame<T> {
    pub fn equilibria(&self) -> Vec<EquilibriumRegion<T>> {
        equilibrium_regions(self.row_payoff(), self.col_payoff())
    }
}

/// All equilibria of the quantized game in the default convention.
pub fn enumerate_equilibria<T: Scalar>(
    state: &SquaredAmplitudes<T>,
    vec_row: &PayoffVector<T>,
    vec_col: &PayoffVector<T>,
) -> Vec<EquilibriumRegion<T>> {
    QuantumGame::new(state, vec_row, vec_col, MixingConvention::default()).equilibria()
}
