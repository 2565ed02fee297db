//! Parameter sweeps over the mixing probabilities and the squared amplitudes.
//!
//! `α²` is never swept directly: it absorbs whatever the other three leave,
//! so a point with `γ² + δ² + β² > 1` is rejected.

use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;

use qbg_core::engine::{MixingProfile, QuantumGame, SquaredAmplitudes};

use crate::commands::{CliError, Options};
use crate::number::{csv_num, parse_rational, to_f64};
use crate::spec_file::GameSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepVar {
    P,
    Q,
    BetaSq,
    GammaSq,
    DeltaSq,
}

impl SweepVar {
    pub fn name(self) -> &'static str {
        match self {
            SweepVar::P => "p",
            SweepVar::Q => "q",
            SweepVar::BetaSq => "beta_sq",
            SweepVar::GammaSq => "gamma_sq",
            SweepVar::DeltaSq => "delta_sq",
        }
    }

    fn is_state(self) -> bool {
        !matches!(self, SweepVar::P | SweepVar::Q)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Axis {
    pub var: SweepVar,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Axis {
    pub fn value(&self, i: usize) -> f64 {
        if self.steps == 1 {
            self.start
        } else if i + 1 == self.steps {
            self.stop
        } else {
            self.start + (self.stop - self.start) * i as f64 / (self.steps - 1) as f64
        }
    }
}

impl FromStr for Axis {
    type Err = String;

    /// `name=start:stop:steps`, e.g. `beta_sq=0:1:11`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, range) = s.split_once('=').ok_or_else(|| format!("axis `{s}`: expected name=start:stop:steps"))?;
        let var = match name.trim() {
            "p" => SweepVar::P,
            "q" => SweepVar::Q,
            "beta_sq" => SweepVar::BetaSq,
            "gamma_sq" => SweepVar::GammaSq,
            "delta_sq" => SweepVar::DeltaSq,
            other => return Err(format!("unknown axis `{other}` (expected p, q, beta_sq, gamma_sq or delta_sq)")),
        };
        let parts: Vec<&str> = range.split(':').collect();
        let [start, stop, steps] = parts.as_slice() else {
            return Err(format!("axis `{s}`: expected name=start:stop:steps"));
        };
        let bound = |text: &str| -> Result<f64, String> {
            let v = to_f64(&parse_rational(text).map_err(|e| format!("axis `{s}`: {e}"))?);
            if (0.0..=1.0).contains(&v) {
                Ok(v)
            } else {
                Err(format!("axis `{s}`: {v} is outside [0, 1]"))
            }
        };
        let steps: usize = steps
            .trim()
            .parse()
            .ok()
            .filter(|n| *n >= 1)
            .ok_or_else(|| format!("axis `{s}`: steps must be a positive integer"))?;
        Ok(Axis {
            var,
            start: bound(start)?,
            stop: bound(stop)?,
            steps,
        })
    }
}

/// Fully resolved grid point.
struct Point {
    swept: Vec<f64>,
    state: SquaredAmplitudes<f64>,
    mix: MixingProfile<f64>,
}

fn resolve(spec: &GameSpec, axes: &[Axis]) -> Result<Vec<Point>, CliError> {
    let usage = |m: String| CliError::Usage(m);
    match axes.len() {
        0 => return Err(usage("sweep needs at least one --axis".into())),
        1 | 2 => {}
        n => return Err(usage(format!("over-constrained sweep: {n} axes given, at most 2 allowed"))),
    }
    if axes.len() == 2 && axes[0].var == axes[1].var {
        return Err(usage(format!("over-constrained sweep: axis `{}` given twice", axes[0].var.name())));
    }
    let base_state = spec
        .squared()
        .ok_or_else(|| usage("under-constrained sweep: the spec has no [quantum] section".into()))?;
    let swept = |v: SweepVar| axes.iter().any(|a| a.var == v);
    let candidate = spec.candidate_profile();
    for (var, value) in [(SweepVar::P, candidate.as_ref().map(|c| *c.p())), (SweepVar::Q, candidate.as_ref().map(|c| *c.q()))] {
        if !swept(var) && value.is_none() {
            return Err(usage(format!(
                "under-constrained sweep: `{}` is neither swept nor given in [candidate]",
                var.name()
            )));
        }
    }

    let (outer, inner) = (&axes[0], axes.get(1));
    let inner_steps = inner.map_or(1, |a| a.steps);
    let mut points = Vec::with_capacity(outer.steps * inner_steps);
    for i in 0..outer.steps {
        for j in 0..inner_steps {
            let mut coords = vec![(outer.var, outer.value(i))];
            if let Some(a) = inner {
                coords.push((a.var, a.value(j)));
            }
            let get = |var: SweepVar, default: f64| coords.iter().find(|(v, _)| *v == var).map_or(default, |c| c.1);
            let [_, g0, d0, b0] = base_state.to_array();
            let (gamma_sq, delta_sq, beta_sq) =
                (get(SweepVar::GammaSq, g0), get(SweepVar::DeltaSq, d0), get(SweepVar::BetaSq, b0));
            let state = if coords.iter().any(|(v, _)| v.is_state()) {
                let rest = gamma_sq + delta_sq + beta_sq;
                let alpha_sq = 1.0 - rest;
                if alpha_sq < -1e-12 {
                    let at: Vec<String> = coords.iter().map(|(v, x)| format!("{}={}", v.name(), csv_num(*x))).collect();
                    return Err(usage(format!(
                        "over-constrained sweep: γ²+δ²+β² = {} exceeds 1 at {}",
                        csv_num(rest),
                        at.join(", ")
                    )));
                }
                SquaredAmplitudes::new(alpha_sq.max(0.0), gamma_sq, delta_sq, beta_sq)
                    .map_err(|e| usage(format!("invalid state in sweep: {e}")))?
            } else {
                base_state.clone()
            };
            let p = get(SweepVar::P, candidate.as_ref().map_or(0.0, |c| *c.p()));
            let q = get(SweepVar::Q, candidate.as_ref().map_or(0.0, |c| *c.q()));
            let mix = MixingProfile::new(p, q).map_err(|e| usage(e.to_string()))?;
            points.push(Point {
                swept: coords.iter().map(|c| c.1).collect(),
                state,
                mix,
            });
        }
    }
    Ok(points)
}

/// CSV rows in grid order: outer axis slow, inner axis fast.
pub fn sweep(spec: &GameSpec, opts: &Options, axes: &[Axis]) -> Result<String, CliError> {
    let points = resolve(spec, axes)?;
    let (m, u) = spec.payoff_vectors()?;
    let rows: Vec<String> = points
        .par_iter()
        .map(|pt| {
            let report = QuantumGame::new(&pt.state, &m, &u, opts.convention).verify(&pt.mix);
            let mut row: Vec<String> = pt.swept.iter().map(|x| csv_num(*x)).collect();
            row.push(csv_num(report.payoffs.0));
            row.push(csv_num(report.payoffs.1));
            row.push(report.weak_nash.to_string());
            row.push(report.strict_nash.to_string());
            row.join(",")
        })
        .collect();

    let mut out = String::new();
    let header: Vec<&str> = axes.iter().map(|a| a.var.name()).collect();
    let _ = writeln!(out, "{},payoff_M,payoff_U,nash,nash_strict", header.join(","));
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    Ok(out)
}
