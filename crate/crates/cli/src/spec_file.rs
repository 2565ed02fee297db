//! Game specification files.
//!
//! ```text
//! # weak policy maker, correct-expectation state
//! [game]
//! mode = builtin-bg
//! theta = 1
//! a = 2
//! b = 2
//!
//! [quantum]
//! squared = 0.8, 0, 0, 0.2     # α², γ², δ², β²
//!
//! [candidate]
//! p = 1
//! q = 1
//! ```
//!
//! See `docs/spec-format.md` for the full grammar.

use std::fmt::{self, Write as _};

use num_complex::Complex;
use num_rational::Rational64;
use num_traits::{CheckedAdd, CheckedMul, One, Signed, Zero};
use thiserror::Error;

use qbg_core::classical::{build_bg_game, BimatrixGame, PolicyMaker, PolicyParams};
use qbg_core::engine::{MixingProfile, PayoffVector, QuantumInitialState, SquaredAmplitudes};

use crate::number::{parse_complex, parse_rational, render_rational, to_f64, ExactComplex};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum SpecError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("[{section}]: missing required key `{key}`")]
    MissingKey { section: &'static str, key: &'static str },
    #[error("missing required section [{0}]")]
    MissingSection(&'static str),
    #[error("[{section}]: squared magnitudes sum to {sum}, expected 1 (within 1e-9)")]
    Normalization { section: &'static str, sum: f64 },
    #[error("[{section}]: {message}")]
    Invalid { section: &'static str, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GameDef {
    BuiltinBg {
        theta: u8,
        a: Rational64,
        b: Rational64,
    },
    Custom {
        row_labels: [String; 2],
        col_labels: [String; 2],
        /// LL, LH, HL, HH
        row_payoffs: [Rational64; 4],
        col_payoffs: [Rational64; 4],
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuantumDef {
    Amplitudes([ExactComplex; 4]),
    /// α², γ², δ², β²
    Squared([Rational64; 4]),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameSpec {
    pub game: GameDef,
    pub quantum: Option<QuantumDef>,
    pub candidate: Option<(Rational64, Rational64)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Section {
    Game,
    Quantum,
    Candidate,
}

impl Section {
    fn name(self) -> &'static str {
        match self {
            Section::Game => "game",
            Section::Quantum => "quantum",
            Section::Candidate => "candidate",
        }
    }

    fn keys(self) -> &'static [&'static str] {
        match self {
            Section::Game => &["mode", "theta", "a", "b", "row_labels", "col_labels", "row_payoffs", "col_payoffs"],
            Section::Quantum => &["amplitudes", "squared"],
            Section::Candidate => &["p", "q"],
        }
    }
}

struct Entry<'a> {
    line: usize,
    column: usize,
    value: &'a str,
}

impl Entry<'_> {
    fn error(&self, message: impl Into<String>) -> SpecError {
        SpecError::Syntax {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn rational(&self) -> Result<Rational64, SpecError> {
        parse_rational(self.value).map_err(|m| self.error(m))
    }

    fn list<T>(&self, parse: impl Fn(&str) -> Result<T, String>) -> Result<[T; 4], SpecError> {
        let items: Vec<&str> = self.value.split(',').map(str::trim).collect();
        if items.len() != 4 {
            return Err(self.error(format!("expected 4 comma-separated values, found {}", items.len())));
        }
        let parsed = items.into_iter().map(parse).collect::<Result<Vec<T>, String>>();
        let parsed = parsed.map_err(|m| self.error(m))?;
        Ok(parsed.try_into().unwrap_or_else(|_| unreachable!()))
    }

    fn labels(&self) -> Result<[String; 2], SpecError> {
        let items: Vec<&str> = self.value.split(',').map(str::trim).collect();
        let ok = |s: &str| !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '-');
        match items.as_slice() {
            [a, b] if ok(a) && ok(b) && a != b => Ok([a.to_string(), b.to_string()]),
            _ => Err(self.error("expected two distinct labels (letters, digits, `_`, `-`)")),
        }
    }
}

#[derive(Default)]
struct Sections<'a> {
    game: Vec<(&'a str, Entry<'a>)>,
    quantum: Option<Vec<(&'a str, Entry<'a>)>>,
    candidate: Option<Vec<(&'a str, Entry<'a>)>>,
    seen_game: bool,
}

fn find<'s, 'a>(entries: &'s [(&'a str, Entry<'a>)], key: &str) -> Option<&'s Entry<'a>> {
    entries.iter().find(|(k, _)| *k == key).map(|(_, e)| e)
}

fn require<'s, 'a>(
    entries: &'s [(&'a str, Entry<'a>)],
    section: &'static str,
    key: &'static str,
) -> Result<&'s Entry<'a>, SpecError> {
    find(entries, key).ok_or(SpecError::MissingKey { section, key })
}

pub fn parse_spec(text: &str) -> Result<GameSpec, SpecError> {
    let mut sections = Sections::default();
    let mut current: Option<Section> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        let err = |column: usize, message: String| SpecError::Syntax { line, column, message };

        if let Some(rest) = trimmed.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| err(indent + trimmed.len(), "expected `]`".into()))?
                .trim();
            let section = match name {
                "game" => Section::Game,
                "quantum" => Section::Quantum,
                "candidate" => Section::Candidate,
                other => return Err(err(indent + 2, format!("unknown section [{other}]"))),
            };
            let duplicate = match section {
                Section::Game => std::mem::replace(&mut sections.seen_game, true),
                Section::Quantum => sections.quantum.replace(Vec::new()).is_some(),
                Section::Candidate => sections.candidate.replace(Vec::new()).is_some(),
            };
            if duplicate {
                return Err(err(indent + 1, format!("section [{name}] appears twice")));
            }
            current = Some(section);
            continue;
        }

        let Some(eq) = trimmed.find('=') else {
            return Err(err(indent + 1, "expected `key = value` or `[section]`".into()));
        };
        let key = trimmed[..eq].trim();
        let value_raw = &trimmed[eq + 1..];
        let value = value_raw.trim();
        let value_column = indent + eq + 2 + (value_raw.len() - value_raw.trim_start().len());
        let Some(section) = current else {
            return Err(err(indent + 1, format!("key `{key}` appears before any section header")));
        };
        if !section.keys().contains(&key) {
            return Err(err(indent + 1, format!("unknown key `{key}` in [{}]", section.name())));
        }
        if value.is_empty() {
            return Err(err(value_column, format!("key `{key}` has no value")));
        }
        let entries = match section {
            Section::Game => &mut sections.game,
            Section::Quantum => sections.quantum.as_mut().expect("section opened"),
            Section::Candidate => sections.candidate.as_mut().expect("section opened"),
        };
        if entries.iter().any(|(k, _)| *k == key) {
            return Err(err(indent + 1, format!("duplicate key `{key}`")));
        }
        entries.push((
            key,
            Entry {
                line,
                column: value_column,
                value,
            },
        ));
    }

    if !sections.seen_game {
        return Err(SpecError::MissingSection("game"));
    }
    Ok(GameSpec {
        game: build_game(&sections.game)?,
        quantum: sections.quantum.as_deref().map(build_quantum).transpose()?,
        candidate: sections.candidate.as_deref().map(build_candidate).transpose()?,
    })
}

fn reject_keys(entries: &[(&str, Entry<'_>)], keys: &[&str], mode: &str) -> Result<(), SpecError> {
    for key in keys {
        if let Some(e) = find(entries, key) {
            return Err(e.error(format!("key `{key}` is not allowed with mode = {mode}")));
        }
    }
    Ok(())
}

fn build_game(entries: &[(&str, Entry<'_>)]) -> Result<GameDef, SpecError> {
    const S: &str = "game";
    let mode = require(entries, S, "mode")?;
    match mode.value {
        "builtin-bg" => {
            reject_keys(entries, &["row_labels", "col_labels", "row_payoffs", "col_payoffs"], mode.value)?;
            let theta_entry = require(entries, S, "theta")?;
            let theta = match theta_entry.value {
                "0" => 0,
                "1" => 1,
                _ => return Err(theta_entry.error("theta must be 0 or 1")),
            };
            let positive = |key: &'static str| -> Result<Rational64, SpecError> {
                let e = require(entries, S, key)?;
                let v = e.rational()?;
                if v.is_positive() {
                    Ok(v)
                } else {
                    Err(e.error(format!("`{key}` must be positive")))
                }
            };
            Ok(GameDef::BuiltinBg {
                theta,
                a: positive("a")?,
                b: positive("b")?,
            })
        }
        "custom" => {
            reject_keys(entries, &["theta", "a", "b"], mode.value)?;
            let default_labels = || ["L".to_string(), "H".to_string()];
            let labels = |key| find(entries, key).map(Entry::labels).transpose();
            Ok(GameDef::Custom {
                row_labels: labels("row_labels")?.unwrap_or_else(default_labels),
                col_labels: labels("col_labels")?.unwrap_or_else(default_labels),
                row_payoffs: require(entries, S, "row_payoffs")?.list(parse_rational)?,
                col_payoffs: require(entries, S, "col_payoffs")?.list(parse_rational)?,
            })
        }
        other => Err(mode.error(format!("unknown mode `{other}` (expected builtin-bg or custom)"))),
    }
}

fn build_quantum(entries: &[(&str, Entry<'_>)]) -> Result<QuantumDef, SpecError> {
    const S: &str = "quantum";
    let check_sum = |sum: Rational64| {
        let tolerance = Rational64::new(1, 1_000_000_000);
        if (sum - Rational64::one()).abs() <= tolerance {
            Ok(())
        } else {
            Err(SpecError::Normalization { section: S, sum: to_f64(&sum) })
        }
    };
    match (find(entries, "amplitudes"), find(entries, "squared")) {
        (Some(_), Some(e)) => Err(e.error("give either `amplitudes` or `squared`, not both")),
        (None, None) => Err(SpecError::MissingKey { section: S, key: "squared" }),
        (Some(e), None) => {
            let amps = e.list(parse_complex)?;
            let squares = amps
                .iter()
                .map(|z| z.re.checked_mul(&z.re)?.checked_add(&z.im.checked_mul(&z.im)?));
            let sum = squares
                .collect::<Option<Vec<_>>>()
                .and_then(|v| checked_sum(v.into_iter()))
                .ok_or_else(|| e.error("amplitudes are out of range"))?;
            check_sum(sum)?;
            Ok(QuantumDef::Amplitudes(amps))
        }
        (None, Some(e)) => {
            let values = e.list(parse_rational)?;
            if values.iter().any(|v| v.is_negative()) {
                return Err(e.error("squared magnitudes must be nonnegative"));
            }
            let sum = checked_sum(values.iter().copied()).ok_or_else(|| e.error("values are out of range"))?;
            check_sum(sum)?;
            Ok(QuantumDef::Squared(values))
        }
    }
}

fn checked_sum(values: impl Iterator<Item = Rational64>) -> Option<Rational64> {
    values.into_iter().try_fold(Rational64::zero(), |acc, v| acc.checked_add(&v))
}

fn build_candidate(entries: &[(&str, Entry<'_>)]) -> Result<(Rational64, Rational64), SpecError> {
    let unit = |key: &'static str| -> Result<Rational64, SpecError> {
        let e = require(entries, "candidate", key)?;
        let v = e.rational()?;
        if v.is_negative() || v > Rational64::one() {
            return Err(e.error(format!("`{key}` must lie in [0, 1]")));
        }
        Ok(v)
    };
    Ok((unit("p")?, unit("q")?))
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn join_rationals(items: &[Rational64]) -> String {
    items.iter().map(render_rational).collect::<Vec<_>>().join(", ")
}

/// Writes a spec back out in canonical form.
pub fn render(spec: &GameSpec) -> String {
    let mut out = String::from("[game]\n");
    match &spec.game {
        GameDef::BuiltinBg { theta, a, b } => {
            let _ = write!(
                out,
                "mode = builtin-bg\ntheta = {theta}\na = {}\nb = {}\n",
                render_rational(a),
                render_rational(b)
            );
        }
        GameDef::Custom {
            row_labels,
            col_labels,
            row_payoffs,
            col_payoffs,
        } => {
            let _ = write!(
                out,
                "mode = custom\nrow_labels = {}\ncol_labels = {}\nrow_payoffs = {}\ncol_payoffs = {}\n",
                join(row_labels),
                join(col_labels),
                join_rationals(row_payoffs),
                join_rationals(col_payoffs)
            );
        }
    }
    match &spec.quantum {
        Some(QuantumDef::Amplitudes(amps)) => {
            let _ = write!(out, "\n[quantum]\namplitudes = {}\n", join(amps));
        }
        Some(QuantumDef::Squared(values)) => {
            let _ = write!(out, "\n[quantum]\nsquared = {}\n", join_rationals(values));
        }
        None => {}
    }
    if let Some((p, q)) = &spec.candidate {
        let _ = write!(out, "\n[candidate]\np = {}\nq = {}\n", render_rational(p), render_rational(q));
    }
    out
}

impl GameSpec {
    /// Row labels, column labels.
    pub fn labels(&self) -> ([String; 2], [String; 2]) {
        match &self.game {
            GameDef::BuiltinBg { .. } => (["L".into(), "H".into()], ["L".into(), "H".into()]),
            GameDef::Custom {
                row_labels, col_labels, ..
            } => (row_labels.clone(), col_labels.clone()),
        }
    }

    /// The classical table, exactly.
    pub fn exact_game(&self) -> Result<BimatrixGame<Rational64>, SpecError> {
        let invalid = |e: qbg_core::Error| SpecError::Invalid {
            section: "game",
            message: e.to_string(),
        };
        match &self.game {
            GameDef::BuiltinBg { theta, a, b } => {
                let kind = PolicyMaker::from_theta(*theta).map_err(invalid)?;
                let params = PolicyParams::new(kind, *a, *b).map_err(invalid)?;
                Ok(build_bg_game(&params))
            }
            GameDef::Custom {
                row_labels,
                col_labels,
                row_payoffs: r,
                col_payoffs: c,
            } => BimatrixGame::new(
                row_labels.clone(),
                col_labels.clone(),
                [[(r[0], c[0]), (r[1], c[1])], [(r[2], c[2]), (r[3], c[3])]],
            )
            .map_err(invalid),
        }
    }

    /// Payoff vectors in basis order, as floats.
    pub fn payoff_vectors(&self) -> Result<(PayoffVector<f64>, PayoffVector<f64>), SpecError> {
        let game = self.exact_game()?;
        Ok((
            PayoffVector(game.row_vector().map(|x| to_f64(&x))),
            PayoffVector(game.col_vector().map(|x| to_f64(&x))),
        ))
    }

    /// Initial state, renormalized to unit length.
    pub fn state(&self) -> Option<QuantumInitialState<f64>> {
        let amps = match self.quantum.as_ref()? {
            QuantumDef::Amplitudes(amps) => amps.map(|z| Complex::new(to_f64(&z.re), to_f64(&z.im))),
            QuantumDef::Squared(values) => values.map(|v| Complex::new(to_f64(&v).sqrt(), 0.0)),
        };
        Some(QuantumInitialState::normalized(amps).expect("normalization was checked when parsing"))
    }

    /// Squared magnitudes, renormalized to sum to 1.
    pub fn squared(&self) -> Option<SquaredAmplitudes<f64>> {
        let values = match self.quantum.as_ref()? {
            QuantumDef::Amplitudes(amps) => amps.map(|z| z.norm_sqr()),
            QuantumDef::Squared(values) => *values,
        };
        let sum = values.iter().fold(Rational64::zero(), |a, v| a + v);
        let [a, g, d, b] = values.map(|v| to_f64(&(v / sum)));
        Some(SquaredAmplitudes::new(a, g, d, b).expect("normalization was checked when parsing"))
    }

    pub fn candidate_profile(&self) -> Option<MixingProfile<f64>> {
        let (p, q) = self.candidate.as_ref()?;
        Some(MixingProfile::new(to_f64(p), to_f64(q)).expect("candidate was range-checked when parsing"))
    }
}
