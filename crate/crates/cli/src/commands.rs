//! Subcommands. Each returns the text to print; `main` only does I/O.

use std::fmt::Write as _;

use qbg_core::classical::{find_dominated_cols, find_dominated_rows, find_pure_nash, DominanceKind, Dominated, PureProfile};
use qbg_core::engine::{
    expected_payoff_trace, final_density_with, MixingConvention, MixingProfile, Player, QuantumGame, RegionKind,
};
use thiserror::Error;

use crate::number::{csv_num, human_num, to_f64};
use crate::spec_file::{GameSpec, SpecError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("spec error: {0}")]
    Spec(#[from] SpecError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub csv: bool,
    pub convention: MixingConvention,
}

/// Left-aligned columns separated by two spaces.
pub(crate) fn align(rows: &[Vec<String>]) -> String {
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..width)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            line.extend(std::iter::repeat_n(' ', widths[c] - cell.chars().count()));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn dominated_list(found: &[Dominated], labels: &[String; 2]) -> String {
    if found.is_empty() {
        return "none".into();
    }
    found
        .iter()
        .map(|d| {
            let kind = match d.kind {
                DominanceKind::Strict => "strictly",
                DominanceKind::Weak => "weakly",
            };
            format!("{} ({kind})", labels[d.strategy.index()])
        })
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn classical(spec: &GameSpec, opts: &Options) -> Result<String, CliError> {
    let game = spec.exact_game()?;
    let (rows, cols) = (game.row_labels(), game.col_labels());
    let mut out = String::new();

    if opts.csv {
        out.push_str("row_label,col_label,row_payoff,col_payoff\n");
        for profile in PureProfile::all() {
            let (r, c) = game.cell(profile);
            let _ = writeln!(
                out,
                "{},{},{},{}",
                rows[profile.row.index()],
                cols[profile.col.index()],
                csv_num(to_f64(r)),
                csv_num(to_f64(c))
            );
        }
        return Ok(out);
    }

    let mut table = vec![std::iter::once(String::new()).chain(cols.iter().cloned()).collect::<Vec<_>>()];
    for (i, label) in rows.iter().enumerate() {
        let mut line = vec![label.clone()];
        for j in 0..2 {
            let (r, c) = &game.payoffs()[i][j];
            line.push(format!("({}, {})", human_num(to_f64(r)), human_num(to_f64(c))));
        }
        table.push(line);
    }
    out.push_str("payoffs (row, column):\n");
    out.push_str(&align(&table));

    let nash = find_pure_nash(&game);
    let nash_text = if nash.is_empty() {
        "none".to_string()
    } else {
        nash.iter()
            .map(|p| format!("({},{})", rows[p.row.index()], cols[p.col.index()]))
            .collect::<Vec<_>>()
            .join(", ")
    };
    let _ = writeln!(out, "Nash: {nash_text}");
    let _ = writeln!(out, "Dominated rows: {}", dominated_list(&find_dominated_rows(&game), rows));
    let _ = writeln!(out, "Dominated columns: {}", dominated_list(&find_dominated_cols(&game), cols));
    Ok(out)
}

fn quantum_game(spec: &GameSpec, opts: &Options) -> Result<QuantumGame<f64>, CliError> {
    let squared = spec
        .squared()
        .ok_or_else(|| CliError::Usage("this command needs a [quantum] section in the spec".into()))?;
    let (m, u) = spec.payoff_vectors()?;
    Ok(QuantumGame::new(&squared, &m, &u, opts.convention))
}

pub fn quantize(spec: &GameSpec, opts: &Options) -> Result<String, CliError> {
    let game = quantum_game(spec, opts)?;
    let state = spec.state().expect("quantum block present");
    let squared = spec.squared().expect("quantum block present");
    let (m, u) = spec.payoff_vectors()?;
    let candidate = spec.candidate_profile();

    let traced = |mix: &MixingProfile<f64>| -> Result<(f64, f64), CliError> {
        let rho = final_density_with(&state, mix, opts.convention);
        let value = |v| expected_payoff_trace(v, &rho).map_err(|e| CliError::Usage(e.to_string()));
        Ok((value(&m)?, value(&u)?))
    };

    let mut out = String::new();
    if opts.csv {
        let num = |x: f64| csv_num(x);
        out.push_str("key,value\n");
        let _ = writeln!(out, "convention,{}", opts.convention.name());
        let [a, g, d, b] = squared.to_array();
        for (name, v) in [("alpha_sq", a), ("gamma_sq", g), ("delta_sq", d), ("beta_sq", b)] {
            let _ = writeln!(out, "{name},{}", num(v));
        }
        for (who, cf) in [("row", game.row_payoff()), ("col", game.col_payoff())] {
            for (name, v) in ["constant", "coeff_p", "coeff_q", "coeff_pq"].iter().zip(cf.coefficients()) {
                let _ = writeln!(out, "{who}_{name},{}", num(v));
            }
        }
        if let Some(mix) = &candidate {
            let report = game.verify(mix);
            let (tm, tu) = traced(mix)?;
            let _ = writeln!(out, "candidate_p,{}\ncandidate_q,{}", num(*mix.p()), num(*mix.q()));
            let _ = writeln!(out, "row_payoff_closed_form,{}\nrow_payoff_trace,{}", num(report.payoffs.0), num(tm));
            let _ = writeln!(out, "col_payoff_closed_form,{}\ncol_payoff_trace,{}", num(report.payoffs.1), num(tu));
            for check in &report.checks {
                let var = if check.player == Player::Row { "p" } else { "q" };
                let _ = writeln!(out, "{}_gap_{var}{},{}", check.player, check.deviation, num(check.gap));
            }
            let _ = writeln!(out, "nash,{}\nnash_strict,{}", report.weak_nash, report.strict_nash);
        }
        return Ok(out);
    }

    let _ = writeln!(out, "convention: {}", opts.convention.name());
    let [a, g, d, b] = squared.to_array().map(human_num);
    let _ = writeln!(out, "state: α²={a} γ²={g} δ²={d} β²={b}");
    let formula = |cf: &qbg_core::engine::ClosedFormPayoff<f64>| {
        let [c0, cp, cq, cpq] = cf.coefficients().map(human_num);
        format!("{c0} + ({cp})·p + ({cq})·q + ({cpq})·pq")
    };
    let _ = writeln!(out, "row payoff:    {}", formula(game.row_payoff()));
    let _ = writeln!(out, "column payoff: {}", formula(game.col_payoff()));

    if let Some(mix) = &candidate {
        let report = game.verify(mix);
        let (tm, tu) = traced(mix)?;
        let _ = writeln!(out, "\ncandidate: p={} q={}", human_num(*mix.p()), human_num(*mix.q()));
        out.push_str(&align(&[
            vec!["".into(), "row".into(), "column".into()],
            vec!["closed form".into(), human_num(report.payoffs.0), human_num(report.payoffs.1)],
            vec!["trace".into(), human_num(tm), human_num(tu)],
        ]));
        let mut gaps = vec![vec!["deviation".into(), "gap".into(), "weak".into(), "strict".into()]];
        for check in &report.checks {
            let var = if check.player == Player::Row { "p" } else { "q" };
            gaps.push(vec![
                format!("{} {var}={}", check.player, check.deviation),
                human_num(check.gap),
                if check.weak_ok { "ok" } else { "violated" }.into(),
                if check.strict_ok { "ok" } else { "violated" }.into(),
            ]);
        }
        out.push_str(&align(&gaps));
        let _ = writeln!(out, "Nash (weak): {}\nNash (strict): {}", report.weak_nash, report.strict_nash);
    }
    Ok(out)
}

fn kind_name(kind: RegionKind) -> &'static str {
    match kind {
        RegionKind::Point => "point",
        RegionKind::Segment => "segment",
        RegionKind::Rectangle => "rectangle",
    }
}

pub fn equilibria(spec: &GameSpec, opts: &Options) -> Result<String, CliError> {
    let game = quantum_game(spec, opts)?;
    let regions = game.equilibria();
    let mut out = String::new();
    if opts.csv {
        out.push_str("p_lo,p_hi,q_lo,q_hi,kind,payoff_M,payoff_U\n");
        for r in &regions {
            let (m, u) = game.payoffs(&MixingProfile::new(r.p.lo, r.q.lo).expect("region in unit square"));
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                csv_num(r.p.lo),
                csv_num(r.p.hi),
                csv_num(r.q.lo),
                csv_num(r.q.hi),
                kind_name(r.kind()),
                csv_num(m),
                csv_num(u)
            );
        }
        return Ok(out);
    }
    let interval = |lo: f64, hi: f64| {
        if lo == hi {
            human_num(lo)
        } else {
            format!("[{}, {}]", human_num(lo), human_num(hi))
        }
    };
    let _ = writeln!(out, "equilibrium regions ({} convention): {}", opts.convention.name(), regions.len());
    let mut table = vec![vec!["p".into(), "q".into(), "kind".into(), "payoffs at (p_lo, q_lo)".into()]];
    for r in &regions {
        let (m, u) = game.payoffs(&MixingProfile::new(r.p.lo, r.q.lo).expect("region in unit square"));
        table.push(vec![
            interval(r.p.lo, r.p.hi),
            interval(r.q.lo, r.q.hi),
            kind_name(r.kind()).into(),
            format!("({}, {})", human_num(m), human_num(u)),
        ]);
    }
    out.push_str(&align(&table));
    Ok(out)
}
