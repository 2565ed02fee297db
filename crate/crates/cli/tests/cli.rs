use std::path::PathBuf;
use std::process::{Command, Output};

use qbg_cli::spec_file::parse_spec;
use qbg_core::engine::{expected_payoff_trace, final_density, MixingProfile};

const WEAK: &str = "[game]\nmode=builtin-bg\ntheta=1\na=2\nb=2\n";

fn spec_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qbg-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(format!("{name}.spec"));
    std::fs::write(&path, text).unwrap();
    path
}

fn qbg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbg")).args(args).output().unwrap()
}

fn qbg_spec(name: &str, text: &str, args: &[&str]) -> Output {
    let path = spec_file(name, text);
    let mut full = vec!["--spec", path.to_str().unwrap()];
    full.extend_from_slice(args);
    qbg(&full)
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

/// `key,value` CSV into a lookup.
fn kv(out: &Output) -> std::collections::HashMap<String, String> {
    stdout(out)
        .lines()
        .skip(1)
        .map(|l| {
            let (k, v) = l.split_once(',').unwrap();
            (k.to_string(), v.to_string())
        })
        .collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn classical_weak_and_strong_tables() {
    let out = qbg_spec("weak", WEAK, &["classical"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("L  (0, 0)   (-2, -1)"), "{text}");
    assert!(text.contains("H  (1, -1)  (-1, 0)"), "{text}");
    assert!(text.contains("Nash: (H,H)"));

    let out = qbg_spec("strong", "[game]\nmode=builtin-bg\ntheta=0\na=2\nb=2\n", &["classical"]);
    let text = stdout(&out);
    assert!(text.contains("Nash: (L,L)"), "{text}");
    assert!(text.contains("Dominated rows: H (strictly)"), "{text}");
}

#[test]
fn classical_custom_zero_game_has_all_profiles_nash() {
    let text = "[game]\nmode=custom\nrow_payoffs=0,0,0,0\ncol_payoffs=0,0,0,0\n";
    let out = qbg_spec("zero", text, &["classical"]);
    assert!(stdout(&out).contains("Nash: (L,L), (L,H), (H,L), (H,H)"));
}

#[test]
fn classical_csv_is_exact() {
    let out = qbg_spec("weak-csv", WEAK, &["--csv", "classical"]);
    assert_eq!(
        stdout(&out),
        "row_label,col_label,row_payoff,col_payoff\nL,L,0,0\nL,H,-2,-1\nH,L,1,-1\nH,H,-1,0\n"
    );
    let custom = "[game]\nmode=custom\nrow_labels=C,D\ncol_labels=c,d\nrow_payoffs=3,0,5,1\ncol_payoffs=3,5,0,1/3\n";
    let out = qbg_spec("pd-csv", custom, &["classical", "--csv"]);
    assert_eq!(
        stdout(&out),
        "row_label,col_label,row_payoff,col_payoff\nC,c,3,3\nC,d,0,5\nD,c,5,0\nD,d,1,0.333333333333\n"
    );
}

#[test]
fn quantize_strategy_ii() {
    let text = format!("{WEAK}[quantum]\nsquared=0.8,0,0,0.2\n[candidate]\np=1\nq=1\n");
    let out = qbg_spec("s2", &text, &["--csv", "quantize"]);
    assert_eq!(out.status.code(), Some(0));
    let v = kv(&out);
    assert!((num(&v["row_payoff_closed_form"]) + 0.2).abs() < 1e-12);
    assert!((num(&v["row_payoff_trace"]) + 0.2).abs() < 1e-12);
    assert!(num(&v["col_payoff_closed_form"]).abs() < 1e-12);
    assert_eq!(v["nash"], "true");
}

#[test]
fn quantize_strategy_i() {
    let text = format!("{WEAK}[quantum]\namplitudes=0,0.6,-0.48+0.64i,0\n[candidate]\np=1\nq=1\n");
    let out = qbg_spec("s1", &text, &["--csv", "quantize"]);
    let v = kv(&out);
    assert!((num(&v["col_payoff_closed_form"]) + 1.0).abs() < 1e-12);
    assert!((num(&v["col_payoff_trace"]) + 1.0).abs() < 1e-12);
    assert_eq!(v["nash"], "false");
}

#[test]
fn quantize_even_mixing() {
    let text = format!("{WEAK}[quantum]\nsquared=0.1,0.2,0.3,0.4\n[candidate]\np=1/2\nq=1/2\n");
    let out = qbg_spec("half", &text, &["--csv", "quantize"]);
    let v = kv(&out);
    for key in ["row_payoff_closed_form", "row_payoff_trace", "col_payoff_closed_form", "col_payoff_trace"] {
        assert!((num(&v[key]) + 0.5).abs() < 1e-12, "{key}");
    }
}

#[test]
fn quantize_human_report() {
    let text = format!("{WEAK}[quantum]\nsquared=0.8,0,0,0.2\n[candidate]\np=1\nq=1\n");
    let out = qbg_spec("s2-human", &text, &["quantize"]);
    let text = stdout(&out);
    assert!(text.contains("closed form  -0.2  0"), "{text}");
    assert!(text.contains("Nash (weak): true"));
}

#[test]
fn local_convention_changes_the_verdict() {
    let text = format!("{WEAK}[quantum]\nsquared=0.8,0,0,0.2\n[candidate]\np=1\nq=1\n");
    let out = qbg_spec("s2-local", &text, &["--csv", "--convention", "local", "quantize"]);
    let v = kv(&out);
    assert_eq!(v["convention"], "local");
    assert_eq!(v["nash"], "false");
    assert_eq!(qbg(&["--convention", "sideways", "reproduce"]).status.code(), Some(2));
    assert_eq!(qbg(&["--convention", "local", "reproduce"]).status.code(), Some(2));
}

#[test]
fn missing_quantum_block_exits_2() {
    for cmd in ["quantize", "equilibria"] {
        let out = qbg_spec("noq", WEAK, &[cmd]);
        assert_eq!(out.status.code(), Some(2));
        assert!(stderr(&out).contains("[quantum]"));
    }
}

#[test]
fn spec_errors_exit_2_with_location() {
    let out = qbg_spec("bad", "[game]\nmode=builtin-bg\ntheta=1\nalpha=2\n", &["classical"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 4"), "{}", stderr(&out));

    let out = qbg_spec("unnormalized", &format!("{WEAK}[quantum]\nsquared=0.4,0,0,0.5\n"), &["quantize"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("[quantum]"));

    assert_eq!(qbg(&["--spec", "/nonexistent/file.spec", "classical"]).status.code(), Some(2));
    assert_eq!(qbg(&["classical"]).status.code(), Some(2));
    assert_eq!(qbg(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn equilibria_lists_regions() {
    let text = format!("{WEAK}[quantum]\nsquared=0.5,0.2,0.2,0.1\n");
    let out = qbg_spec("eq", &text, &["--csv", "equilibria"]);
    assert_eq!(stdout(&out), "p_lo,p_hi,q_lo,q_hi,kind,payoff_M,payoff_U\n1,1,1,1,point,-0.3,-0.4\n");

    let zero = "[game]\nmode=custom\nrow_payoffs=0,0,0,0\ncol_payoffs=0,0,0,0\n[quantum]\nsquared=1,0,0,0\n";
    let out = qbg_spec("eq-zero", zero, &["equilibria"]);
    assert!(stdout(&out).contains("rectangle"));
}

#[test]
fn sweep_strategy_ii_nash_flag() {
    let text = format!("{WEAK}[quantum]\nsquared=1,0,0,0\n[candidate]\np=1\nq=1\n");
    let out = qbg_spec("sweep-s2", &text, &["sweep", "--axis", "beta_sq=0:1:11"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 11);
    for row in rows {
        let beta_sq = num(row[0]);
        assert_eq!(row[3] == "true", beta_sq <= 0.5, "{row:?}");
        assert!((num(row[1]) + beta_sq).abs() < 1e-12);
    }
}

#[test]
fn sweep_p_is_linear() {
    let text = format!("{WEAK}[quantum]\nsquared=1,0,0,0\n[candidate]\np=0\nq=1\n");
    let out = qbg_spec("sweep-p", &text, &["sweep", "--axis", "p=0:1:21"]);
    let values: Vec<f64> = stdout(&out).lines().skip(1).map(|l| num(l.split(',').nth(1).unwrap())).collect();
    assert_eq!(values.len(), 21);
    for w in values.windows(3) {
        assert!((w[0] - 2.0 * w[1] + w[2]).abs() < 1e-12);
    }
}

#[test]
fn two_axis_sweep_matches_trace_oracle() {
    let text = format!("{WEAK}[quantum]\namplitudes=0.5,0.1+0.3i,0.4i,0.7\n");
    let path = spec_file("sweep-pq", &text);
    let spec = parse_spec(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let state = spec.state().unwrap();
    let (m, u) = spec.payoff_vectors().unwrap();
    let out = qbg(&["--spec", path.to_str().unwrap(), "sweep", "--axis", "p=0:1:6", "--axis", "q=0:1:6"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p,q,payoff_M,payoff_U,nash,nash_strict"));
    let mut count = 0;
    for (i, line) in lines.enumerate() {
        let f: Vec<&str> = line.split(',').collect();
        let (p, q) = (num(f[0]), num(f[1]));
        // Outer axis slow, inner fast.
        assert_eq!((p, q), ((i / 6) as f64 / 5.0, (i % 6) as f64 / 5.0));
        let rho = final_density(&state, &MixingProfile::new(p, q).unwrap());
        assert!((num(f[2]) - expected_payoff_trace(&m, &rho).unwrap()).abs() < 1e-10);
        assert!((num(f[3]) - expected_payoff_trace(&u, &rho).unwrap()).abs() < 1e-10);
        count += 1;
    }
    assert_eq!(count, 36);
}

#[test]
fn sweep_output_is_deterministic() {
    let text = format!("{WEAK}[quantum]\nsquared=0.25,0.25,0.25,0.25\n[candidate]\np=1\nq=1\n");
    let path = spec_file("sweep-det", &text);
    let args = ["--spec", path.to_str().unwrap(), "sweep", "--axis", "beta_sq=0:0.5:40", "--axis", "gamma_sq=0:0.25:30"];
    let runs: Vec<Vec<u8>> = ["1", "4", "8"]
        .iter()
        .map(|threads| {
            Command::new(env!("CARGO_BIN_EXE_qbg"))
                .args(args)
                .env("RAYON_NUM_THREADS", threads)
                .output()
                .unwrap()
                .stdout
        })
        .collect();
    assert!(runs[0].len() > 1000);
    assert!(!runs[0].contains(&b'\r'));
    assert!(runs.iter().all(|r| *r == runs[0]));
    assert_eq!(qbg(&args).stdout, runs[0]);
}

#[test]
fn sweep_constraints_exit_2() {
    let full = format!("{WEAK}[quantum]\nsquared=1,0,0,0\n[candidate]\np=1\nq=1\n");
    let no_candidate = format!("{WEAK}[quantum]\nsquared=1,0,0,0\n");
    let cases: [(&str, &[&str]); 5] = [
        (&full, &["sweep", "--axis", "beta_sq=0:1:3", "--axis", "gamma_sq=0:1:3"]),
        (&full, &["sweep", "--axis", "p=0:1:3", "--axis", "p=0:1:3"]),
        (&full, &["sweep", "--axis", "p=0:1:3", "--axis", "q=0:1:3", "--axis", "delta_sq=0:1:3"]),
        (&no_candidate, &["sweep", "--axis", "beta_sq=0:1:3"]),
        (WEAK, &["sweep", "--axis", "p=0:1:3", "--axis", "q=0:1:3"]),
    ];
    for (i, (text, args)) in cases.iter().enumerate() {
        let out = qbg_spec(&format!("constraint-{i}"), text, args);
        assert_eq!(out.status.code(), Some(2), "case {i}: {}", stdout(&out));
        assert!(stderr(&out).contains("constrained"), "case {i}: {}", stderr(&out));
    }
    assert_eq!(qbg_spec("bad-axis", &full, &["sweep", "--axis", "alpha_sq=0:1:3"]).status.code(), Some(2));
}

#[test]
fn reproduce_passes_and_csv_is_stable() {
    let out = qbg(&["reproduce"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("34/34 checks passed"));

    let a = qbg(&["reproduce", "--csv"]);
    let b = qbg(&["--csv", "reproduce"]);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("status,anchor,expected,computed,max_abs_error,points,verdict_mismatches\n"));
    assert_eq!(text.lines().count(), 35);
    assert!(text.lines().skip(1).all(|l| l.starts_with("PASS,")));
}

#[test]
fn reproduce_injected_fault_exits_1() {
    let out = qbg(&["reproduce", "--inject-fault", "strategy-ii-row-condition"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("strategy-ii-row-condition"));
    assert!(stdout(&out).contains("FAIL    strategy-ii-row-condition"));
    assert_eq!(qbg(&["reproduce", "--inject-fault", "no-such-check"]).status.code(), Some(2));
}
