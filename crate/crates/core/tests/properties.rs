use num_complex::Complex;
use proptest::prelude::*;

use qbg_core::classical::{
    build_bg_game, find_dominated_rows, find_pure_nash, public_utility, BimatrixGame, DominanceKind,
    InflationProfile, PolicyMaker, PolicyParams, PureProfile, Strategy as Move,
};
use qbg_core::engine::{
    closed_form_payoff_with, expected_payoff_trace, final_density_with, omega_matrix_with, MixingConvention,
    MixingProfile, PayoffVector, QuantumGame, QuantumInitialState,
};

const CONVENTIONS: [MixingConvention; 2] = [MixingConvention::Crossed, MixingConvention::Local];

fn state_strategy() -> impl Strategy<Value = QuantumInitialState<f64>> {
    prop::array::uniform8(-1.0f64..1.0)
        .prop_filter("nonzero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-3)
        .prop_map(|v| {
            let amps = [0, 1, 2, 3].map(|i| Complex::new(v[2 * i], v[2 * i + 1]));
            QuantumInitialState::normalized(amps).unwrap()
        })
}

fn vec_strategy() -> impl Strategy<Value = PayoffVector<f64>> {
    prop::array::uniform4(-5.0f64..5.0).prop_map(PayoffVector)
}

fn game_strategy() -> impl Strategy<Value = BimatrixGame<f64>> {
    prop::array::uniform8(-3i32..=3).prop_map(|v| {
        let c = |i: usize| (v[2 * i] as f64, v[2 * i + 1] as f64);
        BimatrixGame::with_lh_labels([[c(0), c(1)], [c(2), c(3)]]).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn trace_matches_closed_form(
        state in state_strategy(),
        vec in vec_strategy(),
        p in 0.0f64..=1.0,
        q in 0.0f64..=1.0,
    ) {
        let mix = MixingProfile::new(p, q).unwrap();
        for conv in CONVENTIONS {
            let rho = final_density_with(&state, &mix, conv);
            let traced = expected_payoff_trace(&vec, &rho).unwrap();
            let closed = closed_form_payoff_with(&state.squared(), &vec, conv).eval(&p, &q);
            prop_assert!((traced - closed).abs() < 1e-10, "{conv:?}: {traced} vs {closed}");
        }
    }

    #[test]
    fn final_density_is_valid(state in state_strategy(), p in 0.0f64..=1.0, q in 0.0f64..=1.0) {
        let mix = MixingProfile::new(p, q).unwrap();
        for conv in CONVENTIONS {
            let d = final_density_with(&state, &mix, conv).diagnostics();
            prop_assert!(d.hermiticity_error < 1e-12);
            prop_assert!(d.trace_error < 1e-12);
            prop_assert!(d.min_eigenvalue > -1e-10);
        }
    }

    #[test]
    fn row_payoff_has_no_pq_term(state in state_strategy()) {
        let gm = PayoffVector([0.0, -2.0, 1.0, -1.0]);
        for conv in CONVENTIONS {
            prop_assert!(closed_form_payoff_with(&state.squared(), &gm, conv).coeff_pq.abs() < 1e-12);
        }
    }

    #[test]
    fn omega_is_doubly_stochastic(state in state_strategy()) {
        for conv in CONVENTIONS {
            let omega = omega_matrix_with(&state.squared(), conv);
            for k in 0..4 {
                prop_assert!((omega[k].iter().sum::<f64>() - 1.0).abs() < 1e-12);
                prop_assert!((omega.iter().map(|row| row[k]).sum::<f64>() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn payoffs_stay_within_vector_bounds(
        state in state_strategy(),
        vec in vec_strategy(),
        p in 0.0f64..=1.0,
        q in 0.0f64..=1.0,
    ) {
        let v = closed_form_payoff_with(&state.squared(), &vec, MixingConvention::Crossed).eval(&p, &q);
        prop_assert!(v >= vec.min() - 1e-12 && v <= vec.max() + 1e-12);
    }

    #[test]
    fn phases_do_not_change_payoffs_or_verdicts(
        state in state_strategy(),
        phases in prop::array::uniform4(-3.2f64..3.2),
        p in 0.0f64..=1.0,
        q in 0.0f64..=1.0,
    ) {
        let gm = PayoffVector([0.0, -2.0, 1.0, -1.0]);
        let gu = PayoffVector([0.0, -1.0, -1.0, 0.0]);
        let rotated = state.with_phases(phases);
        let mix = MixingProfile::new(p, q).unwrap();
        for conv in CONVENTIONS {
            let a = expected_payoff_trace(&gm, &final_density_with(&state, &mix, conv)).unwrap();
            let b = expected_payoff_trace(&gm, &final_density_with(&rotated, &mix, conv)).unwrap();
            prop_assert!((a - b).abs() < 1e-12);
        }
        let g1 = QuantumGame::new(&state.squared(), &gm, &gu, MixingConvention::Crossed);
        let g2 = QuantumGame::new(&rotated.squared(), &gm, &gu, MixingConvention::Crossed);
        for corner in [(1.0, 1.0), (0.0, 0.0), (0.5, 0.5)] {
            let c = MixingProfile::new(corner.0, corner.1).unwrap();
            let (r1, r2) = (g1.verify(&c), g2.verify(&c));
            // Verdicts may only differ when a gap sits on the tolerance boundary.
            let marginal = r1.checks.iter().any(|k| k.gap.abs() < 1e-9);
            prop_assert!(marginal || r1.weak_nash == r2.weak_nash);
        }
    }

    #[test]
    fn pure_nash_matches_brute_force(game in game_strategy()) {
        let found = find_pure_nash(&game);
        for profile in PureProfile::all() {
            let (r, c) = (profile.row.index(), profile.col.index());
            let cells = game.payoffs();
            let mut stable = true;
            for alt in 0..2 {
                stable &= cells[alt][c].0 <= cells[r][c].0;
                stable &= cells[r][alt].1 <= cells[r][c].1;
            }
            prop_assert_eq!(found.contains(&profile), stable);
        }
    }

    #[test]
    fn strictly_dominated_rows_never_in_nash(game in game_strategy()) {
        let nash = find_pure_nash(&game);
        for d in find_dominated_rows(&game) {
            if d.kind == DominanceKind::Strict {
                prop_assert!(nash.iter().all(|p| p.row != d.strategy));
            }
        }
    }

    #[test]
    fn public_utility_is_nonpositive(pi in -5.0f64..5.0, pe in -5.0f64..5.0) {
        let u = public_utility(&InflationProfile::new(pi, pe));
        prop_assert!(u <= 0.0);
        prop_assert_eq!(u == 0.0, pi == pe);
    }

    #[test]
    fn bg_builder_matches_direct_utilities(a in 1i64..6, b in 1i64..6, weak in any::<bool>()) {
        use qbg_core::Rational64;
        let kind = if weak { PolicyMaker::Weak } else { PolicyMaker::Strong };
        let (ra, rb) = (Rational64::from_integer(a), Rational64::from_integer(b));
        let game = build_bg_game(&PolicyParams::new(kind, ra, rb).unwrap());
        let theta = Rational64::from_integer(if weak { 1 } else { 0 });
        let rate = |s: Move| if s == Move::L { Rational64::from_integer(0) } else { rb / ra };
        for profile in PureProfile::all() {
            let (pi, pe) = (rate(profile.row), rate(profile.col));
            let pol = theta * rb * (pi - pe) - ra * pi * pi / Rational64::from_integer(2);
            let publ = -(pi - pe) * (pi - pe);
            prop_assert_eq!(*game.cell(profile), (pol, publ));
        }
    }
}

#[test]
fn local_convention_embeds_classical_game_at_corners() {
    let ll = QuantumInitialState::<f64>::basis(0).squared();
    let row = PayoffVector([10.0, 11.0, 12.0, 13.0]);
    let col = PayoffVector([20.0, 21.0, 22.0, 23.0]);
    let game = QuantumGame::new(&ll, &row, &col, MixingConvention::Local);
    // p = 1 ↔ row L, p = 0 ↔ row H; likewise q for the column.
    for (p, q, idx) in [(1.0, 1.0, 0), (1.0, 0.0, 1), (0.0, 1.0, 2), (0.0, 0.0, 3)] {
        let payoffs = game.payoffs(&MixingProfile::new(p, q).unwrap());
        assert_eq!(payoffs, (row.0[idx], col.0[idx]), "corner ({p}, {q})");
    }
}

#[test]
fn crossed_convention_embeds_with_roles_exchanged() {
    let ll = QuantumInitialState::<f64>::basis(0).squared();
    let row = PayoffVector([10.0, 11.0, 12.0, 13.0]);
    let col = PayoffVector([20.0, 21.0, 22.0, 23.0]);
    let game = QuantumGame::new(&ll, &row, &col, MixingConvention::Crossed);
    // q = 0 flips the row qubit, p = 0 flips the column qubit.
    for (p, q, idx) in [(1.0, 1.0, 0), (0.0, 1.0, 1), (1.0, 0.0, 2), (0.0, 0.0, 3)] {
        let payoffs = game.payoffs(&MixingProfile::new(p, q).unwrap());
        assert_eq!(payoffs, (row.0[idx], col.0[idx]), "corner ({p}, {q})");
    }
}

#[test]
fn local_convention_reverses_correct_expectation_verdict() {
    // With each player's operator on their own qubit, near-|LL⟩ states give
    // the policy maker a profitable flip, so (1, 1) is not an equilibrium.
    let s = qbg_core::engine::SquaredAmplitudes::diagonal(0.2).unwrap();
    let gm = PayoffVector([0.0, -2.0, 1.0, -1.0]);
    let gu = PayoffVector([0.0, -1.0, -1.0, 0.0]);
    let c = MixingProfile::new(1.0, 1.0).unwrap();
    assert!(QuantumGame::new(&s, &gm, &gu, MixingConvention::Crossed).verify(&c).weak_nash);
    assert!(!QuantumGame::new(&s, &gm, &gu, MixingConvention::Local).verify(&c).weak_nash);
}

#[test]
fn f32_density_route_works() {
    let s = QuantumInitialState::<f32>::from_real([0.6, 0.0, 0.0, 0.8]).unwrap();
    let mix = MixingProfile::new(0.25f32, 0.75).unwrap();
    let rho = final_density_with(&s, &mix, MixingConvention::Crossed);
    assert!(rho.diagnostics().is_valid());
    let gm = PayoffVector([0.0f32, -2.0, 1.0, -1.0]);
    let traced = expected_payoff_trace(&gm, &rho).unwrap();
    let closed = closed_form_payoff_with(&s.squared(), &gm, MixingConvention::Crossed).eval(&0.25, &0.75);
    assert!((traced - closed).abs() < 1e-5);
}
