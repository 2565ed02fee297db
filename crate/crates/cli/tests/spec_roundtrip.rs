use num_rational::Rational64;
use proptest::prelude::*;

use qbg_cli::number::ExactComplex;
use qbg_cli::spec_file::{parse_spec, render, GameDef, GameSpec, QuantumDef};

fn rational() -> impl Strategy<Value = Rational64> {
    (-1000i64..1000, 1i64..100).prop_map(|(n, d)| Rational64::new(n, d))
}

fn positive() -> impl Strategy<Value = Rational64> {
    (1i64..1000, 1i64..100).prop_map(|(n, d)| Rational64::new(n, d))
}

fn label() -> impl Strategy<Value = String> {
    "[A-Za-z][A-Za-z0-9_-]{0,6}"
}

fn labels() -> impl Strategy<Value = [String; 2]> {
    (label(), label())
        .prop_filter("distinct", |(a, b)| a != b)
        .prop_map(|(a, b)| [a, b])
}

fn game() -> impl Strategy<Value = GameDef> {
    prop_oneof![
        (0u8..=1, positive(), positive()).prop_map(|(theta, a, b)| GameDef::BuiltinBg { theta, a, b }),
        (labels(), labels(), prop::array::uniform4(rational()), prop::array::uniform4(rational())).prop_map(
            |(row_labels, col_labels, row_payoffs, col_payoffs)| GameDef::Custom {
                row_labels,
                col_labels,
                row_payoffs,
                col_payoffs
            }
        ),
    ]
}

/// Exactly normalized squared magnitudes.
fn squared() -> impl Strategy<Value = QuantumDef> {
    prop::array::uniform4(0i64..50)
        .prop_filter("nonzero", |k| k.iter().sum::<i64>() > 0)
        .prop_map(|k| {
            let total: i64 = k.iter().sum();
            QuantumDef::Squared(k.map(|x| Rational64::new(x, total)))
        })
}

/// Exactly normalized complex amplitudes, from
/// `(m²+n²+p²+q²)² = (2mq+2np)² + (2nq−2mp)² + (m²+n²−p²−q²)²`.
fn amplitudes() -> impl Strategy<Value = QuantumDef> {
    (
        prop::array::uniform4(0i64..8),
        Just((0..8).collect::<Vec<usize>>()).prop_shuffle(),
        prop::array::uniform3(any::<bool>()),
    )
        .prop_filter("nonzero", |(v, _, _)| v.iter().any(|x| *x != 0))
        .prop_map(|([m, n, p, q], slots, signs)| {
            let norm = m * m + n * n + p * p + q * q;
            let parts = [2 * m * q + 2 * n * p, 2 * n * q - 2 * m * p, m * m + n * n - p * p - q * q];
            let mut reals = [0i64; 8];
            for (i, part) in parts.iter().enumerate() {
                reals[slots[i]] = if signs[i] { -part } else { *part };
            }
            let z = |i: usize| ExactComplex {
                re: Rational64::new(reals[2 * i], norm),
                im: Rational64::new(reals[2 * i + 1], norm),
            };
            QuantumDef::Amplitudes([z(0), z(1), z(2), z(3)])
        })
}

fn unit() -> impl Strategy<Value = Rational64> {
    (0i64..=100, 1i64..=100).prop_map(|(n, d)| Rational64::new(n.min(d), d))
}

fn spec() -> impl Strategy<Value = GameSpec> {
    (
        game(),
        prop::option::of(prop_oneof![squared(), amplitudes()]),
        prop::option::of((unit(), unit())),
    )
        .prop_map(|(game, quantum, candidate)| GameSpec { game, quantum, candidate })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn parse_inverts_render(spec in spec()) {
        let text = render(&spec);
        let parsed = parse_spec(&text);
        prop_assert_eq!(parsed, Ok(spec), "{}", text);
    }

    #[test]
    fn render_is_canonical(spec in spec()) {
        let once = render(&spec);
        let twice = render(&parse_spec(&once).unwrap());
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn parser_never_panics(text in "(\\[[a-z]{0,9}\\]|[a-z_]{1,8} ?= ?[-0-9./i+, ]{0,12}|#.*|)(\n(\\[[a-z]{0,9}\\]|[a-z_]{1,8} ?= ?[-0-9./i+, ]{0,12}|#.*|)){0,8}") {
        let _ = parse_spec(&text);
    }
}
