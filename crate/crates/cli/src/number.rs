//! Numeric literals in spec files and output formatting.
//!
//! Every accepted literal is rational (`-2`, `0.25`, `1/3`, `-.5`), so specs
//! are held exactly. Complex amplitudes are written `re`, `imi`, or
//! `re+imi` / `re-imi`.

use std::fmt;

use num_rational::Rational64;
use num_traits::{CheckedDiv, Signed, ToPrimitive, Zero};

pub fn parse_rational(text: &str) -> Result<Rational64, String> {
    let text = text.trim();
    if text.is_empty() {
        return Err("expected a number".into());
    }
    if let Some((num, den)) = text.split_once('/') {
        let num = parse_decimal(num)?;
        let den = parse_decimal(den)?;
        if den.is_zero() {
            return Err(format!("zero denominator in `{text}`"));
        }
        return num.checked_div(&den).ok_or_else(|| format!("`{text}` is out of range"));
    }
    parse_decimal(text)
}

fn parse_decimal(text: &str) -> Result<Rational64, String> {
    let t = text.trim();
    let (negative, digits) = match t.as_bytes().first() {
        Some(b'-') => (true, &t[1..]),
        Some(b'+') => (false, &t[1..]),
        _ => (false, t),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    let valid = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if (int_part.is_empty() && frac_part.is_empty()) || !valid(int_part) || !valid(frac_part) {
        return Err(format!("invalid number `{t}`"));
    }
    let out_of_range = || format!("`{t}` is out of range");
    let mut numer: i64 = 0;
    for b in int_part.bytes().chain(frac_part.bytes()) {
        numer = numer
            .checked_mul(10)
            .and_then(|n| n.checked_add((b - b'0') as i64))
            .ok_or_else(out_of_range)?;
    }
    let denom = 10i64.checked_pow(frac_part.len() as u32).ok_or_else(out_of_range)?;
    let value = Rational64::new(numer, denom);
    Ok(if negative { -value } else { value })
}

/// Complex number with exact rational parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactComplex {
    pub re: Rational64,
    pub im: Rational64,
}

impl ExactComplex {
    pub fn real(re: Rational64) -> Self {
        Self {
            re,
            im: Rational64::zero(),
        }
    }

    pub fn norm_sqr(&self) -> Rational64 {
        self.re * self.re + self.im * self.im
    }
}

pub fn parse_complex(text: &str) -> Result<ExactComplex, String> {
    let t = text.trim();
    let Some(body) = t.strip_suffix('i') else {
        return Ok(ExactComplex::real(parse_rational(t)?));
    };
    // Split at the last sign that is not the leading one.
    let split = body
        .char_indices()
        .skip(1)
        .filter(|(_, c)| *c == '+' || *c == '-')
        .map(|(i, _)| i)
        .last();
    let (re, im) = match split {
        Some(i) => (parse_rational(&body[..i])?, parse_imag(&body[i..])?),
        None => (Rational64::zero(), parse_imag(body)?),
    };
    Ok(ExactComplex { re, im })
}

fn parse_imag(text: &str) -> Result<Rational64, String> {
    match text.trim() {
        "" | "+" => Ok(Rational64::from_integer(1)),
        "-" => Ok(Rational64::from_integer(-1)),
        other => parse_rational(other),
    }
}

pub fn render_rational(x: &Rational64) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl fmt::Display for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return f.write_str(&render_rational(&self.re));
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        write!(f, "{}{}{}i", render_rational(&self.re), sign, render_rational(&self.im.abs()))
    }
}

pub fn to_f64(x: &Rational64) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Rounds to `digits` significant digits and prints the shortest decimal
/// that round-trips the rounded value, switching to exponent notation below
/// `1e-5` and from `1e16`. Negative zero prints as `0`.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{:.*e}", digits.saturating_sub(1), x)
        .parse()
        .expect("scientific notation parses");
    if rounded == 0.0 {
        "0".into()
    } else if rounded.abs() < 1e-5 || rounded.abs() >= 1e16 {
        format!("{rounded:e}")
    } else {
        rounded.to_string()
    }
}

/// CSV precision.
pub fn csv_num(x: f64) -> String {
    fmt_sig(x, 12)
}

/// Human-readable precision.
pub fn human_num(x: f64) -> String {
    fmt_sig(x, 6)
}
