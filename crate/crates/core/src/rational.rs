//! Exact rational helpers shared by every module.
//!
//! Inputs are accepted as `p/q` or finite decimals (`0.125`, `-3`, `.5`);
//! scientific notation is rejected so that parsing stays exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// Builds `num/den` from machine integers.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn half() -> Rational {
    ratio(1, 2)
}

/// Parses a `p/q` or finite decimal literal.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let text = text.trim();
    if text.is_empty() {
        return Err("empty number".into());
    }
    if let Some((p, q)) = text.split_once('/') {
        let p = parse_integer(p)?;
        let q = parse_integer(q)?;
        if q.is_zero() {
            return Err(format!("zero denominator in '{text}'"));
        }
        return Ok(Rational::new(p, q));
    }
    let (negative, digits) = match text.as_bytes()[0] {
        b'-' => (true, &text[1..]),
        b'+' => (false, &text[1..]),
        _ => (false, text),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(format!("malformed number '{text}'"));
    }
    if !whole.bytes().all(|b| b.is_ascii_digit()) || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("malformed number '{text}'"));
    }
    let mut numerator: BigInt = if whole.is_empty() {
        BigInt::zero()
    } else {
        whole.parse().map_err(|_| format!("malformed number '{text}'"))?
    };
    let mut denominator = BigInt::one();
    for b in frac.bytes() {
        numerator = numerator * 10 + BigInt::from(b - b'0');
        denominator *= 10;
    }
    if negative {
        numerator = -numerator;
    }
    Ok(Rational::new(numerator, denominator))
}

fn parse_integer(text: &str) -> Result<BigInt, String> {
    let t = text.trim();
    let body = t.strip_prefix(['-', '+']).unwrap_or(t);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("malformed integer '{t}'"));
    }
    t.parse().map_err(|_| format!("malformed integer '{t}'"))
}

/// Canonical `p/q` rendering; integers print without a denominator.
pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Decimal approximation with `digits` places, rounded half away from zero.
pub fn format_decimal(value: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = value * Rational::from_integer(scale.clone());
    let rounded = scaled.round().to_integer();
    let negative = rounded.is_negative();
    let abs = rounded.abs().to_string();
    let padded = format!("{abs:0>width$}", width = digits + 1);
    let (int_part, frac_part) = padded.split_at(padded.len() - digits);
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("3/10").unwrap(), ratio(3, 10));
        assert_eq!(parse_rational("0.3").unwrap(), ratio(3, 10));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-2.25").unwrap(), ratio(-9, 4));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("4/-8").unwrap(), ratio(-1, 2));
    }

    #[test]
    fn rejects_scientific_and_garbage() {
        for bad in ["1e3", "", "1/0", "abc", "1.2.3", ".", "1/", "--1"] {
            assert!(parse_rational(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn formatting() {
        assert_eq!(format_rational(&ratio(6, 4)), "3/2");
        assert_eq!(format_rational(&int(-3)), "-3");
        assert_eq!(format_decimal(&ratio(1, 3), 4), "0.3333");
        assert_eq!(format_decimal(&ratio(-2, 3), 3), "-0.667");
        assert_eq!(format_decimal(&int(5), 0), "5");
    }
}
