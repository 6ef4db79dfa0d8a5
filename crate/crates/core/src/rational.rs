//! Exact rational numbers for lengths, capacities and the scaling parameter.
//!
//! Text forms accepted by [`parse_exact`]: plain decimals (`"0.25"`,
//! `"-3"`, `"1.5e-2"`) and fractions (`"4/45"`). [`format_exact`] writes a
//! terminating decimal whenever one exists and a reduced fraction otherwise,
//! so parsing its output always yields the same value.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid exact number {text:?}: {reason}")]
pub struct ParseNumberError {
    pub text: String,
    pub reason: &'static str,
}

fn bad(text: &str, reason: &'static str) -> ParseNumberError {
    ParseNumberError {
        text: text.to_string(),
        reason,
    }
}

pub fn parse_exact(text: &str) -> Result<Rational, ParseNumberError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(bad(text, "empty"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad(text, "bad numerator"))?;
        let den: BigInt = den.trim().parse().map_err(|_| bad(text, "bad denominator"))?;
        if den.is_zero() {
            return Err(bad(text, "zero denominator"));
        }
        return Ok(Rational::new(num, den));
    }

    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i64 = s[pos + 1..]
                .parse()
                .map_err(|_| bad(text, "bad exponent"))?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad(text, "no digits"));
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad(text, "unexpected character"));
    }
    if exponent.unsigned_abs() > 4096 {
        return Err(bad(text, "exponent out of range"));
    }

    let all_digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(all_digits.parse::<BigInt>().unwrap_or_default());
    let shift = exponent - frac_part.len() as i64;
    let ten = BigInt::from(10u32);
    if shift >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, shift as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-shift) as usize));
    }
    Ok(if negative { -value } else { value })
}

pub fn format_exact(value: &Rational) -> String {
    let den = value.denom();
    // A terminating decimal exists iff the reduced denominator is 2^a 5^b.
    let mut rest = den.clone();
    let (two, five) = (BigInt::from(2u32), BigInt::from(5u32));
    let (mut twos, mut fives) = (0usize, 0usize);
    while rest.is_even() {
        rest /= &two;
        twos += 1;
    }
    while (&rest % &five).is_zero() {
        rest /= &five;
        fives += 1;
    }
    if !rest.is_one() {
        return format!("{}/{}", value.numer(), den);
    }

    let places = twos.max(fives);
    if places == 0 {
        return value.numer().to_string();
    }
    let scale = num_traits::pow(BigInt::from(10u32), places);
    let scaled = value.numer() * (&scale / den);
    let negative = scaled.is_negative();
    let mut digits = scaled.abs().to_string();
    if digits.len() <= places {
        digits = format!("{}{}", "0".repeat(places + 1 - digits.len()), digits);
    }
    let split = digits.len() - places;
    format!(
        "{}{}.{}",
        if negative { "-" } else { "" },
        &digits[..split],
        &digits[split..]
    )
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Exact value of a finite `f64` given through its shortest decimal form.
pub fn from_f64_display(value: f64) -> Option<Rational> {
    if !value.is_finite() {
        return None;
    }
    parse_exact(&format!("{value}")).ok()
}

pub fn floor_to_u64(value: &Rational) -> Option<u64> {
    value.floor().to_integer().to_u64()
}

pub fn from_u64(value: u64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Largest rational `u` such that every input is an integer multiple of `u`.
///
/// Returns `None` for an empty slice or when any input is not positive.
pub fn rational_gcd(values: &[Rational]) -> Option<Rational> {
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for v in values {
        if !v.is_positive() {
            return None;
        }
        num_gcd = num_gcd.gcd(v.numer());
        den_lcm = den_lcm.lcm(v.denom());
    }
    if num_gcd.is_zero() {
        None
    } else {
        Some(Rational::new(num_gcd, den_lcm))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn parses_decimals_and_fractions() {
        assert_eq!(parse_exact("0.25").unwrap(), q(1, 4));
        assert_eq!(parse_exact("-3").unwrap(), q(-3, 1));
        assert_eq!(parse_exact("4/45").unwrap(), q(4, 45));
        assert_eq!(parse_exact("8/90").unwrap(), q(4, 45));
        assert_eq!(parse_exact("1.5e-2").unwrap(), q(3, 200));
        assert_eq!(parse_exact(".5").unwrap(), q(1, 2));
        assert_eq!(parse_exact("2E3").unwrap(), q(2000, 1));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "abc", "1/0", "1.2.3", "--1", "e5", "1/x"] {
            assert!(parse_exact(s).is_err(), "{s}");
        }
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format_exact(&q(1, 4)), "0.25");
        assert_eq!(format_exact(&q(-1, 8)), "-0.125");
        assert_eq!(format_exact(&q(7, 1)), "7");
        assert_eq!(format_exact(&q(4, 45)), "4/45");
        assert_eq!(format_exact(&q(14, 5)), "2.8");
        assert_eq!(format_exact(&q(1, 1000)), "0.001");
    }

    #[test]
    fn gcd_of_rationals() {
        assert_eq!(rational_gcd(&[q(1, 2), q(3, 4)]).unwrap(), q(1, 4));
        assert_eq!(rational_gcd(&[q(6, 1), q(4, 1)]).unwrap(), q(2, 1));
        assert_eq!(rational_gcd(&[q(3, 5)]).unwrap(), q(3, 5));
        assert!(rational_gcd(&[]).is_none());
        assert!(rational_gcd(&[q(0, 1)]).is_none());
    }

    #[test]
    fn f64_display_is_exact_decimal() {
        assert_eq!(from_f64_display(0.1).unwrap(), q(1, 10));
        assert_eq!(from_f64_display(2.0).unwrap(), q(2, 1));
        assert!(from_f64_display(f64::NAN).is_none());
    }

    proptest::proptest! {
        #[test]
        fn format_then_parse_is_identity(n in -100_000i64..100_000, d in 1i64..5_000) {
            let v = q(n, d);
            proptest::prop_assert_eq!(parse_exact(&format_exact(&v)).unwrap(), v);
        }
    }
}
