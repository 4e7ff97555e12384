//! Exact rational scalars.
//!
//! Every quantity in this crate is a `Rational`: arbitrary-precision, kept in
//! lowest terms with a positive denominator. The canonical text form is `p`
//! for integers and `p/q` otherwise; parsing rejects zero denominators.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The fraction `n/d`. Panics if `d == 0`; intended for literals in code.
pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "rational literal with zero denominator");
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer part in `{0}`")]
    BadInteger(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `p` or `p/q` (optional leading `-`, ASCII digits, no whitespace).
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let bad = || ParseRationalError::BadInteger(text.to_owned());
    match text.split_once('/') {
        None => {
            let n: BigInt = text.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
        Some((num, den)) => {
            let n: BigInt = num.parse().map_err(|_| bad())?;
            let d: BigInt = den.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(ParseRationalError::ZeroDenominator(text.to_owned()));
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Canonical text form: `p` when the value is an integer, else `p/q` in
/// lowest terms with positive `q`.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Decimal approximation with `places` digits after the point, rounded half
/// away from zero. For display only; never fed back into computations.
pub fn decimal_string(value: &Rational, places: usize) -> String {
    let sign = if value.is_negative() { "-" } else { "" };
    let abs = value.abs();
    let scale = BigInt::from(10u32).pow(places as u32);
    let scaled = abs.numer() * &scale;
    let (mut q, r) = (&scaled / abs.denom(), &scaled % abs.denom());
    if &r * 2 >= *abs.denom() {
        q += 1;
    }
    let digits = q.to_string();
    if places == 0 {
        return format!("{sign}{digits}");
    }
    let digits = if digits.len() <= places {
        format!("{}{}", "0".repeat(places + 1 - digits.len()), digits)
    } else {
        digits
    };
    let split = digits.len() - places;
    format!("{sign}{}.{}", &digits[..split], &digits[split..])
}
