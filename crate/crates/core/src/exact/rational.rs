use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ExactError;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"p/q"` or `"p"`, with optional sign and surrounding whitespace.
pub fn parse_rational(text: &str) -> Result<Rational, ExactError> {
    let t = text.trim();
    let bad = || ExactError::Parse(format!("not a rational: {text:?}"));
    let (num, den) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), Some(q.trim())),
        None => (t, None),
    };
    let valid_int = |s: &str| {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid_int(num) {
        return Err(bad());
    }
    let p: BigInt = num.trim_start_matches('+').parse().map_err(|_| bad())?;
    let q: BigInt = match den {
        Some(d) => {
            if !valid_int(d) {
                return Err(bad());
            }
            d.trim_start_matches('+').parse().map_err(|_| bad())?
        }
        None => BigInt::one(),
    };
    if q.is_zero() {
        return Err(ExactError::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(p, q))
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Converts to `i64` when integral and in range.
pub fn to_i64(x: &Rational) -> Option<i64> {
    if !x.denom().is_one() {
        return None;
    }
    i64::try_from(x.numer()).ok()
}

pub fn is_positive(x: &Rational) -> bool {
    x.is_positive()
}
