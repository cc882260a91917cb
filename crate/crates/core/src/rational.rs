//! Exact scalar helpers.
//!
//! Every distance, norm and radius in the crate is a [`Rational`]; there is
//! no floating point anywhere in the computational paths.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Builds `num/den` from machine integers.
///
/// Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `base^exp` for any integer exponent. `base` must be nonzero when `exp < 0`.
pub fn pow(base: &Rational, exp: i64) -> Rational {
    let e = i32::try_from(exp).expect("exponent out of range");
    num_traits::Pow::pow(base, e)
}

/// `2^(-k)` for `k >= 0`.
pub fn dyadic(k: u64) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << k)
}

/// Smaller of two rationals (by reference, cloning the result).
pub fn min_of(a: &Rational, b: &Rational) -> Rational {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

/// Larger of two rationals.
pub fn max_of(a: &Rational, b: &Rational) -> Rational {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

/// Writes `p/q` in lowest terms, or `p` when the denominator is one.
pub fn fmt_rational(r: &Rational) -> String {
    r.to_string()
}

/// Error parsing a rational literal.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}` (expected an integer or p/q)")]
pub struct ParseRationalError(pub String);

/// Parses an integer or `p/q` literal (optional leading sign on `p`).
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(err());
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t, "1"),
    };
    let is_int = |x: &str, signed: bool| {
        let body = if signed {
            x.strip_prefix(['-', '+']).unwrap_or(x)
        } else {
            x
        };
        !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
    };
    if !is_int(num, true) || !is_int(den, false) {
        return Err(err());
    }
    let n = BigInt::from_str(num.strip_prefix('+').unwrap_or(num)).map_err(|_| err())?;
    let d = BigInt::from_str(den).map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(n, d))
}

/// Display adapter for slices of rationals, space separated.
pub struct RatList<'a>(pub &'a [Rational]);

impl fmt::Display for RatList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

/// `|a - b|`.
pub fn abs_diff(a: &Rational, b: &Rational) -> Rational {
    (a - b).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_normalizes() {
        assert_eq!(parse_rational("6/8").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-2").unwrap(), int(-2));
        assert_eq!(parse_rational(" +5/10 ").unwrap(), rat(1, 2));
        assert_eq!(fmt_rational(&rat(6, -8)), "-3/4");
        assert_eq!(fmt_rational(&rat(4, 2)), "2");
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "1/0", "a", "1/-2", "1.5", "--1", "/3", "3/"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn powers() {
        assert_eq!(pow(&rat(1, 2), -2), int(4));
        assert_eq!(pow(&rat(2, 3), 3), rat(8, 27));
        assert_eq!(pow(&rat(1, 3), 0), Rational::one());
        assert_eq!(dyadic(3), rat(1, 8));
    }
}
