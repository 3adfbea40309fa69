//! Exact rational scalars.

use alloc::string::{String, ToString};
use alloc::format;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// `+1` or `-1` as a rational.
pub fn sign(s: i32) -> Q {
    if s < 0 {
        -one()
    } else {
        one()
    }
}

pub fn factorial(n: u32) -> Q {
    let mut f = BigInt::one();
    for k in 2..=n {
        f *= BigInt::from(k);
    }
    Q::from_integer(f)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RationalParseError {
    #[error("empty rational")]
    Empty,
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("malformed rational {0:?}")]
    Malformed(String),
}

/// Parses `"p"` or `"p/q"` with optional sign on `p`.
pub fn parse_rational(s: &str) -> Result<Q, RationalParseError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(RationalParseError::Empty);
    }
    let int = |x: &str| -> Result<BigInt, RationalParseError> {
        let x = x.trim();
        let digits = x.strip_prefix('-').or_else(|| x.strip_prefix('+')).unwrap_or(x);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(RationalParseError::Malformed(t.to_string()));
        }
        x.parse::<BigInt>().map_err(|_| RationalParseError::Malformed(t.to_string()))
    };
    match t.split_once('/') {
        None => Ok(Q::from_integer(int(t)?)),
        Some((p, d)) => {
            let (p, d) = (int(p)?, int(d)?);
            if d.is_zero() {
                return Err(RationalParseError::ZeroDenominator(t.to_string()));
            }
            Ok(Q::new(p, d))
        }
    }
}

/// Canonical text: `"p"` for integers, `"p/q"` otherwise (reduced, `q > 0`).
pub fn render(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        assert_eq!(parse_rational("3/6").unwrap(), qr(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), q(-4));
        assert_eq!(render(&qr(-2, 4)), "-1/2");
        assert_eq!(render(&q(7)), "7");
        assert!(matches!(parse_rational("1/0"), Err(RationalParseError::ZeroDenominator(_))));
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("--1").is_err());
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), q(1));
        assert_eq!(factorial(5), q(120));
    }
}
