//! Exact rational scalars and their textual form ("p/q" in lowest terms).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// Parse "p", "p/q", "-p/q". A leading unicode minus sign is accepted too.
pub fn parse_q(text: &str) -> Result<Q> {
    let t = text.trim().replace('\u{2212}', "-");
    let bad = || Error::parse("invalid rational").with_datum(text.to_string());
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim().to_string(), d.trim().to_string()),
        None => (t.clone(), "1".to_string()),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

/// Canonical text: lowest terms, positive denominator, integers without "/1".
pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("-6/4").unwrap(), frac(-3, 2));
        assert_eq!(format_q(&frac(-3, 2)), "-3/2");
        assert_eq!(format_q(&frac(4, 2)), "2");
        assert_eq!(parse_q("\u{2212}3/2").unwrap(), frac(-3, 2));
        assert_eq!(format_q(&frac(3, -6)), "-1/2");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }
}
