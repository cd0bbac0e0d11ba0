//! Exact rational scalars.
//!
//! Every coordinate, threshold, cost and probability is a [`Scalar`], an
//! arbitrary-precision reduced fraction. Strict inequalities between
//! endpoints are therefore decided exactly.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

/// `numer / denom` as a scalar. Panics if `denom == 0`.
pub fn rat(numer: i64, denom: i64) -> Scalar {
    Scalar::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(value))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Parses `"p/q"`, an integer, or a plain decimal such as `"-5.25"`.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let bad = |msg: &str| Error::ParseError {
        line: 0,
        column: 0,
        message: format!("invalid number {text:?}: {msg}"),
    };
    let s = text.trim();
    if s.is_empty() {
        return Err(bad("empty"));
    }
    if let Some((p, q)) = s.split_once('/') {
        let numer: BigInt = p.trim().parse().map_err(|_| bad("bad numerator"))?;
        let denom: BigInt = q.trim().parse().map_err(|_| bad("bad denominator"))?;
        if denom.is_zero() {
            return Err(bad("zero denominator"));
        }
        return Ok(Scalar::new(numer, denom));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad("no digits"));
    }
    if !whole.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad("unexpected character"));
    }
    let digits = format!("{whole}{frac}");
    let numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| bad("bad digits"))?
    };
    let denom = num_traits::pow(BigInt::from(10u32), frac.len());
    let value = Scalar::new(numer, denom);
    Ok(if negative { -value } else { value })
}

/// Canonical text form: integers without a slash, otherwise `p/q`.
pub fn format_scalar(value: &Scalar) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn to_f64(value: &Scalar) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Decimal rendering with a fixed number of fractional digits (rounded half away from zero).
pub fn format_decimal(value: &Scalar, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10u32), digits);
    let scaled = value * Scalar::from_integer(scale.clone());
    let rounded = scaled.round().to_integer();
    let negative = rounded.is_negative();
    let magnitude = rounded.abs();
    let whole = &magnitude / &scale;
    let frac = &magnitude % &scale;
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{:0>width$}", frac.to_string(), width = digits)
    }
}

pub fn min_of<'a>(a: &'a Scalar, b: &'a Scalar) -> &'a Scalar {
    if a <= b {
        a
    } else {
        b
    }
}

/// Rational bounds `lo < sqrt(3) < hi` with `hi - lo = 2^-bits`.
pub fn sqrt3_bounds(bits: u32) -> (Scalar, Scalar) {
    let scale = BigUint::one() << (2 * bits as usize);
    let root = (BigUint::from(3u32) * scale).sqrt();
    let denom = BigInt::one() << bits as usize;
    let lo = Scalar::new(BigInt::from(root.clone()), denom.clone());
    let hi = Scalar::new(BigInt::from(root + 1u32), denom);
    (lo, hi)
}

/// A closed enclosure `[lo, hi]` of a real quantity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: Scalar,
    pub hi: Scalar,
}

impl Enclosure {
    pub fn exact(value: Scalar) -> Self {
        Self {
            lo: value.clone(),
            hi: value,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Scalar {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Scalar {
        (&self.lo + &self.hi) / int(2)
    }

    /// Product of two enclosures of non-negative quantities.
    pub fn mul_nonneg(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: &self.lo * &other.lo,
            hi: &self.hi * &other.hi,
        }
    }

    pub fn add(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn scale(&self, factor: &Scalar) -> Enclosure {
        debug_assert!(!factor.is_negative());
        Enclosure {
            lo: &self.lo * factor,
            hi: &self.hi * factor,
        }
    }

    pub fn div_positive(&self, divisor: &Scalar) -> Enclosure {
        Enclosure {
            lo: &self.lo / divisor,
            hi: &self.hi / divisor,
        }
    }

    /// `1 - x` for an enclosure of a probability.
    pub fn complement(&self) -> Enclosure {
        Enclosure {
            lo: one() - &self.hi,
            hi: one() - &self.lo,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse_scalar("11/2").unwrap(), rat(11, 2));
        assert_eq!(parse_scalar("-4/6").unwrap(), rat(-2, 3));
        assert_eq!(parse_scalar("7").unwrap(), int(7));
        assert_eq!(parse_scalar("5.5").unwrap(), rat(11, 2));
        assert_eq!(parse_scalar("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(parse_scalar(".5").unwrap(), rat(1, 2));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("abc").is_err());
        assert!(parse_scalar("").is_err());
        assert!(parse_scalar("1e3").is_err());
    }

    #[test]
    fn canonical_format() {
        assert_eq!(format_scalar(&rat(10, 4)), "5/2");
        assert_eq!(format_scalar(&int(-3)), "-3");
        assert_eq!(format_scalar(&rat(-6, 3)), "-2");
        assert_eq!(format_decimal(&rat(57, 32), 5), "1.78125");
        assert_eq!(format_decimal(&rat(-1, 3), 3), "-0.333");
        assert_eq!(format_decimal(&rat(2, 3), 0), "1");
    }

    #[test]
    fn sqrt3_enclosure_brackets_the_root() {
        let (lo, hi) = sqrt3_bounds(40);
        assert!(&lo * &lo < int(3));
        assert!(&hi * &hi > int(3));
        assert!(hi - lo < rat(1, 1_000_000_000_000));
    }
}
