//! Exact rational scalars and their textual forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type Rational = BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `"-0.2"`.
pub fn parse(text: &str) -> Result<Rational> {
    let bad = || Error::InvalidRational(text.to_string());
    let s = text.trim();
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, fraction)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = whole.trim_start_matches(['-', '+']);
        if fraction.is_empty() && digits.is_empty()
            || !fraction.chars().all(|c| c.is_ascii_digit())
            || !digits.chars().all(|c| c.is_ascii_digit())
        {
            return Err(bad());
        }
        let joined = format!("{digits}{fraction}");
        let mut num: BigInt = if joined.is_empty() {
            BigInt::zero()
        } else {
            joined.parse().map_err(|_| bad())?
        };
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10), fraction.len());
        return Ok(Rational::new(num, den));
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// Renders `p/q` in lowest terms, or `p` for integers.
pub fn render(value: &Rational) -> String {
    value.to_string()
}

pub fn render_all(values: &[Rational]) -> Vec<String> {
    values.iter().map(render).collect()
}

pub fn floor(value: &Rational) -> BigInt {
    value.numer().div_floor(value.denom())
}

pub fn max_of<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    values
        .into_iter()
        .fold(Rational::zero(), |acc, v| if *v > acc { v.clone() } else { acc })
}

pub fn is_integer(value: &Rational) -> bool {
    value.denom().is_one()
}

pub fn is_negative(value: &Rational) -> bool {
    value.is_negative()
}

/// Parses a comma-separated rational list, e.g. `2,1/2,1/2`.
pub fn parse_list(text: &str) -> Result<Vec<Rational>> {
    text.split(',').map(parse).collect()
}

pub mod serde_string {
    //! Serialize a rational as its `p/q` string.
    use serde::{Deserialize, Deserializer, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::render(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        super::parse(&text).map_err(serde::de::Error::custom)
    }
}
