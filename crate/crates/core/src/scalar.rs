//! The coefficient field: exact rationals over arbitrary-precision integers.

use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};

/// Exact rational number. `BigRational` keeps the denominator positive and the
/// fraction reduced after every operation.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

pub fn factorial(n: usize) -> Scalar {
    (1..=n).fold(one(), |acc, k| acc * int(k as i64))
}

/// Parses `"p"`, `"p/q"` or `"-p/q"` (surrounding whitespace allowed).
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty scalar".into()));
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("invalid numerator in {t:?}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("invalid denominator in {t:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {t:?}")));
    }
    Ok(Scalar::new(n, d))
}

/// Exact fraction string, `"p"` for integers and `"p/q"` otherwise.
pub fn format_scalar(value: &Scalar) -> String {
    value.to_string()
}

/// Integer power with negative exponents allowed for nonzero bases.
pub fn pow(base: &Scalar, exp: i64) -> Scalar {
    if exp >= 0 {
        (0..exp).fold(one(), |acc, _| acc * base)
    } else {
        one() / pow(base, -exp)
    }
}

/// Serde adapter storing a scalar as its exact fraction string.
pub mod serde_scalar {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Scalar, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_scalar(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Scalar, D::Error> {
        let text = String::deserialize(d)?;
        parse_scalar(&text).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for lists of scalars.
pub mod serde_scalar_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        values: &[Scalar],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(values.iter().map(format_scalar))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Scalar>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| parse_scalar(t).map_err(serde::de::Error::custom))
            .collect()
    }
}
