//! Exact rational helpers: parsing, formatting and serde adapters.
//!
//! Values are written as plain integers when the denominator is one and as
//! `"a/b"` strings otherwise, so that a JSON round trip is exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: impl Into<BigInt>) -> Rational {
    Rational::from_integer(v.into())
}

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Parses `"7"`, `"-3"`, `"5/2"` (whitespace tolerated).
pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidParameter(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let num: BigInt = a.trim().parse().map_err(|_| bad())?;
            let den: BigInt = b.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(Error::Undefined(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(num, den))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn format(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Ceiling of a rational as a `u64`; errors when negative or too large.
pub fn ceil_u64(r: &Rational) -> Result<u64> {
    if r.is_negative() {
        return Err(Error::InvalidParameter(format!("negative value {}", format(r))));
    }
    let c = r.ceil().to_integer();
    u64::try_from(c).map_err(|_| Error::Overflow(format!("ceil({}) exceeds u64", format(r))))
}

/// Exact integer power by squaring.
pub fn pow(base: &Rational, mut exp: u32) -> Rational {
    let mut acc = Rational::one();
    let mut b = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= &b;
        }
        b = &b * &b;
        exp >>= 1;
    }
    acc
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Repr {
    Int(i64),
    Text(String),
}

fn to_repr(r: &Rational) -> Repr {
    if r.is_integer() {
        if let Ok(v) = i64::try_from(r.numer()) {
            return Repr::Int(v);
        }
    }
    Repr::Text(format(r))
}

fn from_repr<E: de::Error>(r: Repr) -> std::result::Result<Rational, E> {
    match r {
        Repr::Int(v) => Ok(int(v)),
        Repr::Text(s) => parse(&s).map_err(E::custom),
    }
}

/// `#[serde(with = "crate::rational::serde_rational")]`
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        to_repr(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        from_repr(Repr::deserialize(d)?)
    }
}

/// Same as [`serde_rational`] for `Vec<Rational>`.
pub mod serde_rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(to_repr).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        Vec::<Repr>::deserialize(d)?.into_iter().map(from_repr).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("5/2").unwrap(), ratio(5, 2));
        assert_eq!(parse(" 4 / 2 ").unwrap(), int(2));
        assert_eq!(format(&ratio(6, 4)), "3/2");
        assert_eq!(format(&int(-7)), "-7");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn ceil_and_pow() {
        assert_eq!(ceil_u64(&ratio(14, 3)).unwrap(), 5);
        assert_eq!(ceil_u64(&int(2)).unwrap(), 2);
        assert_eq!(pow(&ratio(5, 7), 3), ratio(125, 343));
        assert_eq!(pow(&ratio(5, 7), 0), int(1));
    }
}
