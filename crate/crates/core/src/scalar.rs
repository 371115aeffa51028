//! Scalar abstraction shared by the matrix and polynomial code.
//!
//! Everything that produces a verdict runs over [`Rational`](crate::Rational).
//! The same routines also run over floating point (handy for quick numeric
//! sanity checks) and over the prime fields in [`crate::algebra::prime_field`],
//! which the plane-curve analysis uses for modular certificates.

use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serializer};

use crate::algebra::Matrix;
use crate::error::{Error, Result};

/// A commutative field, as far as the linear algebra here is concerned.
pub trait Field: Num + Clone + Neg<Output = Self> + fmt::Debug + Send + Sync + 'static {
    /// Zero test used for pivoting and trimming. Exact fields compare with
    /// zero; floating point uses a small absolute threshold.
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn from_i64(v: i64) -> Self;

    /// Whether `is_negligible` is an exact zero test.
    fn is_exact() -> bool {
        true
    }

    /// Rank of a matrix over this field.
    fn matrix_rank(m: &Matrix<Self>) -> usize {
        m.bareiss().pivots.len()
    }
}

impl Field for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn matrix_rank(m: &Matrix<Self>) -> usize {
        m.rational_rank()
    }
}

impl Field for f64 {
    fn is_negligible(&self) -> bool {
        self.abs() <= 1e-10
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn is_exact() -> bool {
        false
    }
}

impl Field for f32 {
    fn is_negligible(&self) -> bool {
        self.abs() <= 1e-5
    }

    fn from_i64(v: i64) -> Self {
        v as f32
    }

    fn is_exact() -> bool {
        false
    }
}

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom() == &BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p/q` or `p`. Whitespace around the parts is ignored and a zero
/// denominator is rejected.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Floor of a rational as an `i64`, when it fits.
pub fn floor_i64(q: &BigRational) -> Option<i64> {
    q.floor().to_integer().to_i64()
}

pub fn abs(q: &BigRational) -> BigRational {
    q.abs()
}

/// Serde adapters so rationals travel as `"p/q"` strings in JSON.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigRational, D::Error> {
        let raw = RationalRepr::deserialize(d)?;
        raw.into_rational().map_err(serde::de::Error::custom)
    }

    /// Accept both `"3/4"` and bare integers.
    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum RationalRepr {
        Str(String),
        Int(i64),
    }

    impl RationalRepr {
        pub(crate) fn into_rational(self) -> Result<BigRational> {
            match self {
                RationalRepr::Str(s) => parse_rational(&s),
                RationalRepr::Int(i) => Ok(int(i)),
            }
        }
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
            s.collect_seq(v.iter().map(format_rational))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigRational>, D::Error> {
            let raw = Vec::<RationalRepr>::deserialize(d)?;
            raw.into_iter()
                .map(|r| r.into_rational().map_err(serde::de::Error::custom))
                .collect()
        }
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(q: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
            match q {
                Some(q) => s.serialize_str(&format_rational(q)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<BigRational>, D::Error> {
            let raw = Option::<RationalRepr>::deserialize(d)?;
            raw.map(|r| r.into_rational().map_err(serde::de::Error::custom)).transpose()
        }
    }
}
