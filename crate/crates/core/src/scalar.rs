//! Scalar trait for coefficient arithmetic plus exact rational helpers.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::Rat;

/// Commutative-ring scalar with division. Implemented by `f32`/`f64` and by
/// `BigRational`; everything the polynomial kernels need and nothing more.
pub trait Scalar:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_i64(v: i64) -> Self;
    /// x^k for small nonnegative k.
    fn pow_u(&self, k: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

impl Scalar for f32 {
    fn from_i64(v: i64) -> Self {
        v as f32
    }
}

impl Scalar for Rat {
    fn from_i64(v: i64) -> Self {
        Rat::from_integer(BigInt::from(v))
    }
}

/// Shorthand rational constructor.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

/// Integer as a rational.
pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// x^e with negative exponents allowed (x must be nonzero when e < 0).
pub fn rat_pow(x: &Rat, e: i64) -> Rat {
    if e >= 0 {
        x.pow_u(e as usize)
    } else {
        Rat::one() / x.pow_u((-e) as usize)
    }
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Largest dyadic rational q = m / 2^bits with q^2 <= x. Requires x >= 0.
pub fn sqrt_lower(x: &Rat, bits: u32) -> Rat {
    assert!(!x.is_negative(), "sqrt of a negative rational");
    let scale = BigUint::one() << (2 * bits);
    // floor(x * 4^bits) = floor(num * 4^bits / den)
    let num = x.numer().magnitude() * &scale;
    let scaled = num / x.denom().magnitude();
    let root = scaled.sqrt(); // floor square root
    Rat::new(BigInt::from(root), BigInt::from(BigUint::one() << bits))
}

/// Smallest dyadic rational q = m / 2^bits with q^2 >= x. Requires x >= 0.
pub fn sqrt_upper(x: &Rat, bits: u32) -> Rat {
    let lo = sqrt_lower(x, bits);
    if &lo * &lo == *x {
        lo
    } else {
        lo + Rat::new(BigInt::one(), BigInt::from(BigUint::one() << bits))
    }
}

/// Formats a rational as the canonical "num/den" string (denominator always
/// printed, e.g. "1/1").
pub fn format_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses "num/den" (or a bare integer) into a rational.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|e| format!("bad numerator {num:?}: {e}"))?;
    let d: BigInt = den.parse().map_err(|e| format!("bad denominator {den:?}: {e}"))?;
    if d.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(Rat::new(n, d))
}

/// Serde adapters keeping every rational on the wire as a "num/den" string.
pub mod rat_string {
    use super::{format_rat, parse_rat};
    use crate::Rat;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        format_rat(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

/// Same as [`rat_string`] for vectors of rationals.
pub mod rat_vec_string {
    use super::{format_rat, parse_rat};
    use crate::Rat;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(format_rat).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        strings
            .iter()
            .map(|s| parse_rat(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Rational to nearest f64 (mirror values only, never used in certificates).
pub fn rat_to_f64(r: &Rat) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}
