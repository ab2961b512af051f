//! Exact scalars.
//!
//! All combinatorial maps in this crate have integer coefficients, so chains
//! are computed over the rationals and reduced into the run's field only where
//! the field matters: ranks, kernels and cochain comparisons.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn scalar(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `3`, `-2`, or `5/7`.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let bad = || Error::Invalid(format!("bad coefficient `{text}`"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(text.trim()).map_err(|_| bad())?,
        )),
    }
}

/// The coefficient field of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Field {
    #[default]
    Rational,
    Prime(u64),
}

impl serde::Serialize for Field {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if p < 2 || p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::Invalid(format!(
                "{p} is not a prime below 2^32"
            )));
        }
        Ok(Field::Prime(p))
    }

    /// Maps a rational into the field, as a canonical rational representative
    /// (residues in `0..p` for prime fields).
    pub fn normalize(&self, x: &Scalar) -> Result<Scalar> {
        match *self {
            Field::Rational => Ok(x.clone()),
            Field::Prime(_) => Ok(scalar(self.residue(x)? as i64)),
        }
    }

    /// The residue of `x` modulo `p`. Panics for the rational field.
    pub fn residue(&self, x: &Scalar) -> Result<u64> {
        let Field::Prime(p) = *self else {
            panic!("residue requested over the rationals");
        };
        let pb = BigInt::from(p);
        let num = x.numer().mod_floor(&pb).to_u64().unwrap();
        let den = x.denom().mod_floor(&pb).to_u64().unwrap();
        if den == 0 {
            return Err(Error::Invalid(format!(
                "coefficient {x} is undefined modulo {p}"
            )));
        }
        Ok(mul_mod(num, inv_mod(den, p), p))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Prime(p) => write!(f, "p:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        if s == "rational" {
            return Ok(Field::Rational);
        }
        match s.strip_prefix("p:").map(str::parse::<u64>) {
            Some(Ok(p)) => Field::prime(p),
            _ => Err(Error::Invalid(format!(
                "unknown field `{s}` (expected rational or p:<prime>)"
            ))),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2).
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Formats a scalar the way the cochain file format reads it back.
pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
