//! Exact rationals and their `p/q` text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number used as the carrier of every setting.
pub type Q = BigRational;

pub fn int(n: i64) -> Q {
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

/// Formats in lowest terms as `p/q`, or `p` when the denominator is 1.
pub fn format(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `p/q` or a finite decimal such as `-0.25`.
pub fn parse(s: &str) -> Result<Q> {
    let t = s.trim();
    let bad = || Error::ParseRational(s.to_string());
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Q::new(n, d));
    }
    if let Some((whole, fracpart)) = t.split_once('.') {
        if fracpart.is_empty() || !fracpart.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole = whole.trim_start_matches(['-', '+']);
        let digits = format!("{}{}", if whole.is_empty() { "0" } else { whole }, fracpart);
        let mut n: BigInt = digits.parse().map_err(|_| bad())?;
        if negative {
            n = -n;
        }
        let d = num_traits::pow(BigInt::from(10), fracpart.len());
        return Ok(Q::new(n, d));
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(Q::from_integer(n))
}

/// Exact `n`-th root of a positive rational, if it is rational.
pub fn nth_root(q: &Q, n: u32) -> Option<Q> {
    if !q.is_positive() || n == 0 {
        return None;
    }
    let root = |x: &BigInt| {
        let r = x.nth_root(n);
        (num_traits::pow(r.clone(), n as usize) == *x).then_some(r)
    };
    Some(Q::new(root(q.numer())?, root(q.denom())?))
}

/// Integer power with a possibly negative exponent; `None` for `0^negative`.
pub fn powi(q: &Q, e: i64) -> Option<Q> {
    if e < 0 && q.is_zero() {
        return None;
    }
    let base = if e < 0 { q.recip() } else { q.clone() };
    Some(num_traits::pow(base, e.unsigned_abs() as usize))
}

pub fn serialize<S: Serializer>(q: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format(q))
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
    let s = String::deserialize(d)?;
    parse(&s).map_err(serde::de::Error::custom)
}

/// Serde adapter for `Vec<Q>` as a list of `p/q` strings.
pub mod vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for q in v {
            seq.serialize_element(&format(q))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Q>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter().map(|s| parse(s).map_err(serde::de::Error::custom)).collect()
    }
}

/// Serde adapter for `Option<Q>`.
pub mod opt {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Q>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match v {
            Some(q) => s.serialize_some(&format(q)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Q>, D::Error> {
        let raw = Option::<String>::deserialize(d)?;
        raw.map(|s| parse(&s).map_err(serde::de::Error::custom)).transpose()
    }
}
