use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::factor::is_prime_u64;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// `nu_p(x)` together with the prime it was taken at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalValuation {
    pub prime: u64,
    pub value: Valuation,
}

/// `nu_p(x)`, rejecting composite `p`.
pub fn valuation(x: &BigRational, p: u64) -> Result<LocalValuation> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    let value = match nu_p(x, p) {
        Some(v) => Valuation::Finite(v),
        None => Valuation::Infinite,
    };
    Ok(LocalValuation { prime: p, value })
}

/// Exponent of `p` in a nonzero integer; 0 for zero.
pub fn nu_p_int(n: &BigInt, p: u64) -> u64 {
    if n.is_zero() {
        return 0;
    }
    let mut m = n.clone();
    let mut v = 0;
    // strip large powers first for big exponents
    let mut chunk = BigInt::from(p);
    let mut chunk_exp = 1u64;
    while (&m % &chunk).is_zero() {
        m /= &chunk;
        v += chunk_exp;
        let next = &chunk * &chunk;
        if (&m % &next).is_zero() {
            chunk = next;
            chunk_exp *= 2;
        }
    }
    let pb = BigInt::from(p);
    while (&m % &pb).is_zero() {
        m /= &pb;
        v += 1;
    }
    v
}

/// `nu_p(x)` without the primality check; `None` for zero.
pub fn nu_p(x: &BigRational, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    Some(nu_p_int(x.numer(), p) as i64 - nu_p_int(x.denom(), p) as i64)
}

/// `nu_q(x) = nu_p(x) / k` for `q = p^k`, as an exact rational.
pub fn nu_q(x: &BigRational, p: u64, k: u32) -> Option<BigRational> {
    nu_p(x, p).map(|v| BigRational::new(BigInt::from(v), BigInt::from(k)))
}
