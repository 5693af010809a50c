//! Exact arithmetic kernel.
//!
//! Everything here works over `BigRational` and never touches floating point.
//! Local questions (valuations, Smith forms, Newton polygons) are answered at a
//! single prime `p`.

mod cyclotomic;
mod factor;
mod matrix;
mod newton;
mod poly;
mod resultant;
mod smith;
mod square_class;
mod valuation;

pub use cyclotomic::{cyclotomic, divisors, euler_phi, factor_u64};
pub use factor::{factor_integer, is_prime, is_prime_u64, squarefree_part};
pub use matrix::RatMatrix;
pub use newton::{newton_polygon, NewtonPolygon, Segment};
pub use poly::RatPoly;
pub use resultant::{bareiss_det, resultant, resultant_generic, sylvester_matrix, ExactRing};
pub use smith::{local_elementary_valuations, local_smith_lengths};
pub use square_class::{square_class, SquareClass};
pub use valuation::{nu_p, nu_p_int, nu_q, valuation, LocalValuation, Valuation};

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;

use num_traits::{One, Signed, Zero};

/// `n/1` as a rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `num/den` as a reduced rational. Panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `base^exp` for a possibly negative exponent.
pub fn rat_pow(base: &BigRational, exp: i64) -> BigRational {
    if exp >= 0 {
        num_traits::pow::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow::pow(base.recip(), exp.unsigned_abs() as usize)
    }
}

/// `q^exp` where `q = p^k`, with `exp` possibly negative.
pub fn prime_power(p: u64, k: u32, exp: i64) -> BigRational {
    rat_pow(&rat(p as i64), exp * k as i64)
}

pub(crate) fn is_integer(x: &BigRational) -> bool {
    x.denom().is_one()
}

/// True when `|n|` is a power of `p` (including `p^0 = 1`).
pub fn is_power_of(n: &BigInt, p: u64) -> bool {
    if n.is_zero() {
        return false;
    }
    let mut m = n.abs();
    let pb = BigInt::from(p);
    while (&m % &pb).is_zero() {
        m /= &pb;
    }
    m.is_one()
}
