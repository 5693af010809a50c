use num_traits::One;

use super::RatPoly;
use crate::error::{Error, Result};

/// Prime factorization of a machine integer, by trial division.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factor_u64(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds: Vec<u64> = (1..=n)
        .take_while(|d| d * d <= n)
        .filter(|d| n % d == 0)
        .collect();
    let upper: Vec<u64> = ds
        .iter()
        .rev()
        .map(|d| n / d)
        .filter(|&e| e * e != n)
        .collect();
    ds.extend(upper);
    ds
}

/// The n-th cyclotomic polynomial.
///
/// Starts from `T - 1`, applies `f -> f(T^p) / f(T)` once per distinct prime
/// `p | n`, then substitutes `T -> T^(n / rad n)`.
pub fn cyclotomic(n: u64) -> Result<RatPoly> {
    if n == 0 {
        return Err(Error::ZeroIndex);
    }
    let mut f = RatPoly::from_ints(&[-1, 1]);
    let mut radical = 1u64;
    for (p, _) in factor_u64(n) {
        radical *= p;
        f = f
            .substitute_power(p as usize)
            .exact_div(&f)
            .expect("cyclotomic step divides");
    }
    let f = f.substitute_power((n / radical) as usize);
    debug_assert!(f.leading().is_one());
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_indices() {
        assert_eq!(cyclotomic(1).unwrap(), RatPoly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic(4).unwrap(), RatPoly::from_ints(&[1, 0, 1]));
        assert_eq!(
            cyclotomic(12).unwrap(),
            RatPoly::from_ints(&[1, 0, -1, 0, 1])
        );
        assert_eq!(cyclotomic(0), Err(Error::ZeroIndex));
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(1), 1);
    }
}
