use num_rational::BigRational;
use num_traits::{One, Zero};

use super::RatPoly;
use crate::error::{Error, Result};

/// An integral domain with exact division, enough for fraction-free
/// elimination.
pub trait ExactRing: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / other`, where the caller guarantees divisibility.
    fn exact_div(&self, other: &Self) -> Self;
}

impl ExactRing for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, other: &Self) -> Self {
        self / other
    }
}

impl ExactRing for RatPoly {
    fn zero() -> Self {
        RatPoly::zero()
    }
    fn one() -> Self {
        RatPoly::one()
    }
    fn is_zero(&self) -> bool {
        RatPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, other: &Self) -> Self {
        let (q, r) = self.div_rem(other).expect("division by zero polynomial");
        debug_assert!(r.is_zero(), "Bareiss step was not exact");
        q
    }
}

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
pub fn bareiss_det<R: ExactRing>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    if n == 0 {
        return R::one();
    }
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return R::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = v.exact_div(&prev);
            }
            m[i][k] = R::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

/// Sylvester matrix of two coefficient lists (constant term first, nonzero
/// leading coefficient). Size `deg f + deg g`.
pub fn sylvester_matrix<R: ExactRing>(f: &[R], g: &[R]) -> Vec<Vec<R>> {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![R::zero(); size];
        for (i, c) in f.iter().rev().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![R::zero(); size];
        for (i, c) in g.iter().rev().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Resultant over any exact ring, with the convention
/// `Res(f, g) = lc(f)^deg g * prod g(alpha_i)`.
pub fn resultant_generic<R: ExactRing>(f: &[R], g: &[R]) -> R {
    bareiss_det(sylvester_matrix(f, g))
}

/// Resultant of two nonzero rational polynomials.
pub fn resultant(f: &RatPoly, g: &RatPoly) -> Result<BigRational> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(resultant_generic(f.coeffs(), g.coeffs()))
}
