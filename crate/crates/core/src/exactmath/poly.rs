use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{is_integer, rat};

/// Dense univariate polynomial over the rationals.
///
/// `coeffs[r]` is the coefficient of `T^r`. The highest stored coefficient is
/// nonzero, so the zero polynomial has no coefficients at all.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The indeterminate `T`.
    pub fn x() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: BigRational, degree: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs)
    }

    /// `T - a`.
    pub fn linear_root(a: BigRational) -> Self {
        Self::from_coeffs(vec![-a, BigRational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    /// Integer coefficients, constant term first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigRational> {
        self.coeffs
    }

    /// Coefficient of `T^r`, zero past the degree.
    pub fn coeff(&self, r: usize) -> BigRational {
        self.coeffs
            .get(r)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(is_integer)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(0)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&rat(x))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divide by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading().recip();
        self.scale(&lc)
    }

    /// `T^N f(1/T)` with `N = deg f`.
    pub fn reversal(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::from_coeffs(c)
    }

    /// `f(s T)`.
    pub fn scale_variable(&self, s: &BigRational) -> Self {
        let mut pw = BigRational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &pw);
            pw *= s;
        }
        Self::from_coeffs(out)
    }

    /// `f(T^k)`.
    pub fn substitute_power(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return Self::constant(self.eval(&BigRational::one()));
        }
        let mut out = vec![BigRational::zero(); self.deg() * k + 1];
        for (r, c) in self.coeffs.iter().enumerate() {
            out[r * k] = c.clone();
        }
        Self::from_coeffs(out)
    }

    /// `f(-T)`.
    pub fn negate_variable(&self) -> Self {
        self.scale_variable(&rat(-1))
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(r, c)| c * rat(r as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division. Returns `None` when the divisor is zero.
    pub fn div_rem(&self, divisor: &RatPoly) -> Option<(RatPoly, RatPoly)> {
        let dd = divisor.degree()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let lc_inv = divisor.leading().recip();
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lc_inv;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Some((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn exact_div(&self, divisor: &RatPoly) -> Option<RatPoly> {
        let (q, r) = self.div_rem(divisor)?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &RatPoly) -> bool {
        other.exact_div(self).is_some()
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn squarefree_part(&self) -> RatPoly {
        if self.deg() == 0 {
            return self.monic();
        }
        let g = Self::gcd(self, &self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    /// Multiplicity of `a` as a root, by repeated synthetic division.
    /// The zero polynomial reports 0.
    pub fn root_multiplicity(&self, a: &BigRational) -> usize {
        if self.is_zero() {
            return 0;
        }
        let mut f = self.clone();
        let mut m = 0;
        loop {
            match synthetic_division(&f, a) {
                Some(q) => {
                    f = q;
                    m += 1;
                }
                None => return m,
            }
        }
    }

    /// Strip `(T - a)^m` for the full multiplicity `m`.
    pub fn strip_root(&self, a: &BigRational) -> (RatPoly, usize) {
        let mut f = self.clone();
        let mut m = 0;
        while let Some(q) = synthetic_division(&f, a) {
            f = q;
            m += 1;
        }
        (f, m)
    }

    /// Power sums `p_1..p_m` of the roots of a monic polynomial, by Newton's
    /// identities.
    pub fn power_sums(&self, m: usize) -> Vec<BigRational> {
        let n = self.deg();
        let lc = self.leading();
        // a_i: coefficient of T^{n-i} over the leading coefficient
        let a: Vec<BigRational> = (0..=n).map(|i| self.coeff(n - i) / &lc).collect();
        let mut p: Vec<BigRational> = Vec::with_capacity(m);
        for k in 1..=m {
            let mut s = if k <= n {
                a[k].clone() * rat(k as i64)
            } else {
                BigRational::zero()
            };
            for i in 1..k.min(n + 1) {
                s += &a[i] * &p[k - i - 1];
            }
            p.push(-s);
        }
        p
    }

    /// Content-free integer form: the polynomial multiplied by the lcm of the
    /// denominators.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.is_integral()
            .then(|| self.coeffs.iter().map(|c| c.numer().clone()).collect())
    }

    /// Indices `r` with `|c_r| > binom(N, r)`.
    pub fn binomial_bound_violations(&self) -> Vec<usize> {
        let n = self.deg() as u64;
        (0..self.coeffs.len())
            .filter(|&r| {
                let b = BigInt::from(binomial(n, r as u64));
                self.coeffs[r].abs() > BigRational::from_integer(b)
            })
            .collect()
    }
}

fn synthetic_division(f: &RatPoly, a: &BigRational) -> Option<RatPoly> {
    let n = f.degree()?;
    if n == 0 {
        return None;
    }
    let mut q = vec![BigRational::zero(); n];
    let mut carry = BigRational::zero();
    for r in (0..=n).rev() {
        let v = &f.coeffs[r] + &carry * a;
        if r == 0 {
            return v.is_zero().then(|| RatPoly::from_coeffs(q));
        }
        q[r - 1] = v.clone();
        carry = v;
    }
    unreachable!()
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::from_coeffs((0..n).map(|r| self.coeff(r) + rhs.coeff(r)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::from_coeffs((0..n).map(|r| self.coeff(r) - rhs.coeff(r)).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::from_coeffs(out)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: RatPoly) -> RatPoly {
        &self + &rhs
    }
}

impl Sub for RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: RatPoly) -> RatPoly {
        &self - &rhs
    }
}

impl Mul for RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: RatPoly) -> RatPoly {
        &self * &rhs
    }
}

impl Neg for RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        -&self
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (r, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = !a.is_one() || r == 0;
            if show_coeff {
                write!(f, "{a}")?;
            }
            match r {
                0 => {}
                1 => write!(f, "{}T", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}T^{r}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::frac;

    #[test]
    fn division_and_gcd() {
        let f = RatPoly::from_ints(&[-1, 0, 0, 1]); // T^3 - 1
        let g = RatPoly::from_ints(&[-1, 1]);
        let q = f.exact_div(&g).unwrap();
        assert_eq!(q, RatPoly::from_ints(&[1, 1, 1]));
        let h = RatPoly::from_ints(&[1, 0, 1]);
        assert!(f.exact_div(&h).is_none());
        assert_eq!(RatPoly::gcd(&f, &RatPoly::from_ints(&[-1, 0, 1])), g);
    }

    #[test]
    fn multiplicity_by_synthetic_division() {
        // (T-1)^2 (T^2+1)
        let f = &RatPoly::from_ints(&[1, -2, 1]) * &RatPoly::from_ints(&[1, 0, 1]);
        assert_eq!(f.root_multiplicity(&rat(1)), 2);
        assert_eq!(f.root_multiplicity(&rat(-1)), 0);
        let (rest, m) = f.strip_root(&rat(1));
        assert_eq!(m, 2);
        assert_eq!(rest, RatPoly::from_ints(&[1, 0, 1]));
    }

    #[test]
    fn power_sums_of_known_roots() {
        // roots 2, 3
        let f = RatPoly::from_ints(&[6, -5, 1]);
        assert_eq!(f.power_sums(3), vec![rat(5), rat(13), rat(35)]);
        let g = RatPoly::from_coeffs(vec![frac(1, 4), rat(-1), rat(1)]); // (T - 1/2)^2
        assert_eq!(g.power_sums(2), vec![rat(1), frac(1, 2)]);
    }

    #[test]
    fn squarefree_part_drops_repeats() {
        let f = &RatPoly::from_ints(&[1, -2, 1]) * &RatPoly::from_ints(&[1, 1]);
        assert_eq!(f.squarefree_part(), RatPoly::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn display_is_readable() {
        let f = RatPoly::from_coeffs(vec![frac(-1, 7), rat(0), rat(-3), rat(1)]);
        assert_eq!(f.to_string(), "T^3 - 3*T^2 - 1/7");
        assert_eq!(RatPoly::zero().to_string(), "0");
    }
}
