//! Polynomials whose roots are built from the roots of others: powers
//! `z^k` (base extension) and twisted products `z w / q^((d1+d2)/2)`
//! (direct products), with the parity statements they satisfy.

use serde::Serialize;

use num_traits::{One, Zero};

use crate::exactmath::{rat, rat_pow, resultant_generic, BigInt, BigRational, RatPoly};
use crate::parity::{ParityKind, ParityVerdict, Theorem};
use crate::reconstruct::elementary_from_power_sums;
use crate::report::{AsCheck, CheckResult, Verdict};
use crate::weil::{FeSign, FrobPolynomial};
use crate::{Error, Result};

/// `Res_x(f(x), g_x)` for `g_x` with coefficients in `Q[T]`, made monic in `T`.
fn resultant_in_t(f: &RatPoly, g: &[RatPoly]) -> RatPoly {
    let f: Vec<RatPoly> = f
        .coeffs()
        .iter()
        .map(|c| RatPoly::constant(c.clone()))
        .collect();
    resultant_generic(&f, g).monic()
}

/// Monic polynomial with roots `z_i^k`. Negative `k` goes through the
/// reversal `T^N f(1/T) / f(0)`.
pub fn power_map(f: &RatPoly, k: i64) -> Result<RatPoly> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if k == 0 {
        return Err(Error::InvalidArgument("power k must be nonzero".into()));
    }
    if k < 0 {
        if f.constant_term() == BigRational::from_integer(0.into()) {
            return Err(Error::ZeroConstantTerm);
        }
        let rev = f.reversal().monic();
        return power_map(&rev, -k);
    }
    if k == 1 || f.deg() == 0 {
        return Ok(f.clone());
    }
    // x^k - T
    let k = k as usize;
    let mut g = vec![RatPoly::zero(); k + 1];
    g[0] = RatPoly::from_ints(&[0, -1]);
    g[k] = RatPoly::one();
    Ok(resultant_in_t(f, &g))
}

/// Above this composed degree the Sylvester elimination over `Q[T]` gets too
/// slow and [`product_by_power_sums`] takes over.
const RESULTANT_DEGREE_LIMIT: usize = 24;

/// Power sums `p_1..p_m` of the roots of a monic integer polynomial.
fn integer_power_sums(f: &[BigInt], m: usize) -> Vec<BigInt> {
    let n = f.len() - 1;
    let mut p: Vec<BigInt> = Vec::with_capacity(m);
    for k in 1..=m {
        let mut s = if k <= n {
            &f[n - k] * BigInt::from(k)
        } else {
            BigInt::zero()
        };
        for i in 1..k.min(n + 1) {
            s += &f[n - i] * &p[k - i - 1];
        }
        p.push(-s);
    }
    p
}

/// Monic polynomial with roots `z_i w_j / s`: `H` with roots `z_i w_j` from
/// `p_n(H) = p_n(f) p_n(g)` and Newton's identities, then `H(sT) / s^m`.
fn product_by_power_sums(f: &RatPoly, g: &RatPoly, s: &BigRational) -> RatPoly {
    let m = f.deg() * g.deg();
    let (Some(fi), Some(gi)) = (f.integer_coeffs(), g.integer_coeffs()) else {
        return product_by_rational_power_sums(f, g, s);
    };
    let (pf, pg) = (integer_power_sums(&fi, m), integer_power_sums(&gi, m));
    let ph: Vec<BigInt> = pf.iter().zip(&pg).map(|(a, b)| a * b).collect();
    // k e_k = sum_{i=1}^k (-1)^(i-1) e_(k-i) p_i
    let mut e = vec![BigInt::one()];
    for k in 1..=m {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            let term = &e[k - i] * &ph[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / BigInt::from(k));
    }
    let coeffs = (0..=m)
        .map(|r| {
            let c = BigRational::from_integer(if (m - r) % 2 == 0 {
                e[m - r].clone()
            } else {
                -e[m - r].clone()
            });
            c / rat_pow(s, (m - r) as i64)
        })
        .collect();
    RatPoly::from_coeffs(coeffs)
}

fn product_by_rational_power_sums(f: &RatPoly, g: &RatPoly, s: &BigRational) -> RatPoly {
    let m = f.deg() * g.deg();
    let (pf, pg) = (f.power_sums(m), g.power_sums(m));
    let mut sn = rat(1);
    let ph: Vec<BigRational> = (0..m)
        .map(|i| {
            sn *= s;
            &pf[i] * &pg[i] / &sn
        })
        .collect();
    let e = elementary_from_power_sums(&ph, m);
    let coeffs = (0..=m)
        .map(|r| {
            if (m - r) % 2 == 0 {
                e[m - r].clone()
            } else {
                -e[m - r].clone()
            }
        })
        .collect();
    RatPoly::from_coeffs(coeffs)
}

fn q_of(p: u64, k: u32) -> BigRational {
    BigRational::from_integer(num_traits::pow(BigInt::from(p), k as usize))
}

/// Monic polynomial with roots `z_i w_j / q^((d1+d2)/2)` for untwisted `f`
/// (weight `d1`) and `g` (weight `d2`) over `q = p^k`.
pub fn product_map(f: &RatPoly, d1: u32, g: &RatPoly, d2: u32, p: u64, k: u32) -> Result<RatPoly> {
    if d1 % 2 != d2 % 2 {
        return Err(Error::ParityMismatch(d1, d2));
    }
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_monic() || !g.is_monic() {
        return Err(Error::NotMonic);
    }
    let s = rat_pow(&q_of(p, k), ((d1 + d2) / 2) as i64);
    if f.deg() * g.deg() > RESULTANT_DEGREE_LIMIT {
        return Ok(product_by_power_sums(f, g, &s));
    }
    // x^m g(s T / x) = sum_j g_j s^j T^j x^(m-j)
    let m = g.deg();
    let mut h = vec![RatPoly::zero(); m + 1];
    let mut sj = rat(1);
    for (j, gj) in g.coeffs().iter().enumerate() {
        h[m - j] = RatPoly::monomial(gj * &sj, j);
        sj *= &s;
    }
    Ok(resultant_in_t(f, &h))
}

/// Parity of `(-2)^N q^(k e) Phi^(k)(-1)` for a base extension of degree `k`;
/// the exponent collapses to `0` for even `k`.
pub fn base_extension_parity_check(fp: &FrobPolynomial, k: i64, e: i64) -> Result<ParityVerdict> {
    if fp.sign == FeSign::Incompatible {
        return Err(Error::FunctionalEquation);
    }
    let phik = power_map(&fp.phi, k)?;
    let exponent = if k % 2 == 0 { 0 } else { k * e };
    let q = BigRational::from_integer(fp.q());
    let value = fp.minus_two_power() * rat_pow(&q, exponent) * phik.eval_int(-1);
    Ok(ParityVerdict::from_value(
        Theorem::BaseExtension,
        value,
        exponent,
        None,
    ))
}

/// `e(X_1 x X_2) mod 2`: `N1 N2 / 4` for odd degrees, `N1 e2 + N2 e1` for
/// even ones.
pub fn e_product_parity(n1: u64, n2: u64, d1: u32, d2: u32, e1: u64, e2: u64) -> Result<u8> {
    Ok((predicted_exponent(n1, n2, d1, d2, e1, e2)? % 2) as u8)
}

fn predicted_exponent(n1: u64, n2: u64, d1: u32, d2: u32, e1: u64, e2: u64) -> Result<u64> {
    if d1 % 2 != d2 % 2 {
        return Err(Error::ParityMismatch(d1, d2));
    }
    if d1 % 2 == 1 {
        if (n1 * n2) % 4 != 0 {
            return Err(Error::InvalidArgument(format!(
                "N1 N2 = {} is not divisible by 4",
                n1 * n2
            )));
        }
        Ok(n1 * n2 / 4)
    } else {
        Ok(n1 * e2 + n2 * e1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompositionReport {
    #[serde(serialize_with = "serialize_poly")]
    pub result: RatPoly,
    pub predicted_exponent: i64,
    pub verdict: ParityVerdict,
    /// Side conditions on the inputs; the verdict is only a theorem when all hold.
    pub hypotheses: Vec<(String, bool)>,
}

fn serialize_poly<S: serde::Serializer>(p: &RatPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    crate::json::rational_vec::serialize(p.coeffs(), s)
}

impl CompositionReport {
    pub fn hypotheses_met(&self) -> bool {
        self.hypotheses.iter().all(|h| h.1)
    }
}

impl AsCheck for CompositionReport {
    fn as_check(&self) -> CheckResult {
        let mut c = self.verdict.as_check();
        if !self.hypotheses_met() && self.verdict.kind == ParityKind::Fail {
            c.verdict = Verdict::NotApplicable;
        }
        for (h, ok) in &self.hypotheses {
            c = c.with(h.clone(), ok);
        }
        c.with("degree", self.result.deg())
    }
}

/// Square-class test of `(-2)^(N1 N2) q^e Phi(-1)` for the composed product,
/// with the exponent predicted from the inputs.
#[allow(clippy::too_many_arguments)]
pub fn product_parity_check(
    f: &RatPoly,
    d1: u32,
    g: &RatPoly,
    d2: u32,
    p: u64,
    k: u32,
    e1: u64,
    e2: u64,
) -> Result<CompositionReport> {
    let phi = product_map(f, d1, g, d2, p, k)?;
    let (n1, n2) = (f.deg() as u64, g.deg() as u64);
    let e = predicted_exponent(n1, n2, d1, d2, e1, e2)? as i64;
    let q = q_of(p, k);
    let value = num_traits::pow(rat(-2), (n1 * n2) as usize) * rat_pow(&q, e) * phi.eval_int(-1);
    let verdict = ParityVerdict::from_value(Theorem::Product, value, e, None);
    let mut hypotheses = Vec::new();
    if d1 % 2 == 0 {
        // each odd sign needs the other factor's own square test
        let a = FrobPolynomial::from_untwisted(p, k, d1, f)?;
        let b = FrobPolynomial::from_untwisted(p, k, d2, g)?;
        hypotheses.push(("fe_1".into(), a.sign != FeSign::Incompatible));
        hypotheses.push(("fe_2".into(), b.sign != FeSign::Incompatible));
        if a.sign == FeSign::Minus {
            hypotheses.push(("square_2".into(), own_square(&b, e2)));
        }
        if b.sign == FeSign::Minus {
            hypotheses.push(("square_1".into(), own_square(&a, e1)));
        }
    } else {
        hypotheses.push(("N1_even".into(), n1 % 2 == 0));
        hypotheses.push(("N2_even".into(), n2 % 2 == 0));
    }
    Ok(CompositionReport {
        result: phi,
        predicted_exponent: e,
        verdict,
        hypotheses,
    })
}

fn own_square(fp: &FrobPolynomial, e: u64) -> bool {
    crate::parity::test_main2(fp, e).kind != ParityKind::Fail
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasets::k3_phi;
    use crate::exactmath::{square_class, SquareClass};
    use crate::weil::untwist;

    #[test]
    fn power_examples() {
        let f = RatPoly::from_ints(&[-5, 1]);
        assert_eq!(power_map(&f, 3).unwrap(), RatPoly::from_ints(&[-125, 1]));
        assert_eq!(
            power_map(&RatPoly::from_ints(&[1, 0, 1]), 2).unwrap(),
            RatPoly::from_ints(&[1, 2, 1])
        );
        assert_eq!(
            power_map(&f, -2).unwrap(),
            RatPoly::from_coeffs(vec![crate::exactmath::frac(-1, 25), rat(1)])
        );
        assert!(power_map(&f, 0).is_err());
        assert_eq!(
            power_map(&RatPoly::from_ints(&[0, 1]), -1),
            Err(Error::ZeroConstantTerm)
        );
    }

    #[test]
    fn k3_squared() {
        let phi2 = power_map(&k3_phi(1), 2).unwrap();
        assert_eq!(phi2.deg(), 22);
        let v = num_traits::pow(rat(-2), 22) * phi2.eval_int(-1);
        let c = square_class(&v);
        assert!(c.is_one() || c.is_zero());
    }

    #[test]
    fn product_with_trivial_eigenvalue() {
        let fp = FrobPolynomial::from_normalized(7, 1, 2, k3_phi(0)).unwrap();
        let psi = untwist(&fp).unwrap();
        // g = T - q^(d2/2) with d2 = 2
        let out = product_map(&psi, 2, &RatPoly::from_ints(&[-7, 1]), 2, 7, 1).unwrap();
        assert_eq!(out, k3_phi(0));
        let err = product_map(&psi, 2, &RatPoly::from_ints(&[7, 0, 1]), 1, 7, 1);
        assert_eq!(err, Err(Error::ParityMismatch(2, 1)));
    }

    #[test]
    fn large_products_agree() {
        let g = RatPoly::from_ints(&[49, 3, 1]);
        let s = rat(49);
        let mut h = vec![RatPoly::zero(); 3];
        for (j, gj) in g.coeffs().iter().enumerate() {
            h[2 - j] = RatPoly::monomial(gj * rat(49).pow(j as i32), j);
        }
        let f = RatPoly::from_ints(&[-3, 7, 0, -5, 2, 1]);
        assert_eq!(product_by_power_sums(&f, &g, &s), resultant_in_t(&f, &h));
        let half = RatPoly::from_coeffs(vec![crate::exactmath::frac(1, 2), rat(1)]);
        assert_eq!(
            product_by_power_sums(&half, &g, &s),
            resultant_in_t(&half, &h)
        );
        let psi = untwist(&FrobPolynomial::from_normalized(7, 1, 2, k3_phi(1)).unwrap()).unwrap();
        let big = product_map(&psi, 2, &psi, 2, 7, 1).unwrap();
        assert_eq!(big.deg(), 484);
        assert_eq!(num_traits::Signed::abs(&big.constant_term()), rat(1));
    }

    #[test]
    fn weight_one_pairs() {
        let (a, b, q) = (3i64, -2i64, 7i64);
        let f = RatPoly::from_ints(&[q, -a, 1]);
        let g = RatPoly::from_ints(&[q, -b, 1]);
        let r = product_parity_check(&f, 1, &g, 1, 7, 1, 0, 0).unwrap();
        assert_eq!(r.result.deg(), 4);
        assert_eq!(r.result.constant_term(), rat(1));
        assert_eq!(r.predicted_exponent, 1);
        assert_eq!(
            r.result.eval_int(-1),
            crate::exactmath::frac((a + b) * (a + b), q)
        );
        assert_eq!(r.verdict.kind, ParityKind::Pass);
        // a + b = 0: the composed polynomial vanishes at -1
        let g = RatPoly::from_ints(&[q, a, 1]);
        let r = product_parity_check(&f, 1, &g, 1, 7, 1, 0, 0).unwrap();
        assert_eq!(r.verdict.kind, ParityKind::Vacuous);
    }

    #[test]
    fn even_product() {
        // two curves' worth of unit-circle factors with square class 1
        let f = RatPoly::from_ints(&[1, 1, 1]); // phi_3: (-2)^2 * 1 = 4
        let g = RatPoly::from_ints(&[1, 0, 1]); // phi_4: 4 * 2 = 8, class 2
        let fp = FrobPolynomial::from_normalized(5, 1, 2, f.clone()).unwrap();
        let psi_f = untwist(&fp).unwrap();
        let r = product_parity_check(&psi_f, 2, &psi_f, 2, 5, 1, 0, 0).unwrap();
        assert!(r.hypotheses_met());
        assert_eq!(r.verdict.kind, ParityKind::Pass);
        let gp = FrobPolynomial::from_normalized(5, 1, 2, g).unwrap();
        let r = product_parity_check(&psi_f, 2, &untwist(&gp).unwrap(), 2, 5, 1, 0, 0).unwrap();
        assert_eq!(r.verdict.tested_value, SquareClass::one());
    }

    #[test]
    fn base_extension() {
        let fp = FrobPolynomial::from_normalized(7, 1, 2, k3_phi(0)).unwrap();
        let v = base_extension_parity_check(&fp, 2, 1).unwrap();
        assert!(matches!(v.kind, ParityKind::Pass | ParityKind::Vacuous));
        // odd k keeps the class of the main2 expression
        let v3 = base_extension_parity_check(&fp, 3, 1).unwrap();
        assert_eq!(
            v3.tested_value,
            crate::parity::test_main2(&fp, 1).tested_value
        );
        // T - 1 stays T - 1: (-2) * (-2) = 4
        let t = FrobPolynomial::from_normalized(7, 1, 2, RatPoly::from_ints(&[-1, 1])).unwrap();
        for k in 1..5 {
            let v = base_extension_parity_check(&t, k, 0).unwrap();
            assert_eq!((v.kind, v.value), (ParityKind::Pass, rat(4)));
        }
        let t = FrobPolynomial::from_normalized(7, 1, 2, RatPoly::from_ints(&[1, 1])).unwrap();
        assert_eq!(
            base_extension_parity_check(&t, 3, 0).unwrap().kind,
            ParityKind::Vacuous
        );
        let bad = FrobPolynomial::from_normalized(7, 1, 2, RatPoly::from_ints(&[2, 1])).unwrap();
        assert_eq!(
            base_extension_parity_check(&bad, 2, 0),
            Err(Error::FunctionalEquation)
        );
    }

    #[test]
    fn e_parities() {
        assert_eq!(e_product_parity(2, 2, 1, 1, 0, 0), Ok(1));
        assert_eq!(e_product_parity(22, 22, 2, 2, 1, 1), Ok(0));
        assert_eq!(e_product_parity(5, 3, 2, 2, 0, 0), Ok(0));
        assert!(e_product_parity(2, 2, 1, 2, 0, 0).is_err());
        assert!(e_product_parity(1, 2, 1, 1, 0, 0).is_err());
    }
}
