//! Weil polynomials in normalized (weight 0) form and the classical
//! admissibility checks: root moduli, real roots, l-adic units, the Hodge
//! bound on coefficient valuations, and the forced eigenvalue at 1.

mod roots;

pub use roots::complex_roots;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exactmath::{is_power_of, is_prime_u64, nu_q, rat, BigRational, RatPoly};
use crate::report::{AsCheck, CheckResult, Verdict};
use crate::{Error, Result};

/// Field and degree data. The twist is always `d/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeilContext {
    pub p: u64,
    pub k: u32,
    pub d: u32,
    #[serde(rename = "N")]
    pub n: usize,
}

impl WeilContext {
    pub fn new(p: u64, k: u32, d: u32, n: usize) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidArgument("k must be positive".into()));
        }
        Ok(WeilContext { p, k, d, n })
    }

    pub fn q(&self) -> BigInt {
        num_traits::pow(BigInt::from(self.p), self.k as usize)
    }

    /// `q^(m d/2)` when it is rational.
    pub fn half_twist_power(&self, m: i64) -> Option<BigRational> {
        let exp = m * self.k as i64 * self.d as i64;
        if exp % 2 != 0 {
            return None;
        }
        Some(crate::exactmath::rat_pow(&rat(self.p as i64), exp / 2))
    }
}

/// Sign in `T^N phi(1/T) = sign * phi(T)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FeSign {
    Plus,
    Minus,
    Incompatible,
}

impl FeSign {
    pub fn value(self) -> Option<i64> {
        match self {
            FeSign::Plus => Some(1),
            FeSign::Minus => Some(-1),
            FeSign::Incompatible => None,
        }
    }

    pub fn from_value(e: i64) -> Self {
        match e {
            1 => FeSign::Plus,
            -1 => FeSign::Minus,
            _ => FeSign::Incompatible,
        }
    }
}

impl fmt::Display for FeSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FeSign::Plus => f.write_str("+1"),
            FeSign::Minus => f.write_str("-1"),
            FeSign::Incompatible => f.write_str("incompatible"),
        }
    }
}

/// A normalized Frobenius polynomial: roots conjecturally on the unit circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobPolynomial {
    pub ctx: WeilContext,
    pub phi: RatPoly,
    pub sign: FeSign,
}

impl FrobPolynomial {
    pub fn from_normalized(p: u64, k: u32, d: u32, phi: RatPoly) -> Result<Self> {
        if phi.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !phi.is_monic() {
            return Err(Error::NotMonic);
        }
        let ctx = WeilContext::new(p, k, d, phi.deg())?;
        let sign = functional_equation_sign(&phi);
        Ok(FrobPolynomial { ctx, phi, sign })
    }

    /// From the integral polynomial with roots of absolute value `q^(d/2)`.
    pub fn from_untwisted(p: u64, k: u32, d: u32, psi: &RatPoly) -> Result<Self> {
        if psi.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let ctx = WeilContext::new(p, k, d, psi.deg())?;
        let psi = psi.monic();
        let n = ctx.n as i64;
        let mut coeffs = Vec::with_capacity(ctx.n + 1);
        for (r, c) in psi.coeffs().iter().enumerate() {
            if c.is_zero() {
                coeffs.push(BigRational::zero());
                continue;
            }
            let s = ctx
                .half_twist_power(r as i64 - n)
                .ok_or(Error::IrrationalTwist)?;
            coeffs.push(c * s);
        }
        Self::from_normalized(p, k, d, RatPoly::from_coeffs(coeffs))
    }

    pub fn degree(&self) -> usize {
        self.ctx.n
    }

    pub fn q(&self) -> BigInt {
        self.ctx.q()
    }

    /// `(-2)^N`.
    pub fn minus_two_power(&self) -> BigRational {
        num_traits::pow(rat(-2), self.ctx.n)
    }
}

/// `Psi(T) = q^(N d/2) phi(T / q^(d/2))`.
pub fn untwist(fp: &FrobPolynomial) -> Result<RatPoly> {
    let n = fp.ctx.n as i64;
    let mut coeffs = Vec::with_capacity(fp.ctx.n + 1);
    for (r, c) in fp.phi.coeffs().iter().enumerate() {
        if c.is_zero() {
            coeffs.push(BigRational::zero());
            continue;
        }
        let s = fp
            .ctx
            .half_twist_power(n - r as i64)
            .ok_or(Error::IrrationalTwist)?;
        coeffs.push(c * s);
    }
    Ok(RatPoly::from_coeffs(coeffs))
}

/// The unique `eps` with `T^N phi(1/T) = eps phi(T)`.
pub fn functional_equation_sign(phi: &RatPoly) -> FeSign {
    if phi.is_zero() || phi.constant_term().is_zero() {
        return FeSign::Incompatible;
    }
    let rev = phi.reversal();
    if &rev == phi {
        FeSign::Plus
    } else if rev == -phi {
        FeSign::Minus
    } else {
        FeSign::Incompatible
    }
}

/// Nonnegative Hodge numbers `h_{d-m,m}`, `m = 0..=d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeVector {
    pub d: u32,
    pub entries: Vec<u64>,
}

impl HodgeVector {
    pub fn new(d: u32, entries: Vec<u64>) -> Result<Self> {
        if entries.len() != d as usize + 1 {
            return Err(Error::HodgeLength {
                expected: d as usize + 1,
                found: entries.len(),
            });
        }
        Ok(HodgeVector { d, entries })
    }

    pub fn total(&self) -> usize {
        self.entries.iter().sum::<u64>() as usize
    }

    /// Serre symmetry `h_{d-m,m} = h_{m,d-m}`.
    pub fn is_symmetric(&self) -> bool {
        let n = self.entries.len();
        (0..n).all(|m| self.entries[m] == self.entries[n - 1 - m])
    }

    /// Slope of the Hodge polygon on `[s-1, s]`, for `s = 1..=total`.
    pub fn slopes(&self) -> Vec<u32> {
        self.entries
            .iter()
            .enumerate()
            .flat_map(|(m, &h)| std::iter::repeat_n(m as u32, h as usize))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealRootReport {
    pub d: u32,
    pub plus_one: usize,
    pub minus_one: usize,
}

impl RealRootReport {
    pub fn all_even(&self) -> bool {
        self.plus_one % 2 == 0 && self.minus_one % 2 == 0
    }
}

impl AsCheck for RealRootReport {
    fn as_check(&self) -> CheckResult {
        let verdict = if self.d % 2 == 0 {
            Verdict::NotApplicable
        } else if self.all_even() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        let c = CheckResult::new("real_root_multiplicity", verdict)
            .with("mult(+1)", self.plus_one)
            .with("mult(-1)", self.minus_one);
        if self.d % 2 == 0 {
            c.note("even degree: multiplicities are informational")
        } else {
            c
        }
    }
}

/// Exact multiplicities of `+1` and `-1` as roots of `phi`.
pub fn check_real_root_multiplicity(fp: &FrobPolynomial) -> RealRootReport {
    RealRootReport {
        d: fp.ctx.d,
        plus_one: fp.phi.root_multiplicity(&rat(1)),
        minus_one: fp.phi.root_multiplicity(&rat(-1)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LUnitReport {
    /// The untwisted polynomial is irrational or has a non-integer coefficient.
    NotIntegral,
    Checked {
        constant_term: BigInt,
        is_p_power: bool,
    },
}

impl AsCheck for LUnitReport {
    fn as_check(&self) -> CheckResult {
        match self {
            LUnitReport::NotIntegral => CheckResult::new("l_units", Verdict::Fail)
                .with("integral", false)
                .note("untwisted polynomial is not in Z[T]"),
            LUnitReport::Checked {
                constant_term,
                is_p_power,
            } => CheckResult::new(
                "l_units",
                if *is_p_power {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                },
            )
            .with("integral", true)
            .with("constant_term", constant_term),
        }
    }
}

/// The constant term of the untwisted polynomial must be `±p^m`.
pub fn check_l_units(fp: &FrobPolynomial) -> LUnitReport {
    let psi = match untwist(fp) {
        Ok(psi) if psi.is_integral() => psi,
        _ => return LUnitReport::NotIntegral,
    };
    let c = psi.constant_term().numer().clone();
    let is_p_power = is_power_of(&c, fp.ctx.p);
    LUnitReport::Checked {
        constant_term: c,
        is_p_power,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeilBoundsReport {
    pub sign: FeSign,
    /// Indices `r` with `|c_r| > binom(N, r)`.
    pub coefficient_violations: Vec<usize>,
    /// `max | |z| - 1 |` over roots other than `±1`; `None` when there are none.
    pub max_deviation: Option<f64>,
    pub tol: f64,
}

impl WeilBoundsReport {
    pub fn exact_ok(&self) -> bool {
        self.sign != FeSign::Incompatible && self.coefficient_violations.is_empty()
    }

    pub fn numeric_ok(&self) -> bool {
        self.max_deviation.is_none_or(|m| m < self.tol)
    }
}

impl AsCheck for WeilBoundsReport {
    fn as_check(&self) -> CheckResult {
        let verdict = if !self.exact_ok() {
            Verdict::Fail
        } else if !self.numeric_ok() {
            Verdict::Warning
        } else {
            Verdict::Pass
        };
        let mut c = CheckResult::new("weil_bounds", verdict)
            .with("sign", self.sign)
            .with(
                "coefficient_violations",
                format!("{:?}", self.coefficient_violations),
            );
        if let Some(m) = self.max_deviation {
            c = c.with("max_modulus_deviation", format!("{m:.3e}"));
        }
        if self.exact_ok() && !self.numeric_ok() {
            c = c.note(format!(
                "numeric layer: a root is off the unit circle beyond tol {}",
                self.tol
            ));
        }
        c
    }
}

/// Exact layer: functional equation and `|c_r| <= binom(N, r)`. Numeric
/// layer: root moduli of the squarefree part with `±1` removed.
pub fn check_weil_bounds(fp: &FrobPolynomial, tol: f64) -> WeilBoundsReport {
    let (rest, _) = fp.phi.strip_root(&rat(1));
    let (rest, _) = rest.strip_root(&rat(-1));
    let core = rest.squarefree_part();
    let max_deviation = (core.deg() > 0).then(|| {
        complex_roots(&core)
            .iter()
            .map(|z| (z.norm() - 1.0).abs())
            .fold(0.0, f64::max)
    });
    WeilBoundsReport {
        sign: fp.sign,
        coefficient_violations: fp.phi.binomial_bound_violations(),
        max_deviation,
        tol,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivialRootReport {
    pub d: u32,
    pub multiplicity: usize,
}

impl AsCheck for TrivialRootReport {
    fn as_check(&self) -> CheckResult {
        let verdict = if self.d % 2 == 1 {
            Verdict::NotApplicable
        } else if self.multiplicity > 0 {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        CheckResult::new("trivial_root", verdict).with("mult(1)", self.multiplicity)
    }
}

/// `phi(1) = 0` in even degree, with the multiplicity of the root.
pub fn check_trivial_root(fp: &FrobPolynomial) -> TrivialRootReport {
    TrivialRootReport {
        d: fp.ctx.d,
        multiplicity: fp.phi.root_multiplicity(&BigRational::one()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KatzReport {
    /// `(r, nu_q(a_r), bound_r)` for every nonzero `a_r`, `r = 1..=N`.
    pub rows: Vec<(usize, BigRational, BigRational)>,
    pub violations: Vec<usize>,
}

impl AsCheck for KatzReport {
    fn as_check(&self) -> CheckResult {
        let verdict = if self.violations.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        let mut c = CheckResult::new("katz_hodge_bound", verdict);
        for &r in &self.violations {
            let (_, v, b) = &self.rows.iter().find(|row| row.0 == r).expect("row");
            c = c.with(format!("nu(a_{r})"), format!("{v} < {b}"));
        }
        if self.violations.is_empty() {
            c = c.with("rows_checked", self.rows.len());
        }
        c
    }
}

/// Newton above Hodge: `nu_q(a_r) >= sum_{s<=r} (g_s - d/2)` where `a_r` is the
/// coefficient of `T^(N-r)` of `phi`.
pub fn check_katz(fp: &FrobPolynomial, h: &HodgeVector) -> Result<KatzReport> {
    let n = fp.ctx.n;
    if h.d != fp.ctx.d {
        return Err(Error::HodgeLength {
            expected: fp.ctx.d as usize + 1,
            found: h.entries.len(),
        });
    }
    if h.total() != n {
        return Err(Error::HodgeMismatch {
            expected: n,
            found: h.total(),
        });
    }
    let half = BigRational::new(BigInt::from(fp.ctx.d), BigInt::from(2));
    let slopes = h.slopes();
    let mut bound = BigRational::zero();
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    for r in 1..=n {
        bound += rat(slopes[r - 1] as i64) - &half;
        let a = fp.phi.coeff(n - r);
        if let Some(v) = nu_q(&a, fp.ctx.p, fp.ctx.k) {
            if v < bound {
                violations.push(r);
            }
            rows.push((r, v, bound.clone()));
        }
    }
    Ok(KatzReport { rows, violations })
}

/// Largest `|c_r|` as a quick size indicator.
pub fn height(phi: &RatPoly) -> BigRational {
    phi.coeffs()
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigRational::zero)
}
