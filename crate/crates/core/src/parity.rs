//! The invariant `e` and the square-class tests on `(-2)^N q^e Phi(-1)`,
//! plus the supersingular criteria built on values of cyclotomic polynomials
//! at `-1`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::exactmath::{
    cyclotomic, euler_phi, is_integer, newton_polygon, rat, rat_pow, square_class, BigRational,
    RatPoly, SquareClass,
};
use crate::report::{AsCheck, CheckResult, Consistency, Verdict};
use crate::weil::{FrobPolynomial, HodgeVector};
use crate::{Error, Result};

/// Which statement a parity verdict tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    /// `(-2)^N Phi(-1)` is a square or `p` times a square.
    Main,
    /// `(-2)^N q^e Phi(-1)` is a square.
    Main2,
    /// The same expression for an arbitrary Tate twist `j`.
    Twisted,
    /// `(-2)^N q^alpha Phi(-1)` is a square.
    ArtinTate,
    BaseExtension,
    Product,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ParityKind {
    Pass,
    Fail,
    Vacuous,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityVerdict {
    pub kind: ParityKind,
    pub theorem: Theorem,
    /// The evaluated expression.
    #[serde(with = "crate::json::rational")]
    pub value: BigRational,
    /// Square class of `value`.
    pub tested_value: SquareClass,
    /// Class modulo the allowed set; `1` exactly when the test passes.
    pub obstruction: SquareClass,
    pub exponent_used: i64,
    /// `Phi(-1)` of the polynomial the value was built from.
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "crate::json::opt_rational"
    )]
    pub phi_at_minus_one: Option<BigRational>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl ParityVerdict {
    /// Verdict for `value` whose allowed classes are `{1}` or, with
    /// `allow_p`, `{1, p}`.
    pub fn from_value(
        theorem: Theorem,
        value: BigRational,
        exponent: i64,
        allow_p: Option<u64>,
    ) -> Self {
        let tested = square_class(&value);
        let obstruction = match allow_p {
            Some(p) => tested.without_prime(p),
            None => tested.clone(),
        };
        let kind = if tested.is_zero() {
            ParityKind::Vacuous
        } else if obstruction.is_one() {
            ParityKind::Pass
        } else {
            ParityKind::Fail
        };
        ParityVerdict {
            kind,
            theorem,
            value,
            tested_value: tested,
            obstruction,
            exponent_used: exponent,
            phi_at_minus_one: None,
            warnings: Vec::new(),
        }
    }

    pub fn with_phi_at_minus_one(mut self, x: BigRational) -> Self {
        self.phi_at_minus_one = Some(x);
        self
    }

    pub fn verdict(&self) -> Verdict {
        match self.kind {
            ParityKind::Pass => Verdict::Pass,
            ParityKind::Fail => Verdict::Fail,
            ParityKind::Vacuous => Verdict::Vacuous,
        }
    }

    fn check_name(&self) -> &'static str {
        match self.theorem {
            Theorem::Main => "parity_main",
            Theorem::Main2 => "parity_main2",
            Theorem::Twisted => "parity_twisted",
            Theorem::ArtinTate => "artin_tate_square",
            Theorem::BaseExtension => "base_extension_parity",
            Theorem::Product => "product_parity",
        }
    }
}

impl AsCheck for ParityVerdict {
    fn as_check(&self) -> CheckResult {
        let mut c = CheckResult::new(self.check_name(), self.verdict())
            .with("value", crate::json::render_rational(&self.value))
            .with("square_class", &self.tested_value)
            .with("obstruction", &self.obstruction)
            .with("exponent", self.exponent_used);
        if let Some(x) = &self.phi_at_minus_one {
            c = c.with("phi(-1)", crate::json::render_rational(x));
        }
        for w in &self.warnings {
            c = c.note(w.clone());
        }
        c
    }
}

/// `e = sum_{m < d/2} (d/2 - m) h_{d-m,m}`.
pub fn e_from_hodge(h: &HodgeVector, d: u32) -> Result<u64> {
    if d % 2 == 1 {
        return Err(Error::OddDegree(d));
    }
    if h.entries.len() != d as usize + 1 {
        return Err(Error::HodgeLength {
            expected: d as usize + 1,
            found: h.entries.len(),
        });
    }
    let half = (d / 2) as u64;
    Ok((0..half).map(|m| (half - m) * h.entries[m as usize]).sum())
}

/// `e = -(sum of the negative root valuations)` from the Newton polygon.
pub fn e_from_slopes(fp: &FrobPolynomial) -> Result<u64> {
    let np = newton_polygon(&fp.phi, fp.ctx.p, fp.ctx.k)?;
    let mass = np.negative_slope_mass();
    if !is_integer(&mass) {
        return Err(Error::NonIntegralSlopeSum(mass.to_string()));
    }
    Ok(mass.to_integer().to_u64().expect("nonnegative"))
}

fn q_rat(fp: &FrobPolynomial) -> BigRational {
    BigRational::from_integer(fp.q())
}

/// `(-2)^N Phi(-1)` up to squares lies in `{1, p}`.
pub fn test_main(fp: &FrobPolynomial) -> ParityVerdict {
    let at = fp.phi.eval_int(-1);
    let value = fp.minus_two_power() * &at;
    ParityVerdict::from_value(Theorem::Main, value, 0, Some(fp.ctx.p)).with_phi_at_minus_one(at)
}

/// `(-2)^N q^e Phi(-1)` is a square. Attaches a warning in characteristic 2.
pub fn test_main2(fp: &FrobPolynomial, e: u64) -> ParityVerdict {
    let at = fp.phi.eval_int(-1);
    let value = fp.minus_two_power() * rat_pow(&q_rat(fp), e as i64) * &at;
    let mut v =
        ParityVerdict::from_value(Theorem::Main2, value, e as i64, None).with_phi_at_minus_one(at);
    if fp.ctx.p == 2 {
        v.warnings
            .push("p = 2 lies outside the hypothesis of the square test".into());
    }
    v
}

/// `Phi_j(T) = q^(N s) phi(T / q^s)` with `s = d/2 - j`.
pub fn twisted_polynomial(fp: &FrobPolynomial, j: i64) -> Result<RatPoly> {
    if fp.ctx.d % 2 == 1 {
        return Err(Error::OddDegree(fp.ctx.d));
    }
    let s = fp.ctx.d as i64 / 2 - j;
    let qs = rat_pow(&q_rat(fp), s);
    let lead = rat_pow(&qs, fp.ctx.n as i64);
    Ok(fp.phi.scale_variable(&qs.recip()).scale(&lead))
}

/// `(-2)^N q^(e - N s) Phi_j(-q^s)` with `s = d/2 - j`, evaluated on the
/// twisted polynomial itself.
pub fn test_twisted(fp: &FrobPolynomial, e: i64, j: i64) -> Result<ParityVerdict> {
    let phi_j = twisted_polynomial(fp, j)?;
    let s = fp.ctx.d as i64 / 2 - j;
    let q = q_rat(fp);
    let exp = e - fp.ctx.n as i64 * s;
    let value = fp.minus_two_power() * rat_pow(&q, exp) * phi_j.eval(&-rat_pow(&q, s));
    Ok(ParityVerdict::from_value(
        Theorem::Twisted,
        value,
        exp,
        None,
    ))
}

/// Candidate orders `n` whose cyclotomic polynomial can divide a degree
/// `deg` polynomial.
fn cyclotomic_orders(deg: usize) -> Vec<u64> {
    let cutoff = (deg * deg).max(30) as u64;
    (1..=cutoff)
        .filter(|&n| euler_phi(n) as usize <= deg)
        .collect()
}

/// Orders `n` with multiplicity such that `f = prod phi_n`, or `None`.
pub fn cyclotomic_factorization(f: &RatPoly) -> Option<Vec<(u64, usize)>> {
    if f.is_zero() || !f.is_monic() || !f.is_integral() {
        return None;
    }
    let mut rest = f.clone();
    let mut out = Vec::new();
    for n in cyclotomic_orders(f.deg()) {
        if rest.deg() == 0 {
            break;
        }
        if euler_phi(n) as usize > rest.deg() {
            continue;
        }
        let phi_n = cyclotomic(n).expect("n >= 1");
        let mut m = 0;
        while let Some(q) = rest.exact_div(&phi_n) {
            rest = q;
            m += 1;
        }
        if m > 0 {
            out.push((n, m));
        }
    }
    (rest.deg() == 0).then_some(out)
}

/// True iff `f` is a product of cyclotomic polynomials.
pub fn all_roots_of_unity(f: &RatPoly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if !f.is_integral() {
        return Err(Error::NotIntegral);
    }
    Ok(cyclotomic_factorization(f).is_some())
}

/// `phi_n(-1)`: `-2` for `n = 1`, `0` for `n = 2`, `2` for `n = 2^e` with
/// `e > 1`, the odd prime `l` for `n = 2 l^e`, and `1` otherwise.
pub fn cyclotomic_minus_one(n: u64) -> Result<i64> {
    let v = cyclotomic(n)?.eval_int(-1);
    Ok(v.to_integer().to_i64().expect("small"))
}

fn all_slopes_zero(fp: &FrobPolynomial) -> bool {
    match newton_polygon(&fp.phi, fp.ctx.p, fp.ctx.k) {
        Ok(np) => np.is_pure(&BigRational::zero()),
        Err(_) => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupersingularReport {
    pub name: &'static str,
    pub hypotheses: Vec<(&'static str, bool)>,
    pub outcome: Consistency,
    pub evidence: Vec<(&'static str, String)>,
}

impl AsCheck for SupersingularReport {
    fn as_check(&self) -> CheckResult {
        let mut c = CheckResult::new(self.name, self.outcome.verdict());
        for (h, ok) in &self.hypotheses {
            c = c.with(*h, ok);
        }
        for (k, v) in &self.evidence {
            c = c.with(*k, v);
        }
        c
    }
}

/// Even `d`, odd `e`, supersingular: `-1` must be an eigenvalue.
pub fn supersingular_forced_eigenvalue(fp: &FrobPolynomial, e: i64) -> SupersingularReport {
    let hypotheses = vec![
        ("p_odd", fp.ctx.p != 2),
        ("k_odd", fp.ctx.k % 2 == 1),
        ("e_odd", e.rem_euclid(2) == 1),
        ("slopes_constant", all_slopes_zero(fp)),
        (
            "roots_of_unity",
            cyclotomic_factorization(&fp.phi).is_some(),
        ),
        // fails for factors phi_(2 l^m), where phi(-1) picks up the prime l
        (
            "phi(-1)_power_of_two",
            is_zero_or_power_of_two(&fp.phi.eval_int(-1)),
        ),
    ];
    let mult = fp.phi.root_multiplicity(&rat(-1));
    let outcome = if !hypotheses.iter().all(|h| h.1) {
        Consistency::NotApplicable
    } else if mult > 0 {
        Consistency::Consistent
    } else {
        Consistency::Contradiction
    };
    SupersingularReport {
        name: "supersingular_minus_one",
        hypotheses,
        outcome,
        evidence: vec![
            ("phi(-1)", fp.phi.eval_int(-1).to_string()),
            ("mult(-1)", mult.to_string()),
        ],
    }
}

/// Odd `d`, `N = 2 mod 4`, supersingular: `T^2 + 1` must divide `phi`.
pub fn odd_dim_supersingular(fp: &FrobPolynomial) -> Result<SupersingularReport> {
    if fp.ctx.d % 2 == 0 {
        return Err(Error::EvenDegree(fp.ctx.d));
    }
    let hypotheses = vec![
        ("N_2_mod_4", fp.ctx.n % 4 == 2),
        ("slopes_constant", all_slopes_zero(fp)),
        ("k_odd", fp.ctx.k % 2 == 1),
        ("p_odd", fp.ctx.p != 2),
    ];
    let divides = RatPoly::from_ints(&[1, 0, 1]).divides(&fp.phi);
    let outcome = if !hypotheses.iter().all(|h| h.1) {
        Consistency::NotApplicable
    } else if divides {
        Consistency::Consistent
    } else {
        Consistency::Contradiction
    };
    Ok(SupersingularReport {
        name: "odd_supersingular_i",
        hypotheses,
        outcome,
        evidence: vec![("T^2+1_divides", divides.to_string())],
    })
}

/// True when `|n|` is zero or a power of two.
pub fn is_zero_or_power_of_two(x: &BigRational) -> bool {
    if x.is_zero() {
        return true;
    }
    if !is_integer(x) {
        return false;
    }
    let n: BigInt = x.to_integer().abs();
    !n.is_zero() && (&n & (&n - BigInt::one())).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasets::{cubic4_phi, k3_phi};
    use crate::exactmath::frac;

    fn k3(i: u32) -> FrobPolynomial {
        FrobPolynomial::from_normalized(7, 1, 2, k3_phi(i)).unwrap()
    }

    fn cubic() -> FrobPolynomial {
        FrobPolynomial::from_normalized(2, 1, 4, cubic4_phi()).unwrap()
    }

    fn cyc(ns: &[u64]) -> RatPoly {
        ns.iter()
            .fold(RatPoly::one(), |acc, &n| &acc * &cyclotomic(n).unwrap())
    }

    #[test]
    fn e_values() {
        assert_eq!(
            e_from_hodge(&HodgeVector::new(2, vec![1, 20, 1]).unwrap(), 2),
            Ok(1)
        );
        assert_eq!(
            e_from_hodge(&HodgeVector::new(4, vec![0, 1, 21, 1, 0]).unwrap(), 4),
            Ok(1)
        );
        assert_eq!(
            e_from_hodge(&HodgeVector::new(2, vec![0, 0, 0]).unwrap(), 2),
            Ok(0)
        );
        assert!(e_from_hodge(&HodgeVector::new(1, vec![1, 1]).unwrap(), 1).is_err());
        assert_eq!(e_from_slopes(&k3(1)), Ok(1));
        assert_eq!(e_from_slopes(&cubic()), Ok(1));
        let fp = FrobPolynomial::from_normalized(3, 1, 2, RatPoly::from_ints(&[-1, 0, 1])).unwrap();
        assert_eq!(e_from_slopes(&fp), Ok(0));
        // valuations -1/2, -1/2, 1/2, 1/2: (T^2 - 3)(T^2 - 1/3) over q = 3
        let f = &RatPoly::from_ints(&[-3, 0, 1])
            * &RatPoly::from_coeffs(vec![frac(-1, 3), rat(0), rat(1)]);
        let fp = FrobPolynomial::from_normalized(3, 1, 2, f).unwrap();
        assert_eq!(e_from_slopes(&fp), Ok(1));
        // over q = 9 the root 1/3 has valuation -1/2
        let fp = FrobPolynomial::from_normalized(
            3,
            2,
            2,
            RatPoly::from_coeffs(vec![frac(-1, 3), rat(1)]),
        )
        .unwrap();
        assert!(matches!(
            e_from_slopes(&fp),
            Err(Error::NonIntegralSlopeSum(_))
        ));
    }

    #[test]
    fn main_test_on_datasets() {
        let v = test_main(&k3(0));
        assert_eq!(v.kind, ParityKind::Fail);
        assert_eq!(v.tested_value, SquareClass::of_integer(105));
        assert_eq!(v.obstruction, SquareClass::of_integer(15));
        assert_eq!(k3_phi(0).eval_int(-1), frac(60, 7));
        assert_eq!(test_main(&k3(1)).kind, ParityKind::Vacuous);
        let v = test_main(&cubic());
        assert_eq!(
            (v.kind, v.tested_value.clone()),
            (ParityKind::Pass, SquareClass::of_integer(2))
        );
    }

    #[test]
    fn main2_on_datasets() {
        let v = test_main2(&k3(0), 1);
        assert_eq!(
            (v.kind, v.tested_value.clone()),
            (ParityKind::Fail, SquareClass::of_integer(15))
        );
        assert!(v.warnings.is_empty());
        let v = test_main2(&cubic(), 1);
        assert_eq!(v.kind, ParityKind::Pass);
        assert_eq!(v.value, num_traits::pow(rat(2), 24));
        assert_eq!(v.warnings.len(), 1);
        assert_eq!(test_main2(&k3(1), 1).kind, ParityKind::Vacuous);
    }

    #[test]
    fn twisted_reduces_to_main2() {
        for i in 0..2 {
            let a = test_twisted(&k3(i), 1, 1).unwrap();
            let b = test_main2(&k3(i), 1);
            assert_eq!((a.kind, a.value), (b.kind, b.value));
        }
        assert_eq!(
            test_twisted(&k3(1), 1, 0).unwrap().kind,
            ParityKind::Vacuous
        );
        let v = test_twisted(&k3(0), 1, 0).unwrap();
        assert_eq!(
            (v.kind, v.tested_value),
            (ParityKind::Fail, SquareClass::of_integer(15))
        );
        // j = 0 gives the integral polynomial
        assert!(twisted_polynomial(&k3(0), 0).unwrap().is_integral());
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(
            all_roots_of_unity(&RatPoly::from_ints(&[-1, 1, -1, 1])),
            Ok(true)
        );
        assert_eq!(
            all_roots_of_unity(&RatPoly::from_ints(&[1, -3, 1])),
            Ok(false)
        );
        assert_eq!(all_roots_of_unity(&cyclotomic(12).unwrap()), Ok(true));
        assert_eq!(
            all_roots_of_unity(&RatPoly::from_ints(&[1, 2])),
            Err(Error::NotMonic)
        );
        assert_eq!(
            cyclotomic_factorization(&cyc(&[1, 1, 7, 30])),
            Some(vec![(1, 2), (7, 1), (30, 1)])
        );
    }

    #[test]
    fn cyclotomic_at_minus_one() {
        assert_eq!(cyclotomic_minus_one(1), Ok(-2));
        assert_eq!(cyclotomic_minus_one(2), Ok(0));
        assert_eq!(cyclotomic_minus_one(8), Ok(2));
        assert_eq!(cyclotomic_minus_one(12), Ok(1));
        // T^2 - T + 1 and T^4 - T^3 + T^2 - T + 1 at -1
        assert_eq!(cyclotomic_minus_one(6), Ok(3));
        assert_eq!(cyclotomic_minus_one(10), Ok(5));
        assert_eq!(cyclotomic_minus_one(18), Ok(3));
    }

    #[test]
    fn forced_minus_one() {
        // phi_2 times a degree-21 product of cyclotomics
        let f = cyc(&[2, 1, 3, 4, 5, 7, 9]);
        assert_eq!(f.deg(), 22);
        let fp = FrobPolynomial::from_normalized(7, 1, 2, f).unwrap();
        assert_eq!(
            supersingular_forced_eigenvalue(&fp, 1).outcome,
            Consistency::Consistent
        );
        let fp = FrobPolynomial::from_normalized(7, 1, 2, cyc(&[1, 3, 5, 7])).unwrap();
        assert_eq!(
            supersingular_forced_eigenvalue(&fp, 1).outcome,
            Consistency::Contradiction
        );
        let fp = FrobPolynomial::from_normalized(7, 2, 2, cyc(&[1, 3, 5, 7])).unwrap();
        assert_eq!(
            supersingular_forced_eigenvalue(&fp, 1).outcome,
            Consistency::NotApplicable
        );
        assert_eq!(
            supersingular_forced_eigenvalue(&k3(1), 1).outcome,
            Consistency::NotApplicable
        );
        // phi_6(-1) = 3 = p: (-2)^2 * 3 * 3 is a square, nothing is forced
        let fp = FrobPolynomial::from_normalized(3, 1, 2, cyc(&[6])).unwrap();
        let r = supersingular_forced_eigenvalue(&fp, 1);
        assert_eq!(r.outcome, Consistency::NotApplicable);
        assert_eq!(test_main2(&fp, 1).kind, ParityKind::Pass);
    }

    #[test]
    fn odd_dimension() {
        let fp = FrobPolynomial::from_normalized(5, 1, 1, cyc(&[4, 3, 6])).unwrap();
        assert_eq!(fp.ctx.n, 6);
        assert_eq!(
            odd_dim_supersingular(&fp).unwrap().outcome,
            Consistency::Consistent
        );
        let fp = FrobPolynomial::from_normalized(5, 1, 1, cyc(&[3, 6])).unwrap();
        assert_eq!(
            odd_dim_supersingular(&fp).unwrap().outcome,
            Consistency::NotApplicable
        );
        let fp = FrobPolynomial::from_normalized(5, 1, 1, cyc(&[5, 1, 2])).unwrap();
        assert_eq!(
            odd_dim_supersingular(&fp).unwrap().outcome,
            Consistency::Contradiction
        );
        assert!(odd_dim_supersingular(&k3(1)).is_err());
    }

    #[test]
    fn power_of_two_values() {
        assert!(is_zero_or_power_of_two(&rat(0)));
        assert!(is_zero_or_power_of_two(&rat(-8)));
        assert!(!is_zero_or_power_of_two(&rat(6)));
        assert!(!is_zero_or_power_of_two(&frac(1, 2)));
    }
}
