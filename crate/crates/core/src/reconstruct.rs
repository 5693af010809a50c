//! From point counts to candidate middle polynomials, and the filter that
//! picks the admissible ones.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::exactmath::{rat, rat_pow, BigInt, BigRational, RatPoly};
use crate::json::{DegreeParity, DescriptorFile};
use crate::parity::{e_from_hodge, e_from_slopes, test_main, test_main2};
use crate::report::{AsCheck, CheckResult, Verdict};
use crate::weil::{
    check_katz, check_l_units, check_trivial_root, check_weil_bounds, FeSign, FrobPolynomial,
    HodgeVector,
};
use crate::{Error, Result};

fn parse_count(s: &str, n: usize) -> Result<BigInt> {
    s.trim()
        .parse::<BigInt>()
        .map_err(|_| Error::Input(format!("point_counts[{}]: {s:?} is not an integer", n - 1)))
}

fn q_of(vd: &DescriptorFile) -> BigRational {
    rat_pow(&rat(vd.p as i64), vd.k as i64)
}

/// `q^(n d/2)`, or an error when it is irrational.
fn half_power(vd: &DescriptorFile, n: usize) -> Result<BigRational> {
    let exp = n as i64 * vd.k as i64 * vd.d as i64;
    if exp % 2 != 0 {
        return Err(Error::IrrationalTwist);
    }
    Ok(rat_pow(&rat(vd.p as i64), exp / 2))
}

/// Ambient contribution `sum sgn * mult * q^(a n)` to `#X(F_{q^n})`.
fn ambient_sum(vd: &DescriptorFile, n: usize) -> BigRational {
    let q = q_of(vd);
    vd.ambient
        .iter()
        .map(|a| {
            let sgn = match a.degree_parity {
                DegreeParity::Even => rat(1),
                DegreeParity::Odd => rat(-1),
            };
            sgn * rat(a.multiplicity as i64) * rat_pow(&q, a.weight_exponent * n as i64)
        })
        .sum()
}

fn validate(vd: &DescriptorFile) -> Result<()> {
    if !crate::exactmath::is_prime_u64(vd.p) {
        return Err(Error::NotPrime(vd.p));
    }
    if vd.k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    if vd.point_counts.is_empty() {
        return Err(Error::Input("point_counts is empty".into()));
    }
    Ok(())
}

/// Normalized middle power sums `p_n`, `n = 1..=M`.
pub fn middle_traces(vd: &DescriptorFile) -> Result<Vec<BigRational>> {
    validate(vd)?;
    let sign = if vd.d % 2 == 0 { rat(1) } else { rat(-1) };
    vd.point_counts
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let n = i + 1;
            let count = BigRational::from_integer(parse_count(s, n)?);
            Ok(&sign * (count - ambient_sum(vd, n)) / half_power(vd, n)?)
        })
        .collect()
}

/// `#X(F_{q^n})`, `n = 1..=m`, predicted from a middle polynomial.
pub fn predict_point_counts(
    vd: &DescriptorFile,
    phi: &RatPoly,
    m: usize,
) -> Result<Vec<BigRational>> {
    let sums = phi.power_sums(m);
    let sign = if vd.d % 2 == 0 { rat(1) } else { rat(-1) };
    (1..=m)
        .map(|n| Ok(ambient_sum(vd, n) + &sign * half_power(vd, n)? * &sums[n - 1]))
        .collect()
}

/// Elementary symmetric functions `e_0..=e_m` from power sums by Newton's
/// identities `k e_k = sum_{i=1}^k (-1)^(i-1) e_(k-i) p_i`.
pub fn elementary_from_power_sums(p: &[BigRational], m: usize) -> Vec<BigRational> {
    let mut e = vec![BigRational::one()];
    for k in 1..=m {
        let mut s = BigRational::zero();
        for i in 1..=k {
            let term = &e[k - i] * &p[i - 1];
            if i % 2 == 1 {
                s += term;
            } else {
                s -= term;
            }
        }
        e.push(s / rat(k as i64));
    }
    e
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum BranchStatus {
    Determined {
        #[serde(with = "crate::json::rational_vec", rename = "coefficients")]
        phi: Vec<BigRational>,
    },
    Underdetermined {
        free: usize,
    },
    Inconsistent {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Branch {
    pub sign: FeSign,
    pub status: BranchStatus,
}

/// Per-sign outcome of the linear solve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateSet {
    pub branches: Vec<Branch>,
}

impl CandidateSet {
    /// Determined candidates, `+1` branch first.
    pub fn candidates(&self) -> Vec<(FeSign, RatPoly)> {
        self.branches
            .iter()
            .filter_map(|b| match &b.status {
                BranchStatus::Determined { phi } => {
                    Some((b.sign, RatPoly::from_coeffs(phi.clone())))
                }
                _ => None,
            })
            .collect()
    }

    pub fn free_coefficient_count(&self) -> usize {
        self.branches
            .iter()
            .map(|b| match b.status {
                BranchStatus::Underdetermined { free } => free,
                _ => 0,
            })
            .max()
            .unwrap_or(0)
    }
}

/// Reduced row echelon solve of `A x = b` (augmented rows). Returns the
/// unique solution, the number of free unknowns, or `None` when inconsistent.
fn solve_exact(
    mut rows: Vec<Vec<BigRational>>,
    unknowns: usize,
) -> Option<std::result::Result<Vec<BigRational>, usize>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..unknowns {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for j in col..=unknowns {
                    let v = &f * &rows[r][j];
                    rows[i][j] -= v;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[unknowns].is_zero()) {
        return None;
    }
    if pivots.len() < unknowns {
        return Some(Err(unknowns - pivots.len()));
    }
    Some(Ok(rows[..unknowns]
        .iter()
        .map(|row| row[unknowns].clone())
        .collect()))
}

fn binomial(n: usize, k: usize) -> BigRational {
    if k > n {
        return BigRational::zero();
    }
    let mut b = BigInt::one();
    for i in 0..k {
        b = b * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    BigRational::from_integer(b)
}

/// Candidates of degree `n` per functional-equation sign, from normalized
/// traces and `(T - 1)^rho | Phi`.
pub fn solve_candidates(n: usize, traces: &[BigRational], rho: usize) -> CandidateSet {
    let m = traces.len().min(n);
    let e = elementary_from_power_sums(traces, m);
    let branches = [FeSign::Plus, FeSign::Minus]
        .into_iter()
        .map(|sign| Branch {
            sign,
            status: solve_branch(n, traces, &e, rho, sign),
        })
        .collect();
    CandidateSet { branches }
}

fn solve_branch(
    n: usize,
    traces: &[BigRational],
    e: &[BigRational],
    rho: usize,
    sign: FeSign,
) -> BranchStatus {
    let eps = rat(sign.value().expect("definite sign"));
    // unknowns c_0..c_{n-1}; c_n = 1 sits on the right-hand side
    let width = n + 1;
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    let row = |entries: &[(usize, BigRational)], rhs: BigRational| {
        let mut v = vec![BigRational::zero(); width];
        for (i, c) in entries {
            v[*i] += c;
        }
        v[n] = rhs;
        v
    };
    for (k, ek) in e.iter().enumerate().skip(1) {
        let c = if k % 2 == 0 { ek.clone() } else { -ek };
        rows.push(row(&[(n - k, rat(1))], c));
    }
    // c_r - eps c_{n-r} = 0, with c_n = 1 moved across
    for r in 0..=n / 2 {
        let s = n - r;
        if r == s {
            rows.push(row(&[(r, rat(1) - &eps)], rat(0)));
        } else if s == n {
            rows.push(row(&[(r, rat(1))], eps.clone()));
        } else {
            rows.push(row(&[(r, rat(1)), (s, -eps.clone())], rat(0)));
        }
    }
    // sum_r binom(r, i) c_r = 0 for i < rho
    for i in 0..rho {
        let entries: Vec<(usize, BigRational)> = (0..n).map(|r| (r, binomial(r, i))).collect();
        rows.push(row(&entries, -binomial(n, i)));
    }
    match solve_exact(rows, n) {
        None => BranchStatus::Inconsistent {
            reason: "linear constraints disagree".into(),
        },
        Some(Err(free)) => BranchStatus::Underdetermined { free },
        Some(Ok(mut c)) => {
            c.push(rat(1));
            let phi = RatPoly::from_coeffs(c);
            let sums = phi.power_sums(traces.len());
            match sums.iter().zip(traces).position(|(a, b)| a != b) {
                Some(i) => BranchStatus::Inconsistent {
                    reason: format!("trace p_{} not reproduced", i + 1),
                },
                None => BranchStatus::Determined {
                    phi: phi.into_coeffs(),
                },
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CandidateReport {
    pub sign: FeSign,
    #[serde(with = "crate::json::rational_vec")]
    pub coefficients: Vec<BigRational>,
    pub checks: Vec<CheckResult>,
    pub survives: bool,
}

impl CandidateReport {
    pub fn polynomial(&self) -> RatPoly {
        RatPoly::from_coeffs(self.coefficients.clone())
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Disambiguation {
    pub name: String,
    pub degree: usize,
    #[serde(with = "crate::json::rational_vec")]
    pub traces: Vec<BigRational>,
    pub branches: Vec<Branch>,
    pub free_coefficient_count: usize,
    pub candidates: Vec<CandidateReport>,
    /// Index into `candidates` when exactly one survives.
    pub unique: Option<usize>,
}

impl Disambiguation {
    pub fn survivors(&self) -> Vec<&CandidateReport> {
        self.candidates.iter().filter(|c| c.survives).collect()
    }

    pub fn unique_candidate(&self) -> Option<&CandidateReport> {
        self.unique.map(|i| &self.candidates[i])
    }
}

fn degree_of(vd: &DescriptorFile) -> Result<usize> {
    let from_hodge = vd.hodge.as_ref().map(|h| h.iter().sum::<u64>() as usize);
    match (vd.n, from_hodge) {
        (Some(n), Some(h)) if n != h => Err(Error::HodgeMismatch {
            expected: n,
            found: h,
        }),
        (Some(n), _) => Ok(n),
        (None, Some(h)) => Ok(h),
        (None, None) => Err(Error::Input("descriptor needs N or hodge".into())),
    }
}

/// `e` for the square test: explicit value, else the Hodge formula when the
/// caller asserts the Hodge numbers are the abstract ones.
fn e_of(vd: &DescriptorFile) -> Result<Option<u64>> {
    if let Some(e) = vd.e {
        return Ok(Some(e));
    }
    match (&vd.hodge, vd.hodge_is_abstract, vd.d % 2 == 0) {
        (Some(h), true, true) => Ok(Some(e_from_hodge(
            &HodgeVector::new(vd.d, h.clone())?,
            vd.d,
        )?)),
        _ => Ok(None),
    }
}

/// Weil, Katz and square-class checks shared by reconstruction and `check`.
pub fn admissibility_checks(
    fp: &FrobPolynomial,
    hodge: Option<&HodgeVector>,
    e: Option<u64>,
    tol: f64,
) -> Result<Vec<CheckResult>> {
    let mut checks = vec![
        check_weil_bounds(fp, tol).as_check(),
        check_l_units(fp).as_check(),
        check_trivial_root(fp).as_check(),
    ];
    if let Some(h) = hodge {
        checks.push(check_katz(fp, h)?.as_check());
    }
    if fp.ctx.d % 2 == 0 {
        checks.push(test_main(fp).as_check());
        match e {
            Some(e) => checks.push(test_main2(fp, e).as_check()),
            None => checks
                .push(CheckResult::new("parity_main2", Verdict::NotApplicable).note("e unknown")),
        }
        let slopes = match e_from_slopes(fp) {
            Ok(v) => v.to_string(),
            Err(err) => err.to_string(),
        };
        let mut c = CheckResult::new("e_consistency", Verdict::Pass).with("e_from_slopes", &slopes);
        if let Some(e) = e {
            c = c.with("e", e);
            if slopes != e.to_string() {
                c.verdict = Verdict::Warning;
                c = c.note("slope formula differs; it needs the Hodge-Witt property");
            }
        }
        checks.push(c);
    }
    Ok(checks)
}

fn check_candidate(
    vd: &DescriptorFile,
    sign: FeSign,
    phi: RatPoly,
    e: Option<u64>,
    tol: f64,
) -> Result<CandidateReport> {
    let fp = FrobPolynomial::from_normalized(vd.p, vd.k, vd.d, phi)?;
    let hodge = vd
        .hodge
        .as_ref()
        .map(|h| HodgeVector::new(vd.d, h.clone()))
        .transpose()?;
    let checks = admissibility_checks(&fp, hodge.as_ref(), e, tol)?;
    let survives = !checks.iter().any(|c| c.verdict.is_failure());
    Ok(CandidateReport {
        sign,
        coefficients: fp.phi.into_coeffs(),
        checks,
        survives,
    })
}

/// Traces, candidates, and the per-candidate admissibility checks.
pub fn disambiguate(vd: &DescriptorFile, tol: f64) -> Result<Disambiguation> {
    let n = degree_of(vd)?;
    let traces = middle_traces(vd)?;
    let set = solve_candidates(n, &traces, vd.forced_unit_root_multiplicity);
    let e = e_of(vd)?;
    let candidates = set
        .candidates()
        .into_par_iter()
        .map(|(sign, phi)| check_candidate(vd, sign, phi, e, tol))
        .collect::<Result<Vec<_>>>()?;
    let surviving: Vec<usize> = (0..candidates.len())
        .filter(|&i| candidates[i].survives)
        .collect();
    Ok(Disambiguation {
        name: vd.name.clone(),
        degree: n,
        traces,
        free_coefficient_count: set.free_coefficient_count(),
        branches: set.branches,
        unique: (surviving.len() == 1).then(|| surviving[0]),
        candidates,
    })
}
