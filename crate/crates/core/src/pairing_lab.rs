//! Randomized exact checks of the parity statements for orthogonal maps on
//! lattices with a perfect pairing, and the real-quadratic-unit corollary.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::exactmath::{
    factor_integer, local_elementary_valuations, nu_p, rat, square_class, BigInt, BigRational,
    RatMatrix, SquareClass,
};
use crate::report::Verdict;
use crate::{Error, Result};

const RETRY_CAP: usize = 100;

/// A free rank-`n` lattice `Z^n` with Gram matrix `g` (a `p`-unit
/// determinant) and a map `sigma` with `sigma^T g sigma = g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeInstance {
    pub n: usize,
    pub p: u64,
    pub g: RatMatrix,
    pub sigma: RatMatrix,
}

impl LatticeInstance {
    /// Checks symmetry, the unit determinant and orthogonality exactly.
    pub fn new(p: u64, g: RatMatrix, sigma: RatMatrix) -> Result<Self> {
        let n = g.rows();
        if !g.is_square() || !g.is_symmetric() || !g.is_integral() {
            return Err(Error::InvalidArgument(
                "Gram matrix must be square, symmetric and integral".into(),
            ));
        }
        if sigma.rows() != n || sigma.cols() != n {
            return Err(Error::Shape(format!("sigma must be {n}x{n}")));
        }
        if nu_p(&g.det()?, p) != Some(0) {
            return Err(Error::InvalidArgument(format!("det G is not a {p}-unit")));
        }
        if &(&sigma.transpose() * &g) * &sigma != g {
            return Err(Error::InvalidArgument(
                "sigma does not preserve the pairing".into(),
            ));
        }
        Ok(LatticeInstance { n, p, g, sigma })
    }

    /// `sigma(H) ⊆ H` locally at `p`.
    pub fn sigma_is_integral(&self) -> bool {
        self.sigma
            .to_rows()
            .iter()
            .flatten()
            .all(|x| nu_p(x, self.p).is_none_or(|v| v >= 0))
    }
}

/// Cayley transform `(I + X)(I - X)^(-1)` with `X = G^(-1) A`.
pub fn cayley(g: &RatMatrix, a: &RatMatrix) -> Result<RatMatrix> {
    let n = g.rows();
    let x = &g.inverse()? * a;
    let id = RatMatrix::identity(n);
    Ok(&(&id + &x) * &(&id - &x).inverse()?)
}

fn random_gram(n: usize, p: u64, rng: &mut ChaCha8Rng) -> Option<RatMatrix> {
    for _ in 0..RETRY_CAP {
        let mut g = RatMatrix::zeros(n, n);
        for i in 0..n {
            // even lattices at p = 2
            g[(i, i)] = if p == 2 {
                rat(2 * rng.gen_range(-1..=1))
            } else {
                rat(rng.gen_range(-2..=2))
            };
            for j in i + 1..n {
                let v = rat(rng.gen_range(-2..=2));
                g[(i, j)] = v.clone();
                g[(j, i)] = v;
            }
        }
        if g.det().ok().and_then(|d| nu_p(&d, p)) == Some(0) {
            return Some(g);
        }
    }
    None
}

fn random_skew(n: usize, p: u64, rng: &mut ChaCha8Rng) -> RatMatrix {
    let bound = (p * p) as i64;
    let mut a = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = rng.gen_range(-bound..=bound);
            a[(i, j)] = rat(v);
            a[(j, i)] = rat(-v);
        }
    }
    a
}

fn instance_from_rng(
    n: usize,
    p: u64,
    rng: &mut ChaCha8Rng,
    integral: bool,
) -> Result<LatticeInstance> {
    let g = random_gram(n, p, rng).ok_or(Error::GenerationFailed(RETRY_CAP))?;
    for _ in 0..RETRY_CAP {
        let a = random_skew(n, p, rng);
        // eigenvalue 1 of sigma <=> X singular <=> det A = 0
        if a.det()?.is_zero() {
            continue;
        }
        let Ok(sigma) = cayley(&g, &a) else { continue };
        let inst = LatticeInstance {
            n,
            p,
            g: g.clone(),
            sigma,
        };
        if integral && !inst.sigma_is_integral() {
            continue;
        }
        return Ok(inst);
    }
    Err(Error::GenerationFailed(RETRY_CAP))
}

/// Deterministic instance for `seed`; `1` is never an eigenvalue of `sigma`.
/// Odd `n` always fails (a skew matrix of odd size is singular).
pub fn random_orthogonal(n: usize, p: u64, seed: u64) -> Result<LatticeInstance> {
    if p == 2 {
        return Err(Error::InvalidArgument(
            "p = 2 is only supported with sigma(H) ⊆ H".into(),
        ));
    }
    check_prime(p)?;
    instance_from_rng(n, p, &mut ChaCha8Rng::seed_from_u64(seed), false)
}

/// Like [`random_orthogonal`] but retries until `sigma(H) ⊆ H`; allows `p = 2`
/// with an even Gram matrix.
pub fn random_integral_orthogonal(n: usize, p: u64, seed: u64) -> Result<LatticeInstance> {
    check_prime(p)?;
    instance_from_rng(n, p, &mut ChaCha8Rng::seed_from_u64(seed), true)
}

fn check_prime(p: u64) -> Result<()> {
    if !crate::exactmath::is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityWitness {
    /// `l(sigma(H) + H / H)`
    pub ell_sigma: i64,
    /// `nu_p(det(1 - sigma))`
    pub nu_det_1_minus: i64,
    /// `nu_p(det(1 + sigma))`
    pub nu_det_1_plus: i64,
    /// `l(H / H ∩ (1 - sigma)H)`, through the dual lattice.
    pub ell_tors: i64,
}

/// `l(L + H / H)` for `L` spanned by the columns of `b`.
fn ell_sum(b: &RatMatrix, p: u64) -> Result<i64> {
    let n = b.rows();
    let v = local_elementary_valuations(&RatMatrix::identity(n).hstack(b)?, p)?;
    Ok(-v.iter().sum::<i64>())
}

/// `l(H / H ∩ B H)`: the dual of `H ∩ B H` is `H + B^(-T) H`.
fn ell_intersection(b: &RatMatrix, p: u64) -> Result<i64> {
    ell_sum(&b.inverse()?.transpose(), p)
}

fn nu_det(m: &RatMatrix, p: u64) -> Result<i64> {
    let d = m.det()?;
    nu_p(&d, p).ok_or_else(|| Error::Spectrum("matrix is singular".into()))
}

pub fn parity_witness(inst: &LatticeInstance) -> Result<ParityWitness> {
    let id = RatMatrix::identity(inst.n);
    let one_minus = &id - &inst.sigma;
    let one_plus = &id + &inst.sigma;
    let nu_det_1_minus = nu_det(&one_minus, inst.p)
        .map_err(|_| Error::Spectrum("1 is an eigenvalue of sigma".into()))?;
    let nu_det_1_plus = nu_det(&one_plus, inst.p)
        .map_err(|_| Error::Spectrum("-1 is an eigenvalue of sigma".into()))?;
    Ok(ParityWitness {
        ell_sigma: ell_sum(&inst.sigma, inst.p)?,
        nu_det_1_minus,
        nu_det_1_plus,
        ell_tors: ell_intersection(&one_minus, inst.p)?,
    })
}

fn cor_det_holds(w: &ParityWitness) -> bool {
    (w.ell_sigma + w.nu_det_1_minus) % 2 == 0
}

/// `l(sigma(H) + H / H) + nu(det(1 - sigma))` is even.
pub fn assert_cor_det(inst: &LatticeInstance) -> Result<bool> {
    Ok(cor_det_holds(&parity_witness(inst)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilfOutcome {
    /// The four lengths whose evenness is assumed.
    pub hypotheses: [i64; 4],
    pub nu_det_1_plus: i64,
    pub verdict: Verdict,
}

/// `nu(det(1 + sigma)) = N nu(2) (mod 2)` when the lengths for `sigma` and
/// `sigma^2` are all even; `NotApplicable` otherwise.
pub fn assert_hilf(inst: &LatticeInstance) -> Result<HilfOutcome> {
    hilf_with(inst, &parity_witness(inst)?)
}

fn hilf_with(inst: &LatticeInstance, w: &ParityWitness) -> Result<HilfOutcome> {
    let mut hypotheses = [w.ell_sigma, 0, w.ell_tors, 0];
    let verdict = if hypotheses.iter().any(|h| h % 2 != 0) {
        Verdict::NotApplicable
    } else {
        let sq = &inst.sigma * &inst.sigma;
        let one_minus_sq = &RatMatrix::identity(inst.n) - &sq;
        if one_minus_sq.det()?.is_zero() {
            return Err(Error::Spectrum("1 is an eigenvalue of sigma^2".into()));
        }
        hypotheses[1] = ell_sum(&sq, inst.p)?;
        hypotheses[3] = ell_intersection(&one_minus_sq, inst.p)?;
        let expected = inst.n as i64 * if inst.p == 2 { 1 } else { 0 };
        if hypotheses.iter().any(|h| h % 2 != 0) {
            Verdict::NotApplicable
        } else if (w.nu_det_1_plus - expected) % 2 == 0 {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    };
    Ok(HilfOutcome {
        hypotheses,
        nu_det_1_plus: w.nu_det_1_plus,
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub primes: Vec<u64>,
    pub ranks: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CellSummary {
    pub p: u64,
    pub n: usize,
    pub generated: usize,
    pub generation_failed: usize,
    pub cor_det_pass: usize,
    pub cor_det_fail: usize,
    pub hilf_pass: usize,
    pub hilf_not_applicable: usize,
    pub hilf_fail: usize,
    /// Trials with any failure.
    pub failing_trials: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub seed: u64,
    pub trials: usize,
    pub cells: Vec<CellSummary>,
}

impl SweepSummary {
    pub fn failures(&self) -> usize {
        self.cells
            .iter()
            .map(|c| c.cor_det_fail + c.hilf_fail)
            .sum()
    }
}

/// Seed of one trial: the master seed mixed with the cell and trial index.
pub fn trial_seed(master: u64, p: u64, n: usize, trial: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream((p << 40) ^ ((n as u64) << 32) ^ trial as u64);
    rng.gen()
}

enum TrialResult {
    Skipped,
    Done { cor_det: bool, hilf: Verdict },
}

fn run_trial(p: u64, n: usize, seed: u64) -> Result<TrialResult> {
    let inst = match random_orthogonal(n, p, seed) {
        Ok(inst) => inst,
        Err(Error::GenerationFailed(_)) => return Ok(TrialResult::Skipped),
        Err(e) => return Err(e),
    };
    let w = parity_witness(&inst)?;
    let cor_det = cor_det_holds(&w);
    let hilf = hilf_with(&inst, &w)?.verdict;
    Ok(TrialResult::Done { cor_det, hilf })
}

/// Runs every `(p, n, trial)` in parallel; the summary depends only on the
/// configuration.
pub fn sweep(cfg: &SweepConfig) -> Result<SweepSummary> {
    if let Some(&p) = cfg.primes.iter().find(|&&p| p == 2) {
        return Err(Error::InvalidArgument(format!(
            "p = {p}: the random sweep runs in odd characteristic only"
        )));
    }
    for &p in &cfg.primes {
        check_prime(p)?;
    }
    let mut cells = Vec::new();
    for &p in &cfg.primes {
        for &n in &cfg.ranks {
            let results: Vec<TrialResult> = (0..cfg.trials)
                .into_par_iter()
                .map(|t| run_trial(p, n, trial_seed(cfg.seed, p, n, t)))
                .collect::<Result<_>>()?;
            let mut cell = CellSummary {
                p,
                n,
                ..Default::default()
            };
            for (t, r) in results.into_iter().enumerate() {
                match r {
                    TrialResult::Skipped => cell.generation_failed += 1,
                    TrialResult::Done { cor_det, hilf } => {
                        cell.generated += 1;
                        if cor_det {
                            cell.cor_det_pass += 1
                        } else {
                            cell.cor_det_fail += 1
                        }
                        match hilf {
                            Verdict::Pass => cell.hilf_pass += 1,
                            Verdict::Fail => cell.hilf_fail += 1,
                            _ => cell.hilf_not_applicable += 1,
                        }
                        if !cor_det || hilf == Verdict::Fail {
                            cell.failing_trials.push(t);
                        }
                    }
                }
            }
            cells.push(cell);
        }
    }
    Ok(SweepSummary {
        seed: cfg.seed,
        trials: cfg.trials,
        cells,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticUnitReport {
    pub d: u64,
    pub disc: u64,
    /// `eps = (a + b sqrt(D)) / 2` of norm `+1`.
    #[serde(serialize_with = "crate::json::bigint_str")]
    pub a: BigInt,
    #[serde(serialize_with = "crate::json::bigint_str")]
    pub b: BigInt,
    /// Norm of the fundamental unit.
    pub fundamental_norm: i64,
    #[serde(serialize_with = "crate::json::bigint_str")]
    pub trace: BigInt,
    /// `2 - tr(eps)`
    #[serde(serialize_with = "crate::json::bigint_str")]
    pub value: BigInt,
    pub class: SquareClass,
    pub conforms: bool,
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn is_squarefree(n: u64) -> bool {
    crate::exactmath::factor_u64(n).iter().all(|&(_, e)| e == 1)
}

/// Fundamental unit of `Q(sqrt D)` from the continued fraction of the
/// integral basis element `omega`, squared when its norm is `-1`; then the
/// square class of `2 - tr(eps)` against the primes of the discriminant.
pub fn quadratic_unit_demo(d: u64) -> Result<QuadraticUnitReport> {
    if d < 2 || !is_squarefree(d) {
        return Err(Error::InvalidArgument(format!(
            "D = {d} must be squarefree and > 1"
        )));
    }
    let s = isqrt(d) as i64;
    let di = d as i64;
    let one_mod_four = d % 4 == 1;
    // omega = (P + sqrt D) / Q
    let (mut pp, mut qq) = if one_mod_four { (1i64, 2i64) } else { (0, 1) };
    let norm = |p: &BigInt, q: &BigInt| -> BigInt {
        if one_mod_four {
            p * p - p * q + q * q * BigInt::from((1 - di) / 4)
        } else {
            p * p - q * q * BigInt::from(di)
        }
    };
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (BigInt::zero(), BigInt::one());
    let (p, q) = loop {
        let a = Integer::div_floor(&(pp + s), &qq);
        let (p2, q2) = (BigInt::from(a) * &p0 + &p1, BigInt::from(a) * &q0 + &q1);
        (p1, q1, p0, q0) = (p0, q0, p2.clone(), q2.clone());
        if norm(&p2, &q2).abs().is_one() {
            break (p2, q2);
        }
        pp = a * qq - pp;
        qq = (di - pp * pp) / qq;
    };
    let fundamental_norm = norm(&p, &q).to_i64().expect("unit");
    // eps = p - q * conj(omega)
    let (mut a, mut b) = if one_mod_four {
        (BigInt::from(2) * &p - &q, q)
    } else {
        (BigInt::from(2) * &p, BigInt::from(2) * q)
    };
    if fundamental_norm == -1 {
        let a2 = (&a * &a + BigInt::from(d) * &b * &b) / 2;
        b = &a * &b;
        a = a2;
    }
    let trace = a.clone();
    let value = BigInt::from(2) - &trace;
    let class = square_class(&BigRational::from_integer(value.clone()));
    let disc = if one_mod_four { d } else { 4 * d };
    let conforms = match class.representative() {
        None => false,
        Some(r) => factor_integer(r)?.keys().all(|prime| {
            prime == &2u32.into() || (BigInt::from(disc) % BigInt::from(prime.clone())).is_zero()
        }),
    };
    Ok(QuadraticUnitReport {
        d,
        disc,
        a,
        b,
        fundamental_norm,
        trace,
        value,
        class,
        conforms,
    })
}

/// Squarefree `D` in `2..=dmax`.
pub fn squarefree_range(dmax: u64) -> Vec<u64> {
    (2..=dmax).filter(|&d| is_squarefree(d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::frac;

    #[test]
    fn cayley_example() {
        let g = RatMatrix::identity(2);
        let a = RatMatrix::from_int_rows(&[&[0, 2], &[-2, 0]]).unwrap();
        let s = cayley(&g, &a).unwrap();
        let expected = RatMatrix::from_rows(vec![
            vec![frac(-3, 5), frac(4, 5)],
            vec![frac(-4, 5), frac(-3, 5)],
        ])
        .unwrap();
        assert_eq!(s, expected);
        let zero = RatMatrix::zeros(2, 2);
        assert_eq!(cayley(&g, &zero).unwrap(), RatMatrix::identity(2));
    }

    #[test]
    fn generated_instances_are_orthogonal() {
        for seed in 0..20 {
            let inst = random_orthogonal(4, 5, seed).unwrap();
            assert!(LatticeInstance::new(5, inst.g.clone(), inst.sigma.clone()).is_ok());
        }
        assert_eq!(
            random_orthogonal(3, 5, 1),
            Err(Error::GenerationFailed(RETRY_CAP))
        );
        assert_eq!(random_orthogonal(4, 5, 9), random_orthogonal(4, 5, 9));
    }

    fn rotation(p: u64) -> LatticeInstance {
        let sigma = RatMatrix::from_rows(vec![
            vec![frac(3, 5), frac(-4, 5)],
            vec![frac(4, 5), frac(3, 5)],
        ])
        .unwrap();
        LatticeInstance::new(p, RatMatrix::identity(2), sigma).unwrap()
    }

    #[test]
    fn rotation_witnesses() {
        let w = parity_witness(&rotation(5)).unwrap();
        assert_eq!((w.ell_sigma, w.nu_det_1_minus, w.ell_tors), (1, -1, 0));
        assert!(assert_cor_det(&rotation(5)).unwrap());
        let w = parity_witness(&rotation(2)).unwrap();
        assert_eq!((w.ell_sigma, w.nu_det_1_minus), (0, 2));
        assert_eq!(
            assert_hilf(&rotation(5)).unwrap().verdict,
            Verdict::NotApplicable
        );
    }

    #[test]
    fn minus_identity() {
        let sigma = RatMatrix::identity(4).scale(&rat(-1));
        let inst = LatticeInstance::new(5, RatMatrix::identity(4), sigma).unwrap();
        let one_minus = &RatMatrix::identity(4) - &inst.sigma;
        assert_eq!(nu_det(&one_minus, 5).unwrap(), 0);
        assert_eq!(ell_sum(&inst.sigma, 5).unwrap(), 0);
        assert!(matches!(parity_witness(&inst), Err(Error::Spectrum(_))));
    }

    #[test]
    fn integral_case_even_valuation() {
        for (p, seed) in [(2u64, 1u64), (2, 2), (3, 3), (5, 4)] {
            let inst = random_integral_orthogonal(2, p, seed).unwrap();
            assert!(inst.sigma_is_integral());
            assert_eq!(parity_witness(&inst).unwrap().nu_det_1_minus % 2, 0);
        }
    }

    #[test]
    fn small_sweep() {
        let cfg = SweepConfig {
            primes: vec![3, 5],
            ranks: vec![2, 4],
            trials: 25,
            seed: 42,
        };
        let s = sweep(&cfg).unwrap();
        assert_eq!(s.failures(), 0, "{s:?}");
        assert_eq!(s, sweep(&cfg).unwrap());
        assert!(sweep(&SweepConfig {
            primes: vec![2],
            ..cfg.clone()
        })
        .is_err());
        let empty = sweep(&SweepConfig { trials: 0, ..cfg }).unwrap();
        assert!(empty.cells.iter().all(|c| c.generated == 0));
    }

    #[test]
    fn quadratic_units() {
        let r = quadratic_unit_demo(3).unwrap();
        assert_eq!(
            (r.a.clone(), r.b.clone(), r.value.clone()),
            (BigInt::from(4), BigInt::from(2), BigInt::from(-2))
        );
        assert!(r.conforms);
        let r = quadratic_unit_demo(5).unwrap();
        assert_eq!(
            (r.fundamental_norm, r.trace.clone(), r.value.clone()),
            (-1, BigInt::from(3), BigInt::from(-1))
        );
        let r = quadratic_unit_demo(2).unwrap();
        assert_eq!(
            (r.trace.clone(), r.value.clone(), r.disc),
            (BigInt::from(6), BigInt::from(-4), 8)
        );
        assert!(quadratic_unit_demo(4).is_err());
    }
}
