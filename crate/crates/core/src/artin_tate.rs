//! Surface-level square classes: Milne's `alpha`, the predicted
//! discriminant class of the Picard lattice, and the contradiction between
//! a surface and its quadratic base extension.

use serde::{Deserialize, Serialize};

use crate::compose::power_map;
use crate::exactmath::{rat, rat_pow, square_class, BigRational, SquareClass};
use crate::parity::{ParityVerdict, Theorem};
use crate::report::{AsCheck, CheckResult, Consistency};
use crate::weil::FrobPolynomial;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    /// `dim H^2(X, O_X)`
    pub h2_o: i64,
    /// `dim H^1(X, O_X)`
    pub h1_o: i64,
    /// First etale Betti number.
    pub b1: i64,
}

/// `alpha = h^2(O) - h^1(O) + b1/2`.
pub fn alpha(si: &SurfaceInvariants) -> Result<i64> {
    if si.b1 % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "b1 = {} must be even",
            si.b1
        )));
    }
    Ok(si.h2_o - si.h1_o + si.b1 / 2)
}

fn require_surface(fp: &FrobPolynomial) -> Result<()> {
    if fp.ctx.d != 2 {
        return Err(Error::InvalidArgument(format!(
            "surface test needs d = 2, got {}",
            fp.ctx.d
        )));
    }
    Ok(())
}

/// `(-2)^N q^alpha Phi(-1)` is a square.
pub fn test_artin_tate(fp: &FrobPolynomial, alpha: i64) -> Result<ParityVerdict> {
    require_surface(fp)?;
    let q = BigRational::from_integer(fp.q());
    let at = fp.phi.eval_int(-1);
    let value = fp.minus_two_power() * rat_pow(&q, alpha) * &at;
    Ok(ParityVerdict::from_value(Theorem::ArtinTate, value, alpha, None).with_phi_at_minus_one(at))
}

/// Multiplicity `rho` of the root `1` and `Phi*(1) = (phi / (T-1)^rho)(1)`.
pub fn rank_and_leading_value(fp: &FrobPolynomial) -> (usize, BigRational) {
    let (rest, rho) = fp.phi.strip_root(&rat(1));
    (rho, rest.eval_int(1))
}

/// `(-1)^(rho-1) * class(q^alpha Phi*(1))`.
pub fn disc_square_class(fp: &FrobPolynomial, alpha: i64) -> Result<SquareClass> {
    require_surface(fp)?;
    let (rho, star) = rank_and_leading_value(fp);
    let q = BigRational::from_integer(fp.q());
    let class = square_class(&(rat_pow(&q, alpha) * star));
    Ok(if rho % 2 == 0 {
        class.mul(&SquareClass::of_integer(-1))
    } else {
        class
    })
}

/// The same surface over `F_{q^2}`.
pub fn quadratic_extension(fp: &FrobPolynomial) -> Result<FrobPolynomial> {
    FrobPolynomial::from_normalized(fp.ctx.p, fp.ctx.k * 2, fp.ctx.d, power_map(&fp.phi, 2)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaseChangeReport {
    pub rho: usize,
    pub rho_extended: usize,
    pub disc: SquareClass,
    pub disc_extended: SquareClass,
    pub ratio: SquareClass,
    pub outcome: Consistency,
}

impl AsCheck for BaseChangeReport {
    fn as_check(&self) -> CheckResult {
        let c = CheckResult::new("base_change_disc", self.outcome.verdict())
            .with("rho", self.rho)
            .with("rho(F_q^2)", self.rho_extended)
            .with("disc", &self.disc)
            .with("disc(F_q^2)", &self.disc_extended)
            .with("ratio", &self.ratio);
        if self.outcome == Consistency::NotApplicable {
            c.note("root-1 multiplicity changes under base extension")
        } else {
            c
        }
    }
}

/// The discriminant classes over `F_q` and `F_{q^2}` must agree when the
/// rank does not jump.
pub fn base_change_consistency(fp: &FrobPolynomial, alpha: i64) -> Result<BaseChangeReport> {
    let ext = quadratic_extension(fp)?;
    let disc = disc_square_class(fp, alpha)?;
    let disc_extended = disc_square_class(&ext, alpha)?;
    let rho = rank_and_leading_value(fp).0;
    let rho_extended = rank_and_leading_value(&ext).0;
    let ratio = disc_extended.div(&disc);
    let outcome = if rho != rho_extended {
        Consistency::NotApplicable
    } else if ratio.is_one() {
        Consistency::Consistent
    } else {
        Consistency::Contradiction
    };
    Ok(BaseChangeReport {
        rho,
        rho_extended,
        disc,
        disc_extended,
        ratio,
        outcome,
    })
}

/// `alpha` and `e` side by side; a mismatch is reported, not resolved.
pub fn alpha_vs_e(alpha: i64, e: Option<u64>) -> CheckResult {
    let c = CheckResult::new("alpha_vs_e", crate::report::Verdict::Pass).with("alpha", alpha);
    match e {
        Some(e) if e as i64 == alpha => c.with("e", e),
        Some(e) => {
            let mut c = c.with("e", e).note("alpha and e differ");
            c.verdict = crate::report::Verdict::Warning;
            c
        }
        None => c.with("e", "unknown"),
    }
}
