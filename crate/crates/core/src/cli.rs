//! Command-line front end. [`run`] does all the work in-process so the exit
//! code contract can be tested without spawning the binary.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::artin_tate::{alpha_vs_e, base_change_consistency, disc_square_class, test_artin_tate};
use crate::compose::{base_extension_parity_check, power_map, product_parity_check};
use crate::json::{from_json_str, DescriptorFile, PolynomialFile};
use crate::pairing_lab::{quadratic_unit_demo, squarefree_range, sweep, SweepConfig};
use crate::parity::{odd_dim_supersingular, supersingular_forced_eigenvalue};
use crate::reconstruct::{admissibility_checks, disambiguate, BranchStatus};
use crate::report::{AsCheck, Conclusion, VerdictReport};
use crate::weil::{check_real_root_multiplicity, untwist, FeSign, FrobPolynomial, HodgeVector};
use crate::{Error, Result};

pub const THREADS_ENV: &str = "WEILCHECK_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "weilcheck",
    version,
    about = "Exact checks on Frobenius characteristic polynomials"
)]
pub struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Indented JSON output (implies --json).
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Master seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Tolerance for the advisory floating-point root check.
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub tol: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every applicable check on a polynomial file.
    Check {
        file: PathBuf,
        /// Override the exponent `e` of the file.
        #[arg(long)]
        e: Option<u64>,
        /// Override `alpha` (surfaces only).
        #[arg(long, allow_negative_numbers = true)]
        alpha: Option<i64>,
    },
    /// Recover candidate polynomials from point counts and rule them out.
    Reconstruct {
        file: PathBuf,
        /// Directory to write each candidate as a polynomial file.
        #[arg(long)]
        emit_candidates: Option<PathBuf>,
    },
    /// Frobenius polynomial of a product of two varieties.
    Compose { first: PathBuf, second: PathBuf },
    /// Polynomial of the `k`-th power of Frobenius.
    Power {
        file: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
    },
    /// Seeded sweep over random orthogonal lattice maps.
    PairingLab {
        #[arg(long, value_delimiter = ',', default_values_t = vec![3u64, 5, 7])]
        primes: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_values_t = vec![2usize, 4])]
        ranks: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// `2 - tr(eps)` for the units of real quadratic fields.
    DemoQuadratic {
        #[arg(long, default_value_t = 200)]
        dmax: u64,
    },
    /// Square test and discriminant classes for a surface.
    ArtinTate {
        file: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        alpha: Option<i64>,
    },
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Rendered {
    json: Value,
    text: String,
    failed: bool,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let msg = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: msg,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: msg,
                }
            };
        }
    };
    let pool = match thread_pool() {
        Ok(pool) => pool,
        Err(e) => return input_error(e),
    };
    match pool.install(|| dispatch(&cli)) {
        Ok(r) => {
            let stdout = if cli.pretty {
                serde_json::to_string_pretty(&r.json).expect("json") + "\n"
            } else if cli.json {
                serde_json::to_string(&r.json).expect("json") + "\n"
            } else {
                r.text
            };
            Outcome {
                code: i32::from(r.failed),
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => input_error(e),
    }
}

fn input_error(e: Error) -> Outcome {
    Outcome {
        code: 2,
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    }
}

fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
            Error::Input(format!("{THREADS_ENV}={v:?} is not a positive integer"))
        })?;
        b = b.num_threads(n);
    }
    b.build().map_err(|e| Error::Input(e.to_string()))
}

fn dispatch(cli: &Cli) -> Result<Rendered> {
    match &cli.command {
        Command::Check { file, e, alpha } => cmd_check(file, *e, *alpha, cli.tol),
        Command::Reconstruct {
            file,
            emit_candidates,
        } => cmd_reconstruct(file, emit_candidates.as_deref(), cli.tol),
        Command::Compose { first, second } => cmd_compose(first, second),
        Command::Power { file, k } => cmd_power(file, *k),
        Command::PairingLab {
            primes,
            ranks,
            trials,
        } => cmd_pairing_lab(SweepConfig {
            primes: primes.clone(),
            ranks: ranks.clone(),
            trials: *trials,
            seed: cli.seed,
        }),
        Command::DemoQuadratic { dmax } => cmd_demo_quadratic(*dmax),
        Command::ArtinTate { file, alpha } => cmd_artin_tate(file, *alpha),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn load_polynomial(path: &Path) -> Result<(PolynomialFile, FrobPolynomial)> {
    let file: PolynomialFile = from_json_str(&read(path)?, &path.display().to_string())?;
    let fp = FrobPolynomial::from_normalized(file.p, file.k, file.dim, file.polynomial()?)?;
    Ok((file, fp))
}

fn report(report: VerdictReport) -> Rendered {
    let failed = report.conclusion == Conclusion::Rejected;
    let text = report.render_text();
    Rendered {
        json: serde_json::to_value(&report).expect("json"),
        text,
        failed,
    }
}

fn cmd_check(path: &Path, e: Option<u64>, alpha: Option<i64>, tol: f64) -> Result<Rendered> {
    let (file, fp) = load_polynomial(path)?;
    let hodge = file
        .hodge
        .as_ref()
        .map(|h| HodgeVector::new(file.dim, h.clone()))
        .transpose()?;
    let e = e.or(file.e);
    let mut checks = admissibility_checks(&fp, hodge.as_ref(), e, tol)?;
    checks.push(check_real_root_multiplicity(&fp).as_check());
    if fp.ctx.d % 2 == 1 {
        checks.push(odd_dim_supersingular(&fp)?.as_check());
    } else if let Some(e) = e {
        checks.push(supersingular_forced_eigenvalue(&fp, e as i64).as_check());
    }
    if fp.ctx.d == 2 {
        checks.extend(surface_checks(&fp, alpha.or(file.alpha), e)?);
    }
    let input = serde_json::to_value(&file).expect("json");
    Ok(report(VerdictReport::new(input, checks)))
}

fn surface_checks(
    fp: &FrobPolynomial,
    alpha: Option<i64>,
    e: Option<u64>,
) -> Result<Vec<crate::report::CheckResult>> {
    let Some(alpha) = alpha.or(e.map(|e| e as i64)) else {
        return Ok(vec![crate::report::CheckResult::new(
            "artin_tate_square",
            crate::report::Verdict::NotApplicable,
        )
        .note("alpha unknown")]);
    };
    let disc = disc_square_class(fp, alpha)?;
    Ok(vec![
        alpha_vs_e(alpha, e),
        test_artin_tate(fp, alpha)?.as_check().with("disc", disc),
        base_change_consistency(fp, alpha)?.as_check(),
    ])
}

fn cmd_artin_tate(path: &Path, alpha: Option<i64>) -> Result<Rendered> {
    let (file, fp) = load_polynomial(path)?;
    if fp.ctx.d != 2 {
        return Err(Error::InvalidArgument(format!(
            "artin-tate needs a surface (dim 2), got dim {}",
            fp.ctx.d
        )));
    }
    let alpha = alpha.or(file.alpha);
    if alpha.is_none() && file.e.is_none() {
        return Err(Error::Input(
            "alpha is neither in the file nor given with --alpha".into(),
        ));
    }
    let checks = surface_checks(&fp, alpha, file.e)?;
    let input = serde_json::to_value(&file).expect("json");
    Ok(report(VerdictReport::new(input, checks)))
}

fn sign_label(s: FeSign) -> &'static str {
    match s {
        FeSign::Plus => "plus",
        FeSign::Minus => "minus",
        FeSign::Incompatible => "incompatible",
    }
}

fn cmd_reconstruct(path: &Path, emit: Option<&Path>, tol: f64) -> Result<Rendered> {
    let vd: DescriptorFile = from_json_str(&read(path)?, &path.display().to_string())?;
    let dis = disambiguate(&vd, tol)?;
    let mut text = String::new();
    writeln!(
        text,
        "{}: N = {}, {} traces",
        dis.name,
        dis.degree,
        dis.traces.len()
    )
    .unwrap();
    for b in &dis.branches {
        let status = match &b.status {
            BranchStatus::Determined { .. } => "determined".to_string(),
            BranchStatus::Underdetermined { free } => format!("underdetermined ({free} free)"),
            BranchStatus::Inconsistent { reason } => format!("inconsistent ({reason})"),
        };
        writeln!(text, "sign {:+}: {status}", b.sign.value().unwrap_or(0)).unwrap();
    }
    for c in &dis.candidates {
        writeln!(
            text,
            "\ncandidate sign {:+}: {}",
            c.sign.value().unwrap_or(0),
            if c.survives { "survives" } else { "ruled out" }
        )
        .unwrap();
        text.push_str(&VerdictReport::new(Value::Null, c.checks.clone()).render_text());
    }
    match dis.unique_candidate() {
        Some(c) => writeln!(
            text,
            "\nunique survivor: sign {:+}",
            c.sign.value().unwrap_or(0)
        )
        .unwrap(),
        None => writeln!(text, "\n{} survivors", dis.survivors().len()).unwrap(),
    }
    if let Some(dir) = emit {
        std::fs::create_dir_all(dir)
            .map_err(|e| Error::Input(format!("{}: {e}", dir.display())))?;
        for c in &dis.candidates {
            let mut f = PolynomialFile::from_poly(vd.p, vd.k, vd.d, &c.polynomial());
            f.name = Some(format!("{} ({})", vd.name, sign_label(c.sign)));
            f.hodge = vd.hodge.clone();
            f.e = vd.e;
            f.alpha = vd.alpha;
            let out = dir.join(format!("candidate_{}.json", sign_label(c.sign)));
            std::fs::write(&out, serde_json::to_string_pretty(&f).expect("json") + "\n")
                .map_err(|e| Error::Input(format!("{}: {e}", out.display())))?;
            writeln!(text, "wrote {}", out.display()).unwrap();
        }
    }
    // no admissible candidate among a fully determined set
    let failed = dis.free_coefficient_count == 0 && dis.survivors().is_empty();
    Ok(Rendered {
        json: serde_json::to_value(&dis).expect("json"),
        text,
        failed,
    })
}

fn cmd_power(path: &Path, k: i64) -> Result<Rendered> {
    let (file, fp) = load_polynomial(path)?;
    let phik = power_map(&fp.phi, k)?;
    let field_k = file.k * k.unsigned_abs() as u32;
    let mut out = PolynomialFile::from_poly(file.p, field_k, file.dim, &phik);
    out.name = file
        .name
        .as_ref()
        .map(|n| format!("{n}, Frobenius power {k}"));
    out.hodge = file.hodge.clone();
    let mut checks = Vec::new();
    if k > 0 {
        match file.e {
            Some(e) if fp.ctx.d % 2 == 0 => {
                checks.push(base_extension_parity_check(&fp, k, e as i64)?.as_check());
                out.e = Some(if k % 2 == 0 { 0 } else { e * k as u64 });
            }
            _ => {}
        }
    }
    let rep = VerdictReport::new(Value::Null, checks);
    let mut text = serde_json::to_string_pretty(&out).expect("json") + "\n";
    if !rep.checks.is_empty() {
        text.push_str(&rep.render_text());
    }
    Ok(Rendered {
        json: json!({ "polynomial": out, "checks": rep.checks }),
        text,
        failed: rep.conclusion == Conclusion::Rejected,
    })
}

fn e_for_product(file: &PolynomialFile) -> Result<u64> {
    if file.dim % 2 == 1 {
        return Ok(file.e.unwrap_or(0));
    }
    file.e.ok_or_else(|| {
        Error::Input(format!(
            "{}: even dim needs e",
            file.name.as_deref().unwrap_or("input")
        ))
    })
}

fn cmd_compose(first: &Path, second: &Path) -> Result<Rendered> {
    let (f1, fp1) = load_polynomial(first)?;
    let (f2, fp2) = load_polynomial(second)?;
    if (f1.p, f1.k) != (f2.p, f2.k) {
        return Err(Error::InvalidArgument(format!(
            "base fields differ: q = {}^{} and {}^{}",
            f1.p, f1.k, f2.p, f2.k
        )));
    }
    if f1.dim % 2 != f2.dim % 2 {
        return Err(Error::ParityMismatch(f1.dim, f2.dim));
    }
    let (psi1, psi2) = (untwist(&fp1)?, untwist(&fp2)?);
    let rep = product_parity_check(
        &psi1,
        f1.dim,
        &psi2,
        f2.dim,
        f1.p,
        f1.k,
        e_for_product(&f1)?,
        e_for_product(&f2)?,
    )?;
    let mut out = PolynomialFile::from_poly(f1.p, f1.k, f1.dim + f2.dim, &rep.result);
    out.e = (f1.dim % 2 == 0).then_some(rep.predicted_exponent as u64);
    let check = rep.as_check();
    let checks = VerdictReport::new(Value::Null, vec![check]);
    let text = serde_json::to_string_pretty(&out).expect("json") + "\n" + &checks.render_text();
    Ok(Rendered {
        json: json!({ "polynomial": out, "checks": checks.checks }),
        text,
        failed: checks.conclusion == Conclusion::Rejected,
    })
}

fn cmd_pairing_lab(cfg: SweepConfig) -> Result<Rendered> {
    let summary = sweep(&cfg)?;
    let mut text = format!("seed {} trials {}\n", summary.seed, summary.trials);
    writeln!(
        text,
        "{:>4} {:>3} {:>9} {:>7} {:>8} {:>8} {:>9} {:>9}",
        "p", "n", "generated", "skipped", "cor_det", "hilf", "hilf_n/a", "failures"
    )
    .unwrap();
    for c in &summary.cells {
        writeln!(
            text,
            "{:>4} {:>3} {:>9} {:>7} {:>8} {:>8} {:>9} {:>9}",
            c.p,
            c.n,
            c.generated,
            c.generation_failed,
            c.cor_det_pass,
            c.hilf_pass,
            c.hilf_not_applicable,
            c.cor_det_fail + c.hilf_fail
        )
        .unwrap();
        if !c.failing_trials.is_empty() {
            writeln!(text, "     failing trials: {:?}", c.failing_trials).unwrap();
        }
    }
    writeln!(text, "total failures: {}", summary.failures()).unwrap();
    Ok(Rendered {
        failed: summary.failures() > 0,
        json: serde_json::to_value(&summary).expect("json"),
        text,
    })
}

fn cmd_demo_quadratic(dmax: u64) -> Result<Rendered> {
    let reports = squarefree_range(dmax)
        .into_iter()
        .map(quadratic_unit_demo)
        .collect::<Result<Vec<_>>>()?;
    let mut text = format!(
        "{:>5} {:>5} {:>6} {:>24} {:>8} {:>9}\n",
        "D", "disc", "N(u)", "2-tr(eps)", "class", "conforms"
    );
    for r in &reports {
        writeln!(
            text,
            "{:>5} {:>5} {:>6} {:>24} {:>8} {:>9}",
            r.d, r.disc, r.fundamental_norm, r.value, r.class, r.conforms
        )
        .unwrap();
    }
    let bad = reports.iter().filter(|r| !r.conforms).count();
    writeln!(text, "{} fields, {} non-conforming", reports.len(), bad).unwrap();
    Ok(Rendered {
        json: serde_json::to_value(&reports).expect("json"),
        text,
        failed: bad > 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(name: &str) -> String {
        format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
    }

    #[test]
    fn check_exit_codes() {
        assert_eq!(run(["weilcheck", "check", &data("k3_phi0.json")]).code, 1);
        let ok = run(["weilcheck", "check", &data("k3_phi1.json")]);
        assert_eq!(ok.code, 0, "{}", ok.stdout);
        assert_eq!(run(["weilcheck", "check", "/nonexistent.json"]).code, 2);
        assert_eq!(run(["weilcheck", "frobnicate"]).code, 2);
    }

    #[test]
    fn pairing_lab_rejects_two() {
        let o = run(["weilcheck", "pairing-lab", "--primes", "2"]);
        assert_eq!(o.code, 2);
        assert!(o.stderr.contains("odd characteristic"));
        let o = run(["weilcheck", "--json", "pairing-lab", "--trials", "0"]);
        assert_eq!(o.code, 0);
    }

    #[test]
    fn help_is_success() {
        assert_eq!(run(["weilcheck", "--help"]).code, 0);
    }
}
