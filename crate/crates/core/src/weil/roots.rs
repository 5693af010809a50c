//! Floating-point root finding for the advisory layer of the Weil bound check.

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::exactmath::RatPoly;

const MAX_ITER: usize = 2000;

/// All complex roots of a polynomial by Aberth-Ehrlich iteration.
///
/// Accuracy degrades on repeated roots; callers should pass a squarefree
/// polynomial.
pub fn complex_roots(f: &RatPoly) -> Vec<Complex64> {
    let n = f.deg();
    if n == 0 {
        return Vec::new();
    }
    let lc = f.leading();
    let c: Vec<Complex64> = f
        .coeffs()
        .iter()
        .map(|a| Complex64::new((a / &lc).to_f64().unwrap_or(f64::NAN), 0.0))
        .collect();
    if n == 1 {
        return vec![-c[0]];
    }
    let dc: Vec<Complex64> = (1..=n).map(|r| c[r] * r as f64).collect();
    let eval = |coeffs: &[Complex64], z: Complex64| {
        coeffs
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, &a| acc * z + a)
    };
    // Cauchy bound for the initial circle
    let radius = 1.0 + c[..n].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let r0 = radius.clamp(0.5, 2.0);
    let mut z: Vec<Complex64> = (0..n)
        .map(|i| {
            Complex64::from_polar(
                r0,
                2.0 * std::f64::consts::PI * (i as f64 + 0.25) / n as f64,
            )
        })
        .collect();
    for _ in 0..MAX_ITER {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let pz = eval(&c, z[i]);
            let dpz = eval(&dc, z[i]);
            if pz.norm() == 0.0 {
                continue;
            }
            let ratio = pz / dpz;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::zero()
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm());
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    z
}
