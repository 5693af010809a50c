//! Frobenius powers of the K3 candidates and the square classes they carry.

use weilcheck::compose::{base_extension_parity_check, power_map};
use weilcheck::datasets::k3_phi;
use weilcheck::weil::FrobPolynomial;

fn main() -> weilcheck::Result<()> {
    for i in 0..2 {
        let fp = FrobPolynomial::from_normalized(7, 1, 2, k3_phi(i))?;
        for k in 1..=4 {
            let v = base_extension_parity_check(&fp, k, 1)?;
            println!(
                "Phi_{i}, k = {k}: {:?} (class {}, exponent {})",
                v.kind, v.tested_value, v.exponent_used
            );
        }
        let sq = power_map(&fp.phi, 2)?;
        println!("  Phi_{i}^(2)(1) = {}", sq.eval_int(1));
    }
    Ok(())
}
