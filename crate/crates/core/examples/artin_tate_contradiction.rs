//! The discriminant class predicted from Phi_0 changes under the quadratic
//! base extension while the rank stays put, so Phi_0 cannot occur.

use weilcheck::artin_tate::{base_change_consistency, test_artin_tate};
use weilcheck::datasets::k3_phi;
use weilcheck::weil::FrobPolynomial;

fn main() -> weilcheck::Result<()> {
    for i in 0..2 {
        let fp = FrobPolynomial::from_normalized(7, 1, 2, k3_phi(i))?;
        let sq = test_artin_tate(&fp, 1)?;
        let bc = base_change_consistency(&fp, 1)?;
        println!("Phi_{i}: square test {:?}", sq.kind);
        println!(
            "  rho {} -> {}, disc {} -> {}, ratio {}: {:?}",
            bc.rho, bc.rho_extended, bc.disc, bc.disc_extended, bc.ratio, bc.outcome
        );
    }
    Ok(())
}
