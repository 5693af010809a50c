//! Supersingular polynomials: products of cyclotomic factors.

use weilcheck::exactmath::{cyclotomic, RatPoly};
use weilcheck::parity::{
    cyclotomic_factorization, cyclotomic_minus_one, supersingular_forced_eigenvalue,
};
use weilcheck::weil::FrobPolynomial;

fn main() -> weilcheck::Result<()> {
    for n in 1..=12 {
        println!("Phi_{n}(-1) = {}", cyclotomic_minus_one(n)?);
    }
    // degree 22 without the factor T + 1
    let mut phi = RatPoly::one();
    for n in [1, 1, 3, 4, 5, 8, 12, 7] {
        phi = &phi * &cyclotomic(n)?;
    }
    println!("factorization: {:?}", cyclotomic_factorization(&phi));
    let fp = FrobPolynomial::from_normalized(5, 1, 2, phi)?;
    let r = supersingular_forced_eigenvalue(&fp, 1);
    println!("{}: {:?} {:?}", r.name, r.outcome, r.hypotheses);
    Ok(())
}
