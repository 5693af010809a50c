//! Cubic fourfold over F_2: reconstruction, then the p = 2 square test.

use weilcheck::datasets::cubic4_descriptor;
use weilcheck::parity::{e_from_slopes, test_main2};
use weilcheck::reconstruct::disambiguate;
use weilcheck::weil::FrobPolynomial;

fn main() -> weilcheck::Result<()> {
    let vd = cubic4_descriptor()?;
    let dis = disambiguate(&vd, 1e-6)?;
    let phi = dis
        .unique_candidate()
        .expect("unique survivor")
        .polynomial();
    let fp = FrobPolynomial::from_normalized(2, 1, 4, phi)?;
    println!("phi(-1) = {}", fp.phi.eval_int(-1));
    println!("e from slopes = {}", e_from_slopes(&fp)?);
    let v = test_main2(&fp, 1);
    println!(
        "(-2)^N q^e phi(-1) = {} -> {:?}, class {}",
        v.value, v.kind, v.tested_value
    );
    for w in &v.warnings {
        println!("warning: {w}");
    }
    Ok(())
}
