//! Newton polygons against Hodge polygons for the bundled polynomials.

use weilcheck::datasets::{cubic4_phi, k3_phi};
use weilcheck::exactmath::newton_polygon;
use weilcheck::parity::{e_from_hodge, e_from_slopes};
use weilcheck::weil::{check_katz, FrobPolynomial, HodgeVector};

fn main() -> weilcheck::Result<()> {
    let cases = [
        (
            "K3 Phi_1",
            FrobPolynomial::from_normalized(7, 1, 2, k3_phi(1))?,
            vec![1, 20, 1],
        ),
        (
            "cubic fourfold",
            FrobPolynomial::from_normalized(2, 1, 4, cubic4_phi())?,
            vec![0, 1, 21, 1, 0],
        ),
    ];
    for (name, fp, h) in cases {
        let np = newton_polygon(&fp.phi, fp.ctx.p, fp.ctx.k)?;
        println!("{name}:");
        for (v, m) in np.root_valuations() {
            println!("  {m:>2} roots of valuation {v}");
        }
        let hv = HodgeVector::new(fp.ctx.d, h)?;
        let katz = check_katz(&fp, &hv)?;
        println!("  above Hodge polygon: {}", katz.violations.is_empty());
        println!(
            "  e from slopes {} / from Hodge {}",
            e_from_slopes(&fp)?,
            e_from_hodge(&hv, fp.ctx.d)?
        );
    }
    Ok(())
}
