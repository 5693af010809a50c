//! Products of two elliptic curves over F_7 and the predicted square class.

use weilcheck::compose::{e_product_parity, product_parity_check};
use weilcheck::exactmath::RatPoly;
use weilcheck::parity::ParityKind;

fn main() -> weilcheck::Result<()> {
    let q = 7;
    let mut counts = [0usize; 3];
    for a in -5i64..=5 {
        for b in -5i64..=5 {
            // T^2 - a T + q
            let f = RatPoly::from_ints(&[q, -a, 1]);
            let g = RatPoly::from_ints(&[q, -b, 1]);
            let r = product_parity_check(&f, 1, &g, 1, 7, 1, 0, 0)?;
            counts[match r.verdict.kind {
                ParityKind::Pass => 0,
                ParityKind::Vacuous => 1,
                ParityKind::Fail => 2,
            }] += 1;
        }
    }
    println!(
        "E1 x E2 over F_7: pass {}, vacuous {}, fail {}",
        counts[0], counts[1], counts[2]
    );
    println!("e(E1 x E2) mod 2 = {}", e_product_parity(2, 2, 1, 1, 0, 0)?);
    println!(
        "e(K3 x K3) mod 2 = {}",
        e_product_parity(22, 22, 2, 2, 1, 1)?
    );
    Ok(())
}
