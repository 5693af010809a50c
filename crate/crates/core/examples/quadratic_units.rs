//! 2 - tr(eps) for the totally positive fundamental units of Q(sqrt D).

use weilcheck::pairing_lab::{quadratic_unit_demo, squarefree_range};

fn main() -> weilcheck::Result<()> {
    let dmax = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(50);
    for d in squarefree_range(dmax) {
        let r = quadratic_unit_demo(d)?;
        println!(
            "D = {d:>3}  eps = ({} + {} sqrt D)/2  2 - tr = {:<12} class {:<6} {}",
            r.a,
            r.b,
            r.value,
            r.class.to_string(),
            if r.conforms { "ok" } else { "FAIL" }
        );
    }
    Ok(())
}
