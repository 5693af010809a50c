//! Point counts of a K3 surface over F_7 -> two candidate polynomials -> the
//! square test keeps only one.

use weilcheck::datasets::k3_descriptor;
use weilcheck::reconstruct::disambiguate;

fn main() -> weilcheck::Result<()> {
    let vd = k3_descriptor()?;
    let dis = disambiguate(&vd, 1e-6)?;
    println!(
        "{}: degree {}, {} candidates",
        dis.name,
        dis.degree,
        dis.candidates.len()
    );
    for c in &dis.candidates {
        let main = c.check("parity_main").expect("even degree");
        println!(
            "  sign {:+}: {:<9} parity_main {:?} (class {})",
            c.sign.value().unwrap_or(0),
            if c.survives { "survives" } else { "rejected" },
            main.verdict,
            main.evidence_value("square_class").unwrap_or("-"),
        );
    }
    match dis.unique_candidate() {
        Some(c) => println!(
            "characteristic polynomial: sign {:+}, phi(-1) = {}",
            c.sign.value().unwrap_or(0),
            c.polynomial().eval_int(-1)
        ),
        None => println!("not determined"),
    }
    Ok(())
}
