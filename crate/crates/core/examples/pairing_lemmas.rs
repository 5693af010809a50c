//! One Cayley-transform instance in detail, then a small seeded sweep.

use weilcheck::pairing_lab::{assert_hilf, parity_witness, random_orthogonal, sweep, SweepConfig};

fn main() -> weilcheck::Result<()> {
    let inst = random_orthogonal(4, 5, 7)?;
    println!("G =\n{}\nsigma =\n{}", inst.g, inst.sigma);
    let w = parity_witness(&inst)?;
    println!("{w:?}");
    println!("hilf: {:?}", assert_hilf(&inst)?);

    let cfg = SweepConfig {
        primes: vec![3, 5, 7, 11],
        ranks: vec![2, 4, 6],
        trials: 50,
        seed: 1,
    };
    let summary = sweep(&cfg)?;
    for c in &summary.cells {
        println!(
            "p={:<2} n={} generated {:>3}  cor_det {:>3}/{:<3} hilf {:>3} (+{} n/a)",
            c.p, c.n, c.generated, c.cor_det_pass, c.generated, c.hilf_pass, c.hilf_not_applicable
        );
    }
    println!("failures: {}", summary.failures());
    Ok(())
}
