use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{is_prime_u64, RatMatrix};
use crate::error::{Error, Result};

/// p-adic valuations of the elementary divisors of `m` over the integers
/// localized at `p`, one per unit of rank.
///
/// Elimination always pivots on an entry of least valuation, so every
/// multiplier is p-integral and the row/column operations are invertible
/// over the local ring. Works for rectangular input.
pub fn local_elementary_valuations(m: &RatMatrix, p: u64) -> Result<Vec<i64>> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    let (d, mut a) = m.integer_rows();
    let shift = nu_int(&d, p).unwrap_or(0);
    let pb = BigInt::from(p);
    let (rows, cols) = (m.rows(), m.cols());
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        let mut best: Option<(i64, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if let Some(v) = nu_int(x, p) {
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let Some((v, pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let pv = num_traits::pow(pb.clone(), v as usize);
        let u = &a[t][t] / &pv;
        let (top, rest) = a.split_at_mut(t + 1);
        let prow = &top[t];
        for row in rest.iter_mut() {
            if row[t].is_zero() {
                continue;
            }
            // row <- u * row - w * prow, u a p-unit
            let w = &row[t] / &pv;
            for j in t..cols {
                row[j] = &u * &row[j] - &w * &prow[j];
            }
            strip_unit_content(row, &pb);
        }
        out.push(v - shift);
    }
    out.sort_unstable();
    Ok(out)
}

fn nu_int(x: &BigInt, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut m = x.clone();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return Some(v);
        }
        m = q;
        v += 1;
    }
}

/// Divides the row by the prime-to-p part of its content.
fn strip_unit_content(row: &mut [BigInt], p: &BigInt) {
    let mut g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return;
    }
    loop {
        let (q, r) = g.div_rem(p);
        if !r.is_zero() {
            break;
        }
        g = q;
    }
    if !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// Local Smith valuations of a square nonsingular matrix. They sum to
/// `nu_p(det m)`.
pub fn local_smith_lengths(m: &RatMatrix, p: u64) -> Result<Vec<i64>> {
    if !m.is_square() {
        return Err(Error::Shape(
            "local Smith form needs a square matrix".into(),
        ));
    }
    if m.det()?.is_zero() {
        return Err(Error::SingularMatrix);
    }
    local_elementary_valuations(m, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{frac, rat};

    #[test]
    fn diagonal_and_identity() {
        assert_eq!(
            local_smith_lengths(&RatMatrix::identity(3), 5).unwrap(),
            vec![0, 0, 0]
        );
        let d = RatMatrix::diagonal(&[rat(5), frac(1, 5)]);
        assert_eq!(local_smith_lengths(&d, 5).unwrap(), vec![-1, 1]);
    }

    #[test]
    fn rotation_minus_identity() {
        let r = RatMatrix::from_rows(vec![
            vec![frac(3, 5), frac(-4, 5)],
            vec![frac(4, 5), frac(3, 5)],
        ])
        .unwrap();
        let m = &RatMatrix::identity(2) - &r;
        let v = local_smith_lengths(&m, 5).unwrap();
        assert_eq!(v.iter().sum::<i64>(), -1);
    }

    #[test]
    fn non_diagonal_divisors() {
        // [[2,4],[6,8]] has elementary divisors 2, 4 over Z
        let m = RatMatrix::from_int_rows(&[&[2, 4], &[6, 8]]).unwrap();
        assert_eq!(local_smith_lengths(&m, 2).unwrap(), vec![1, 2]);
        assert_eq!(local_smith_lengths(&m, 3).unwrap(), vec![0, 0]);
    }

    #[test]
    fn errors() {
        let s = RatMatrix::from_int_rows(&[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(local_smith_lengths(&s, 3), Err(Error::SingularMatrix));
        assert_eq!(
            local_smith_lengths(&RatMatrix::identity(2), 6),
            Err(Error::NotPrime(6))
        );
    }

    #[test]
    fn rectangular_lattice_sum() {
        // columns of [I | diag(1/5, 5)] generate 5^-1 Z + Z, Z
        let m = RatMatrix::identity(2)
            .hstack(&RatMatrix::diagonal(&[frac(1, 5), rat(5)]))
            .unwrap();
        assert_eq!(local_elementary_valuations(&m, 5).unwrap(), vec![-1, 0]);
    }
}
