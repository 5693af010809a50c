//! Library results against constructions that share no code with it:
//! polynomials built from explicit roots, Möbius products, brute-force Pell
//! search, determinantal divisors, and Leibniz expansion.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use weilcheck::compose::{power_map, product_map};
use weilcheck::exactmath::{
    cyclotomic, frac, local_smith_lengths, rat, rat_pow, resultant, BigRational, RatMatrix, RatPoly,
};
use weilcheck::pairing_lab::quadratic_unit_demo;
use weilcheck::parity::cyclotomic_minus_one;
use weilcheck::reconstruct::elementary_from_power_sums;

fn from_roots(roots: &[BigRational]) -> RatPoly {
    roots
        .iter()
        .fold(RatPoly::one(), |f, r| &f * &RatPoly::linear_root(r.clone()))
}

fn random_roots(rng: &mut ChaCha8Rng, n: usize) -> Vec<BigRational> {
    (0..n)
        .map(|_| {
            let num = rng.gen_range(-9..=9);
            let num = if num == 0 { 1 } else { num };
            frac(num, rng.gen_range(1..=4))
        })
        .collect()
}

#[test]
fn power_map_from_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..40 {
        let n = rng.gen_range(1..=6);
        let roots = random_roots(&mut rng, n);
        let f = from_roots(&roots);
        for k in [-3i64, -1, 2, 3, 5] {
            let expected = from_roots(&roots.iter().map(|r| rat_pow(r, k)).collect::<Vec<_>>());
            assert_eq!(
                power_map(&f, k).unwrap(),
                expected,
                "roots {roots:?}, k = {k}"
            );
        }
    }
}

#[test]
fn product_map_from_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    // (2, 3) and (3, 4) go through Sylvester elimination, (5, 6) and (6, 7)
    // through power sums
    for (n1, n2) in [(2, 3), (3, 4), (5, 6), (6, 7), (1, 9)] {
        for (d1, d2) in [(2u32, 2u32), (1, 3), (0, 2)] {
            let (p, k) = (3u64, 2u32);
            let r = random_roots(&mut rng, n1);
            let s = random_roots(&mut rng, n2);
            let scale = rat_pow(&rat(9), ((d1 + d2) / 2) as i64);
            let scale = &scale;
            let expected: Vec<BigRational> = r
                .iter()
                .flat_map(|x| s.iter().map(move |y| x * y / scale))
                .collect();
            let got = product_map(&from_roots(&r), d1, &from_roots(&s), d2, p, k).unwrap();
            assert_eq!(
                got,
                from_roots(&expected),
                "degrees ({n1}, {n2}), weights ({d1}, {d2})"
            );
        }
    }
}

/// Roots `z1 w1, z1 w2, z2 w1, z2 w2` of `T^2 - aT + b` and `T^2 - cT + d`.
#[test]
fn product_of_quadratics() {
    for (a, b, c, d) in [
        (1i64, 7, -3, 7),
        (4, 49, 0, 49),
        (-5, 7, 2, 7),
        (3, 2, 5, 11),
    ] {
        let f = RatPoly::from_ints(&[b, -a, 1]);
        let g = RatPoly::from_ints(&[d, -c, 1]);
        let expected = RatPoly::from_ints(&[
            b * b * d * d,
            -a * b * c * d,
            a * a * d + c * c * b - 2 * b * d,
            -a * c,
            1,
        ]);
        assert_eq!(product_map(&f, 0, &g, 0, 7, 1).unwrap(), expected);
    }
}

#[test]
fn resultant_from_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..40 {
        let n = rng.gen_range(1..=5);
        let roots = random_roots(&mut rng, n);
        let f = from_roots(&roots);
        let g = RatPoly::from_coeffs(
            (0..rng.gen_range(1..=6))
                .map(|_| frac(rng.gen_range(-9..=9), 2))
                .collect(),
        );
        if g.is_zero() {
            continue;
        }
        let expected: BigRational = roots.iter().map(|r| g.eval(r)).product();
        assert_eq!(resultant(&f, &g).unwrap(), expected);
    }
}

#[test]
fn elementary_symmetric_from_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..40 {
        let n = rng.gen_range(1..=7);
        let roots = random_roots(&mut rng, n);
        let ps: Vec<BigRational> = (1..=n as i64)
            .map(|m| roots.iter().map(|r| rat_pow(r, m)).sum())
            .collect();
        let e = elementary_from_power_sums(&ps, n);
        let f = from_roots(&roots);
        for (r, er) in e.iter().enumerate().take(n + 1) {
            let sign = if r % 2 == 0 { rat(1) } else { rat(-1) };
            assert_eq!(er * sign, f.coeff(n - r));
        }
    }
}

type IntPoly = Vec<i64>;

fn int_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a monic polynomial.
fn int_div(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut rem = a.clone();
    let (n, m) = (a.len() - 1, b.len() - 1);
    let mut q = vec![0; n - m + 1];
    for i in (0..=n - m).rev() {
        let c = rem[i + m];
        q[i] = c;
        for j in 0..=m {
            rem[i + j] -= c * b[j];
        }
    }
    assert!(rem.iter().all(|&x| x == 0));
    q
}

fn mobius(n: u64) -> i64 {
    let (mut n, mut mu, mut d) = (n, 1, 2);
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            mu = -mu;
        }
        d += 1;
    }
    if n > 1 {
        -mu
    } else {
        mu
    }
}

/// `prod_{d | n} (T^d - 1)^mu(n/d)`.
fn mobius_cyclotomic(n: u64) -> IntPoly {
    let x_minus = |d: u64| {
        let mut p = vec![0; d as usize + 1];
        p[0] = -1;
        p[d as usize] = 1;
        p
    };
    let divs: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    let mut num = vec![1];
    let mut den = vec![1];
    for &d in &divs {
        match mobius(n / d) {
            1 => num = int_mul(&num, &x_minus(d)),
            -1 => den = int_mul(&den, &x_minus(d)),
            _ => {}
        }
    }
    int_div(&num, &den)
}

#[test]
fn cyclotomic_by_mobius() {
    for n in 1..=150u64 {
        let c = mobius_cyclotomic(n);
        assert_eq!(cyclotomic(n).unwrap(), RatPoly::from_ints(&c), "n = {n}");
        let at: i64 = c
            .iter()
            .enumerate()
            .map(|(i, x)| if i % 2 == 0 { *x } else { -x })
            .sum();
        assert_eq!(cyclotomic_minus_one(n).unwrap(), at, "n = {n}");
    }
}

fn isqrt(n: u128) -> u128 {
    let mut r = (n as f64).sqrt() as u128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Least `y > 0` with `x^2 - disc y^2 = ±4`: the fundamental unit `(x + y sqrt disc) / 2`.
fn pell_search(disc: u128) -> Option<(u128, u128, i64)> {
    for y in 1..200_000u128 {
        let t = disc * y * y;
        for (target, norm) in [(t - 4, -1), (t + 4, 1)] {
            let x = isqrt(target);
            if x * x == target {
                return Some((x, y, norm));
            }
        }
    }
    None
}

#[test]
fn quadratic_units_by_search() {
    for d in 2..=80u64 {
        let Ok(r) = quadratic_unit_demo(d) else {
            continue;
        };
        let disc = if d % 4 == 1 { d } else { 4 * d } as u128;
        let (x, y, norm) = pell_search(disc).expect("unit within search range");
        assert_eq!(r.fundamental_norm, norm, "D = {d}");
        // (x + y sqrt disc) / 2 written as (a + b sqrt d) / 2
        let (mut a, mut b) = (
            BigInt::from(x),
            BigInt::from(if disc == d as u128 { y } else { 2 * y }),
        );
        if norm == -1 {
            let a2 = (&a * &a + BigInt::from(d) * &b * &b) / 2;
            b = &a * &b;
            a = a2;
        }
        assert_eq!((r.a.clone(), r.b.clone()), (a, b), "D = {d}");
        assert_eq!(r.value, BigInt::from(2) - &r.trace);
    }
}

fn minors(m: &[Vec<i64>], k: usize) -> Vec<BigInt> {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        (k - 1..n)
            .flat_map(|last| {
                subsets(last, k - 1).into_iter().map(move |mut s| {
                    s.push(last);
                    s
                })
            })
            .collect()
    }
    let n = m.len();
    let mut out = Vec::new();
    for rows in subsets(n, k) {
        for cols in subsets(m[0].len(), k) {
            out.push(leibniz(
                &rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| BigInt::from(m[i][j])).collect())
                    .collect::<Vec<Vec<_>>>(),
            ));
        }
    }
    out
}

fn leibniz(m: &[Vec<BigInt>]) -> BigInt {
    fn perms(n: usize) -> Vec<(Vec<usize>, i64)> {
        if n == 0 {
            return vec![(vec![], 1)];
        }
        let mut out = Vec::new();
        for (p, s) in perms(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                let sign = if (n - 1 - pos) % 2 == 0 { s } else { -s };
                out.push((q, sign));
            }
        }
        out
    }
    perms(m.len())
        .into_iter()
        .map(|(p, s)| {
            p.iter()
                .enumerate()
                .fold(BigInt::from(s), |acc, (i, &j)| acc * &m[i][j])
        })
        .sum()
}

fn nu(x: &BigInt, p: i64) -> i64 {
    let (mut x, p, mut v) = (x.abs(), BigInt::from(p), 0);
    while x.is_multiple_of(&p) {
        x /= &p;
        v += 1;
    }
    v
}

/// `nu_p(d_k / d_(k-1))` with `d_k` the gcd of the `k x k` minors.
#[test]
fn smith_by_determinantal_divisors() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    while checked < 60 {
        let n = rng.gen_range(2..=4);
        let p = [2i64, 3, 5][rng.gen_range(0..3)];
        let m: Vec<Vec<i64>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| rng.gen_range(-30..=30) * p.pow(rng.gen_range(0..3)))
                    .collect()
            })
            .collect();
        let rm = RatMatrix::from_rows(
            m.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
        .unwrap();
        if rm.det().unwrap().is_zero() {
            continue;
        }
        let d: Vec<i64> = (1..=n)
            .map(|k| {
                nu(
                    &minors(&m, k).iter().fold(BigInt::zero(), |g, x| g.gcd(x)),
                    p,
                )
            })
            .collect();
        let mut expected: Vec<i64> = (0..n)
            .map(|k| d[k] - if k == 0 { 0 } else { d[k - 1] })
            .collect();
        expected.sort_unstable();
        assert_eq!(
            local_smith_lengths(&rm, p as u64).unwrap(),
            expected,
            "{m:?} at {p}"
        );
        // a denominator shifts every divisor
        let scaled = &rm * &RatMatrix::diagonal(&vec![frac(1, p); n]);
        let shifted: Vec<i64> = expected.iter().map(|v| v - 1).collect();
        assert_eq!(local_smith_lengths(&scaled, p as u64).unwrap(), shifted);
        checked += 1;
    }
}

#[test]
fn determinant_by_leibniz() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..50 {
        let n = rng.gen_range(1..=5);
        let rows: Vec<Vec<BigRational>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| frac(rng.gen_range(-9..=9), rng.gen_range(1..=5)))
                    .collect()
            })
            .collect();
        let den: BigInt = rows
            .iter()
            .flatten()
            .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let ints: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| (x * BigRational::from_integer(den.clone())).to_integer())
                    .collect()
            })
            .collect();
        let expected = BigRational::new(leibniz(&ints), num_traits::pow(den, n));
        let m = RatMatrix::from_rows(rows).unwrap();
        assert_eq!(m.det().unwrap(), expected);
        if !expected.is_zero() {
            let inv = m.inverse().unwrap();
            // Cramer: inv[0][0] = minor(0,0) / det
            if n > 1 {
                let minor = RatMatrix::from_rows(
                    (1..n)
                        .map(|i| (1..n).map(|j| m[(i, j)].clone()).collect())
                        .collect(),
                )
                .unwrap();
                assert_eq!(inv[(0, 0)], minor.det().unwrap() / &expected);
            }
        }
    }
}

/// `x + y sqrt 5`.
#[derive(Clone, Debug, PartialEq)]
struct Sqrt5(BigRational, BigRational);

impl Sqrt5 {
    fn mul(&self, o: &Sqrt5) -> Sqrt5 {
        Sqrt5(
            &self.0 * &o.0 + rat(5) * &self.1 * &o.1,
            &self.0 * &o.1 + &self.1 * &o.0,
        )
    }

    fn add(&self, o: &Sqrt5) -> Sqrt5 {
        Sqrt5(&self.0 + &o.0, &self.1 + &o.1)
    }
}

/// `Res(T^2 - 3T + 1, T^2 + T + 1) = g(a1) g(a2)` with `a = (3 ± sqrt 5) / 2`.
#[test]
fn resultant_over_sqrt5() {
    let g = |a: &Sqrt5| a.mul(a).add(a).add(&Sqrt5(rat(1), rat(0)));
    let a1 = Sqrt5(frac(3, 2), frac(1, 2));
    let a2 = Sqrt5(frac(3, 2), frac(-1, 2));
    let v = g(&a1).mul(&g(&a2));
    assert_eq!(v, Sqrt5(rat(16), rat(0)));
    let f = RatPoly::from_ints(&[1, -3, 1]);
    let gp = RatPoly::from_ints(&[1, 1, 1]);
    assert_eq!(resultant(&f, &gp).unwrap(), v.0);
}
