use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 1_000_000;

/// Witnesses that make Miller-Rabin deterministic below 3.3 * 10^24.
const MR_WITNESSES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Prime factorization of `|n|`. The sign is left to the caller.
///
/// Trial division up to 10^6, then Pollard rho (Brent's variant) on the
/// cofactor with Miller-Rabin primality.
pub fn factor_integer(n: &BigInt) -> Result<BTreeMap<BigUint, u32>> {
    if n.is_zero() {
        return Err(Error::FactorZero);
    }
    let mut out = BTreeMap::new();
    let mut m = n.magnitude().clone();
    if let Some(small) = m.to_u64() {
        for (p, e) in factor_u64_full(small) {
            out.insert(BigUint::from(p), e);
        }
        return Ok(out);
    }
    let mut d = 2u64;
    while d <= TRIAL_LIMIT {
        let db = BigUint::from(d);
        if &db * &db > m {
            break;
        }
        let mut e = 0;
        while (&m % d).is_zero() {
            m /= d;
            e += 1;
        }
        if e > 0 {
            out.insert(db, e);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !m.is_one() {
        let mut stack = vec![m];
        while let Some(c) = stack.pop() {
            if c.is_one() {
                continue;
            }
            if is_prime(&c) {
                *out.entry(c).or_insert(0) += 1;
                continue;
            }
            let f = pollard_brent(&c);
            let other = &c / &f;
            stack.push(f);
            stack.push(other);
        }
    }
    Ok(out)
}

/// Squarefree part of a nonzero integer, sign preserved.
pub fn squarefree_part(n: &BigInt) -> Result<BigInt> {
    let fac = factor_integer(n)?;
    let mut s = BigInt::one();
    for (p, e) in fac {
        if e % 2 == 1 {
            s *= BigInt::from(p);
        }
    }
    if n.sign() == Sign::Minus {
        s = -s;
    }
    Ok(s)
}

/// Miller-Rabin with the fixed witness set; exact below 3.3 * 10^24.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    for &w in &MR_WITNESSES {
        if (n % w).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'witness: for &w in &MR_WITNESSES {
        let mut x = BigUint::from(w).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &w in &MR_WITNESSES {
        if n == w {
            return true;
        }
        if n % w == 0 {
            return false;
        }
    }
    let nm1 = n - 1;
    let s = nm1.trailing_zeros();
    let d = nm1 >> s;
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    'witness: for &w in &MR_WITNESSES[..12] {
        let mut x = powmod(w, d);
        if x == 1 || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn factor_u64_full(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: BTreeMap<u64, u32> = BTreeMap::new();
    let mut d = 2u64;
    while d <= TRIAL_LIMIT && d * d <= n {
        while n % d == 0 {
            n /= d;
            *out.entry(d).or_insert(0) += 1;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        let mut stack = vec![n];
        while let Some(c) = stack.pop() {
            if c == 1 {
                continue;
            }
            if is_prime_u64(c) {
                *out.entry(c).or_insert(0) += 1;
                continue;
            }
            let f = pollard_brent(&BigUint::from(c))
                .to_u64()
                .expect("factor fits");
            stack.push(f);
            stack.push(c / f);
        }
    }
    out.into_iter().collect()
}

/// A nontrivial factor of a composite odd `n`.
fn pollard_brent(n: &BigUint) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let one = BigUint::one();
    let mut c = 1u64;
    loop {
        let cb = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &cb) % n;
        let mut y = BigUint::from(2u32);
        let mut r = 1u64;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        const M: u64 = 128;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..M.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += M;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1;
    }
}
