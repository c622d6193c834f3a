//! Small-integer number theory: deterministic primality, factoring, and the
//! cyclotomic splitting of field orders p^m - 1 used for multiplicative-order
//! computations.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    gcd_u64(a.unsigned_abs(), b.unsigned_abs()) as i64
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd_u64(a, b) * b
    }
}

pub fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub fn powmod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, n);
        }
        base = mulmod(base, base, n);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64 (the standard seven-base certificate).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u64, 325, 9375, 28178, 450775, 9780504, 1795265022] {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// One nontrivial factor of a composite n, by Brent's cycle variant of
/// Pollard rho with deterministic restarts.
fn pollard_brent(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mulmod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        let mut count = 0u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
            count += 1;
            if count > 1 << 22 {
                break;
            }
        }
        if d != n && d != 1 {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization of n > 0 as prime -> exponent.
pub fn factor(n: u64) -> BTreeMap<u64, u32> {
    let mut out = BTreeMap::new();
    let mut stack = vec![n];
    while let Some(mut v) = stack.pop() {
        if v <= 1 {
            continue;
        }
        for p in [2u64, 3, 5, 7, 11, 13] {
            while v % p == 0 {
                *out.entry(p).or_insert(0) += 1;
                v /= p;
            }
        }
        if v == 1 {
            continue;
        }
        if is_prime(v) {
            *out.entry(v).or_insert(0) += 1;
        } else {
            let d = pollard_brent(v);
            stack.push(d);
            stack.push(v / d);
        }
    }
    out
}

/// All divisors of n in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (&p, &e) in &factor(n) {
        let prev = divs.clone();
        let mut pe = 1u64;
        for _ in 0..e {
            pe *= p;
            divs.extend(prev.iter().map(|d| d * pe));
        }
    }
    divs.sort_unstable();
    divs
}

/// Multiplicative order of a modulo n (requires gcd(a, n) = 1, n >= 1).
pub fn order_mod(a: u64, n: u64) -> u64 {
    assert!(n >= 1 && gcd_u64(a % n.max(1), n) == 1 || n == 1);
    if n == 1 {
        return 1;
    }
    let mut x = a % n;
    let mut t = 1u64;
    while x != 1 {
        x = mulmod(x, a, n);
        t += 1;
    }
    t
}

/// p^m as u128, or None on overflow.
pub fn checked_pow_u128(p: u64, m: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..m {
        acc = acc.checked_mul(p as u128)?;
    }
    Some(acc)
}

/// The value of the d-th cyclotomic polynomial at p, computed exactly by the
/// divisor recursion p^d - 1 = prod_{e | d} Phi_e(p).
fn cyclotomic_value(d: u64, p: u64, cache: &mut BTreeMap<u64, u128>) -> Option<u128> {
    if let Some(&v) = cache.get(&d) {
        return Some(v);
    }
    let mut num = checked_pow_u128(p, d as u32)?.checked_sub(1)?;
    for e in divisors(d) {
        if e < d {
            let phi = cyclotomic_value(e, p, cache)?;
            debug_assert_eq!(num % phi, 0);
            num /= phi;
        }
    }
    cache.insert(d, num);
    Some(num)
}

/// Prime factorization of p^m - 1, split through cyclotomic values so each
/// piece fits the 64-bit factoring range. Errors with [`Error::OrderTooLarge`]
/// when some cyclotomic value Phi_d(p) exceeds u64.
pub fn factor_field_order(p: u64, m: u32) -> Result<Vec<(u128, u32)>> {
    let mut cache = BTreeMap::new();
    let mut merged: BTreeMap<u128, u32> = BTreeMap::new();
    for d in divisors(m as u64) {
        let phi = cyclotomic_value(d, p, &mut cache).ok_or(Error::OrderTooLarge)?;
        if phi > u64::MAX as u128 {
            return Err(Error::OrderTooLarge);
        }
        for (&q, &e) in &factor(phi as u64) {
            *merged.entry(q as u128).or_insert(0) += e;
        }
    }
    Ok(merged.into_iter().collect())
}
