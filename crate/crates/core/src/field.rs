//! Finite fields GF(p^m) in polynomial basis, built deterministically.
//!
//! A field is constructed from (p, m) alone: the modulus is the
//! lexicographically smallest monic irreducible of degree m over GF(p) with
//! nonzero constant term (so the class g of the variable is always a unit),
//! coefficient vectors compared low degree first. The same (p, m) therefore
//! names the same field in every run, and a process-wide registry hands out a
//! single shared context per (p, m).
//!
//! Elements are coefficient vectors of length m. All orderings used for
//! reported data (root lists, element enumeration) are the lexicographic
//! order on those vectors.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith;
use crate::error::{Error, Result};
use crate::unipoly;

pub use crate::unipoly::poly_roots;

// --- dense polynomials over Z/p with raw u64 coefficients ---------------
//
// Little-endian, trimmed (zero polynomial = empty vector). Only what the
// modulus search and element arithmetic need.

pub(crate) mod zp {
    pub fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    pub fn inv_u64(a: u64, p: u64) -> u64 {
        // Fermat: a^(p-2) mod p, p prime, a != 0 mod p.
        crate::arith::powmod(a, p - 2, p)
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + ai * bj) % p;
            }
        }
        trim(out)
    }

    /// Remainder of a modulo a monic divisor d.
    pub fn rem_monic(a: &[u64], d: &[u64], p: u64) -> Vec<u64> {
        debug_assert_eq!(*d.last().unwrap(), 1);
        let mut r: Vec<u64> = a.to_vec();
        let dd = d.len() - 1;
        while r.len() > dd {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dd;
            if lead != 0 {
                for (j, &dj) in d.iter().enumerate().take(dd) {
                    let idx = shift + j;
                    r[idx] = (r[idx] + (p - dj % p) % p * lead) % p;
                }
            }
            r.pop();
        }
        trim(r)
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0u64; a.len().max(b.len())];
        for (i, o) in out.iter_mut().enumerate() {
            let ai = a.get(i).copied().unwrap_or(0);
            let bi = b.get(i).copied().unwrap_or(0);
            *o = (ai + p - bi) % p;
        }
        trim(out)
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let lead = inv_u64(*b.last().unwrap(), p);
            let monic: Vec<u64> = b.iter().map(|&c| c * lead % p).collect();
            let r = rem_monic(&a, &monic, p);
            a = b;
            b = r;
        }
        if let Some(&l) = a.last() {
            let li = inv_u64(l, p);
            a.iter().map(|&c| c * li % p).collect()
        } else {
            a
        }
    }

    /// base^(p) mod m for monic m: one Frobenius step.
    pub fn pow_p_mod(base: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut acc: Vec<u64> = vec![1];
        let mut sq = base.to_vec();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = rem_monic(&mul(&acc, &sq, p), m, p);
            }
            e >>= 1;
            if e > 0 {
                sq = rem_monic(&mul(&sq, &sq, p), m, p);
            }
        }
        acc
    }

    /// Extended gcd over GF(p)[x]: returns (g, s) with s*a = g mod m, g the
    /// monic gcd of a and m. Used for inversion: g = 1 when a is a unit.
    pub fn invert_mod(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
        let (mut r0, mut r1) = (trim(m.to_vec()), trim(a.to_vec()));
        let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            // divide r0 by r1
            let lead = inv_u64(*r1.last().unwrap(), p);
            let mut r = r0.clone();
            let mut q = vec![0u64; r.len().saturating_sub(r1.len()) + 1];
            while r.len() >= r1.len() && !r.is_empty() {
                let c = *r.last().unwrap() * lead % p;
                let shift = r.len() - r1.len();
                if c != 0 {
                    q[shift] = c;
                    for (j, &dj) in r1.iter().enumerate() {
                        let idx = shift + j;
                        r[idx] = (r[idx] + p - dj * c % p) % p;
                    }
                }
                r = trim(r);
                if r.len() < r1.len() {
                    break;
                }
            }
            let q = trim(q);
            // (r0, r1) <- (r1, r0 - q r1); (s0, s1) likewise
            let new_r = r;
            let new_s = sub(&s0, &mul(&q, &s1, p), p);
            r0 = std::mem::replace(&mut r1, new_r);
            s0 = std::mem::replace(&mut s1, new_s);
        }
        if r0.len() != 1 {
            return None; // gcd not constant: a not invertible mod m
        }
        let li = inv_u64(r0[0], p);
        Some(trim(s0.iter().map(|&c| c * li % p).collect()))
    }

}

// --- field contexts ------------------------------------------------------

struct FieldInner {
    p: u64,
    m: u32,
    /// Monic modulus of degree m, little-endian, length m + 1.
    modulus: Vec<u64>,
    /// Cached factorization of p^m - 1 (or the error hit computing it).
    order_factors: OnceLock<Result<Vec<(u128, u32)>>>,
    /// Image of this field's generator inside larger fields, keyed by the
    /// target degree.
    embeddings: Mutex<HashMap<u32, Vec<u64>>>,
}

/// Shared handle to a finite-field context GF(p^m).
#[derive(Clone)]
pub struct Field {
    inner: Arc<FieldInner>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.m == other.inner.m)
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.m == 1 {
            write!(f, "GF({})", self.inner.p)
        } else {
            write!(f, "GF({}^{})", self.inner.p, self.inner.m)
        }
    }
}

fn registry() -> &'static Mutex<HashMap<(u64, u32), Field>> {
    static REG: OnceLock<Mutex<HashMap<(u64, u32), Field>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Field {
    /// Build GF(p^m). Deterministic: the modulus is the lexicographically
    /// smallest monic irreducible of degree m with nonzero constant term
    /// (coefficients compared low degree first), so repeated calls agree and
    /// the context is shared process-wide.
    pub fn new(p: u64, m: u32) -> Result<Field> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        if m > 4096 {
            return Err(Error::FieldTooLarge { p, m });
        }
        if let Some(f) = registry().lock().unwrap().get(&(p, m)) {
            return Ok(f.clone());
        }
        let modulus = smallest_irreducible(p, m).ok_or(Error::FieldTooLarge { p, m })?;
        let field = Field {
            inner: Arc::new(FieldInner {
                p,
                m,
                modulus,
                order_factors: OnceLock::new(),
                embeddings: Mutex::new(HashMap::new()),
            }),
        };
        let mut reg = registry().lock().unwrap();
        Ok(reg.entry((p, m)).or_insert(field).clone())
    }

    pub fn characteristic(&self) -> u64 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.m
    }

    /// The monic modulus, little-endian, length m + 1.
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    /// p^m when it fits in 128 bits.
    pub fn order_u128(&self) -> Option<u128> {
        arith::checked_pow_u128(self.inner.p, self.inner.m)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coeffs: vec![0; self.inner.m as usize],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_u64(1)
    }

    /// The class of the variable in GF(p)[x]/(modulus).
    pub fn generator(&self) -> FieldElement {
        let mut coeffs = vec![0; self.inner.m as usize];
        if self.inner.m == 1 {
            // modulus x + c: the class of x is -c.
            coeffs[0] = (self.inner.p - self.inner.modulus[0]) % self.inner.p;
        } else {
            coeffs[1] = 1;
        }
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    /// The constant c mod p.
    pub fn from_u64(&self, c: u64) -> FieldElement {
        let mut coeffs = vec![0; self.inner.m as usize];
        coeffs[0] = c % self.inner.p;
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    /// Element with the given coefficient vector (length at most m, entries
    /// reduced mod p).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.inner.m as usize {
            return Err(Error::DimensionMismatch {
                expected: self.inner.m as usize,
                got: coeffs.len(),
            });
        }
        let mut v = vec![0; self.inner.m as usize];
        for (i, &c) in coeffs.iter().enumerate() {
            v[i] = c % self.inner.p;
        }
        Ok(FieldElement {
            field: self.clone(),
            coeffs: v,
        })
    }

    /// All field elements in lexicographic order of coefficient vectors.
    /// Lazy, so it is also usable as a deterministic candidate stream on
    /// fields too large to exhaust.
    pub fn elements(&self) -> Elements {
        Elements {
            field: self.clone(),
            next: Some(vec![0; self.inner.m as usize]),
        }
    }

    fn factors_of_order(&self) -> Result<Vec<(u128, u32)>> {
        self.inner
            .order_factors
            .get_or_init(|| arith::factor_field_order(self.inner.p, self.inner.m))
            .clone()
    }

    /// All n-th roots of unity, sorted lexicographically. Requires n coprime
    /// to p and n | p^m - 1.
    pub fn roots_of_unity(&self, n: u64) -> Result<Vec<FieldElement>> {
        let zeta = self.primitive_root_of_unity(n)?;
        let mut roots = Vec::with_capacity(n as usize);
        let mut acc = self.one();
        for _ in 0..n {
            roots.push(acc.clone());
            acc = acc.mul(&zeta);
        }
        debug_assert!(acc.is_one());
        roots.sort();
        Ok(roots)
    }

    /// The canonical primitive n-th root of unity: the lexicographically
    /// smallest element of multiplicative order exactly n.
    ///
    /// On fields whose order exceeds 128 bits the root is transported from
    /// the minimal field containing it via the canonical embedding, which is
    /// still deterministic though not necessarily lex-minimal there.
    pub fn primitive_root_of_unity(&self, n: u64) -> Result<FieldElement> {
        let p = self.inner.p;
        if n == 0 || n % p == 0 {
            return Err(Error::BadRootOrder { n, p });
        }
        if n == 1 {
            return Ok(self.one());
        }
        match self.order_u128() {
            Some(q) => {
                if (q - 1) % (n as u128) != 0 {
                    return Err(Error::BadRootOrder { n, p });
                }
                let e = (q - 1) / n as u128;
                // Find any generator of the unique order-n subgroup...
                let mut gen = None;
                for x in self.elements() {
                    if x.is_zero() {
                        continue;
                    }
                    let y = x.pow_u128(e);
                    if order_dividing(&y, n) == Some(n) {
                        gen = Some(y);
                        break;
                    }
                }
                let gen = gen.expect("cyclic group has an order-n subgroup");
                // ...then take the lex-smallest primitive element of it.
                let mut best: Option<FieldElement> = None;
                let mut acc = gen.clone();
                for _ in 0..n {
                    if order_dividing(&acc, n) == Some(n) {
                        match &best {
                            Some(b) if *b <= acc => {}
                            _ => best = Some(acc.clone()),
                        }
                    }
                    acc = acc.mul(&gen);
                }
                Ok(best.unwrap())
            }
            None => {
                let d = arith::order_mod(p % n, n) as u32;
                if self.inner.m % d != 0 {
                    return Err(Error::BadRootOrder { n, p });
                }
                let small = Field::new(p, d)?;
                embed(&small.primitive_root_of_unity(n)?, self)
            }
        }
    }

    /// A GF(p)-basis of the unique subfield GF(p^r), reduced row echelon
    /// against the polynomial basis; r must divide m.
    pub fn subfield_basis(&self, r: u32) -> Result<Vec<FieldElement>> {
        if r == 0 || self.inner.m % r != 0 {
            return Err(Error::FieldMismatch {
                p: self.inner.p,
                ma: r,
                q: self.inner.p,
                mb: self.inner.m,
            });
        }
        let m = self.inner.m as usize;
        let prime = Field::new(self.inner.p, 1)?;
        // Kernel of y -> y^(p^r) - y as a GF(p)-linear map on coefficients.
        let mut cols = Vec::with_capacity(m);
        for j in 0..m {
            let mut e = self.zero();
            e.coeffs[j] = 1;
            let img = e.frobenius_power(r).sub(&e);
            cols.push(img.coeffs);
        }
        let mut mat = crate::linalg::FieldMatrix::zero(&prime, m, m);
        for (j, col) in cols.iter().enumerate() {
            for (i, &c) in col.iter().enumerate() {
                mat.set(i, j, prime.from_u64(c));
            }
        }
        let basis = mat
            .kernel_basis()
            .into_iter()
            .map(|v| {
                let coeffs: Vec<u64> = v.iter().map(|e| e.coeffs[0]).collect();
                self.from_coeffs(&coeffs).unwrap()
            })
            .collect::<Vec<_>>();
        debug_assert_eq!(basis.len(), r as usize);
        Ok(basis)
    }
}

/// Lexicographic enumeration of the elements of a field.
pub struct Elements {
    field: Field,
    next: Option<Vec<u64>>,
}

impl Iterator for Elements {
    type Item = FieldElement;

    fn next(&mut self) -> Option<FieldElement> {
        let cur = self.next.take()?;
        let out = FieldElement {
            field: self.field.clone(),
            coeffs: cur.clone(),
        };
        // Odometer: last coordinate fastest, so vectors come out in
        // ascending lexicographic order.
        let p = self.field.inner.p;
        let mut v = cur;
        for i in (0..v.len()).rev() {
            v[i] += 1;
            if v[i] < p {
                self.next = Some(v);
                return Some(out);
            }
            v[i] = 0;
        }
        // wrapped: enumeration complete
        Some(out)
    }
}

/// Lexicographically smallest monic irreducible of degree m over GF(p) with
/// nonzero constant term, by Rabin's irreducibility test over an ascending
/// candidate odometer.
fn smallest_irreducible(p: u64, m: u32) -> Option<Vec<u64>> {
    let m = m as usize;
    // Digits low[0..m] are the non-leading coefficients; low[0] ranges over
    // 1..p (a zero constant term would make x a factor), the rest over 0..p.
    let mut low = vec![0u64; m];
    low[0] = 1;
    let prime_divs: Vec<u64> = arith::factor(m as u64).keys().copied().collect();
    loop {
        let mut f = low.clone();
        f.push(1);
        if irreducible_monic(&f, p, &prime_divs) {
            return Some(f);
        }
        // Increment: last coordinate fastest (ascending lex with index 0
        // most significant); the constant term never drops back below 1.
        let mut i = m;
        loop {
            if i == 0 {
                return None; // constant term wrapped: candidates exhausted
            }
            i -= 1;
            low[i] += 1;
            if low[i] < p {
                break;
            }
            if i == 0 {
                return None;
            }
            low[i] = 0;
        }
    }
}

fn irreducible_monic(f: &[u64], p: u64, prime_divs_of_m: &[u64]) -> bool {
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    // x^(p^k) mod f for k = 0..m by repeated Frobenius steps.
    let x = vec![0u64, 1];
    let mut w = x.clone();
    let mut powers: HashMap<usize, Vec<u64>> = HashMap::new();
    for k in 1..=m {
        w = zp::pow_p_mod(&w, f, p);
        if prime_divs_of_m.iter().any(|&l| k as u64 * l == m as u64) {
            powers.insert(k, w.clone());
        }
    }
    // Rabin: x^(p^m) = x mod f, and gcd(x^(p^(m/l)) - x, f) = 1 for each
    // prime l | m.
    if zp::sub(&w, &x, p) != Vec::<u64>::new() {
        return false;
    }
    for v in powers.values() {
        let g = zp::gcd(&zp::sub(v, &x, p), f, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

// --- elements -------------------------------------------------------------

/// An element of GF(p^m): a coefficient vector of length m over the
/// polynomial basis 1, g, ..., g^(m-1).
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    coeffs: Vec<u64>,
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let ka = (self.field.inner.p, self.field.inner.m);
        let kb = (other.field.inner.p, other.field.inner.m);
        ka.cmp(&kb).then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        let (a, b) = unify(self, other).expect("field mismatch in add");
        let p = a.field.inner.p;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % p)
            .collect();
        FieldElement {
            field: a.field,
            coeffs,
        }
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FieldElement {
        let p = self.field.inner.p;
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|&c| (p - c) % p).collect(),
        }
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        let (a, b) = unify(self, other).expect("field mismatch in mul");
        let p = a.field.inner.p;
        let prod = zp::mul(&zp::trim(a.coeffs.clone()), &zp::trim(b.coeffs.clone()), p);
        let red = zp::rem_monic(&prod, &a.field.inner.modulus, p);
        let mut coeffs = vec![0; a.field.inner.m as usize];
        coeffs[..red.len()].copy_from_slice(&red);
        FieldElement {
            field: a.field,
            coeffs,
        }
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<FieldElement> {
        let p = self.field.inner.p;
        let a = zp::trim(self.coeffs.clone());
        let s = zp::invert_mod(&a, &self.field.inner.modulus, p).ok_or(Error::ZeroInverse {
            p,
            m: self.field.inner.m,
        })?;
        let mut coeffs = vec![0; self.field.inner.m as usize];
        coeffs[..s.len()].copy_from_slice(&s);
        Ok(FieldElement {
            field: self.field.clone(),
            coeffs,
        })
    }

    /// x^e for signed e; errors only when x = 0 and e < 0.
    pub fn pow(&self, e: i64) -> Result<FieldElement> {
        if e >= 0 {
            Ok(self.pow_u128(e as u128))
        } else {
            Ok(self.inv()?.pow_u128(e.unsigned_abs() as u128))
        }
    }

    pub fn pow_u128(&self, mut e: u128) -> FieldElement {
        let mut acc = self.field.one();
        let mut sq = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    /// x^(p^r): r Frobenius steps over the prime field.
    pub fn frobenius_power(&self, r: u32) -> FieldElement {
        let mut out = self.clone();
        for _ in 0..r {
            out = out.pow_u128(self.field.inner.p as u128);
        }
        out
    }

    /// Smallest r dividing m with x^(p^r) = x: the degree of the subfield
    /// generated by x.
    pub fn min_subfield_degree(&self) -> u32 {
        for r in arith::divisors(self.field.inner.m as u64) {
            if self.frobenius_power(r as u32) == *self {
                return r as u32;
            }
        }
        unreachable!("x^(p^m) = x for every field element")
    }
}

/// The Frobenius x -> x^q for q = p^s a power of the characteristic.
pub fn frobenius(x: &FieldElement, q: u128) -> Result<FieldElement> {
    let s = power_of_char(x.field().characteristic(), q)?;
    Ok(x.frobenius_power(s))
}

/// Writes q = p^s with s >= 1, or errors.
pub(crate) fn power_of_char(p: u64, q: u128) -> Result<u32> {
    let mut s = 0u32;
    let mut v = q;
    while v > 1 && v % p as u128 == 0 {
        v /= p as u128;
        s += 1;
    }
    if v != 1 || s == 0 {
        return Err(Error::NotPowerOfChar { q, p });
    }
    Ok(s)
}

/// Multiplicative order of x in GF(p^m)^x. Errors on zero, and with
/// [`Error::OrderTooLarge`] when p^m - 1 cannot be factored in range.
pub fn multiplicative_order(x: &FieldElement) -> Result<u128> {
    if x.is_zero() {
        return Err(Error::ZeroInverse {
            p: x.field.inner.p,
            m: x.field.inner.m,
        });
    }
    let q = x.field.order_u128().ok_or(Error::OrderTooLarge)?;
    let factors = x.field.factors_of_order()?;
    let mut o = q - 1;
    for &(prime, _) in &factors {
        while o % prime == 0 && x.pow_u128(o / prime).is_one() {
            o /= prime;
        }
    }
    Ok(o)
}

/// Multiplicative order of x when it is known to divide `bound`; None when
/// it does not. Needs only the factorization of `bound`, so it works in
/// fields of arbitrary size.
pub fn order_dividing(x: &FieldElement, bound: u64) -> Option<u64> {
    if x.is_zero() || !x.pow_u128(bound as u128).is_one() {
        return None;
    }
    let mut o = bound;
    for (&prime, _) in &arith::factor(bound) {
        while o % prime == 0 && x.pow_u128((o / prime) as u128).is_one() {
            o /= prime;
        }
    }
    Some(o)
}

/// The field of n-th roots of unity in characteristic p — GF(p^d) for
/// d = ord_n(p) — together with all n roots, sorted lexicographically.
pub fn nth_roots_of_unity(n: u64, p: u64) -> Result<(Field, Vec<FieldElement>)> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 || n % p == 0 {
        return Err(Error::BadRootOrder { n, p });
    }
    let d = if n == 1 {
        1
    } else {
        arith::order_mod(p % n, n) as u32
    };
    let field = Field::new(p, d)?;
    let roots = field.roots_of_unity(n)?;
    Ok((field, roots))
}

/// Trace from GF(q^r) down to GF(q): x + x^q + ... + x^(q^(r-1)).
/// x must live in a field containing GF(q^r) and be fixed by the r-th
/// q-power Frobenius.
pub fn trace_to_subfield(x: &FieldElement, q: u128, r: u32) -> Result<FieldElement> {
    let s = power_of_char(x.field().characteristic(), q)?;
    if r == 0 {
        return Err(Error::NotInSubfield);
    }
    if x.frobenius_power(s * r) != *x {
        return Err(Error::NotInSubfield);
    }
    let mut acc = x.field().zero();
    let mut term = x.clone();
    for _ in 0..r {
        acc = acc.add(&term);
        term = term.frobenius_power(s);
    }
    debug_assert_eq!(acc.frobenius_power(s), acc);
    Ok(acc)
}

/// Canonical embedding GF(p^m) -> GF(p^M) for m | M: the generator maps to
/// the lexicographically smallest root of the source modulus in the target.
///
/// Canonical per (source, target) pair, but *not* transitive across towers:
/// embedding GF(4) into GF(2^12) directly and via GF(2^4) may pick different
/// (conjugate) images. Code that compares values computed along different
/// routes must unify everything into one common field with one-hop
/// embeddings from each value's own field, never through intermediates.
pub fn embed(x: &FieldElement, target: &Field) -> Result<FieldElement> {
    let src = x.field();
    if src == target {
        return Ok(FieldElement {
            field: target.clone(),
            coeffs: x.coeffs.clone(),
        });
    }
    if src.inner.p != target.inner.p || target.inner.m % src.inner.m != 0 {
        return Err(Error::FieldMismatch {
            p: src.inner.p,
            ma: src.inner.m,
            q: target.inner.p,
            mb: target.inner.m,
        });
    }
    let root = {
        let cache = src.inner.embeddings.lock().unwrap();
        cache.get(&target.inner.m).cloned()
    };
    let root = match root {
        Some(r) => FieldElement {
            field: target.clone(),
            coeffs: r,
        },
        None => {
            let coeffs: Vec<FieldElement> = src
                .inner
                .modulus
                .iter()
                .map(|&c| target.from_u64(c))
                .collect();
            let roots = unipoly::poly_roots(&coeffs, target)?;
            let r = roots.into_iter().next().expect("modulus splits in extension");
            src.inner
                .embeddings
                .lock()
                .unwrap()
                .insert(target.inner.m, r.coeffs.clone());
            r
        }
    };
    // Horner evaluation of the coefficient vector at the root.
    let mut acc = target.zero();
    for &c in x.coeffs.iter().rev() {
        acc = acc.mul(&root).add(&target.from_u64(c));
    }
    Ok(acc)
}

/// Moves a and b into their smallest common field, GF(p, lcm(ma, mb)).
/// When the degrees do not nest, both sides take one canonical hop into the
/// compositum. Fields of different characteristic cannot be unified.
pub fn unify(a: &FieldElement, b: &FieldElement) -> Result<(FieldElement, FieldElement)> {
    if a.field() == b.field() {
        return Ok((a.clone(), b.clone()));
    }
    let (pa, ma) = (a.field.inner.p, a.field.inner.m);
    let (pb, mb) = (b.field.inner.p, b.field.inner.m);
    if pa != pb {
        return Err(Error::FieldMismatch {
            p: pa,
            ma,
            q: pb,
            mb,
        });
    }
    if mb % ma == 0 {
        return Ok((embed(a, b.field())?, b.clone()));
    }
    if ma % mb == 0 {
        return Ok((a.clone(), embed(b, a.field())?));
    }
    let l = ma as u64 / arith::gcd_u64(ma as u64, mb as u64) * mb as u64;
    let m = u32::try_from(l).map_err(|_| Error::FieldTooLarge { p: pa, m: u32::MAX })?;
    let target = Field::new(pa, m)?;
    Ok((embed(a, &target)?, embed(b, &target)?))
}

// --- text forms -----------------------------------------------------------

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.inner.m == 1 {
            write!(f, "{}", self.coeffs[0])
        } else {
            write!(f, "[")?;
            for (i, c) in self.coeffs.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, "]")
        }
    }
}

/// Parses a field-element literal: a plain integer (reduced mod p), a
/// coefficient vector `[c0,c1,...]`, or a generator power `g^k`.
pub fn parse_element(field: &Field, s: &str) -> Result<FieldElement> {
    let s = s.trim();
    let err = |msg: &str| Error::Parse {
        file: String::new(),
        line: 0,
        col: 0,
        msg: format!("bad field element {s:?}: {msg}"),
    };
    if let Some(rest) = s.strip_prefix("g^") {
        let k: i64 = rest.parse().map_err(|_| err("exponent is not an integer"))?;
        return field.generator().pow(k);
    }
    if s == "g" {
        return Ok(field.generator());
    }
    if let Some(body) = s.strip_prefix('[') {
        let body = body.strip_suffix(']').ok_or_else(|| err("missing ']'"))?;
        let mut coeffs = Vec::new();
        for part in body.split(',') {
            let c: u64 = part
                .trim()
                .parse()
                .map_err(|_| err("coefficient is not a nonnegative integer"))?;
            coeffs.push(c);
        }
        return field.from_coeffs(&coeffs).map_err(|_| err("too many coefficients"));
    }
    let c: i64 = s.parse().map_err(|_| err("not an integer, vector, or g^k"))?;
    let p = field.characteristic() as i64;
    Ok(field.from_u64(c.rem_euclid(p) as u64))
}
