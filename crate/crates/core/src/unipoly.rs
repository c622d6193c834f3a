//! Dense univariate polynomials over a finite field, and exact root-finding.
//!
//! Root-finding scans the field when it is small. On larger fields it splits
//! off the GF(q)-rational part with gcd(f, x^q - x) and then separates the
//! linear factors with the usual quadratic-character / trace-map splittings,
//! driven by a deterministic candidate sequence so the output never depends
//! on randomness. Exponents like (q-1)/2 are never materialized: everything
//! is phrased as repeated p-th-power (Frobenius) steps, so fields far beyond
//! 128-bit order still work.

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{embed, Field, FieldElement};

/// Trimmed little-endian coefficient vector; the zero polynomial has no
/// coefficients.
#[derive(Clone, PartialEq, Eq)]
pub(crate) struct UniPoly {
    pub field: Field,
    pub coeffs: Vec<FieldElement>,
}

impl std::fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "UniPoly{:?}", self.coeffs)
    }
}

impl UniPoly {
    pub fn new(field: &Field, mut coeffs: Vec<FieldElement>) -> UniPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Field) -> UniPoly {
        UniPoly::new(field, Vec::new())
    }

    pub fn one(field: &Field) -> UniPoly {
        UniPoly::new(field, vec![field.one()])
    }

    pub fn x(field: &Field) -> UniPoly {
        UniPoly::new(field, vec![field.zero(), field.one()])
    }

    pub fn constant(c: FieldElement) -> UniPoly {
        let field = c.field().clone();
        UniPoly::new(&field, vec![c])
    }

    /// x - r
    pub fn linear_root(r: &FieldElement) -> UniPoly {
        UniPoly::new(r.field(), vec![r.neg(), r.field().one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; None for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect();
        UniPoly::new(&self.field, coeffs)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).sub(&other.coeff(i))).collect();
        UniPoly::new(&self.field, coeffs)
    }

    pub fn scale(&self, c: &FieldElement) -> UniPoly {
        UniPoly::new(&self.field, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        UniPoly::new(&self.field, out)
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.deg().expect("division by zero polynomial");
        let lead_inv = d.leading().unwrap().inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let c = rem.last().unwrap().mul(&lead_inv);
            let shift = rem.len() - 1 - dd;
            if !c.is_zero() {
                quot[shift] = c.clone();
                for (j, dj) in d.coeffs.iter().enumerate().take(dd) {
                    rem[shift + j] = rem[shift + j].sub(&c.mul(dj));
                }
            }
            rem.pop();
        }
        (UniPoly::new(&self.field, quot), UniPoly::new(&self.field, rem))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.divrem(d).1
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// self^e mod m, square and multiply.
    pub fn powmod(&self, mut e: u128, m: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::one(&self.field);
        let mut sq = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq).rem(m);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq).rem(m);
            }
        }
        acc
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = x.field().zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero(&self.field);
        }
        let p = self.field.characteristic();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&self.field.from_u64(i as u64 % p)))
            .collect();
        UniPoly::new(&self.field, coeffs)
    }
}

/// x^(q^steps) mod f where q is the order of f's field: repeated Frobenius.
fn x_power_field_order(f: &UniPoly, steps: u32) -> UniPoly {
    let p = f.field.characteristic() as u128;
    let m = f.field.degree();
    let mut w = UniPoly::x(&f.field).rem(f);
    for _ in 0..steps * m {
        w = w.powmod(p, f);
    }
    w
}

/// All roots of the polynomial with the given coefficients inside `search`,
/// with multiplicity, sorted lexicographically (each root repeated as many
/// times as its multiplicity). The coefficients are embedded into `search`;
/// the zero polynomial is rejected.
pub fn poly_roots(coeffs: &[FieldElement], search: &Field) -> Result<Vec<FieldElement>> {
    let embedded: Vec<FieldElement> = coeffs
        .iter()
        .map(|c| embed(c, search))
        .collect::<Result<_>>()?;
    let f = UniPoly::new(search, embedded);
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.deg() == Some(0) {
        return Ok(Vec::new());
    }
    let distinct = distinct_roots(&f);
    // Multiplicity of each root by repeated deflation of the original.
    let mut out = Vec::new();
    for r in distinct {
        let lin = UniPoly::linear_root(&r);
        let mut g = f.clone();
        loop {
            let (q, rem) = g.divrem(&lin);
            if !rem.is_zero() {
                break;
            }
            out.push(r.clone());
            g = q;
            if g.is_zero() {
                break;
            }
        }
    }
    out.sort();
    Ok(out)
}

const SCAN_LIMIT: u128 = 4096;

fn distinct_roots(f: &UniPoly) -> Vec<FieldElement> {
    if let Some(q) = f.field.order_u128() {
        if q <= SCAN_LIMIT {
            return f
                .field
                .elements()
                .take(q as usize)
                .filter(|x| f.eval(x).is_zero())
                .collect();
        }
    }
    // gcd with x^q - x isolates the rational, squarefree part.
    let monic = f.monic();
    let w = x_power_field_order(&monic, 1);
    let g = w.sub(&UniPoly::x(&f.field).rem(&monic)).gcd(&monic);
    let mut roots = Vec::new();
    let mut stack = vec![g];
    while let Some(h) = stack.pop() {
        match h.deg() {
            None | Some(0) => {}
            Some(1) => {
                // monic x + c: root is -c
                let r = h.coeff(0).neg().mul(&h.leading().unwrap().inv().unwrap());
                roots.push(r);
            }
            _ => {
                let (a, b) = split_equal_degree_one(&h.monic());
                stack.push(a);
                stack.push(b);
            }
        }
    }
    roots.sort();
    roots
}

/// Splits a monic product of at least two distinct linear factors into two
/// proper factors, using a deterministic candidate sequence.
fn split_equal_degree_one(h: &UniPoly) -> (UniPoly, UniPoly) {
    let field = &h.field;
    let p = field.characteristic();
    let m = field.degree();
    for c in field.elements() {
        let probe = if p == 2 {
            // Trace map of c*x: sum of (c x)^(2^i), i < m. Roots split by
            // their absolute trace.
            let mut w = UniPoly::new(field, vec![field.zero(), c.clone()]).rem(h);
            let mut acc = w.clone();
            for _ in 1..m {
                w = w.powmod(2, h);
                acc = acc.add(&w);
            }
            acc
        } else {
            // Quadratic character of x + c, via (x+c)^((q-1)/2) =
            // ((x+c)^(1 + p + ... + p^(m-1)))^((p-1)/2): the inner norm-like
            // power is a product of Frobenius twists, no giant exponent.
            let y = UniPoly::new(field, vec![c.clone(), field.one()]).rem(h);
            let mut acc = y.clone();
            let mut w = y;
            for _ in 1..m {
                w = w.powmod(p as u128, h);
                acc = acc.mul(&w).rem(h);
            }
            let z = acc.powmod(((p - 1) / 2) as u128, h);
            z.sub(&UniPoly::one(field))
        };
        let d = probe.gcd(h);
        if let Some(dd) = d.deg() {
            if dd > 0 && dd < h.deg().unwrap() {
                let (q, r) = h.divrem(&d);
                debug_assert!(r.is_zero());
                return (d, q);
            }
        }
    }
    unreachable!("a separating candidate exists for every squarefree split polynomial")
}

/// The lcm of the degrees of the irreducible factors of f over its own
/// field: the degree of the extension where f splits completely. Runs a
/// distinct-degree sieve on squarefree parts. Factors whose multiplicity is
/// divisible by p survive inside gcd(f, f'), so that cofactor is processed
/// too; a vanishing derivative (f = g(x^p)) defers to g, whose roots are
/// the p-th powers of f's roots and so generate the same extensions.
pub(crate) fn splitting_degree_lcm(f: &UniPoly) -> Result<u32> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let p = f.field.characteristic() as usize;
    let mut total = 1u64;
    let mut work = vec![f.monic()];
    while let Some(mut f) = work.pop() {
        // Strip x -> x^p reindexings while the derivative vanishes.
        while f.deg().unwrap_or(0) > 0 && f.derivative().is_zero() {
            debug_assert!(f
                .coeffs
                .iter()
                .enumerate()
                .all(|(i, c)| i % p == 0 || c.is_zero()));
            let coeffs: Vec<FieldElement> = f.coeffs.iter().step_by(p).cloned().collect();
            f = UniPoly::new(&f.field, coeffs);
        }
        if f.deg().unwrap_or(0) == 0 {
            continue;
        }
        let cofactor = f.gcd(&f.derivative());
        let sf = f.divrem(&cofactor).0.monic();
        if cofactor.deg().unwrap_or(0) > 0 {
            work.push(cofactor); // strictly smaller degree than f
        }
        let n = sf.deg().expect("nonzero derivative leaves a squarefree part");
        let x_mod = UniPoly::x(&f.field).rem(&sf);
        let mut rem = sf.clone();
        let mut w = x_mod.clone();
        for i in 1..=n as u64 {
            if rem.deg() == Some(0) {
                break;
            }
            w = frobenius_step(&w, &sf);
            let g = w.sub(&x_mod).gcd(&rem);
            if g.deg().unwrap_or(0) > 0 {
                total = arith::lcm_u64(total, i);
                rem = rem.divrem(&g).0;
            }
        }
        // anything left is a single irreducible factor of known degree
        if let Some(d) = rem.deg() {
            if d > 0 {
                total = arith::lcm_u64(total, d as u64);
            }
        }
    }
    Ok(total as u32)
}

/// One more q-power Frobenius step: w -> w^q mod f.
fn frobenius_step(w: &UniPoly, f: &UniPoly) -> UniPoly {
    let p = f.field.characteristic() as u128;
    let mut out = w.clone();
    for _ in 0..f.field.degree() {
        out = out.powmod(p, f);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(field: &Field, coeffs: &[i64]) -> UniPoly {
        let p = field.characteristic() as i64;
        UniPoly::new(
            field,
            coeffs
                .iter()
                .map(|&c| field.from_u64(c.rem_euclid(p) as u64))
                .collect(),
        )
    }

    #[test]
    fn roots_of_quadratic_over_gf2_and_gf4() {
        let f2 = Field::new(2, 1).unwrap();
        let f4 = Field::new(2, 2).unwrap();
        // t^2 + t + 1 has no roots over GF(2), both primitive cube roots
        // over GF(4).
        let coeffs = [f2.one(), f2.one(), f2.one()];
        assert!(poly_roots(&coeffs, &f2).unwrap().is_empty());
        let roots = poly_roots(&coeffs, &f4).unwrap();
        let omega = f4.generator();
        assert_eq!(roots, vec![omega.clone(), omega.mul(&omega)]);
    }

    #[test]
    fn multiplicity_is_reported() {
        let f2 = Field::new(2, 1).unwrap();
        // (t - 1)^2 = t^2 + 1 over GF(2)
        let roots = poly_roots(&[f2.one(), f2.zero(), f2.one()], &f2).unwrap();
        assert_eq!(roots, vec![f2.one(), f2.one()]);
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        let f = Field::new(3, 1).unwrap();
        assert_eq!(
            poly_roots(&[f.zero(), f.zero()], &f).unwrap_err(),
            Error::ZeroPolynomial
        );
        // nonzero constants simply have no roots
        assert!(poly_roots(&[f.one()], &f).unwrap().is_empty());
    }

    #[test]
    fn scan_and_algebraic_paths_agree() {
        // GF(2^11) has 2048 elements (scan path), GF(2^13) has 8192
        // (algebraic path). Plant the same shape of polynomial in both and
        // compare against the planted truth.
        for m in [11u32, 13] {
            let field = Field::new(2, m).unwrap();
            let g = field.generator();
            let a = g.pow(7).unwrap();
            let b = g.pow(100).unwrap();
            // f = (x - a)^2 (x - b) * (x^2 + x + gamma) with the quadratic
            // chosen irreducible (gamma outside the image of x^2 + x).
            let mut gamma = None;
            for cand in field.elements().take(1 << m) {
                let mut hit = false;
                // x^2 + x + gamma reducible iff trace(gamma) = 0
                let mut tr = cand.clone();
                let mut w = cand.clone();
                for _ in 1..m {
                    w = w.mul(&w);
                    tr = tr.add(&w);
                }
                if tr.is_one() {
                    hit = true;
                }
                if hit {
                    gamma = Some(cand);
                    break;
                }
            }
            let gamma = gamma.unwrap();
            let quad = UniPoly::new(&field, vec![gamma, field.one(), field.one()]);
            let f = UniPoly::linear_root(&a)
                .mul(&UniPoly::linear_root(&a))
                .mul(&UniPoly::linear_root(&b))
                .mul(&quad);
            let roots = poly_roots(&f.coeffs, &field).unwrap();
            let mut expected = vec![a.clone(), a, b];
            expected.sort();
            assert_eq!(roots, expected, "m = {m}");
        }
    }

    #[test]
    fn splitting_degrees() {
        let f5 = Field::new(5, 1).unwrap();
        // x^2 - 2 is irreducible over GF(5) (2 is not a QR mod 5)
        let f = poly(&f5, &[-2, 0, 1]);
        assert_eq!(splitting_degree_lcm(&f).unwrap(), 2);
        // (x^2 - 2)(x^3 + x + 1): the cubic has no root mod 5, so it is
        // irreducible and the product splits in degree lcm(2, 3) = 6
        let cubic = poly(&f5, &[1, 1, 0, 1]);
        assert_eq!(splitting_degree_lcm(&f.mul(&cubic)).unwrap(), 6);
        // a factor with multiplicity divisible by p must still count even
        // when another factor keeps the derivative nonzero
        let mut masked = poly(&f5, &[1, 1]);
        for _ in 0..5 {
            masked = masked.mul(&f);
        }
        assert_eq!(splitting_degree_lcm(&masked).unwrap(), 2);
        // split polynomial
        assert_eq!(splitting_degree_lcm(&poly(&f5, &[1, 1])).unwrap(), 1);
        // vanishing derivative: (x^2 - 2)^5 written as g(x^5)
        let mut pow = UniPoly::one(&f5);
        for _ in 0..5 {
            pow = pow.mul(&f);
        }
        assert_eq!(splitting_degree_lcm(&pow).unwrap(), 2);
    }

    #[test]
    fn roots_found_in_large_embedding_fields() {
        // the modulus of GF(2^6) must have all six conjugate roots in
        // GF(2^36) — exercises the big-field splitting path end to end
        let small = Field::new(2, 6).unwrap();
        let big = Field::new(2, 36).unwrap();
        let coeffs: Vec<FieldElement> = small
            .modulus()
            .iter()
            .map(|&c| small.from_u64(c))
            .collect();
        let roots = poly_roots(&coeffs, &big).unwrap();
        assert_eq!(roots.len(), 6);
        for r in &roots {
            // each root generates a copy of GF(2^6)
            assert_eq!(r.frobenius_power(6), *r);
            assert_ne!(r.frobenius_power(3), *r);
            assert_ne!(r.frobenius_power(2), *r);
        }
    }
}
