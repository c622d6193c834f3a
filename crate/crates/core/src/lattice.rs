//! Finite-index sublattices of Z^s and their quotients.
//!
//! A sublattice is held as the column-style Hermite Normal Form of its basis
//! (upper triangular, positive diagonal, entries to the right of each pivot
//! reduced mod the pivot), so equal lattices always present the same data.
//! Smith Normal Form turns the quotient Z^s / Λ' into an explicit product of
//! cyclic groups; the dual subgroup Λ'^⊥ is enumerated as points on the
//! algebraic torus over the field of d-th roots of unity, d the largest
//! invariant factor.

use std::collections::BTreeSet;

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{self, Field, FieldElement};

type Mat = Vec<Vec<i128>>;

fn to_i128(m: &[Vec<i64>]) -> Mat {
    m.iter().map(|r| r.iter().map(|&c| c as i128).collect()).collect()
}

fn to_i64(m: &Mat) -> Result<Vec<Vec<i64>>> {
    m.iter()
        .map(|r| {
            r.iter()
                .map(|&c| i64::try_from(c).map_err(|_| Error::SingularBasis))
                .collect()
        })
        .collect()
}

fn identity(s: usize) -> Mat {
    (0..s)
        .map(|i| (0..s).map(|j| i128::from(i == j)).collect())
        .collect()
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    let mut out = vec![vec![0i128; m]; n];
    for i in 0..n {
        for t in 0..k {
            if a[i][t] == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += a[i][t] * b[t][j];
            }
        }
    }
    out
}

/// Column-style Hermite Normal Form of a square nonsingular matrix whose
/// columns generate the lattice: upper triangular, positive diagonal, and
/// 0 <= h[i][j] < h[i][i] for j > i.
pub fn hermite_normal_form(basis: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let s = basis.len();
    if s == 0 || basis.iter().any(|r| r.len() != s) {
        return Err(Error::SingularBasis);
    }
    let mut m = to_i128(basis);
    // Process rows bottom-up; pivot for row i lands in column i.
    for i in (0..s).rev() {
        loop {
            // Columns 0..=i are the active ones (later columns already hold
            // pivots for lower rows).
            let mut nz: Vec<usize> = (0..=i).filter(|&j| m[i][j] != 0).collect();
            if nz.is_empty() {
                return Err(Error::SingularBasis);
            }
            if nz.len() == 1 {
                let j = nz[0];
                if j != i {
                    for row in m.iter_mut() {
                        row.swap(i, j);
                    }
                }
                break;
            }
            // Reduce all entries by the column with the smallest |entry|.
            nz.sort_by_key(|&j| m[i][j].unsigned_abs());
            let jmin = nz[0];
            let pivot = m[i][jmin];
            for &j in &nz[1..] {
                let q = m[i][j].div_euclid(pivot);
                for row in m.iter_mut() {
                    let sub = q * row[jmin];
                    row[j] -= sub;
                }
            }
        }
        if m[i][i] < 0 {
            for row in m.iter_mut() {
                row[i] = -row[i];
            }
        }
        let d = m[i][i];
        for j in i + 1..s {
            let q = m[i][j].div_euclid(d);
            if q != 0 {
                for row in m.iter_mut() {
                    let sub = q * row[i];
                    row[j] -= sub;
                }
            }
        }
    }
    to_i64(&m)
}

/// Smith Normal Form decomposition U * B * V = D of a square nonsingular
/// integer matrix, with the invariant factors on the diagonal of D in an
/// ascending divisibility chain. U and V are unimodular; U's inverse is
/// carried along exactly.
pub struct SmithDecomposition {
    pub u: Vec<Vec<i64>>,
    pub u_inv: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
    /// Diagonal of D: d_1 | d_2 | ... | d_s, all positive.
    pub factors: Vec<u64>,
}

pub fn smith_normal_form(basis: &[Vec<i64>]) -> Result<SmithDecomposition> {
    let s = basis.len();
    if s == 0 || basis.iter().any(|r| r.len() != s) {
        return Err(Error::SingularBasis);
    }
    let mut b = to_i128(basis);
    let mut u = identity(s);
    let mut u_inv = identity(s);
    let mut v = identity(s);

    // Elementary row ops mirror onto u (same op) and u_inv (inverse op on
    // columns); column ops mirror onto v.
    macro_rules! row_swap {
        ($a:expr, $c:expr) => {{
            let (a, c) = ($a, $c);
            b.swap(a, c);
            u.swap(a, c);
            for row in u_inv.iter_mut() {
                row.swap(a, c);
            }
        }};
    }
    macro_rules! row_add {
        ($dst:expr, $src:expr, $k:expr) => {{
            let (dst, src, k) = ($dst, $src, $k);
            for j in 0..s {
                b[dst][j] += k * b[src][j];
                u[dst][j] += k * u[src][j];
            }
            for row in u_inv.iter_mut() {
                row[src] -= k * row[dst];
            }
        }};
    }
    macro_rules! row_neg {
        ($a:expr) => {{
            let a = $a;
            for j in 0..s {
                b[a][j] = -b[a][j];
                u[a][j] = -u[a][j];
            }
            for row in u_inv.iter_mut() {
                row[a] = -row[a];
            }
        }};
    }
    macro_rules! col_swap {
        ($a:expr, $c:expr) => {{
            let (a, c) = ($a, $c);
            for row in b.iter_mut() {
                row.swap(a, c);
            }
            for row in v.iter_mut() {
                row.swap(a, c);
            }
        }};
    }
    macro_rules! col_add {
        ($dst:expr, $src:expr, $k:expr) => {{
            let (dst, src, k) = ($dst, $src, $k);
            for row in b.iter_mut() {
                let add = k * row[src];
                row[dst] += add;
            }
            for row in v.iter_mut() {
                let add = k * row[src];
                row[dst] += add;
            }
        }};
    }

    for t in 0..s {
        'pivot: loop {
            // Find the entry of smallest absolute value in the trailing
            // submatrix and move it to (t, t).
            let mut best: Option<(usize, usize)> = None;
            for i in t..s {
                for j in t..s {
                    if b[i][j] != 0
                        && best.is_none_or(|(bi, bj)| {
                            b[i][j].unsigned_abs() < b[bi][bj].unsigned_abs()
                        })
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return Err(Error::SingularBasis);
            };
            if bi != t {
                row_swap!(t, bi);
            }
            if bj != t {
                col_swap!(t, bj);
            }
            // Clear row t and column t.
            let mut dirty = false;
            for i in t + 1..s {
                if b[i][t] != 0 {
                    let q = b[i][t].div_euclid(b[t][t]);
                    row_add!(i, t, -q);
                    if b[i][t] != 0 {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..s {
                if b[t][j] != 0 {
                    let q = b[t][j].div_euclid(b[t][t]);
                    col_add!(j, t, -q);
                    if b[t][j] != 0 {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue 'pivot;
            }
            // Divisibility: fold in any entry the pivot does not divide.
            for i in t + 1..s {
                for j in t + 1..s {
                    if b[i][j] % b[t][t] != 0 {
                        row_add!(t, i, 1);
                        continue 'pivot;
                    }
                }
            }
            if b[t][t] < 0 {
                row_neg!(t);
            }
            break;
        }
    }

    let factors: Vec<u64> = (0..s).map(|i| b[i][i] as u64).collect();
    for w in factors.windows(2) {
        debug_assert_eq!(w[1] % w[0], 0, "invariant factors must divide in order");
    }
    debug_assert_eq!(mat_mul(&u, &to_i128(&to_i64(&u_inv)?)), identity(s));
    Ok(SmithDecomposition {
        u: to_i64(&u)?,
        u_inv: to_i64(&u_inv)?,
        v: to_i64(&v)?,
        factors,
    })
}

/// A finite-index sublattice Λ' of Z^s, stored in Hermite Normal Form
/// (columns are generators).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Sublattice {
    rank: usize,
    basis: Vec<Vec<i64>>,
}

impl Sublattice {
    /// Canonicalizes the given square basis (columns generate) via HNF.
    pub fn new(basis: Vec<Vec<i64>>) -> Result<Sublattice> {
        let rank = basis.len();
        let basis = hermite_normal_form(&basis)?;
        Ok(Sublattice { rank, basis })
    }

    /// The sublattice d_1 Z x ... x d_s Z.
    pub fn diagonal(scales: &[u64]) -> Result<Sublattice> {
        let s = scales.len();
        let mut basis = vec![vec![0i64; s]; s];
        for (i, &d) in scales.iter().enumerate() {
            basis[i][i] = i64::try_from(d).map_err(|_| Error::SingularBasis)?;
        }
        Sublattice::new(basis)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The HNF basis matrix; columns are generators.
    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    /// [Z^s : Λ'] = product of the HNF diagonal.
    pub fn index(&self) -> u64 {
        (0..self.rank).map(|i| self.basis[i][i] as u64).product()
    }

    /// gcd(index, p) = 1: the quotient has no p-part, so all its characters
    /// exist in characteristic p.
    pub fn is_p_saturated(&self, p: u64) -> bool {
        arith::gcd_u64(self.index(), p) == 1
    }

    /// Expresses v in the triangular basis by back substitution; None when
    /// v is not a lattice member.
    pub fn coordinates(&self, v: &[i64]) -> Option<Vec<i64>> {
        if v.len() != self.rank {
            return None;
        }
        let mut rest: Vec<i128> = v.iter().map(|&c| c as i128).collect();
        let mut coords = vec![0i64; self.rank];
        for i in (0..self.rank).rev() {
            let d = self.basis[i][i] as i128;
            if rest[i] % d != 0 {
                return None;
            }
            let x = rest[i] / d;
            coords[i] = i64::try_from(x).ok()?;
            for (row, rest_i) in rest.iter_mut().enumerate() {
                *rest_i -= x * self.basis[row][i] as i128;
            }
        }
        rest.iter().all(|&c| c == 0).then_some(coords)
    }

    /// Membership by back substitution against the triangular basis.
    pub fn contains(&self, v: &[i64]) -> bool {
        self.coordinates(v).is_some()
    }

    /// The unique representative of v's coset inside the fundamental box
    /// of the triangular basis (coordinate i reduced into [0, basis[i][i])).
    pub fn canonical_residue(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.rank, "vector length mismatch");
        let mut rest: Vec<i128> = v.iter().map(|&c| c as i128).collect();
        for i in (0..self.rank).rev() {
            let d = self.basis[i][i] as i128;
            let q = rest[i].div_euclid(d);
            for (row, rest_i) in rest.iter_mut().enumerate() {
                *rest_i -= q * self.basis[row][i] as i128;
            }
        }
        rest.into_iter()
            .map(|c| i64::try_from(c).expect("residue fits"))
            .collect()
    }

    /// Applies an integer matrix to every generator: the sublattice M * Λ'.
    pub fn transformed(&self, m: &[Vec<i64>]) -> Result<Sublattice> {
        let prod = mat_mul(&to_i128(m), &to_i128(&self.basis));
        Sublattice::new(to_i64(&prod)?)
    }
}

/// Smith-form presentation of a quotient Z^s / Λ': the projection onto
/// a product of cyclic groups and the exact section back.
#[derive(Clone, Debug)]
pub struct QuotientData {
    sublattice: Sublattice,
    index: u64,
    factors: Vec<u64>,
    u: Vec<Vec<i64>>,
    u_inv: Vec<Vec<i64>>,
}

impl PartialEq for QuotientData {
    fn eq(&self, other: &Self) -> bool {
        self.sublattice == other.sublattice
    }
}
impl Eq for QuotientData {}

impl QuotientData {
    pub fn new(sublattice: Sublattice) -> Result<QuotientData> {
        let snf = smith_normal_form(sublattice.basis())?;
        let index = snf.factors.iter().product();
        Ok(QuotientData {
            sublattice,
            index,
            factors: snf.factors,
            u: snf.u,
            u_inv: snf.u_inv,
        })
    }

    pub fn sublattice(&self) -> &Sublattice {
        &self.sublattice
    }

    pub fn rank(&self) -> usize {
        self.sublattice.rank()
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    /// Invariant factors d_1 | ... | d_s (ascending, possibly leading 1s).
    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    /// The class of λ as a tuple in prod Z/d_i: (U λ) mod d.
    pub fn project(&self, lam: &[i64]) -> Vec<u64> {
        assert_eq!(lam.len(), self.rank());
        self.u
            .iter()
            .zip(&self.factors)
            .map(|(row, &d)| {
                let dot: i128 = row.iter().zip(lam).map(|(&a, &b)| a as i128 * b as i128).sum();
                dot.rem_euclid(d as i128) as u64
            })
            .collect()
    }

    /// A representative of the class with the given tuple: U^(-1) * tuple.
    pub fn lift(&self, tuple: &[u64]) -> Vec<i64> {
        assert_eq!(tuple.len(), self.rank());
        self.u_inv
            .iter()
            .map(|row| {
                let dot: i128 = row
                    .iter()
                    .zip(tuple)
                    .map(|(&a, &b)| a as i128 * b as i128)
                    .sum();
                i64::try_from(dot).expect("lift stays in range at desk scale")
            })
            .collect()
    }

    /// All group elements as tuples, ascending lexicographic order.
    pub fn group_elements(&self) -> Vec<Vec<u64>> {
        let mut out = Vec::with_capacity(self.index as usize);
        let mut cur = vec![0u64; self.factors.len()];
        loop {
            out.push(cur.clone());
            // last coordinate fastest => ascending lex
            let mut i = self.factors.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < self.factors[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }
}

/// A point of the algebraic torus (k^x)^s with coordinates of finite
/// multiplicative order: a character of some lattice quotient via
/// λ -> z^λ = prod z_i^(λ_i).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct TorusPoint {
    coords: Vec<FieldElement>,
    order: u128,
}

impl TorusPoint {
    /// Builds a point from nonzero coordinates; computes the exact order
    /// (lcm of coordinate orders), which must be within factoring range.
    pub fn new(coords: Vec<FieldElement>) -> Result<TorusPoint> {
        if coords.iter().any(FieldElement::is_zero) {
            return Err(Error::ZeroCoordinate);
        }
        let mut order = 1u128;
        for c in &coords {
            let o = field::multiplicative_order(c)?;
            order = order / gcd_u128(order, o) * o;
        }
        Ok(TorusPoint { coords, order })
    }

    /// Builds a point whose order is known to divide `bound`.
    pub fn with_order_bound(coords: Vec<FieldElement>, bound: u64) -> Result<TorusPoint> {
        if coords.iter().any(FieldElement::is_zero) {
            return Err(Error::ZeroCoordinate);
        }
        let mut order = 1u64;
        for c in &coords {
            let o = field::order_dividing(c, bound).ok_or(Error::ZeroCoordinate)?;
            order = arith::lcm_u64(order, o);
        }
        Ok(TorusPoint {
            coords,
            order: order as u128,
        })
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn field(&self) -> &Field {
        self.coords[0].field()
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(FieldElement::is_one)
    }

    pub fn inverse(&self) -> TorusPoint {
        TorusPoint {
            coords: self.coords.iter().map(|c| c.inv().unwrap()).collect(),
            order: self.order,
        }
    }

    pub fn mul(&self, other: &TorusPoint) -> Result<TorusPoint> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                got: other.rank(),
            });
        }
        let coords: Vec<FieldElement> = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.mul(b))
            .collect();
        let bound = self.order.checked_mul(other.order).ok_or(Error::OrderTooLarge)?;
        let bound = u64::try_from(bound).map_err(|_| Error::OrderTooLarge)?;
        TorusPoint::with_order_bound(coords, bound)
    }

    /// Coordinatewise q-power Frobenius.
    pub fn frobenius(&self, q: u128) -> Result<TorusPoint> {
        let coords = self
            .coords
            .iter()
            .map(|c| field::frobenius(c, q))
            .collect::<Result<Vec<_>>>()?;
        Ok(TorusPoint {
            coords,
            order: self.order,
        })
    }

    pub fn embed_into(&self, target: &Field) -> Result<TorusPoint> {
        let coords = self
            .coords
            .iter()
            .map(|c| field::embed(c, target))
            .collect::<Result<Vec<_>>>()?;
        Ok(TorusPoint {
            coords,
            order: self.order,
        })
    }

    /// z^λ with signed exponents.
    pub fn evaluate(&self, lam: &[i64]) -> FieldElement {
        assert_eq!(lam.len(), self.rank());
        let mut acc = self.field().one();
        for (c, &e) in self.coords.iter().zip(lam) {
            acc = acc.mul(&c.pow(e).expect("coordinates are units"));
        }
        acc
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// The character z^λ evaluated at λ (nothing more than
/// [`TorusPoint::evaluate`], named for readability at call sites).
pub fn evaluate_character(z: &TorusPoint, lam: &[i64]) -> FieldElement {
    z.evaluate(lam)
}

/// The dual subgroup Λ'^⊥: every character of Z^s / Λ', realized as torus
/// points over GF(p^d) with d = ord_d'(p), d' = lcm of the invariant
/// factors. Requires Λ' p-saturated; the result is duplicate-free, in the
/// lexicographic order of SNF index tuples, identity first.
pub fn dual_subgroup(sub: &Sublattice, p: u64) -> Result<Vec<TorusPoint>> {
    dual_of_quotient(&QuotientData::new(sub.clone())?, p)
}

pub(crate) fn dual_of_quotient(q: &QuotientData, p: u64) -> Result<Vec<TorusPoint>> {
    if !q.sublattice().is_p_saturated(p) {
        return Err(Error::NotPSaturated {
            index: q.index(),
            p,
        });
    }
    let s = q.rank();
    let d = q.factors().iter().fold(1u64, |acc, &f| arith::lcm_u64(acc, f));
    let deg = if d == 1 {
        1
    } else {
        arith::order_mod(p % d, d) as u32
    };
    let fld = Field::new(p, deg)?;
    let zetas: Vec<FieldElement> = q
        .factors()
        .iter()
        .map(|&di| fld.primitive_root_of_unity(di))
        .collect::<Result<_>>()?;

    let mut points = Vec::with_capacity(q.index() as usize);
    for tuple in q.group_elements() {
        // z_t = prod_i zeta_{d_i}^{j_i * U[i][t]}: the character indexed by
        // the tuple, transported through the Smith transform U so that it
        // is trivial exactly on Λ'.
        let mut coords = vec![fld.one(); s];
        for (i, (&ji, zeta)) in tuple.iter().zip(&zetas).enumerate() {
            let di = q.factors()[i];
            if di == 1 || ji == 0 {
                continue;
            }
            for (t, coord) in coords.iter_mut().enumerate() {
                let e = (ji as i128 * q.u[i][t] as i128).rem_euclid(di as i128) as u64;
                if e != 0 {
                    *coord = coord.mul(&zeta.pow_u128(e as u128));
                }
            }
        }
        points.push(TorusPoint::with_order_bound(coords, d)?);
    }
    // Characters are trivial on the sublattice and pairwise distinct.
    debug_assert!({
        let cols: Vec<Vec<i64>> = (0..s)
            .map(|j| (0..s).map(|i| q.sublattice().basis()[i][j]).collect())
            .collect();
        points
            .iter()
            .all(|z| cols.iter().all(|c| z.evaluate(c).is_one()))
    });
    debug_assert_eq!(
        points.iter().collect::<BTreeSet<_>>().len(),
        points.len(),
        "characters must be pairwise distinct"
    );
    Ok(points)
}
