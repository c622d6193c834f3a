//! The group algebra k[Z^s] of finitely supported functions under
//! convolution, periodic functions on finite quotients, and the discrete
//! Fourier transform that diagonalizes convolution.
//!
//! A group algebra element doubles as a Laurent polynomial: the "Fourier
//! transform" of a finitely supported function is literally the same data
//! read as a function on the torus, so [`fourier`] is the identity on the
//! representation and [`evaluate_laurent`] is evaluation at a torus point.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{self, Field, FieldElement};
use crate::lattice::{dual_of_quotient, QuotientData, TorusPoint};

/// A finitely supported function Z^s -> k, stored sparsely (nonzero values
/// only). Multiplication is convolution.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupAlgebraElement {
    field: Field,
    rank: usize,
    support: BTreeMap<Vec<i64>, FieldElement>,
}

/// The same data read as a Laurent polynomial on the s-torus.
pub type LaurentPoly = GroupAlgebraElement;

impl GroupAlgebraElement {
    pub fn zero(field: &Field, rank: usize) -> Self {
        GroupAlgebraElement {
            field: field.clone(),
            rank,
            support: BTreeMap::new(),
        }
    }

    /// The delta function at v.
    pub fn delta(field: &Field, v: &[i64]) -> Self {
        let mut out = Self::zero(field, v.len());
        out.add_term(v.to_vec(), field.one());
        out
    }

    pub fn from_terms(
        field: &Field,
        rank: usize,
        terms: impl IntoIterator<Item = (Vec<i64>, FieldElement)>,
    ) -> Result<Self> {
        let mut out = Self::zero(field, rank);
        for (v, c) in terms {
            if v.len() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    got: v.len(),
                });
            }
            let (c, _) = field::unify(&c, &field.zero())?;
            out.add_term(v, c);
        }
        Ok(out)
    }

    /// Adds c·δ_v in place, dropping the key if the sum cancels to zero.
    pub fn add_term(&mut self, v: Vec<i64>, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.support.entry(v) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = (&Vec<i64>, &FieldElement)> {
        self.support.iter()
    }

    pub fn support_len(&self) -> usize {
        self.support.len()
    }

    pub fn coeff(&self, v: &[i64]) -> FieldElement {
        self.support.get(v).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (mut out, other) = unify_pair(self, other)?;
        for (v, c) in &other.support {
            out.add_term(v.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.support.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &FieldElement) -> Result<Self> {
        let mut out = Self::zero(
            &field::unify(&self.field.zero(), c)?.0.field().clone(),
            self.rank,
        );
        for (v, a) in &self.support {
            let (a, c) = field::unify(a, c)?;
            out.add_term(v.clone(), a.mul(&c));
        }
        Ok(out)
    }

    /// τ_v: (τ_v f)(u) = f(u + v), so the support moves by -v.
    pub fn shifted(&self, v: &[i64]) -> Result<Self> {
        if v.len() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                got: v.len(),
            });
        }
        let mut out = Self::zero(&self.field, self.rank);
        for (u, c) in &self.support {
            let w: Vec<i64> = u.iter().zip(v).map(|(&a, &b)| a - b).collect();
            out.add_term(w, c.clone());
        }
        Ok(out)
    }

    /// Re-express every coefficient inside `target`, which must contain the
    /// current coefficient field as a subfield.
    pub fn embed_into(&self, target: &Field) -> Result<Self> {
        let mut out = Self::zero(target, self.rank);
        for (v, c) in &self.support {
            out.add_term(v.clone(), field::embed(c, target)?);
        }
        Ok(out)
    }
}

fn unify_pair(
    a: &GroupAlgebraElement,
    b: &GroupAlgebraElement,
) -> Result<(GroupAlgebraElement, GroupAlgebraElement)> {
    if a.rank != b.rank {
        return Err(Error::RankMismatch {
            expected: a.rank,
            got: b.rank,
        });
    }
    if a.field == b.field {
        return Ok((a.clone(), b.clone()));
    }
    let (ua, _) = field::unify(&a.field.zero(), &b.field.zero())?;
    let target = ua.field().clone();
    let lift = |x: &GroupAlgebraElement| -> Result<GroupAlgebraElement> {
        let mut out = GroupAlgebraElement::zero(&target, x.rank);
        for (v, c) in &x.support {
            out.add_term(v.clone(), field::embed(c, &target)?);
        }
        Ok(out)
    };
    Ok((lift(a)?, lift(b)?))
}

/// Convolution (f * g)(u) = sum_v f(v) g(u - v).
pub fn convolve(f: &GroupAlgebraElement, g: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
    let (f, g) = unify_pair(f, g)?;
    let mut out = GroupAlgebraElement::zero(&f.field, f.rank);
    for (v, a) in &f.support {
        for (w, b) in &g.support {
            let u: Vec<i64> = v.iter().zip(w).map(|(&x, &y)| x + y).collect();
            out.add_term(u, a.mul(b));
        }
    }
    Ok(out)
}

/// Reads a finitely supported function as a Laurent polynomial. This is the
/// Fourier transform on the infinite lattice: pure reinterpretation.
pub fn fourier(a: &GroupAlgebraElement) -> LaurentPoly {
    a.clone()
}

/// Evaluates a Laurent polynomial at a torus point: sum_λ a(λ) z^λ.
pub fn evaluate_laurent(a: &LaurentPoly, z: &TorusPoint) -> Result<FieldElement> {
    if z.rank() != a.rank {
        return Err(Error::RankMismatch {
            expected: a.rank,
            got: z.rank(),
        });
    }
    let (probe, _) = field::unify(&a.field.zero(), &z.field().zero())?;
    let target = probe.field().clone();
    let mut acc = target.zero();
    for (lam, c) in &a.support {
        let zi = field::embed(&z.evaluate(lam), &target)?;
        acc = acc.add(&field::embed(c, &target)?.mul(&zi));
    }
    Ok(acc)
}

// --- periodic functions ---------------------------------------------------

/// A Λ'-periodic function Z^s -> k^n, stored densely on the quotient: one
/// length-n value vector per coset (cosets keyed by their SNF tuple).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PeriodicFunction {
    quotient: Arc<QuotientData>,
    field: Field,
    n: usize,
    values: BTreeMap<Vec<u64>, Vec<FieldElement>>,
}

impl PeriodicFunction {
    pub fn zero(quotient: &Arc<QuotientData>, field: &Field, n: usize) -> Self {
        let values = quotient
            .group_elements()
            .into_iter()
            .map(|t| (t, vec![field.zero(); n]))
            .collect();
        PeriodicFunction {
            quotient: quotient.clone(),
            field: field.clone(),
            n,
            values,
        }
    }

    /// The elementary function g -> z^(lift g) * u: the character z tensored
    /// with a fixed vector.
    pub fn from_elementary(
        quotient: &Arc<QuotientData>,
        z: &TorusPoint,
        u: &[FieldElement],
    ) -> Result<Self> {
        if z.rank() != quotient.rank() {
            return Err(Error::RankMismatch {
                expected: quotient.rank(),
                got: z.rank(),
            });
        }
        let field = z.field().clone();
        let mut out = Self::zero(quotient, &field, u.len());
        for (t, vals) in out.values.iter_mut() {
            let zt = z.evaluate(&quotient.lift(t));
            for (slot, ui) in vals.iter_mut().zip(u) {
                let (a, b) = field::unify(&zt, ui)?;
                *slot = a.mul(&b);
            }
        }
        // unify may have enlarged the value field
        if let Some(v) = out.values.values().next() {
            if let Some(first) = v.first() {
                out.field = first.field().clone();
            }
        }
        Ok(out)
    }

    pub fn quotient(&self) -> &Arc<QuotientData> {
        &self.quotient
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn components(&self) -> usize {
        self.n
    }

    pub fn value(&self, tuple: &[u64]) -> &[FieldElement] {
        &self.values[tuple]
    }

    pub fn set_value(&mut self, tuple: &[u64], comp: usize, v: FieldElement) {
        debug_assert!(v.field() == &self.field);
        let slot = self.values.get_mut(tuple).expect("coset exists");
        slot[comp] = v;
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u64>, &Vec<FieldElement>)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().flatten().all(FieldElement::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.quotient != other.quotient || self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let mut out = self.clone();
        for (t, vals) in out.values.iter_mut() {
            for (i, slot) in vals.iter_mut().enumerate() {
                let (a, b) = field::unify(slot, &other.values[t][i])?;
                *slot = a.add(&b);
            }
        }
        out.fix_field();
        Ok(out)
    }

    pub fn scale(&self, c: &FieldElement) -> Result<Self> {
        let mut out = self.clone();
        for vals in out.values.values_mut() {
            for slot in vals.iter_mut() {
                let (a, b) = field::unify(slot, c)?;
                *slot = a.mul(&b);
            }
        }
        out.fix_field();
        Ok(out)
    }

    /// Applies a map entrywise (e.g. a Frobenius power).
    pub fn map_values(&self, f: impl Fn(&FieldElement) -> FieldElement) -> Self {
        let mut out = self.clone();
        for vals in out.values.values_mut() {
            for slot in vals.iter_mut() {
                *slot = f(slot);
            }
        }
        out.fix_field();
        out
    }

    /// Embeds all values into a larger field.
    pub fn embed_into(&self, target: &Field) -> Result<Self> {
        let mut out = self.clone();
        for vals in out.values.values_mut() {
            for slot in vals.iter_mut() {
                *slot = field::embed(slot, target)?;
            }
        }
        out.field = target.clone();
        Ok(out)
    }

    /// τ_v on periodic functions: (τ_v f)(u) = f(u + v).
    pub fn shifted(&self, v: &[i64]) -> Result<Self> {
        if v.len() != self.quotient.rank() {
            return Err(Error::RankMismatch {
                expected: self.quotient.rank(),
                got: v.len(),
            });
        }
        let mut out = self.clone();
        for (t, vals) in out.values.iter_mut() {
            let mut lam = self.quotient.lift(t);
            for (l, &vi) in lam.iter_mut().zip(v) {
                *l += vi;
            }
            *vals = self.values[&self.quotient.project(&lam)].clone();
        }
        Ok(out)
    }

    fn fix_field(&mut self) {
        if let Some(first) = self.values.values().flatten().next() {
            self.field = first.field().clone();
        }
    }
}

/// Convolution of a scalar kernel with a periodic function, componentwise:
/// (a * f)(g) = sum_v a(v) f(g - v).
pub fn apply_convolution(a: &GroupAlgebraElement, f: &PeriodicFunction) -> Result<PeriodicFunction> {
    if a.rank() != f.quotient().rank() {
        return Err(Error::RankMismatch {
            expected: f.quotient().rank(),
            got: a.rank(),
        });
    }
    let q = f.quotient().clone();
    let (probe, _) = field::unify(&a.field().zero(), &f.field().zero())?;
    let target = probe.field().clone();
    let mut out = PeriodicFunction::zero(&q, &target, f.components());
    let tuples: Vec<Vec<u64>> = q.group_elements();
    for t in &tuples {
        let lam = q.lift(t);
        let mut acc = vec![target.zero(); f.components()];
        for (v, c) in a.support() {
            let shifted: Vec<i64> = lam.iter().zip(v).map(|(&x, &y)| x - y).collect();
            let fv = f.value(&q.project(&shifted));
            let c = field::embed(c, &target)?;
            for (slot, x) in acc.iter_mut().zip(fv) {
                *slot = slot.add(&c.mul(&field::embed(x, &target)?));
            }
        }
        for (i, val) in acc.into_iter().enumerate() {
            out.set_value(t, i, val);
        }
    }
    Ok(out)
}

/// Pushforward of a finitely supported function to the quotient:
/// (π_* a)(v + Λ') = sum_{v' in Λ'} a(v + v').
pub fn pushforward(a: &GroupAlgebraElement, quotient: &Arc<QuotientData>) -> Result<PeriodicFunction> {
    if a.rank() != quotient.rank() {
        return Err(Error::RankMismatch {
            expected: quotient.rank(),
            got: a.rank(),
        });
    }
    let mut out = PeriodicFunction::zero(quotient, a.field(), 1);
    for (v, c) in a.support() {
        let t = quotient.project(v);
        let old = out.value(&t)[0].clone();
        out.set_value(&t, 0, old.add(c));
    }
    Ok(out)
}

// --- the discrete Fourier transform ---------------------------------------

/// A function on the dual group, stored sparsely at torus points (characters
/// of the quotient). Vector-valued, like [`PeriodicFunction`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DualFunction {
    rank: usize,
    n: usize,
    field: Field,
    entries: BTreeMap<TorusPoint, Vec<FieldElement>>,
}

impl DualFunction {
    pub fn new(rank: usize, n: usize, field: &Field) -> Self {
        DualFunction {
            rank,
            n,
            field: field.clone(),
            entries: BTreeMap::new(),
        }
    }

    pub fn components(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn entries(&self) -> impl Iterator<Item = (&TorusPoint, &Vec<FieldElement>)> {
        self.entries.iter()
    }

    pub fn insert(&mut self, z: TorusPoint, vals: Vec<FieldElement>) {
        debug_assert_eq!(vals.len(), self.n);
        if vals.iter().all(FieldElement::is_zero) {
            return;
        }
        self.entries.insert(z, vals);
    }

    pub fn get(&self, z: &TorusPoint) -> Option<&Vec<FieldElement>> {
        self.entries.get(z)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }
}

/// Forward DFT: decomposes f = sum_χ α_χ · χ with
/// α_χ = |G|^(-1) sum_g f(g) χ(g)^(-1), and stores α_χ at the point χ^(-1)
/// (so a character χ itself transforms to the delta at χ^(-1)). Requires the
/// period lattice p-saturated.
pub fn dft_forward(f: &PeriodicFunction) -> Result<DualFunction> {
    let q = f.quotient();
    let p = f.field().characteristic();
    let chars = dual_of_quotient(q, p)?;
    let dual_field = chars[0].field().clone();
    let (probe, _) = field::unify(&f.field().zero(), &dual_field.zero())?;
    let target = probe.field().clone();
    let inv_order = target
        .from_u64(q.index() % p)
        .inv()
        .expect("index is coprime to p");
    let tuples = q.group_elements();
    let lifts: Vec<Vec<i64>> = tuples.iter().map(|t| q.lift(t)).collect();
    let mut out = DualFunction::new(q.rank(), f.components(), &target);
    for chi in &chars {
        let chi_t = chi.embed_into(&target)?;
        let mut acc = vec![target.zero(); f.components()];
        for (t, lam) in tuples.iter().zip(&lifts) {
            // χ(g)^(-1) = χ(-g)
            let neg: Vec<i64> = lam.iter().map(|&x| -x).collect();
            let w = chi_t.evaluate(&neg);
            for (slot, x) in acc.iter_mut().zip(f.value(t)) {
                *slot = slot.add(&w.mul(&field::embed(x, &target)?));
            }
        }
        for slot in acc.iter_mut() {
            *slot = slot.mul(&inv_order);
        }
        out.insert(chi_t.inverse(), acc);
    }
    Ok(out)
}

/// Inverse DFT: f = sum_χ φ(χ) · χ^(-1), a function on the given quotient.
/// Every support point must be a character of that quotient (trivial on Λ').
pub fn dft_inverse(phi: &DualFunction, quotient: &Arc<QuotientData>) -> Result<PeriodicFunction> {
    let s = quotient.rank();
    if phi.rank != s {
        return Err(Error::RankMismatch {
            expected: s,
            got: phi.rank,
        });
    }
    let basis_cols: Vec<Vec<i64>> = (0..s)
        .map(|j| (0..s).map(|i| quotient.sublattice().basis()[i][j]).collect())
        .collect();
    for (z, _) in phi.entries() {
        if !basis_cols.iter().all(|c| z.evaluate(c).is_one()) {
            return Err(Error::CharacterOutsideDual);
        }
    }
    let mut out = PeriodicFunction::zero(quotient, &phi.field, phi.n);
    for t in quotient.group_elements() {
        let lam = quotient.lift(&t);
        let neg: Vec<i64> = lam.iter().map(|&x| -x).collect();
        let mut acc = vec![phi.field.zero(); phi.n];
        for (z, vals) in phi.entries() {
            let w = field::embed(&z.evaluate(&neg), &phi.field)?;
            for (slot, v) in acc.iter_mut().zip(vals) {
                *slot = slot.add(&v.mul(&w));
            }
        }
        for (i, v) in acc.into_iter().enumerate() {
            out.set_value(&t, i, v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Sublattice;

    fn quot(basis: Vec<Vec<i64>>) -> Arc<QuotientData> {
        Arc::new(QuotientData::new(Sublattice::new(basis).unwrap()).unwrap())
    }

    #[test]
    fn deltas_convolve_by_adding_positions() {
        let f = Field::new(5, 1).unwrap();
        let a = GroupAlgebraElement::delta(&f, &[2, -1]);
        let b = GroupAlgebraElement::delta(&f, &[1, 4]);
        let c = convolve(&a, &b).unwrap();
        assert_eq!(c, GroupAlgebraElement::delta(&f, &[3, 3]));
    }

    #[test]
    fn square_of_symmetric_walk_in_characteristic_two() {
        // (δ_{-1} + δ_0 + δ_1)^2 = δ_{-2} + δ_2 + δ_0 over GF(2): the cross
        // terms 2δ_{±1} vanish and δ_0 appears 3 = 1 times.
        let f = Field::new(2, 1).unwrap();
        let a = GroupAlgebraElement::from_terms(
            &f,
            1,
            [
                (vec![-1], f.one()),
                (vec![0], f.one()),
                (vec![1], f.one()),
            ],
        )
        .unwrap();
        let sq = convolve(&a, &a).unwrap();
        let expected = GroupAlgebraElement::from_terms(
            &f,
            1,
            [
                (vec![-2], f.one()),
                (vec![0], f.one()),
                (vec![2], f.one()),
            ],
        )
        .unwrap();
        assert_eq!(sq, expected);
    }

    #[test]
    fn convolution_is_commutative_and_associative() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for p in [2u64, 3, 5] {
            let f = Field::new(p, 1).unwrap();
            let random_elt = |rng: &mut rand_chacha::ChaCha8Rng| {
                let terms: Vec<(Vec<i64>, FieldElement)> = (0..rng.gen_range(0..5))
                    .map(|_| {
                        (
                            vec![rng.gen_range(-3..4i64), rng.gen_range(-3..4i64)],
                            f.from_u64(rng.gen_range(0..p)),
                        )
                    })
                    .collect();
                GroupAlgebraElement::from_terms(&f, 2, terms).unwrap()
            };
            for _ in 0..25 {
                let a = random_elt(&mut rng);
                let b = random_elt(&mut rng);
                let c = random_elt(&mut rng);
                assert_eq!(convolve(&a, &b).unwrap(), convolve(&b, &a).unwrap());
                assert_eq!(
                    convolve(&convolve(&a, &b).unwrap(), &c).unwrap(),
                    convolve(&a, &convolve(&b, &c).unwrap()).unwrap()
                );
                assert_eq!(
                    convolve(&a.add(&b).unwrap(), &c).unwrap(),
                    convolve(&a, &c).unwrap().add(&convolve(&b, &c).unwrap()).unwrap()
                );
            }
        }
    }

    #[test]
    fn shift_moves_delta_the_documented_way() {
        let f = Field::new(3, 1).unwrap();
        let d0 = GroupAlgebraElement::delta(&f, &[0]);
        // δ_v = τ_{-v} δ_0
        let d5 = d0.shifted(&[-5]).unwrap();
        assert_eq!(d5, GroupAlgebraElement::delta(&f, &[5]));
        // shifts compose additively
        let roundtrip = d5.shifted(&[3]).unwrap().shifted(&[-3]).unwrap();
        assert_eq!(roundtrip, d5);
    }

    #[test]
    fn laurent_evaluation_matches_hand_values() {
        let f2 = Field::new(2, 1).unwrap();
        let a = GroupAlgebraElement::from_terms(
            &f2,
            1,
            [
                (vec![-1], f2.one()),
                (vec![0], f2.one()),
                (vec![1], f2.one()),
            ],
        )
        .unwrap();
        let sym = fourier(&a);
        // at z = 1: 1 + 1 + 1 = 1 over GF(2)
        let f4 = Field::new(2, 2).unwrap();
        let one_pt = TorusPoint::new(vec![f4.one()]).unwrap();
        assert!(evaluate_laurent(&sym, &one_pt).unwrap().is_one());
        // at a primitive cube root ω: ω^(-1) + 1 + ω = ω^2 + ω + 1 = 0
        let omega = f4.generator();
        let z = TorusPoint::new(vec![omega]).unwrap();
        assert!(evaluate_laurent(&sym, &z).unwrap().is_zero());
    }

    #[test]
    fn pushforward_collapses_support_mod_the_lattice() {
        let f = Field::new(5, 1).unwrap();
        let q = quot(vec![vec![3]]);
        let a = GroupAlgebraElement::from_terms(
            &f,
            1,
            [
                (vec![-1], f.from_u64(1)),
                (vec![2], f.from_u64(3)), // same coset as -1
                (vec![0], f.from_u64(2)),
            ],
        )
        .unwrap();
        let pf = pushforward(&a, &q).unwrap();
        let t_of = |v: i64| q.project(&[v]);
        assert_eq!(pf.value(&t_of(-1))[0], f.from_u64(4)); // 1 + 3
        assert_eq!(pf.value(&t_of(0))[0], f.from_u64(2));
        assert_eq!(pf.value(&t_of(1))[0], f.from_u64(0));
    }

    #[test]
    fn character_transforms_to_delta_at_its_inverse() {
        let q = quot(vec![vec![3]]);
        let chars = crate::lattice::dual_subgroup(q.sublattice(), 2).unwrap();
        for chi in &chars {
            let f = PeriodicFunction::from_elementary(&q, chi, &[chi.field().one()]).unwrap();
            let phi = dft_forward(&f).unwrap();
            assert_eq!(phi.support_len(), 1);
            let (z, vals) = phi.entries().next().unwrap();
            assert_eq!(z, &chi.inverse());
            assert!(vals[0].is_one());
        }
    }

    #[test]
    fn dft_roundtrips_on_random_functions() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for (p, basis) in [
            (2u64, vec![vec![3]]),
            (3, vec![vec![2, 1], vec![0, 2]]),
            (5, vec![vec![3, 0], vec![1, 2]]),
        ] {
            let q = quot(basis);
            let chars = crate::lattice::dual_subgroup(q.sublattice(), p).unwrap();
            let dual_field = chars[0].field().clone();
            for _ in 0..10 {
                let mut f = PeriodicFunction::zero(&q, &dual_field, 1);
                for t in q.group_elements() {
                    let c = dual_field
                        .elements()
                        .nth(rng.gen_range(0..dual_field.order_u128().unwrap()) as usize)
                        .unwrap();
                    f.set_value(&t, 0, c);
                }
                let phi = dft_forward(&f).unwrap();
                let back = dft_inverse(&phi, &q).unwrap();
                assert_eq!(back, f);
            }
        }
    }

    #[test]
    fn dft_rejects_foreign_characters() {
        let q2 = quot(vec![vec![2]]);
        let q3 = quot(vec![vec![3]]);
        let chars3 = crate::lattice::dual_subgroup(q3.sublattice(), 2).unwrap();
        let mut phi = DualFunction::new(1, 1, chars3[1].field());
        phi.insert(chars3[1].clone(), vec![chars3[1].field().one()]);
        assert_eq!(
            dft_inverse(&phi, &q2).unwrap_err(),
            Error::CharacterOutsideDual
        );
        // non-saturated quotients have no full character set
        let f2 = Field::new(2, 1).unwrap();
        let f = PeriodicFunction::zero(&q2, &f2, 1);
        assert!(matches!(
            dft_forward(&f).unwrap_err(),
            Error::NotPSaturated { .. }
        ));
    }

    #[test]
    fn convolution_theorem_single_instance() {
        let q = quot(vec![vec![5]]);
        let p = 2u64;
        let chars = crate::lattice::dual_subgroup(q.sublattice(), p).unwrap();
        let dual_field = chars[0].field().clone();
        let f2 = Field::new(p, 1).unwrap();
        let a = GroupAlgebraElement::from_terms(
            &f2,
            1,
            [(vec![-2], f2.one()), (vec![1], f2.one())],
        )
        .unwrap();
        let mut f = PeriodicFunction::zero(&q, &dual_field, 1);
        let g = dual_field.generator();
        for (i, t) in q.group_elements().into_iter().enumerate() {
            f.set_value(&t, 0, g.pow(i as i64).unwrap());
        }
        let lhs = dft_forward(&apply_convolution(&a, &f).unwrap()).unwrap();
        let fhat = dft_forward(&f).unwrap();
        // rhs: pointwise multiply f̂ by â evaluated at the stored point
        let mut rhs = DualFunction::new(1, 1, fhat.field());
        for (z, vals) in fhat.entries() {
            let s = evaluate_laurent(&fourier(&a), z).unwrap();
            rhs.insert(z.clone(), vec![vals[0].mul(&s)]);
        }
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn periodic_shift_is_periodic_translation() {
        let q = quot(vec![vec![4]]);
        let f5 = Field::new(5, 1).unwrap();
        let mut f = PeriodicFunction::zero(&q, &f5, 1);
        for (i, t) in q.group_elements().into_iter().enumerate() {
            f.set_value(&t, 0, f5.from_u64(i as u64 + 1));
        }
        let shifted = f.shifted(&[1]).unwrap();
        for t in q.group_elements() {
            let lam = q.lift(&t);
            assert_eq!(
                shifted.value(&t)[0],
                f.value(&q.project(&[lam[0] + 1]))[0]
            );
        }
        // shifting by a lattice vector is the identity
        assert_eq!(f.shifted(&[4]).unwrap(), f);
    }
}
