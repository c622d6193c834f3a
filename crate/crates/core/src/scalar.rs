//! Spectral theory of scalar convolution operators on periodic functions:
//! the symbolic variety restricted to a finite dual subgroup, harmonic
//! kernels, level sets, the full eigendecomposition, and the coarse
//! classification of the spectrum over the algebraic closure.
//!
//! Everything rests on one exact identity: a character z acts as an
//! eigenfunction of the convolution by a, with eigenvalue the symbol
//! â(z⁻¹).

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{evaluate_laurent, fourier, GroupAlgebraElement, PeriodicFunction};
use crate::error::Result;
use crate::field::FieldElement;
use crate::lattice::{dual_subgroup, QuotientData, Sublattice, TorusPoint};

/// The symbol of a scalar operator at a torus point: â(z⁻¹) = Σ a(λ) z^(-λ).
pub fn symbol_value(a: &GroupAlgebraElement, z: &TorusPoint) -> Result<FieldElement> {
    evaluate_laurent(&fourier(a), &z.inverse())
}

/// The finite part of the symbolic variety: the characters of the quotient
/// on which the symbol vanishes, {z ∈ Λ'^⊥ : â(z⁻¹) = 0}.
pub fn symbolic_variety_points(
    a: &GroupAlgebraElement,
    sub: &Sublattice,
) -> Result<Vec<TorusPoint>> {
    fermi_level_points(a, &a.field().zero(), sub)
}

/// The level-μ set {z ∈ Λ'^⊥ : â(z⁻¹) = μ}, i.e. the symbolic variety of
/// a - μδ_0.
pub fn fermi_level_points(
    a: &GroupAlgebraElement,
    mu: &FieldElement,
    sub: &Sublattice,
) -> Result<Vec<TorusPoint>> {
    let p = a.field().characteristic();
    let chars = dual_subgroup(sub, p)?;
    let mut out = Vec::new();
    for z in chars {
        let v = symbol_value(a, &z)?;
        let (v, mu_e) = crate::field::unify(&v, mu)?;
        if v == mu_e {
            out.push(z);
        }
    }
    Ok(out)
}

/// A basis of ker(Δ_a) on the Λ'-periodic functions: the vanishing
/// characters rendered as periodic functions.
pub fn harmonic_kernel(
    a: &GroupAlgebraElement,
    sub: &Sublattice,
) -> Result<Vec<PeriodicFunction>> {
    let quotient = Arc::new(QuotientData::new(sub.clone())?);
    symbolic_variety_points(a, sub)?
        .into_iter()
        .map(|z| {
            let one = z.field().one();
            PeriodicFunction::from_elementary(&quotient, &z, &[one])
        })
        .collect()
}

/// The full eigendecomposition of Δ_a on F_{Λ'}: every character lands in
/// exactly one level set, so the level sets partition Λ'^⊥.
#[derive(Clone, Debug)]
pub struct ScalarSpectralReport {
    /// Level sets: μ -> the characters z with â(z⁻¹) = μ.
    pub eigenpairs: BTreeMap<FieldElement, Vec<TorusPoint>>,
    /// The μ = 0 level rendered as periodic functions (the harmonic kernel).
    pub kernel_basis: Vec<PeriodicFunction>,
    /// |G| = index of the period lattice.
    pub index: u64,
}

impl ScalarSpectralReport {
    /// Dimension of the level-μ eigenspace.
    pub fn dimension(&self, mu: &FieldElement) -> usize {
        self.eigenpairs.get(mu).map_or(0, Vec::len)
    }
}

pub fn eigendecompose(a: &GroupAlgebraElement, sub: &Sublattice) -> Result<ScalarSpectralReport> {
    let p = a.field().characteristic();
    let chars = dual_subgroup(sub, p)?;
    let quotient = Arc::new(QuotientData::new(sub.clone())?);
    let mut eigenpairs: BTreeMap<FieldElement, Vec<TorusPoint>> = BTreeMap::new();
    let mut kernel_basis = Vec::new();
    for z in chars {
        let mu = symbol_value(a, &z)?;
        if mu.is_zero() {
            let one = z.field().one();
            kernel_basis.push(PeriodicFunction::from_elementary(&quotient, &z, &[one])?);
        }
        eigenpairs.entry(mu).or_default().push(z);
    }
    let total: usize = eigenpairs.values().map(Vec::len).sum();
    debug_assert_eq!(total as u64, sub.index(), "level sets partition the dual");
    Ok(ScalarSpectralReport {
        eigenpairs,
        kernel_basis,
        index: sub.index(),
    })
}

/// The shape of spec(Δ_a) over the algebraic closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpectrumClass {
    /// a = μδ_0: the spectrum is the single point μ.
    Point(FieldElement),
    /// a = αδ_v with α ≠ 0, v ≠ 0: the spectrum is a torus (all of k̄^×
    /// up to scaling).
    Torus,
    /// Any other a: the spectrum is the whole field k̄.
    FullField,
}

pub fn classify_spectrum(a: &GroupAlgebraElement) -> SpectrumClass {
    match a.support_len() {
        0 => SpectrumClass::Point(a.field().zero()),
        1 => {
            let (v, c) = a.support().next().expect("single term");
            if v.iter().all(|&x| x == 0) {
                SpectrumClass::Point(c.clone())
            } else {
                SpectrumClass::Torus
            }
        }
        _ => SpectrumClass::FullField,
    }
}

/// Δ_a is invertible exactly when a is a nonzero multiple of a single
/// delta, i.e. proportional to a shift.
pub fn is_invertible(a: &GroupAlgebraElement) -> bool {
    a.support_len() == 1
}

/// A nonzero a admits no nonzero finitely supported harmonic function, so
/// this is just the zero test.
pub fn finite_support_harmonic_exists(a: &GroupAlgebraElement) -> bool {
    a.is_zero()
}
