//! Galois descent of harmonic solutions to a target subfield GF(q).
//!
//! Solutions produced by the character method take values in extension
//! fields: a kernel vector at a torus point z involves the coordinates of z.
//! When the operator itself has all coefficients in GF(q), the full solution
//! space is stable under the q-power Frobenius, and traces along Frobenius
//! orbits produce GF(q)-valued solutions.  This module constructs one such
//! solution (following the orbit of a single multiplier) and, beyond that, a
//! full GF(q)-basis of the GF(q)-valued kernel.

use std::sync::Arc;

use crate::algebra::PeriodicFunction;
use crate::error::{Error, Result};
use crate::field::{self, Field, FieldElement};
use crate::lattice::{QuotientData, Sublattice, TorusPoint};
use crate::linalg::row_span_rank;
use crate::matrix::{multipliers, symbol_matrix, MatrixOperator};

/// A descent problem: an operator whose coefficients all lie in GF(q),
/// restricted to functions periodic under the sublattice.
#[derive(Debug, Clone)]
pub struct DescentRequest {
    operator: MatrixOperator,
    q: u128,
    sub: Sublattice,
}

impl DescentRequest {
    /// Validates that q is a power of the operator's characteristic and that
    /// every coefficient of every entry is fixed by the q-power Frobenius,
    /// i.e. lies in GF(q).
    pub fn new(operator: MatrixOperator, q: u128, sub: Sublattice) -> Result<Self> {
        if sub.rank() != operator.rank() {
            return Err(Error::RankMismatch {
                expected: operator.rank(),
                got: sub.rank(),
            });
        }
        for row in operator.entries() {
            for entry in row {
                for (_, c) in entry.support() {
                    if field::frobenius(c, q)? != *c {
                        return Err(Error::NotInSubfield);
                    }
                }
            }
        }
        Ok(DescentRequest { operator, q, sub })
    }

    pub fn operator(&self) -> &MatrixOperator {
        &self.operator
    }

    pub fn q(&self) -> u128 {
        self.q
    }

    pub fn sublattice(&self) -> &Sublattice {
        &self.sub
    }
}

/// Least r ≥ 1 with z^(q^r) = z coordinatewise.
pub fn frobenius_orbit_length(z: &TorusPoint, q: u128) -> Result<u32> {
    let mut w = z.frobenius(q)?;
    let mut r = 1u32;
    while w.coords() != z.coords() {
        w = w.frobenius(q)?;
        r += 1;
    }
    Ok(r)
}

/// Componentwise, pointwise trace from GF(q^r) down to GF(q):
/// x ↦ x + x^q + … + x^(q^(r−1)).  Errors if any value lies outside
/// GF(q^r); output values lie in GF(q) but are still represented inside
/// the original ambient field.
pub fn trace_solution(f: &PeriodicFunction, q: u128, r: u32) -> Result<PeriodicFunction> {
    let mut out = PeriodicFunction::zero(f.quotient(), f.field(), f.components());
    for (t, vals) in f.iter() {
        for (i, v) in vals.iter().enumerate() {
            out.set_value(t, i, field::trace_to_subfield(v, q, r)?);
        }
    }
    Ok(out)
}

/// Produces one nonzero GF(q)-valued solution of A*f = 0 on the quotient,
/// or None when the periodic kernel is zero.
///
/// Construction: take the first multiplier z, let r be its Frobenius orbit
/// length over GF(q).  The symbol at z is fixed entrywise by the q^r-power
/// Frobenius (coefficients lie in GF(q), coordinates of z in GF(q^r)), and
/// Gaussian elimination only performs rational operations, so the computed
/// kernel vector automatically has coordinates in GF(q^r).  The trace of the
/// resulting elementary solution is GF(q)-valued; it is nonzero because the
/// Frobenius translates of z are pairwise distinct characters, and it is
/// verified against the operator before being returned.
pub fn descend_kernel(req: &DescentRequest) -> Result<Option<PeriodicFunction>> {
    let found = multipliers(&req.operator, &req.sub)?;
    let Some(z) = found.first() else {
        return Ok(None);
    };
    let r = frobenius_orbit_length(z, req.q)?;
    let symbol = symbol_matrix(&req.operator, z)?;
    let kernel = symbol.kernel_basis();
    let u = kernel.first().expect("symbol at a multiplier is singular");
    let quotient = Arc::new(QuotientData::new(req.sub.clone())?);
    let elementary = PeriodicFunction::from_elementary(&quotient, z, u)?;
    let traced = trace_solution(&elementary, req.q, r)?;
    assert!(
        !traced.is_zero(),
        "trace of an elementary solution along distinct characters cannot vanish"
    );
    let image = req.operator.apply(&traced)?;
    assert!(image.is_zero(), "descended solution must stay in the kernel");
    Ok(Some(traced))
}

/// A GF(q)-basis of GF(q^r) viewed inside the given field, chosen greedily
/// from a GF(p)-basis of GF(q^r) by testing GF(q)-linear independence.
fn gf_q_basis_of_extension(ambient: &Field, e: u32, r: u32) -> Result<Vec<FieldElement>> {
    if r == 1 {
        return Ok(vec![ambient.one()]);
    }
    let p = ambient.characteristic();
    let gp = Field::new(p, 1)?;
    let to_row = |x: &FieldElement| -> Vec<FieldElement> {
        x.coeffs().iter().map(|&c| gp.from_u64(c)).collect()
    };
    let gf_q_over_p = ambient.subfield_basis(e)?;
    let gf_qr_over_p = ambient.subfield_basis(e * r)?;
    let mut chosen: Vec<FieldElement> = Vec::new();
    let mut rows: Vec<Vec<FieldElement>> = Vec::new();
    for x in &gf_qr_over_p {
        if chosen.len() as u32 == r {
            break;
        }
        // x is GF(q)-independent of the chosen set iff multiplying the
        // candidate set by a GF(p)-basis of GF(q) keeps full GF(p)-rank.
        let mut trial = rows.clone();
        for b in &gf_q_over_p {
            trial.push(to_row(&x.mul(b)));
        }
        if row_span_rank(&gp, &trial) == trial.len() {
            rows = trial;
            chosen.push(x.clone());
        }
    }
    debug_assert_eq!(chosen.len() as u32, r, "GF(q^r) has q-dimension r");
    Ok(chosen)
}

/// A GF(q)-basis of the space of GF(q)-valued periodic solutions of
/// A*f = 0: multipliers are grouped into Frobenius orbits; for each orbit
/// representative, traces of γ·(elementary solution) with γ ranging over a
/// GF(q)-basis of GF(q^r) span the orbit's contribution; the union is then
/// reduced to a basis by exact elimination.
pub fn gf_q_kernel_basis(req: &DescentRequest) -> Result<Vec<PeriodicFunction>> {
    let p = req.operator.field().characteristic();
    let found = multipliers(&req.operator, &req.sub)?;
    let quotient = Arc::new(QuotientData::new(req.sub.clone())?);
    let mut reps: Vec<(TorusPoint, u32)> = Vec::new();
    let mut seen: Vec<Vec<FieldElement>> = Vec::new();
    for z in &found {
        if seen.iter().any(|w| w == z.coords()) {
            continue;
        }
        let r = frobenius_orbit_length(z, req.q)?;
        let mut w = z.clone();
        for _ in 0..r {
            seen.push(w.coords().to_vec());
            w = w.frobenius(req.q)?;
        }
        reps.push((z.clone(), r));
    }
    let mut candidates: Vec<PeriodicFunction> = Vec::new();
    for (z, r) in &reps {
        let symbol = symbol_matrix(&req.operator, z)?;
        let e = field::power_of_char(p, req.q)?;
        let gammas = gf_q_basis_of_extension(symbol.field(), e, *r)?;
        for u in symbol.kernel_basis() {
            let elementary = PeriodicFunction::from_elementary(&quotient, z, &u)?;
            for gamma in &gammas {
                let traced = trace_solution(&elementary.scale(gamma)?, req.q, *r)?;
                if !traced.is_zero() {
                    candidates.push(traced);
                }
            }
        }
    }
    // The traced candidates have values in GF(q), so GF(q)-independence is
    // ordinary linear independence of their flattened value vectors over the
    // ambient field.
    let mut basis: Vec<PeriodicFunction> = Vec::new();
    let mut rows: Vec<Vec<FieldElement>> = Vec::new();
    for cand in candidates {
        let field = cand.field().clone();
        let row: Vec<FieldElement> = cand
            .iter()
            .flat_map(|(_, vals)| vals.iter().cloned())
            .collect();
        let mut trial = rows.clone();
        trial.push(row);
        if row_span_rank(&field, &trial) > rows.len() {
            rows = trial;
            basis.push(cand);
        }
    }
    Ok(basis)
}
