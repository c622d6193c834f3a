//! Brute-force reference: a convolution operator restricted to periodic
//! functions, realized as one dense matrix over the coefficient field.
//!
//! This is the independent check for every spectral computation.  Nothing
//! here knows about characters or symbols: the operator is written out on
//! the finite quotient and all questions are answered by exact Gaussian
//! elimination.  Indexing is deterministic: the coset with enumeration
//! index g and vector coordinate i map to row/column g·n + i.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{pushforward, PeriodicFunction};
use crate::error::{Error, Result};
use crate::field::{self, FieldElement};
use crate::lattice::{QuotientData, Sublattice};
use crate::linalg::FieldMatrix;
use crate::matrix::MatrixOperator;

/// The matrix of f ↦ A*f on the n·|G|-dimensional space of periodic vector
/// functions, over the operator's coefficient field.
#[derive(Debug, Clone)]
pub struct QuotientMatrix {
    quotient: Arc<QuotientData>,
    n: usize,
    matrix: FieldMatrix,
}

impl QuotientMatrix {
    pub fn matrix(&self) -> &FieldMatrix {
        &self.matrix
    }

    pub fn quotient(&self) -> &Arc<QuotientData> {
        &self.quotient
    }

    /// Vector components per lattice site.
    pub fn components(&self) -> usize {
        self.n
    }

    /// Total dimension n·|G| of the periodic function space.
    pub fn dimension(&self) -> usize {
        self.matrix.rows()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn nullity(&self) -> usize {
        self.matrix.nullity()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<FieldElement>> {
        self.matrix.kernel_basis()
    }
}

/// Writes the operator out on the quotient: entry (g·n+i, h·n+j) is the
/// pushforward of a_ij evaluated at the coset of lift(g) − lift(h).
///
/// The sublattice only needs finite index — p-saturation is not required,
/// which lets the reference cover instances the character method cannot.
pub fn build_quotient_matrix(a: &MatrixOperator, sub: &Sublattice) -> Result<QuotientMatrix> {
    if sub.rank() != a.rank() {
        return Err(Error::RankMismatch {
            expected: a.rank(),
            got: sub.rank(),
        });
    }
    let quotient = Arc::new(QuotientData::new(sub.clone())?);
    let n = a.size();
    let pf: Vec<Vec<PeriodicFunction>> = a
        .entries()
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| pushforward(e, &quotient))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let elements = quotient.group_elements();
    let dim = elements.len() * n;
    let lifts: Vec<Vec<i64>> = elements.iter().map(|g| quotient.lift(g)).collect();
    let mut matrix = FieldMatrix::zero(a.field(), dim, dim);
    for (gi, lift_g) in lifts.iter().enumerate() {
        for (hi, lift_h) in lifts.iter().enumerate() {
            let diff: Vec<i64> = lift_g.iter().zip(lift_h).map(|(&x, &y)| x - y).collect();
            let t = quotient.project(&diff);
            for i in 0..n {
                for j in 0..n {
                    let val = pf[i][j].value(&t)[0].clone();
                    matrix.set(gi * n + i, hi * n + j, val);
                }
            }
        }
    }
    Ok(QuotientMatrix {
        quotient,
        n,
        matrix,
    })
}

/// Ranks of (M − μI)^k for k = 0, 1, 2, … until the value repeats; the
/// returned sequence ends with its first repeated entry.  The scalar is
/// unified with the matrix field, so μ may live in an extension.
pub fn rank_sequence(m: &FieldMatrix, mu: &FieldElement) -> Result<Vec<usize>> {
    let (probe, mu_w) = field::unify(&m.field().zero(), mu)?;
    let target = probe.field().clone();
    let mw = m.embed_into(&target)?;
    let nmat = mw.sub_scalar_diag(&mu_w);
    let dim = mw.rows();
    let mut ranks = vec![dim];
    let mut power = FieldMatrix::identity(&target, dim);
    loop {
        power = power.mul(&nmat);
        let r = power.rank();
        let stabilized = ranks.last() == Some(&r);
        ranks.push(r);
        if stabilized {
            return Ok(ranks);
        }
    }
}

/// Dimension of the generalized eigenspace of M at μ (0 if μ is not an
/// eigenvalue): the stable rank deficiency of (M − μI)^k.
pub fn generalized_nullity(m: &FieldMatrix, mu: &FieldElement) -> Result<usize> {
    let ranks = rank_sequence(m, mu)?;
    Ok(m.rows() - ranks.last().unwrap())
}

/// Jordan block sizes of M at μ, derived from the rank sequence: the number
/// of blocks of size k is r_{k−1} − 2r_k + r_{k+1}.
pub fn jordan_block_counts(m: &FieldMatrix, mu: &FieldElement) -> Result<BTreeMap<usize, usize>> {
    let ranks = rank_sequence(m, mu)?;
    let stable = *ranks.last().unwrap();
    let at = |k: usize| -> usize {
        if k < ranks.len() {
            ranks[k]
        } else {
            stable
        }
    };
    let mut out = BTreeMap::new();
    for k in 1..=ranks.len() {
        let drop_before = at(k - 1) - at(k);
        let drop_after = at(k) - at(k + 1);
        let blocks = drop_before - drop_after;
        if blocks > 0 {
            out.insert(k, blocks);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GroupAlgebraElement;
    use crate::field::Field;

    fn delta(field: &Field, v: &[i64]) -> GroupAlgebraElement {
        GroupAlgebraElement::delta(field, v)
    }

    #[test]
    fn identity_operator_becomes_identity_matrix() {
        let f2 = Field::new(2, 1).unwrap();
        let a = MatrixOperator::identity(&f2, 2, 1);
        let sub = Sublattice::new(vec![vec![3]]).unwrap();
        let q = build_quotient_matrix(&a, &sub).unwrap();
        assert_eq!(q.dimension(), 6);
        assert_eq!(q.nullity(), 0);
        assert!(q.matrix() == &FieldMatrix::identity(&f2, 6));
    }

    #[test]
    fn symmetric_walk_on_three_torsion_is_the_all_ones_circulant() {
        let f2 = Field::new(2, 1).unwrap();
        let a = delta(&f2, &[-1])
            .add(&delta(&f2, &[0]))
            .unwrap()
            .add(&delta(&f2, &[1]))
            .unwrap();
        let op = MatrixOperator::scalar(&a);
        let sub = Sublattice::new(vec![vec![3]]).unwrap();
        let q = build_quotient_matrix(&op, &sub).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!(q.matrix().at(i, j).is_one());
            }
        }
        assert_eq!(q.nullity(), 2);
    }

    #[test]
    fn shift_on_two_torsion_is_a_permutation_matrix() {
        let f3 = Field::new(3, 1).unwrap();
        let op = MatrixOperator::scalar(&delta(&f3, &[1]));
        let sub = Sublattice::new(vec![vec![2]]).unwrap();
        let q = build_quotient_matrix(&op, &sub).unwrap();
        let m = q.matrix();
        assert_eq!(q.dimension(), 2);
        assert_eq!(q.rank(), 2);
        // exactly one 1 per row and per column, zero diagonal
        assert!(m.at(0, 0).is_zero() && m.at(1, 1).is_zero());
        assert!(m.at(0, 1).is_one() && m.at(1, 0).is_one());
    }

    #[test]
    fn matrix_depends_only_on_the_pushforward() {
        // Moving a support point by a sublattice vector and the difference
        // of deltas at congruent points must leave the matrix unchanged.
        let f5 = Field::new(5, 1).unwrap();
        let sub = Sublattice::new(vec![vec![4]]).unwrap();
        let a = delta(&f5, &[1]).add(&delta(&f5, &[2]).scale(&f5.from_u64(3)).unwrap()).unwrap();
        let b = delta(&f5, &[5]).add(&delta(&f5, &[-2]).scale(&f5.from_u64(3)).unwrap()).unwrap();
        let qa = build_quotient_matrix(&MatrixOperator::scalar(&a), &sub).unwrap();
        let qb = build_quotient_matrix(&MatrixOperator::scalar(&b), &sub).unwrap();
        assert!(qa.matrix() == qb.matrix());
    }

    #[test]
    fn non_saturated_quotients_are_accepted() {
        let f2 = Field::new(2, 1).unwrap();
        let op = MatrixOperator::scalar(&delta(&f2, &[1]).add(&delta(&f2, &[0])).unwrap());
        let sub = Sublattice::new(vec![vec![2]]).unwrap();
        assert!(!sub.is_p_saturated(2));
        let q = build_quotient_matrix(&op, &sub).unwrap();
        // (1 + τ) on Z/2 over GF(2): the all-ones 2×2 matrix, nullity 1.
        assert_eq!(q.nullity(), 1);
    }

    #[test]
    fn rank_sequence_recovers_jordan_blocks() {
        let f3 = Field::new(3, 1).unwrap();
        // One 2-block and one 1-block at eigenvalue 1.
        let rows = vec![
            vec![f3.one(), f3.one(), f3.zero()],
            vec![f3.zero(), f3.one(), f3.zero()],
            vec![f3.zero(), f3.zero(), f3.one()],
        ];
        let m = FieldMatrix::from_rows(&f3, rows);
        let ranks = rank_sequence(&m, &f3.one()).unwrap();
        assert_eq!(ranks, vec![3, 1, 0, 0]);
        let blocks = jordan_block_counts(&m, &f3.one()).unwrap();
        assert_eq!(blocks, BTreeMap::from([(1, 1), (2, 1)]));
        assert_eq!(generalized_nullity(&m, &f3.one()).unwrap(), 3);
        assert_eq!(generalized_nullity(&m, &f3.zero()).unwrap(), 0);
    }

    #[test]
    fn oracle_nullity_matches_character_method_on_a_saturated_instance() {
        let f2 = Field::new(2, 1).unwrap();
        let a = MatrixOperator::new(vec![
            vec![delta(&f2, &[1]), delta(&f2, &[1])],
            vec![delta(&f2, &[0]), delta(&f2, &[0])],
        ])
        .unwrap();
        let sub = Sublattice::new(vec![vec![3]]).unwrap();
        let q = build_quotient_matrix(&a, &sub).unwrap();
        let sols = crate::matrix::periodic_solutions(&a, &sub).unwrap();
        assert_eq!(q.nullity(), sols.len());
    }
}
