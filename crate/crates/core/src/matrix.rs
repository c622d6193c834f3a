//! Matrix convolution operators and their exact spectral theory.
//!
//! An operator here is an n×n matrix of group-algebra elements acting on
//! vector-valued lattice functions by componentwise convolution.  Restricted
//! to functions periodic under a finite-index sublattice, the operator is
//! block-diagonalised by the discrete Fourier transform: one n×n *symbol*
//! block per character of the quotient, obtained by evaluating the Laurent
//! matrix of the operator at the inverse of the character's torus point.
//!
//! Everything downstream of the symbol — multipliers, kernels, eigenvalue
//! levels, generalized eigenvectors, Jordan chains — is computed exactly
//! over an explicitly constructed finite-field extension just large enough
//! to split every characteristic polynomial that occurs.

use std::collections::BTreeMap;

use crate::algebra::{
    convolve, evaluate_laurent, fourier, GroupAlgebraElement, LaurentPoly, PeriodicFunction,
};
use crate::arith;
use crate::error::{Error, Result};
use crate::field::{self, Field, FieldElement};
use crate::lattice::{dual_subgroup, QuotientData, Sublattice, TorusPoint};
use crate::linalg::{row_span_rank, FieldMatrix};
use crate::unipoly::{poly_roots, splitting_degree_lcm, UniPoly};

/// An n×n matrix of group-algebra elements over a common coefficient field,
/// acting on n-component lattice functions by convolution in each slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixOperator {
    field: Field,
    rank: usize,
    n: usize,
    entries: Vec<Vec<GroupAlgebraElement>>,
}

impl MatrixOperator {
    /// Builds an operator from a square grid of entries.  All entries must
    /// share the lattice rank; their coefficient fields are unified into a
    /// single common field.
    pub fn new(entries: Vec<Vec<GroupAlgebraElement>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::DimensionMismatch { expected: 1, got: 0 });
        }
        for row in &entries {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
        }
        let rank = entries[0][0].rank();
        let mut target = entries[0][0].field().clone();
        for row in &entries {
            for e in row {
                if e.rank() != rank {
                    return Err(Error::RankMismatch {
                        expected: rank,
                        got: e.rank(),
                    });
                }
                let (probe, _) = field::unify(&target.zero(), &e.field().zero())?;
                target = probe.field().clone();
            }
        }
        let entries = entries
            .into_iter()
            .map(|row| row.into_iter().map(|e| e.embed_into(&target)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        Ok(MatrixOperator {
            field: target,
            rank,
            n,
            entries,
        })
    }

    /// The identity operator: δ_0 on the diagonal.
    pub fn identity(field: &Field, n: usize, rank: usize) -> Self {
        let origin = vec![0i64; rank];
        let mut entries = vec![vec![GroupAlgebraElement::zero(field, rank); n]; n];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = GroupAlgebraElement::delta(field, &origin);
        }
        MatrixOperator {
            field: field.clone(),
            rank,
            n,
            entries,
        }
    }

    /// The zero operator.
    pub fn zero(field: &Field, n: usize, rank: usize) -> Self {
        MatrixOperator {
            field: field.clone(),
            rank,
            n,
            entries: vec![vec![GroupAlgebraElement::zero(field, rank); n]; n],
        }
    }

    /// Wraps a single group-algebra element as a 1×1 operator.
    pub fn scalar(a: &GroupAlgebraElement) -> Self {
        MatrixOperator {
            field: a.field().clone(),
            rank: a.rank(),
            n: 1,
            entries: vec![vec![a.clone()]],
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of rows (= columns = function components acted on).
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &GroupAlgebraElement {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<GroupAlgebraElement>] {
        &self.entries
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let mut entries = Vec::with_capacity(self.n);
        for (ra, rb) in self.entries.iter().zip(&other.entries) {
            entries.push(
                ra.iter()
                    .zip(rb)
                    .map(|(a, b)| a.add(b))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        MatrixOperator::new(entries)
    }

    pub fn scale(&self, c: &FieldElement) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| e.scale(c)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        MatrixOperator::new(entries)
    }

    /// Operator composition: entries convolve and sum as in matrix product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let mut entries = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let mut row = Vec::with_capacity(self.n);
            for j in 0..self.n {
                let mut acc = GroupAlgebraElement::zero(&self.field, self.rank);
                for k in 0..self.n {
                    acc = acc.add(&convolve(&self.entries[i][k], &other.entries[k][j])?)?;
                }
                row.push(acc);
            }
            entries.push(row);
        }
        MatrixOperator::new(entries)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = MatrixOperator::identity(&self.field, self.n, self.rank);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Applies the operator to a periodic function with n components:
    /// (A f)_i (λ) = sum_j sum_v a_ij(v) f_j(λ - v).
    pub fn apply(&self, f: &PeriodicFunction) -> Result<PeriodicFunction> {
        if f.components() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: f.components(),
            });
        }
        if f.quotient().rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                got: f.quotient().rank(),
            });
        }
        let q = f.quotient().clone();
        let (probe, _) = field::unify(&self.field.zero(), &f.field().zero())?;
        let target = probe.field().clone();
        let mut out = PeriodicFunction::zero(&q, &target, self.n);
        for t in q.group_elements() {
            let lam = q.lift(&t);
            for i in 0..self.n {
                let mut acc = target.zero();
                for j in 0..self.n {
                    for (v, c) in self.entries[i][j].support() {
                        let shifted: Vec<i64> =
                            lam.iter().zip(v).map(|(&x, &y)| x - y).collect();
                        let fv = &f.value(&q.project(&shifted))[j];
                        let c = field::embed(c, &target)?;
                        acc = acc.add(&c.mul(&field::embed(fv, &target)?));
                    }
                }
                out.set_value(&t, i, acc);
            }
        }
        Ok(out)
    }
}

/// The symbol of the operator at a torus point z: the n×n field matrix
/// Â(z) whose (i,j) entry is the Laurent polynomial of a_ij evaluated at
/// z^(-1).  Entries land in the unified field of the operator coefficients
/// and the point coordinates.
pub fn symbol_matrix(a: &MatrixOperator, z: &TorusPoint) -> Result<FieldMatrix> {
    if z.rank() != a.rank {
        return Err(Error::RankMismatch {
            expected: a.rank,
            got: z.rank(),
        });
    }
    let zinv = z.inverse();
    let mut rows = Vec::with_capacity(a.n);
    for i in 0..a.n {
        let mut row = Vec::with_capacity(a.n);
        for j in 0..a.n {
            row.push(evaluate_laurent(&fourier(&a.entries[i][j]), &zinv)?);
        }
        rows.push(row);
    }
    let target = rows[0][0].field().clone();
    Ok(FieldMatrix::from_rows(&target, rows))
}

/// Determinant of a square grid of group-algebra elements by cofactor
/// expansion along the first row.  The empty grid has determinant δ_0.
fn laurent_minor_det(
    field: &Field,
    rank: usize,
    m: &[Vec<GroupAlgebraElement>],
) -> Result<GroupAlgebraElement> {
    let k = m.len();
    if k == 0 {
        return Ok(GroupAlgebraElement::delta(field, &vec![0i64; rank]));
    }
    if k == 1 {
        return Ok(m[0][0].clone());
    }
    let mut acc = GroupAlgebraElement::zero(field, rank);
    for j in 0..k {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<GroupAlgebraElement>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let term = convolve(&m[0][j], &laurent_minor_det(field, rank, &minor)?)?;
        acc = if j % 2 == 0 {
            acc.add(&term)?
        } else {
            acc.sub(&term)?
        };
    }
    Ok(acc)
}

fn grid_submatrix(
    entries: &[Vec<GroupAlgebraElement>],
    rows: &[usize],
    cols: &[usize],
) -> Vec<Vec<GroupAlgebraElement>> {
    rows.iter()
        .map(|&i| cols.iter().map(|&j| entries[i][j].clone()).collect())
        .collect()
}

/// Determinant of the operator's Laurent matrix, as a Laurent polynomial.
/// Evaluating it at z^(-1) gives det of the symbol at z.
pub fn det_symbol(a: &MatrixOperator) -> Result<LaurentPoly> {
    laurent_minor_det(&a.field, a.rank, &a.entries)
}

/// The characteristic determinant det(x·I − Â) as a Laurent polynomial in
/// rank+1 variables: coordinate 0 is the exponent of the fresh variable x,
/// coordinates 1.. are the original lattice directions.
pub fn char_det_symbol(a: &MatrixOperator) -> Result<LaurentPoly> {
    let s = a.rank;
    let lift = |g: &GroupAlgebraElement| -> GroupAlgebraElement {
        let mut out = GroupAlgebraElement::zero(&a.field, s + 1);
        for (v, c) in g.support() {
            let mut w = Vec::with_capacity(s + 1);
            w.push(0i64);
            w.extend_from_slice(v);
            out.add_term(w, c.clone());
        }
        out
    };
    let mut x_vec = vec![0i64; s + 1];
    x_vec[0] = 1;
    let x = GroupAlgebraElement::delta(&a.field, &x_vec);
    let mut grid = Vec::with_capacity(a.n);
    for i in 0..a.n {
        let mut row = Vec::with_capacity(a.n);
        for j in 0..a.n {
            let lifted = lift(&a.entries[i][j]);
            if i == j {
                row.push(x.sub(&lifted)?);
            } else {
                row.push(lifted.neg());
            }
        }
        grid.push(row);
    }
    laurent_minor_det(&a.field, s + 1, &grid)
}

/// Characteristic polynomial det(x·I − S) of a square field matrix, by
/// cofactor expansion over the polynomial ring.
pub(crate) fn char_poly(s: &FieldMatrix) -> UniPoly {
    let n = s.rows();
    let f = s.field();
    let grid: Vec<Vec<UniPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = UniPoly::constant(s.at(i, j).neg());
                    if i == j {
                        c.add(&UniPoly::x(f))
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    poly_det(&grid, f)
}

fn poly_det(m: &[Vec<UniPoly>], f: &Field) -> UniPoly {
    let k = m.len();
    if k == 0 {
        return UniPoly::one(f);
    }
    if k == 1 {
        return m[0][0].clone();
    }
    let mut acc = UniPoly::zero(f);
    for j in 0..k {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<UniPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let term = m[0][j].mul(&poly_det(&minor, f));
        acc = if j % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}

/// Searches for a nonzero finitely supported solution of A·f = 0.
///
/// One exists iff the Laurent determinant of A vanishes identically; in that
/// case a solution is produced from the cofactors of a maximal nonsingular
/// square minor (Cramer's rule applied to a free column), and verified by
/// convolution before it is returned.
pub fn finite_support_solution(a: &MatrixOperator) -> Result<Option<Vec<GroupAlgebraElement>>> {
    if !det_symbol(a)?.is_zero() {
        return Ok(None);
    }
    let n = a.n;
    // Greedily grow a nonsingular square minor.
    let mut rows: Vec<usize> = Vec::new();
    let mut cols: Vec<usize> = Vec::new();
    loop {
        let mut extended = false;
        'search: for i in 0..n {
            if rows.contains(&i) {
                continue;
            }
            for j in 0..n {
                if cols.contains(&j) {
                    continue;
                }
                let mut r2 = rows.clone();
                r2.push(i);
                let mut c2 = cols.clone();
                c2.push(j);
                let sub = grid_submatrix(&a.entries, &r2, &c2);
                if !laurent_minor_det(&a.field, a.rank, &sub)?.is_zero() {
                    rows = r2;
                    cols = c2;
                    extended = true;
                    break 'search;
                }
            }
        }
        if !extended {
            break;
        }
    }
    let r = rows.len();
    debug_assert!(r < n, "a singular Laurent matrix has rank below n");
    let free = (0..n).find(|j| !cols.contains(j)).expect("rank < n");
    let minor = grid_submatrix(&a.entries, &rows, &cols);
    let minor_det = laurent_minor_det(&a.field, a.rank, &minor)?;
    let mut x = vec![GroupAlgebraElement::zero(&a.field, a.rank); n];
    x[free] = minor_det;
    for k in 0..r {
        let mut replaced = minor.clone();
        for (idx, &i) in rows.iter().enumerate() {
            replaced[idx][k] = a.entries[i][free].clone();
        }
        x[cols[k]] = laurent_minor_det(&a.field, a.rank, &replaced)?.neg();
    }
    // Verify A·x = 0 exactly before handing the solution out.
    for i in 0..n {
        let mut acc = GroupAlgebraElement::zero(&a.field, a.rank);
        for j in 0..n {
            acc = acc.add(&convolve(&a.entries[i][j], &x[j])?)?;
        }
        assert!(acc.is_zero(), "candidate finite-support solution failed verification");
    }
    debug_assert!(x.iter().any(|e| !e.is_zero()));
    Ok(Some(x))
}

/// Characters z of the quotient at which the symbol is singular, in
/// character enumeration order.
pub fn multipliers(a: &MatrixOperator, sub: &Sublattice) -> Result<Vec<TorusPoint>> {
    if sub.rank() != a.rank {
        return Err(Error::RankMismatch {
            expected: a.rank,
            got: sub.rank(),
        });
    }
    let chars = dual_subgroup(sub, a.field.characteristic())?;
    let mut out = Vec::new();
    for z in chars {
        if symbol_matrix(a, &z)?.det().is_zero() {
            out.push(z);
        }
    }
    Ok(out)
}

/// Number of characters at which the symbol is singular.
pub fn count_multipliers(a: &MatrixOperator, sub: &Sublattice) -> Result<u64> {
    Ok(multipliers(a, sub)?.len() as u64)
}

/// One elementary spectral vector: at the torus point z, the coefficient
/// vector u satisfies (Â(z) − level·I)^depth · u = 0 with depth minimal.
/// Depth 1 means an honest eigenvector.
#[derive(Debug, Clone)]
pub struct ElementarySolution {
    pub z: TorusPoint,
    pub level: FieldElement,
    pub u: Vec<FieldElement>,
    pub depth: u32,
}

impl ElementarySolution {
    /// Realizes the solution as the periodic function u·z^λ on the quotient.
    pub fn render(&self, quotient: &std::sync::Arc<QuotientData>) -> Result<PeriodicFunction> {
        PeriodicFunction::from_elementary(quotient, &self.z, &self.u)
    }
}

/// A basis of the periodic kernel of the operator: for every multiplier z,
/// one elementary solution per kernel vector of the symbol at z.
pub fn periodic_solutions(a: &MatrixOperator, sub: &Sublattice) -> Result<Vec<ElementarySolution>> {
    let mut out = Vec::new();
    for z in multipliers(a, sub)? {
        let s = symbol_matrix(a, &z)?;
        let zero = s.field().zero();
        for u in s.kernel_basis() {
            out.push(ElementarySolution {
                z: z.clone(),
                level: zero.clone(),
                u,
                depth: 1,
            });
        }
    }
    Ok(out)
}

fn vec_is_zero(v: &[FieldElement]) -> bool {
    v.iter().all(FieldElement::is_zero)
}

/// Minimal d ≥ 0 with N^d·u = 0; the input must lie in the generalized
/// kernel of N.
fn nilpotent_depth(n: &FieldMatrix, u: &[FieldElement]) -> u32 {
    let mut v = u.to_vec();
    let mut d = 0u32;
    while !vec_is_zero(&v) {
        v = n.mul_vec(&v);
        d += 1;
        assert!(
            (d as usize) <= n.rows(),
            "vector lies outside the generalized kernel"
        );
    }
    d
}

/// A basis of the generalized eigenspace of the operator at the given level,
/// over all characters of the quotient: per character z, the kernel of
/// (Â(z) − level·I)^n together with each vector's minimal depth.
pub fn generalized_eigenspace(
    a: &MatrixOperator,
    level: &FieldElement,
    sub: &Sublattice,
) -> Result<Vec<ElementarySolution>> {
    if sub.rank() != a.rank {
        return Err(Error::RankMismatch {
            expected: a.rank,
            got: sub.rank(),
        });
    }
    let chars = dual_subgroup(sub, a.field.characteristic())?;
    let mut out = Vec::new();
    for z in chars {
        let s = symbol_matrix(a, &z)?;
        let (level_w, _) = field::unify(level, &s.field().zero())?;
        let s = s.embed_into(level_w.field())?;
        let nmat = s.sub_scalar_diag(&level_w);
        let nn = nmat.pow(a.n as u32);
        for u in nn.kernel_basis() {
            let depth = nilpotent_depth(&nmat, &u);
            out.push(ElementarySolution {
                z: z.clone(),
                level: level_w.clone(),
                u,
                depth,
            });
        }
    }
    Ok(out)
}

/// Shared setup for full spectral computations: the characters of the
/// quotient and all symbol matrices embedded into one ambient field large
/// enough to split every characteristic polynomial.
struct SpectralContext {
    ambient: Field,
    chars: Vec<TorusPoint>,
    symbols: Vec<FieldMatrix>,
}

fn spectral_context(a: &MatrixOperator, sub: &Sublattice) -> Result<SpectralContext> {
    if sub.rank() != a.rank {
        return Err(Error::RankMismatch {
            expected: a.rank,
            got: sub.rank(),
        });
    }
    let p = a.field.characteristic();
    let chars = dual_subgroup(sub, p)?;
    let mut base_symbols = Vec::with_capacity(chars.len());
    for z in &chars {
        base_symbols.push(symbol_matrix(a, z)?);
    }
    let base_field = base_symbols[0].field().clone();
    debug_assert!(base_symbols.iter().all(|s| s.field() == &base_field));
    let mut rel_degree: u64 = 1;
    for s in &base_symbols {
        let cp = char_poly(s);
        rel_degree = arith::lcm_u64(rel_degree, u64::from(splitting_degree_lcm(&cp)?));
    }
    let ambient_degree = u32::try_from(u64::from(base_field.degree()) * rel_degree)
        .map_err(|_| Error::FieldTooLarge {
            p,
            m: u32::MAX,
        })?;
    let ambient = Field::new(p, ambient_degree)?;
    let symbols = base_symbols
        .iter()
        .map(|s| s.embed_into(&ambient))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectralContext {
        ambient,
        chars,
        symbols,
    })
}

fn distinct_eigenvalues(s: &FieldMatrix) -> Result<Vec<(FieldElement, usize)>> {
    let cp = char_poly(s);
    let deg = cp.deg().expect("characteristic polynomial is nonzero");
    let coeffs: Vec<FieldElement> = (0..=deg).map(|i| cp.coeff(i)).collect();
    let roots = poly_roots(&coeffs, s.field())?;
    debug_assert_eq!(
        roots.len(),
        s.rows(),
        "characteristic polynomial must split in the ambient field"
    );
    let mut out: Vec<(FieldElement, usize)> = Vec::new();
    for r in roots {
        match out.last_mut() {
            Some((prev, mult)) if *prev == r => *mult += 1,
            _ => out.push((r, 1)),
        }
    }
    Ok(out)
}

/// All spectral data grouped by eigenvalue level.
#[derive(Debug, Clone)]
pub struct LevelData {
    /// Total dimension of the generalized eigenspace at this level.
    pub dimension: u64,
    /// Elementary solutions spanning it, grouped by character.
    pub basis: Vec<ElementarySolution>,
}

/// The complete spectral decomposition of the operator on the quotient:
/// every eigenvalue with its generalized eigenspace, all over one ambient
/// splitting field.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub ambient: Field,
    pub levels: BTreeMap<FieldElement, LevelData>,
    pub total_dimension: u64,
}

impl SpectralDecomposition {
    /// Dimension of the generalized eigenspace at the given level (0 if the
    /// level does not occur).  The query is embedded into the ambient field.
    pub fn dimension(&self, level: &FieldElement) -> Result<u64> {
        let key = field::embed(level, &self.ambient)?;
        Ok(self.levels.get(&key).map_or(0, |l| l.dimension))
    }
}

/// Computes the full spectral decomposition over a single ambient splitting
/// field: for each character z and each eigenvalue μ of the symbol at z, a
/// basis of the generalized eigenspace ker (Â(z) − μI)^n with depths.
pub fn spectral_decomposition(
    a: &MatrixOperator,
    sub: &Sublattice,
) -> Result<SpectralDecomposition> {
    let ctx = spectral_context(a, sub)?;
    let mut levels: BTreeMap<FieldElement, LevelData> = BTreeMap::new();
    for (z, s) in ctx.chars.iter().zip(&ctx.symbols) {
        for (mu, mult) in distinct_eigenvalues(s)? {
            let nmat = s.sub_scalar_diag(&mu);
            let nn = nmat.pow(a.n as u32);
            let kernel = nn.kernel_basis();
            debug_assert_eq!(kernel.len(), mult);
            let entry = levels.entry(mu.clone()).or_insert_with(|| LevelData {
                dimension: 0,
                basis: Vec::new(),
            });
            for u in kernel {
                let depth = nilpotent_depth(&nmat, &u);
                entry.basis.push(ElementarySolution {
                    z: z.clone(),
                    level: mu.clone(),
                    u,
                    depth,
                });
                entry.dimension += 1;
            }
        }
    }
    let total_dimension: u64 = levels.values().map(|l| l.dimension).sum();
    debug_assert_eq!(total_dimension, a.n as u64 * sub.index());
    Ok(SpectralDecomposition {
        ambient: ctx.ambient,
        levels,
        total_dimension,
    })
}

/// One Jordan chain: vectors listed eigenvector first, so N maps each
/// vector to its predecessor and kills the first.
#[derive(Debug, Clone)]
pub struct JordanChain {
    pub level: FieldElement,
    pub vectors: Vec<Vec<FieldElement>>,
}

/// The Jordan data of one symbol block.
#[derive(Debug, Clone)]
pub struct PointSpectrum {
    pub z: TorusPoint,
    pub chains: Vec<JordanChain>,
}

impl PointSpectrum {
    /// Block sizes as (level, size) pairs in chain order.
    pub fn block_sizes(&self) -> Vec<(FieldElement, usize)> {
        self.chains
            .iter()
            .map(|c| (c.level.clone(), c.vectors.len()))
            .collect()
    }
}

/// Jordan normal form data for every character of the quotient, over one
/// shared ambient splitting field.
#[derive(Debug, Clone)]
pub struct JordanReport {
    pub ambient: Field,
    pub points: Vec<PointSpectrum>,
}

impl JordanReport {
    /// Multiset of Jordan blocks over all characters: (level, size) → count.
    pub fn block_multiset(&self) -> BTreeMap<(FieldElement, usize), u64> {
        let mut out = BTreeMap::new();
        for pt in &self.points {
            for (level, size) in pt.block_sizes() {
                *out.entry((level, size)).or_insert(0) += 1;
            }
        }
        out
    }
}

/// Jordan chains of one matrix at one eigenvalue, via the kernel filtration
/// of N = S − μI: new chain generators at depth k are kernel vectors of N^k
/// independent of ker N^(k-1) and of the shadows of deeper chains.
fn jordan_chains_at(s: &FieldMatrix, mu: &FieldElement) -> Vec<JordanChain> {
    let f = s.field().clone();
    let n = s.rows();
    let nmat = s.sub_scalar_diag(mu);
    let mut filtration: Vec<Vec<Vec<FieldElement>>> = Vec::new();
    let mut power = FieldMatrix::identity(&f, n);
    loop {
        power = power.mul(&nmat);
        let kernel = power.kernel_basis();
        if kernel.is_empty() {
            return Vec::new();
        }
        if let Some(last) = filtration.last() {
            if kernel.len() == last.len() {
                break;
            }
        }
        filtration.push(kernel);
        if filtration.len() > n {
            break;
        }
    }
    let max_depth = filtration.len();
    let mut gens: Vec<(Vec<FieldElement>, usize)> = Vec::new();
    for k in (1..=max_depth).rev() {
        let mut span: Vec<Vec<FieldElement>> = if k >= 2 {
            filtration[k - 2].clone()
        } else {
            Vec::new()
        };
        for (g, d) in &gens {
            if *d > k {
                let mut v = g.clone();
                for _ in 0..(*d - k) {
                    v = nmat.mul_vec(&v);
                }
                span.push(v);
            }
        }
        let mut rank = row_span_rank(&f, &span);
        for u in &filtration[k - 1] {
            let mut trial = span.clone();
            trial.push(u.clone());
            let trial_rank = row_span_rank(&f, &trial);
            if trial_rank > rank {
                span = trial;
                rank = trial_rank;
                gens.push((u.clone(), k));
            }
        }
    }
    let mut chains = Vec::new();
    for (g, d) in gens {
        let mut vectors = vec![g];
        for _ in 1..d {
            let next = nmat.mul_vec(vectors.last().unwrap());
            vectors.push(next);
        }
        vectors.reverse();
        debug_assert!(vec_is_zero(&nmat.mul_vec(&vectors[0])));
        chains.push(JordanChain {
            level: mu.clone(),
            vectors,
        });
    }
    chains
}

#[cfg(debug_assertions)]
fn verify_jordan(s: &FieldMatrix, chains: &[JordanChain]) {
    let f = s.field();
    let n = s.rows();
    let mut p = FieldMatrix::zero(f, n, n);
    let mut col = 0;
    for chain in chains {
        for v in &chain.vectors {
            for i in 0..n {
                p.set(i, col, v[i].clone());
            }
            col += 1;
        }
    }
    assert_eq!(col, n, "jordan chains must span the whole space");
    let pinv = p.inverse().expect("jordan basis must be invertible");
    let got = pinv.mul(&s.mul(&p));
    let mut expected = FieldMatrix::zero(f, n, n);
    let mut off = 0;
    for chain in chains {
        let d = chain.vectors.len();
        for t in 0..d {
            expected.set(off + t, off + t, chain.level.clone());
            if t + 1 < d {
                expected.set(off + t, off + t + 1, f.one());
            }
        }
        off += d;
    }
    assert!(got == expected, "conjugation does not yield the jordan form");
}

/// Computes Jordan chains of every symbol block over one shared ambient
/// splitting field.  In debug builds each block's chains are verified by
/// exact conjugation: P^(-1)·Â(z)·P equals the block-diagonal Jordan form.
pub fn jordan_basis(a: &MatrixOperator, sub: &Sublattice) -> Result<JordanReport> {
    let ctx = spectral_context(a, sub)?;
    let mut points = Vec::new();
    for (z, s) in ctx.chars.iter().zip(&ctx.symbols) {
        let mut chains = Vec::new();
        for (mu, mult) in distinct_eigenvalues(s)? {
            let at_mu = jordan_chains_at(s, &mu);
            debug_assert_eq!(
                at_mu.iter().map(|c| c.vectors.len()).sum::<usize>(),
                mult
            );
            chains.extend(at_mu);
        }
        #[cfg(debug_assertions)]
        verify_jordan(s, &chains);
        points.push(PointSpectrum {
            z: z.clone(),
            chains,
        });
    }
    Ok(JordanReport {
        ambient: ctx.ambient,
        points,
    })
}

/// Evaluates a Laurent polynomial in k variables on k pairwise commuting
/// operators.  Negative exponents require the matching inverse operator to
/// be supplied; a missing one reports which variable needed it.
pub fn evaluate_phi_of_operator(
    phi: &LaurentPoly,
    ops: &[(MatrixOperator, Option<MatrixOperator>)],
) -> Result<MatrixOperator> {
    if phi.rank() != ops.len() || ops.is_empty() {
        return Err(Error::RankMismatch {
            expected: phi.rank().max(1),
            got: ops.len(),
        });
    }
    let n = ops[0].0.size();
    let rank = ops[0].0.rank();
    let mut target = ops[0].0.field().clone();
    for (op, inv) in ops {
        for cand in std::iter::once(op).chain(inv.iter()) {
            if cand.size() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: cand.size(),
                });
            }
            if cand.rank() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    got: cand.rank(),
                });
            }
            let (probe, _) = field::unify(&target.zero(), &cand.field().zero())?;
            target = probe.field().clone();
        }
    }
    let mut acc = MatrixOperator::zero(&target, n, rank);
    for (exps, c) in phi.support() {
        let mut term = MatrixOperator::identity(&target, n, rank);
        for (var, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let base = if e > 0 {
                &ops[var].0
            } else {
                ops[var]
                    .1
                    .as_ref()
                    .ok_or(Error::MissingInverse { variable: var })?
            };
            let power = u32::try_from(e.unsigned_abs()).expect("exponent fits in u32");
            term = term.mul(&base.pow(power)?)?;
        }
        acc = acc.add(&term.scale(c)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::apply_convolution;
    use crate::scalar::symbolic_variety_points;
    use std::sync::Arc;

    fn delta(field: &Field, v: &[i64]) -> GroupAlgebraElement {
        GroupAlgebraElement::delta(field, v)
    }

    #[test]
    fn identity_operator_has_no_multipliers_or_finite_solutions() {
        let f2 = Field::new(2, 1).unwrap();
        let id = MatrixOperator::identity(&f2, 2, 1);
        let sub = Sublattice::new(vec![vec![3]]).unwrap();
        assert_eq!(count_multipliers(&id, &sub).unwrap(), 0);
        assert!(finite_support_solution(&id).unwrap().is_none());
        let spec = spectral_decomposition(&id, &sub).unwrap();
        assert_eq!(spec.total_dimension, 6);
        assert_eq!(spec.levels.len(), 1);
        let one = spec.ambient.one();
        assert_eq!(spec.dimension(&one).unwrap(), 6);
        assert!(spec.levels[&one].basis.iter().all(|s| s.depth == 1));
    }

    #[test]
    fn nilpotent_block_produces_depth_two_chains() {
        let f3 = Field::new(3, 1).unwrap();
        let z1 = GroupAlgebraElement::zero(&f3, 1);
        let a = MatrixOperator::new(vec![
            vec![z1.clone(), delta(&f3, &[0])],
            vec![z1.clone(), z1.clone()],
        ])
        .unwrap();
        let sub = Sublattice::new(vec![vec![2]]).unwrap();
        let spec = spectral_decomposition(&a, &sub).unwrap();
        let zero = spec.ambient.zero();
        assert_eq!(spec.total_dimension, 4);
        assert_eq!(spec.dimension(&zero).unwrap(), 4);
        let depths: Vec<u32> = spec.levels[&zero].basis.iter().map(|s| s.depth).collect();
        assert_eq!(depths.iter().filter(|&&d| d == 1).count(), 2);
        assert_eq!(depths.iter().filter(|&&d| d == 2).count(), 2);

        let jordan = jordan_basis(&a, &sub).unwrap();
        assert_eq!(jordan.points.len(), 2);
        for pt in &jordan.points {
            assert_eq!(pt.chains.len(), 1);
            assert_eq!(pt.chains[0].vectors.len(), 2);
            assert!(pt.chains[0].level.is_zero());
        }
        let blocks = jordan.block_multiset();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[&(jordan.ambient.zero(), 2)], 2);
    }

    #[test]
    fn scalar_wrap_multipliers_match_symbolic_variety() {
        let f2 = Field::new(2, 1).unwrap();
        let a = delta(&f2, &[0]).add(&delta(&f2, &[1])).unwrap();
        let sub = Sublattice::new(vec![vec![3]]).unwrap();
        let wrapped = MatrixOperator::scalar(&a);
        let from_matrix = multipliers(&wrapped, &sub).unwrap();
        let from_scalar = symbolic_variety_points(&a, &sub).unwrap();
        assert_eq!(from_matrix.len(), from_scalar.len());
        for (x, y) in from_matrix.iter().zip(&from_scalar) {
            assert_eq!(x.coords(), y.coords());
        }
    }

    #[test]
    fn companion_operator_has_cyclic_characteristic_determinant() {
        // Entries a_{i+1,i} = δ_0 and a_{0,n-1} = δ_{+1}: the characteristic
        // determinant must be x^n − z.
        let f5 = Field::new(5, 1).unwrap();
        for n in 2..=4usize {
            let zero = GroupAlgebraElement::zero(&f5, 1);
            let mut entries = vec![vec![zero.clone(); n]; n];
            for i in 0..n - 1 {
                entries[i + 1][i] = delta(&f5, &[0]);
            }
            entries[0][n - 1] = delta(&f5, &[1]);
            let a = MatrixOperator::new(entries).unwrap();
            let cd = char_det_symbol(&a).unwrap();
            let expected = GroupAlgebraElement::delta(&f5, &[n as i64, 0])
                .sub(&GroupAlgebraElement::delta(&f5, &[0, 1]))
                .unwrap();
            assert_eq!(cd, expected);
        }
    }

    #[test]
    fn finite_support_solution_found_for_dependent_rows() {
        let f2 = Field::new(2, 1).unwrap();
        let a01 = delta(&f2, &[1]).add(&delta(&f2, &[0])).unwrap();
        let row = vec![delta(&f2, &[2]), a01];
        let a = MatrixOperator::new(vec![row.clone(), row]).unwrap();
        let sol = finite_support_solution(&a).unwrap().expect("singular");
        assert!(sol.iter().any(|e| !e.is_zero()));

        // Triangular with monomial diagonal: determinant is a unit.
        let zero = GroupAlgebraElement::zero(&f2, 1);
        let b = MatrixOperator::new(vec![
            vec![delta(&f2, &[0]), delta(&f2, &[3])],
            vec![zero.clone(), delta(&f2, &[-1])],
        ])
        .unwrap();
        assert!(finite_support_solution(&b).unwrap().is_none());
    }

    #[test]
    fn apply_matches_componentwise_convolution_for_diagonal_operator() {
        let f3 = Field::new(3, 1).unwrap();
        let sub = Sublattice::new(vec![vec![4]]).unwrap();
        let quotient = Arc::new(QuotientData::new(sub).unwrap());
        let kernel = delta(&f3, &[1]).add(&delta(&f3, &[-1]).scale(&f3.from_u64(2)).unwrap()).unwrap();
        let zero = GroupAlgebraElement::zero(&f3, 1);
        let a = MatrixOperator::new(vec![
            vec![kernel.clone(), zero.clone()],
            vec![zero.clone(), kernel.clone()],
        ])
        .unwrap();
        let mut f = PeriodicFunction::zero(&quotient, &f3, 2);
        f.set_value(&[1], 0, f3.one());
        f.set_value(&[2], 1, f3.from_u64(2));
        let applied = a.apply(&f).unwrap();
        for comp in 0..2 {
            let mut scalar_part = PeriodicFunction::zero(&quotient, &f3, 1);
            for (t, vals) in f.iter() {
                scalar_part.set_value(t, 0, vals[comp].clone());
            }
            let expected = apply_convolution(&kernel, &scalar_part).unwrap();
            for (t, vals) in applied.iter() {
                assert_eq!(vals[comp], expected.value(t)[0]);
            }
        }
    }

    #[test]
    fn periodic_solutions_render_to_actual_kernel_functions() {
        // Rows sum against each other: [[δ_1, δ_1],[δ_0, δ_0]] kills (u,-u)·z^λ
        // whenever the symbol is singular — here the symbol is singular at
        // every character.
        let f2 = Field::new(2, 1).unwrap();
        let a = MatrixOperator::new(vec![
            vec![delta(&f2, &[1]), delta(&f2, &[1])],
            vec![delta(&f2, &[0]), delta(&f2, &[0])],
        ])
        .unwrap();
        let sub = Sublattice::new(vec![vec![3]]).unwrap();
        let quotient = Arc::new(QuotientData::new(sub.clone()).unwrap());
        let sols = periodic_solutions(&a, &sub).unwrap();
        assert_eq!(sols.len(), 3);
        for s in &sols {
            assert_eq!(s.depth, 1);
            let f = s.render(&quotient).unwrap();
            assert!(!f.is_zero());
            let image = a.apply(&f).unwrap();
            assert!(image.is_zero());
        }
    }

    #[test]
    fn phi_evaluation_on_shift_matches_direct_convolution() {
        let f2 = Field::new(2, 1).unwrap();
        let shift = MatrixOperator::scalar(&delta(&f2, &[1]));
        let inv = MatrixOperator::scalar(&delta(&f2, &[-1]));
        // φ(t) = t^2 + t^{-1}
        let phi = GroupAlgebraElement::from_terms(
            &f2,
            1,
            vec![(vec![2], f2.one()), (vec![-1], f2.one())],
        )
        .unwrap();
        let missing = evaluate_phi_of_operator(&phi, &[(shift.clone(), None)]);
        assert!(matches!(
            missing,
            Err(Error::MissingInverse { variable: 0 })
        ));
        let got = evaluate_phi_of_operator(&phi, &[(shift, Some(inv))]).unwrap();
        let expected = delta(&f2, &[2]).add(&delta(&f2, &[-1])).unwrap();
        assert_eq!(got.entry(0, 0), &expected);
    }

    #[test]
    fn phi_maps_eigenvalue_levels_pointwise() {
        // A = shift on Z/5 over GF(2); φ(t) = t + 1. The levels of φ(A) must
        // be φ applied to the levels of A.
        let f2 = Field::new(2, 1).unwrap();
        let a = MatrixOperator::scalar(&delta(&f2, &[1]));
        let sub = Sublattice::new(vec![vec![5]]).unwrap();
        let phi = GroupAlgebraElement::from_terms(
            &f2,
            1,
            vec![(vec![1], f2.one()), (vec![0], f2.one())],
        )
        .unwrap();
        let phi_a = evaluate_phi_of_operator(&phi, &[(a.clone(), None)]).unwrap();
        let spec_a = spectral_decomposition(&a, &sub).unwrap();
        let spec_phi = spectral_decomposition(&phi_a, &sub).unwrap();
        let mut expected: BTreeMap<FieldElement, u64> = BTreeMap::new();
        for (mu, data) in &spec_a.levels {
            let image = field::embed(&mu.add(&spec_a.ambient.one()), &spec_phi.ambient).unwrap();
            *expected.entry(image).or_insert(0) += data.dimension;
        }
        let got: BTreeMap<FieldElement, u64> = spec_phi
            .levels
            .iter()
            .map(|(mu, d)| (mu.clone(), d.dimension))
            .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn det_symbol_evaluates_to_symbol_determinant() {
        let f3 = Field::new(3, 1).unwrap();
        let a = MatrixOperator::new(vec![
            vec![
                delta(&f3, &[1]).add(&delta(&f3, &[0])).unwrap(),
                delta(&f3, &[-1]),
            ],
            vec![delta(&f3, &[2]), delta(&f3, &[0]).scale(&f3.from_u64(2)).unwrap()],
        ])
        .unwrap();
        let sub = Sublattice::new(vec![vec![4]]).unwrap();
        let d = det_symbol(&a).unwrap();
        for z in dual_subgroup(&sub, 3).unwrap() {
            let via_laurent = evaluate_laurent(&d, &z.inverse()).unwrap();
            let via_matrix = symbol_matrix(&a, &z).unwrap().det();
            let (x, y) = field::unify(&via_laurent, &via_matrix).unwrap();
            assert_eq!(x, y);
        }
    }
}
