//! Fragmentation: the exact correspondence between scalar functions and
//! operators on a lattice and vector functions and matrix operators on a
//! finite-index sublattice, plus periodic-graph operators presented as
//! voltage graphs.
//!
//! Fixing coset representatives v_1, …, v_n of a finite-index sublattice Λ
//! of Z^s turns a scalar function f̃ on Z^s into the n-component function
//! λ ↦ (f̃(λ+v_1), …, f̃(λ+v_n)) on Λ, and a scalar convolution kernel into
//! an n×n matrix kernel intertwining with that identification.  The
//! representatives are the canonical residues of the triangular basis,
//! enumerated with the first coordinate varying fastest.

use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use crate::algebra::{GroupAlgebraElement, PeriodicFunction};
use crate::error::{Error, Result};
use crate::field::{self, Field, FieldElement};
use crate::lattice::{QuotientData, Sublattice};
use crate::matrix::MatrixOperator;

/// A finite-index sublattice together with the fixed, deterministic choice
/// of coset representatives used for fragmenting.
#[derive(Debug, Clone)]
pub struct FragmentationMap {
    sub: Sublattice,
    reps: Vec<Vec<i64>>,
    rep_index: BTreeMap<Vec<i64>, usize>,
}

impl FragmentationMap {
    /// Representatives are the points of the fundamental box of the
    /// triangular basis (coordinate i ranging over [0, basis[i][i])),
    /// enumerated with the first coordinate varying fastest.
    pub fn new(sub: Sublattice) -> Self {
        let s = sub.rank();
        let diag: Vec<i64> = (0..s).map(|i| sub.basis()[i][i]).collect();
        let mut reps = Vec::new();
        let mut v = vec![0i64; s];
        'outer: loop {
            reps.push(v.clone());
            let mut i = 0;
            loop {
                v[i] += 1;
                if v[i] < diag[i] {
                    continue 'outer;
                }
                v[i] = 0;
                i += 1;
                if i == s {
                    break 'outer;
                }
            }
        }
        let rep_index = reps
            .iter()
            .enumerate()
            .map(|(k, r)| (r.clone(), k))
            .collect();
        FragmentationMap {
            sub,
            reps,
            rep_index,
        }
    }

    pub fn sublattice(&self) -> &Sublattice {
        &self.sub
    }

    /// Rank of the ambient lattice being fragmented.
    pub fn big_rank(&self) -> usize {
        self.sub.rank()
    }

    /// Number of cosets = number of vector components after fragmenting.
    pub fn components(&self) -> usize {
        self.reps.len()
    }

    pub fn representatives(&self) -> &[Vec<i64>] {
        &self.reps
    }

    /// Splits v = v_i + μ with v_i a representative and μ in the sublattice;
    /// returns (i, coordinates of μ in the sublattice basis).
    pub fn decompose(&self, v: &[i64]) -> (usize, Vec<i64>) {
        let rep = self.sub.canonical_residue(v);
        let idx = self.rep_index[&rep];
        let diff: Vec<i64> = v.iter().zip(&rep).map(|(&a, &b)| a - b).collect();
        let coords = self
            .sub
            .coordinates(&diff)
            .expect("v minus its residue lies in the sublattice");
        (idx, coords)
    }

    /// The ambient lattice vector with the given sublattice coordinates.
    fn realize(&self, coords: &[i64]) -> Vec<i64> {
        let s = self.sub.rank();
        let basis = self.sub.basis();
        (0..s)
            .map(|row| (0..s).map(|j| basis[row][j] * coords[j]).sum())
            .collect()
    }
}

fn basis_columns(basis: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let s = basis.len();
    (0..s)
        .map(|j| (0..s).map(|i| basis[i][j]).collect())
        .collect()
}

fn matrix_from_columns(cols: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let s = cols.len();
    (0..s)
        .map(|i| (0..s).map(|j| cols[j][i]).collect())
        .collect()
}

/// Fragments a scalar periodic function on the ambient lattice into the
/// vector function λ ↦ (f̃(λ+v_1), …, f̃(λ+v_n)) on the fragmentation
/// sublattice.  The function's period lattice must be contained in the
/// fragmentation sublattice.
pub fn fragment_function(f: &PeriodicFunction, map: &FragmentationMap) -> Result<PeriodicFunction> {
    if f.components() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: f.components(),
        });
    }
    let tilde_q = f.quotient();
    if tilde_q.rank() != map.big_rank() {
        return Err(Error::RankMismatch {
            expected: map.big_rank(),
            got: tilde_q.rank(),
        });
    }
    let mut new_cols = Vec::new();
    for g in basis_columns(tilde_q.sublattice().basis()) {
        let c = map
            .sub
            .coordinates(&g)
            .ok_or(Error::IncompatiblePeriod)?;
        new_cols.push(c);
    }
    let new_sub = Sublattice::new(matrix_from_columns(&new_cols))?;
    let quotient = Arc::new(QuotientData::new(new_sub)?);
    let n = map.components();
    let mut out = PeriodicFunction::zero(&quotient, f.field(), n);
    for t in quotient.group_elements() {
        let lam = map.realize(&quotient.lift(&t));
        for (i, rep) in map.reps.iter().enumerate() {
            let point: Vec<i64> = lam.iter().zip(rep).map(|(&a, &b)| a + b).collect();
            let val = f.value(&tilde_q.project(&point))[0].clone();
            out.set_value(&t, i, val);
        }
    }
    Ok(out)
}

/// Inverse of [`fragment_function`]: reassembles a scalar function on the
/// ambient lattice from an n-component function on the sublattice, via
/// f̃(v_i + μ) = f_i(μ).
pub fn unfragment_function(
    f: &PeriodicFunction,
    map: &FragmentationMap,
) -> Result<PeriodicFunction> {
    let n = map.components();
    if f.components() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: f.components(),
        });
    }
    if f.quotient().rank() != map.big_rank() {
        return Err(Error::RankMismatch {
            expected: map.big_rank(),
            got: f.quotient().rank(),
        });
    }
    let tilde_sub = f.quotient().sublattice().transformed(map.sub.basis())?;
    let tilde_q = Arc::new(QuotientData::new(tilde_sub)?);
    let mut out = PeriodicFunction::zero(&tilde_q, f.field(), 1);
    for t in tilde_q.group_elements() {
        let v = tilde_q.lift(&t);
        let (i, coords) = map.decompose(&v);
        let val = f.value(&f.quotient().project(&coords))[i].clone();
        out.set_value(&t, 0, val);
    }
    Ok(out)
}

/// Fragments a scalar convolution kernel into the n×n matrix kernel B with
/// fragment(a * f̃) = B * fragment(f̃): writing v_i − w = v_j + μ for each
/// support point w of a, entry (i,j) picks up a(w)·δ_{−μ}.
pub fn fragment_operator(
    a: &GroupAlgebraElement,
    map: &FragmentationMap,
) -> Result<MatrixOperator> {
    if a.rank() != map.big_rank() {
        return Err(Error::RankMismatch {
            expected: map.big_rank(),
            got: a.rank(),
        });
    }
    let n = map.components();
    let s = map.big_rank();
    let mut entries = vec![vec![GroupAlgebraElement::zero(a.field(), s); n]; n];
    for (i, rep) in map.reps.iter().enumerate() {
        for (w, coeff) in a.support() {
            let target: Vec<i64> = rep.iter().zip(w).map(|(&a, &b)| a - b).collect();
            let (j, coords) = map.decompose(&target);
            let minus: Vec<i64> = coords.iter().map(|&x| -x).collect();
            entries[i][j].add_term(minus, coeff.clone());
        }
    }
    MatrixOperator::new(entries)
}

/// One directed arc of a voltage graph: tail → head, carrying an integer
/// translation label and a field weight.
#[derive(Debug, Clone)]
pub struct EdgeRecord {
    pub tail: usize,
    pub head: usize,
    pub label: Vec<i64>,
    pub weight: FieldElement,
}

/// A finite graph with arcs labeled by lattice translations: the quotient
/// presentation of a periodic graph.  Vertices are 0-based indices.
#[derive(Debug, Clone)]
pub struct VoltageGraph {
    vertices: usize,
    rank: usize,
    field: Field,
    arcs: Vec<EdgeRecord>,
}

impl VoltageGraph {
    /// Validates arc endpoints and label lengths, and unifies all weights
    /// (and the given base field) into one common field.
    pub fn new(
        vertices: usize,
        rank: usize,
        field: &Field,
        arcs: Vec<EdgeRecord>,
    ) -> Result<Self> {
        let mut target = field.clone();
        for arc in &arcs {
            if arc.tail >= vertices || arc.head >= vertices {
                return Err(Error::DimensionMismatch {
                    expected: vertices,
                    got: arc.tail.max(arc.head) + 1,
                });
            }
            if arc.label.len() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    got: arc.label.len(),
                });
            }
            let (probe, _) = field::unify(&target.zero(), &arc.weight.field().zero())?;
            target = probe.field().clone();
        }
        let arcs = arcs
            .into_iter()
            .map(|arc| {
                Ok(EdgeRecord {
                    weight: field::embed(&arc.weight, &target)?,
                    ..arc
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(VoltageGraph {
            vertices,
            rank,
            field: target,
            arcs,
        })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn arcs(&self) -> &[EdgeRecord] {
        &self.arcs
    }
}

/// The adjacency-type convolution operator of the periodic graph presented
/// by the voltage graph: entry (i,j) collects weight·δ_{−label} over all
/// arcs j → i.  With `laplace` set, the weighted in-degree times δ_0 is
/// subtracted from each diagonal entry, so constants are annihilated; note
/// that degrees reduce mod p and may vanish.
pub fn voltage_operator(vg: &VoltageGraph, laplace: bool) -> Result<MatrixOperator> {
    let n = vg.vertices;
    let mut entries = vec![vec![GroupAlgebraElement::zero(&vg.field, vg.rank); n]; n];
    let mut degrees = vec![vg.field.zero(); n];
    for arc in &vg.arcs {
        let minus: Vec<i64> = arc.label.iter().map(|&x| -x).collect();
        entries[arc.head][arc.tail].add_term(minus, arc.weight.clone());
        degrees[arc.head] = degrees[arc.head].add(&arc.weight);
    }
    if laplace {
        let origin = vec![0i64; vg.rank];
        for (i, d) in degrees.iter().enumerate() {
            entries[i][i].add_term(origin.clone(), d.neg());
        }
    }
    MatrixOperator::new(entries)
}

/// The maximal abelian cover of a finite connected multigraph, as a voltage
/// graph: a breadth-first spanning tree from vertex 0 (neighbors in
/// ascending vertex order) gets label 0; the s = |E| − |V| + 1 chords get
/// the standard basis vectors of Z^s in input order.  Every undirected edge
/// contributes two opposite arcs with opposite labels and weight 1; loops
/// are always chords.
pub fn max_abelian_cover(
    vertices: usize,
    edges: &[(usize, usize)],
    field: &Field,
) -> Result<VoltageGraph> {
    if vertices == 0 {
        return Err(Error::DisconnectedGraph);
    }
    for &(u, v) in edges {
        if u >= vertices || v >= vertices {
            return Err(Error::DimensionMismatch {
                expected: vertices,
                got: u.max(v) + 1,
            });
        }
    }
    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); vertices];
    for (k, &(u, v)) in edges.iter().enumerate() {
        adjacency[u].push((v, k));
        if u != v {
            adjacency[v].push((u, k));
        }
    }
    for nbrs in &mut adjacency {
        nbrs.sort_unstable();
    }
    let mut visited = vec![false; vertices];
    let mut tree_edge = vec![false; edges.len()];
    visited[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for &(other, k) in &adjacency[u] {
            if !visited[other] {
                visited[other] = true;
                tree_edge[k] = true;
                queue.push_back(other);
            }
        }
    }
    if visited.iter().any(|&v| !v) {
        return Err(Error::DisconnectedGraph);
    }
    let s = edges.len() - (vertices - 1);
    let mut arcs = Vec::with_capacity(2 * edges.len());
    let mut chord = 0usize;
    for (k, &(u, v)) in edges.iter().enumerate() {
        let mut label = vec![0i64; s];
        if !tree_edge[k] {
            label[chord] = 1;
            chord += 1;
        }
        let minus: Vec<i64> = label.iter().map(|&x| -x).collect();
        arcs.push(EdgeRecord {
            tail: u,
            head: v,
            label,
            weight: field.one(),
        });
        arcs.push(EdgeRecord {
            tail: v,
            head: u,
            label: minus,
            weight: field.one(),
        });
    }
    debug_assert_eq!(chord, s);
    VoltageGraph::new(vertices, s, field, arcs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{apply_convolution, convolve};
    use crate::matrix::char_det_symbol;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn delta(field: &Field, v: &[i64]) -> GroupAlgebraElement {
        GroupAlgebraElement::delta(field, v)
    }

    fn random_kernel(
        field: &Field,
        rank: usize,
        rng: &mut ChaCha8Rng,
    ) -> GroupAlgebraElement {
        let mut out = GroupAlgebraElement::zero(field, rank);
        for _ in 0..rng.gen_range(1..5) {
            let v: Vec<i64> = (0..rank).map(|_| rng.gen_range(-2..=2)).collect();
            out.add_term(v, field.from_u64(rng.gen_range(0..field.characteristic())));
        }
        out
    }

    fn random_function(
        quotient: &Arc<QuotientData>,
        field: &Field,
        rng: &mut ChaCha8Rng,
    ) -> PeriodicFunction {
        let mut f = PeriodicFunction::zero(quotient, field, 1);
        for t in quotient.group_elements() {
            f.set_value(&t, 0, field.from_u64(rng.gen_range(0..field.characteristic())));
        }
        f
    }

    #[test]
    fn delta_zero_fragments_to_the_identity_operator() {
        let f7 = Field::new(7, 1).unwrap();
        let map = FragmentationMap::new(Sublattice::new(vec![vec![4]]).unwrap());
        let b = fragment_operator(&delta(&f7, &[0]), &map).unwrap();
        assert!(b == MatrixOperator::identity(&f7, 4, 1));
    }

    #[test]
    fn shift_fragments_to_the_companion_operator() {
        let f5 = Field::new(5, 1).unwrap();
        for n in 2..=5usize {
            let map = FragmentationMap::new(Sublattice::new(vec![vec![n as i64]]).unwrap());
            let b = fragment_operator(&delta(&f5, &[1]), &map).unwrap();
            for i in 0..n - 1 {
                assert_eq!(b.entry(i + 1, i), &delta(&f5, &[0]));
            }
            assert_eq!(b.entry(0, n - 1), &delta(&f5, &[1]));
            let cd = char_det_symbol(&b).unwrap();
            let expected = delta(&f5, &[n as i64, 0])
                .sub(&delta(&f5, &[0, 1]))
                .unwrap();
            assert_eq!(cd, expected);
        }
    }

    #[test]
    fn plane_shifts_fragment_to_the_displayed_block_forms() {
        let f3 = Field::new(3, 1).unwrap();
        let map = FragmentationMap::new(Sublattice::diagonal(&[2, 2]).unwrap());
        assert_eq!(
            map.representatives(),
            &[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]
        );
        let b1 = fragment_operator(&delta(&f3, &[1, 0]), &map).unwrap();
        let b2 = fragment_operator(&delta(&f3, &[0, 1]), &map).unwrap();
        // First-direction shift: swaps the column pairs (0,1) and (2,3),
        // picking up the Λ-shift δ_{(1,0)} on the wrap-around entries.
        let d0 = delta(&f3, &[0, 0]);
        let d10 = delta(&f3, &[1, 0]);
        let d01 = delta(&f3, &[0, 1]);
        assert_eq!(b1.entry(0, 1), &d10);
        assert_eq!(b1.entry(1, 0), &d0);
        assert_eq!(b1.entry(2, 3), &d10);
        assert_eq!(b1.entry(3, 2), &d0);
        assert!(b1.entry(0, 0).is_zero() && b1.entry(2, 2).is_zero());
        // Second-direction shift: swaps (0,2) and (1,3).
        assert_eq!(b2.entry(0, 2), &d01);
        assert_eq!(b2.entry(2, 0), &d0);
        assert_eq!(b2.entry(1, 3), &d01);
        assert_eq!(b2.entry(3, 1), &d0);
        // The two shifts commute: B1·B2 = B2·B1 = fragment of δ_{(1,1)}.
        let both = fragment_operator(&delta(&f3, &[1, 1]), &map).unwrap();
        assert!(b1.mul(&b2).unwrap() == both);
        assert!(b2.mul(&b1).unwrap() == both);
    }

    #[test]
    fn fragmentation_intertwines_convolution() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        let f5 = Field::new(5, 1).unwrap();
        // Rank 1: fragment 2Z, functions periodic under 6Z.
        let map = FragmentationMap::new(Sublattice::new(vec![vec![2]]).unwrap());
        let tilde_q = Arc::new(QuotientData::new(Sublattice::new(vec![vec![6]]).unwrap()).unwrap());
        for _ in 0..10 {
            let a = random_kernel(&f5, 1, &mut rng);
            let f = random_function(&tilde_q, &f5, &mut rng);
            let lhs = fragment_function(&apply_convolution(&a, &f).unwrap(), &map).unwrap();
            let rhs = fragment_operator(&a, &map)
                .unwrap()
                .apply(&fragment_function(&f, &map).unwrap())
                .unwrap();
            assert!(lhs == rhs);
        }
        // Rank 2 with a non-diagonal fragmentation sublattice.
        let map2 = FragmentationMap::new(
            Sublattice::new(vec![vec![2, 0], vec![1, 3]]).unwrap(),
        );
        let tilde_q2 =
            Arc::new(QuotientData::new(Sublattice::diagonal(&[6, 6]).unwrap()).unwrap());
        for _ in 0..5 {
            let a = random_kernel(&f5, 2, &mut rng);
            let f = random_function(&tilde_q2, &f5, &mut rng);
            let lhs = fragment_function(&apply_convolution(&a, &f).unwrap(), &map2).unwrap();
            let rhs = fragment_operator(&a, &map2)
                .unwrap()
                .apply(&fragment_function(&f, &map2).unwrap())
                .unwrap();
            assert!(lhs == rhs);
        }
    }

    #[test]
    fn fragmentation_is_a_ring_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(72);
        let f2 = Field::new(2, 1).unwrap();
        let map = FragmentationMap::new(Sublattice::new(vec![vec![3]]).unwrap());
        for _ in 0..10 {
            let a = random_kernel(&f2, 1, &mut rng);
            let b = random_kernel(&f2, 1, &mut rng);
            let lhs = fragment_operator(&convolve(&a, &b).unwrap(), &map).unwrap();
            let rhs = fragment_operator(&a, &map)
                .unwrap()
                .mul(&fragment_operator(&b, &map).unwrap())
                .unwrap();
            assert!(lhs == rhs);
        }
    }

    #[test]
    fn fragment_then_unfragment_is_the_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(73);
        let f3 = Field::new(3, 1).unwrap();
        let map = FragmentationMap::new(
            Sublattice::new(vec![vec![2, 1], vec![0, 2]]).unwrap(),
        );
        let tilde_q =
            Arc::new(QuotientData::new(Sublattice::diagonal(&[4, 4]).unwrap()).unwrap());
        for _ in 0..5 {
            let f = random_function(&tilde_q, &f3, &mut rng);
            let fragged = fragment_function(&f, &map).unwrap();
            // Index drops by the fragmentation index, and p-saturation is
            // preserved.
            assert_eq!(
                fragged.quotient().index() * map.sublattice().index(),
                tilde_q.index()
            );
            assert!(fragged.quotient().sublattice().is_p_saturated(3));
            let back = unfragment_function(&fragged, &map).unwrap();
            assert!(back == f);
        }
    }

    #[test]
    fn character_fragments_to_an_elementary_vector_function() {
        // ξ^λ on Z, fragmented by 3Z, is z^μ·(1, ξ, ξ²) with z = ξ³.
        let f4 = Field::new(2, 2).unwrap();
        let xi = f4.generator();
        let tilde_q =
            Arc::new(QuotientData::new(Sublattice::new(vec![vec![3]]).unwrap()).unwrap());
        let mut f = PeriodicFunction::zero(&tilde_q, &f4, 1);
        for t in tilde_q.group_elements() {
            let lam = tilde_q.lift(&t)[0];
            f.set_value(&t, 0, xi.pow(lam).unwrap());
        }
        let map = FragmentationMap::new(Sublattice::new(vec![vec![3]]).unwrap());
        let fragged = fragment_function(&f, &map).unwrap();
        assert_eq!(fragged.quotient().index(), 1);
        let t0 = vec![0u64; 1];
        let vals = f.value(&tilde_q.project(&[0]));
        assert!(vals[0].is_one());
        let got = fragged.value(&t0);
        assert!(got[0].is_one());
        assert_eq!(got[1], xi);
        assert_eq!(got[2], xi.pow(2).unwrap());
    }

    #[test]
    fn incompatible_periods_are_rejected() {
        let f2 = Field::new(2, 1).unwrap();
        let map = FragmentationMap::new(Sublattice::new(vec![vec![2]]).unwrap());
        let tilde_q =
            Arc::new(QuotientData::new(Sublattice::new(vec![vec![3]]).unwrap()).unwrap());
        let f = PeriodicFunction::zero(&tilde_q, &f2, 1);
        assert!(matches!(
            fragment_function(&f, &map),
            Err(Error::IncompatiblePeriod)
        ));
    }

    #[test]
    fn loop_cover_gives_the_two_sided_shift() {
        let f2 = Field::new(2, 1).unwrap();
        let vg = max_abelian_cover(1, &[(0, 0)], &f2).unwrap();
        assert_eq!(vg.rank(), 1);
        let adj = voltage_operator(&vg, false).unwrap();
        let expected = delta(&f2, &[-1]).add(&delta(&f2, &[1])).unwrap();
        assert_eq!(adj.entry(0, 0), &expected);
        // Adding the identity recovers the three-point symmetric walk.
        let walk = adj.add(&MatrixOperator::identity(&f2, 1, 1)).unwrap();
        let full = delta(&f2, &[-1])
            .add(&delta(&f2, &[0]))
            .unwrap()
            .add(&delta(&f2, &[1]))
            .unwrap();
        assert_eq!(walk.entry(0, 0), &full);
    }

    #[test]
    fn theta_graph_cover_has_rank_two() {
        let f3 = Field::new(3, 1).unwrap();
        let vg = max_abelian_cover(2, &[(0, 1), (0, 1), (0, 1)], &f3).unwrap();
        assert_eq!(vg.rank(), 2);
        assert_eq!(vg.arcs().len(), 6);
        let adj = voltage_operator(&vg, false).unwrap();
        assert!(adj.entry(0, 0).is_zero() && adj.entry(1, 1).is_zero());
        assert_eq!(adj.entry(1, 0).support_len(), 3);
        assert_eq!(adj.entry(0, 1).support_len(), 3);
    }

    #[test]
    fn laplace_variant_annihilates_constants() {
        let f5 = Field::new(5, 1).unwrap();
        let vg = max_abelian_cover(3, &[(0, 1), (1, 2), (0, 2), (0, 0)], &f5).unwrap();
        assert_eq!(vg.rank(), 2);
        let lap = voltage_operator(&vg, true).unwrap();
        let sub = Sublattice::diagonal(&[3, 3]).unwrap();
        let quotient = Arc::new(QuotientData::new(sub).unwrap());
        let mut ones = PeriodicFunction::zero(&quotient, &f5, 3);
        for t in quotient.group_elements() {
            for i in 0..3 {
                ones.set_value(&t, i, f5.one());
            }
        }
        assert!(lap.apply(&ones).unwrap().is_zero());
    }

    #[test]
    fn tree_covers_and_disconnected_graphs() {
        let f2 = Field::new(2, 1).unwrap();
        let tree = max_abelian_cover(3, &[(0, 1), (1, 2)], &f2).unwrap();
        assert_eq!(tree.rank(), 0);
        assert!(tree.arcs().iter().all(|a| a.label.is_empty()));
        assert!(matches!(
            max_abelian_cover(2, &[], &f2),
            Err(Error::DisconnectedGraph)
        ));
    }
}
