//! Dense matrices over a finite field: reduced row echelon form, rank,
//! kernels, determinants, inverses. All pivoting is deterministic (first
//! nonzero entry scanning top-down, columns left to right), so reported
//! kernel bases are canonical.

use crate::field::{Field, FieldElement};

#[derive(Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl std::fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "FieldMatrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl FieldMatrix {
    pub fn zero(field: &Field, rows: usize, cols: usize) -> FieldMatrix {
        FieldMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> FieldMatrix {
        let mut m = FieldMatrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<FieldElement>>) -> FieldMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = FieldMatrix::zero(field, r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        debug_assert!(v.field() == &self.field, "element from a different field");
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldElement::is_zero)
    }

    pub fn add(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.add(b))
            .collect();
        FieldMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.sub(b))
            .collect();
        FieldMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: &FieldElement) -> FieldMatrix {
        FieldMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn mul(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = FieldMatrix::zero(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j).add(&a.mul(other.at(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for j in 0..self.cols {
                    acc = acc.add(&self.at(i, j).mul(&v[j]));
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, e: u32) -> FieldMatrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = FieldMatrix::identity(&self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Subtracts c from the diagonal: self - c*I.
    pub fn sub_scalar_diag(&self, c: &FieldElement) -> FieldMatrix {
        assert_eq!(self.rows, self.cols);
        let mut out = self.clone();
        for i in 0..self.rows {
            let v = out.at(i, i).sub(c);
            out.set(i, i, v);
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form and the pivot-column list.
    pub fn rref(&self) -> (FieldMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m.at(r, c).inv().expect("pivot is nonzero");
            for j in 0..m.cols {
                let v = m.at(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.at(i, c).is_zero() {
                    let f = m.at(i, c).clone();
                    for j in 0..m.cols {
                        let v = m.at(i, j).sub(&f.mul(m.at(r, j)));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Canonical kernel basis from the RREF: one vector per free column, in
    /// ascending free-column order, with a 1 in the free coordinate.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElement>> {
        let (r, pivots) = self.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = r.at(row, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    pub fn det(&self) -> FieldElement {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let mut det = self.field.one();
        for c in 0..m.cols {
            let Some(pr) = (c..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                return self.field.zero();
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = det.neg();
            }
            let pivot = m.at(c, c).clone();
            det = det.mul(&pivot);
            let inv = pivot.inv().unwrap();
            for i in c + 1..m.rows {
                if !m.at(i, c).is_zero() {
                    let f = m.at(i, c).mul(&inv);
                    for j in c..m.cols {
                        let v = m.at(i, j).sub(&f.mul(m.at(c, j)));
                        m.set(i, j, v);
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<FieldMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        // RREF of [A | I]
        let mut aug = FieldMatrix::zero(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = FieldMatrix::zero(&self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.at(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Embeds every entry into the given extension field.
    pub fn embed_into(&self, target: &Field) -> crate::error::Result<FieldMatrix> {
        let mut out = FieldMatrix::zero(target, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, crate::field::embed(self.at(i, j), target)?);
            }
        }
        Ok(out)
    }
}

/// Rank of the span of a set of vectors (rows).
pub fn row_span_rank(field: &Field, vectors: &[Vec<FieldElement>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    FieldMatrix::from_rows(field, vectors.to_vec()).rank()
}
