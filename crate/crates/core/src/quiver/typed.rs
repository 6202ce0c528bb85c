use super::{AlgebraElement, VertexId};
use crate::error::{Error, Result};
use crate::linalg::ScalarRing;

/// Rectangular matrix over the path algebra. Entry `(j, i)` runs from
/// `col_types[i]` to `row_types[j]`; the matrix acts on columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TypedMatrix {
    ring: ScalarRing,
    row_types: Vec<VertexId>,
    col_types: Vec<VertexId>,
    entries: Vec<AlgebraElement>,
}

impl TypedMatrix {
    pub fn zeros(ring: ScalarRing, row_types: Vec<VertexId>, col_types: Vec<VertexId>) -> Self {
        let mut entries = Vec::with_capacity(row_types.len() * col_types.len());
        for &r in &row_types {
            for &c in &col_types {
                entries.push(AlgebraElement::zero(ring, c, r));
            }
        }
        Self {
            ring,
            row_types,
            col_types,
            entries,
        }
    }

    pub fn identity(ring: ScalarRing, types: Vec<VertexId>) -> Self {
        let mut m = Self::zeros(ring, types.clone(), types.clone());
        for (i, &v) in types.iter().enumerate() {
            m.entries[i * types.len() + i] = AlgebraElement::identity(ring, v);
        }
        m
    }

    pub fn from_rows(
        ring: ScalarRing,
        row_types: Vec<VertexId>,
        col_types: Vec<VertexId>,
        rows: Vec<Vec<AlgebraElement>>,
    ) -> Result<Self> {
        if rows.len() != row_types.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} rows for {} row types",
                rows.len(),
                row_types.len()
            )));
        }
        let mut m = Self::zeros(ring, row_types, col_types);
        for (j, row) in rows.into_iter().enumerate() {
            if row.len() != m.col_types.len() {
                return Err(Error::ShapeMismatch(format!(
                    "row of length {} for {} columns",
                    row.len(),
                    m.col_types.len()
                )));
            }
            for (i, e) in row.into_iter().enumerate() {
                m.set(j, i, e)?;
            }
        }
        Ok(m)
    }

    pub fn ring(&self) -> ScalarRing {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.row_types.len()
    }

    pub fn cols(&self) -> usize {
        self.col_types.len()
    }

    pub fn row_types(&self) -> &[VertexId] {
        &self.row_types
    }

    pub fn col_types(&self) -> &[VertexId] {
        &self.col_types
    }

    pub fn get(&self, j: usize, i: usize) -> &AlgebraElement {
        &self.entries[j * self.col_types.len() + i]
    }

    pub fn set(&mut self, j: usize, i: usize, e: AlgebraElement) -> Result<()> {
        if e.ring() != self.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), e.ring().to_string()));
        }
        if e.src() != self.col_types[i] || e.tgt() != self.row_types[j] {
            return Err(Error::TypeMismatch(format!("entry ({j}, {i}) has the wrong endpoints")));
        }
        let n = self.col_types.len();
        self.entries[j * n + i] = e;
        Ok(())
    }

    pub fn row(&self, j: usize) -> &[AlgebraElement] {
        let n = self.col_types.len();
        &self.entries[j * n..(j + 1) * n]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(AlgebraElement::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        if self.col_types != other.row_types {
            return Err(Error::TypeMismatch("column types do not match row types".into()));
        }
        let mut out = Self::zeros(self.ring, self.row_types.clone(), other.col_types.clone());
        let n = other.cols();
        for j in 0..self.rows() {
            for i in 0..n {
                let mut acc = AlgebraElement::zero(self.ring, other.col_types[i], self.row_types[j]);
                for k in 0..self.cols() {
                    let p = self.get(j, k).mul(other.get(k, i))?;
                    acc = acc.add(&p)?;
                }
                out.entries[j * n + i] = acc;
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.row_types != other.row_types || self.col_types != other.col_types {
            return Err(Error::TypeMismatch("adding matrices of different types".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            entries,
            ..self.clone()
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            entries: self.entries.iter().map(AlgebraElement::neg).collect(),
            ..self.clone()
        }
    }

    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.row_types != other.row_types {
            return Err(Error::TypeMismatch("hstack with different row types".into()));
        }
        let mut col_types = self.col_types.clone();
        col_types.extend_from_slice(&other.col_types);
        let mut entries = Vec::with_capacity(self.entries.len() + other.entries.len());
        for j in 0..self.rows() {
            entries.extend_from_slice(self.row(j));
            entries.extend_from_slice(other.row(j));
        }
        Ok(Self {
            ring: self.ring,
            row_types: self.row_types.clone(),
            col_types,
            entries,
        })
    }

    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.col_types != other.col_types {
            return Err(Error::TypeMismatch("vstack with different column types".into()));
        }
        let mut row_types = self.row_types.clone();
        row_types.extend_from_slice(&other.row_types);
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(Self {
            ring: self.ring,
            row_types,
            col_types: self.col_types.clone(),
            entries,
        })
    }

    pub fn block_diag(&self, other: &Self) -> Result<Self> {
        let top = self.hstack(&Self::zeros(self.ring, self.row_types.clone(), other.col_types.clone()))?;
        let bottom = Self::zeros(self.ring, other.row_types.clone(), self.col_types.clone()).hstack(other)?;
        top.vstack(&bottom)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut entries = Vec::new();
        for &j in idx {
            entries.extend_from_slice(self.row(j));
        }
        Self {
            ring: self.ring,
            row_types: idx.iter().map(|&j| self.row_types[j]).collect(),
            col_types: self.col_types.clone(),
            entries,
        }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let mut entries = Vec::new();
        for j in 0..self.rows() {
            for &i in idx {
                entries.push(self.get(j, i).clone());
            }
        }
        Self {
            ring: self.ring,
            row_types: self.row_types.clone(),
            col_types: idx.iter().map(|&i| self.col_types[i]).collect(),
            entries,
        }
    }

    /// Rows that are not entirely zero.
    pub fn nonzero_rows(&self) -> Vec<usize> {
        (0..self.rows())
            .filter(|&j| self.row(j).iter().any(|e| !e.is_zero()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::samples::a2;
    use crate::quiver::ArrowId;

    #[test]
    fn identity_laws() {
        let q = a2();
        let r = ScalarRing::Rationals;
        let (v1, v2) = (VertexId(0), VertexId(1));
        let a = TypedMatrix::from_rows(r, vec![v2], vec![v1], vec![vec![AlgebraElement::arrow(r, &q, ArrowId(0))]])
            .unwrap();
        let e1 = TypedMatrix::identity(r, vec![v1]);
        assert_eq!(a.mul(&e1).unwrap(), a);
        assert_eq!(TypedMatrix::identity(r, vec![v2]).mul(&a).unwrap(), a);
        assert!(e1.mul(&a).is_err());
    }

    #[test]
    fn typing_enforced() {
        let q = a2();
        let r = ScalarRing::Rationals;
        let mut m = TypedMatrix::zeros(r, vec![VertexId(0)], vec![VertexId(1)]);
        assert!(m.set(0, 0, AlgebraElement::arrow(r, &q, ArrowId(0))).is_err());
    }
}
