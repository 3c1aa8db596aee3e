//! Treewidth-driven sparse factorization producing peeled implicit LDL and
//! LU transcripts.

mod frontal;
mod lu;
mod transcript;
mod tree_ldl;

pub use frontal::{peel_vertex, Complementation};
pub use lu::{sparse_lu, SparseLU};
pub use transcript::{apply_transcript, explicit_ldl_from_transcript, ApplyMode, Transcript, Transform, TransformKind};
pub use tree_ldl::{tree_ldl, tree_ldl_with, TreeLdlOptions, TreeLdlOutput};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::DenseMatrix;
use crate::tree::Graph;

/// H-symmetric sparse matrix stored as the sorted upper triangle
/// (diagonal included) of each row.
#[derive(Debug, Clone)]
pub struct SparseSym<F: Field> {
    field: F,
    rows: Vec<Vec<(usize, F::Elem)>>,
}

impl<F: Field> SparseSym<F> {
    /// From `(i, j, value)` entries; the mirror `(j, i)` is implied.
    /// Entries given twice for the same position must agree.
    pub fn from_entries(field: &F, n: usize, entries: impl IntoIterator<Item = (usize, usize, F::Elem)>) -> Result<Self> {
        let mut rows: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); n];
        for (i, j, v) in entries {
            if i >= n || j >= n {
                return Err(Error::DimensionMismatch {
                    op: "sparse entry",
                    left: (i, j),
                    right: (n, n),
                });
            }
            let (r, c, v) = if i <= j { (i, j, v) } else { (j, i, field.conj(&v)) };
            rows[r].push((c, v));
        }
        for (r, row) in rows.iter_mut().enumerate() {
            row.sort_by_key(|e| e.0);
            let mut out: Vec<(usize, F::Elem)> = Vec::with_capacity(row.len());
            for (c, v) in row.drain(..) {
                match out.last() {
                    Some((lc, lv)) if *lc == c => {
                        if *lv != v {
                            return Err(Error::InternalInvariantViolation(format!(
                                "conflicting values at ({r}, {c})"
                            )));
                        }
                    }
                    _ => out.push((c, v)),
                }
            }
            out.retain(|(_, v)| !field.is_zero(v));
            *row = out;
        }
        Ok(SparseSym { field: field.clone(), rows })
    }

    /// Reads the upper triangle of a dense matrix.
    pub fn from_dense(a: &DenseMatrix<F>) -> Self {
        let f = a.field();
        let n = a.rows();
        let rows = (0..n)
            .map(|i| {
                (i..n)
                    .filter(|&j| !f.is_zero(a.get(i, j)))
                    .map(|j| (j, a.get(i, j).clone()))
                    .collect()
            })
            .collect();
        SparseSym { field: f.clone(), rows }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Stored upper-triangle entries of row `i`: `(j, a_ij)` with `j >= i`.
    pub fn upper_row(&self, i: usize) -> &[(usize, F::Elem)] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> F::Elem {
        let (r, c) = if i <= j { (i, j) } else { (j, i) };
        match self.rows[r].binary_search_by_key(&c, |e| e.0) {
            Ok(k) if i <= j => self.rows[r][k].1.clone(),
            Ok(k) => self.field.conj(&self.rows[r][k].1),
            Err(_) => self.field.zero(),
        }
    }

    /// Structural nonzeros of the full matrix.
    pub fn nnz(&self) -> usize {
        self.rows
            .iter()
            .enumerate()
            .map(|(i, r)| r.iter().map(|(j, _)| if *j == i { 1 } else { 2 }).sum::<usize>())
            .sum()
    }

    pub fn graph(&self) -> Graph {
        let edges = self
            .rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().filter(move |(j, _)| *j != i).map(move |(j, _)| (i, *j)));
        Graph::from_edges(self.n(), edges)
    }

    pub fn to_dense(&self) -> DenseMatrix<F> {
        let f = &self.field;
        let mut a = DenseMatrix::zeros(f, self.n(), self.n());
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                a.set(i, *j, v.clone());
                if *j != i {
                    a.set(*j, i, f.conj(v));
                }
            }
        }
        a
    }
}
