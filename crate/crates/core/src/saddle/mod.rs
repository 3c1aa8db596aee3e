//! Saddle-point systems `[[A, B^H], [B, 0]]`: constraint-complemented
//! partial LDL by interleaved edge eliminations or from an LU of `B^H`,
//! and completion to a full LDL.

mod complete;
mod gamma;
mod schilders;

pub use complete::{complete_saddle_ldl, skeleton_to_ldl_columns};
pub use gamma::gamma_eliminate_partial;
pub use schilders::{schilders_partial_ldl, schilders_partial_ldl_with, TriangularMode};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{DenseMatrix, Permutation};

/// `M = [[A, B^H], [B, 0]]`; the zero block is implicit.
#[derive(Debug, Clone)]
pub struct SaddleSystem<F: Field> {
    pub a: DenseMatrix<F>,
    pub b: DenseMatrix<F>,
}

impl<F: Field> SaddleSystem<F> {
    pub fn new(a: DenseMatrix<F>, b: DenseMatrix<F>) -> Result<Self> {
        if !a.is_square() || b.cols() != a.rows() {
            return Err(Error::DimensionMismatch {
                op: "saddle system",
                left: a.shape(),
                right: b.shape(),
            });
        }
        Ok(SaddleSystem { a, b })
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn m(&self) -> usize {
        self.b.rows()
    }

    /// The assembled (n+m) x (n+m) matrix.
    pub fn assemble(&self) -> DenseMatrix<F> {
        let (n, m) = (self.n(), self.m());
        let mut full = DenseMatrix::zeros(self.a.field(), n + m, n + m);
        full.set_block(0, 0, &self.a);
        full.set_block(0, n, &self.b.h());
        full.set_block(n, 0, &self.b);
        full
    }
}

/// Constraint-complemented partial LDL. With `V = Y - [D; 0]`:
/// `P^T B^H Q = L U`, and `P^T A P - V L^H - L V^H - L D L^H` vanishes
/// outside its trailing (n-r) x (n-r) block.
#[derive(Debug, Clone)]
pub struct PartialLDL<F: Field> {
    pub p: Permutation,
    pub q: Permutation,
    pub y: DenseMatrix<F>,
    pub l: DenseMatrix<F>,
    pub u: DenseMatrix<F>,
    pub d: Vec<F::Elem>,
    pub r: usize,
}

impl<F: Field> PartialLDL<F> {
    /// `V = Y - [D; 0]`.
    pub fn v(&self) -> DenseMatrix<F> {
        let f = self.y.field();
        let mut v = self.y.clone();
        for (k, dk) in self.d.iter().enumerate() {
            let x = f.sub(v.get(k, k), dk);
            v.set(k, k, x);
        }
        v
    }

    pub fn d_matrix(&self) -> DenseMatrix<F> {
        let f = self.y.field();
        let mut d = DenseMatrix::zeros(f, self.r, self.r);
        for (k, dk) in self.d.iter().enumerate() {
            d.set(k, k, dk.clone());
        }
        d
    }

    /// Total nonzeros across `Y`, `L`, `U` and `D`.
    pub fn nnz(&self) -> usize {
        let f = self.y.field();
        self.y.nnz() + self.l.nnz() + self.u.nnz() + self.d.iter().filter(|x| !f.is_zero(x)).count()
    }
}

/// Trailing block of `P^T A P - V L^H - L V^H - L D L^H`, checking that
/// everything outside it is zero.
pub fn residual_schur<F: Field>(s: &SaddleSystem<F>, fac: &PartialLDL<F>) -> Result<DenseMatrix<F>> {
    let n = s.n();
    let r = fac.r;
    let v = fac.v();
    let mut res = s.a.permute_sym(&fac.p)?;
    if r > 0 {
        let vl = v.mul(&fac.l.h());
        res.sub_assign(&vl);
        res.sub_assign(&vl.h());
        res.sub_assign(&fac.l.mul(&fac.d_matrix()).mul(&fac.l.h()));
    }
    let f = s.a.field();
    for i in 0..n {
        for j in 0..n {
            if (i < r || j < r) && !f.is_zero(res.get(i, j)) {
                return Err(Error::ResidualLeakage { row: i, col: j });
            }
        }
    }
    Ok(res.block(r, n, r, n))
}
