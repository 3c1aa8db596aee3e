//! Dense exact matrices, permutations and the kernels every factorization
//! reduces to: products, triangular inversion and triangular solves.

pub mod mul;
pub mod packed;
mod perm;
pub mod tri;

pub use perm::Permutation;
pub use tri::{Side, TriShape};

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;

/// Row-major dense matrix over a field context.
#[derive(Clone)]
pub struct DenseMatrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
    field: F,
}

impl<F: Field> PartialEq for DenseMatrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<F: Field> Eq for DenseMatrix<F> {}

impl<F: Field> std::fmt::Debug for DenseMatrix<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "DenseMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| self.field.format(x)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> DenseMatrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
            field: field.clone(),
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(field: &F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        DenseMatrix {
            rows,
            cols,
            data,
            field: field.clone(),
        }
    }

    pub fn from_vec(field: &F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "from_vec",
                left: (rows, cols),
                right: (data.len(), 1),
            });
        }
        Ok(DenseMatrix {
            rows,
            cols,
            data,
            field: field.clone(),
        })
    }

    /// Builds a matrix from small integers, reduced into the field.
    pub fn from_i64(field: &F, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Self::from_fn(field, r, c, |i, j| field.from_i64(rows[i][j]))
    }

    pub fn random<R: Rng + ?Sized>(field: &F, rows: usize, cols: usize, rng: &mut R) -> Self {
        Self::from_fn(field, rows, cols, |_, _| field.random(rng))
    }

    /// Random H-symmetric matrix.
    pub fn random_symmetric<R: Rng + ?Sized>(field: &F, n: usize, rng: &mut R) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            for j in i..n {
                let v = field.random(rng);
                m.set(j, i, field.conj(&v));
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut F::Elem {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [F::Elem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|x| !self.field.is_zero(x)).count()
    }

    /// Contiguous block `[r0, r1) x [c0, c1)`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self::from_fn(&self.field, r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Submatrix on arbitrary row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(&self.field, rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.select(rows, &cols)
    }

    pub fn select_cols(&self, cols: &[usize]) -> Self {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.select(&rows, cols)
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    /// Conjugate transpose.
    pub fn h(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| self.field.conj(self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_h_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i..self.cols).all(|j| *self.get(i, j) == self.field.conj(self.get(j, i))))
    }

    pub fn neg(&self) -> Self {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| self.field.neg(x)).collect(),
            field: self.field.clone(),
        }
    }

    fn check_same_shape(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "add")?;
        Ok(self.zip(other, |f, a, b| f.add(a, b)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "sub")?;
        Ok(self.zip(other, |f, a, b| f.sub(a, b)))
    }

    /// Elementwise sum; panics on shape mismatch.
    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("matrix add shape")
    }

    /// Elementwise difference; panics on shape mismatch.
    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("matrix sub shape")
    }

    pub fn sub_assign(&mut self, other: &Self) {
        assert_eq!(self.shape(), other.shape(), "matrix sub_assign shape");
        let f = self.field.clone();
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a = f.sub(a, b);
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.shape(), other.shape(), "matrix add_assign shape");
        let f = self.field.clone();
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a = f.add(a, b);
        }
    }

    fn zip(&self, other: &Self, op: impl Fn(&F, &F::Elem, &F::Elem) -> F::Elem) -> Self {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| op(&self.field, a, b))
                .collect(),
            field: self.field.clone(),
        }
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| self.field.mul(x, s)).collect(),
            field: self.field.clone(),
        }
    }

    /// Product using the context's Strassen cutoff.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        mul::matmul(self, other, self.field.strassen_cutoff())
    }

    /// Product; panics on dimension mismatch.
    pub fn mul(&self, other: &Self) -> Self {
        self.matmul(other).expect("matrix product dimensions")
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack rows");
        let mut m = Self::zeros(&self.field, self.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(0, self.cols, other);
        m
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack cols");
        let mut m = Self::zeros(&self.field, self.rows + other.rows, self.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, 0, other);
        m
    }

    /// `result[i][j] = self[p.fwd[i]][q.fwd[j]]`.
    pub fn permute(&self, p: &Permutation, q: &Permutation) -> Result<Self> {
        if p.len() != self.rows || q.len() != self.cols {
            return Err(Error::DimensionMismatch {
                op: "permute",
                left: self.shape(),
                right: (p.len(), q.len()),
            });
        }
        Ok(self.select(p.as_slice(), q.as_slice()))
    }

    /// Symmetric permutation `P^T A P` in the `permute` convention.
    pub fn permute_sym(&self, p: &Permutation) -> Result<Self> {
        self.permute(p, p)
    }

    pub fn map_field<G: Field>(&self, g: &G, f: impl Fn(&F::Elem) -> G::Elem) -> DenseMatrix<G> {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
            field: g.clone(),
        }
    }

    /// Same entries, different field context (e.g. one with a counter attached).
    pub fn with_field(mut self, field: &F) -> Self {
        self.field = field.clone();
        self
    }
}
