//! Implicit factor as a sequence of elementary transforms.
//!
//! With `M_0 = A`, each transform `E_k = I + U_k` satisfies
//! `M_{k-1} = E_k M_k E_k^H`, where `M_k` has the pivot (or peeled) rows and
//! columns cleared apart from the `D` block. The last `M` holds `D` at the
//! pivot positions, so `A = L D L^H` with `L = E_1 ... E_m S` and `S`
//! selecting the pivot positions in elimination order.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::dense::{DBlock, LDLResult};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{DenseMatrix, Permutation};

/// Sparse vector as `(index, value)` pairs.
pub type SparseVec<E> = Vec<(usize, E)>;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Transform<E> {
    /// `U = col e_pivot^T`; `col` excludes the pivot itself.
    VertexElim { pivot: usize, col: SparseVec<E>, d: E },
    /// Two columns at once, coupled by an antidiagonal block.
    EdgeElim {
        pivots: (usize, usize),
        cols: [SparseVec<E>; 2],
        block: DBlock<E>,
    },
    /// `U = e_target coeffs^T`: the target row is the `coeffs` combination
    /// of live rows, so clearing it loses nothing.
    Peel { target: usize, coeffs: SparseVec<E> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformKind {
    Elimination,
    Peel,
}

impl<E> Transform<E> {
    pub fn kind(&self) -> TransformKind {
        match self {
            Transform::Peel { .. } => TransformKind::Peel,
            _ => TransformKind::Elimination,
        }
    }

    /// Off-diagonal nonzeros of the transform. An edge elimination counts
    /// its pivot coupling plus the longer of its two columns.
    pub fn off_diag_nnz(&self) -> usize {
        match self {
            Transform::VertexElim { col, .. } => col.len(),
            Transform::EdgeElim { cols, .. } => 1 + cols[0].len().max(cols[1].len()),
            Transform::Peel { coeffs, .. } => coeffs.len(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Transcript<E> {
    pub n: usize,
    pub r: usize,
    pub transforms: Vec<Transform<E>>,
    pub d: Vec<DBlock<E>>,
    /// Pivot vertices in the order of `D`.
    pub pivot_order: Vec<usize>,
    pub peeled: Vec<usize>,
    /// Largest frontal bag seen; sets the explicit-extraction threshold.
    pub max_bag: usize,
}

impl<E> Transcript<E> {
    pub fn new(n: usize) -> Self {
        Transcript {
            n,
            r: 0,
            transforms: Vec::new(),
            d: Vec::new(),
            pivot_order: Vec::new(),
            peeled: Vec::new(),
            max_bag: 0,
        }
    }

    pub fn peel_count(&self) -> usize {
        self.peeled.len()
    }

    pub fn max_off_diag_nnz(&self) -> usize {
        self.transforms.iter().map(Transform::off_diag_nnz).max().unwrap_or(0)
    }

    pub fn total_off_diag_nnz(&self) -> usize {
        self.transforms.iter().map(Transform::off_diag_nnz).sum()
    }

    /// Number of maximal runs of transforms of one kind.
    pub fn block_count(&self) -> usize {
        let kinds: Vec<_> = self.transforms.iter().map(Transform::kind).collect();
        kinds.iter().enumerate().filter(|(i, k)| *i == 0 || kinds[i - 1] != **k).count()
    }

    /// Whether explicit extraction stays within the `4 * max_bag` corank
    /// bound it is cheap for.
    pub fn explicit_is_cheap(&self) -> bool {
        self.peeled.len() <= 4 * self.max_bag.max(1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApplyMode {
    /// `L X` for `X` of shape r x c.
    L,
    /// `L^H X` for `X` of shape n x c.
    Lh,
    /// The `X` with `L X = Y`, for `Y` of shape n x c.
    SolveL,
}

fn axpy<F: Field>(y: &mut DenseMatrix<F>, dst: usize, a: &F::Elem, src: usize) {
    let f = y.field().clone();
    let s = y.row(src).to_vec();
    for (d, v) in y.row_mut(dst).iter_mut().zip(&s) {
        *d = f.add(d, &f.mul(a, v));
    }
}

fn elim_columns<E>(t: &Transform<E>) -> Vec<(usize, &SparseVec<E>)> {
    match t {
        Transform::VertexElim { pivot, col, .. } => vec![(*pivot, col)],
        Transform::EdgeElim { pivots, cols, .. } => vec![(pivots.0, &cols[0]), (pivots.1, &cols[1])],
        Transform::Peel { .. } => Vec::new(),
    }
}

pub fn apply_transcript<F: Field>(t: &Transcript<F::Elem>, x: &DenseMatrix<F>, mode: ApplyMode) -> Result<DenseMatrix<F>> {
    let f = x.field().clone();
    let want = if mode == ApplyMode::L { t.r } else { t.n };
    if x.rows() != want {
        return Err(Error::DimensionMismatch {
            op: "apply_transcript",
            left: (t.n, t.r),
            right: x.shape(),
        });
    }
    match mode {
        ApplyMode::L => {
            let mut y = DenseMatrix::zeros(&f, t.n, x.cols());
            for (k, &p) in t.pivot_order.iter().enumerate() {
                y.row_mut(p).clone_from_slice(x.row(k));
            }
            for tr in t.transforms.iter().rev() {
                match tr {
                    Transform::Peel { target, coeffs } => {
                        for (s, c) in coeffs {
                            axpy(&mut y, *target, c, *s);
                        }
                    }
                    _ => {
                        for (p, col) in elim_columns(tr) {
                            for (i, v) in col {
                                axpy(&mut y, *i, v, p);
                            }
                        }
                    }
                }
            }
            Ok(y)
        }
        ApplyMode::Lh => {
            let mut z = x.clone();
            for tr in &t.transforms {
                match tr {
                    Transform::Peel { target, coeffs } => {
                        for (s, c) in coeffs {
                            axpy(&mut z, *s, &f.conj(c), *target);
                        }
                    }
                    _ => {
                        for (p, col) in elim_columns(tr) {
                            for (i, v) in col {
                                axpy(&mut z, p, &f.conj(v), *i);
                            }
                        }
                    }
                }
            }
            Ok(z.select_rows(&t.pivot_order))
        }
        ApplyMode::SolveL => {
            let mut z = x.clone();
            for tr in &t.transforms {
                match tr {
                    Transform::Peel { target, coeffs } => {
                        for (s, c) in coeffs {
                            axpy(&mut z, *target, &f.neg(c), *s);
                        }
                    }
                    _ => {
                        for (p, col) in elim_columns(tr) {
                            for (i, v) in col {
                                axpy(&mut z, *i, &f.neg(v), p);
                            }
                        }
                    }
                }
            }
            let mut is_pivot = vec![false; t.n];
            for &p in &t.pivot_order {
                is_pivot[p] = true;
            }
            if (0..t.n).any(|i| !is_pivot[i] && z.row(i).iter().any(|v| !f.is_zero(v))) {
                return Err(Error::InconsistentSystem);
            }
            Ok(z.select_rows(&t.pivot_order))
        }
    }
}

/// Dense `P^T A P = L D L^H` from a complete transcript. Rows of peeled
/// vertices are rebuilt from their coefficients, walking the transcript
/// backwards so each combination only sees later columns.
pub fn explicit_ldl_from_transcript<F: Field>(f: &F, t: &Transcript<F::Elem>) -> Result<LDLResult<F>> {
    if t.pivot_order.len() + t.peeled.len() != t.n {
        return Err(Error::InternalInvariantViolation(
            "transcript leaves vertices neither eliminated nor peeled".into(),
        ));
    }
    if !t.explicit_is_cheap() {
        log::warn!(
            "explicit factor with corank {} above 4 x bag size {}",
            t.peeled.len(),
            t.max_bag
        );
    }
    let mut pos = vec![usize::MAX; t.n];
    for (k, &p) in t.pivot_order.iter().enumerate() {
        pos[p] = k;
    }
    let mut rows: Vec<BTreeMap<usize, F::Elem>> = vec![BTreeMap::new(); t.n];
    for tr in t.transforms.iter().rev() {
        match tr {
            Transform::Peel { target, coeffs } => {
                let mut acc: BTreeMap<usize, F::Elem> = BTreeMap::new();
                for (s, c) in coeffs {
                    for (k, v) in &rows[*s] {
                        let e = acc.entry(*k).or_insert_with(|| f.zero());
                        *e = f.add(e, &f.mul(c, v));
                    }
                }
                acc.retain(|_, v| !f.is_zero(v));
                rows[*target] = acc;
            }
            _ => {
                for (p, col) in elim_columns(tr) {
                    let k = pos[p];
                    rows[p].insert(k, f.one());
                    for (i, v) in col {
                        rows[*i].insert(k, v.clone());
                    }
                }
            }
        }
    }
    let order: Vec<usize> = t.pivot_order.iter().chain(&t.peeled).copied().collect();
    let mut l = DenseMatrix::zeros(f, t.n, t.r);
    for (i, &v) in order.iter().enumerate() {
        for (k, x) in &rows[v] {
            l.set(i, *k, x.clone());
        }
    }
    Ok(LDLResult {
        p: Permutation::from_vec(order)?,
        l,
        d: t.d.clone(),
        r: t.r,
    })
}
