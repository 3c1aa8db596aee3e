use super::{residual_schur, PartialLDL, SaddleSystem};
use crate::dense::{fast_ldl, DBlock, LDLResult};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{DenseMatrix, Permutation};

/// Converts one rank-2 skeleton `K C K^H`, with `K = [x, w]` and
/// `C = [[0, 1], [1, -a]]`, into two unit-diagonal LDL columns.
///
/// The pivot rows are those where `x = (a, b)` and `w = (1, 0)`. For `a = 0`
/// the result is `[w, x/b]` with an antidiagonal block `(b*, b)`; otherwise
/// `[x/a, (x - a w)/b]` with `diag(a, -b b*/a)`.
pub fn skeleton_to_ldl_columns<F: Field>(
    k: &DenseMatrix<F>,
    a: &F::Elem,
    b: &F::Elem,
) -> Result<(DenseMatrix<F>, Vec<DBlock<F::Elem>>)> {
    let f = k.field();
    if f.is_zero(b) {
        return Err(Error::ZeroB11);
    }
    let binv = f.inv(b)?;
    let rows = k.rows();
    if f.is_zero(a) {
        let cols = DenseMatrix::from_fn(f, rows, 2, |i, c| {
            if c == 0 {
                k.get(i, 1).clone()
            } else {
                f.mul(k.get(i, 0), &binv)
            }
        });
        return Ok((cols, vec![DBlock::AntiDiag(f.conj(b), b.clone())]));
    }
    let ainv = f.inv(a)?;
    let cols = DenseMatrix::from_fn(f, rows, 2, |i, c| {
        if c == 0 {
            f.mul(k.get(i, 0), &ainv)
        } else {
            let t = f.sub(k.get(i, 0), &f.mul(a, k.get(i, 1)));
            f.mul(&t, &binv)
        }
    });
    let second = f.neg(&f.mul(&f.mul(b, &f.conj(b)), &ainv));
    Ok((cols, vec![DBlock::Scalar(a.clone()), DBlock::Scalar(second)]))
}

/// Full LDL of `M` from a partial one: each constraint pair becomes two
/// columns, followed by an LDL of the trailing residual. The order is
/// pair by pair (A-vertex, then B-vertex), then the residual A-vertices,
/// then the dependent B-vertices.
pub fn complete_saddle_ldl<F: Field>(s: &SaddleSystem<F>, fac: &PartialLDL<F>) -> Result<LDLResult<F>> {
    let f = s.a.field();
    let (n, m, r) = (s.n(), s.m(), fac.r);
    let big = n + m;
    let res = residual_schur(s, fac)?;
    let lres = fast_ldl(&res)?;
    let rr = lres.r;

    let pos_a = |i: usize| if i < r { 2 * i } else { 2 * r + lres.p.position(i - r) };
    let pos_b = |c: usize| if c < r { 2 * c + 1 } else { r + n + (c - r) };
    let mut order = vec![0; big];
    for i in 0..n {
        order[pos_a(i)] = fac.p.at(i);
    }
    for c in 0..m {
        order[pos_b(c)] = n + fac.q.at(c);
    }

    let v = fac.v();
    let mut l = DenseMatrix::zeros(f, big, 2 * r + rr);
    let mut d = Vec::with_capacity(2 * r + lres.d.len());
    for k in 0..r {
        let mut kmat = DenseMatrix::zeros(f, big, 2);
        for i in k..n {
            kmat.set(pos_a(i), 0, v.get(i, k).clone());
            kmat.set(pos_a(i), 1, fac.l.get(i, k).clone());
        }
        for c in k..m {
            kmat.set(pos_b(c), 0, f.conj(fac.u.get(k, c)));
        }
        let a = v.get(k, k).clone();
        let b = f.conj(fac.u.get(k, k));
        let (cols, blocks) = skeleton_to_ldl_columns(&kmat, &a, &b)?;
        l.set_block(0, 2 * k, &cols);
        d.extend(blocks);
    }
    l.set_block(2 * r, 2 * r, &lres.l);
    d.extend(lres.d);
    Ok(LDLResult {
        p: Permutation::from_vec(order)?,
        l,
        d,
        r: 2 * r + rr,
    })
}
