use super::{PartialLDL, SaddleSystem};
use crate::dense::fast_lu;
use crate::error::Result;
use crate::field::Field;
use crate::matrix::tri::{tri_invert, tri_solve, Side, TriShape};
use crate::matrix::DenseMatrix;

/// How `L1^{-1}` is applied: by triangular solves or an explicit inverse.
/// Both give identical exact results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TriangularMode {
    #[default]
    Solve,
    Invert,
}

pub fn schilders_partial_ldl<F: Field>(s: &SaddleSystem<F>) -> Result<PartialLDL<F>> {
    schilders_partial_ldl_with(s, TriangularMode::Solve)
}

/// Partial LDL from `P B^H Q^T = L U`: with `W = L1^{-1} A11 L1^{-H}`,
/// `D = -diag(W)`, `Y1 = L1 tril(W) + D` and
/// `Y2 = (A21 - L2 ((Y1 - D)^H + D L1^H)) L1^{-H}`.
pub fn schilders_partial_ldl_with<F: Field>(s: &SaddleSystem<F>, mode: TriangularMode) -> Result<PartialLDL<F>> {
    let f = s.a.field();
    let n = s.n();
    let lu = fast_lu(&s.b.h());
    let r = lu.r;
    let ap = s.a.permute_sym(&lu.p)?;
    let a11 = ap.block(0, r, 0, r);
    let a21 = ap.block(r, n, 0, r);
    let l1 = lu.l.block(0, r, 0, r);
    let l2 = lu.l.block(r, n, 0, r);

    // right-multiplication by L1^{-H}
    let l1h = l1.h();
    let inv = match mode {
        TriangularMode::Invert => Some(tri_invert(&l1, TriShape::LowerUnit)?),
        TriangularMode::Solve => None,
    };
    let left_inv = |x: &DenseMatrix<F>| -> Result<DenseMatrix<F>> {
        match &inv {
            Some(li) => Ok(li.mul(x)),
            None => tri_solve(&l1, x, Side::Left, TriShape::LowerUnit),
        }
    };
    let right_inv_h = |x: &DenseMatrix<F>| -> Result<DenseMatrix<F>> {
        match &inv {
            Some(li) => Ok(x.mul(&li.h())),
            None => tri_solve(&l1h, x, Side::Right, TriShape::UpperUnit),
        }
    };

    let w = right_inv_h(&left_inv(&a11)?)?;
    let d: Vec<F::Elem> = (0..r).map(|k| f.neg(w.get(k, k))).collect();
    let mut dm = DenseMatrix::zeros(f, r, r);
    for (k, dk) in d.iter().enumerate() {
        dm.set(k, k, dk.clone());
    }
    let tril = DenseMatrix::from_fn(f, r, r, |i, j| if j <= i { w.get(i, j).clone() } else { f.zero() });
    let y1 = l1.mul(&tril).add(&dm);
    let inner = y1.sub(&dm).h().add(&dm.mul(&l1h));
    let y2 = right_inv_h(&a21.sub(&l2.mul(&inner)))?;

    Ok(PartialLDL {
        p: lu.p,
        q: lu.q,
        y: y1.vstack(&y2),
        l: lu.l,
        u: lu.u,
        d,
        r,
    })
}
