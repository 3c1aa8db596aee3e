//! Single-step symmetric eliminations: vertex (1x1 pivot) and edge (2x2 pivot).

use super::dblock::DBlock;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::DenseMatrix;

/// Result of eliminating `s` pivots from a symmetric matrix.
///
/// `order` lists the pivots first, then the remaining indices ascending.
/// Rows of `l` follow `order`; `schur` is indexed by `order[s..]`.
#[derive(Debug, Clone)]
pub struct Elimination<F: Field> {
    pub order: Vec<usize>,
    pub l: DenseMatrix<F>,
    pub d: Vec<DBlock<F::Elem>>,
    pub schur: DenseMatrix<F>,
}

impl<F: Field> Elimination<F> {
    pub fn pivots(&self) -> usize {
        self.l.cols()
    }
}

fn check_square<F: Field>(a: &DenseMatrix<F>) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            op: "eliminate",
            left: a.shape(),
            right: (a.cols(), a.rows()),
        })
    }
}

fn order_with_first(n: usize, first: &[usize]) -> Vec<usize> {
    let mut order = first.to_vec();
    order.extend((0..n).filter(|x| !first.contains(x)));
    order
}

/// Eliminates vertex `i`: `S = A - a_i a_ii^{-1} a_i^H` on the other indices.
pub fn vertex_eliminate<F: Field>(a: &DenseMatrix<F>, i: usize) -> Result<Elimination<F>> {
    check_square(a)?;
    let f = a.field();
    let n = a.rows();
    let d = a.get(i, i).clone();
    if f.is_zero(&d) {
        return Err(Error::ZeroPivot(i));
    }
    let dinv = f.inv(&d)?;
    let order = order_with_first(n, &[i]);
    let col: Vec<F::Elem> = order.iter().map(|&p| a.get(p, i).clone()).collect();
    let l = DenseMatrix::from_fn(f, n, 1, |p, _| f.mul(&col[p], &dinv));
    let rest = &order[1..];
    let schur = DenseMatrix::from_fn(f, n - 1, n - 1, |p, q| {
        let t = f.mul(l.get(p + 1, 0), &f.conj(&col[q + 1]));
        f.sub(a.get(rest[p], rest[q]), &t)
    });
    Ok(Elimination {
        order,
        l,
        d: vec![DBlock::Scalar(d)],
        schur,
    })
}

/// Eliminates the pair `(i, j)`. If either diagonal entry is nonzero this is
/// carried out as two vertex eliminations (nonzero diagonal first), so an
/// antidiagonal block is only produced when both diagonals vanish.
pub fn edge_eliminate<F: Field>(a: &DenseMatrix<F>, i: usize, j: usize) -> Result<Elimination<F>> {
    check_square(a)?;
    assert_ne!(i, j, "edge elimination needs two distinct vertices");
    let f = a.field();
    let (aii, ajj) = (a.get(i, i), a.get(j, j));
    if !f.is_zero(aii) || !f.is_zero(ajj) {
        let (x, y) = if f.is_zero(aii) { (j, i) } else { (i, j) };
        let e1 = vertex_eliminate(a, x)?;
        let ypos = e1.order[1..].iter().position(|&t| t == y).expect("y remains");
        let e2 = vertex_eliminate(&e1.schur, ypos).map_err(|_| Error::SingularPivot(i, j))?;
        return Ok(compose(e1, e2));
    }
    let a12 = a.get(i, j).clone();
    let a21 = a.get(j, i).clone();
    if f.is_zero(&a21) {
        return Err(Error::SingularPivot(i, j));
    }
    let n = a.rows();
    let order = order_with_first(n, &[i, j]);
    let (inv12, inv21) = (f.inv(&a12)?, f.inv(&a21)?);
    let l = DenseMatrix::from_fn(f, n, 2, |p, c| {
        let r = order[p];
        if c == 0 {
            f.mul(a.get(r, j), &inv12)
        } else {
            f.mul(a.get(r, i), &inv21)
        }
    });
    let rest = &order[2..];
    let schur = DenseMatrix::from_fn(f, n - 2, n - 2, |p, q| {
        let (rp, rq) = (rest[p], rest[q]);
        let t0 = f.mul(l.get(p + 2, 0), &f.conj(a.get(rq, i)));
        let t1 = f.mul(l.get(p + 2, 1), &f.conj(a.get(rq, j)));
        f.sub(a.get(rp, rq), &f.add(&t0, &t1))
    });
    Ok(Elimination {
        order,
        l,
        d: vec![DBlock::AntiDiag(a12, a21)],
        schur,
    })
}

/// Chains an elimination on the Schur complement of `e1` onto `e1`.
pub fn compose<F: Field>(e1: Elimination<F>, e2: Elimination<F>) -> Elimination<F> {
    let f = e1.l.field().clone();
    let n = e1.order.len();
    let (s1, s2) = (e1.pivots(), e2.pivots());
    let mut order = e1.order[..s1].to_vec();
    order.extend(e2.order.iter().map(|&t| e1.order[s1 + t]));
    let mut l = DenseMatrix::zeros(&f, n, s1 + s2);
    for p in 0..s1 {
        for c in 0..s1 {
            l.set(p, c, e1.l.get(p, c).clone());
        }
    }
    for (t, &src) in e2.order.iter().enumerate() {
        for c in 0..s1 {
            l.set(s1 + t, c, e1.l.get(s1 + src, c).clone());
        }
        for c in 0..s2 {
            l.set(s1 + t, s1 + c, e2.l.get(t, c).clone());
        }
    }
    let mut d = e1.d;
    d.extend(e2.d);
    Elimination {
        order,
        l,
        d,
        schur: e2.schur,
    }
}
