//! Rank-revealing recursive LU (row-halving), with order-preserving row pivots.

use crate::field::Field;
use crate::matrix::tri::{tri_solve, Side, TriShape};
use crate::matrix::{DenseMatrix, Permutation};

/// `P A Q^T = L U` with `L` m x r unit lower-trapezoidal and `U` r x n
/// upper-trapezoidal with nonzero diagonal.
#[derive(Debug, Clone)]
pub struct LUResult<F: Field> {
    pub p: Permutation,
    pub q: Permutation,
    pub l: DenseMatrix<F>,
    pub u: DenseMatrix<F>,
    pub r: usize,
}

impl<F: Field> LUResult<F> {
    /// Rows of the input that carry pivots, in pivot order.
    pub fn pivot_rows(&self) -> &[usize] {
        &self.p.as_slice()[..self.r]
    }

    /// Columns of the input that carry pivots, in pivot order.
    pub fn pivot_cols(&self) -> &[usize] {
        &self.q.as_slice()[..self.r]
    }
}

pub fn fast_lu<F: Field>(a: &DenseMatrix<F>) -> LUResult<F> {
    let f = a.field();
    let (m, n) = a.shape();
    if m == 0 || a.is_zero() {
        return LUResult {
            p: Permutation::identity(m),
            q: Permutation::identity(n),
            l: DenseMatrix::zeros(f, m, 0),
            u: DenseMatrix::zeros(f, 0, n),
            r: 0,
        };
    }
    if m == 1 {
        let j = a.row(0).iter().position(|x| !f.is_zero(x)).expect("nonzero row");
        let q = Permutation::swap(n, 0, j);
        let u = a.permute(&Permutation::identity(1), &q).expect("sizes match");
        return LUResult {
            p: Permutation::identity(1),
            q,
            l: DenseMatrix::identity(f, 1),
            u,
            r: 1,
        };
    }

    let m1 = m / 2;
    let top = fast_lu(&a.block(0, m1, 0, n));
    let r1 = top.r;
    let a2q = a
        .block(m1, m, 0, n)
        .permute(&Permutation::identity(m - m1), &top.q)
        .expect("sizes match");
    let u11 = top.u.block(0, r1, 0, r1);
    let u12 = top.u.block(0, r1, r1, n);
    let b1 = tri_solve(&u11, &a2q.block(0, m - m1, 0, r1), Side::Right, TriShape::Upper)
        .expect("pivots of U are nonzero");
    let mut b2 = a2q.block(0, m - m1, r1, n);
    if r1 > 0 && n > r1 {
        b2.sub_assign(&b1.mul(&u12));
    }
    let bot = fast_lu(&b2);
    let r2 = bot.r;
    let r = r1 + r2;

    let mut pf: Vec<usize> = top.p.as_slice()[..r1].to_vec();
    pf.extend(bot.p.as_slice().iter().map(|&i| m1 + i));
    pf.extend_from_slice(&top.p.as_slice()[r1..]);
    let mut qf: Vec<usize> = top.q.as_slice()[..r1].to_vec();
    qf.extend(bot.q.as_slice().iter().map(|&j| top.q.at(r1 + j)));

    let b1p = b1.select_rows(bot.p.as_slice());
    let mut l = DenseMatrix::zeros(f, m, r);
    l.set_block(0, 0, &top.l.block(0, r1, 0, r1));
    l.set_block(r1, 0, &b1p);
    l.set_block(r1, r1, &bot.l);
    l.set_block(r1 + (m - m1), 0, &top.l.block(r1, m1, 0, r1));

    let mut u = DenseMatrix::zeros(f, r, n);
    u.set_block(0, 0, &u11);
    u.set_block(0, r1, &u12.select_cols(bot.q.as_slice()));
    u.set_block(r1, r1, &bot.u);

    LUResult {
        p: Permutation::from_vec(pf).expect("row permutation"),
        q: Permutation::from_vec(qf).expect("column permutation"),
        l,
        u,
        r,
    }
}
