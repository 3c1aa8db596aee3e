//! Matrix products: the classical kernel and Strassen recursion above a cutoff.

use super::DenseMatrix;
use crate::error::{Error, Result};
use crate::field::Field;

/// Classical triple loop. Each output entry costs `k` multiplications and
/// `k - 1` additions.
pub fn classical_scalar<F: Field>(a: &DenseMatrix<F>, b: &DenseMatrix<F>) -> DenseMatrix<F> {
    let f = a.field();
    let (m, k, n) = (a.rows(), a.cols(), b.cols());
    if k == 0 {
        return DenseMatrix::zeros(f, m, n);
    }
    let bt = b.transpose();
    DenseMatrix::from_fn(f, m, n, |i, j| {
        let ar = a.row(i);
        let br = bt.row(j);
        let mut acc = f.mul(&ar[0], &br[0]);
        for t in 1..k {
            let p = f.mul(&ar[t], &br[t]);
            acc = f.add(&acc, &p);
        }
        acc
    })
}

/// Exact product `a * b`. Strassen recursion is used while every dimension
/// exceeds `cutoff`; the result does not depend on the cutoff.
pub fn matmul<F: Field>(a: &DenseMatrix<F>, b: &DenseMatrix<F>, cutoff: usize) -> Result<DenseMatrix<F>> {
    if a.cols() != b.rows() {
        return Err(Error::DimensionMismatch {
            op: "matmul",
            left: a.shape(),
            right: b.shape(),
        });
    }
    Ok(product(a, b, cutoff.max(1)))
}

fn product<F: Field>(a: &DenseMatrix<F>, b: &DenseMatrix<F>, cutoff: usize) -> DenseMatrix<F> {
    let f = a.field();
    let (m, k, n) = (a.rows(), a.cols(), b.cols());
    if m == 0 || n == 0 || k == 0 {
        return DenseMatrix::zeros(f, m, n);
    }
    let lo = m.min(k).min(n);
    if lo <= cutoff {
        return f.classical_product(a, b);
    }
    let hi = m.max(k).max(n);
    if hi > 2 * lo {
        // tile the longest dimension until blocks are near-square
        if hi == m {
            let h = m / 2;
            let top = product(&a.block(0, h, 0, k), b, cutoff);
            let bot = product(&a.block(h, m, 0, k), b, cutoff);
            return top.vstack(&bot);
        }
        if hi == n {
            let h = n / 2;
            let left = product(a, &b.block(0, k, 0, h), cutoff);
            let right = product(a, &b.block(0, k, h, n), cutoff);
            return left.hstack(&right);
        }
        let h = k / 2;
        let p1 = product(&a.block(0, m, 0, h), &b.block(0, h, 0, n), cutoff);
        let p2 = product(&a.block(0, m, h, k), &b.block(h, k, 0, n), cutoff);
        return p1.add(&p2);
    }
    strassen_step(a, b, cutoff)
}

fn pad<F: Field>(a: &DenseMatrix<F>, rows: usize, cols: usize) -> DenseMatrix<F> {
    if a.rows() == rows && a.cols() == cols {
        return a.clone();
    }
    let mut p = DenseMatrix::zeros(a.field(), rows, cols);
    p.set_block(0, 0, a);
    p
}

fn strassen_step<F: Field>(a: &DenseMatrix<F>, b: &DenseMatrix<F>, cutoff: usize) -> DenseMatrix<F> {
    let (m, k, n) = (a.rows(), a.cols(), b.cols());
    let (m2, k2, n2) = (m + m % 2, k + k % 2, n + n % 2);
    let a = pad(a, m2, k2);
    let b = pad(b, k2, n2);
    let (hm, hk, hn) = (m2 / 2, k2 / 2, n2 / 2);

    let a11 = a.block(0, hm, 0, hk);
    let a12 = a.block(0, hm, hk, k2);
    let a21 = a.block(hm, m2, 0, hk);
    let a22 = a.block(hm, m2, hk, k2);
    let b11 = b.block(0, hk, 0, hn);
    let b12 = b.block(0, hk, hn, n2);
    let b21 = b.block(hk, k2, 0, hn);
    let b22 = b.block(hk, k2, hn, n2);

    let m1 = product(&a11.add(&a22), &b11.add(&b22), cutoff);
    let m2_ = product(&a21.add(&a22), &b11, cutoff);
    let m3 = product(&a11, &b12.sub(&b22), cutoff);
    let m4 = product(&a22, &b21.sub(&b11), cutoff);
    let m5 = product(&a11.add(&a12), &b22, cutoff);
    let m6 = product(&a21.sub(&a11), &b11.add(&b12), cutoff);
    let m7 = product(&a12.sub(&a22), &b21.add(&b22), cutoff);

    let c11 = m1.add(&m4).sub(&m5).add(&m7);
    let c12 = m3.add(&m5);
    let c21 = m2_.add(&m4);
    let c22 = m1.sub(&m2_).add(&m3).add(&m6);

    let mut c = DenseMatrix::zeros(a.field(), m2, n2);
    c.set_block(0, 0, &c11);
    c.set_block(0, hn, &c12);
    c.set_block(hm, 0, &c21);
    c.set_block(hm, hn, &c22);
    if m2 != m || n2 != n {
        c = c.block(0, m, 0, n);
    }
    c
}
