use super::{PartialLDL, SaddleSystem};
use crate::field::Field;
use crate::matrix::{DenseMatrix, Permutation};

fn swap_rows<F: Field>(m: &mut DenseMatrix<F>, a: usize, b: usize) {
    if a != b {
        for c in 0..m.cols() {
            let t = m.get(a, c).clone();
            let u = m.get(b, c).clone();
            m.set(a, c, u);
            m.set(b, c, t);
        }
    }
}

fn swap_cols<F: Field>(m: &mut DenseMatrix<F>, a: usize, b: usize) {
    if a != b {
        for r in 0..m.rows() {
            let t = m.get(r, a).clone();
            let u = m.get(r, b).clone();
            m.set(r, a, u);
            m.set(r, b, t);
        }
    }
}

/// Interleaved elimination of (A-vertex, B-vertex) edges. The pivot at each
/// step is the first nonzero of the remaining constraint block in
/// row-major order, so the zero block is preserved throughout.
pub fn gamma_eliminate_partial<F: Field>(s: &SaddleSystem<F>) -> PartialLDL<F> {
    let f = s.a.field();
    let (n, m) = (s.n(), s.m());
    let mut abar = s.a.clone();
    let mut bbar = s.b.clone();
    let mut p = Permutation::identity(n);
    let mut q = Permutation::identity(m);
    let kmax = n.min(m);
    let mut y = DenseMatrix::zeros(f, n, kmax);
    let mut l = DenseMatrix::zeros(f, n, kmax);
    let mut u = DenseMatrix::zeros(f, kmax, m);
    let mut d = Vec::new();

    let mut k = 0;
    while k < kmax {
        let Some((i, j)) = (k..m).find_map(|i| (k..n).find(|&j| !f.is_zero(bbar.get(i, j))).map(|j| (i, j))) else {
            break;
        };
        // A-index k <-> j
        swap_rows(&mut abar, k, j);
        swap_cols(&mut abar, k, j);
        swap_cols(&mut bbar, k, j);
        swap_rows(&mut y, k, j);
        swap_rows(&mut l, k, j);
        p.swap_positions(k, j);
        // B-index k <-> i
        swap_rows(&mut bbar, k, i);
        swap_cols(&mut u, k, i);
        q.swap_positions(k, i);

        let beta = bbar.get(k, k).clone();
        let beta_c_inv = f.inv(&f.conj(&beta)).expect("pivot is nonzero");
        let akk = abar.get(k, k).clone();
        let a_col: Vec<F::Elem> = (k..n).map(|t| abar.get(t, k).clone()).collect();
        let l_col: Vec<F::Elem> = (k..n).map(|t| f.mul(&f.conj(bbar.get(k, t)), &beta_c_inv)).collect();
        for (t, (av, lv)) in a_col.iter().zip(&l_col).enumerate() {
            if t > 0 {
                y.set(k + t, k, av.clone());
            }
            l.set(k + t, k, lv.clone());
        }
        for c in k..m {
            u.set(k, c, f.conj(bbar.get(c, k)));
        }
        d.push(f.neg(&akk));

        // A -= a l^H + l a^H - a_kk l l^H on the trailing block
        for (ti, t) in (k..n).enumerate() {
            for (si, sidx) in (k..n).enumerate() {
                let t1 = f.mul(&a_col[ti], &f.conj(&l_col[si]));
                let t2 = f.mul(&l_col[ti], &f.conj(&a_col[si]));
                let t3 = f.mul(&f.mul(&akk, &l_col[ti]), &f.conj(&l_col[si]));
                let upd = f.sub(&f.add(&t1, &t2), &t3);
                let cur = f.sub(abar.get(t, sidx), &upd);
                abar.set(t, sidx, cur);
            }
        }
        // B[c][j] -= B[c][k] B[k][j] / B[k][k]
        let beta_inv = f.inv(&beta).expect("pivot is nonzero");
        let pivot_row: Vec<F::Elem> = (k..n).map(|t| bbar.get(k, t).clone()).collect();
        for c in k..m {
            let factor = f.mul(bbar.get(c, k), &beta_inv);
            if f.is_zero(&factor) {
                continue;
            }
            for (ti, t) in (k..n).enumerate() {
                let cur = f.sub(bbar.get(c, t), &f.mul(&factor, &pivot_row[ti]));
                bbar.set(c, t, cur);
            }
        }
        k += 1;
    }
    let r = k;
    PartialLDL {
        p,
        q,
        y: y.block(0, n, 0, r),
        l: l.block(0, n, 0, r),
        u: u.block(0, r, 0, m),
        d,
        r,
    }
}
