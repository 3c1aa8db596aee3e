//! Rank-revealing symmetric LDL: a direct small-case search and the
//! one-third split recursion built on matrix products.

use super::dblock::{d_matrix, d_solve, total_size, DBlock};
use super::elim::{compose, edge_eliminate, vertex_eliminate, Elimination};
use super::lu::fast_lu;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::tri::{tri_solve, Side, TriShape};
use crate::matrix::{DenseMatrix, Permutation};

/// `P^T A P = L D L^H` in reduced form: `L` is n x r, `D` is r x r.
#[derive(Debug, Clone)]
pub struct LDLResult<F: Field> {
    pub p: Permutation,
    pub l: DenseMatrix<F>,
    pub d: Vec<DBlock<F::Elem>>,
    pub r: usize,
}

impl<F: Field> LDLResult<F> {
    pub fn d_matrix(&self) -> DenseMatrix<F> {
        d_matrix(self.l.field(), &self.d)
    }

    /// Square form: `L` padded with trailing unit columns and `D` with
    /// zero rows and columns, so both are n x n.
    pub fn to_unreduced(&self) -> (DenseMatrix<F>, DenseMatrix<F>) {
        let f = self.l.field();
        let n = self.l.rows();
        let mut l = DenseMatrix::identity(f, n);
        l.set_block(0, 0, &self.l);
        let mut d = DenseMatrix::zeros(f, n, n);
        d.set_block(0, 0, &self.d_matrix());
        (l, d)
    }
}

fn check_square<F: Field>(a: &DenseMatrix<F>) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            op: "ldl",
            left: a.shape(),
            right: (a.cols(), a.rows()),
        })
    }
}

/// Next pivot by lowest index: first nonzero diagonal, else the first
/// nonzero strictly-lower entry in column-major order.
fn next_pivot<F: Field>(a: &DenseMatrix<F>) -> Option<(usize, Option<usize>)> {
    let f = a.field();
    let n = a.rows();
    if let Some(i) = (0..n).find(|&i| !f.is_zero(a.get(i, i))) {
        return Some((i, None));
    }
    (0..n).find_map(|j| (j + 1..n).find(|&i| !f.is_zero(a.get(i, j))).map(|i| (j, Some(i))))
}

fn finish<F: Field>(e: Elimination<F>) -> LDLResult<F> {
    LDLResult {
        p: Permutation::from_vec(e.order).expect("elimination order"),
        r: e.l.cols(),
        l: e.l,
        d: e.d,
    }
}

/// Classical symmetric elimination with lowest-index pivoting. Used directly
/// for the small base case and as a reference ordering elsewhere.
pub fn pivoted_ldl<F: Field>(a: &DenseMatrix<F>) -> Result<LDLResult<F>> {
    check_square(a)?;
    let f = a.field();
    let n = a.rows();
    let mut e = Elimination {
        order: (0..n).collect(),
        l: DenseMatrix::zeros(f, n, 0),
        d: Vec::new(),
        schur: a.clone(),
    };
    while let Some((i, j)) = next_pivot(&e.schur) {
        let step = match j {
            None => vertex_eliminate(&e.schur, i)?,
            Some(j) => edge_eliminate(&e.schur, i, j)?,
        };
        e = compose(e, step);
    }
    Ok(finish(e))
}

/// Direct factorization for n <= 3.
pub fn base_ldl<F: Field>(a: &DenseMatrix<F>) -> Result<LDLResult<F>> {
    debug_assert!(a.rows() <= 3);
    pivoted_ldl(a)
}

pub fn fast_ldl<F: Field>(a: &DenseMatrix<F>) -> Result<LDLResult<F>> {
    check_square(a)?;
    let f = a.field();
    let n = a.rows();
    if n <= 3 {
        return base_ldl(a);
    }
    let k = n / 3;
    let n1 = n - k;
    let first = fast_ldl(&a.block(0, n1, 0, n1))?;
    let r1 = first.r;
    let piv1 = &first.p.as_slice()[..r1];
    let tail1 = &first.p.as_slice()[r1..];
    let t1 = tail1.len();
    let a22_idx: Vec<usize> = (n1..n).collect();

    let l11 = first.l.block(0, r1, 0, r1);
    let l31 = first.l.block(r1, n1, 0, r1);
    let g = tri_solve(&l11, &a.select(piv1, &a22_idx), Side::Left, TriShape::LowerUnit)?;
    let h = d_solve(f, &first.d, &g)?;
    let l21 = h.h();
    let gh = g.h();

    // Schur complement after the first r1 pivots, indexed by the A22 block
    // followed by the dependent rows of the leading block. Its trailing
    // block vanishes because those rows are spanned by the pivots.
    let nc = k + t1;
    let b = a.select(&a22_idx, &a22_idx).sub(&gh.mul(&h));
    let r23 = a.select(&a22_idx, tail1).sub(&gh.mul(&l31.h()));
    let mut c = DenseMatrix::zeros(f, nc, nc);
    c.set_block(0, 0, &b);
    c.set_block(0, k, &r23);
    c.set_block(k, 0, &r23.h());

    let (btilde, tail3): (Vec<usize>, Vec<usize>) = if 3 * r1 >= n {
        ((0..nc).collect(), Vec::new())
    } else {
        let lu = fast_lu(&r23);
        let mut bt: Vec<usize> = (0..k).collect();
        bt.extend(lu.q.as_slice()[..lu.r].iter().map(|&j| k + j));
        let t3 = lu.q.as_slice()[lu.r..].iter().map(|&j| k + j).collect();
        (bt, t3)
    };

    let second = fast_ldl(&c.select(&btilde, &btilde))?;
    let r2 = second.r;
    let ord2: Vec<usize> = second.p.as_slice().iter().map(|&i| btilde[i]).collect();
    let mut lc = second.l.clone();
    if !tail3.is_empty() {
        let l2top = second.l.block(0, r2, 0, r2);
        let rtop = c.select(&ord2[..r2], &tail3);
        let y = tri_solve(&l2top, &rtop, Side::Left, TriShape::LowerUnit)?;
        let x = d_solve(f, &second.d, &y)?.h();
        let d2 = d_matrix(f, &second.d);
        let xd = x.mul(&d2);
        let rest = c.select(&ord2[r2..], &tail3);
        if rest != second.l.block(r2, btilde.len(), 0, r2).mul(&xd.h()) {
            return Err(Error::InternalInvariantViolation(
                "dependent rows are inconsistent with the bordered factorization".into(),
            ));
        }
        if !xd.mul(&x.h()).is_zero() {
            return Err(Error::InternalInvariantViolation("trailing residual is nonzero".into()));
        }
        lc = lc.vstack(&x);
    }
    let cord: Vec<usize> = ord2.iter().chain(&tail3).copied().collect();
    let to_global = |ci: usize| if ci < k { n1 + ci } else { tail1[ci - k] };

    let r = r1 + r2;
    let mut l = DenseMatrix::zeros(f, n, r);
    l.set_block(0, 0, &l11);
    for (t, &ci) in cord.iter().enumerate() {
        let left = if ci < k { l21.row(ci) } else { l31.row(ci - k) };
        for (j, v) in left.iter().enumerate() {
            l.set(r1 + t, j, v.clone());
        }
        for j in 0..r2 {
            l.set(r1 + t, r1 + j, lc.get(t, j).clone());
        }
    }
    let mut order = piv1.to_vec();
    order.extend(cord.iter().map(|&ci| to_global(ci)));
    let mut d = first.d;
    d.extend(second.d);
    debug_assert_eq!(total_size(&d), r);
    Ok(LDLResult {
        p: Permutation::from_vec(order).expect("ldl order"),
        l,
        d,
        r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf2, Gfp, Rationals};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn check<F: Field>(a: &DenseMatrix<F>, res: &LDLResult<F>) {
        let f = a.field();
        let lhs = a.permute_sym(&res.p).unwrap();
        assert_eq!(lhs, res.l.mul(&res.d_matrix()).mul(&res.l.h()));
        for i in 0..res.r {
            assert_eq!(res.l.get(i, i), &f.one());
            for j in i + 1..res.r {
                assert!(f.is_zero(res.l.get(i, j)));
            }
        }
        let (lu, du) = res.to_unreduced();
        assert_eq!(lhs, lu.mul(&du).mul(&lu.h()));
    }

    fn planted<F: Field, R: Rng>(f: &F, n: usize, r: usize, rng: &mut R) -> DenseMatrix<F> {
        let g = DenseMatrix::random(f, n, r, rng);
        let s = DenseMatrix::random_symmetric(f, r, rng);
        g.mul(&s).mul(&g.h())
    }

    #[test]
    fn zero_and_swap() {
        let f = Gf2::new();
        assert_eq!(fast_ldl(&DenseMatrix::zeros(&f, 5, 5)).unwrap().r, 0);
        let a = DenseMatrix::from_i64(&f, &[&[0, 1], &[1, 0]]);
        let res = fast_ldl(&a).unwrap();
        assert_eq!(res.r, 2);
        assert!(res.p.is_identity());
        assert_eq!(res.l, DenseMatrix::identity(&f, 2));
        assert_eq!(res.d, vec![DBlock::AntiDiag(1, 1)]);
    }

    #[test]
    fn base_cases() {
        let f = Gfp::new(7).unwrap();
        assert_eq!(base_ldl(&DenseMatrix::zeros(&f, 1, 1)).unwrap().r, 0);
        let a = DenseMatrix::from_i64(&f, &[&[0, 0], &[0, 5]]);
        let res = base_ldl(&a).unwrap();
        assert_eq!(res.p.as_slice(), &[1, 0]);
        assert_eq!(res.d, vec![DBlock::Scalar(5)]);
        let a = DenseMatrix::from_i64(&f, &[&[2, 1, 0], &[1, 3, 1], &[0, 1, 1]]);
        let res = fast_ldl(&a).unwrap();
        assert_eq!(res.r, 3);
        check(&a, &res);
    }

    #[test]
    fn all_gf2_three_by_three() {
        let f = Gf2::new();
        for mask in 0u32..64 {
            let mut bits = (0..6).map(|b| ((mask >> b) & 1) as i64);
            let mut a = DenseMatrix::zeros(&f, 3, 3);
            for i in 0..3 {
                for j in i..3 {
                    let v = bits.next().unwrap() as u8;
                    a.set(i, j, v);
                    a.set(j, i, v);
                }
            }
            let res = base_ldl(&a).unwrap();
            check(&a, &res);
            assert_eq!(res.r, fast_lu(&a).r);
        }
    }

    #[test]
    fn planted_rank_gf2_sixty() {
        let f = Gf2::new();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        // identity-padded congruence keeps the rank exactly 40
        let g = loop {
            let g = DenseMatrix::random(&f, 60, 60, &mut rng);
            if fast_lu(&g).r == 60 {
                break g;
            }
        };
        let mut s = DenseMatrix::zeros(&f, 60, 60);
        for i in 0..40 {
            s.set(i, i, 1);
        }
        let a = g.mul(&s).mul(&g.h());
        let res = fast_ldl(&a).unwrap();
        assert_eq!(res.r, 40);
        check(&a, &res);
    }

    #[test]
    fn random_fields_and_ranks() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let g7 = Gfp::new(7).unwrap().with_strassen_cutoff(4);
        let q = Rationals::new().with_strassen_cutoff(4);
        let g2 = Gf2::new().with_strassen_cutoff(4);
        for _ in 0..30 {
            let n = rng.gen_range(1..30);
            let r = rng.gen_range(0..=n);
            let a = planted(&g7, n, r, &mut rng);
            let res = fast_ldl(&a).unwrap();
            check(&a, &res);
            assert_eq!(res.r, fast_lu(&a).r);
            let a = planted(&q, n, r, &mut rng);
            let res = fast_ldl(&a).unwrap();
            check(&a, &res);
            assert_eq!(res.r, fast_lu(&a).r);
            let a = DenseMatrix::random_symmetric(&g2, n, &mut rng);
            let res = fast_ldl(&a).unwrap();
            check(&a, &res);
            assert_eq!(res.r, fast_lu(&a).r);
        }
    }
}
