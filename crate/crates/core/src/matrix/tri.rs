//! Triangular inversion and solves by block recursion onto matrix products.

use super::DenseMatrix;
use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriShape {
    LowerUnit,
    Lower,
    UpperUnit,
    Upper,
}

impl TriShape {
    fn is_unit(self) -> bool {
        matches!(self, TriShape::LowerUnit | TriShape::UpperUnit)
    }

    fn is_lower(self) -> bool {
        matches!(self, TriShape::LowerUnit | TriShape::Lower)
    }
}

/// Which side the triangular factor multiplies the unknown from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `T * X = B`
    Left,
    /// `X * T = B`
    Right,
}

fn check_triangular<F: Field>(t: &DenseMatrix<F>, shape: TriShape) -> Result<()> {
    if !t.is_square() {
        return Err(Error::DimensionMismatch {
            op: "triangular",
            left: t.shape(),
            right: (t.cols(), t.rows()),
        });
    }
    if !shape.is_unit() {
        let f = t.field();
        if let Some(i) = (0..t.rows()).find(|&i| f.is_zero(t.get(i, i))) {
            return Err(Error::SingularDiagonal(i));
        }
    }
    Ok(())
}

/// Inverse of a triangular matrix. Entries outside the stated triangle are
/// ignored, as is the stored diagonal of a unit shape.
pub fn tri_invert<F: Field>(t: &DenseMatrix<F>, shape: TriShape) -> Result<DenseMatrix<F>> {
    check_triangular(t, shape)?;
    Ok(invert_rec(t, shape))
}

fn invert_rec<F: Field>(t: &DenseMatrix<F>, shape: TriShape) -> DenseMatrix<F> {
    let f = t.field();
    let n = t.rows();
    if n == 0 {
        return t.clone();
    }
    if n == 1 {
        let v = if shape.is_unit() {
            f.one()
        } else {
            f.inv(t.get(0, 0)).expect("checked nonzero diagonal")
        };
        return DenseMatrix::from_fn(f, 1, 1, |_, _| v.clone());
    }
    let h = n / 2;
    let x11 = invert_rec(&t.block(0, h, 0, h), shape);
    let x22 = invert_rec(&t.block(h, n, h, n), shape);
    let mut x = DenseMatrix::zeros(f, n, n);
    if shape.is_lower() {
        let t21 = t.block(h, n, 0, h);
        let x21 = x22.mul(&t21).mul(&x11).neg();
        x.set_block(h, 0, &x21);
    } else {
        let t12 = t.block(0, h, h, n);
        let x12 = x11.mul(&t12).mul(&x22).neg();
        x.set_block(0, h, &x12);
    }
    x.set_block(0, 0, &x11);
    x.set_block(h, h, &x22);
    x
}

/// Solves `T X = B` or `X T = B` exactly.
pub fn tri_solve<F: Field>(
    t: &DenseMatrix<F>,
    b: &DenseMatrix<F>,
    side: Side,
    shape: TriShape,
) -> Result<DenseMatrix<F>> {
    check_triangular(t, shape)?;
    let n = t.rows();
    let fits = match side {
        Side::Left => b.rows() == n,
        Side::Right => b.cols() == n,
    };
    if !fits {
        return Err(Error::DimensionMismatch {
            op: "tri_solve",
            left: t.shape(),
            right: b.shape(),
        });
    }
    Ok(solve_rec(t, b, side, shape))
}

fn solve_rec<F: Field>(t: &DenseMatrix<F>, b: &DenseMatrix<F>, side: Side, shape: TriShape) -> DenseMatrix<F> {
    let f = t.field();
    let n = t.rows();
    if n == 0 || b.rows() == 0 || b.cols() == 0 {
        return b.clone();
    }
    if n == 1 {
        if shape.is_unit() {
            return b.clone();
        }
        let d = f.inv(t.get(0, 0)).expect("checked nonzero diagonal");
        return b.scale(&d);
    }
    let h = n / 2;
    let t11 = t.block(0, h, 0, h);
    let t22 = t.block(h, n, h, n);
    match (side, shape.is_lower()) {
        (Side::Left, true) => {
            let (b1, b2) = (b.block(0, h, 0, b.cols()), b.block(h, n, 0, b.cols()));
            let x1 = solve_rec(&t11, &b1, side, shape);
            let r = b2.sub(&t.block(h, n, 0, h).mul(&x1));
            let x2 = solve_rec(&t22, &r, side, shape);
            x1.vstack(&x2)
        }
        (Side::Left, false) => {
            let (b1, b2) = (b.block(0, h, 0, b.cols()), b.block(h, n, 0, b.cols()));
            let x2 = solve_rec(&t22, &b2, side, shape);
            let r = b1.sub(&t.block(0, h, h, n).mul(&x2));
            let x1 = solve_rec(&t11, &r, side, shape);
            x1.vstack(&x2)
        }
        (Side::Right, true) => {
            let (b1, b2) = (b.block(0, b.rows(), 0, h), b.block(0, b.rows(), h, n));
            let x2 = solve_rec(&t22, &b2, side, shape);
            let r = b1.sub(&x2.mul(&t.block(h, n, 0, h)));
            let x1 = solve_rec(&t11, &r, side, shape);
            x1.hstack(&x2)
        }
        (Side::Right, false) => {
            let (b1, b2) = (b.block(0, b.rows(), 0, h), b.block(0, b.rows(), h, n));
            let x1 = solve_rec(&t11, &b1, side, shape);
            let r = b2.sub(&x1.mul(&t.block(0, h, h, n)));
            let x2 = solve_rec(&t22, &r, side, shape);
            x1.hstack(&x2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf2, Gfp, Rationals};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_tri<F: Field, R: Rng>(f: &F, n: usize, shape: TriShape, rng: &mut R) -> DenseMatrix<F> {
        DenseMatrix::from_fn(f, n, n, |i, j| {
            let inside = if shape.is_lower() { i > j } else { i < j };
            if i == j {
                if shape.is_unit() {
                    f.one()
                } else {
                    f.random_nonzero(rng)
                }
            } else if inside {
                f.random(rng)
            } else {
                f.zero()
            }
        })
    }

    #[test]
    fn identity_inverse() {
        let f = Gfp::new(7).unwrap();
        let i = DenseMatrix::identity(&f, 5);
        assert_eq!(tri_invert(&i, TriShape::LowerUnit).unwrap(), i);
    }

    #[test]
    fn small_gf7_inverse() {
        let f = Gfp::new(7).unwrap();
        let l = DenseMatrix::from_i64(&f, &[&[1, 0], &[3, 1]]);
        let expect = DenseMatrix::from_i64(&f, &[&[1, 0], &[4, 1]]);
        let li = tri_invert(&l, TriShape::LowerUnit).unwrap();
        assert_eq!(li, expect);
        assert_eq!(l.mul(&li), DenseMatrix::identity(&f, 2));
    }

    #[test]
    fn rational_unit_lower_inverses() {
        let f = Rationals::new().with_strassen_cutoff(8);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let n = rng.gen_range(1..=64);
            let l = random_tri(&f, n, TriShape::LowerUnit, &mut rng);
            let li = tri_invert(&l, TriShape::LowerUnit).unwrap();
            assert_eq!(l.mul(&li), DenseMatrix::identity(&f, n));
            assert_eq!(li.mul(&l), DenseMatrix::identity(&f, n));
        }
    }

    #[test]
    fn all_shapes_invert_and_solve() {
        let f = Gfp::new(1009).unwrap().with_strassen_cutoff(4);
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for shape in [TriShape::LowerUnit, TriShape::Lower, TriShape::UpperUnit, TriShape::Upper] {
            for n in [1usize, 2, 7, 20] {
                let t = random_tri(&f, n, shape, &mut rng);
                let ti = tri_invert(&t, shape).unwrap();
                assert_eq!(t.mul(&ti), DenseMatrix::identity(&f, n));
                let b = DenseMatrix::random(&f, n, 3, &mut rng);
                let x = tri_solve(&t, &b, Side::Left, shape).unwrap();
                assert_eq!(t.mul(&x), b);
                let b = DenseMatrix::random(&f, 4, n, &mut rng);
                let x = tri_solve(&t, &b, Side::Right, shape).unwrap();
                assert_eq!(x.mul(&t), b);
            }
        }
    }

    #[test]
    fn gf2_forward_substitution() {
        let f = Gf2::new();
        let l = DenseMatrix::from_i64(&f, &[&[1, 0], &[1, 1]]);
        let b = DenseMatrix::from_i64(&f, &[&[1], &[0]]);
        let x = tri_solve(&l, &b, Side::Left, TriShape::LowerUnit).unwrap();
        assert_eq!(x, DenseMatrix::from_i64(&f, &[&[1], &[1]]));
        let i = DenseMatrix::identity(&f, 2);
        assert_eq!(tri_solve(&i, &b, Side::Left, TriShape::Lower).unwrap(), b);
    }

    #[test]
    fn singular_diagonal_reported() {
        let f = Gfp::new(7).unwrap();
        let u = DenseMatrix::from_i64(&f, &[&[1, 2], &[0, 0]]);
        assert_eq!(tri_invert(&u, TriShape::Upper).unwrap_err(), Error::SingularDiagonal(1));
        let b = DenseMatrix::zeros(&f, 2, 1);
        assert_eq!(
            tri_solve(&u, &b, Side::Left, TriShape::Upper).unwrap_err(),
            Error::SingularDiagonal(1)
        );
    }
}
