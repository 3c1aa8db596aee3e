use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::dblock::{total_size, DBlock};
use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

/// Reads the inertia off `D` for an original dimension `n`. Each
/// antidiagonal block has eigenvalues of opposite sign.
pub fn inertia_from_d<F: Field>(f: &F, blocks: &[DBlock<F::Elem>], n: usize) -> Result<Inertia> {
    if f.sign(&f.one()).is_none() {
        return Err(Error::UnorderedField);
    }
    let mut out = Inertia {
        positive: 0,
        negative: 0,
        zero: n - total_size(blocks),
    };
    for b in blocks {
        match b {
            DBlock::Scalar(d) => match f.sign(d) {
                Some(Ordering::Greater) => out.positive += 1,
                Some(Ordering::Less) => out.negative += 1,
                _ => return Err(Error::InternalInvariantViolation("zero scalar block in D".into())),
            },
            DBlock::AntiDiag(..) => {
                out.positive += 1;
                out.negative += 1;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::fast_ldl;
    use crate::field::{Gfp, Rationals};
    use crate::matrix::DenseMatrix;
    use dashu_ratio::RBig;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> RBig {
        RBig::from(n)
    }

    #[test]
    fn reads_signs() {
        let f = Rationals::new();
        let d = vec![DBlock::Scalar(q(3)), DBlock::Scalar(q(-2))];
        let i = inertia_from_d(&f, &d, 3).unwrap();
        assert_eq!((i.positive, i.negative, i.zero), (1, 1, 1));
        let d = vec![DBlock::AntiDiag(q(1), q(1))];
        let i = inertia_from_d(&f, &d, 2).unwrap();
        assert_eq!((i.positive, i.negative, i.zero), (1, 1, 0));
    }

    #[test]
    fn finite_field_rejected() {
        let f = Gfp::new(7).unwrap();
        assert_eq!(inertia_from_d(&f, &[DBlock::Scalar(1)], 1).unwrap_err(), Error::UnorderedField);
    }

    #[test]
    fn congruence_invariant() {
        let f = Rationals::new();
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for n in 1..9 {
            let a = DenseMatrix::random_symmetric(&f, n, &mut rng);
            let g = loop {
                let g = DenseMatrix::random(&f, n, n, &mut rng);
                if crate::dense::fast_lu(&g).r == n {
                    break g;
                }
            };
            let b = g.mul(&a).mul(&g.h());
            let ia = fast_ldl(&a).unwrap();
            let ib = fast_ldl(&b).unwrap();
            assert_eq!(inertia_from_d(&f, &ia.d, n).unwrap(), inertia_from_d(&f, &ib.d, n).unwrap());
        }
    }
}
