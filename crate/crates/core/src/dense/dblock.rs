use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::DenseMatrix;

/// One diagonal block of `D`: a nonzero scalar or an antidiagonal 2x2 block
/// `[[0, a12], [a21, 0]]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum DBlock<E> {
    Scalar(E),
    AntiDiag(E, E),
}

impl<E> DBlock<E> {
    pub fn size(&self) -> usize {
        match self {
            DBlock::Scalar(_) => 1,
            DBlock::AntiDiag(..) => 2,
        }
    }

    pub fn is_antidiag(&self) -> bool {
        matches!(self, DBlock::AntiDiag(..))
    }
}

pub fn total_size<E>(blocks: &[DBlock<E>]) -> usize {
    blocks.iter().map(DBlock::size).sum()
}

/// Start offset of each block.
pub fn offsets<E>(blocks: &[DBlock<E>]) -> Vec<usize> {
    let mut off = Vec::with_capacity(blocks.len());
    let mut at = 0;
    for b in blocks {
        off.push(at);
        at += b.size();
    }
    off
}

/// Assembles the block-diagonal `D` as a dense matrix.
pub fn d_matrix<F: Field>(f: &F, blocks: &[DBlock<F::Elem>]) -> DenseMatrix<F> {
    let r = total_size(blocks);
    let mut d = DenseMatrix::zeros(f, r, r);
    for (b, at) in blocks.iter().zip(offsets(blocks)) {
        match b {
            DBlock::Scalar(x) => d.set(at, at, x.clone()),
            DBlock::AntiDiag(a12, a21) => {
                d.set(at, at + 1, a12.clone());
                d.set(at + 1, at, a21.clone());
            }
        }
    }
    d
}

/// `D * Y` without forming `D`.
pub fn d_mul<F: Field>(f: &F, blocks: &[DBlock<F::Elem>], y: &DenseMatrix<F>) -> DenseMatrix<F> {
    assert_eq!(total_size(blocks), y.rows(), "D block sizes vs rows");
    let mut out = DenseMatrix::zeros(f, y.rows(), y.cols());
    for (b, at) in blocks.iter().zip(offsets(blocks)) {
        match b {
            DBlock::Scalar(x) => {
                for c in 0..y.cols() {
                    out.set(at, c, f.mul(x, y.get(at, c)));
                }
            }
            DBlock::AntiDiag(a12, a21) => {
                for c in 0..y.cols() {
                    out.set(at, c, f.mul(a12, y.get(at + 1, c)));
                    out.set(at + 1, c, f.mul(a21, y.get(at, c)));
                }
            }
        }
    }
    out
}

/// `D^{-1} * Y`.
pub fn d_solve<F: Field>(f: &F, blocks: &[DBlock<F::Elem>], y: &DenseMatrix<F>) -> Result<DenseMatrix<F>> {
    Ok(d_mul(f, &d_inverse(f, blocks)?, y))
}

/// Blockwise inverse. The inverse of `[[0, a12], [a21, 0]]` is
/// `[[0, 1/a21], [1/a12, 0]]`, again antidiagonal.
pub fn d_inverse<F: Field>(f: &F, blocks: &[DBlock<F::Elem>]) -> Result<Vec<DBlock<F::Elem>>> {
    blocks
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let sing = |_| Error::SingularDiagonal(i);
            Ok(match b {
                DBlock::Scalar(x) => DBlock::Scalar(f.inv(x).map_err(sing)?),
                DBlock::AntiDiag(a12, a21) => DBlock::AntiDiag(f.inv(a21).map_err(sing)?, f.inv(a12).map_err(sing)?),
            })
        })
        .collect()
}
