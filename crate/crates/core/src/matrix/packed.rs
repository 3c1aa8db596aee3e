//! Bit-packed GF(2) matrices, 64 entries per word.

use super::DenseMatrix;
use crate::field::Gf2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64);
        BitMatrix {
            rows,
            cols,
            words_per_row,
            bits: vec![0; rows * words_per_row],
        }
    }

    pub fn from_dense(a: &DenseMatrix<Gf2>) -> Self {
        let mut m = Self::zeros(a.rows(), a.cols());
        for i in 0..a.rows() {
            for (j, &v) in a.row(i).iter().enumerate() {
                if v != 0 {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn to_dense(&self, f: Gf2) -> DenseMatrix<Gf2> {
        DenseMatrix::from_fn(&f, self.rows, self.cols, |i, j| u8::from(self.get(i, j)))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.bits[i * self.words_per_row + j / 64] >> (j % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.bits[i * self.words_per_row + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words_per_row..(i + 1) * self.words_per_row]
    }

    /// Row `dst ^= src` over whole words.
    pub fn xor_row_from(&mut self, dst: usize, other: &BitMatrix, src: usize) {
        let w = self.words_per_row;
        let s = other.row_words(src).to_vec();
        for (d, x) in self.bits[dst * w..(dst + 1) * w].iter_mut().zip(s) {
            *d ^= x;
        }
    }

    /// Product by row accumulation: row i of the result is the XOR of the
    /// rows of `b` selected by the set bits of row i of `self`.
    pub fn mul(&self, b: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, b.rows, "bit matrix product dimensions");
        let mut c = BitMatrix::zeros(self.rows, b.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    c.xor_row_from(i, b, k);
                }
            }
        }
        c
    }

    /// Elementwise XOR.
    pub fn add(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        BitMatrix {
            rows: self.rows,
            cols: self.cols,
            words_per_row: self.words_per_row,
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a ^ b).collect(),
        }
    }
}
