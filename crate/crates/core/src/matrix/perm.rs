use crate::error::{Error, Result};

/// A permutation stored as a position-to-index map with its cached inverse.
///
/// Applied to a matrix, row `i` of the permuted matrix is row `fwd[i]` of the
/// original.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    fwd: Vec<usize>,
    inv: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        let fwd: Vec<usize> = (0..n).collect();
        Permutation { inv: fwd.clone(), fwd }
    }

    pub fn from_vec(fwd: Vec<usize>) -> Result<Self> {
        let n = fwd.len();
        let mut inv = vec![usize::MAX; n];
        for (pos, &idx) in fwd.iter().enumerate() {
            if idx >= n || inv[idx] != usize::MAX {
                return Err(Error::InternalInvariantViolation(format!(
                    "not a permutation: index {idx} at position {pos}"
                )));
            }
            inv[idx] = pos;
        }
        Ok(Permutation { fwd, inv })
    }

    /// Transposition of positions `a` and `b`.
    pub fn swap(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.swap_positions(a, b);
        p
    }

    pub fn swap_positions(&mut self, a: usize, b: usize) {
        self.fwd.swap(a, b);
        self.inv[self.fwd[a]] = a;
        self.inv[self.fwd[b]] = b;
    }

    pub fn len(&self) -> usize {
        self.fwd.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fwd.is_empty()
    }

    /// Index placed at position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.fwd[i]
    }

    /// Position of index `j`.
    pub fn position(&self, j: usize) -> usize {
        self.inv[j]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.fwd
    }

    pub fn inverse_slice(&self) -> &[usize] {
        &self.inv
    }

    pub fn inverse(&self) -> Self {
        Permutation {
            fwd: self.inv.clone(),
            inv: self.fwd.clone(),
        }
    }

    /// `self` followed by `other` acting on positions: result[i] = self[other[i]].
    pub fn then(&self, other: &Permutation) -> Self {
        assert_eq!(self.len(), other.len());
        let fwd = other.fwd.iter().map(|&i| self.fwd[i]).collect();
        Permutation::from_vec(fwd).expect("composition of permutations")
    }

    pub fn is_identity(&self) -> bool {
        self.fwd.iter().enumerate().all(|(i, &j)| i == j)
    }
}
