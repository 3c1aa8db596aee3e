//! LU of a rectangular matrix through the tree-driven LDL of its
//! bipartite embedding `[[0, B^H], [B, 0]]`.

use super::frontal::Complementation;
use super::transcript::{explicit_ldl_from_transcript, Transcript};
use super::tree_ldl::{tree_ldl_with, TreeLdlOptions};
use super::SparseSym;
use crate::dense::{DBlock, LUResult};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{DenseMatrix, Permutation};
use crate::tree::{greedy_td, normalize, TreeDecomposition};

/// Implicit LU: the embedding's transcript, with columns of `B` as
/// vertices `0..n` and rows as `n..n+m`.
#[derive(Debug, Clone)]
pub struct SparseLU<F: Field> {
    pub m: usize,
    pub n: usize,
    pub r: usize,
    pub transcript: Transcript<F::Elem>,
    /// Present when the rank deficiency is small enough for cheap recovery.
    pub explicit: Option<LUResult<F>>,
    field: F,
}

/// `td` must cover the embedding's pattern; a greedy decomposition is used
/// when none is given.
pub fn sparse_lu<F: Field>(b: &DenseMatrix<F>, td: Option<&TreeDecomposition>) -> Result<SparseLU<F>> {
    let f = b.field();
    let (m, n) = b.shape();
    let entries = (0..m).flat_map(|i| {
        (0..n)
            .filter(move |&j| !f.is_zero(b.get(i, j)))
            .map(move |j| (n + i, j, b.get(i, j).clone()))
    });
    let emb = SparseSym::from_entries(f, n + m, entries)?;
    let owned;
    let td = match td {
        Some(t) => t,
        None => {
            owned = greedy_td(&emb.graph());
            &owned
        }
    };
    let opts = TreeLdlOptions {
        retain: 0,
        complementation: Complementation::Gamma,
    };
    let transcript = tree_ldl_with(&emb, &normalize(td), opts)?.transcript;
    let r = transcript.r / 2;
    let mut out = SparseLU {
        m,
        n,
        r,
        transcript,
        explicit: None,
        field: f.clone(),
    };
    if m.max(n) - r <= 4 * out.transcript.max_bag.max(1) {
        out.explicit = Some(out.to_explicit()?);
    }
    Ok(out)
}

impl<F: Field> SparseLU<F> {
    /// `P B Q^T = L U`, read off the edge pairs of the embedding's factor.
    pub fn to_explicit(&self) -> Result<LUResult<F>> {
        let f = &self.field;
        let (m, n, r) = (self.m, self.n, self.r);
        let ldl = explicit_ldl_from_transcript(f, &self.transcript)?;
        let mut row_of = vec![0; n + m];
        for (i, &v) in ldl.p.as_slice().iter().enumerate() {
            row_of[v] = i;
        }
        let order = &self.transcript.pivot_order;
        let bad = |why: &str| Error::InternalInvariantViolation(format!("embedding factor: {why}"));
        // (column-side L column, row-side L column, coupling) per pair.
        let mut pairs = Vec::with_capacity(r);
        let mut at = 0;
        for blk in &self.transcript.d {
            let DBlock::AntiDiag(a12, a21) = blk else {
                return Err(bad("vertex elimination"));
            };
            let (p0, p1) = (order[at], order[at + 1]);
            let pair = match (p0 < n, p1 < n) {
                (true, false) => (at, at + 1, a21.clone(), p0, p1 - n),
                (false, true) => (at + 1, at, a12.clone(), p1, p0 - n),
                _ => return Err(bad("pivot pair inside one side")),
            };
            pairs.push(pair);
            at += 2;
        }
        let lcol = |v: usize, k: usize| ldl.l.get(row_of[v], k);
        for (cc, rc, ..) in &pairs {
            if (n..n + m).any(|v| !f.is_zero(lcol(v, *cc))) || (0..n).any(|v| !f.is_zero(lcol(v, *rc))) {
                return Err(bad("column crosses the bipartition"));
            }
        }
        let complete = |piv: Vec<usize>, len: usize| {
            let mut seen = vec![false; len];
            for &v in &piv {
                seen[v] = true;
            }
            let mut all = piv;
            all.extend((0..len).filter(|&v| !seen[v]));
            Permutation::from_vec(all)
        };
        let p = complete(pairs.iter().map(|x| x.4).collect(), m)?;
        let q = complete(pairs.iter().map(|x| x.3).collect(), n)?;
        let l = DenseMatrix::from_fn(f, m, r, |i, k| lcol(n + p.at(i), pairs[k].1).clone());
        let u = DenseMatrix::from_fn(f, r, n, |k, j| f.mul(&pairs[k].2, &f.conj(lcol(q.at(j), pairs[k].0))));
        Ok(LUResult { p, q, l, u, r })
    }
}
