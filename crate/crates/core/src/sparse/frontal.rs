//! Bag-local dense work: peeling, constraint complementation and block
//! elimination on one frontal matrix.

use super::transcript::{SparseVec, Transcript, Transform};
use crate::dense::dblock::{d_inverse, d_matrix, offsets};
use crate::dense::{fast_ldl, fast_lu, DBlock};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::tri::{tri_solve, Side, TriShape};
use crate::matrix::DenseMatrix;
use crate::saddle::{complete_saddle_ldl, gamma_eliminate_partial, schilders_partial_ldl, SaddleSystem};

/// How delayed constraint rows are paired off with eliminable vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Complementation {
    /// Triangular-solve construction; the general default.
    #[default]
    Schilders,
    /// Pivot-by-pivot elimination. Keeps a zero diagonal zero, so bipartite
    /// inputs only see edge eliminations.
    Gamma,
}

/// Coefficients expressing row `target` of `a` through the rows in `basis`,
/// as a peel transform in the local indices of `a`.
pub fn peel_vertex<F: Field>(a: &DenseMatrix<F>, target: usize, basis: &[usize]) -> Result<Transform<F::Elem>> {
    let f = a.field();
    if basis.contains(&target) {
        return Err(Error::InternalInvariantViolation("peel target inside its own basis".into()));
    }
    let rows = a.select_rows(basis);
    let lu = fast_lu(&rows);
    let r = lu.r;
    let z = a.select(&[target], lu.q.as_slice());
    let u11 = lu.u.block(0, r, 0, r);
    let w = tri_solve(&u11, &z.block(0, 1, 0, r), Side::Right, TriShape::Upper)?;
    if w.mul(&lu.u) != z {
        return Err(Error::NotInSpan);
    }
    let c = tri_solve(&lu.l.block(0, r, 0, r), &w, Side::Right, TriShape::LowerUnit)?;
    let coeffs = (0..r)
        .filter(|&j| !f.is_zero(c.get(0, j)))
        .map(|j| (basis[lu.p.at(j)], c.get(0, j).clone()))
        .collect();
    Ok(Transform::Peel { target, coeffs })
}

/// Dense frontal matrix over `idx` (global vertex ids), laid out as
/// delayed rows, then eliminable vertices, then the interface.
pub(crate) struct Frontal<F: Field> {
    pub idx: Vec<usize>,
    pub w: DenseMatrix<F>,
    live: Vec<bool>,
}

pub(crate) struct BagOutput<F: Field> {
    pub iface: Vec<usize>,
    pub s: DenseMatrix<F>,
    pub f_rows: Vec<usize>,
    pub f: DenseMatrix<F>,
}

impl<F: Field> Frontal<F> {
    pub fn new(idx: Vec<usize>, w: DenseMatrix<F>) -> Self {
        let live = vec![true; idx.len()];
        Frontal { idx, w, live }
    }

    fn live_in(&self, range: std::ops::Range<usize>) -> Vec<usize> {
        range.filter(|&i| self.live[i]).collect()
    }

    fn sparse(&self, entries: impl Iterator<Item = (usize, F::Elem)>) -> SparseVec<F::Elem> {
        let f = self.w.field();
        entries.filter(|(_, v)| !f.is_zero(v)).map(|(i, v)| (self.idx[i], v)).collect()
    }

    /// Peels every row of `rows` that the LU of `W[rows, cols]` finds
    /// dependent. The caller guarantees these rows vanish outside `cols`.
    /// Returns the independent rows in their original order.
    fn peel_dependent(&mut self, rows: &[usize], cols: &[usize], out: &mut Transcript<F::Elem>) -> Result<Vec<usize>> {
        let lu = fast_lu(&self.w.select(rows, cols));
        let (m, r) = (rows.len(), lu.r);
        let l1 = lu.l.block(0, r, 0, r);
        let c = tri_solve(&l1, &lu.l.block(r, m, 0, r), Side::Right, TriShape::LowerUnit)?;
        for d in 0..m - r {
            let target = rows[lu.p.at(r + d)];
            let coeffs = self.sparse((0..r).map(|j| (rows[lu.p.at(j)], c.get(d, j).clone())));
            out.transforms.push(Transform::Peel {
                target: self.idx[target],
                coeffs,
            });
            out.peeled.push(self.idx[target]);
            self.live[target] = false;
        }
        let mut keep: Vec<usize> = (0..r).map(|j| rows[lu.p.at(j)]).collect();
        keep.sort_unstable();
        Ok(keep)
    }

    /// Eliminates the pivot block `piv` given its factor
    /// `W[piv, piv] = lpp D lpp^H`, updating the live remainder with the
    /// Schur complement and emitting one transform per block of `D`.
    fn block_eliminate(
        &mut self,
        piv: &[usize],
        lpp: &DenseMatrix<F>,
        d: &[DBlock<F::Elem>],
        out: &mut Transcript<F::Elem>,
    ) -> Result<()> {
        let f = self.w.field().clone();
        for &p in piv {
            self.live[p] = false;
        }
        let rest = self.live_in(0..self.idx.len());
        let m_rp = self.w.select(&rest, piv);
        let x = tri_solve(&lpp.h(), &m_rp, Side::Right, TriShape::UpperUnit)?;
        let lrp = x.mul(&d_matrix(&f, &d_inverse(&f, d)?));
        let upd = x.mul(&lrp.h());
        for (a, &ra) in rest.iter().enumerate() {
            for (b, &rb) in rest.iter().enumerate() {
                let v = f.sub(self.w.get(ra, rb), upd.get(a, b));
                self.w.set(ra, rb, v);
            }
        }
        let column = |k: usize, skip: usize| {
            let below = (k + 1..piv.len()).filter(|&j| j != skip).map(|j| (piv[j], lpp.get(j, k).clone()));
            let outside = rest.iter().enumerate().map(|(i, &ri)| (ri, lrp.get(i, k).clone()));
            self.sparse(below.chain(outside))
        };
        for (blk, k) in d.iter().zip(offsets(d)) {
            let t = match blk {
                DBlock::Scalar(v) => Transform::VertexElim {
                    pivot: self.idx[piv[k]],
                    col: column(k, usize::MAX),
                    d: v.clone(),
                },
                DBlock::AntiDiag(..) => {
                    if !f.is_zero(lpp.get(k + 1, k)) {
                        return Err(Error::InternalInvariantViolation("coupled edge pivot columns".into()));
                    }
                    Transform::EdgeElim {
                        pivots: (self.idx[piv[k]], self.idx[piv[k + 1]]),
                        cols: [column(k, k + 1), column(k + 1, usize::MAX)],
                        block: blk.clone(),
                    }
                }
            };
            out.transforms.push(t);
            out.d.push(blk.clone());
            for j in 0..blk.size() {
                out.pivot_order.push(self.idx[piv[k + j]]);
            }
            out.r += blk.size();
        }
        Ok(())
    }

    fn is_zero_block(&self, rows: &[usize], cols: &[usize]) -> bool {
        let f = self.w.field();
        rows.iter().all(|&i| cols.iter().all(|&j| f.is_zero(self.w.get(i, j))))
    }

    /// One bag step. `nr` delayed rows come first, then `ne` vertices to
    /// eliminate; the rest is the interface kept for the parent.
    pub fn substep(
        mut self,
        nr: usize,
        ne: usize,
        comp: Complementation,
        out: &mut Transcript<F::Elem>,
    ) -> Result<BagOutput<F>> {
        let total = self.idx.len();
        let (e_range, i_range) = (nr..nr + ne, nr + ne..total);
        let iface: Vec<usize> = i_range.clone().collect();
        let ecols: Vec<usize> = (nr..total).collect();
        out.max_bag = out.max_bag.max(total - nr);

        // 1: drop delayed rows that depend on the others.
        let r_rows: Vec<usize> = (0..nr).collect();
        let r_ind = if nr > 0 { self.peel_dependent(&r_rows, &ecols, out)? } else { Vec::new() };

        // 2: pair independent constraint rows with eliminable vertices.
        let e_all: Vec<usize> = e_range.clone().collect();
        if !r_ind.is_empty() && ne > 0 {
            let b1 = self.w.select(&r_ind, &e_all);
            let lu = fast_lu(&b1.h());
            let r1 = lu.r;
            if r1 > 0 {
                let ea: Vec<usize> = (0..r1).map(|k| e_all[lu.p.at(k)]).collect();
                let rb: Vec<usize> = (0..r1).map(|k| r_ind[lu.q.at(k)]).collect();
                let sub = SaddleSystem::new(self.w.select(&ea, &ea), self.w.select(&rb, &ea))?;
                let fac = match comp {
                    Complementation::Schilders => schilders_partial_ldl(&sub)?,
                    Complementation::Gamma => gamma_eliminate_partial(&sub),
                };
                let full = complete_saddle_ldl(&sub, &fac)?;
                if full.r != 2 * r1 {
                    return Err(Error::InternalInvariantViolation("constraint pair block is singular".into()));
                }
                let piv: Vec<usize> = full.p.as_slice()[..2 * r1]
                    .iter()
                    .map(|&k| if k < r1 { ea[k] } else { rb[k - r1] })
                    .collect();
                self.block_eliminate(&piv, &full.l.block(0, 2 * r1, 0, 2 * r1), &full.d, out)?;
            }
            if !self.is_zero_block(&self.live_in(0..nr), &self.live_in(e_range.clone())) {
                return Err(Error::InternalInvariantViolation("constraints survive complementation".into()));
            }
        }

        // 3: eliminate the rank of what is left of the eliminable block.
        let e_rem = self.live_in(e_range.clone());
        if !e_rem.is_empty() {
            let ldl = fast_ldl(&self.w.select(&e_rem, &e_rem))?;
            if ldl.r > 0 {
                let piv: Vec<usize> = (0..ldl.r).map(|k| e_rem[ldl.p.at(k)]).collect();
                self.block_eliminate(&piv, &ldl.l.block(0, ldl.r, 0, ldl.r), &ldl.d, out)?;
            }
            let e_left = self.live_in(e_range.clone());
            if !self.is_zero_block(&e_left, &e_left) {
                return Err(Error::InternalInvariantViolation("eliminable block not exhausted".into()));
            }
        }

        // 4: what remains couples to the interface only; peel its
        // dependent rows and hand the rest up as constraints.
        let mut rows = self.live_in(0..nr);
        rows.extend(self.live_in(e_range));
        let keep = self.peel_dependent(&rows, &iface, out)?;
        let fm = self.w.select(&keep, &iface);
        if fast_lu(&fm).r != keep.len() {
            return Err(Error::InternalInvariantViolation("delayed rows not full rank".into()));
        }
        Ok(BagOutput {
            iface: iface.iter().map(|&i| self.idx[i]).collect(),
            s: self.w.select(&iface, &iface),
            f_rows: keep.iter().map(|&i| self.idx[i]).collect(),
            f: fm,
        })
    }
}
