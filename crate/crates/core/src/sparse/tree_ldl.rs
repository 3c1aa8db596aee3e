//! Bottom-up driver over a normalized tree decomposition.

use std::collections::HashMap;

use super::frontal::{BagOutput, Complementation, Frontal};
use super::transcript::Transcript;
use super::SparseSym;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::DenseMatrix;
use crate::tree::{ordered_rho, validate_td, NormalizedTD};

#[derive(Debug, Clone, Copy, Default)]
pub struct TreeLdlOptions {
    /// Root vertices left unfactored (taken from the end of the root's
    /// ordered vertex set). Zero factors everything.
    pub retain: usize,
    pub complementation: Complementation,
}

/// `A = L M L^H` where `M` holds `D` on the pivots, `s` on the retained
/// vertices and the constraint rows `f` coupling `f_rows` to them.
#[derive(Debug, Clone)]
pub struct TreeLdlOutput<F: Field> {
    pub transcript: Transcript<F::Elem>,
    pub retained: Vec<usize>,
    pub s: DenseMatrix<F>,
    pub f_rows: Vec<usize>,
    pub f: DenseMatrix<F>,
}

/// Complete peeled implicit LDL of `a`.
pub fn tree_ldl<F: Field>(a: &SparseSym<F>, td: &NormalizedTD) -> Result<Transcript<F::Elem>> {
    Ok(tree_ldl_with(a, td, TreeLdlOptions::default())?.transcript)
}

pub fn tree_ldl_with<F: Field>(a: &SparseSym<F>, ntd: &NormalizedTD, opts: TreeLdlOptions) -> Result<TreeLdlOutput<F>> {
    let f = a.field();
    let n = a.n();
    let td = &ntd.td;
    if td.n() != n {
        return Err(Error::InvalidDecomposition(format!("decomposition over {} vertices, matrix has {n}", td.n())));
    }
    validate_td(td, &a.graph())?;

    let post = td.bag_post_order();
    let mut rank_of = vec![0; td.num_bags()];
    for (k, &b) in post.iter().enumerate() {
        rank_of[b] = k;
    }
    let mut home = vec![0; n];
    for (b, vs) in ntd.rho.iter().enumerate() {
        for &v in vs {
            home[v] = b;
        }
    }
    // Each entry is assembled at the deeper of its endpoints' top bags.
    let mut entries: Vec<Vec<(usize, usize, F::Elem)>> = vec![Vec::new(); td.num_bags()];
    for i in 0..n {
        for (j, v) in a.upper_row(i) {
            let b = if rank_of[home[i]] <= rank_of[home[*j]] { home[i] } else { home[*j] };
            entries[b].push((i, *j, v.clone()));
        }
    }

    let mut out = Transcript::new(n);
    let mut done: Vec<Option<BagOutput<F>>> = (0..td.num_bags()).map(|_| None).collect();
    let root = td.root();
    for &x in &post {
        let mut e = ordered_rho(td, x, &ntd.rho[x]);
        let mut iface: Vec<usize> = td.bag(x).iter().copied().filter(|v| home[*v] != x).collect();
        if x == root && opts.retain > 0 {
            if opts.retain > e.len() {
                return Err(Error::InvalidDecomposition("retain exceeds the root bag".into()));
            }
            let kept = e.split_off(e.len() - opts.retain);
            iface.extend(kept);
        }
        let kids: Vec<BagOutput<F>> = td.children(x).iter().map(|&c| done[c].take().expect("child first")).collect();
        let r: Vec<usize> = kids.iter().flat_map(|k| k.f_rows.iter().copied()).collect();
        let idx: Vec<usize> = r.iter().chain(&e).chain(&iface).copied().collect();
        let loc: HashMap<usize, usize> = idx.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let mut w = DenseMatrix::zeros(f, idx.len(), idx.len());
        let add = |w: &mut DenseMatrix<F>, i: usize, j: usize, v: &F::Elem| {
            let (li, lj) = (loc[&i], loc[&j]);
            *w.get_mut(li, lj) = f.add(w.get(li, lj), v);
            if li != lj {
                *w.get_mut(lj, li) = f.add(w.get(lj, li), &f.conj(v));
            }
        };
        for k in &kids {
            for (a_, &g) in k.f_rows.iter().enumerate() {
                for (b, &c) in k.iface.iter().enumerate() {
                    add(&mut w, g, c, k.f.get(a_, b));
                }
            }
            for (a_, &u) in k.iface.iter().enumerate() {
                for (b, &v) in k.iface.iter().enumerate().skip(a_) {
                    add(&mut w, u, v, k.s.get(a_, b));
                }
            }
        }
        for (i, j, v) in &entries[x] {
            add(&mut w, *i, *j, v);
        }
        let res = Frontal::new(idx, w).substep(r.len(), e.len(), opts.complementation, &mut out)?;
        done[x] = Some(res);
    }
    let top = done[root].take().expect("root processed");
    Ok(TreeLdlOutput {
        transcript: out,
        retained: top.iface,
        s: top.s,
        f_rows: top.f_rows,
        f: top.f,
    })
}
