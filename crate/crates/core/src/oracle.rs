//! Naive, independent reference checks. Nothing here calls the fast
//! elimination code; products and ranks use plain scalar loops.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dense::{fast_ldl, inertia_from_d, DBlock, Inertia, LDLResult, LUResult};
use crate::field::Field;
use crate::matrix::DenseMatrix;
use crate::saddle::{PartialLDL, SaddleSystem};
use crate::sparse::{Transcript, Transform};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub first_violation: Option<String>,
    pub reconstruction_error_count: usize,
}

impl VerifyReport {
    fn new() -> Self {
        VerifyReport {
            ok: true,
            first_violation: None,
            reconstruction_error_count: 0,
        }
    }

    fn fail(&mut self, msg: impl FnOnce() -> String) {
        if self.ok {
            self.first_violation = Some(msg());
        }
        self.ok = false;
    }

    /// Entrywise comparison; records the first mismatch.
    fn compare<F: Field>(&mut self, what: &str, lhs: &[Vec<F::Elem>], rhs: &[Vec<F::Elem>]) {
        for (i, (a, b)) in lhs.iter().zip(rhs).enumerate() {
            for (j, (x, y)) in a.iter().zip(b).enumerate() {
                if x != y {
                    self.reconstruction_error_count += 1;
                    self.fail(|| format!("{what} mismatch at ({i}, {j})"));
                }
            }
        }
    }
}

type Rows<E> = Vec<Vec<E>>;

fn rows_of<F: Field>(a: &DenseMatrix<F>) -> Rows<F::Elem> {
    (0..a.rows()).map(|i| a.row(i).to_vec()).collect()
}

fn zeros<F: Field>(f: &F, m: usize, n: usize) -> Rows<F::Elem> {
    vec![vec![f.zero(); n]; m]
}

fn naive_mul<F: Field>(f: &F, a: &Rows<F::Elem>, b: &Rows<F::Elem>, inner: usize) -> Rows<F::Elem> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner)
                        .filter(|&k| !f.is_zero(&row[k]) && !f.is_zero(&b[k][j]))
                        .fold(f.zero(), |acc, k| f.add(&acc, &f.mul(&row[k], &b[k][j])))
                })
                .collect()
        })
        .collect()
}

fn conj_t<F: Field>(f: &F, a: &Rows<F::Elem>, cols: usize) -> Rows<F::Elem> {
    (0..cols).map(|j| a.iter().map(|r| f.conj(&r[j])).collect()).collect()
}

/// Rank by Gaussian elimination with a full pivot search.
pub fn oracle_rank<F: Field>(a: &DenseMatrix<F>) -> usize {
    let f = a.field();
    let (m, n) = a.shape();
    let mut w = rows_of(a);
    let mut r = 0;
    while r < m.min(n) {
        let piv = (r..m).flat_map(|i| (r..n).map(move |j| (i, j))).find(|&(i, j)| !f.is_zero(&w[i][j]));
        let Some((pi, pj)) = piv else { break };
        w.swap(r, pi);
        for row in w.iter_mut() {
            row.swap(r, pj);
        }
        let inv = f.inv(&w[r][r]).expect("nonzero pivot");
        for i in r + 1..m {
            if f.is_zero(&w[i][r]) {
                continue;
            }
            let k = f.mul(&w[i][r], &inv);
            for j in r..n {
                let v = f.sub(&w[i][j], &f.mul(&k, &w[r][j]));
                w[i][j] = v;
            }
        }
        r += 1;
    }
    r
}

fn block_rows<F: Field>(f: &F, blocks: &[DBlock<F::Elem>], r: usize) -> Option<Rows<F::Elem>> {
    let mut d = zeros(f, r, r);
    let mut at = 0;
    for b in blocks {
        match b {
            DBlock::Scalar(x) => {
                if at >= r {
                    return None;
                }
                d[at][at] = x.clone();
            }
            DBlock::AntiDiag(x, y) => {
                if at + 1 >= r {
                    return None;
                }
                d[at][at + 1] = x.clone();
                d[at + 1][at] = y.clone();
            }
        }
        at += b.size();
    }
    (at == r).then_some(d)
}

fn check_blocks<F: Field>(rep: &mut VerifyReport, f: &F, blocks: &[DBlock<F::Elem>]) {
    for (k, b) in blocks.iter().enumerate() {
        let legal = match b {
            DBlock::Scalar(x) => !f.is_zero(x) && f.conj(x) == *x,
            DBlock::AntiDiag(x, y) => !f.is_zero(x) && f.conj(x) == *y,
        };
        if !legal {
            rep.fail(|| format!("D block {k} is not a legal pivot block"));
        }
    }
}

fn check_unit_lower<F: Field>(rep: &mut VerifyReport, f: &F, l: &DenseMatrix<F>, what: &str) {
    for k in 0..l.cols().min(l.rows()) {
        if *l.get(k, k) != f.one() {
            rep.fail(|| format!("{what} diagonal at {k} is not one"));
        }
        if let Some(i) = (0..k).find(|&i| !f.is_zero(l.get(i, k))) {
            rep.fail(|| format!("{what} nonzero above the diagonal at ({i}, {k})"));
        }
    }
}

/// `P^T A P = L D L^H` exactly, with a legal shape and `r` equal to the rank.
pub fn oracle_verify_ldl<F: Field>(a: &DenseMatrix<F>, res: &LDLResult<F>) -> VerifyReport {
    let f = a.field();
    let n = a.rows();
    let r = res.r;
    let mut rep = VerifyReport::new();
    if !a.is_square() || res.p.len() != n || res.l.shape() != (n, r) {
        rep.fail(|| format!("shape: A {:?}, L {:?}, P {}", a.shape(), res.l.shape(), res.p.len()));
        return rep;
    }
    check_unit_lower(&mut rep, f, &res.l, "L");
    check_blocks(&mut rep, f, &res.d);
    let Some(d) = block_rows(f, &res.d, r) else {
        rep.fail(|| "D blocks do not tile r".into());
        return rep;
    };
    let pa: Rows<_> = (0..n)
        .map(|i| (0..n).map(|j| a.get(res.p.at(i), res.p.at(j)).clone()).collect())
        .collect();
    let l = rows_of(&res.l);
    let ldlh = naive_mul(f, &naive_mul(f, &l, &d, r), &conj_t(f, &l, r), r);
    rep.compare::<F>("P^T A P vs L D L^H", &pa, &ldlh);
    let rank = oracle_rank(a);
    if rank != r {
        rep.fail(|| format!("rank {r}, oracle rank {rank}"));
    }
    rep
}

/// `P A Q^T = L U` exactly, plus the order-preserving row pivots and the
/// staircase shape of the row-ordered `L`.
pub fn oracle_verify_lu<F: Field>(a: &DenseMatrix<F>, res: &LUResult<F>) -> VerifyReport {
    let mut rep = oracle_verify_plu(a, res);
    if rep.ok {
        check_lu_order(&mut rep, a.field(), res);
    }
    rep
}

/// Only the pivot-order and staircase part of [`oracle_verify_lu`].
pub fn oracle_check_lu_order<F: Field>(res: &LUResult<F>) -> VerifyReport {
    let mut rep = VerifyReport::new();
    check_lu_order(&mut rep, res.l.field(), res);
    rep
}

/// `P A Q^T = L U` with trapezoidal factors and the right rank; no
/// constraint on which rows carry pivots.
pub fn oracle_verify_plu<F: Field>(a: &DenseMatrix<F>, res: &LUResult<F>) -> VerifyReport {
    let f = a.field();
    let (m, n) = a.shape();
    let r = res.r;
    let mut rep = VerifyReport::new();
    if res.p.len() != m || res.q.len() != n || res.l.shape() != (m, r) || res.u.shape() != (r, n) {
        rep.fail(|| format!("shape: A {:?}, L {:?}, U {:?}", a.shape(), res.l.shape(), res.u.shape()));
        return rep;
    }
    check_unit_lower(&mut rep, f, &res.l, "L");
    for k in 0..r {
        if f.is_zero(res.u.get(k, k)) {
            rep.fail(|| format!("U diagonal at {k} is zero"));
        }
        if let Some(j) = (0..k).find(|&j| !f.is_zero(res.u.get(k, j))) {
            rep.fail(|| format!("U nonzero below the diagonal at ({k}, {j})"));
        }
    }
    let pa: Rows<_> = (0..m)
        .map(|i| (0..n).map(|j| a.get(res.p.at(i), res.q.at(j)).clone()).collect())
        .collect();
    let lu = naive_mul(f, &rows_of(&res.l), &rows_of(&res.u), r);
    rep.compare::<F>("P A Q^T vs L U", &pa, &lu);
    let rank = oracle_rank(a);
    if rank != r {
        rep.fail(|| format!("rank {r}, oracle rank {rank}"));
    }
    rep
}

/// First `r` rows of `P A` keep their relative order, and in the row
/// order of `A` each column of `L` starts strictly below the previous one.
fn check_lu_order<F: Field>(rep: &mut VerifyReport, f: &F, res: &LUResult<F>) {
    let r = res.r;
    let piv: Vec<usize> = (0..r).map(|k| res.p.at(k)).collect();
    if let Some(k) = (1..r).find(|&k| piv[k - 1] >= piv[k]) {
        rep.fail(|| format!("pivot rows out of order at {k}"));
    }
    let mut prev = None;
    for k in 0..r {
        let lead = (0..res.l.rows())
            .filter(|&i| !f.is_zero(res.l.get(i, k)))
            .map(|i| res.p.at(i))
            .min();
        match (prev, lead) {
            (_, None) => rep.fail(|| format!("L column {k} is zero")),
            (Some(p), Some(c)) if c <= p => rep.fail(|| format!("staircase not strictly increasing at column {k}")),
            _ => {}
        }
        if lead.is_some() && lead != Some(piv[k]) {
            rep.fail(|| format!("column {k} leads before its pivot row"));
        }
        prev = lead;
    }
}

/// The constraint-complemented partial LDL identity with its shape rules:
/// `Y` strictly lower, `L` unit lower, `U` upper with nonzero diagonal,
/// `D` self-adjoint, the embedded LU of `B^H`, and a residual confined to
/// the trailing block.
pub fn oracle_verify_partial_ldl<F: Field>(s: &SaddleSystem<F>, fac: &PartialLDL<F>) -> VerifyReport {
    let f = s.a.field();
    let (n, m, r) = (s.n(), s.m(), fac.r);
    let mut rep = VerifyReport::new();
    if fac.p.len() != n
        || fac.q.len() != m
        || fac.y.shape() != (n, r)
        || fac.l.shape() != (n, r)
        || fac.u.shape() != (r, m)
        || fac.d.len() != r
    {
        rep.fail(|| "factor shapes".into());
        return rep;
    }
    for k in 0..r {
        if let Some(i) = (0..=k).find(|&i| !f.is_zero(fac.y.get(i, k))) {
            rep.fail(|| format!("Y nonzero on or above the diagonal at ({i}, {k})"));
        }
        if f.is_zero(fac.u.get(k, k)) {
            rep.fail(|| format!("U diagonal at {k} is zero"));
        }
        if let Some(j) = (0..k).find(|&j| !f.is_zero(fac.u.get(k, j))) {
            rep.fail(|| format!("U nonzero below the diagonal at ({k}, {j})"));
        }
        if f.conj(&fac.d[k]) != fac.d[k] {
            rep.fail(|| format!("D entry {k} not self-adjoint"));
        }
    }
    check_unit_lower(&mut rep, f, &fac.l, "L");
    let bh: Rows<_> = (0..n)
        .map(|i| (0..m).map(|j| f.conj(s.b.get(fac.q.at(j), fac.p.at(i)))).collect())
        .collect();
    let lu = naive_mul(f, &rows_of(&fac.l), &rows_of(&fac.u), r);
    rep.compare::<F>("P^T B^H Q vs L U", &bh, &lu);

    let mut v = rows_of(&fac.y);
    for k in 0..r {
        v[k][k] = f.sub(&v[k][k], &fac.d[k]);
    }
    let l = rows_of(&fac.l);
    let lh = conj_t(f, &l, r);
    let vlh = naive_mul(f, &v, &lh, r);
    let mut dl = zeros(f, r, n);
    for k in 0..r {
        for j in 0..n {
            dl[k][j] = f.mul(&fac.d[k], &lh[k][j]);
        }
    }
    let ldlh = naive_mul(f, &l, &dl, r);
    for i in 0..n {
        for j in 0..n {
            if i >= r && j >= r {
                continue;
            }
            let mut x = s.a.get(fac.p.at(i), fac.p.at(j)).clone();
            x = f.sub(&x, &vlh[i][j]);
            x = f.sub(&x, &f.conj(&vlh[j][i]));
            x = f.sub(&x, &ldlh[i][j]);
            if !f.is_zero(&x) {
                rep.reconstruction_error_count += 1;
                rep.fail(|| format!("residual outside the trailing block at ({i}, {j})"));
            }
        }
    }
    let rank = oracle_rank(&s.b);
    if rank != r {
        rep.fail(|| format!("r = {r}, rank of B = {rank}"));
    }
    rep
}

/// Replays a transcript one congruence at a time from its `D` and compares
/// with `a`; also checks pivot/peel bookkeeping and `peel_count = n - r`.
pub fn oracle_verify_transcript<F: Field>(a: &DenseMatrix<F>, t: &Transcript<F::Elem>) -> VerifyReport {
    let f = a.field();
    let n = a.rows();
    let mut rep = VerifyReport::new();
    if t.n != n || t.pivot_order.len() != t.r || t.pivot_order.len() + t.peeled.len() != n {
        rep.fail(|| "transcript bookkeeping".into());
        return rep;
    }
    check_blocks(&mut rep, f, &t.d);
    let Some(d) = block_rows(f, &t.d, t.r) else {
        rep.fail(|| "D blocks do not tile r".into());
        return rep;
    };
    let mut used = vec![false; n];
    let mut m = zeros(f, n, n);
    for (x, &i) in t.pivot_order.iter().enumerate() {
        for (y, &j) in t.pivot_order.iter().enumerate() {
            m[i][j] = d[x][y].clone();
        }
    }
    // Forward pass: every column may only touch indices still live.
    for (k, tr) in t.transforms.iter().enumerate() {
        let (own, touched): (Vec<usize>, Vec<usize>) = match tr {
            Transform::VertexElim { pivot, col, .. } => (vec![*pivot], col.iter().map(|e| e.0).collect()),
            Transform::EdgeElim { pivots, cols, .. } => (
                vec![pivots.0, pivots.1],
                cols.iter().flatten().map(|e| e.0).collect(),
            ),
            Transform::Peel { target, coeffs } => (vec![*target], coeffs.iter().map(|e| e.0).collect()),
        };
        if own.iter().chain(&touched).any(|&v| v >= n || used[v]) || touched.iter().any(|v| own.contains(v)) {
            rep.fail(|| format!("transform {k} touches an index that is no longer live"));
            return rep;
        }
        for v in own {
            used[v] = true;
        }
    }
    for tr in t.transforms.iter().rev() {
        // E = I + U as a list of (row, col, value) entries of U.
        let u: Vec<(usize, usize, F::Elem)> = match tr {
            Transform::VertexElim { pivot, col, .. } => col.iter().map(|(i, v)| (*i, *pivot, v.clone())).collect(),
            Transform::EdgeElim { pivots, cols, .. } => cols[0]
                .iter()
                .map(|(i, v)| (*i, pivots.0, v.clone()))
                .chain(cols[1].iter().map(|(i, v)| (*i, pivots.1, v.clone())))
                .collect(),
            Transform::Peel { target, coeffs } => coeffs.iter().map(|(s, v)| (*target, *s, v.clone())).collect(),
        };
        // M <- E M, then M <- M E^H. In place: the liveness check above
        // keeps every source row and column out of the updated set.
        for (i, c, v) in &u {
            for j in 0..n {
                let x = f.add(&m[*i][j], &f.mul(v, &m[*c][j]));
                m[*i][j] = x;
            }
        }
        for (i, c, v) in &u {
            let cv = f.conj(v);
            for row in m.iter_mut() {
                row[*i] = f.add(&row[*i], &f.mul(&row[*c], &cv));
            }
        }
    }
    rep.compare::<F>("transcript replay vs A", &m, &rows_of(a));
    let rank = oracle_rank(a);
    if rank != t.r {
        rep.fail(|| format!("transcript rank {}, oracle rank {rank}", t.r));
    }
    rep
}

/// Inertia of `fast_ldl(A)` against `fast_ldl(G A G^H)` for random
/// invertible `G`. Requires an ordered field.
pub fn oracle_inertia_congruence<F: Field, R: Rng + ?Sized>(a: &DenseMatrix<F>, trials: usize, rng: &mut R) -> VerifyReport {
    let f = a.field();
    let n = a.rows();
    let mut rep = VerifyReport::new();
    let inertia = |x: &DenseMatrix<F>| -> Option<Inertia> {
        let ldl = fast_ldl(x).ok()?;
        inertia_from_d(f, &ldl.d, n).ok()
    };
    let Some(base) = inertia(a) else {
        rep.fail(|| "no inertia for the input".into());
        return rep;
    };
    for t in 0..trials {
        // Unit lower times nonzero-diagonal upper: invertible by construction.
        let lo: Rows<_> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { f.one() } else if j < i { f.random(rng) } else { f.zero() }).collect())
            .collect();
        let up: Rows<_> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { f.random_nonzero(rng) } else if j > i { f.random(rng) } else { f.zero() }).collect())
            .collect();
        let g = naive_mul(f, &lo, &up, n);
        let gag = naive_mul(f, &naive_mul(f, &g, &rows_of(a), n), &conj_t(f, &g, n), n);
        let gm = DenseMatrix::from_vec(f, n, n, gag.concat()).expect("square");
        match inertia(&gm) {
            Some(i) if i == base => {}
            other => rep.fail(|| format!("trial {t}: inertia {other:?} vs {base:?}")),
        }
    }
    rep
}
