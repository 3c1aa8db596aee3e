//! JSON factor files. Field elements are strings ("0"/"1", residues,
//! "p/q"); matrices are row-major coordinate triplets.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dense::{DBlock, Inertia, LDLResult, LUResult};
use crate::error::{Error, Result};
use crate::field::{Field, OpCounts};
use crate::matrix::{DenseMatrix, Permutation};
use crate::oracle::VerifyReport;
use crate::saddle::PartialLDL;
use crate::sparse::{Transcript, Transform};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FactorReport {
    pub mode: String,
    pub field: String,
    pub n: usize,
    pub m: usize,
    pub rank: usize,
    pub inertia: Option<Inertia>,
    pub nnz: BTreeMap<String, usize>,
    pub peel_count: Option<usize>,
    /// Maximal runs of one transform kind, by kind.
    pub transform_blocks: Option<BTreeMap<String, usize>>,
    pub ops: Option<OpCounts>,
    pub verify: Option<VerifyReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Triplets {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, String)>,
}

impl Triplets {
    pub fn from_dense<F: Field>(a: &DenseMatrix<F>) -> Self {
        let f = a.field();
        let entries = (0..a.rows())
            .flat_map(|i| (0..a.cols()).map(move |j| (i, j)))
            .filter(|&(i, j)| !f.is_zero(a.get(i, j)))
            .map(|(i, j)| (i, j, f.format(a.get(i, j))))
            .collect();
        Triplets {
            rows: a.rows(),
            cols: a.cols(),
            entries,
        }
    }

    pub fn to_dense<F: Field>(&self, f: &F) -> Result<DenseMatrix<F>> {
        let mut a = DenseMatrix::zeros(f, self.rows, self.cols);
        for (i, j, v) in &self.entries {
            if *i >= self.rows || *j >= self.cols {
                return Err(Error::Io(format!("triplet ({i}, {j}) outside {}x{}", self.rows, self.cols)));
            }
            a.set(*i, *j, f.parse(v)?);
        }
        Ok(a)
    }
}

/// One transform: `indices[0]` holds the pivots (or the peel target),
/// later groups the column supports; `values` is parallel, with the `D`
/// entries (or nothing for a peel) first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformRecord {
    pub kind: String,
    pub indices: Vec<Vec<usize>>,
    pub values: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Factors {
    Ldl {
        p: Vec<usize>,
        l: Triplets,
        d: Vec<DBlock<String>>,
        r: usize,
    },
    Lu {
        p: Vec<usize>,
        q: Vec<usize>,
        l: Triplets,
        u: Triplets,
        r: usize,
    },
    Transcript {
        n: usize,
        r: usize,
        max_bag: usize,
        pivot_order: Vec<usize>,
        peeled: Vec<usize>,
        d: Vec<DBlock<String>>,
        transforms: Vec<TransformRecord>,
    },
    SparseLu {
        transcript: Box<Factors>,
        explicit: Option<Box<Factors>>,
    },
    Saddle {
        p: Vec<usize>,
        q: Vec<usize>,
        y: Triplets,
        l: Triplets,
        u: Triplets,
        d: Vec<String>,
        r: usize,
        complete: Box<Factors>,
    },
}

fn fmt_block<F: Field>(f: &F, b: &DBlock<F::Elem>) -> DBlock<String> {
    match b {
        DBlock::Scalar(x) => DBlock::Scalar(f.format(x)),
        DBlock::AntiDiag(x, y) => DBlock::AntiDiag(f.format(x), f.format(y)),
    }
}

fn parse_block<F: Field>(f: &F, b: &DBlock<String>) -> Result<DBlock<F::Elem>> {
    Ok(match b {
        DBlock::Scalar(x) => DBlock::Scalar(f.parse(x)?),
        DBlock::AntiDiag(x, y) => DBlock::AntiDiag(f.parse(x)?, f.parse(y)?),
    })
}

fn split<F: Field>(f: &F, v: &[(usize, F::Elem)]) -> (Vec<usize>, Vec<String>) {
    v.iter().map(|(i, x)| (*i, f.format(x))).unzip()
}

fn join<F: Field>(f: &F, idx: &[usize], vals: &[String]) -> Result<Vec<(usize, F::Elem)>> {
    if idx.len() != vals.len() {
        return Err(Error::Io("transform index/value lengths differ".into()));
    }
    idx.iter().zip(vals).map(|(i, v)| Ok((*i, f.parse(v)?))).collect()
}

impl Factors {
    pub fn from_ldl<F: Field>(res: &LDLResult<F>) -> Self {
        let f = res.l.field();
        Factors::Ldl {
            p: res.p.as_slice().to_vec(),
            l: Triplets::from_dense(&res.l),
            d: res.d.iter().map(|b| fmt_block(f, b)).collect(),
            r: res.r,
        }
    }

    pub fn from_lu<F: Field>(res: &LUResult<F>) -> Self {
        Factors::Lu {
            p: res.p.as_slice().to_vec(),
            q: res.q.as_slice().to_vec(),
            l: Triplets::from_dense(&res.l),
            u: Triplets::from_dense(&res.u),
            r: res.r,
        }
    }

    pub fn from_transcript<F: Field>(f: &F, t: &Transcript<F::Elem>) -> Self {
        let transforms = t
            .transforms
            .iter()
            .map(|tr| match tr {
                Transform::VertexElim { pivot, col, d } => {
                    let (i, v) = split(f, col);
                    TransformRecord {
                        kind: "vertex".into(),
                        indices: vec![vec![*pivot], i],
                        values: vec![vec![f.format(d)], v],
                    }
                }
                Transform::EdgeElim { pivots, cols, block } => {
                    let (i0, v0) = split(f, &cols[0]);
                    let (i1, v1) = split(f, &cols[1]);
                    let dv = match fmt_block(f, block) {
                        DBlock::AntiDiag(x, y) => vec![x, y],
                        DBlock::Scalar(x) => vec![x],
                    };
                    TransformRecord {
                        kind: "edge".into(),
                        indices: vec![vec![pivots.0, pivots.1], i0, i1],
                        values: vec![dv, v0, v1],
                    }
                }
                Transform::Peel { target, coeffs } => {
                    let (i, v) = split(f, coeffs);
                    TransformRecord {
                        kind: "peel".into(),
                        indices: vec![vec![*target], i],
                        values: vec![Vec::new(), v],
                    }
                }
            })
            .collect();
        Factors::Transcript {
            n: t.n,
            r: t.r,
            max_bag: t.max_bag,
            pivot_order: t.pivot_order.clone(),
            peeled: t.peeled.clone(),
            d: t.d.iter().map(|b| fmt_block(f, b)).collect(),
            transforms,
        }
    }

    pub fn from_partial<F: Field>(fac: &PartialLDL<F>, complete: &LDLResult<F>) -> Self {
        let f = fac.y.field();
        Factors::Saddle {
            p: fac.p.as_slice().to_vec(),
            q: fac.q.as_slice().to_vec(),
            y: Triplets::from_dense(&fac.y),
            l: Triplets::from_dense(&fac.l),
            u: Triplets::from_dense(&fac.u),
            d: fac.d.iter().map(|x| f.format(x)).collect(),
            r: fac.r,
            complete: Box::new(Factors::from_ldl(complete)),
        }
    }

    fn wrong(want: &str) -> Error {
        Error::Io(format!("factor file does not hold {want} factors"))
    }

    pub fn to_ldl<F: Field>(&self, f: &F) -> Result<LDLResult<F>> {
        let Factors::Ldl { p, l, d, r } = self else {
            return Err(Self::wrong("LDL"));
        };
        Ok(LDLResult {
            p: Permutation::from_vec(p.clone())?,
            l: l.to_dense(f)?,
            d: d.iter().map(|b| parse_block(f, b)).collect::<Result<_>>()?,
            r: *r,
        })
    }

    pub fn to_lu<F: Field>(&self, f: &F) -> Result<LUResult<F>> {
        let Factors::Lu { p, q, l, u, r } = self else {
            return Err(Self::wrong("LU"));
        };
        Ok(LUResult {
            p: Permutation::from_vec(p.clone())?,
            q: Permutation::from_vec(q.clone())?,
            l: l.to_dense(f)?,
            u: u.to_dense(f)?,
            r: *r,
        })
    }

    pub fn to_transcript<F: Field>(&self, f: &F) -> Result<Transcript<F::Elem>> {
        let Factors::Transcript {
            n,
            r,
            max_bag,
            pivot_order,
            peeled,
            d,
            transforms,
        } = self
        else {
            return Err(Self::wrong("transcript"));
        };
        let bad = || Error::Io("malformed transform record".into());
        let transforms = transforms
            .iter()
            .map(|t| {
                let (ix, vs) = (&t.indices, &t.values);
                match t.kind.as_str() {
                    "vertex" if ix.len() == 2 && vs.len() == 2 && ix[0].len() == 1 && vs[0].len() == 1 => {
                        Ok(Transform::VertexElim {
                            pivot: ix[0][0],
                            col: join(f, &ix[1], &vs[1])?,
                            d: f.parse(&vs[0][0])?,
                        })
                    }
                    "edge" if ix.len() == 3 && vs.len() == 3 && ix[0].len() == 2 && vs[0].len() == 2 => {
                        Ok(Transform::EdgeElim {
                            pivots: (ix[0][0], ix[0][1]),
                            cols: [join(f, &ix[1], &vs[1])?, join(f, &ix[2], &vs[2])?],
                            block: DBlock::AntiDiag(f.parse(&vs[0][0])?, f.parse(&vs[0][1])?),
                        })
                    }
                    "peel" if ix.len() == 2 && vs.len() == 2 && ix[0].len() == 1 => Ok(Transform::Peel {
                        target: ix[0][0],
                        coeffs: join(f, &ix[1], &vs[1])?,
                    }),
                    _ => Err(bad()),
                }
            })
            .collect::<Result<_>>()?;
        Ok(Transcript {
            n: *n,
            r: *r,
            transforms,
            d: d.iter().map(|b| parse_block(f, b)).collect::<Result<_>>()?,
            pivot_order: pivot_order.clone(),
            peeled: peeled.clone(),
            max_bag: *max_bag,
        })
    }

    pub fn to_partial<F: Field>(&self, f: &F) -> Result<(PartialLDL<F>, LDLResult<F>)> {
        let Factors::Saddle {
            p,
            q,
            y,
            l,
            u,
            d,
            r,
            complete,
        } = self
        else {
            return Err(Self::wrong("saddle"));
        };
        let fac = PartialLDL {
            p: Permutation::from_vec(p.clone())?,
            q: Permutation::from_vec(q.clone())?,
            y: y.to_dense(f)?,
            l: l.to_dense(f)?,
            u: u.to_dense(f)?,
            d: d.iter().map(|x| f.parse(x)).collect::<Result<_>>()?,
            r: *r,
        };
        Ok((fac, complete.to_ldl(f)?))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorFile {
    pub report: FactorReport,
    pub factors: Factors,
}

/// Writes through a sibling temporary file and a rename, so readers never
/// see a partial file.
pub fn write_factor_file(path: &Path, file: &FactorFile) -> Result<()> {
    let io = |e: std::io::Error| Error::Io(format!("{}: {e}", path.display()));
    let mut text = serde_json::to_string_pretty(file).map_err(|e| Error::Io(e.to_string()))?;
    text.push('\n');
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    std::fs::write(&tmp, text).map_err(io)?;
    std::fs::rename(&tmp, path).map_err(io)
}

pub fn read_factor_file(path: &Path) -> Result<FactorFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
