//! Command-line front end: `factor` runs a pipeline and writes factors,
//! `verify` re-checks a factor file against its matrix.
//!
//! Exit codes: 0 success, 1 input or usage error, 2 verification failure.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::dense::{fast_ldl, fast_lu, inertia_from_d};
use crate::error::{Error, Result};
use crate::field::{Field, FieldKind, Gf2, Gfp, Rationals};
use crate::io::{read_factor_file, read_matrix_market, write_factor_file, FactorFile, FactorReport, Factors};
use crate::matrix::DenseMatrix;
use crate::oracle::{oracle_verify_ldl, oracle_verify_lu, oracle_verify_plu, oracle_verify_partial_ldl, oracle_verify_transcript, VerifyReport};
use crate::saddle::{complete_saddle_ldl, schilders_partial_ldl, SaddleSystem};
use crate::sparse::{sparse_lu, tree_ldl, SparseSym, Transcript, TransformKind};
use crate::tree::{greedy_td, normalize, read_td_file, TreeDecomposition};

#[derive(Parser, Debug)]
#[command(name = "exactldl", version, about = "Exact LDL / LU factorization over finite fields and the rationals")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Factor a matrix and report on the result.
    Factor(FactorArgs),
    /// Re-check a factor file against its matrix.
    Verify(VerifyArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    DenseLdl,
    DenseLu,
    SparseLdl,
    SparseLu,
    Saddle,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::DenseLdl => "dense-ldl",
            Mode::DenseLu => "dense-lu",
            Mode::SparseLdl => "sparse-ldl",
            Mode::SparseLu => "sparse-lu",
            Mode::Saddle => "saddle",
        }
    }
}

/// Where the saddle blocks come from.
#[derive(Args, Debug, Clone)]
struct SaddleInput {
    /// In saddle mode: the matrix file holds the whole block matrix and
    /// its first N rows/columns form A; the rows below form B.
    #[arg(long, value_name = "N")]
    saddle_split: Option<usize>,
    /// In saddle mode: file holding B, with --matrix holding A.
    #[arg(long, value_name = "PATH")]
    constraints: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FactorArgs {
    /// gf2, gfp:<p> or rational.
    #[arg(long)]
    field: String,
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long, value_enum)]
    mode: Mode,
    /// PACE .td decomposition of the matrix (sparse-lu: of the embedding,
    /// columns first).
    #[arg(long)]
    td: Option<PathBuf>,
    /// Build a min-degree decomposition instead of reading one.
    #[arg(long)]
    greedy_td: bool,
    #[command(flatten)]
    saddle: SaddleInput,
    /// Check the result with the reference routines; exit 2 on failure.
    #[arg(long)]
    verify: bool,
    /// Count field operations.
    #[arg(long)]
    stats: bool,
    #[arg(long)]
    strassen_cutoff: Option<usize>,
    /// JSON factor file to write.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for randomized helpers; every current pipeline is deterministic.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    field: String,
    #[arg(long)]
    matrix: PathBuf,
    /// JSON factor file written by `factor`.
    #[arg(long)]
    factors: PathBuf,
    #[command(flatten)]
    saddle: SaddleInput,
}

/// Runs a field-generic body with the field named by `name`.
macro_rules! with_field {
    ($name:expr, $cutoff:expr, |$f:ident| $body:expr) => {{
        let cutoff: Option<usize> = $cutoff;
        match $name.parse::<FieldKind>() {
            Err(e) => Err(e),
            Ok(FieldKind::Gf2) => {
                let mut $f = Gf2::new();
                if let Some(c) = cutoff {
                    $f.set_strassen_cutoff(c);
                }
                $body
            }
            Ok(FieldKind::Gfp(p)) => match Gfp::new(p) {
                Err(e) => Err(e),
                Ok(mut $f) => {
                    if let Some(c) = cutoff {
                        $f.set_strassen_cutoff(c);
                    }
                    $body
                }
            },
            Ok(FieldKind::Rational) => {
                let mut $f = Rationals::new();
                if let Some(c) = cutoff {
                    $f.set_strassen_cutoff(c);
                }
                $body
            }
        }
    }};
}

/// Parses `args` (program name first) and runs; returns the exit code.
/// The JSON report goes to stdout.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_output(args, &mut std::io::stdout().lock())
}

/// Like [`run`], writing the JSON report to `out`.
pub fn run_with_output<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let res = match &cli.cmd {
        Command::Factor(a) => with_field!(&a.field, a.strassen_cutoff, |f| factor(f, a, out)),
        Command::Verify(a) => with_field!(&a.field, None, |f| verify(f, a, out)),
    };
    match res {
        Ok(true) => 0,
        Ok(false) => 2,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn read<F: Field>(path: &Path, f: &F) -> Result<DenseMatrix<F>> {
    Ok(read_matrix_market(path, f)?.matrix)
}

fn saddle_system<F: Field>(f: &F, matrix: &Path, input: &SaddleInput, default_split: Option<usize>) -> Result<SaddleSystem<F>> {
    let a = read(matrix, f)?;
    if let Some(bp) = &input.constraints {
        return SaddleSystem::new(a, read(bp, f)?);
    }
    let k = input
        .saddle_split
        .or(default_split)
        .ok_or_else(|| Error::Usage("saddle mode needs --saddle-split or --constraints".into()))?;
    let (rows, cols) = a.shape();
    if k > cols || k > rows {
        return Err(Error::Usage(format!("--saddle-split {k} exceeds the matrix")));
    }
    SaddleSystem::new(a.block(0, k, 0, k), a.block(k, rows, 0, k))
}

fn embedding<F: Field>(b: &DenseMatrix<F>) -> DenseMatrix<F> {
    let f = b.field();
    let (m, n) = b.shape();
    let mut e = DenseMatrix::zeros(f, n + m, n + m);
    e.set_block(n, 0, b);
    e.set_block(0, n, &b.h());
    e
}

fn decomposition(args: &FactorArgs, n: usize, graph: impl FnOnce() -> crate::tree::Graph) -> Result<TreeDecomposition> {
    match (&args.td, args.greedy_td) {
        (Some(p), _) => {
            let td = read_td_file(p)?;
            if td.n() != n {
                return Err(Error::InvalidDecomposition(format!("decomposition covers {} vertices, expected {n}", td.n())));
            }
            Ok(td)
        }
        (None, true) => Ok(greedy_td(&graph())),
        (None, false) => Err(Error::Usage(format!("{} needs --td or --greedy-td", args.mode.name()))),
    }
}

fn block_histogram<E>(t: &Transcript<E>) -> BTreeMap<String, usize> {
    let mut h = BTreeMap::new();
    let mut last = None;
    for tr in &t.transforms {
        let k = tr.kind();
        if last != Some(k) {
            let name = if k == TransformKind::Peel { "peel" } else { "elimination" };
            *h.entry(name.to_string()).or_insert(0) += 1;
        }
        last = Some(k);
    }
    h
}

fn combine(a: VerifyReport, b: VerifyReport) -> VerifyReport {
    VerifyReport {
        ok: a.ok && b.ok,
        first_violation: a.first_violation.or(b.first_violation),
        reconstruction_error_count: a.reconstruction_error_count + b.reconstruction_error_count,
    }
}

fn square<F: Field>(a: &DenseMatrix<F>, mode: Mode) -> Result<()> {
    if !a.is_square() || !a.is_h_symmetric() {
        return Err(Error::Usage(format!("{} needs a square symmetric matrix", mode.name())));
    }
    Ok(())
}

fn factor<F: Field>(mut f: F, args: &FactorArgs, sink: &mut dyn Write) -> Result<bool> {
    let counter = args.stats.then(|| f.enable_counter());
    let mut report = FactorReport {
        mode: args.mode.name().into(),
        field: f.kind().to_string(),
        ..Default::default()
    };
    let ordered = f.kind() == FieldKind::Rational;
    let (factors, check): (Factors, Option<VerifyReport>) = match args.mode {
        Mode::DenseLdl => {
            let a = read(&args.matrix, &f)?;
            square(&a, args.mode)?;
            let res = fast_ldl(&a)?;
            report.n = a.rows();
            report.rank = res.r;
            report.nnz.insert("L".into(), res.l.nnz());
            report.nnz.insert("D".into(), res.d_matrix().nnz());
            if ordered {
                report.inertia = inertia_from_d(&f, &res.d, a.rows()).ok();
            }
            let check = args.verify.then(|| oracle_verify_ldl(&a, &res));
            (Factors::from_ldl(&res), check)
        }
        Mode::DenseLu => {
            let a = read(&args.matrix, &f)?;
            let res = fast_lu(&a);
            (report.m, report.n, report.rank) = (a.rows(), a.cols(), res.r);
            report.nnz.insert("L".into(), res.l.nnz());
            report.nnz.insert("U".into(), res.u.nnz());
            let check = args.verify.then(|| oracle_verify_lu(&a, &res));
            (Factors::from_lu(&res), check)
        }
        Mode::SparseLdl => {
            let a = read(&args.matrix, &f)?;
            square(&a, args.mode)?;
            let s = SparseSym::from_dense(&a);
            let td = decomposition(args, a.rows(), || s.graph())?;
            let t = tree_ldl(&s, &normalize(&td))?;
            report.n = a.rows();
            report.rank = t.r;
            report.peel_count = Some(t.peel_count());
            report.transform_blocks = Some(block_histogram(&t));
            report.nnz.insert("transcript".into(), t.total_off_diag_nnz());
            if ordered {
                report.inertia = inertia_from_d(&f, &t.d, a.rows()).ok();
            }
            let check = args.verify.then(|| oracle_verify_transcript(&a, &t));
            (Factors::from_transcript(&f, &t), check)
        }
        Mode::SparseLu => {
            let b = read(&args.matrix, &f)?;
            let (m, n) = b.shape();
            let td = match (&args.td, args.greedy_td) {
                (None, true) => None,
                _ => Some(decomposition(args, n + m, || unreachable!())?),
            };
            let lu = sparse_lu(&b, td.as_ref())?;
            let explicit = match &lu.explicit {
                Some(e) => Some(e.clone()),
                None if args.verify => Some(lu.to_explicit()?),
                None => None,
            };
            (report.m, report.n, report.rank) = (m, n, lu.r);
            report.peel_count = Some(lu.transcript.peel_count());
            report.transform_blocks = Some(block_histogram(&lu.transcript));
            report.nnz.insert("transcript".into(), lu.transcript.total_off_diag_nnz());
            if let Some(e) = &explicit {
                report.nnz.insert("L".into(), e.l.nnz());
                report.nnz.insert("U".into(), e.u.nnz());
            }
            let check = args.verify.then(|| {
                let t = oracle_verify_transcript(&embedding(&b), &lu.transcript);
                combine(oracle_verify_plu(&b, explicit.as_ref().expect("computed for verify")), t)
            });
            let factors = Factors::SparseLu {
                transcript: Box::new(Factors::from_transcript(&f, &lu.transcript)),
                explicit: explicit.as_ref().map(|e| Box::new(Factors::from_lu(e))),
            };
            (factors, check)
        }
        Mode::Saddle => {
            let s = saddle_system(&f, &args.matrix, &args.saddle, None)?;
            let fac = schilders_partial_ldl(&s)?;
            let full = complete_saddle_ldl(&s, &fac)?;
            (report.n, report.m, report.rank) = (s.n(), s.m(), full.r);
            report.nnz.insert("Y".into(), fac.y.nnz());
            report.nnz.insert("L".into(), fac.l.nnz());
            report.nnz.insert("U".into(), fac.u.nnz());
            report.nnz.insert("complete_L".into(), full.l.nnz());
            if ordered {
                report.inertia = inertia_from_d(&f, &full.d, s.n() + s.m()).ok();
            }
            let check = args
                .verify
                .then(|| combine(oracle_verify_partial_ldl(&s, &fac), oracle_verify_ldl(&s.assemble(), &full)));
            (Factors::from_partial(&fac, &full), check)
        }
    };
    report.ops = counter.map(|c| c.snapshot());
    let ok = check.as_ref().map_or(true, |c| c.ok);
    report.verify = check;
    let summary = serde_json::to_string_pretty(&report).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(sink, "{summary}").map_err(|e| Error::Io(e.to_string()))?;
    if let Some(out) = &args.out {
        write_factor_file(out, &FactorFile { report, factors })?;
    }
    Ok(ok)
}

fn verify<F: Field>(f: F, args: &VerifyArgs, sink: &mut dyn Write) -> Result<bool> {
    let file = read_factor_file(&args.factors)?;
    let rep = match &file.factors {
        Factors::Ldl { .. } => oracle_verify_ldl(&read(&args.matrix, &f)?, &file.factors.to_ldl(&f)?),
        Factors::Lu { .. } => oracle_verify_lu(&read(&args.matrix, &f)?, &file.factors.to_lu(&f)?),
        Factors::Transcript { .. } => oracle_verify_transcript(&read(&args.matrix, &f)?, &file.factors.to_transcript(&f)?),
        Factors::SparseLu { transcript, explicit } => {
            let b = read(&args.matrix, &f)?;
            let mut rep = oracle_verify_transcript(&embedding(&b), &transcript.to_transcript(&f)?);
            if let Some(e) = explicit {
                rep = combine(oracle_verify_plu(&b, &e.to_lu(&f)?), rep);
            }
            rep
        }
        Factors::Saddle { .. } => {
            let s = saddle_system(&f, &args.matrix, &args.saddle, Some(file.report.n))?;
            let (fac, full) = file.factors.to_partial(&f)?;
            combine(oracle_verify_partial_ldl(&s, &fac), oracle_verify_ldl(&s.assemble(), &full))
        }
    };
    let text = serde_json::to_string_pretty(&rep).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(sink, "{text}").map_err(|e| Error::Io(e.to_string()))?;
    Ok(rep.ok)
}
