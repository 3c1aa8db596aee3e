//! Matrix Market coordinate files. Besides `integer` and `pattern`, the
//! field tag `rational` accepts `p/q` tokens.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::field::{Field, FieldKind};
use crate::matrix::DenseMatrix;

#[derive(Debug, Clone)]
pub struct MtxFile<F: Field> {
    pub matrix: DenseMatrix<F>,
    /// Only one triangle was stored; the other is implied by conjugation.
    pub symmetric: bool,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

pub fn parse_matrix_market<F: Field>(text: &str, f: &F) -> Result<MtxFile<F>> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or_else(|| perr(1, "empty file"))?;
    let words: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    if words.len() != 5 || words[0] != "%%matrixmarket" || words[1] != "matrix" || words[2] != "coordinate" {
        return Err(perr(1, "expected '%%MatrixMarket matrix coordinate <field> <symmetry>'"));
    }
    let pattern = match words[3].as_str() {
        "pattern" => true,
        "integer" | "rational" => false,
        other => return Err(perr(1, format!("unsupported field '{other}'"))),
    };
    let integer = words[3] == "integer";
    let symmetric = match words[4].as_str() {
        "general" => false,
        "symmetric" | "hermitian" => true,
        other => return Err(perr(1, format!("unsupported symmetry '{other}'"))),
    };
    let mut body = lines.filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('%'));
    let (sl, size) = body.next().ok_or_else(|| perr(2, "missing size line"))?;
    let dims: Vec<usize> = size
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| perr(sl, format!("bad size token '{t}'"))))
        .collect::<Result<_>>()?;
    let [m, n, nnz] = dims[..] else {
        return Err(perr(sl, "size line needs rows, cols and entry count"));
    };
    if symmetric && m != n {
        return Err(perr(sl, "symmetric matrix must be square"));
    }
    let mut a = DenseMatrix::zeros(f, m, n);
    let mut count = 0;
    for (ln, l) in body {
        let toks: Vec<&str> = l.split_whitespace().collect();
        let want = if pattern { 2 } else { 3 };
        if toks.len() != want {
            return Err(perr(ln, format!("expected {want} tokens")));
        }
        let idx = |t: &str, hi: usize| -> Result<usize> {
            match t.parse::<usize>() {
                Ok(v) if v >= 1 && v <= hi => Ok(v - 1),
                _ => Err(perr(ln, format!("index '{t}' out of range"))),
            }
        };
        let (i, j) = (idx(toks[0], m)?, idx(toks[1], n)?);
        let v = if pattern {
            f.one()
        } else {
            let tok = toks[2];
            if integer && tok.contains('/') {
                return Err(Error::EntryOutOfField { line: ln, token: tok.into() });
            }
            f.parse(tok).map_err(|_| Error::EntryOutOfField { line: ln, token: tok.into() })?
        };
        a.set(i, j, v.clone());
        if symmetric && i != j {
            a.set(j, i, f.conj(&v));
        }
        count += 1;
    }
    if count != nnz {
        return Err(perr(sl, format!("header promises {nnz} entries, found {count}")));
    }
    Ok(MtxFile { matrix: a, symmetric })
}

pub fn read_matrix_market<F: Field>(path: &Path, f: &F) -> Result<MtxFile<F>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_matrix_market(&text, f)
}

/// Row-major coordinate listing; `symmetric` writes the lower triangle only.
pub fn write_matrix_market<F: Field>(a: &DenseMatrix<F>, symmetric: bool) -> String {
    let f = a.field();
    let tag = if f.kind() == FieldKind::Rational { "rational" } else { "integer" };
    let sym = if symmetric { "symmetric" } else { "general" };
    let entries: Vec<(usize, usize)> = (0..a.rows())
        .flat_map(|i| (0..a.cols()).map(move |j| (i, j)))
        .filter(|&(i, j)| (!symmetric || j <= i) && !f.is_zero(a.get(i, j)))
        .collect();
    let mut out = format!("%%MatrixMarket matrix coordinate {tag} {sym}\n{} {} {}\n", a.rows(), a.cols(), entries.len());
    for (i, j) in entries {
        let _ = writeln!(out, "{} {} {}", i + 1, j + 1, f.format(a.get(i, j)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf2, Gfp, Rationals};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pattern_symmetric() {
        let f = Gf2::new();
        let m = parse_matrix_market("%%MatrixMarket matrix coordinate pattern symmetric\n2 2 1\n2 1\n", &f).unwrap();
        assert!(m.symmetric);
        assert_eq!(m.matrix, DenseMatrix::from_i64(&f, &[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn integer_reduced() {
        let f = Gfp::new(7).unwrap();
        let m = parse_matrix_market("%%MatrixMarket matrix coordinate integer general\n% c\n1 2 1\n1 2 9\n", &f).unwrap();
        assert_eq!(*m.matrix.get(0, 1), 2);
    }

    #[test]
    fn errors_carry_lines() {
        let f = Gf2::new();
        let e = parse_matrix_market("%%MatrixMarket matrix array real general\n", &f).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        let e = parse_matrix_market("%%MatrixMarket matrix coordinate rational general\n1 1 1\n1 1 1/2\n", &f).unwrap_err();
        assert_eq!(e, Error::EntryOutOfField { line: 3, token: "1/2".into() });
        let e = parse_matrix_market("%%MatrixMarket matrix coordinate integer general\n2 2 1\n3 1 1\n", &f).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        let e = parse_matrix_market("%%MatrixMarket matrix coordinate integer general\n2 2 2\n1 1 1\n", &f).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let q = Rationals::new();
        let a = DenseMatrix::random_symmetric(&q, 6, &mut rng);
        for sym in [false, true] {
            let back = parse_matrix_market(&write_matrix_market(&a, sym), &q).unwrap();
            assert_eq!(back.matrix, a);
        }
        let f = Gfp::new(1009).unwrap();
        let b = DenseMatrix::random(&f, 4, 7, &mut rng);
        assert_eq!(parse_matrix_market(&write_matrix_market(&b, false), &f).unwrap().matrix, b);
    }
}
