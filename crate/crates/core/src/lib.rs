//! Exact LDL and LU factorizations over GF(2), GF(p) and the rationals.

pub mod error;
pub mod field;
pub mod matrix;
pub mod dense;
pub mod saddle;
pub mod tree;
pub mod sparse;
pub mod oracle;
pub mod io;
pub mod cli;

pub use error::{Error, Result};
pub use field::{Field, FieldKind, Gf2, Gfp, Rationals};
pub use matrix::{DenseMatrix, Permutation};
