//! File formats: Matrix Market input/output and JSON factor files.

mod json;
mod mtx;

pub use json::{read_factor_file, write_factor_file, FactorFile, FactorReport, Factors, Triplets, TransformRecord};
pub use mtx::{parse_matrix_market, read_matrix_market, write_matrix_market, MtxFile};
