use rand::Rng;

use super::{Field, FieldContext, FieldKind};
use crate::error::{Error, Result};
use crate::matrix::{packed::BitMatrix, DenseMatrix};

/// The two-element field. Elements are `0` or `1`.
#[derive(Debug, Clone)]
pub struct Gf2 {
    ctx: FieldContext,
}

/// Default Strassen cutoff for GF(2), in bit columns.
pub const GF2_DEFAULT_CUTOFF: usize = 256;

impl Gf2 {
    pub fn new() -> Self {
        Gf2 {
            ctx: FieldContext::new(GF2_DEFAULT_CUTOFF),
        }
    }
}

impl Default for Gf2 {
    fn default() -> Self {
        Self::new()
    }
}

impl Field for Gf2 {
    type Elem = u8;

    fn kind(&self) -> FieldKind {
        FieldKind::Gf2
    }

    fn context(&self) -> &FieldContext {
        &self.ctx
    }

    fn context_mut(&mut self) -> &mut FieldContext {
        &mut self.ctx
    }

    fn zero(&self) -> u8 {
        0
    }

    fn one(&self) -> u8 {
        1
    }

    fn from_i64(&self, v: i64) -> u8 {
        v.rem_euclid(2) as u8
    }

    fn is_zero(&self, a: &u8) -> bool {
        *a == 0
    }

    fn raw_add(&self, a: &u8, b: &u8) -> u8 {
        a ^ b
    }

    fn raw_sub(&self, a: &u8, b: &u8) -> u8 {
        a ^ b
    }

    fn raw_mul(&self, a: &u8, b: &u8) -> u8 {
        a & b
    }

    fn raw_inv(&self, a: &u8) -> Option<u8> {
        (*a == 1).then_some(1)
    }

    fn neg(&self, a: &u8) -> u8 {
        *a
    }

    fn format(&self, a: &u8) -> String {
        a.to_string()
    }

    fn parse(&self, s: &str) -> Result<u8> {
        let s = s.trim();
        let v: i64 = s.parse().map_err(|_| Error::EntryOutOfField {
            line: 0,
            token: s.to_string(),
        })?;
        Ok(self.from_i64(v))
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u8 {
        rng.gen_range(0..2)
    }

    fn classical_product(&self, a: &DenseMatrix<Self>, b: &DenseMatrix<Self>) -> DenseMatrix<Self> {
        let (m, k, n) = (a.rows(), a.cols(), b.cols());
        if let Some(c) = self.counter() {
            let mnk = (m * n * k) as u64;
            c.record_mul(mnk);
            c.record_add(mnk - (m * n) as u64 * u64::from(k > 0));
        }
        let pa = BitMatrix::from_dense(a);
        let pb = BitMatrix::from_dense(b);
        pa.mul(&pb).to_dense(self.clone())
    }
}
