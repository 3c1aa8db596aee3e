use rand::Rng;

use super::{Field, FieldContext, FieldKind};
use crate::error::{Error, Result};

/// Prime field GF(p) with residues in `[0, p)`.
#[derive(Debug, Clone)]
pub struct Gfp {
    p: u64,
    ctx: FieldContext,
}

pub const GFP_DEFAULT_CUTOFF: usize = 64;

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Gfp {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 {
            return Err(Error::ModulusOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Gfp {
            p,
            ctx: FieldContext::new(GFP_DEFAULT_CUTOFF),
        })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = ((acc as u128 * base as u128) % self.p as u128) as u64;
            }
            base = ((base as u128 * base as u128) % self.p as u128) as u64;
            e >>= 1;
        }
        acc
    }
}

impl Field for Gfp {
    type Elem = u64;

    fn kind(&self) -> FieldKind {
        FieldKind::Gfp(self.p)
    }

    fn context(&self) -> &FieldContext {
        &self.ctx
    }

    fn context_mut(&mut self) -> &mut FieldContext {
        &mut self.ctx
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn raw_add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn raw_sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn raw_mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn raw_inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }

    fn parse(&self, s: &str) -> Result<u64> {
        let s = s.trim();
        let v: i128 = s.parse().map_err(|_| Error::EntryOutOfField {
            line: 0,
            token: s.to_string(),
        })?;
        Ok(v.rem_euclid(self.p as i128) as u64)
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
}
