use std::cmp::Ordering;

use dashu_base::{Inverse, Sign};
use dashu_int::IBig;
use dashu_ratio::RBig;
use rand::Rng;

use super::{Field, FieldContext, FieldKind};
use crate::error::{Error, Result};

/// The rationals, with arbitrary-precision numerators and denominators.
#[derive(Debug, Clone)]
pub struct Rationals {
    ctx: FieldContext,
}

impl Rationals {
    pub fn new() -> Self {
        Rationals {
            ctx: FieldContext::new(super::gfp::GFP_DEFAULT_CUTOFF),
        }
    }
}

impl Default for Rationals {
    fn default() -> Self {
        Self::new()
    }
}

impl Field for Rationals {
    type Elem = RBig;

    fn kind(&self) -> FieldKind {
        FieldKind::Rational
    }

    fn context(&self) -> &FieldContext {
        &self.ctx
    }

    fn context_mut(&mut self) -> &mut FieldContext {
        &mut self.ctx
    }

    fn zero(&self) -> RBig {
        RBig::ZERO
    }

    fn one(&self) -> RBig {
        RBig::ONE
    }

    fn from_i64(&self, v: i64) -> RBig {
        RBig::from(v)
    }

    fn is_zero(&self, a: &RBig) -> bool {
        a.is_zero()
    }

    fn raw_add(&self, a: &RBig, b: &RBig) -> RBig {
        a + b
    }

    fn raw_sub(&self, a: &RBig, b: &RBig) -> RBig {
        a - b
    }

    fn raw_mul(&self, a: &RBig, b: &RBig) -> RBig {
        a * b
    }

    fn raw_inv(&self, a: &RBig) -> Option<RBig> {
        (!a.is_zero()).then(|| a.inv())
    }

    fn neg(&self, a: &RBig) -> RBig {
        -a
    }

    fn sign(&self, a: &RBig) -> Option<Ordering> {
        Some(if a.is_zero() {
            Ordering::Equal
        } else if a.sign() == Sign::Positive {
            Ordering::Greater
        } else {
            Ordering::Less
        })
    }

    fn format(&self, a: &RBig) -> String {
        if a.is_int() {
            a.numerator().to_string()
        } else {
            format!("{}/{}", a.numerator(), a.denominator())
        }
    }

    fn parse(&self, s: &str) -> Result<RBig> {
        let s = s.trim();
        let bad = || Error::EntryOutOfField {
            line: 0,
            token: s.to_string(),
        };
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let int = |t: &str| -> Result<IBig> {
            let t = t.trim();
            // dashu rejects a leading '+'; accept it like the integer parsers do.
            let t = t.strip_prefix('+').filter(|r| !r.starts_with(['+', '-'])).unwrap_or(t);
            t.parse().map_err(|_| bad())
        };
        let (num, den) = (int(num)?, int(den)?);
        if den.is_zero() {
            return Err(bad());
        }
        Ok(RBig::from(num) / RBig::from(den))
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> RBig {
        let num: i64 = rng.gen_range(-9..=9);
        let den: i64 = rng.gen_range(1..=4);
        RBig::from(num) / RBig::from(den)
    }
}
