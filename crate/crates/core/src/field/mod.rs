//! Exact scalar fields.
//!
//! Every algorithm in the crate is generic over [`Field`]. A field value is a
//! context object: it knows its modulus (if any), carries the Strassen cutoff
//! used by matrix products, and optionally an [`OpCounter`] that records every
//! addition, multiplication and inversion performed through it.

mod counter;
mod gf2;
mod gfp;
mod rational;

pub use counter::{OpCounter, OpCounts};
pub use gf2::Gf2;
pub use gfp::Gfp;
pub use rational::Rationals;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

/// Which field a context represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    Gf2,
    Gfp(u64),
    Rational,
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Gf2 => write!(f, "gf2"),
            FieldKind::Gfp(p) => write!(f, "gfp:{p}"),
            FieldKind::Rational => write!(f, "rational"),
        }
    }
}

impl std::str::FromStr for FieldKind {
    type Err = Error;

    /// `gf2`, `gfp:<p>` or `rational`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gf2" => Ok(FieldKind::Gf2),
            "rational" => Ok(FieldKind::Rational),
            _ => s
                .strip_prefix("gfp:")
                .and_then(|p| p.parse().ok())
                .map(FieldKind::Gfp)
                .ok_or_else(|| Error::Usage(format!("unknown field '{s}'; use gf2, gfp:<p> or rational"))),
        }
    }
}

/// Shared per-context settings: the optional counter and the Strassen cutoff.
#[derive(Debug, Clone)]
pub struct FieldContext {
    counter: Option<Arc<OpCounter>>,
    strassen_cutoff: usize,
}

impl FieldContext {
    pub(crate) fn new(strassen_cutoff: usize) -> Self {
        FieldContext {
            counter: None,
            strassen_cutoff,
        }
    }

    pub fn counter(&self) -> Option<&OpCounter> {
        self.counter.as_deref()
    }

    pub fn strassen_cutoff(&self) -> usize {
        self.strassen_cutoff
    }
}

/// An exact field with a (possibly trivial) conjugation.
///
/// Implementors provide the uncounted `raw_*` primitives; the provided
/// methods route through the context counter.
pub trait Field: Clone + fmt::Debug + Send + Sync + Sized {
    type Elem: Clone + PartialEq + Eq + fmt::Debug + Send + Sync;

    fn kind(&self) -> FieldKind;
    fn context(&self) -> &FieldContext;
    fn context_mut(&mut self) -> &mut FieldContext;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn raw_add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn raw_sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn raw_mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Inverse of a nonzero element; `None` for zero.
    fn raw_inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    /// Conjugation. All shipped fields use the identity.
    fn conj(&self, a: &Self::Elem) -> Self::Elem {
        a.clone()
    }

    /// Sign of an element in an ordered field; `None` when the field is unordered.
    fn sign(&self, _a: &Self::Elem) -> Option<Ordering> {
        None
    }

    /// Canonical text form: "0"/"1", decimal residues, or "p/q".
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        loop {
            let x = self.random(rng);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if let Some(c) = self.counter() {
            c.record_add(1);
        }
        self.raw_add(a, b)
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if let Some(c) = self.counter() {
            c.record_add(1);
        }
        self.raw_sub(a, b)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if let Some(c) = self.counter() {
            c.record_mul(1);
        }
        self.raw_mul(a, b)
    }

    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        if let Some(c) = self.counter() {
            c.record_inv(1);
        }
        self.raw_inv(a).ok_or(Error::DivisionByZero)
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let bi = self.inv(b)?;
        Ok(self.mul(a, &bi))
    }

    fn counter(&self) -> Option<&OpCounter> {
        self.context().counter()
    }

    fn strassen_cutoff(&self) -> usize {
        self.context().strassen_cutoff()
    }

    /// Turns on operation counting, returning a handle to the fresh counter.
    fn enable_counter(&mut self) -> Arc<OpCounter> {
        let c = Arc::new(OpCounter::default());
        self.context_mut().counter = Some(c.clone());
        c
    }

    fn disable_counter(&mut self) {
        self.context_mut().counter = None;
    }

    fn set_strassen_cutoff(&mut self, cutoff: usize) {
        self.context_mut().strassen_cutoff = cutoff.max(1);
    }

    fn with_strassen_cutoff(mut self, cutoff: usize) -> Self {
        self.set_strassen_cutoff(cutoff);
        self
    }

    fn with_counter(mut self) -> Self {
        self.enable_counter();
        self
    }

    /// Snapshot of the counter; fails when counting is off.
    fn op_count_snapshot(&self) -> Result<OpCounts> {
        self.counter()
            .map(|c| c.snapshot())
            .ok_or(Error::CounterDisabled)
    }

    /// Classical product kernel used below the Strassen cutoff.
    ///
    /// GF(2) overrides this with a word-packed kernel.
    fn classical_product(
        &self,
        a: &DenseMatrix<Self>,
        b: &DenseMatrix<Self>,
    ) -> DenseMatrix<Self> {
        crate::matrix::mul::classical_scalar(a, b)
    }
}
