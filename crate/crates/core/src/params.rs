//! Parameter sets `(p, m, s, l)` and the field they live over.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;
use crate::gf::{build_field, Field, FieldError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParamError {
    #[error("p = {0} must be a prime other than 3")]
    BadP(u64),
    #[error("l = {0} must be an odd prime other than 3")]
    BadL(u64),
    #[error("p and l must be coprime")]
    NotCoprime,
    #[error("m and s must be positive")]
    ZeroExponent,
    #[error("parameters overflow: {0}")]
    Overflow(String),
    #[error("field {0} does not have order p^m")]
    WrongField(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Validated parameters: code length `n = 3 l p^s` over `F_q`, `q = p^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    pub p: u64,
    pub m: u32,
    pub s: u32,
    pub l: u64,
}

impl Params {
    pub fn new(p: u64, m: u32, s: u32, l: u64) -> Result<Params, ParamError> {
        if p == 3 || !arith::is_prime(p) {
            return Err(ParamError::BadP(p));
        }
        if l == 3 || l % 2 == 0 || !arith::is_prime(l) {
            return Err(ParamError::BadL(l));
        }
        if p == l {
            return Err(ParamError::NotCoprime);
        }
        if m == 0 || s == 0 {
            return Err(ParamError::ZeroExponent);
        }
        let q = arith::checked_pow(p, m).ok_or_else(|| ParamError::Overflow(format!("{p}^{m}")))?;
        let ps = arith::checked_pow(p, s).ok_or_else(|| ParamError::Overflow(format!("{p}^{s}")))?;
        (3 * l)
            .checked_mul(ps)
            .filter(|&n| n <= u32::MAX as u64)
            .ok_or_else(|| ParamError::Overflow(format!("3*{l}*{p}^{s}")))?;
        if q > u32::MAX as u64 {
            return Err(ParamError::Overflow(format!("{p}^{m}")));
        }
        Ok(Params { p, m, s, l })
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.m)
    }

    /// `p^s`, the common multiplicity of every irreducible factor.
    pub fn ps(&self) -> u64 {
        self.p.pow(self.s)
    }

    /// Code length `3 l p^s`.
    pub fn n(&self) -> u64 {
        3 * self.l * self.ps()
    }

    /// `gcd(q - 1, n)`, the number of equivalence classes.
    pub fn d(&self) -> u64 {
        arith::gcd(self.q() - 1, self.n())
    }

    /// `ord_l(q)`.
    pub fn f(&self) -> u64 {
        arith::mult_order(self.q(), self.l).expect("p and l are coprime")
    }

    /// `(l - 1) / f`.
    pub fn e(&self) -> u64 {
        (self.l - 1) / self.f()
    }
}

/// Parameters bound to a concrete `F_q` with its generator `xi`.
#[derive(Debug, Clone)]
pub struct Instance {
    pub params: Params,
    pub field: Field,
}

impl Instance {
    /// Uses the default deterministic construction of `F_q`.
    pub fn new(params: Params) -> Result<Instance, ParamError> {
        let field = build_field(params.p, params.m)?;
        Ok(Instance { params, field })
    }

    /// Uses a caller-supplied field (for pinned runs).
    pub fn with_field(params: Params, field: Field) -> Result<Instance, ParamError> {
        if field.characteristic() as u64 != params.p || field.order() as u64 != params.q() {
            return Err(ParamError::WrongField(format!("{field:?}")));
        }
        Ok(Instance { params, field })
    }

    pub fn n(&self) -> usize {
        self.params.n() as usize
    }
}
