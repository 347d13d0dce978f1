//! Equivalence classes of units, and the constacyclic codes of one table.
//!
//! A `lambda`-constacyclic code of length `n` is an ideal `<g>` of
//! `F_q[x]/(x^n - lambda)`, named here by the exponent vector of `g` over the
//! irreducible factors of `x^n - lambda`.

use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::arith;
use crate::factorizer::{factor_modulus, FactorError, FactorTable};
use crate::gf::{Elem, FieldError};
use crate::params::{Instance, Params};
use crate::poly::{PolyError, Polynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error("units lie in different classes (j = {0} and j = {1}); no scaling x -> a x relates them")]
    ClassMismatch(u64, u64),
    #[error("exponent vector {0:?} does not fit the factor table")]
    BadExponents(Vec<u32>),
    #[error("{0} does not divide x^n - lambda")]
    NotDivisor(String),
    #[error("closed-form dual disagrees with the reciprocal of the check polynomial in case {case}: {detail}")]
    DualMismatch { case: String, detail: String },
    #[error("cannot parse lambda {0:?}: use a xi-power, [c0,c1,...], @code, or all")]
    BadLambda(String),
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `lambda` lies in `xi^(j p^s) <xi^d>` with `d = gcd(q - 1, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CosetClass {
    pub d: u64,
    pub j: u64,
}

/// The unique class index of `lambda`.
pub fn classify_unit(inst: &Instance, lambda: Elem) -> Result<CosetClass, CodeError> {
    let log = inst.field.log(lambda).ok_or(CodeError::ZeroLambda)?;
    let d = inst.params.d();
    if d == 1 {
        return Ok(CosetClass { d, j: 0 });
    }
    let ps = inst.params.ps() % d;
    let inv = arith::inv_mod(ps, d).expect("p is coprime to q - 1");
    let j = arith::mul_mod(log % d, inv, d);
    debug_assert_eq!((log + d * ps) % d, arith::mul_mod(j, ps, d));
    Ok(CosetClass { d, j })
}

/// The `a = xi^k` with the smallest `k >= 0` such that `a^n lambda = mu`.
pub fn equivalence_scalar(inst: &Instance, lambda: Elem, mu: Elem) -> Result<Elem, CodeError> {
    let field = &inst.field;
    let (ll, lm) = (
        field.log(lambda).ok_or(CodeError::ZeroLambda)?,
        field.log(mu).ok_or(CodeError::ZeroLambda)?,
    );
    let q1 = inst.params.q() - 1;
    let n = inst.params.n() % q1;
    let d = inst.params.d();
    let delta = arith::rem(lm as i64 - ll as i64, q1);
    if delta % d != 0 {
        let (a, b) = (classify_unit(inst, lambda)?, classify_unit(inst, mu)?);
        return Err(CodeError::ClassMismatch(a.j, b.j));
    }
    // n k = delta (mod q - 1)  <=>  (n/d) k = delta/d (mod (q-1)/d).
    let m = q1 / d;
    let k = if m == 1 {
        0
    } else {
        let inv = arith::inv_mod((n / d) % m, m).expect("n/d is coprime to (q-1)/d");
        arith::mul_mod((delta / d) % m, inv, m)
    };
    let a = field.xi_pow(k as i64);
    debug_assert_eq!(field.mul(field.pow(a, inst.params.n()), lambda), mu);
    Ok(a)
}

/// The class representatives `xi^(j p^s)`, `0 <= j < d`.
pub fn class_representatives(inst: &Instance) -> Vec<Elem> {
    let ps = inst.params.ps();
    (0..inst.params.d())
        .map(|j| inst.field.xi_pow((j * ps) as i64))
        .collect()
}

/// How a unit is written on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LambdaSpec {
    /// `xi^k`.
    XiPower(i64),
    /// Coefficients over `F_p`, low-degree-first.
    Coeffs(Vec<u32>),
    /// Integer code of the element; for a prime field, the residue itself.
    Code(u32),
    /// Every class representative.
    All,
}

impl FromStr for LambdaSpec {
    type Err = CodeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || CodeError::BadLambda(s.to_string());
        if t.eq_ignore_ascii_case("all") {
            return Ok(LambdaSpec::All);
        }
        if let Some(rest) = t.strip_prefix('@') {
            return rest.trim().parse().map(LambdaSpec::Code).map_err(|_| bad());
        }
        if let Some(inner) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            if inner.trim().is_empty() {
                return Err(bad());
            }
            return inner
                .split(',')
                .map(|c| c.trim().parse::<u32>())
                .collect::<Result<Vec<_>, _>>()
                .map(LambdaSpec::Coeffs)
                .map_err(|_| bad());
        }
        t.parse().map(LambdaSpec::XiPower).map_err(|_| bad())
    }
}

impl LambdaSpec {
    /// The units this spec names.
    pub fn resolve(&self, inst: &Instance) -> Result<Vec<Elem>, CodeError> {
        let field = &inst.field;
        let one = |e: Elem| {
            if e.is_zero() {
                Err(CodeError::ZeroLambda)
            } else {
                Ok(vec![e])
            }
        };
        match self {
            LambdaSpec::XiPower(k) => Ok(vec![field.xi_pow(*k)]),
            LambdaSpec::Coeffs(c) => one(field.from_coeffs(c)?),
            LambdaSpec::Code(c) => one(field.elem(*c)?),
            LambdaSpec::All => Ok(class_representatives(inst)),
        }
    }
}

/// One code: the generator `prod factor_i^exponents[i]` over a factor table.
#[derive(Debug, Clone)]
pub struct CodeHandle {
    pub params: Params,
    pub table: Arc<FactorTable>,
    pub exponents: Vec<u32>,
}

impl CodeHandle {
    pub fn new(params: Params, table: Arc<FactorTable>, exponents: Vec<u32>) -> Result<CodeHandle, CodeError> {
        if exponents.len() != table.len()
            || exponents
                .iter()
                .zip(&table.entries)
                .any(|(&e, entry)| e > entry.multiplicity)
        {
            return Err(CodeError::BadExponents(exponents));
        }
        Ok(CodeHandle {
            params,
            table,
            exponents,
        })
    }

    /// Recovers the exponent vector of a monic divisor of `x^n - lambda`.
    pub fn from_generator(params: Params, table: Arc<FactorTable>, g: &Polynomial) -> Result<CodeHandle, CodeError> {
        let g = g.monic();
        if !g.divides(&table.target()) {
            return Err(CodeError::NotDivisor(g.to_string()));
        }
        let mut rest = g;
        let mut exponents = Vec::with_capacity(table.len());
        for entry in &table.entries {
            let mut e = 0;
            while let Some(q) = rest.div_exact(&entry.factor) {
                rest = q;
                e += 1;
            }
            exponents.push(e);
        }
        debug_assert!(rest.is_one());
        CodeHandle::new(params, table, exponents)
    }

    pub fn lambda(&self) -> Elem {
        self.table.lambda
    }

    pub fn n(&self) -> usize {
        self.table.n
    }

    pub fn generator(&self) -> Polynomial {
        let field = self.table.field().clone();
        self.table
            .entries
            .iter()
            .zip(&self.exponents)
            .fold(Polynomial::one(&field), |acc, (entry, &e)| {
                &acc * &entry.factor.pow(e as u64)
            })
    }

    /// `(x^n - lambda) / g`.
    pub fn check_polynomial(&self) -> Polynomial {
        self.table
            .target()
            .div_exact(&self.generator())
            .expect("the generator divides x^n - lambda")
    }

    pub fn dimension(&self) -> usize {
        let deg: usize = self
            .table
            .entries
            .iter()
            .zip(&self.exponents)
            .map(|(entry, &e)| entry.factor.deg() * e as usize)
            .sum();
        self.n() - deg
    }

    /// The generator and the generator of the dual code.
    ///
    /// The dual generator is the monic reciprocal of the check polynomial.
    /// It is compared against the product of reciprocal partners with
    /// complementary exponents, and a disagreement is an error.
    pub fn generator_and_dual(&self) -> Result<(Polynomial, Polynomial), CodeError> {
        let g = self.generator();
        let h = self
            .table
            .target()
            .div_exact(&g)
            .expect("the generator divides x^n - lambda");
        let dual = h.monic_reciprocal()?;
        let field = self.table.field().clone();
        let closed = self
            .table
            .entries
            .iter()
            .zip(&self.exponents)
            .fold(Polynomial::one(&field), |acc, (entry, &e)| {
                &acc * &entry.partner.pow((entry.multiplicity - e) as u64)
            });
        if closed != dual {
            return Err(CodeError::DualMismatch {
                case: self.table.case.to_string(),
                detail: format!("exponents {:?}: {closed} vs {dual}", self.exponents),
            });
        }
        Ok((g, dual))
    }

    /// The dual code as a handle over `dual_table`, the table of
    /// `x^n - lambda^-1`.
    pub fn dual_handle(&self, dual_table: Arc<FactorTable>) -> Result<CodeHandle, CodeError> {
        let (_, dual) = self.generator_and_dual()?;
        CodeHandle::from_generator(self.params, dual_table, &dual)
    }
}

/// Every code of one table, in lexicographic order of exponent vectors.
#[derive(Debug, Clone)]
pub struct CodeEnumerator {
    params: Params,
    table: Arc<FactorTable>,
    next: Option<Vec<u32>>,
}

impl CodeEnumerator {
    pub fn new(params: Params, table: Arc<FactorTable>) -> CodeEnumerator {
        let next = Some(vec![0; table.len()]);
        CodeEnumerator { params, table, next }
    }

    /// Restarts at `exponents` (inclusive).
    pub fn resume_from(params: Params, table: Arc<FactorTable>, exponents: Vec<u32>) -> Result<CodeEnumerator, CodeError> {
        CodeHandle::new(params, table.clone(), exponents.clone())?;
        Ok(CodeEnumerator {
            params,
            table,
            next: Some(exponents),
        })
    }

    /// `prod (multiplicity + 1)` over the factors.
    pub fn total(&self) -> BigUint {
        code_count(&self.table)
    }
}

impl Iterator for CodeEnumerator {
    type Item = CodeHandle;

    fn next(&mut self) -> Option<CodeHandle> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut advanced = false;
        for i in (0..succ.len()).rev() {
            if succ[i] < self.table.entries[i].multiplicity {
                succ[i] += 1;
                advanced = true;
                break;
            }
            succ[i] = 0;
        }
        if advanced {
            self.next = Some(succ);
        }
        Some(CodeHandle {
            params: self.params,
            table: self.table.clone(),
            exponents: current,
        })
    }
}

/// Number of codes over a table.
pub fn code_count(table: &FactorTable) -> BigUint {
    table
        .entries
        .iter()
        .fold(BigUint::from(1u32), |acc, e| acc * BigUint::from(e.multiplicity + 1))
}

/// The factor table of `x^n - lambda` behind a shared handle.
pub fn table_for(inst: &Instance, lambda: Elem) -> Result<Arc<FactorTable>, CodeError> {
    Ok(Arc::new(factor_modulus(inst, lambda)?))
}
