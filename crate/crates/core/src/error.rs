//! One error type over every module, split into bad input and failed
//! self-checks.

use thiserror::Error;

use crate::codes::CodeError;
use crate::cyclotomic::CosetError;
use crate::factorizer::FactorError;
use crate::gf::FieldError;
use crate::oracle::OracleError;
use crate::params::ParamError;
use crate::poly::PolyError;
use crate::selfdual::SelfDualError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Coset(#[from] CosetError),
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    SelfDual(#[from] SelfDualError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

impl Error {
    /// True when a closed form disagreed with a direct computation, as
    /// opposed to the input violating a hypothesis or a capacity bound.
    pub fn is_verification_failure(&self) -> bool {
        match self {
            Error::Factor(e) => factor_mismatch(e),
            Error::Code(e) => code_mismatch(e),
            Error::SelfDual(e) => match e {
                SelfDualError::PairingMismatch { .. }
                | SelfDualError::CountMismatch { .. }
                | SelfDualError::MissingPartner(_) => true,
                SelfDualError::Code(c) => code_mismatch(c),
                _ => false,
            },
            Error::Coset(CosetError::Labeling { .. }) => true,
            _ => false,
        }
    }
}

fn factor_mismatch(e: &FactorError) -> bool {
    match e {
        FactorError::Criterion(_)
        | FactorError::Mismatch(_)
        | FactorError::Landing(_)
        | FactorError::Orbit(_) => true,
        FactorError::Coset(CosetError::Labeling { .. }) => true,
        FactorError::Code(c) => code_mismatch(c),
        _ => false,
    }
}

fn code_mismatch(e: &CodeError) -> bool {
    match e {
        CodeError::DualMismatch { .. } => true,
        CodeError::Factor(f) => factor_mismatch(f),
        _ => false,
    }
}
