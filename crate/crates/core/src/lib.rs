//! Repeated-root constacyclic codes of length `3 l p^s` over `F_(p^m)`.
//!
//! The factorization of `x^n - lambda` is built in closed form from
//! cyclotomic cosets ([`factorizer`]), every code is named by an exponent
//! vector over that factorization ([`codes`]), and the self-dual cyclic codes
//! in characteristic 2 are counted and listed ([`selfdual`]). The [`oracle`]
//! module recomputes the same objects by generic means for cross-checking.
//!
//! ```
//! use constacode::{factor_modulus, Elem, Instance, Params};
//!
//! let inst = Instance::new(Params::new(2, 1, 1, 5)?)?;
//! let table = factor_modulus(&inst, Elem::ONE)?;
//! assert_eq!(table.len(), 5);
//! assert!(table.entries.iter().all(|e| e.multiplicity == 2));
//! # Ok::<(), constacode::Error>(())
//! ```

pub mod arith;
pub mod capacity;
pub mod codes;
pub mod cyclotomic;
pub mod error;
pub mod factorizer;
pub mod gf;
pub mod json;
pub mod oracle;
pub mod params;
pub mod poly;
pub mod selfdual;

pub use codes::{classify_unit, equivalence_scalar, CodeEnumerator, CodeHandle, CosetClass, LambdaSpec};
pub use error::Error;
pub use factorizer::{factor_modulus, FactorTable};
pub use gf::{build_field, Elem, Field, FieldSpec};
pub use params::{Instance, Params};
pub use poly::Polynomial;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/cosets.md")]
    mod cosets {}
    #[doc = include_str!("../../../book/src/factorization.md")]
    mod factorization {}
    #[doc = include_str!("../../../book/src/classification.md")]
    mod classification {}
    #[doc = include_str!("../../../book/src/duals.md")]
    mod duals {}
    #[doc = include_str!("../../../book/src/selfdual.md")]
    mod selfdual {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
