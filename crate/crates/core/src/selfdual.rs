//! Self-dual cyclic codes in characteristic 2.
//!
//! A cyclic code `<g>` is self-dual iff `g` equals the monic reciprocal of
//! its check polynomial. Over the factors of `x^n - 1` this becomes: every
//! self-reciprocal factor carries exponent `2^(s-1)`, and the exponents on
//! each reciprocal pair `(h, h*)` sum to `2^s`.

use std::sync::Arc;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::codes::{table_for, CodeError, CodeHandle};
use crate::cyclotomic::{CosetError, CosetFamily};
use crate::factorizer::FactorTable;
use crate::gf::Elem;
use crate::oracle::MAX_ENUMERATION;
use crate::params::Instance;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SelfDualError {
    #[error("self-dual cyclic codes of this length only exist in characteristic 2 (p = {0})")]
    OddCharacteristic(u64),
    #[error("reciprocal pairing needs the table of x^n - 1")]
    NotCyclic,
    #[error("reciprocal of {0} is not a factor of x^n - 1")]
    MissingPartner(String),
    #[error("factor pairing gives {factor:?} (fixed, pairs) but the coset layout {case} predicts {coset:?}")]
    PairingMismatch {
        case: &'static str,
        factor: (usize, usize),
        coset: (usize, usize),
    },
    #[error("count formula for {case} gives {formula} but the pairing gives {partition}")]
    CountMismatch {
        case: &'static str,
        formula: BigUint,
        partition: BigUint,
    },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("{0} self-dual codes exceed the enumeration bound")]
    Capacity(BigUint),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Coset(#[from] CosetError),
}

/// Factor indices split into self-reciprocal factors and reciprocal pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReciprocalPartition {
    pub self_reciprocal: Vec<usize>,
    /// `(i, j)` with `i < j` and factor `j` the reciprocal of factor `i`.
    pub pairs: Vec<(usize, usize)>,
}

impl ReciprocalPartition {
    /// `(2^s + 1)^(#pairs)`.
    pub fn count(&self, s: u32) -> BigUint {
        BigUint::from((1u64 << s) + 1).pow(self.pairs.len() as u32)
    }
}

/// Pairs each factor of `x^n - 1` with its monic reciprocal, and checks the
/// counts against the pairing predicted from the coset layout modulo `3l`.
pub fn pair_factors(inst: &Instance, table: &FactorTable) -> Result<ReciprocalPartition, SelfDualError> {
    if table.lambda != Elem::ONE {
        return Err(SelfDualError::NotCyclic);
    }
    let mut self_reciprocal = Vec::new();
    let mut pairs = Vec::new();
    for (i, entry) in table.entries.iter().enumerate() {
        let recip = entry.factor.monic_reciprocal().map_err(CodeError::from)?;
        let j = table
            .index_of(&recip)
            .ok_or_else(|| SelfDualError::MissingPartner(entry.factor.to_string()))?;
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => self_reciprocal.push(i),
            std::cmp::Ordering::Less => pairs.push((i, j)),
            std::cmp::Ordering::Greater => {}
        }
    }
    let family = CosetFamily::new(inst.params.q(), inst.params.l)?;
    let predicted = family.reciprocal_counts();
    let found = (self_reciprocal.len(), pairs.len());
    if predicted != found {
        return Err(SelfDualError::PairingMismatch {
            case: family.case.tag(),
            factor: found,
            coset: predicted,
        });
    }
    Ok(ReciprocalPartition {
        self_reciprocal,
        pairs,
    })
}

/// Whether the cyclic code `handle` is self-dual, read off the exponents.
pub fn is_selfdual(handle: &CodeHandle, partition: &ReciprocalPartition) -> Result<bool, SelfDualError> {
    let params = handle.params;
    if params.p != 2 {
        return Err(SelfDualError::OddCharacteristic(params.p));
    }
    if handle.lambda() != Elem::ONE {
        return Err(SelfDualError::NotCyclic);
    }
    let full = 1u32 << params.s;
    let e = &handle.exponents;
    Ok(partition.self_reciprocal.iter().all(|&i| 2 * e[i] == full)
        && partition.pairs.iter().all(|&(i, j)| e[i] + e[j] == full))
}

/// Which count formula applies for `q = 2^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SelfDualCase {
    /// `q = 1 (mod 3)`, `f` even: `(2^s + 1)^(e + 1)`.
    QOneFEven,
    /// `q = 1 (mod 3)`, `f` odd: `(2^s + 1)^(3e/2 + 1)`.
    QOneFOdd,
    /// `q = 2 (mod 3)`, `f = 2t`, `t` even: `(2^s + 1)^e`.
    QTwoTEven,
    /// `q = 2 (mod 3)`, `f = 2t`, `t` odd: exactly one code.
    QTwoTOdd,
    /// `q = 2 (mod 3)`, `f` odd: `(2^s + 1)^e`.
    QTwoFOdd,
}

impl SelfDualCase {
    pub fn tag(self) -> &'static str {
        match self {
            SelfDualCase::QOneFEven => "q=1mod3/f-even",
            SelfDualCase::QOneFOdd => "q=1mod3/f-odd",
            SelfDualCase::QTwoTEven => "q=2mod3/f=2t/t-even",
            SelfDualCase::QTwoTOdd => "q=2mod3/f=2t/t-odd",
            SelfDualCase::QTwoFOdd => "q=2mod3/f-odd",
        }
    }
}

/// The case and the closed-form count, dispatched on the parity of `m`.
pub fn selfdual_formula(inst: &Instance) -> Result<(SelfDualCase, BigUint), SelfDualError> {
    let params = inst.params;
    if params.p != 2 {
        return Err(SelfDualError::OddCharacteristic(params.p));
    }
    let q = params.q();
    let q_one = params.m % 2 == 0;
    if q_one != (q % 3 == 1) {
        return Err(SelfDualError::Hypothesis(format!("m = {} but q = {q} mod 3 = {}", params.m, q % 3)));
    }
    let (f, e) = (params.f(), params.e());
    let base = BigUint::from((1u64 << params.s) + 1);
    let case = match (q_one, f % 2 == 0) {
        (true, true) => SelfDualCase::QOneFEven,
        (true, false) => SelfDualCase::QOneFOdd,
        (false, true) if (f / 2) % 2 == 0 => SelfDualCase::QTwoTEven,
        (false, true) => SelfDualCase::QTwoTOdd,
        (false, false) => SelfDualCase::QTwoFOdd,
    };
    if f % 2 == 1 && e % 2 != 0 {
        return Err(SelfDualError::Hypothesis(format!("f = {f} odd but e = {e} odd")));
    }
    let exponent = match case {
        SelfDualCase::QOneFEven => e + 1,
        SelfDualCase::QOneFOdd => 3 * e / 2 + 1,
        SelfDualCase::QTwoTEven | SelfDualCase::QTwoFOdd => e,
        SelfDualCase::QTwoTOdd => 0,
    };
    Ok((case, base.pow(exponent as u32)))
}

/// The self-dual census of one instance: both counts and the partition.
#[derive(Debug, Clone)]
pub struct Census {
    pub case: SelfDualCase,
    pub formula_count: BigUint,
    pub partition_count: BigUint,
    pub partition: ReciprocalPartition,
    pub table: Arc<FactorTable>,
}

/// Computes the count two ways and fails if they disagree.
pub fn selfdual_count(inst: &Instance) -> Result<Census, SelfDualError> {
    let (case, formula_count) = selfdual_formula(inst)?;
    let table = table_for(inst, Elem::ONE)?;
    let partition = pair_factors(inst, &table)?;
    let partition_count = partition.count(inst.params.s);
    if partition_count != formula_count {
        return Err(SelfDualError::CountMismatch {
            case: case.tag(),
            formula: formula_count,
            partition: partition_count,
        });
    }
    Ok(Census {
        case,
        formula_count,
        partition_count,
        partition,
        table,
    })
}

/// Every self-dual cyclic code: `2^(s-1)` on self-reciprocal factors, and
/// `(delta, 2^s - delta)` on each pair, in lexicographic order of the deltas.
pub fn selfdual_enumerate(inst: &Instance, census: &Census) -> Result<Vec<CodeHandle>, SelfDualError> {
    if census.formula_count > BigUint::from(MAX_ENUMERATION) {
        return Err(SelfDualError::Capacity(census.formula_count.clone()));
    }
    let full = 1u32 << inst.params.s;
    let part = &census.partition;
    let mut base = vec![0u32; census.table.len()];
    for &i in &part.self_reciprocal {
        base[i] = full / 2;
    }
    let mut deltas = vec![0u32; part.pairs.len()];
    let mut out = Vec::new();
    loop {
        let mut exps = base.clone();
        for (&(i, j), &d) in part.pairs.iter().zip(&deltas) {
            exps[i] = d;
            exps[j] = full - d;
        }
        let handle = CodeHandle::new(inst.params, census.table.clone(), exps)?;
        debug_assert!(is_selfdual(&handle, part)?);
        out.push(handle);
        let Some(pos) = deltas.iter().rposition(|&d| d < full) else {
            break;
        };
        deltas[pos] += 1;
        for d in &mut deltas[pos + 1..] {
            *d = 0;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::CodeEnumerator;
    use crate::params::Params;

    fn inst(m: u32, s: u32, l: u64) -> Instance {
        Instance::new(Params::new(2, m, s, l).unwrap()).unwrap()
    }

    #[test]
    fn counts() {
        for ((m, s, l), expected) in [((2, 1, 5), 27u32), ((1, 1, 5), 3), ((1, 2, 5), 5), ((1, 1, 11), 1)] {
            let i = inst(m, s, l);
            let c = selfdual_count(&i).unwrap();
            assert_eq!(c.formula_count, BigUint::from(expected));
            let list = selfdual_enumerate(&i, &c).unwrap();
            assert_eq!(list.len() as u32, expected);
            assert!(list.iter().all(|h| 2 * h.dimension() == h.n()));
        }
    }

    #[test]
    fn partition_at_length_30() {
        let i = inst(1, 1, 5);
        let c = selfdual_count(&i).unwrap();
        assert_eq!(c.partition.self_reciprocal.len(), 3);
        assert_eq!(c.partition.pairs.len(), 1);
        let (a, b) = c.partition.pairs[0];
        assert_eq!(c.table.entries[a].factor.deg(), 4);
        assert_eq!(c.table.entries[b].factor.deg(), 4);
    }

    #[test]
    fn only_one_code_for_l_11() {
        let i = inst(1, 1, 11);
        let c = selfdual_count(&i).unwrap();
        assert!(c.partition.pairs.is_empty());
        let list = selfdual_enumerate(&i, &c).unwrap();
        assert!(list[0].exponents.iter().all(|&e| e == 1));
        assert_eq!(list[0].generator().deg(), 33);
    }

    #[test]
    fn criterion_matches_definition() {
        let i = inst(1, 1, 5);
        let c = selfdual_count(&i).unwrap();
        for h in CodeEnumerator::new(i.params, c.table.clone()) {
            let (g, dual) = h.generator_and_dual().unwrap();
            assert_eq!(is_selfdual(&h, &c.partition).unwrap(), g == dual);
        }
    }

    #[test]
    fn odd_characteristic_refused() {
        let i = Instance::new(Params::new(7, 1, 1, 5).unwrap()).unwrap();
        assert!(matches!(selfdual_formula(&i), Err(SelfDualError::OddCharacteristic(7))));
        let t = table_for(&i, Elem::ONE).unwrap();
        let partition = ReciprocalPartition { self_reciprocal: vec![], pairs: vec![] };
        let h = CodeHandle::new(i.params, t.clone(), vec![0; t.len()]).unwrap();
        assert_eq!(is_selfdual(&h, &partition), Err(SelfDualError::OddCharacteristic(7)));
    }
}
