//! Serializable report forms.
//!
//! Field elements appear as their `F_p` coefficient vectors, low-degree
//! first; polynomials as sequences of those, low-degree first. Big counts are
//! decimal strings.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::codes::{CodeError, CodeHandle, CosetClass};
use crate::cyclotomic::CosetFamily;
use crate::factorizer::{CubeTwist, FactorTable};
use crate::gf::{Elem, Field, FieldError, FieldSpec};
use crate::params::Params;
use crate::poly::Polynomial;
use crate::selfdual::Census;

pub type PolyJson = Vec<Vec<u32>>;

pub fn poly_to_json(f: &Polynomial) -> PolyJson {
    f.coeffs().iter().map(|&c| f.field().coeffs(c)).collect()
}

pub fn poly_from_json(field: &Field, coeffs: &[Vec<u32>]) -> Result<Polynomial, FieldError> {
    let elems = coeffs
        .iter()
        .map(|c| field.from_coeffs(c))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Polynomial::new(field, elems))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElemJson {
    pub xi_power: Option<u64>,
    pub coeffs: Vec<u32>,
}

impl ElemJson {
    pub fn new(field: &Field, a: Elem) -> ElemJson {
        ElemJson {
            xi_power: field.log(a),
            coeffs: field.coeffs(a),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldInfoJson {
    pub params: Params,
    pub q: u64,
    pub n: u64,
    pub d: u64,
    pub f: u64,
    pub e: u64,
    pub field: FieldSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub lambda: ElemJson,
    pub d: u64,
    pub j: u64,
    /// `xi^(j p^s)`.
    pub representative: ElemJson,
    /// `a` with `a^n lambda` equal to the representative.
    pub scalar: ElemJson,
}

impl ClassJson {
    pub fn new(field: &Field, lambda: Elem, class: CosetClass, rep: Elem, scalar: Elem) -> ClassJson {
        ClassJson {
            lambda: ElemJson::new(field, lambda),
            d: class.d,
            j: class.j,
            representative: ElemJson::new(field, rep),
            scalar: ElemJson::new(field, scalar),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetJson {
    pub n: usize,
    pub lambda: ElemJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorEntryJson {
    pub factor: PolyJson,
    pub degree: usize,
    pub multiplicity: u32,
    pub provenance: String,
    pub reciprocal_partner: PolyJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistJson {
    pub alpha_power: u8,
    pub l_mod_3: u8,
    pub nu_order: u64,
}

impl From<CubeTwist> for TwistJson {
    fn from(t: CubeTwist) -> Self {
        TwistJson {
            alpha_power: t.alpha_power,
            l_mod_3: t.l_mod_3,
            nu_order: t.nu_order,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorTableJson {
    pub params: Params,
    pub target: TargetJson,
    pub d: u64,
    pub j: u64,
    pub case: String,
    pub transport: ElemJson,
    pub twist: Option<TwistJson>,
    pub entries: Vec<FactorEntryJson>,
}

impl FactorTableJson {
    pub fn new(params: Params, t: &FactorTable) -> FactorTableJson {
        let field = t.field();
        FactorTableJson {
            params,
            target: TargetJson {
                n: t.n,
                lambda: ElemJson::new(field, t.lambda),
            },
            d: t.class.d,
            j: t.class.j,
            case: t.case.name.to_string(),
            transport: ElemJson::new(field, t.transport),
            twist: t.twist.map(TwistJson::from),
            entries: t
                .entries
                .iter()
                .map(|e| FactorEntryJson {
                    factor: poly_to_json(&e.factor),
                    degree: e.factor.deg(),
                    multiplicity: e.multiplicity,
                    provenance: format!("{}: {}", t.case.name, e.label),
                    reciprocal_partner: poly_to_json(&e.partner),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeHandleJson {
    pub params: Params,
    pub lambda_xi_power: u64,
    pub exponents: Vec<u32>,
    pub generator: PolyJson,
    pub dual_generator: PolyJson,
    pub dimension: usize,
}

impl CodeHandleJson {
    pub fn new(h: &CodeHandle) -> Result<CodeHandleJson, CodeError> {
        let (g, dual) = h.generator_and_dual()?;
        Ok(CodeHandleJson {
            params: h.params,
            lambda_xi_power: h.table.field().log(h.lambda()).expect("lambda is a unit"),
            exponents: h.exponents.clone(),
            generator: poly_to_json(&g),
            dual_generator: poly_to_json(&dual),
            dimension: h.dimension(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeListJson {
    pub lambda: ElemJson,
    pub case: String,
    pub total: String,
    pub listed: usize,
    pub codes: Vec<CodeHandleJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetJson {
    pub label: String,
    pub members: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetFamilyJson {
    pub case: String,
    pub g: u64,
    pub f: u64,
    pub e: u64,
    pub cosets: Vec<CosetJson>,
}

impl From<&CosetFamily> for CosetFamilyJson {
    fn from(c: &CosetFamily) -> Self {
        CosetFamilyJson {
            case: c.case.tag().to_string(),
            g: c.g,
            f: c.f,
            e: c.e,
            cosets: c
                .cosets
                .iter()
                .map(|(label, coset)| CosetJson {
                    label: label.to_string(),
                    members: coset.members.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusJson {
    pub params: Params,
    pub case: String,
    pub formula_count: String,
    pub partition_count: String,
    pub oracle_count: Option<String>,
    pub self_reciprocal: Vec<usize>,
    pub pairs: Vec<(usize, usize)>,
    pub codes: Vec<CodeHandleJson>,
}

impl CensusJson {
    pub fn new(
        params: Params,
        census: &Census,
        oracle_count: Option<usize>,
        codes: Vec<CodeHandleJson>,
    ) -> CensusJson {
        CensusJson {
            params,
            case: census.case.tag().to_string(),
            formula_count: census.formula_count.to_string(),
            partition_count: census.partition_count.to_string(),
            oracle_count: oracle_count.map(|c| BigUint::from(c).to_string()),
            self_reciprocal: census.partition.self_reciprocal.clone(),
            pairs: census.partition.pairs.clone(),
            codes,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub property: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyJson {
    pub params: Params,
    pub lambda: ElemJson,
    pub case: String,
    pub checks: Vec<CheckJson>,
    pub passed: bool,
}
