//! Closed-form irreducible factorizations of `x^(3 l p^s) - lambda`.
//!
//! Every unit `lambda` lies in the class of a representative
//! `lambda_0 = xi^(j p^s)`; with `c^n lambda = lambda_0` the factors of
//! `x^n - lambda` are the monic associates of `G(c x)` for the factors `G` of
//! `x^n - lambda_0 = (x^(3l) - xi^j)^(p^s)`. The factors of `x^(3l) - xi^j`
//! are assembled case by case on `d = gcd(q - 1, n)` from roots of unity,
//! and the result is multiplied back against `x^n - lambda` before it is
//! returned.
//!
//! Each entry also carries its reciprocal partner, assembled from the same
//! closed forms with inverted scalars and negated coset indices. The codes
//! module checks that partner against the reciprocal computed directly.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::arith;
use crate::codes::{classify_unit, equivalence_scalar, CodeError, CosetClass};
use crate::cyclotomic::{
    self, minimal_poly_of_coset, CosetError, CosetFamily, ModLCosets, ModLLabel,
};
use crate::gf::{Elem, ExtField, Field, FieldError};
use crate::params::Instance;
use crate::poly::{PolyError, Polynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactorError {
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error("irreducibility criterion rejected {0}")]
    Criterion(String),
    #[error("closed-form factors do not multiply to x^n - lambda ({0})")]
    Mismatch(String),
    #[error("factor does not lie over F_q: {0}")]
    Landing(String),
    #[error("Frobenius orbits differ from the predicted grouping: {0}")]
    Orbit(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error(transparent)]
    Code(#[from] Box<CodeError>),
    #[error(transparent)]
    Coset(#[from] CosetError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl From<CodeError> for FactorError {
    fn from(e: CodeError) -> Self {
        FactorError::Code(Box::new(e))
    }
}

/// Which closed form produced a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CaseTag {
    pub d: u64,
    pub name: &'static str,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// One irreducible factor with its multiplicity, provenance, and reciprocal
/// partner (a factor of `x^n - lambda^{-1}`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorEntry {
    pub factor: Polynomial,
    pub multiplicity: u32,
    pub label: String,
    pub partner: Polynomial,
}

/// How the cube root of unity in the twisted `d = 3` case relates to `xi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CubeTwist {
    /// `alpha = omega^(q-1)` equals `xi^(t (q-1)/3)` for this `t` in `{1, 2}`.
    pub alpha_power: u8,
    /// `l mod 3`.
    pub l_mod_3: u8,
    /// Multiplicative order of `nu`, a root of `x^3 - xi^j` in `F_(q^3)`.
    pub nu_order: u64,
}

/// The irreducible factorization of `x^n - lambda`.
#[derive(Debug, Clone)]
pub struct FactorTable {
    pub n: usize,
    pub lambda: Elem,
    pub class: CosetClass,
    pub case: CaseTag,
    /// `c` with `c^n lambda = xi^(j p^s)`.
    pub transport: Elem,
    pub twist: Option<CubeTwist>,
    /// Sorted by `(degree, coefficients)`.
    pub entries: Vec<FactorEntry>,
}

impl FactorTable {
    /// `(factor, multiplicity)` pairs, for comparison with the oracle.
    pub fn pairs(&self) -> Vec<(Polynomial, u32)> {
        self.entries
            .iter()
            .map(|e| (e.factor.clone(), e.multiplicity))
            .collect()
    }

    pub fn field(&self) -> &Field {
        self.entries[0].factor.field()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `x^n - lambda`.
    pub fn target(&self) -> Polynomial {
        Polynomial::binomial(self.field(), self.n, self.lambda)
    }

    pub fn index_of(&self, f: &Polynomial) -> Option<usize> {
        self.entries.iter().position(|e| &e.factor == f)
    }
}

/// A factor of `x^(3l) - xi^j` with its closed-form partner dividing
/// `x^(3l) - xi^-j`.
struct RootFactor {
    poly: Polynomial,
    label: String,
    partner: Polynomial,
}

/// `x^n - a` is irreducible over `F_q` iff every prime divisor of `n` divides
/// `k = ord(a)` but not `(q - 1)/k`, and `4 | n` implies `4 | q - 1`.
pub fn irreducible_binomial(field: &Field, n: u64, a: Elem) -> Result<bool, FactorError> {
    if a.is_zero() {
        return Err(FactorError::ZeroLambda);
    }
    assert!(n >= 2, "binomial criterion needs n >= 2");
    let q1 = field.order() as u64 - 1;
    let k = field.element_order(a)?;
    let primes_ok = arith::prime_factors(n)
        .into_iter()
        .all(|r| k % r == 0 && (q1 / k) % r != 0);
    Ok(primes_ok && (n % 4 != 0 || q1 % 4 == 0))
}

/// For irreducible `H` of degree `d` with `H(0) != 0` and root order `e`,
/// `H(x^t)` is irreducible iff every prime divisor of `t` divides `e`,
/// `gcd(t, (q^d - 1)/e) = 1`, and `4 | t` implies `4 | q^d - 1`.
pub fn irreducible_composition(h: &Polynomial, t: u64) -> Result<bool, FactorError> {
    if !h.is_irreducible() {
        return Err(FactorError::Hypothesis(format!("{h} is reducible")));
    }
    if t == 1 {
        return Ok(true);
    }
    let e = h.root_order()?;
    let qd = (h.field().order() as u64).pow(h.deg() as u32) - 1;
    let primes_ok = arith::prime_factors(t).into_iter().all(|r| e % r == 0);
    Ok(primes_ok && arith::gcd(t, qd / e) == 1 && (t % 4 != 0 || qd % 4 == 0))
}

/// Factors `x^(3 l p^s) - lambda` over `F_q`.
pub fn factor_modulus(inst: &Instance, lambda: Elem) -> Result<FactorTable, FactorError> {
    if lambda.is_zero() {
        return Err(FactorError::ZeroLambda);
    }
    let field = &inst.field;
    let params = inst.params;
    let class = classify_unit(inst, lambda)?;
    let j = class.j;
    let ps = params.ps();
    let rep = field.xi_pow((j * ps) as i64);
    let c = equivalence_scalar(inst, lambda, rep)?;
    let c_inv = field.inv(c)?;

    let (case, twist, roots) = match class.d {
        1 => root_factors_d1(inst)?,
        3 if j == 0 => root_factors_d3_cyclic(inst)?,
        3 => root_factors_d3_twist(inst, j)?,
        d if d == params.l && j == 0 => root_factors_dl_cyclic(inst)?,
        d if d == params.l => root_factors_dl_twist(inst, j)?,
        d if d == 3 * params.l => root_factors_d3l(inst, j)?,
        d => unreachable!("gcd(q - 1, 3 l p^s) = {d} is not one of 1, 3, l, 3l"),
    };

    let mut entries: Vec<FactorEntry> = roots
        .into_iter()
        .map(|r| FactorEntry {
            factor: r.poly.scale_substitute(c).monic(),
            multiplicity: ps as u32,
            label: r.label,
            partner: r.partner.scale_substitute(c_inv).monic(),
        })
        .collect();
    entries.sort_by(|a, b| a.factor.cmp(&b.factor));

    let table = FactorTable {
        n: inst.n(),
        lambda,
        class,
        case,
        transport: c,
        twist,
        entries,
    };
    check_product(&table)?;
    Ok(table)
}

fn check_product(table: &FactorTable) -> Result<(), FactorError> {
    for w in table.entries.windows(2) {
        if w[0].factor == w[1].factor {
            return Err(FactorError::Mismatch(format!("{} repeats", w[0].factor)));
        }
    }
    let field = table.field().clone();
    let prod = table.entries.iter().fold(Polynomial::one(&field), |acc, e| {
        &acc * &e.factor.pow(e.multiplicity as u64)
    });
    if prod != table.target() {
        return Err(FactorError::Mismatch(format!("{} at {}", table.case, prod)));
    }
    Ok(())
}

fn monic_scaled(f: &Polynomial, c: Elem) -> Polynomial {
    f.scale_substitute(c).monic()
}

/// Minimal polynomials over `F_q` of the `q`-cosets modulo `l`.
fn minimal_polys_mod_l(
    field: &Field,
    cosets: &ModLCosets,
) -> Result<Vec<(ModLLabel, Polynomial)>, FactorError> {
    let ext = ExtField::new(field, cosets.f as u32)?;
    let eta = ext
        .field()
        .primitive_root_of_unity(cosets.l)
        .expect("l divides q^f - 1");
    cosets
        .cosets
        .iter()
        .map(|(label, c)| Ok((*label, minimal_poly_of_coset(c, eta, &ext)?)))
        .collect()
}

fn lookup(polys: &[(ModLLabel, Polynomial)], label: ModLLabel) -> &Polynomial {
    &polys.iter().find(|(l, _)| *l == label).expect("label present").1
}

/// `d = 1`: the minimal polynomials of the `q`-cosets modulo `3l`.
fn root_factors_d1(
    inst: &Instance,
) -> Result<(CaseTag, Option<CubeTwist>, Vec<RootFactor>), FactorError> {
    let field = &inst.field;
    let q = inst.params.q();
    if q % 3 != 2 {
        return Err(FactorError::Hypothesis(format!("d = 1 needs q = 2 mod 3, got q = {q}")));
    }
    let family = CosetFamily::new(q, inst.params.l)?;
    let ext = ExtField::new(field, family.ord as u32)?;
    let gamma = ext
        .field()
        .primitive_root_of_unity(3 * inst.params.l)
        .expect("3l divides q^ord - 1");
    let mut polys = Vec::new();
    for (label, coset) in &family.cosets {
        polys.push((*label, minimal_poly_of_coset(coset, gamma, &ext)?));
    }
    let roots = polys
        .iter()
        .map(|(label, m)| {
            let partner_label = family.predicted_reciprocal(*label);
            let partner = &polys.iter().find(|(l, _)| *l == partner_label).expect("label").1;
            RootFactor {
                poly: m.clone(),
                label: label.to_string(),
                partner: partner.clone(),
            }
        })
        .collect();
    let name = if family.f % 2 == 0 { "d1/f-even" } else { "d1/f-odd" };
    Ok((CaseTag { d: 1, name }, None, roots))
}

/// `d = 3`, `lambda` in the class of 1:
/// `x^(3l) - 1 = prod_t (x^l - alpha^t)` with each `x^l - alpha^t` split by
/// scaling the minimal polynomials modulo `l`.
fn root_factors_d3_cyclic(
    inst: &Instance,
) -> Result<(CaseTag, Option<CubeTwist>, Vec<RootFactor>), FactorError> {
    let field = &inst.field;
    let (q, l) = (inst.params.q(), inst.params.l);
    let g = cyclotomic::special_primitive_root(l)?;
    let cosets = cyclotomic::q_cosets_mod_l(q, l, g)?;
    let polys = minimal_polys_mod_l(field, &cosets)?;
    let q1 = q - 1;
    let inv_l = arith::inv_mod(l % q1, q1).expect("l is coprime to q - 1 when d = 3");
    let mut roots = Vec::new();
    for t in 0..3u64 {
        // b^l alpha^t = 1 with alpha = xi^((q-1)/3).
        let b = field.xi_pow(-((t * q1 / 3 * inv_l % q1) as i64));
        let b_inv = field.inv(b)?;
        for (label, m) in &polys {
            let neg = lookup(&polys, cosets.negate(*label));
            roots.push(RootFactor {
                poly: monic_scaled(m, b),
                label: if t == 0 {
                    format!("M[{label}](x)")
                } else {
                    format!("M[{label}](b{t} x)")
                },
                partner: monic_scaled(neg, b_inv),
            });
        }
    }
    Ok((CaseTag { d: 3, name: "d3/cyclic" }, None, roots))
}

/// `d = 3`, `j in {1, 2}`: the factors of `x^(3l) - xi^j` are Frobenius
/// orbits of scaled coset polynomials over `F_(q^3)`.
fn root_factors_d3_twist(
    inst: &Instance,
    j: u64,
) -> Result<(CaseTag, Option<CubeTwist>, Vec<RootFactor>), FactorError> {
    let field = &inst.field;
    let (q, l) = (inst.params.q(), inst.params.l);
    let q1 = q - 1;
    let e3 = ExtField::new(field, 3)?;
    let big = e3.field().clone();
    let target = field.xi_pow(j as i64);
    if !irreducible_binomial(field, 3, target)? {
        return Err(FactorError::Criterion(format!("x^3 - xi^{j}")));
    }
    let nu = big
        .elements()
        .find(|&z| big.pow(z, 3) == e3.embed(target))
        .ok_or_else(|| FactorError::Hypothesis(format!("x^3 - xi^{j} has no root in F_q^3")))?;
    // ord(nu) = 3 ord(xi^j), which is 3(q-1) only when gcd(j, q-1) = 1.
    let ord3 = 3 * q1;
    let nu_order = big.element_order(nu)?;
    if nu_order != 3 * field.element_order(target)? {
        return Err(FactorError::Hypothesis(format!("root of x^3 - xi^{j} has order {nu_order}")));
    }
    // omega^l nu = 1; since gcd(l, 3(q-1)) = 1 this is omega = nu^(-1/l),
    // of the same order as nu.
    let inv_l = arith::inv_mod(l % ord3, ord3).expect("l is coprime to 3(q-1)");
    let omega = big.pow(big.inv(nu)?, inv_l);
    debug_assert_eq!(big.mul(big.pow(omega, l), nu), Elem::ONE);
    let alpha = big.pow(omega, q1);
    let alpha_power = if alpha == field.xi_pow((q1 / 3) as i64) {
        1
    } else if alpha == field.xi_pow((2 * q1 / 3) as i64) {
        2
    } else {
        return Err(FactorError::Hypothesis("omega^(q-1) is not a cube root of unity".into()));
    };
    let twist = CubeTwist {
        alpha_power,
        l_mod_3: (l % 3) as u8,
        nu_order,
    };
    let g = cyclotomic::special_primitive_root(l)?;
    let f = inst.params.f();
    let alpha_pow = |t: i64| big.pow_signed(alpha, t.rem_euclid(3)).expect("nonzero");

    // Atom (c, t) = monic(A_c(alpha^t omega x)) over F_(q^3); the partner atom
    // is monic(A_{-c}(alpha^-t omega^-1 x)).
    let (atoms, q3cosets): (Vec<(ModLLabel, Polynomial)>, ModLCosets) = if f % 3 == 0 {
        let cosets = cyclotomic::q3_cosets_mod_l(q, l, g)?;
        let tower = e3.field().extend((f / 3) as u32)?;
        let ext = ExtField::from_tower(&big, &tower);
        let eta = tower.primitive_root_of_unity(l).expect("l divides q^f - 1");
        let polys = cosets
            .cosets
            .iter()
            .map(|(label, c)| Ok((*label, minimal_poly_of_coset(c, eta, &ext)?)))
            .collect::<Result<Vec<_>, FactorError>>()?;
        (polys, cosets)
    } else {
        // q^3-cosets coincide with q-cosets: compute over F_q and lift.
        let cosets = cyclotomic::q_cosets_mod_l(q, l, g)?;
        let polys = minimal_polys_mod_l(field, &cosets)?
            .into_iter()
            .map(|(label, m)| Ok((label, m.rehome(&big)?)))
            .collect::<Result<Vec<_>, FactorError>>()?;
        (polys, cosets)
    };
    let atom = |label: ModLLabel, t: i64| -> Polynomial {
        monic_scaled(lookup(&atoms, label), big.mul(alpha_pow(t), omega))
    };
    let partner_atom = |label: ModLLabel, t: i64| -> Result<Polynomial, FactorError> {
        let neg = q3cosets.negate(label);
        Ok(monic_scaled(lookup(&atoms, neg), big.inv(big.mul(alpha_pow(t), omega))?))
    };

    // Group atoms by applying the q-power Frobenius to their coefficients.
    let all: Vec<(ModLLabel, i64)> = atoms
        .iter()
        .flat_map(|(label, _)| (0..3).map(move |t| (*label, t)))
        .collect();
    let polys: Vec<Polynomial> = all.iter().map(|&(c, t)| atom(c, t)).collect();
    let mut seen = vec![false; all.len()];
    let mut roots = Vec::new();
    for start in 0..all.len() {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut cur = start;
        loop {
            let image = polys[cur].pow_coeffs(q);
            let next = polys
                .iter()
                .position(|p| *p == image)
                .ok_or_else(|| FactorError::Orbit(format!("Frobenius image of {} is not an atom", polys[cur])))?;
            if next == start {
                break;
            }
            if seen[next] {
                return Err(FactorError::Orbit("orbits overlap".into()));
            }
            seen[next] = true;
            orbit.push(next);
            cur = next;
        }
        // Predicted: (c, t) -> (c q, t + 1).
        for w in orbit.windows(2) {
            let (c0, t0) = all[w[0]];
            let (c1, t1) = all[w[1]];
            let predicted_c = predicted_shift(&q3cosets, c0, q);
            if c1 != predicted_c || t1 != (t0 + 1) % 3 {
                return Err(FactorError::Orbit(format!(
                    "({c0}, {t0}) maps to ({c1}, {t1}), predicted ({predicted_c}, {})",
                    (t0 + 1) % 3
                )));
            }
        }
        if orbit.len() != 3 {
            return Err(FactorError::Orbit(format!("orbit of size {}", orbit.len())));
        }
        let (c0, t0) = all[orbit[0]];
        let label = orbit_label(f, c0, t0);
        let prod = Polynomial::product(&big, orbit.iter().map(|&i| &polys[i]));
        let partner = orbit.iter().try_fold(Polynomial::one(&big), |acc, &i| {
            let (c, t) = all[i];
            Ok::<_, FactorError>(&acc * &partner_atom(c, t)?)
        })?;
        roots.push(RootFactor {
            poly: prod
                .rehome(field)
                .map_err(|_| FactorError::Landing(format!("{label} = {prod}")))?,
            label,
            partner: partner
                .rehome(field)
                .map_err(|_| FactorError::Landing(format!("partner of {partner}")))?,
        });
    }
    let name = if f % 3 == 0 {
        "d3/cube-twist/f-div3"
    } else {
        "d3/cube-twist/f-coprime3"
    };
    Ok((CaseTag { d: 3, name }, Some(twist), roots))
}

/// The label of the coset of `q` times the members of `c`.
fn predicted_shift(cosets: &ModLCosets, c: ModLLabel, q: u64) -> ModLLabel {
    match c {
        ModLLabel::Zero => ModLLabel::Zero,
        ModLLabel::Power { k, shift } => {
            if cosets.multiplier == q % cosets.l {
                c
            } else {
                ModLLabel::Power {
                    k,
                    shift: (shift + 1) % 3,
                }
            }
        }
    }
}

/// Orbit names: `P` for the coset of 0; otherwise `Q`, `U`, `Z` according to
/// the twist index on the `g^k` member (or `R` when `3 ∤ f`).
fn orbit_label(f: u64, c: ModLLabel, t: i64) -> String {
    match c {
        ModLLabel::Zero if f % 3 == 0 => "P".to_string(),
        ModLLabel::Zero => "R[C_0]".to_string(),
        ModLLabel::Power { k, shift } if f % 3 == 0 => {
            // Normalize to the member on A_k (shift 0).
            let t0 = (t - shift as i64).rem_euclid(3);
            format!("{}[k={k}]", ["Q", "U", "Z"][t0 as usize])
        }
        ModLLabel::Power { k, .. } => format!("R[C_{k}]"),
    }
}

/// `d = l`, cyclic class: `(x - eta^k)(x^2 + eta^k x + eta^2k)`.
fn root_factors_dl_cyclic(
    inst: &Instance,
) -> Result<(CaseTag, Option<CubeTwist>, Vec<RootFactor>), FactorError> {
    let field = &inst.field;
    let l = inst.params.l;
    let eta = field.primitive_root_of_unity(l).expect("l divides q - 1");
    let lin = |a: Elem| Polynomial::new(field, vec![field.neg(a), Elem::ONE]);
    let quad = |a: Elem| Polynomial::new(field, vec![field.mul(a, a), a, Elem::ONE]);
    let mut roots = Vec::new();
    for k in 0..l as i64 {
        let a = field.pow_signed(eta, k)?;
        let a_inv = field.pow_signed(eta, -k)?;
        roots.push(RootFactor {
            poly: lin(a),
            label: format!("x - η^{k}"),
            partner: lin(a_inv),
        });
        let qd = quad(a);
        if !qd.is_irreducible() {
            return Err(FactorError::Criterion(qd.to_string()));
        }
        roots.push(RootFactor {
            poly: qd,
            label: format!("x^2 + η^{k} x + η^{}", 2 * k),
            partner: quad(a_inv),
        });
    }
    Ok((CaseTag { d: inst.params.l, name: "dl/cyclic" }, None, roots))
}

/// `d = l`, `j != 0`: `x^(3l) - xi^j = (x^l - xi^i)(x^2l + xi^i x^l + xi^2i)`
/// with `3 i = j (mod q - 1)`.
fn root_factors_dl_twist(
    inst: &Instance,
    j: u64,
) -> Result<(CaseTag, Option<CubeTwist>, Vec<RootFactor>), FactorError> {
    let field = &inst.field;
    let l = inst.params.l as usize;
    let q1 = inst.params.q() - 1;
    let inv3 = arith::inv_mod(3, q1).expect("3 does not divide q - 1 when d = l");
    let i = (j * inv3 % q1) as i64;
    let a = field.xi_pow(i);
    let a_inv = field.xi_pow(-i);
    let binom = |c: Elem| Polynomial::binomial(field, l, c);
    let quad = |c: Elem| Polynomial::new(field, vec![field.mul(c, c), c, Elem::ONE]);
    if !irreducible_binomial(field, l as u64, a)? {
        return Err(FactorError::Criterion(format!("x^{l} - ξ^{i}")));
    }
    let h = quad(a);
    if !irreducible_composition(&h, l as u64)? {
        return Err(FactorError::Criterion(format!("({h}) at x^{l}")));
    }
    let roots = vec![
        RootFactor {
            poly: binom(a),
            label: format!("x^l - ξ^{i}"),
            partner: binom(a_inv),
        },
        RootFactor {
            poly: h.compose_power(l),
            label: format!("x^2l + ξ^{i} x^l + ξ^{}", 2 * i),
            partner: quad(a_inv).compose_power(l),
        },
    ];
    let name = if j % 3 == 0 { "dl/twist/j-div3" } else { "dl/twist/j-coprime3" };
    Ok((CaseTag { d: inst.params.l, name }, None, roots))
}

/// `d = 3l`: linear factors for the cyclic class, otherwise binomials
/// chosen by `gcd(3l, j)`.
fn root_factors_d3l(
    inst: &Instance,
    j: u64,
) -> Result<(CaseTag, Option<CubeTwist>, Vec<RootFactor>), FactorError> {
    let field = &inst.field;
    let l = inst.params.l;
    let q1 = inst.params.q() - 1;
    let d = 3 * l;
    let binom = |n: u64, e: i64| Polynomial::binomial(field, n as usize, field.xi_pow(e));
    let checked = |n: u64, e: i64, label: String| -> Result<RootFactor, FactorError> {
        if n > 1 && !irreducible_binomial(field, n, field.xi_pow(e))? {
            return Err(FactorError::Criterion(label));
        }
        Ok(RootFactor {
            poly: binom(n, e),
            label,
            partner: binom(n, -e),
        })
    };
    let mut roots = Vec::new();
    let name = match arith::gcd(d, j) {
        g if g == d => {
            let step = (q1 / d) as i64;
            for i in 0..d as i64 {
                roots.push(checked(1, i * step, format!("x - γ^{i}"))?);
            }
            "d3l/cyclic"
        }
        g if g == l => {
            let t = (j / l) as i64;
            let eta = (q1 / l) as i64;
            for i in 0..l as i64 {
                roots.push(checked(3, t + i * eta, format!("x^3 - ξ^{t} η^{i}"))?);
            }
            "d3l/twist/gcd-l"
        }
        3 => {
            let k = (j / 3) as i64;
            let beta = (q1 / 3) as i64;
            for i in 0..3 {
                roots.push(checked(l, k + i * beta, format!("x^l - ξ^{k} β^{i}"))?);
            }
            "d3l/twist/gcd-3"
        }
        _ => {
            roots.push(checked(d, j as i64, format!("x^3l - ξ^{j}"))?);
            "d3l/twist/gcd-1"
        }
    };
    Ok((CaseTag { d, name }, None, roots))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::build_field;
    use crate::params::Params;

    fn inst(p: u64, m: u32, s: u32, l: u64) -> Instance {
        Instance::new(Params::new(p, m, s, l).unwrap()).unwrap()
    }

    #[test]
    fn binomial_criterion_examples() {
        let f4 = build_field(2, 2).unwrap();
        assert!(irreducible_binomial(&f4, 3, f4.generator()).unwrap());
        let f3 = build_field(3, 1).unwrap();
        assert!(!irreducible_binomial(&f3, 2, Elem::ONE).unwrap());
        // x^4 + 1 over F_5 needs 4 | q - 1 and 2 | ord(-1): ord(4) = 2, (q-1)/2 = 2.
        let f5 = build_field(5, 1).unwrap();
        assert!(!irreducible_binomial(&f5, 4, Elem(4)).unwrap());
        assert!(irreducible_binomial(&f5, 4, Elem(2)).unwrap());
    }

    #[test]
    fn composition_criterion_examples() {
        let f2 = build_field(2, 1).unwrap();
        let h = Polynomial::from_codes(&f2, &[1, 1, 1]).unwrap();
        assert!(!irreducible_composition(&h, 2).unwrap());
        assert!(irreducible_composition(&h, 1).unwrap());
        assert!(irreducible_composition(&h, 3).unwrap());
        let reducible = Polynomial::from_codes(&f2, &[1, 0, 1]).unwrap();
        assert!(matches!(irreducible_composition(&reducible, 3), Err(FactorError::Hypothesis(_))));
    }

    #[test]
    fn d1_length_30_over_f2() {
        let t = factor_modulus(&inst(2, 1, 1, 5), Elem::ONE).unwrap();
        assert_eq!(t.case.name, "d1/f-even");
        let degrees: Vec<usize> = t.entries.iter().map(|e| e.factor.deg()).collect();
        assert_eq!(degrees, vec![1, 2, 4, 4, 4]);
        assert!(t.entries.iter().all(|e| e.multiplicity == 2));
    }

    #[test]
    fn d3l_length_15_times_31() {
        let t = factor_modulus(&inst(31, 1, 1, 5), Elem::ONE).unwrap();
        assert_eq!(t.case.name, "d3l/cyclic");
        assert_eq!(t.len(), 15);
        assert!(t.entries.iter().all(|e| e.factor.deg() == 1 && e.multiplicity == 31));
    }

    #[test]
    fn dl_twist_over_f11() {
        let i = inst(11, 1, 1, 5);
        for j in 1..5u64 {
            let lambda = i.field.xi_pow((j * 11) as i64);
            let t = factor_modulus(&i, lambda).unwrap();
            let degrees: Vec<usize> = t.entries.iter().map(|e| e.factor.deg()).collect();
            assert_eq!(degrees, vec![5, 10]);
            assert_eq!(t.case.name, if j % 3 == 0 { "dl/twist/j-div3" } else { "dl/twist/j-coprime3" });
        }
    }

    #[test]
    fn every_unit_factors_for_small_instances() {
        for (p, m, s, l) in [(2, 1, 1, 5), (2, 2, 1, 5), (2, 2, 1, 7), (7, 1, 1, 5), (11, 1, 1, 5), (2, 4, 1, 5), (5, 1, 1, 7), (13, 1, 1, 5)] {
            let i = inst(p, m, s, l);
            for lambda in i.field.nonzero_elements() {
                let t = factor_modulus(&i, lambda)
                    .unwrap_or_else(|err| panic!("({p},{m},{s},{l}) λ={lambda:?}: {err}"));
                for e in &t.entries {
                    assert!(e.factor.is_irreducible(), "{}", e.factor);
                    assert_eq!(e.partner, e.factor.monic_reciprocal().unwrap(), "{} {}", t.case, e.label);
                }
            }
        }
    }

    #[test]
    fn twisted_d3_reports_alpha() {
        for (p, m, l) in [(2, 2, 5), (2, 2, 7), (7, 1, 5), (2, 4, 7), (13, 1, 7)] {
            let i = inst(p, m, 1, l);
            let lambda = i.field.xi_pow(i.params.ps() as i64);
            let t = factor_modulus(&i, lambda).unwrap();
            let twist = t.twist.unwrap();
            assert_eq!(twist.l_mod_3 as u64, l % 3);
            assert!(twist.alpha_power == 1 || twist.alpha_power == 2);
        }
    }
}
