//! Cyclotomic cosets modulo `l` and `3l`, their family labels, reciprocal
//! pairings, and minimal polynomials.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::arith;
use crate::gf::{Elem, ExtField, FieldError};
use crate::poly::{PolyError, Polynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CosetError {
    #[error("modulus {n} and multiplier {q} are not coprime")]
    NotCoprime { n: u64, q: u64 },
    #[error("{0} is not an odd prime different from 3")]
    BadL(u64),
    #[error("coset labeling failed for q = {q}, l = {l}: {reason}")]
    Labeling { q: u64, l: u64, reason: String },
    #[error("minimal polynomial does not lie over the base field: {0}")]
    Landing(String),
    #[error("element is not a primitive {0}-th root of unity")]
    BadRoot(u64),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// An orbit `{s, s q, s q^2, ...}` modulo `modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Coset {
    pub modulus: u64,
    pub multiplier: u64,
    /// Sorted; the representative is the first (smallest) member.
    pub members: Vec<u64>,
}

impl Coset {
    pub fn of(s: u64, n: u64, q: u64) -> Coset {
        let s = s % n;
        let mut members = vec![s];
        let mut x = arith::mul_mod(s, q, n);
        while x != s {
            members.push(x);
            x = arith::mul_mod(x, q, n);
        }
        members.sort_unstable();
        Coset {
            modulus: n,
            multiplier: q % n,
            members,
        }
    }

    pub fn representative(&self) -> u64 {
        self.members[0]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.members.binary_search(&(x % self.modulus)).is_ok()
    }
}

/// All `q`-cyclotomic cosets modulo `n`, sorted by representative.
pub fn q_cosets(n: u64, q: u64) -> Result<Vec<Coset>, CosetError> {
    if n == 0 || arith::gcd(n, q) != 1 {
        return Err(CosetError::NotCoprime { n, q });
    }
    let mut seen = vec![false; n as usize];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s as usize] {
            continue;
        }
        let c = Coset::of(s, n, q);
        for &m in &c.members {
            seen[m as usize] = true;
        }
        out.push(c);
    }
    Ok(out)
}

/// The coset of `-s` where `s` is any member.
pub fn reciprocal_coset(c: &Coset) -> Coset {
    let s = c.representative();
    Coset::of((c.modulus - s) % c.modulus, c.modulus, c.multiplier)
}

fn check_l(l: u64) -> Result<(), CosetError> {
    if l == 3 || l % 2 == 0 || !arith::is_prime(l) {
        Err(CosetError::BadL(l))
    } else {
        Ok(())
    }
}

/// A primitive root `g` modulo `l` (and modulo every power of `l`) with
/// `g = 1 (mod 3)`.
///
/// Takes the smallest primitive root `r` with `r^(l-1) != 1 (mod l^2)` and
/// lifts it to `r + (1 - r) l^2`, reduced into `[1, 3 l^2)`.
pub fn special_primitive_root(l: u64) -> Result<u64, CosetError> {
    check_l(l)?;
    let l2 = l * l;
    let r = (2..l)
        .find(|&r| arith::is_primitive_root(r, l) && arith::pow_mod(r, l - 1, l2) != 1)
        .expect("a primitive root that lifts to l^2 always exists");
    let m = 3 * l2;
    let g = arith::rem(r as i64 + (1 - r as i64) * l2 as i64, m);
    assert_eq!(g % 3, 1);
    assert!(arith::is_primitive_root(g % l, l));
    assert_ne!(arith::pow_mod(g, l - 1, l2), 1);
    Ok(g)
}

/// Multiplicative order of `q` modulo `3l`, from the order modulo `l`.
pub fn ord_3l(q: u64, l: u64) -> Result<u64, CosetError> {
    check_l(l)?;
    if arith::gcd(q, 3 * l) != 1 {
        return Err(CosetError::NotCoprime { n: 3 * l, q });
    }
    let f = arith::mult_order(q, l).expect("coprime");
    let ord = if q % 3 == 1 || f % 2 == 0 { f } else { 2 * f };
    debug_assert_eq!(Some(ord), arith::mult_order(q, 3 * l));
    Ok(ord)
}

/// Which of the three coset layouts modulo `3l` applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CosetCase {
    /// `q = 1 (mod 3)`.
    QOneMod3,
    /// `q = 2 (mod 3)` and `ord_l(q)` even.
    QTwoMod3FEven,
    /// `q = 2 (mod 3)` and `ord_l(q)` odd.
    QTwoMod3FOdd,
}

impl CosetCase {
    pub fn classify(q: u64, f: u64) -> CosetCase {
        match (q % 3, f % 2) {
            (1, _) => CosetCase::QOneMod3,
            (_, 0) => CosetCase::QTwoMod3FEven,
            _ => CosetCase::QTwoMod3FOdd,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            CosetCase::QOneMod3 => "q=1mod3",
            CosetCase::QTwoMod3FEven => "q=2mod3/f-even",
            CosetCase::QTwoMod3FOdd => "q=2mod3/f-odd",
        }
    }
}

/// Family label of a coset modulo `3l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CosetLabel {
    /// `{0}`.
    Zero,
    /// The coset of `l` (which also holds `-l` when `q = 2 mod 3`).
    L,
    /// The coset of `-l`, only separate when `q = 1 mod 3`.
    MinusL,
    /// The coset of `sign * g^k`.
    Unit { sign: i8, k: u64 },
    /// The coset of `3 g^k`.
    Triple { k: u64 },
}

impl fmt::Display for CosetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CosetLabel::Zero => write!(f, "B_0"),
            CosetLabel::L => write!(f, "B_l"),
            CosetLabel::MinusL => write!(f, "B_-l"),
            CosetLabel::Unit { sign: 1, k } => write!(f, "B_g^{k}"),
            CosetLabel::Unit { k, .. } => write!(f, "B_-g^{k}"),
            CosetLabel::Triple { k } => write!(f, "B_3g^{k}"),
        }
    }
}

/// The `q`-cyclotomic cosets modulo `3l` with their family labels.
#[derive(Debug, Clone, Serialize)]
pub struct CosetFamily {
    pub q: u64,
    pub l: u64,
    pub case: CosetCase,
    pub g: u64,
    /// `ord_l(q)`.
    pub f: u64,
    /// `(l - 1) / f`.
    pub e: u64,
    /// `ord_3l(q)`.
    pub ord: u64,
    pub cosets: Vec<(CosetLabel, Coset)>,
}

/// Labels every `q`-coset modulo `3l` and checks the predicted layout:
/// sizes, disjointness, coverage, and the reciprocal pairing.
pub fn cosets_mod_3l(q: u64, l: u64, g: u64) -> Result<CosetFamily, CosetError> {
    check_l(l)?;
    let n = 3 * l;
    if arith::gcd(q, n) != 1 {
        return Err(CosetError::NotCoprime { n, q });
    }
    let fail = |reason: String| CosetError::Labeling { q, l, reason };
    if g % 3 != 1 || !arith::is_primitive_root(g % l, l) {
        return Err(fail(format!("g = {g} is not a primitive root = 1 mod 3")));
    }
    let f = arith::mult_order(q, l).expect("coprime");
    let e = (l - 1) / f;
    let ord = ord_3l(q, l)?;
    let case = CosetCase::classify(q, f);
    let gk = |k: u64| arith::pow_mod(g, k, n);

    let mut predicted: Vec<(CosetLabel, u64, usize)> = vec![(CosetLabel::Zero, 0, 1)];
    let f_us = f as usize;
    match case {
        CosetCase::QOneMod3 => {
            predicted.push((CosetLabel::L, l, 1));
            predicted.push((CosetLabel::MinusL, n - l, 1));
            for k in 0..e {
                predicted.push((CosetLabel::Unit { sign: 1, k }, gk(k), f_us));
            }
            for k in 0..e {
                predicted.push((CosetLabel::Unit { sign: -1, k }, n - gk(k), f_us));
            }
            for k in 0..e {
                predicted.push((CosetLabel::Triple { k }, 3 * gk(k) % n, f_us));
            }
        }
        CosetCase::QTwoMod3FEven => {
            predicted.push((CosetLabel::L, l, 2));
            for k in 0..2 * e {
                predicted.push((CosetLabel::Unit { sign: 1, k }, gk(k), f_us));
            }
            for k in 0..e {
                predicted.push((CosetLabel::Triple { k }, 3 * gk(k) % n, f_us));
            }
        }
        CosetCase::QTwoMod3FOdd => {
            predicted.push((CosetLabel::L, l, 2));
            for k in 0..e {
                predicted.push((CosetLabel::Unit { sign: 1, k }, gk(k), 2 * f_us));
            }
            for k in 0..e {
                predicted.push((CosetLabel::Triple { k }, 3 * gk(k) % n, f_us));
            }
        }
    }

    let computed = q_cosets(n, q)?;
    if computed.len() != predicted.len() {
        return Err(fail(format!(
            "expected {} cosets, found {}",
            predicted.len(),
            computed.len()
        )));
    }
    let mut used = vec![false; computed.len()];
    let mut cosets = Vec::with_capacity(predicted.len());
    for (label, elem, size) in predicted {
        let idx = computed
            .iter()
            .position(|c| c.contains(elem))
            .expect("cosets partition [0, n)");
        if used[idx] {
            return Err(fail(format!("{label} collides with another family")));
        }
        used[idx] = true;
        if computed[idx].len() != size {
            return Err(fail(format!(
                "{label} has {} members, expected {size}",
                computed[idx].len()
            )));
        }
        cosets.push((label, computed[idx].clone()));
    }
    let total: usize = cosets.iter().map(|(_, c)| c.len()).sum();
    if total as u64 != n {
        return Err(fail(format!("sizes sum to {total}, not {n}")));
    }
    let family = CosetFamily {
        q,
        l,
        case,
        g,
        f,
        e,
        ord,
        cosets,
    };
    for (label, c) in &family.cosets {
        let expected = family.predicted_reciprocal(*label);
        let actual = family.label_of(reciprocal_coset(c).representative());
        if actual != expected {
            return Err(fail(format!(
                "reciprocal of {label} is {actual}, predicted {expected}"
            )));
        }
    }
    Ok(family)
}

impl CosetFamily {
    pub fn new(q: u64, l: u64) -> Result<CosetFamily, CosetError> {
        cosets_mod_3l(q, l, special_primitive_root(l)?)
    }

    pub fn get(&self, label: CosetLabel) -> Option<&Coset> {
        self.cosets
            .iter()
            .find(|(lab, _)| *lab == label)
            .map(|(_, c)| c)
    }

    /// Label of the coset containing `x` (mod `3l`).
    pub fn label_of(&self, x: u64) -> CosetLabel {
        self.cosets
            .iter()
            .find(|(_, c)| c.contains(x))
            .map(|(lab, _)| *lab)
            .expect("labels cover every residue")
    }

    /// The label of the reciprocal coset, derived from `-1 = g^((l-1)/2)`
    /// modulo `l` and the case layout rather than by computation.
    pub fn predicted_reciprocal(&self, label: CosetLabel) -> CosetLabel {
        let e = self.e;
        let half = (self.l - 1) / 2;
        match (self.case, label) {
            (_, CosetLabel::Zero) => CosetLabel::Zero,
            (CosetCase::QOneMod3, CosetLabel::L) => CosetLabel::MinusL,
            (CosetCase::QOneMod3, CosetLabel::MinusL) => CosetLabel::L,
            (_, CosetLabel::L) => CosetLabel::L,
            (_, CosetLabel::MinusL) => unreachable!("only present when q = 1 mod 3"),
            (CosetCase::QOneMod3, CosetLabel::Unit { sign, k }) => CosetLabel::Unit { sign: -sign, k },
            (CosetCase::QTwoMod3FEven, CosetLabel::Unit { k, .. }) => {
                // -g^k = g^(k + (l-1)/2) mod l, and -1 = q^(f/2) mod l while
                // q^(f/2) = (-1)^(f/2) mod 3; so -g^k = g^(k + e(f/2 + 1))
                // modulo 3l, up to multiplication by q.
                let t = self.f / 2;
                CosetLabel::Unit {
                    sign: 1,
                    k: (k + e * (t + 1)) % (2 * e),
                }
            }
            (CosetCase::QTwoMod3FOdd, CosetLabel::Unit { k, .. }) => CosetLabel::Unit {
                sign: 1,
                k: (k + e / 2) % e,
            },
            (_, CosetLabel::Triple { k }) => CosetLabel::Triple { k: (k + half) % e },
        }
    }

    /// `(self-reciprocal count, reciprocal pair count)` from the predicted
    /// pairing.
    pub fn reciprocal_counts(&self) -> (usize, usize) {
        let mut fixed = 0;
        let mut moved = 0;
        for (label, _) in &self.cosets {
            if self.predicted_reciprocal(*label) == *label {
                fixed += 1;
            } else {
                moved += 1;
            }
        }
        (fixed, moved / 2)
    }
}

/// Label of a coset modulo `l`: the coset containing `g^k q^shift`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ModLLabel {
    Zero,
    Power { k: u64, shift: u8 },
}

impl fmt::Display for ModLLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModLLabel::Zero => write!(f, "C_0"),
            ModLLabel::Power { k, shift: 0 } => write!(f, "C_{k}"),
            ModLLabel::Power { k, shift: 1 } => write!(f, "C_{k}q"),
            ModLLabel::Power { k, shift } => write!(f, "C_{k}q^{shift}"),
        }
    }
}

/// Cosets modulo a prime `l` for multiplier `q` or `q^3`.
#[derive(Debug, Clone, Serialize)]
pub struct ModLCosets {
    pub l: u64,
    pub multiplier: u64,
    pub g: u64,
    /// `ord_l(q)` for the underlying `q`.
    pub f: u64,
    pub e: u64,
    pub cosets: Vec<(ModLLabel, Coset)>,
}

impl ModLCosets {
    pub fn label_of(&self, x: u64) -> ModLLabel {
        self.cosets
            .iter()
            .find(|(_, c)| c.contains(x))
            .map(|(lab, _)| *lab)
            .expect("labels cover every residue")
    }

    pub fn get(&self, label: ModLLabel) -> Option<&Coset> {
        self.cosets
            .iter()
            .find(|(lab, _)| *lab == label)
            .map(|(_, c)| c)
    }

    /// Label of the coset of `-s` for `s` in the labeled coset.
    pub fn negate(&self, label: ModLLabel) -> ModLLabel {
        let c = self.get(label).expect("label belongs to this partition");
        self.label_of(reciprocal_coset(c).representative())
    }
}

/// `q`-cyclotomic cosets modulo `l`, labeled `C_k` (coset of `g^k`,
/// `0 <= k < e`).
pub fn q_cosets_mod_l(q: u64, l: u64, g: u64) -> Result<ModLCosets, CosetError> {
    check_l(l)?;
    if arith::gcd(q, l) != 1 {
        return Err(CosetError::NotCoprime { n: l, q });
    }
    let f = arith::mult_order(q, l).expect("coprime");
    let e = (l - 1) / f;
    let mut cosets = vec![(ModLLabel::Zero, Coset::of(0, l, q))];
    for k in 0..e {
        cosets.push((
            ModLLabel::Power { k, shift: 0 },
            Coset::of(arith::pow_mod(g, k, l), l, q),
        ));
    }
    let out = ModLCosets {
        l,
        multiplier: q % l,
        g,
        f,
        e,
        cosets,
    };
    check_partition(&out, q)?;
    Ok(out)
}

/// `q^3`-cyclotomic cosets modulo `l`. When `3 ∤ f` these coincide with the
/// `q`-cosets; otherwise each `q`-coset splits into the three cosets of
/// `g^k`, `g^k q`, `g^k q^2`, each of size `f/3`.
pub fn q3_cosets_mod_l(q: u64, l: u64, g: u64) -> Result<ModLCosets, CosetError> {
    check_l(l)?;
    if arith::gcd(q, l) != 1 {
        return Err(CosetError::NotCoprime { n: l, q });
    }
    let f = arith::mult_order(q, l).expect("coprime");
    let e = (l - 1) / f;
    let q3 = arith::pow_mod(q, 3, l);
    let mut cosets = vec![(ModLLabel::Zero, Coset::of(0, l, q3))];
    let shifts: u8 = if f % 3 == 0 { 3 } else { 1 };
    for k in 0..e {
        for shift in 0..shifts {
            let s = arith::mul_mod(arith::pow_mod(g, k, l), arith::pow_mod(q, shift as u64, l), l);
            let c = Coset::of(s, l, q3);
            let expected = if shifts == 3 { f / 3 } else { f };
            if c.len() as u64 != expected {
                return Err(CosetError::Labeling {
                    q,
                    l,
                    reason: format!("q^3-coset of {s} has {} members, expected {expected}", c.len()),
                });
            }
            cosets.push((ModLLabel::Power { k, shift }, c));
        }
    }
    let out = ModLCosets {
        l,
        multiplier: q3,
        g,
        f,
        e,
        cosets,
    };
    check_partition(&out, q)?;
    Ok(out)
}

fn check_partition(c: &ModLCosets, q: u64) -> Result<(), CosetError> {
    let mut seen = vec![false; c.l as usize];
    for (label, coset) in &c.cosets {
        for &m in &coset.members {
            if std::mem::replace(&mut seen[m as usize], true) {
                return Err(CosetError::Labeling {
                    q,
                    l: c.l,
                    reason: format!("{label} overlaps another coset at {m}"),
                });
            }
        }
    }
    if seen.iter().all(|&s| s) {
        Ok(())
    } else {
        Err(CosetError::Labeling {
            q,
            l: c.l,
            reason: "cosets do not cover every residue".into(),
        })
    }
}

/// `prod_{i in c} (x - eta^i)`, computed in `ext.field()` and read back over
/// `ext.base()`.
///
/// `eta` must be a primitive `c.modulus`-th root of unity and `c` closed under
/// multiplication by the base field's order.
pub fn minimal_poly_of_coset(c: &Coset, eta: Elem, ext: &ExtField) -> Result<Polynomial, CosetError> {
    let big = ext.field();
    if eta.is_zero() || big.element_order(eta)? != c.modulus {
        return Err(CosetError::BadRoot(c.modulus));
    }
    let roots: Vec<Elem> = c
        .members
        .iter()
        .map(|&i| big.pow(eta, i))
        .collect();
    let m = Polynomial::from_roots(big, &roots);
    m.rehome(ext.base())
        .map_err(|_| CosetError::Landing(format!("coset {:?} gives {m}", c.members)))
}
