//! Exact arithmetic in finite fields.
//!
//! A [`Field`] is one level of a tower `F_p ⊂ F_q ⊂ F_{q^k} ⊂ ...`. Every
//! level stores its elements as integer codes: an element of a level with
//! parent of order `Q` and modulus of degree `k` is the polynomial
//! `c_0 + c_1 y + ... + c_{k-1} y^{k-1}` over the parent, encoded as
//! `sum c_i Q^i`. Unrolling the tower, a code is just the base-`p` digit
//! string of the element, so the inclusion of a subfield is the identity on
//! codes and "does this element lie in `F_q`?" is `code < q`.
//!
//! Multiplication goes through discrete log tables built at construction,
//! which is what makes the exhaustive oracles in this crate affordable.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;
use crate::capacity;
use crate::poly::Polynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {order} exceeds the capacity bound of {limit} elements")]
    Capacity { order: u128, limit: u64 },
    #[error("modulus is not a monic irreducible polynomial of degree {0}")]
    ReducibleModulus(usize),
    #[error("element {0} is not a generator of the multiplicative group")]
    NotPrimitive(u32),
    #[error("zero has no inverse")]
    DivisionByZero,
    #[error("zero has no multiplicative order")]
    ZeroOrder,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("code {code} is out of range for a field of order {order}")]
    BadCode { code: u64, order: u32 },
    #[error("field specification is inconsistent: {0}")]
    BadSpec(String),
}

/// An element of some [`Field`], stored as its integer code.
///
/// Elements carry no reference to their field; all arithmetic goes through
/// the field (`field.mul(a, b)`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A finite field together with its designated generator `xi`.
///
/// Cloning is cheap (the tables are shared).
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

struct FieldData {
    p: u32,
    order: u32,
    degree: u32,
    abs_degree: u32,
    parent: Option<Field>,
    modulus: Vec<Elem>,
    generator: Elem,
    // exp has length 2(order-1) so that log a + log b never needs reducing.
    exp: Vec<u32>,
    log: Vec<u32>,
    // Moduli along the tower, bottom first, followed by the generator code.
    signature: Vec<Vec<u32>>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.signature == other.0.signature
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.abs_degree == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.abs_degree)
        }
    }
}

/// Builds `F_{p^m}` deterministically.
///
/// The modulus is the first monic irreducible of degree `m` over `F_p` in
/// code order, and `xi` is the generator of `F_q^*` with the smallest code.
/// For `m = 1` the modulus is `y`, so codes are just residues mod `p`.
pub fn build_field(p: u64, m: u32) -> Result<Field, FieldError> {
    if !arith::is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if m == 0 {
        return Err(FieldError::ZeroDegree);
    }
    Field::prime(p as u32)?.extend(m)
}

impl Field {
    /// The prime field `F_p` with its smallest primitive root as generator.
    pub fn prime(p: u32) -> Result<Field, FieldError> {
        if !arith::is_prime(p as u64) {
            return Err(FieldError::NotPrime(p as u64));
        }
        check_capacity(p as u128)?;
        let generator = arith::smallest_primitive_root(p as u64).expect("p is prime") as u32;
        let n = (p - 1) as usize;
        let mut exp = Vec::with_capacity(2 * n);
        let mut x = 1u64;
        for _ in 0..n {
            exp.push(x as u32);
            x = x * generator as u64 % p as u64;
        }
        let (exp, log) = finish_tables(exp, p);
        Ok(Field(Arc::new(FieldData {
            p,
            order: p,
            degree: 1,
            abs_degree: 1,
            parent: None,
            modulus: Vec::new(),
            generator: Elem(generator),
            exp,
            log,
            signature: vec![vec![p], vec![generator]],
        })))
    }

    /// Extension of degree `k` over `self` using the first irreducible
    /// modulus in code order.
    pub fn extend(&self, k: u32) -> Result<Field, FieldError> {
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let order = (self.order() as u128).pow(k);
        check_capacity(order)?;
        let q = self.order() as u64;
        let candidates = (self.order() as u64).pow(k);
        for t in 0..candidates {
            let mut coeffs = Vec::with_capacity(k as usize + 1);
            let mut rest = t;
            for _ in 0..k {
                coeffs.push(Elem((rest % q) as u32));
                rest /= q;
            }
            coeffs.push(Elem::ONE);
            if k > 1 && coeffs[0].is_zero() {
                continue;
            }
            let f = Polynomial::new(self, coeffs.clone());
            if f.is_irreducible() {
                return Field::from_parts(self, coeffs, None);
            }
        }
        unreachable!("an irreducible polynomial of every degree exists")
    }

    /// Extension with an explicit modulus over `self` and an optional pinned
    /// generator. Both are validated.
    pub fn extend_with(
        &self,
        modulus: &[Elem],
        generator: Option<Elem>,
    ) -> Result<Field, FieldError> {
        let degree = modulus.len().saturating_sub(1);
        if degree == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let f = Polynomial::new(self, modulus.to_vec());
        if f.coeffs().len() != modulus.len() || f.leading() != Elem::ONE || !f.is_irreducible() {
            return Err(FieldError::ReducibleModulus(degree));
        }
        Field::from_parts(self, modulus.to_vec(), generator)
    }

    fn from_parts(
        parent: &Field,
        modulus: Vec<Elem>,
        generator: Option<Elem>,
    ) -> Result<Field, FieldError> {
        let k = (modulus.len() - 1) as u32;
        let order128 = (parent.order() as u128).pow(k);
        check_capacity(order128)?;
        let order = order128 as u32;
        let ring = QuotientRing {
            parent,
            modulus: &modulus,
        };
        let group = (order - 1) as u64;
        let factors = arith::prime_factors(group);
        let is_generator = |g: u32| {
            g != 0 && {
                let gd = ring.digits(g);
                factors
                    .iter()
                    .all(|&r| ring.pow(&gd, group / r) != ring.one())
            }
        };
        let generator = match generator {
            Some(g) => {
                if g.0 >= order {
                    return Err(FieldError::BadCode {
                        code: g.0 as u64,
                        order,
                    });
                }
                if !is_generator(g.0) {
                    return Err(FieldError::NotPrimitive(g.0));
                }
                g.0
            }
            None => (1..order)
                .find(|&g| is_generator(g))
                .expect("the multiplicative group of a finite field is cyclic"),
        };
        let gd = ring.digits(generator);
        let mut exp = Vec::with_capacity(2 * group as usize);
        let mut x = ring.one();
        for _ in 0..group {
            exp.push(ring.encode(&x));
            x = ring.mul(&x, &gd);
        }
        let (exp, log) = finish_tables(exp, order);
        let mut signature = parent.0.signature.clone();
        signature.pop();
        signature.push(modulus.iter().map(|c| c.0).collect());
        signature.push(vec![generator]);
        Ok(Field(Arc::new(FieldData {
            p: parent.0.p,
            order,
            degree: k,
            abs_degree: parent.0.abs_degree * k,
            parent: Some(parent.clone()),
            modulus,
            generator: Elem(generator),
            exp,
            log,
            signature,
        })))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn order(&self) -> u32 {
        self.0.order
    }

    /// Degree over the parent level (for a prime field: 1).
    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    /// Degree over the prime field.
    pub fn absolute_degree(&self) -> u32 {
        self.0.abs_degree
    }

    pub fn parent(&self) -> Option<&Field> {
        self.0.parent.as_ref()
    }

    /// Monic modulus over the parent, low-degree-first. Empty for the
    /// prime field.
    pub fn modulus(&self) -> &[Elem] {
        &self.0.modulus
    }

    /// The designated generator `xi` of the multiplicative group.
    pub fn generator(&self) -> Elem {
        self.0.generator
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    pub fn elem(&self, code: u32) -> Result<Elem, FieldError> {
        if code < self.order() {
            Ok(Elem(code))
        } else {
            Err(FieldError::BadCode {
                code: code as u64,
                order: self.order(),
            })
        }
    }

    /// The image of an integer under `Z -> F_p -> F`.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order()).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> {
        (1..self.order()).map(Elem)
    }

    /// Whether `other` is this field or one of its ancestors in the tower.
    pub fn has_subfield(&self, other: &Field) -> bool {
        let mut cur = Some(self);
        while let Some(f) = cur {
            if f == other {
                return true;
            }
            cur = f.parent();
        }
        false
    }

    /// Coefficients over `F_p`, low-degree-first, of length equal to the
    /// absolute degree.
    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        let p = self.0.p;
        let mut x = a.0;
        (0..self.0.abs_degree)
            .map(|_| {
                let d = x % p;
                x /= p;
                d
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem, FieldError> {
        let p = self.0.p as u64;
        if coeffs.len() > self.0.abs_degree as usize || coeffs.iter().any(|&c| c as u64 >= p) {
            return Err(FieldError::BadSpec(format!(
                "coefficient vector {coeffs:?} does not describe an element of {self:?}"
            )));
        }
        let code = coeffs.iter().rev().fold(0u64, |acc, &c| acc * p + c as u64);
        Ok(Elem(code as u32))
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.0.p;
        if p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if self.0.abs_degree == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= p { s - p } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut pw = 1;
        while x != 0 || y != 0 {
            let s = (x % p + y % p) % p;
            out += s * pw;
            pw *= p;
            x /= p;
            y /= p;
        }
        Elem(out)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        let mut x = a.0;
        let mut out = 0;
        let mut pw = 1;
        while x != 0 {
            let d = x % p;
            out += ((p - d) % p) * pw;
            pw *= p;
            x /= p;
        }
        Elem(out)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let d = &self.0;
        Elem(d.exp[(d.log[a.0 as usize] + d.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let n = self.0.order - 1;
        let l = self.0.log[a.0 as usize];
        Ok(Elem(self.0.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let n = (self.0.order - 1) as u64;
        let l = self.0.log[a.0 as usize] as u64;
        Elem(self.0.exp[arith::mul_mod(l, e % n, n) as usize])
    }

    /// `a^e` for a signed exponent; `a` must be nonzero when `e < 0`.
    pub fn pow_signed(&self, a: Elem, e: i64) -> Result<Elem, FieldError> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(self.inv(a)?, e.unsigned_abs()))
        }
    }

    /// `xi^e` for any integer `e`.
    pub fn xi_pow(&self, e: i64) -> Elem {
        let n = (self.0.order - 1) as u64;
        Elem(self.0.exp[arith::rem(e, n) as usize])
    }

    /// Discrete logarithm base `xi`, in `[0, q - 1)`.
    pub fn log(&self, a: Elem) -> Option<u64> {
        (a.0 != 0).then(|| self.0.log[a.0 as usize] as u64)
    }

    /// Smallest `e >= 1` with `a^e = 1`.
    pub fn element_order(&self, a: Elem) -> Result<u64, FieldError> {
        let l = self.log(a).ok_or(FieldError::ZeroOrder)?;
        let n = (self.0.order - 1) as u64;
        Ok(n / arith::gcd(l, n))
    }

    /// The `i`-fold Frobenius relative to the parent: `a^(Q^i)` where `Q`
    /// is the parent's order. On a prime field this is the identity.
    pub fn frobenius(&self, a: Elem, i: u32) -> Elem {
        match self.parent() {
            None => a,
            Some(parent) => {
                let n = (self.0.order - 1) as u64;
                let e = arith::pow_mod(parent.order() as u64, i as u64, n);
                self.pow(a, e)
            }
        }
    }

    /// A primitive `n`-th root of unity, `xi^((Q-1)/n)`, if `n | Q - 1`.
    pub fn primitive_root_of_unity(&self, n: u64) -> Option<Elem> {
        let group = (self.0.order - 1) as u64;
        (n > 0 && group % n == 0).then(|| self.xi_pow((group / n) as i64))
    }

    /// The unique `p^s`-th root of `a` (Frobenius is a bijection).
    pub fn pth_power_root(&self, a: Elem, s: u32) -> Elem {
        if a.0 == 0 {
            return a;
        }
        let n = (self.0.order - 1) as u64;
        let ps = arith::pow_mod(self.0.p as u64, s as u64, n);
        let inv = arith::inv_mod(ps, n).expect("p is coprime to q - 1");
        self.pow(a, inv)
    }

    /// Restricts an element to a subfield in the tower, if it lies there.
    pub fn restrict(&self, a: Elem, sub: &Field) -> Option<Elem> {
        debug_assert!(self.has_subfield(sub));
        (a.0 < sub.order()).then_some(a)
    }

    /// Serializable description pinning this field (only meaningful for a
    /// level built directly over `F_p`).
    pub fn spec(&self) -> FieldSpec {
        let prime_level = self.parent().map_or(true, |p| p.parent().is_none());
        assert!(prime_level, "field specs describe F_(p^m) over F_p");
        FieldSpec {
            p: self.0.p,
            m: self.0.abs_degree,
            modulus: if self.parent().is_none() {
                vec![0, 1]
            } else {
                self.0.modulus.iter().map(|c| c.0).collect()
            },
            xi: self.coeffs(self.generator()),
        }
    }

    /// Rebuilds a field from a pinned specification, validating the
    /// modulus and generator.
    pub fn from_spec(spec: &FieldSpec) -> Result<Field, FieldError> {
        if spec.modulus.len() != spec.m as usize + 1 {
            return Err(FieldError::BadSpec(format!(
                "modulus has {} coefficients, expected {}",
                spec.modulus.len(),
                spec.m + 1
            )));
        }
        let prime = Field::prime(spec.p)?;
        let modulus = spec
            .modulus
            .iter()
            .map(|&c| prime.elem(c))
            .collect::<Result<Vec<_>, _>>()?;
        let xi_code = spec
            .xi
            .iter()
            .rev()
            .try_fold(0u64, |acc, &c| {
                (c < spec.p).then(|| acc * spec.p as u64 + c as u64)
            })
            .ok_or_else(|| FieldError::BadSpec("xi coefficient out of range".into()))?;
        prime.extend_with(&modulus, Some(Elem(xi_code as u32)))
    }
}

/// Reproducible description of `F_{p^m}`: modulus and generator as
/// low-degree-first coefficient sequences over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
    pub xi: Vec<u32>,
}

/// `F_{q^k}` as an extension of `F_q`, with the code-identity embedding.
#[derive(Clone, Debug)]
pub struct ExtField {
    base: Field,
    field: Field,
}

impl ExtField {
    /// Builds the degree-`k` extension of `base` (first irreducible modulus
    /// in code order).
    pub fn new(base: &Field, k: u32) -> Result<ExtField, FieldError> {
        Ok(ExtField {
            base: base.clone(),
            field: base.extend(k)?,
        })
    }

    /// Wraps an existing tower `base ⊂ field`.
    pub fn from_tower(base: &Field, field: &Field) -> ExtField {
        assert!(field.has_subfield(base), "{base:?} is not a subfield of {field:?}");
        ExtField {
            base: base.clone(),
            field: field.clone(),
        }
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Degree of the extension over the base.
    pub fn degree(&self) -> u32 {
        self.field.absolute_degree() / self.base.absolute_degree()
    }

    /// The ext modulus over the base, when the extension is one level.
    pub fn modulus(&self) -> &[Elem] {
        self.field.modulus()
    }

    pub fn embed(&self, a: Elem) -> Elem {
        debug_assert!(a.0 < self.base.order());
        a
    }

    pub fn restrict(&self, a: Elem) -> Option<Elem> {
        (a.0 < self.base.order()).then_some(a)
    }

    /// `a^(q^i)` with `q` the base order.
    pub fn frobenius(&self, a: Elem, i: u32) -> Elem {
        let n = (self.field.order() - 1) as u64;
        let e = arith::pow_mod(self.base.order() as u64, i as u64, n);
        self.field.pow(a, e)
    }
}

fn check_capacity(order: u128) -> Result<(), FieldError> {
    let limit = capacity::field_limit();
    if order > limit as u128 {
        Err(FieldError::Capacity { order, limit })
    } else {
        Ok(())
    }
}

fn finish_tables(mut exp: Vec<u32>, order: u32) -> (Vec<u32>, Vec<u32>) {
    let n = exp.len();
    let mut log = vec![0u32; order as usize];
    for (i, &x) in exp.iter().enumerate() {
        log[x as usize] = i as u32;
    }
    exp.extend_from_within(..n);
    (exp, log)
}

/// Arithmetic in `parent[y]/(modulus)` on digit vectors, used only while
/// building tables.
struct QuotientRing<'a> {
    parent: &'a Field,
    modulus: &'a [Elem],
}

impl QuotientRing<'_> {
    fn k(&self) -> usize {
        self.modulus.len() - 1
    }

    fn one(&self) -> Vec<Elem> {
        let mut v = vec![Elem::ZERO; self.k()];
        v[0] = Elem::ONE;
        v
    }

    fn digits(&self, code: u32) -> Vec<Elem> {
        let q = self.parent.order();
        let mut x = code;
        (0..self.k())
            .map(|_| {
                let d = x % q;
                x /= q;
                Elem(d)
            })
            .collect()
    }

    fn encode(&self, v: &[Elem]) -> u32 {
        let q = self.parent.order();
        v.iter().rev().fold(0, |acc, d| acc * q + d.0)
    }

    fn mul(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let f = self.parent;
        let k = self.k();
        let mut prod = vec![Elem::ZERO; 2 * k - 1];
        for (i, &x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = f.add(prod[i + j], f.mul(x, y));
            }
        }
        for i in (k..prod.len()).rev() {
            let c = prod[i];
            if c.is_zero() {
                continue;
            }
            for (j, &m) in self.modulus[..k].iter().enumerate() {
                prod[i - k + j] = f.sub(prod[i - k + j], f.mul(c, m));
            }
        }
        prod.truncate(k);
        prod
    }

    fn pow(&self, a: &[Elem], mut e: u64) -> Vec<Elem> {
        let mut acc = self.one();
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}
