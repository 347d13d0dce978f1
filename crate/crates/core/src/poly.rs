//! Dense univariate polynomials over a [`Field`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::arith;
use crate::gf::{Elem, Field, FieldError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomials live over different fields")]
    FieldMismatch,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("reciprocal needs a nonzero constant term")]
    ZeroConstantTerm,
    #[error("coefficient {0:?} does not lie in the target field")]
    NotInSubfield(Elem),
    #[error("fields are not in a common tower")]
    NotInTower,
    #[error("root order computation needs q^deg - 1 below 2^62")]
    TooLarge,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// `c_0 + c_1 x + ... + c_d x^d`, stored low-degree-first with no trailing
/// zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<Elem>,
}

impl Polynomial {
    pub fn new(field: &Field, mut coeffs: Vec<Elem>) -> Polynomial {
        debug_assert!(coeffs.iter().all(|c| c.code() < field.order()));
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial {
            field: field.clone(),
            coeffs,
        }
    }

    /// Builds a polynomial from integer codes, low-degree-first.
    pub fn from_codes(field: &Field, codes: &[u32]) -> Result<Polynomial, FieldError> {
        let coeffs = codes
            .iter()
            .map(|&c| field.elem(c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Polynomial::new(field, coeffs))
    }

    pub fn zero(field: &Field) -> Polynomial {
        Polynomial::new(field, Vec::new())
    }

    pub fn one(field: &Field) -> Polynomial {
        Polynomial::constant(field, Elem::ONE)
    }

    pub fn constant(field: &Field, c: Elem) -> Polynomial {
        Polynomial::new(field, vec![c])
    }

    pub fn x(field: &Field) -> Polynomial {
        Polynomial::monomial(field, Elem::ONE, 1)
    }

    pub fn monomial(field: &Field, c: Elem, degree: usize) -> Polynomial {
        let mut coeffs = vec![Elem::ZERO; degree + 1];
        coeffs[degree] = c;
        Polynomial::new(field, coeffs)
    }

    /// `x^n - c`.
    pub fn binomial(field: &Field, n: usize, c: Elem) -> Polynomial {
        let mut coeffs = vec![Elem::ZERO; n + 1];
        coeffs[n] = Elem::ONE;
        coeffs[0] = field.sub(coeffs[0], c);
        Polynomial::new(field, coeffs)
    }

    /// `prod (x - r)` over the given roots.
    pub fn from_roots(field: &Field, roots: &[Elem]) -> Polynomial {
        roots.iter().fold(Polynomial::one(field), |acc, &r| {
            &acc * &Polynomial::new(field, vec![field.neg(r), Elem::ONE])
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn codes(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.code()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Elem::ONE
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [Elem::ONE]
    }

    pub fn ensure_same_field(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(PolyError::FieldMismatch)
        }
    }

    /// Sort key: degree first, then coefficient codes low-degree-first.
    pub fn sort_key(&self) -> (usize, Vec<u32>) {
        (self.coeffs.len(), self.codes())
    }

    pub fn scale(&self, c: Elem) -> Polynomial {
        let f = &self.field;
        Polynomial::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Divides by the leading coefficient. The zero polynomial is returned
    /// unchanged.
    pub fn monic(&self) -> Polynomial {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading()).expect("leading term is nonzero");
        self.scale(inv)
    }

    /// `x^deg f(1/x)`, the coefficient-reversed polynomial.
    pub fn reciprocal(&self) -> Result<Polynomial, PolyError> {
        if self.coeff(0).is_zero() {
            return Err(PolyError::ZeroConstantTerm);
        }
        let mut c = self.coeffs.clone();
        c.reverse();
        Ok(Polynomial::new(&self.field, c))
    }

    /// The monic reciprocal `f(0)^{-1} x^deg f(1/x)`.
    pub fn monic_reciprocal(&self) -> Result<Polynomial, PolyError> {
        Ok(self.reciprocal()?.monic())
    }

    /// `f(c x)`.
    pub fn scale_substitute(&self, c: Elem) -> Polynomial {
        let f = &self.field;
        let mut power = Elem::ONE;
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| {
                let out = f.mul(a, power);
                power = f.mul(power, c);
                out
            })
            .collect();
        Polynomial::new(f, coeffs)
    }

    /// `f(x^t)`.
    pub fn compose_power(&self, t: usize) -> Polynomial {
        assert!(t > 0);
        let mut coeffs = vec![Elem::ZERO; self.deg() * t + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            coeffs[i * t] = a;
        }
        Polynomial::new(&self.field, coeffs)
    }

    pub fn eval(&self, a: Elem) -> Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, a), c))
    }

    pub fn derivative(&self) -> Polynomial {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
            .collect();
        Polynomial::new(f, coeffs)
    }

    pub fn map_coeffs(&self, g: impl Fn(Elem) -> Elem) -> Polynomial {
        Polynomial::new(&self.field, self.coeffs.iter().map(|&c| g(c)).collect())
    }

    /// Raises every coefficient to the power `e` (a Frobenius when `e` is a
    /// power of the characteristic).
    pub fn pow_coeffs(&self, e: u64) -> Polynomial {
        self.map_coeffs(|c| self.field.pow(c, e))
    }

    pub fn pow(&self, mut e: u64) -> Polynomial {
        let mut acc = Polynomial::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial), PolyError> {
        self.ensure_same_field(divisor)?;
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let f = &self.field;
        let dd = divisor.deg();
        if self.coeffs.len() <= dd {
            return Ok((Polynomial::zero(f), self.clone()));
        }
        let inv_lead = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Elem::ZERO; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = f.mul(rem[i], inv_lead);
            if c.is_zero() {
                continue;
            }
            quot[i - dd] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] = f.sub(rem[i - dd + j], f.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((Polynomial::new(f, quot), Polynomial::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Polynomial) -> Result<Polynomial, PolyError> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Exact division; `None` unless the remainder is zero.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        match self.div_rem(divisor) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn divides(&self, other: &Polynomial) -> bool {
        !self.is_zero() && other.rem(self).is_ok_and(|r| r.is_zero())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.ensure_same_field(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn mulmod(&self, other: &Polynomial, modulus: &Polynomial) -> Result<Polynomial, PolyError> {
        (self * other).rem(modulus)
    }

    pub fn powmod(&self, mut e: u64, modulus: &Polynomial) -> Result<Polynomial, PolyError> {
        let mut acc = Polynomial::one(&self.field).rem(modulus)?;
        let mut base = self.rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mulmod(&base, modulus)?;
            }
        }
        Ok(acc)
    }

    /// Rabin's test over the coefficient field: `f` of degree `k` is
    /// irreducible iff `x^(Q^k) = x mod f` and `gcd(x^(Q^(k/r)) - x, f) = 1`
    /// for every prime `r | k`.
    pub fn is_irreducible(&self) -> bool {
        let Some(k) = self.degree() else {
            return false;
        };
        if k == 0 {
            return false;
        }
        if k == 1 {
            return true;
        }
        if self.coeff(0).is_zero() {
            return false;
        }
        let f = self.monic();
        let field = &self.field;
        let q = field.order() as u64;
        let x = Polynomial::x(field);
        // frob[i] = x^(Q^i) mod f
        let mut frob = vec![x.rem(&f).expect("f is nonzero")];
        for _ in 0..k {
            let next = frob.last().unwrap().powmod(q, &f).expect("f is nonzero");
            frob.push(next);
        }
        if frob[k] != frob[0] {
            return false;
        }
        arith::prime_factors(k as u64).into_iter().all(|r| {
            let h = &frob[k / r as usize] - &x;
            h.gcd(&f).expect("same field").is_one()
        })
    }

    /// Multiplicative order of any root of this irreducible polynomial,
    /// computed as the order of `x` in `F_q[x]/(f)`.
    pub fn root_order(&self) -> Result<u64, PolyError> {
        if self.coeff(0).is_zero() {
            return Err(PolyError::ZeroConstantTerm);
        }
        let q = self.field.order() as u128;
        let group = u32::try_from(self.deg())
            .ok()
            .and_then(|d| q.checked_pow(d))
            .filter(|&g| g < 1 << 62)
            .ok_or(PolyError::TooLarge)? as u64
            - 1;
        let f = self.monic();
        let x = Polynomial::x(&self.field);
        let one = Polynomial::one(&self.field).rem(&f)?;
        let mut ord = group;
        for r in arith::prime_factors(group) {
            while ord % r == 0 && x.powmod(ord / r, &f)? == one {
                ord /= r;
            }
        }
        Ok(ord)
    }

    /// Re-expresses the polynomial over another level of the same tower:
    /// a superfield always works, a subfield only when every coefficient
    /// lies in it.
    pub fn rehome(&self, target: &Field) -> Result<Polynomial, PolyError> {
        if target == &self.field {
            return Ok(self.clone());
        }
        if target.has_subfield(&self.field) {
            return Ok(Polynomial {
                field: target.clone(),
                coeffs: self.coeffs.clone(),
            });
        }
        if self.field.has_subfield(target) {
            if let Some(&bad) = self.coeffs.iter().find(|c| c.code() >= target.order()) {
                return Err(PolyError::NotInSubfield(bad));
            }
            return Ok(Polynomial {
                field: target.clone(),
                coeffs: self.coeffs.clone(),
            });
        }
        Err(PolyError::NotInTower)
    }

    /// Whether every coefficient lies in the subfield `sub`.
    pub fn lies_over(&self, sub: &Field) -> bool {
        self.field.has_subfield(sub) && self.coeffs.iter().all(|c| c.code() < sub.order())
    }

    pub fn product<'a>(field: &Field, items: impl IntoIterator<Item = &'a Polynomial>) -> Polynomial {
        items
            .into_iter()
            .fold(Polynomial::one(field), |acc, g| &acc * g)
    }

    fn fmt_coeff(&self, c: Elem) -> String {
        if self.field.absolute_degree() == 1 {
            c.code().to_string()
        } else {
            match self.field.log(c) {
                Some(0) => "1".to_string(),
                Some(1) => "ξ".to_string(),
                Some(k) => format!("ξ^{k}"),
                None => "0".to_string(),
            }
        }
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = self.fmt_coeff(c);
            match (i, coeff.as_str()) {
                (0, _) => write!(f, "{coeff}")?,
                (1, "1") => write!(f, "x")?,
                (1, _) => write!(f, "{coeff}*x")?,
                (_, "1") => write!(f, "x^{i}")?,
                (_, _) => write!(f, "{coeff}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} over {:?}", self.field)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.ensure_same_field(rhs).expect("polynomial field mismatch");
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), rhs.coeff(i))).collect();
        Polynomial::new(f, coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.ensure_same_field(rhs).expect("polynomial field mismatch");
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(self.coeff(i), rhs.coeff(i))).collect();
        Polynomial::new(f, coeffs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.map_coeffs(|c| self.field.neg(c))
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.ensure_same_field(rhs).expect("polynomial field mismatch");
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(f);
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Polynomial::new(f, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::build_field;
    use proptest::prelude::*;

    fn poly(field: &Field, codes: &[u32]) -> Polynomial {
        Polynomial::from_codes(field, codes).unwrap()
    }

    #[test]
    fn x5_minus_1_over_f2() {
        let f2 = build_field(2, 1).unwrap();
        let x5 = Polynomial::binomial(&f2, 5, Elem::ONE);
        let (q, r) = x5.div_rem(&poly(&f2, &[1, 1])).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, poly(&f2, &[1, 1, 1, 1, 1]));
        assert!(q.is_irreducible());
        assert!(!x5.is_irreducible());
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        // Number of monic irreducibles of degree k over F_q is
        // (1/k) sum_{d | k} mu(d) q^(k/d).
        let f2 = build_field(2, 1).unwrap();
        let f3 = build_field(3, 1).unwrap();
        for (field, k, expected) in [(&f2, 2, 1), (&f2, 3, 2), (&f2, 4, 3), (&f2, 6, 9), (&f3, 2, 3), (&f3, 3, 8)] {
            let q = field.order() as u64;
            let count = (0..q.pow(k))
                .filter(|&t| {
                    let mut codes: Vec<u32> = (0..k).map(|i| ((t / q.pow(i)) % q) as u32).collect();
                    codes.push(1);
                    poly(field, &codes).is_irreducible()
                })
                .count();
            assert_eq!(count, expected, "q={q} k={k}");
        }
    }

    #[test]
    fn reciprocal_and_substitution() {
        let f5 = build_field(5, 1).unwrap();
        let f = poly(&f5, &[2, 3, 1]);
        assert_eq!(f.reciprocal().unwrap(), poly(&f5, &[1, 3, 2]));
        assert_eq!(f.monic_reciprocal().unwrap(), poly(&f5, &[3, 4, 1]));
        assert_eq!(poly(&f5, &[0, 1]).reciprocal(), Err(PolyError::ZeroConstantTerm));
        // f(2x) = 2 + 6x + 4x^2
        assert_eq!(f.scale_substitute(Elem(2)), poly(&f5, &[2, 1, 4]));
        assert_eq!(f.compose_power(3), poly(&f5, &[2, 0, 0, 3, 0, 0, 1]));
    }

    #[test]
    fn root_orders() {
        let f2 = build_field(2, 1).unwrap();
        assert_eq!(poly(&f2, &[1, 1, 1]).root_order().unwrap(), 3);
        assert_eq!(poly(&f2, &[1, 1, 1, 1, 1]).root_order().unwrap(), 5);
        assert_eq!(poly(&f2, &[1, 1, 0, 0, 1]).root_order().unwrap(), 15);
        let f11 = build_field(11, 1).unwrap();
        assert_eq!(poly(&f11, &[7, 1]).root_order().unwrap(), 5);
    }

    #[test]
    fn derivative_in_char_p() {
        let f3 = build_field(3, 1).unwrap();
        let f = Polynomial::binomial(&f3, 3, Elem::ONE);
        assert_eq!(f.derivative(), Polynomial::zero(&f3));
    }

    #[test]
    fn display_forms() {
        let f2 = build_field(2, 1).unwrap();
        assert_eq!(poly(&f2, &[1, 1, 0, 1]).to_string(), "x^3 + x + 1");
        let f4 = build_field(2, 2).unwrap();
        let xi = f4.generator();
        let g = Polynomial::new(&f4, vec![f4.mul(xi, xi), xi, Elem::ONE]);
        assert_eq!(g.to_string(), "x^2 + ξ*x + ξ^2");
    }

    #[test]
    fn rehome_between_levels() {
        let f2 = build_field(2, 1).unwrap();
        let f16 = f2.extend(4).unwrap();
        let g = poly(&f2, &[1, 1, 1]);
        let up = g.rehome(&f16).unwrap();
        assert_eq!(up.rehome(&f2).unwrap(), g);
        let h = Polynomial::new(&f16, vec![f16.generator(), Elem::ONE]);
        assert!(matches!(h.rehome(&f2), Err(PolyError::NotInSubfield(_))));
        let f3 = build_field(3, 1).unwrap();
        assert_eq!(g.rehome(&f3), Err(PolyError::NotInTower));
    }

    #[test]
    fn mismatched_fields_are_reported() {
        let f2 = build_field(2, 1).unwrap();
        let f3 = build_field(3, 1).unwrap();
        assert_eq!(
            poly(&f2, &[1, 1]).div_rem(&poly(&f3, &[1, 1])),
            Err(PolyError::FieldMismatch)
        );
    }

    fn arb_poly(field: Field, max_deg: usize) -> impl Strategy<Value = Polynomial> {
        let q = field.order();
        prop::collection::vec(0..q, 0..=max_deg + 1)
            .prop_map(move |codes| Polynomial::from_codes(&field, &codes).unwrap())
    }

    proptest! {
        #[test]
        fn division_identity(a in arb_poly(build_field(3, 2).unwrap(), 8),
                             b in arb_poly(build_field(3, 2).unwrap(), 5)) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.is_zero() || r.deg() < b.deg());
        }

        #[test]
        fn gcd_divides_both(a in arb_poly(build_field(2, 2).unwrap(), 7),
                            b in arb_poly(build_field(2, 2).unwrap(), 7)) {
            prop_assume!(!a.is_zero() || !b.is_zero());
            let g = a.gcd(&b).unwrap();
            prop_assert!(g.is_monic());
            prop_assert!(g.divides(&a) || a.is_zero());
            prop_assert!(g.divides(&b) || b.is_zero());
        }

        #[test]
        fn reciprocal_is_involutive_and_multiplicative(
            a in arb_poly(build_field(5, 1).unwrap(), 6),
            b in arb_poly(build_field(5, 1).unwrap(), 6)
        ) {
            prop_assume!(!a.coeff(0).is_zero() && !b.coeff(0).is_zero());
            prop_assert_eq!(a.reciprocal().unwrap().reciprocal().unwrap(), a.clone());
            prop_assert_eq!((&a * &b).reciprocal().unwrap(),
                            &a.reciprocal().unwrap() * &b.reciprocal().unwrap());
        }

        #[test]
        fn eval_is_a_ring_map(a in arb_poly(build_field(2, 3).unwrap(), 6),
                              b in arb_poly(build_field(2, 3).unwrap(), 6),
                              x in 0u32..8) {
            let f = a.field().clone();
            let x = Elem(x);
            prop_assert_eq!((&a * &b).eval(x), f.mul(a.eval(x), b.eval(x)));
            prop_assert_eq!((&a + &b).eval(x), f.add(a.eval(x), b.eval(x)));
        }
    }
}
