//! Brute-force ground truth, written without reference to cosets or the
//! closed-form factorizations.
//!
//! Factoring uses squarefree decomposition followed by Berlekamp's algorithm
//! with exhaustive gcd splitting over the base field. A second route,
//! grouping roots in a splitting field into Frobenius orbits, is available
//! when the splitting field is small enough to tabulate.

use thiserror::Error;

use crate::capacity;
use crate::gf::{Elem, ExtField, Field, FieldError};
use crate::poly::{PolyError, Polynomial};

/// Largest number of exponent vectors an exhaustive enumeration will visit.
pub const MAX_ENUMERATION: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("cannot factor a constant or zero polynomial")]
    Constant,
    #[error("splitting field of order {q}^{k} exceeds the capacity bound")]
    SplittingField { q: u64, k: u64 },
    #[error("enumeration of {0} exponent vectors exceeds the bound of {MAX_ENUMERATION}")]
    Enumeration(u128),
    #[error("{0} does not divide x^n - lambda")]
    NotDivisor(String),
    #[error("self-dual cyclic codes only exist in characteristic 2")]
    OddCharacteristic,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// `(monic irreducible, multiplicity)` pairs in canonical order.
pub type Factorization = Vec<(Polynomial, u32)>;

/// Squarefree decomposition of the monic associate of `f`: pairwise coprime
/// squarefree parts with their multiplicities, handling `f' = 0`.
pub fn squarefree_decomposition(f: &Polynomial) -> Result<Factorization, OracleError> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(OracleError::Constant);
    }
    let mut out = Vec::new();
    sqf_into(&f.monic(), 1, &mut out)?;
    out.sort();
    Ok(out)
}

fn sqf_into(f: &Polynomial, scale: u32, out: &mut Factorization) -> Result<(), OracleError> {
    let field = f.field().clone();
    let p = field.characteristic();
    let mut c = f.gcd(&f.derivative())?;
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1;
    while w.deg() > 0 {
        let y = w.gcd(&c)?;
        let z = w.div_exact(&y).expect("gcd divides");
        if z.deg() > 0 {
            out.push((z, i * scale));
        }
        i += 1;
        c = c.div_exact(&y).expect("gcd divides");
        w = y;
    }
    if c.deg() > 0 {
        sqf_into(&pth_root(&c), scale * p, out)?;
    }
    Ok(())
}

/// `g` with `g^p = f`, for `f` a polynomial in `x^p`.
fn pth_root(f: &Polynomial) -> Polynomial {
    let field = f.field();
    let p = field.characteristic() as usize;
    let root_exp = (field.order() / field.characteristic()) as u64;
    let coeffs = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(i, _)| i % p == 0)
        .map(|(_, &c)| field.pow(c, root_exp))
        .collect();
    debug_assert!(f
        .coeffs()
        .iter()
        .enumerate()
        .all(|(i, c)| i % p == 0 || c.is_zero()));
    Polynomial::new(field, coeffs)
}

/// Kernel basis of `Q - I`, where row `i` of `Q` holds `x^(q i) mod f`.
fn berlekamp_kernel(f: &Polynomial) -> Result<Vec<Vec<Elem>>, OracleError> {
    let field = f.field();
    let n = f.deg();
    let q = field.order() as u64;
    let xq = Polynomial::x(field).powmod(q, f)?;
    let mut rows = Vec::with_capacity(n);
    let mut cur = Polynomial::one(field);
    for i in 0..n {
        let mut row: Vec<Elem> = (0..n).map(|j| cur.coeff(j)).collect();
        row[i] = field.sub(row[i], Elem::ONE);
        rows.push(row);
        cur = cur.mulmod(&xq, f)?;
    }
    // Solve v (Q - I) = 0: transpose so that we find the right kernel.
    let mut m: Vec<Vec<Elem>> = (0..n).map(|j| (0..n).map(|i| rows[i][j]).collect()).collect();
    Ok(kernel(field, &mut m, n))
}

/// Right kernel of an `n x n` matrix by Gauss-Jordan elimination.
fn kernel(field: &Field, m: &mut [Vec<Elem>], n: usize) -> Vec<Vec<Elem>> {
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(pr) = (row..n).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pr);
        let inv = field.inv(m[row][col]).expect("pivot is nonzero");
        for x in m[row].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot = m[row].clone();
        for (r, line) in m.iter_mut().enumerate() {
            if r != row && !line[col].is_zero() {
                let factor = line[col];
                for (x, &y) in line.iter_mut().zip(&pivot) {
                    *x = field.sub(*x, field.mul(factor, y));
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Elem::ZERO; n];
            v[fc] = Elem::ONE;
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = field.neg(m[r][fc]);
            }
            v
        })
        .collect()
}

/// Number of distinct irreducible factors of a squarefree `f`.
pub fn berlekamp_rank(f: &Polynomial) -> Result<usize, OracleError> {
    Ok(berlekamp_kernel(&f.monic())?.len())
}

/// Irreducible factors of a squarefree polynomial, sorted.
pub fn berlekamp(f: &Polynomial) -> Result<Vec<Polynomial>, OracleError> {
    let f = f.monic();
    let field = f.field().clone();
    let basis = berlekamp_kernel(&f)?;
    let r = basis.len();
    let mut factors = vec![f.clone()];
    for v in &basis {
        if factors.len() == r {
            break;
        }
        let vp = Polynomial::new(&field, v.clone());
        if vp.deg() == 0 {
            continue;
        }
        let mut next = Vec::new();
        for u in factors {
            let mut pending = vec![u];
            for c in field.elements() {
                let shifted = &vp - &Polynomial::constant(&field, c);
                let mut split = Vec::new();
                for w in pending {
                    if w.deg() <= 1 {
                        split.push(w);
                        continue;
                    }
                    let g = w.gcd(&shifted)?;
                    if g.deg() > 0 && g.deg() < w.deg() {
                        split.push(w.div_exact(&g).expect("gcd divides"));
                        split.push(g);
                    } else {
                        split.push(w);
                    }
                }
                pending = split;
            }
            next.extend(pending);
        }
        factors = next;
    }
    assert_eq!(factors.len(), r, "Berlekamp splitting must reach the kernel dimension");
    factors.sort();
    Ok(factors)
}

/// Complete factorization of the monic associate of `f`.
pub fn brute_factor(f: &Polynomial) -> Result<Factorization, OracleError> {
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(f)? {
        for g in berlekamp(&part)? {
            out.push((g, mult));
        }
    }
    out.sort();
    Ok(out)
}

/// Irreducibility decided by squarefreeness plus a one-dimensional
/// Berlekamp kernel.
pub fn is_irreducible(f: &Polynomial) -> Result<bool, OracleError> {
    if f.degree().unwrap_or(0) == 0 {
        return Ok(false);
    }
    let d = f.derivative();
    if d.is_zero() || !f.gcd(&d)?.is_one() {
        return Ok(false);
    }
    Ok(berlekamp_rank(f)? == 1)
}

/// Degree `k` of the splitting field of a squarefree `f` over its base.
pub fn splitting_degree(f: &Polynomial) -> Result<u64, OracleError> {
    let f = f.monic();
    let q = f.field().order() as u64;
    let x = Polynomial::x(f.field()).rem(&f)?;
    let mut cur = x.clone();
    for k in 1..=f.deg() as u64 * f.deg() as u64 {
        cur = cur.powmod(q, &f)?;
        if cur == x {
            return Ok(k);
        }
    }
    unreachable!("a squarefree polynomial splits in degree lcm of its factor degrees")
}

/// Factorization of a squarefree `f` by enumerating its roots in the
/// splitting field and grouping them into Frobenius orbits.
pub fn orbit_factor(f: &Polynomial) -> Result<Vec<Polynomial>, OracleError> {
    let base = f.field().clone();
    let q = base.order() as u64;
    let k = splitting_degree(f)?;
    let fits = (q as u128)
        .checked_pow(k as u32)
        .is_some_and(|o| o <= capacity::field_limit() as u128);
    if !fits {
        return Err(OracleError::SplittingField { q, k });
    }
    let ext = ExtField::new(&base, k as u32)?;
    let big = ext.field();
    let lifted = f.rehome(big)?;
    let mut roots: Vec<Elem> = big.elements().filter(|&z| lifted.eval(z).is_zero()).collect();
    let mut out = Vec::new();
    while let Some(&z) = roots.first() {
        let mut orbit = vec![z];
        let mut w = ext.frobenius(z, 1);
        while w != z {
            orbit.push(w);
            w = ext.frobenius(w, 1);
        }
        roots.retain(|r| !orbit.contains(r));
        out.push(Polynomial::from_roots(big, &orbit).rehome(&base)?);
    }
    out.sort();
    Ok(out)
}

/// Rows `x^i g(x)` for `0 <= i < n - deg g`, as length-`n` coefficient
/// vectors.
pub fn generator_matrix(g: &Polynomial, n: usize) -> Vec<Vec<Elem>> {
    let k = n - g.deg();
    (0..k)
        .map(|i| {
            let mut row = vec![Elem::ZERO; n];
            row[i..i + g.coeffs().len()].copy_from_slice(g.coeffs());
            row
        })
        .collect()
}

/// Checks that the code generated by `g_dual` in `F_q[x]/(x^n - lambda^-1)`
/// is the Euclidean dual of the code generated by `g` in
/// `F_q[x]/(x^n - lambda)`: every pair of generator rows is orthogonal and
/// the dimensions add to `n`.
pub fn verify_code_duality(
    g: &Polynomial,
    lambda: Elem,
    g_dual: &Polynomial,
    n: usize,
) -> Result<bool, OracleError> {
    let field = g.field().clone();
    let modulus = Polynomial::binomial(&field, n, lambda);
    let dual_modulus = Polynomial::binomial(&field, n, field.inv(lambda)?);
    if !g.divides(&modulus) {
        return Err(OracleError::NotDivisor(g.to_string()));
    }
    if !g_dual.divides(&dual_modulus) {
        return Err(OracleError::NotDivisor(g_dual.to_string()));
    }
    if (n - g.deg()) + (n - g_dual.deg()) != n {
        return Ok(false);
    }
    let rows = generator_matrix(g, n);
    let dual_rows = generator_matrix(g_dual, n);
    for a in &rows {
        for b in &dual_rows {
            let dot = a
                .iter()
                .zip(b)
                .fold(Elem::ZERO, |acc, (&x, &y)| field.add(acc, field.mul(x, y)));
            if !dot.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A divisor of `x^n - 1` found by exhaustive search, with its exponent
/// vector over the oracle's own factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleCode {
    pub exponents: Vec<u32>,
    pub generator: Polynomial,
}

/// All self-dual cyclic codes of length `n` over a field of characteristic
/// 2, by testing `g = (h)^*` for every divisor `g` of `x^n - 1`.
pub fn brute_selfdual_enumerate(field: &Field, n: usize) -> Result<Vec<OracleCode>, OracleError> {
    if field.characteristic() != 2 {
        return Err(OracleError::OddCharacteristic);
    }
    let modulus = Polynomial::binomial(field, n, Elem::ONE);
    let table = brute_factor(&modulus)?;
    let total: u128 = table.iter().map(|(_, m)| *m as u128 + 1).product();
    if total > MAX_ENUMERATION as u128 {
        return Err(OracleError::Enumeration(total));
    }
    let mut out = Vec::new();
    let mut exps = vec![0u32; table.len()];
    loop {
        let g = table
            .iter()
            .zip(&exps)
            .fold(Polynomial::one(field), |acc, ((f, _), &e)| &acc * &f.pow(e as u64));
        let h = modulus.div_exact(&g).expect("g divides x^n - 1");
        if h.monic_reciprocal()? == g {
            out.push(OracleCode {
                exponents: exps.clone(),
                generator: g,
            });
        }
        // Odometer increment, last position fastest.
        let mut i = table.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if exps[i] < table[i].1 {
                exps[i] += 1;
                break;
            }
            exps[i] = 0;
        }
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
    fn x2_minus_1_over_f3() {
        let f3 = build_field(3, 1).unwrap();
        let f = Polynomial::binomial(&f3, 2, Elem::ONE);
        let t = brute_factor(&f).unwrap();
        assert_eq!(t, vec![(poly(&f3, &[1, 1]), 1), (poly(&f3, &[2, 1]), 1)]);
    }

    #[test]
    fn x30_minus_1_over_f2() {
        let f2 = build_field(2, 1).unwrap();
        let t = brute_factor(&Polynomial::binomial(&f2, 30, Elem::ONE)).unwrap();
        let degrees: Vec<usize> = t.iter().map(|(f, _)| f.deg()).collect();
        assert_eq!(degrees, vec![1, 2, 4, 4, 4]);
        assert!(t.iter().all(|&(_, m)| m == 2));
    }

    #[test]
    fn repeated_roots_in_odd_characteristic() {
        let f5 = build_field(5, 1).unwrap();
        // x^25 - 2 = (x - 2)^25 since 2^25 = 2 in F_5.
        let t = brute_factor(&Polynomial::binomial(&f5, 25, Elem(2))).unwrap();
        assert_eq!(t, vec![(poly(&f5, &[3, 1]), 25)]);
    }

    #[test]
    fn orbit_route_matches_berlekamp() {
        for (p, m, n, a) in [(2, 1, 15, 1), (2, 2, 15, 2), (7, 1, 15, 1), (5, 1, 12, 2), (3, 2, 10, 5)] {
            let field = build_field(p, m).unwrap();
            let f = Polynomial::binomial(&field, n, Elem(a));
            assert_eq!(orbit_factor(&f).unwrap(), berlekamp(&f).unwrap());
        }
        // x^15 - 3 over F_7 only splits over F_(7^12).
        let f7 = build_field(7, 1).unwrap();
        let f = Polynomial::binomial(&f7, 15, Elem(3));
        assert_eq!(orbit_factor(&f), Err(OracleError::SplittingField { q: 7, k: 12 }));
    }

    #[test]
    fn duality_trivial_cases() {
        let f2 = build_field(2, 1).unwrap();
        let zero_code = Polynomial::binomial(&f2, 30, Elem::ONE);
        let full = Polynomial::one(&f2);
        assert!(verify_code_duality(&zero_code, Elem::ONE, &full, 30).unwrap());
        assert!(verify_code_duality(&full, Elem::ONE, &zero_code, 30).unwrap());
        assert!(!verify_code_duality(&full, Elem::ONE, &full, 30).unwrap());
        let bad = poly(&f2, &[1, 0, 1, 1]);
        assert!(matches!(verify_code_duality(&bad, Elem::ONE, &full, 30), Err(OracleError::NotDivisor(_))));
    }

    #[test]
    fn selfdual_small_counts() {
        let f2 = build_field(2, 1).unwrap();
        assert_eq!(brute_selfdual_enumerate(&f2, 30).unwrap().len(), 3);
        let f3 = build_field(3, 1).unwrap();
        assert_eq!(brute_selfdual_enumerate(&f3, 30), Err(OracleError::OddCharacteristic));
    }

    fn arb_poly(field: Field, max_deg: usize) -> impl Strategy<Value = Polynomial> {
        let q = field.order();
        (1..=max_deg, prop::collection::vec(0..q, max_deg + 1)).prop_map(move |(d, mut codes)| {
            codes.truncate(d);
            codes.push(1);
            Polynomial::from_codes(&field, &codes).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn factorization_multiplies_back(f in arb_poly(build_field(3, 1).unwrap(), 12)) {
            let t = brute_factor(&f).unwrap();
            let prod = t.iter().fold(Polynomial::one(f.field()), |acc, (g, m)| &acc * &g.pow(*m as u64));
            prop_assert_eq!(prod, f.clone());
            for (i, (g, _)) in t.iter().enumerate() {
                prop_assert!(g.is_irreducible());
                prop_assert!(is_irreducible(g).unwrap());
                for (h, _) in &t[i + 1..] {
                    prop_assert!(g.gcd(h).unwrap().is_one());
                }
            }
        }

        #[test]
        fn oracle_irreducibility_agrees_with_rabin(f in arb_poly(build_field(2, 2).unwrap(), 8)) {
            prop_assert_eq!(is_irreducible(&f).unwrap(), f.is_irreducible());
        }
    }
}
