//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use constacode::codes::{class_representatives, table_for, CodeEnumerator};
use constacode::cyclotomic::{self, reciprocal_coset, CosetFamily, CosetLabel};
use constacode::factorizer::{irreducible_binomial, irreducible_composition};
use constacode::oracle::{self, brute_factor, brute_selfdual_enumerate, verify_code_duality};
use constacode::selfdual::{selfdual_count, selfdual_enumerate};
use constacode::{arith, build_field, equivalence_scalar, factor_modulus, Elem, Instance, Params, Polynomial};

type Outcome = Result<String, String>;

fn inst(p: u64, m: u32, s: u32, l: u64) -> Instance {
    Instance::new(Params::new(p, m, s, l).expect("valid parameters")).expect("field fits")
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Closed-form factorizations against the oracle over all four `d` cases.
fn ac1() -> Outcome {
    let grid = [(2, 1, 1, 5), (2, 1, 2, 5), (2, 2, 1, 5), (7, 1, 1, 5), (11, 1, 1, 5), (31, 1, 1, 5)];
    let mut tables = 0;
    let mut cases = BTreeSet::new();
    for (p, m, s, l) in grid {
        let i = inst(p, m, s, l);
        for lambda in class_representatives(&i) {
            let t = factor_modulus(&i, lambda).map_err(|e| format!("({p},{m},{s},{l}): {e}"))?;
            let target = Polynomial::binomial(&i.field, i.n(), lambda);
            let prod = Polynomial::product(
                &i.field,
                t.entries.iter().map(|e| e.factor.pow(e.multiplicity as u64)).collect::<Vec<_>>().iter(),
            );
            check(prod == target, || format!("({p},{m},{s},{l}) λ={lambda:?}: product differs"))?;
            let oracle = brute_factor(&target).map_err(|e| e.to_string())?;
            check(t.pairs() == oracle, || {
                format!("({p},{m},{s},{l}) λ={lambda:?} [{}]: closed form differs from oracle", t.case)
            })?;
            cases.insert(t.case.name);
            tables += 1;
        }
    }
    Ok(format!("{tables} tables, cases {cases:?}"))
}

/// Both irreducibility criteria against oracle irreducibility.
fn ac2() -> Outcome {
    let mut binomials = 0;
    for (p, m) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4)] {
        let field = build_field(p, m).map_err(|e| e.to_string())?;
        for n in 2..=30u64 {
            for a in field.nonzero_elements() {
                let f = Polynomial::binomial(&field, n as usize, a);
                let closed = irreducible_binomial(&field, n, a).map_err(|e| e.to_string())?;
                let brute = oracle::is_irreducible(&f).map_err(|e| e.to_string())?;
                check(closed == brute, || format!("x^{n} - {a:?} over F_{}: {closed} vs {brute}", field.order()))?;
                binomials += 1;
            }
        }
    }
    // Quadratic factors H = x^2 + a x + a^2 composed with x^l, for every
    // instance shape where l | q - 1 and 3 does not.
    let mut compositions = 0;
    for (q, l) in [(11u64, 5u64), (23, 11), (29, 7), (41, 5), (47, 23), (71, 5), (71, 7)] {
        let field = build_field(q, 1).map_err(|e| e.to_string())?;
        for a in field.nonzero_elements() {
            let h = Polynomial::new(&field, vec![field.mul(a, a), a, Elem::ONE]);
            let closed = irreducible_composition(&h, l).map_err(|e| e.to_string())?;
            let brute = oracle::is_irreducible(&h.compose_power(l as usize)).map_err(|e| e.to_string())?;
            check(closed == brute, || format!("({h})(x^{l}) over F_{q}: {closed} vs {brute}"))?;
            compositions += 1;
        }
    }
    Ok(format!("{binomials} binomials, {compositions} compositions"))
}

/// Every code at length 30 over F_2 and F_4: inner-product duality and the
/// dual-of-dual involution.
fn ac3() -> Outcome {
    let mut codes = 0;
    for m in [1, 2] {
        let i = inst(2, m, 1, 5);
        for lambda in class_representatives(&i) {
            let t = table_for(&i, lambda).map_err(|e| e.to_string())?;
            let dual_t = table_for(&i, i.field.inv(lambda).unwrap()).map_err(|e| e.to_string())?;
            for h in CodeEnumerator::new(i.params, t.clone()) {
                let (g, g_dual) = h.generator_and_dual().map_err(|e| e.to_string())?;
                let ok = verify_code_duality(&g, lambda, &g_dual, i.n()).map_err(|e| e.to_string())?;
                check(ok, || format!("F_{} λ={lambda:?} {:?}: not dual", i.params.q(), h.exponents))?;
                let back = h
                    .dual_handle(dual_t.clone())
                    .and_then(|d| d.dual_handle(t.clone()))
                    .map_err(|e| e.to_string())?;
                check(back.exponents == h.exponents, || format!("{:?}: dual of dual differs", h.exponents))?;
                codes += 1;
            }
        }
    }
    Ok(format!("{codes} codes"))
}

/// Self-dual counts three ways.
fn ac4() -> Outcome {
    let mut lines = Vec::new();
    for ((m, s, l), expected) in [((2, 1, 5), 27usize), ((1, 1, 5), 3), ((1, 2, 5), 5), ((1, 1, 11), 1)] {
        let i = inst(2, m, s, l);
        let census = selfdual_count(&i).map_err(|e| e.to_string())?;
        let listed = selfdual_enumerate(&i, &census).map_err(|e| e.to_string())?;
        let brute = brute_selfdual_enumerate(&i.field, i.n()).map_err(|e| e.to_string())?;
        let formula = census.formula_count.to_string();
        let partition = census.partition_count.to_string();
        check(
            formula == expected.to_string() && partition == formula && brute.len() == expected && listed.len() == expected,
            || format!("(m={m},s={s},l={l}): formula {formula}, partition {partition}, oracle {}, listed {}", brute.len(), listed.len()),
        )?;
        let ours: BTreeSet<_> = listed.iter().map(|h| h.generator().codes()).collect();
        let theirs: BTreeSet<_> = brute.iter().map(|c| c.generator.codes()).collect();
        check(ours == theirs, || format!("(m={m},s={s},l={l}): code sets differ"))?;
        lines.push(census.case.tag().to_string());
        for h in &listed {
            let g = h.generator();
            let ok = verify_code_duality(&g, Elem::ONE, &g, i.n()).map_err(|e| e.to_string())?;
            check(ok, || format!("(m={m},s={s},l={l}): {g} is not self-dual"))?;
        }
    }
    Ok(format!("27/3/5/1 via {}", lines.join(", ")))
}

/// `g(x) -> g(a x)` carries cyclic generators onto lambda-constacyclic ones.
fn ac5() -> Outcome {
    let mut checked = 0;
    // Length 30 over F_2 (only lambda = 1), then length 30 over F_8 where
    // d = 1 and every unit is a nontrivial twist.
    for m in [1, 3] {
        let i = inst(2, m, 1, 5);
        let cyclic = table_for(&i, Elem::ONE).map_err(|e| e.to_string())?;
        let cyclic_gens: Vec<Polynomial> = CodeEnumerator::new(i.params, cyclic).map(|h| h.generator()).collect();
        for lambda in i.field.nonzero_elements() {
            let a = equivalence_scalar(&i, lambda, Elem::ONE).map_err(|e| e.to_string())?;
            let image: BTreeSet<_> = cyclic_gens.iter().map(|g| g.scale_substitute(a).monic().codes()).collect();
            let direct = divisors(&Polynomial::binomial(&i.field, i.n(), lambda))?;
            check(image == direct, || format!("F_{} λ={lambda:?}: transported set differs", i.params.q()))?;
            check(image.len() == 243, || format!("F_{}: {} generators", i.params.q(), image.len()))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} units, 243 generators each"))
}

/// All monic divisors, from the oracle factorization.
fn divisors(f: &Polynomial) -> Result<BTreeSet<Vec<u32>>, String> {
    let table = brute_factor(f).map_err(|e| e.to_string())?;
    let mut out = BTreeSet::new();
    let mut exps = vec![0u32; table.len()];
    loop {
        let g = table
            .iter()
            .zip(&exps)
            .fold(Polynomial::one(f.field()), |acc, ((h, _), &e)| &acc * &h.pow(e as u64));
        out.insert(g.codes());
        let Some(pos) = (0..exps.len()).rev().find(|&k| exps[k] < table[k].1) else {
            break;
        };
        exps[pos] += 1;
        for e in &mut exps[pos + 1..] {
            *e = 0;
        }
    }
    Ok(out)
}

/// Coset partitions modulo `3l`, labels, reciprocal pairings, and `ord_3l`.
fn ac6() -> Outcome {
    let mut summary = Vec::new();
    for (q, l) in [(2u64, 5u64), (4, 5), (2, 11), (2, 7), (4, 7), (8, 5)] {
        let n = 3 * l;
        let fam = CosetFamily::new(q, l).map_err(|e| format!("(q={q},l={l}): {e}"))?;
        let brute_ord = (1..=n).find(|&k| arith::pow_mod(q, k, n) == 1).unwrap();
        check(cyclotomic::ord_3l(q, l).unwrap() == brute_ord, || format!("ord_{n}({q})"))?;
        let g = fam.g;
        let mut covered = vec![false; n as usize];
        for (label, coset) in &fam.cosets {
            let rep = match *label {
                CosetLabel::Zero => 0,
                CosetLabel::L => l,
                CosetLabel::MinusL => n - l,
                CosetLabel::Unit { sign, k } => {
                    let x = arith::pow_mod(g, k, n);
                    if sign > 0 { x } else { n - x }
                }
                CosetLabel::Triple { k } => 3 * arith::pow_mod(g, k, n) % n,
            };
            let orbit = orbit(rep, n, q);
            check(coset.members == orbit, || format!("(q={q},l={l}) {label}: {:?} vs {orbit:?}", coset.members))?;
            for &x in &orbit {
                check(!std::mem::replace(&mut covered[x as usize], true), || format!("{x} covered twice"))?;
            }
            let negated: Vec<u64> = {
                let mut v: Vec<u64> = coset.members.iter().map(|&x| (n - x) % n).collect();
                v.sort();
                v
            };
            let partner = fam.get(fam.predicted_reciprocal(*label)).unwrap();
            check(partner.members == negated, || format!("(q={q},l={l}) reciprocal of {label}"))?;
            check(reciprocal_coset(coset).members == negated, || "reciprocal_coset".to_string())?;
        }
        check(covered.iter().all(|&c| c), || format!("(q={q},l={l}): not a partition"))?;
        let (a, b) = fam.reciprocal_counts();
        summary.push(format!("({q},{l}):{}+{a}/{b}", fam.cosets.len()));
    }
    // Reference layouts: q=4, l=5 has three singletons and six pairs; q=2,
    // l=5 has one reciprocal pair; q=2, l=11 has none.
    let f45 = CosetFamily::new(4, 5).unwrap();
    let mut sizes: Vec<usize> = f45.cosets.iter().map(|(_, c)| c.len()).collect();
    sizes.sort();
    check(sizes == [1, 1, 1, 2, 2, 2, 2, 2, 2], || format!("q=4,l=5 sizes {sizes:?}"))?;
    check(CosetFamily::new(2, 5).unwrap().reciprocal_counts() == (3, 1), || "q=2,l=5 pairing".into())?;
    check(CosetFamily::new(2, 11).unwrap().reciprocal_counts().1 == 0, || "q=2,l=11 pairing".into())?;
    Ok(summary.join(" "))
}

fn orbit(x: u64, n: u64, q: u64) -> Vec<u64> {
    let mut v = vec![x];
    let mut y = x * q % n;
    while y != x {
        v.push(y);
        y = y * q % n;
    }
    v.sort();
    v
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 6] = [
        ("AC1 factorization identity", ac1),
        ("AC2 irreducibility criteria", ac2),
        ("AC3 duality", ac3),
        ("AC4 self-dual counts", ac4),
        ("AC5 equivalence transport", ac5),
        ("AC6 coset machinery", ac6),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name} ({secs:.1}s): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name} ({secs:.1}s): {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
