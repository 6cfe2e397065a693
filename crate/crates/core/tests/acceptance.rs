//! Exit criteria. Each test prints one `[PASS]`/`[FAIL]` line; run with
//! `cargo test -p es-lab --test acceptance -- --nocapture` to see them.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use es_lab::arith::{gcd_u64, primes_between};
use es_lab::lattice::{count_lattice_brute, count_lattice_sliced, summatory_report};
use es_lab::{
    asymptotic_report, census, cf_expand, cf_residue_classifier, convergents,
    enumerate_solutions, enumerate_solutions_general, error_term, four_over_p_closed_form,
    legendre_check, proof_trace, totient_summatory, verify_type_iii_absent, Rational,
};

fn report(id: u32, name: &str, ok: bool, detail: impl AsRef<str>) {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("[{tag}] criterion {id:>2}: {name} ({})", detail.as_ref());
    assert!(ok, "criterion {id} failed: {}", detail.as_ref());
}

#[test]
fn c01_closed_form_expansion_of_four_over_p() {
    let primes = primes_between(5, 100_000);
    let mismatches: Vec<u64> = primes
        .par_iter()
        .copied()
        .filter(|&p| {
            let closed = four_over_p_closed_form(p).unwrap();
            let cf = cf_expand(&Rational::new(4, p).unwrap()).unwrap();
            let values: Vec<Rational> = convergents(&cf).iter().map(|c| c.value()).collect();
            closed.expansion != cf || closed.convergent_values != values
        })
        .collect();
    report(
        1,
        "closed-form CF of 4/p, 5 <= p <= 1e5",
        mismatches.is_empty(),
        format!("{} primes, {} mismatches", primes.len(), mismatches.len()),
    );
}

#[test]
fn c02_no_type_iii_solutions() {
    let primes = primes_between(5, 10_000);
    let results: Vec<(u64, usize, usize, u64)> = primes
        .par_iter()
        .map(|&p| {
            let r = verify_type_iii_absent(p, 1000).unwrap();
            let c = census(p).unwrap();
            (p, r.violations.len(), r.enumeration_violations.len(), c.f_iii)
        })
        .collect();
    let bad: Vec<_> = results
        .iter()
        .filter(|(_, scan, enumer, f3)| *scan + *enumer > 0 || *f3 > 0)
        .collect();
    report(
        2,
        "f_III(p) = 0 by pair scan (xy <= 1000) and full enumeration, 5 <= p <= 1e4",
        bad.is_empty(),
        format!("{} primes, {} with violations", results.len(), bad.len()),
    );
}

#[test]
fn c03_proof_trace_invariant() {
    let primes = primes_between(5, 100_000);
    let bad: Vec<u64> = primes
        .par_iter()
        .copied()
        .filter(|&p| {
            let t = proof_trace(p).unwrap();
            let exact_form = t
                .records
                .iter()
                .all(|r| r.discriminant == BigInt::one() - BigInt::from(4) * &r.q_k);
            !(t.all_numerators_one()
                && t.all_discriminants_negative()
                && exact_form
                && t.records.iter().all(|r| r.coprime)
                && t.no_type_iii_derivable())
        })
        .collect();
    report(
        3,
        "nontrivial convergents of 4/p have p_k = 1 and D_k = 1 - 4q_k < 0, 5 <= p <= 1e5",
        bad.is_empty(),
        format!("{} primes, {} failures", primes.len(), bad.len()),
    );
}

/// Ordered triples by brute force over the first two slots, third forced.
///
/// Every coordinate is at most `2p⁴`: the smallest is below `p`, the middle
/// at most `2p²`, and the largest at most `p·x·y`.
fn brute_census(p: u128) -> (usize, usize, usize) {
    let bound = 2 * p.pow(4);
    let mut ordered = BTreeSet::new();
    for x in 1..=bound {
        for y in 1..=bound {
            let num = 4 * x * y;
            let sub = p * (x + y);
            if num <= sub {
                continue;
            }
            let (zn, zd) = (p * x * y, num - sub);
            if zn % zd == 0 {
                ordered.insert((x, y, zn / zd));
            }
        }
    }
    let div = |c: u128| c % p == 0;
    let f_i = ordered.iter().filter(|t| div(t.0) && !div(t.1) && !div(t.2)).count();
    let f_ii = ordered.iter().filter(|t| !div(t.0) && div(t.1) && div(t.2)).count();
    (ordered.len(), f_i, f_ii)
}

#[test]
fn c04_census_identity() {
    let oracle5 = brute_census(5);
    let oracle7 = brute_census(7);
    let spot = oracle5 == (12, 2, 2) && oracle7 == (36, 9, 3);
    let primes = primes_between(5, 500);
    let censuses: Vec<_> = primes.par_iter().map(|&p| census(p).unwrap()).collect();
    let identity = censuses.iter().all(|c| c.identity_holds());
    let c5 = &censuses[0];
    let c7 = &censuses[1];
    let agree = (c5.f_ordered, c5.f_i, c5.f_ii) == (12, 2, 2) && (c7.f_ordered, c7.f_i, c7.f_ii) == (36, 9, 3);
    report(
        4,
        "f = 3 f_I + 3 f_II for 5 <= p <= 500",
        spot && identity && agree,
        format!(
            "oracle f(5) = {:?}, f(7) = {:?}; {} primes, identity {}",
            oracle5,
            oracle7,
            censuses.len(),
            identity
        ),
    );
}

#[test]
fn c05_convergent_criterion_soundness() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4b48_494e);
    let mut hits = 0;
    let mut counterexamples = 0;
    for i in 0..10_000 {
        let n: i64 = rng.gen_range(1..=10_000);
        let m: i64 = rng.gen_range(0..=3 * n);
        let s: i64 = rng.gen_range(1..=1_000);
        // half the candidates sit next to the target so the inequality fires
        let r: i64 = if i % 2 == 0 {
            (m * s + n / 2) / n + rng.gen_range(-1..=1)
        } else {
            rng.gen_range(0..=3 * s)
        };
        let r = r.max(0);
        let cand = Rational::new(r, s).unwrap();
        let chk = legendre_check(&Rational::new(m, n).unwrap(), &cand).unwrap();
        if chk.inequality_holds {
            hits += 1;
            if !chk.is_convergent {
                counterexamples += 1;
            }
        }
    }
    report(
        5,
        "|m/n - r/s| < 1/(2s^2) implies r/s is a convergent, 1e4 random cases",
        counterexamples == 0,
        format!("{hits} cases met the inequality, {counterexamples} counterexamples"),
    );
}

#[test]
fn c06_error_term_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut checked = 0;
    let mut failures = 0;
    for _ in 0..1_000 {
        let num: i64 = rng.gen_range(0..=10_000);
        let den: i64 = rng.gen_range(1..=10_000);
        let x = Rational::new(num, den).unwrap();
        let last = cf_expand(&x).unwrap().last_index();
        for k in 0..last {
            let t = error_term(&x, k).unwrap();
            let recip = t.reciprocal_from_tail().unwrap();
            checked += 1;
            if &t.r_k * &recip != Rational::one() {
                failures += 1;
            }
        }
    }
    report(
        6,
        "r_k q_k (x_{k+1} q_k + q_{k-1}) = 1 for non-final convergents of 1e3 rationals",
        failures == 0,
        format!("{checked} convergents, {failures} failures"),
    );
}

#[test]
fn c07_totient_summatory() {
    let phi10 = totient_summatory(10);
    let r = summatory_report(100_000).unwrap();
    let ok = phi10 == 32 && (0.99..=1.01).contains(&r.normalized);
    report(
        7,
        "Phi(10) = 32 and Phi(X) pi^2 / (3 X^2) in [0.99, 1.01] at X = 1e5",
        ok,
        format!(
            "Phi(10) = {phi10}, Phi(1e5) = {}, Phi/X^2 = {}, 3/pi^2 = {:.6}, 6/pi^2 = {:.6}, normalized = {:.6}",
            r.phi_sum, r.ratio, r.standard_constant, r.doubled_constant, r.normalized
        ),
    );
}

#[test]
fn c08_lattice_methods_agree() {
    let mismatches: Vec<u64> = (1..=500u64)
        .into_par_iter()
        .filter(|&n| count_lattice_brute(n).a_n != count_lattice_sliced(n).a_n)
        .collect();
    let a10 = count_lattice_sliced(10).a_n;
    let a2 = count_lattice_sliced(2).a_n;
    report(
        8,
        "brute and sliced a_N agree for N <= 500",
        mismatches.is_empty() && a10 == 12 && a2 == 0,
        format!("a_10 = {a10}, a_2 = {a2}, {} mismatches", mismatches.len()),
    );
}

#[test]
fn c09_asymptotic_sandwich() {
    let rows = asymptotic_report(&[50, 100, 200, 400]).unwrap();
    let lower_ok = rows
        .iter()
        .all(|r| r.ratio_lower >= Rational::new(3, 10).unwrap());
    let uppers: Vec<f64> = rows.iter().map(|r| r.ratio_upper.parse().unwrap()).collect();
    let nonincreasing = uppers.windows(2).all(|w| w[1] <= w[0]);
    let bounded = uppers.iter().all(|&u| u <= uppers[0]);
    let monotone = rows.windows(2).all(|w| w[0].a_n <= w[1].a_n);
    let detail: Vec<String> = rows
        .iter()
        .map(|r| format!("N={} a_N={} a_N/N={} a_N/N^2.5={}", r.n, r.a_n, r.ratio_lower_decimal(), r.ratio_upper))
        .collect();
    report(
        9,
        "a_N/N >= 0.3 and a_N/N^{5/2} nonincreasing or bounded",
        lower_ok && (nonincreasing || bounded) && monotone,
        detail.join("; "),
    );
}

#[test]
fn c10_every_prime_has_a_solution() {
    let primes = primes_between(5, 10_000);
    let empty: Vec<u64> = primes
        .par_iter()
        .copied()
        .filter(|&p| enumerate_solutions(p, false).unwrap().is_empty())
        .collect();
    report(
        10,
        "E_p nonempty for 5 <= p <= 1e4",
        empty.is_empty(),
        format!("{} primes, {} without solutions", primes.len(), empty.len()),
    );
}

#[test]
fn c11_five_over_p_and_residue_shapes() {
    let primes: Vec<u64> = primes_between(7, 1_000);
    let unsolved: Vec<u64> = primes
        .par_iter()
        .copied()
        .filter(|&p| enumerate_solutions_general(5, p).unwrap().is_empty())
        .collect();
    let table = cf_residue_classifier(4, 5, 1_000).unwrap();
    let rendered: BTreeMap<u64, Vec<String>> = table
        .iter()
        .map(|(k, v)| (*k, v.iter().map(ToString::to_string).collect()))
        .collect();
    let expected = BTreeMap::from([
        (1, vec!["[0,*,4]".to_string()]),
        (3, vec!["[0,*,1,3]".to_string()]),
    ]);
    let five_classes = cf_residue_classifier(5, 7, 1_000).unwrap();
    let coprime_primes = primes.iter().filter(|&&p| gcd_u64(5, p) == 1).count();
    report(
        11,
        "5/p solvable for 7 <= p <= 1e3 and the a = 4 shape table has the two closed-form shapes",
        unsolved.is_empty() && rendered == expected,
        format!(
            "{} primes ({coprime_primes} coprime to 5), {} unsolved; a=4 table {:?}; a=5 classes {}",
            primes.len(),
            unsolved.len(),
            rendered,
            five_classes.len()
        ),
    );
}
