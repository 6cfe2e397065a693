//! Solutions of `a/n = 1/x + 1/y + 1/z`, their classification by how many
//! coordinates a prime divides, and the convergent/discriminant argument
//! ruling out coprime pairs with `xy < √(z/2)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::arith::{
    as_odd_square_root, factorize, gcd_u64, is_prime, isqrt, primes_between, rat_sub_abs,
    Integer, Natural, Rational,
};
use crate::cf::{cf_expand, convergents};
use crate::error::{Error, Result};

/// Largest `n` accepted by the enumerators; keeps every intermediate in `u128`.
pub const MAX_N: u64 = 1 << 28;

/// A solution triple. Canonical records satisfy `x ≤ y ≤ z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EsSolution {
    pub x: u128,
    pub y: u128,
    pub z: u128,
    pub ordered: bool,
}

impl EsSolution {
    fn coords(&self) -> [u128; 3] {
        [self.x, self.y, self.z]
    }

    /// `a·xyz = n(xy + yz + zx)`, checked in unbounded arithmetic.
    pub fn satisfies(&self, a: u64, n: u64) -> bool {
        let [x, y, z] = self.coords().map(BigUint::from);
        BigUint::from(a) * &x * &y * &z == BigUint::from(n) * (&x * &y + &y * &z + &z * &x)
    }

    /// Distinct orderings of the coordinates, lexicographic.
    pub fn permutations(&self) -> Vec<EsSolution> {
        let [x, y, z] = self.coords();
        let mut out: Vec<_> = [
            [x, y, z],
            [x, z, y],
            [y, x, z],
            [y, z, x],
            [z, x, y],
            [z, y, x],
        ]
        .into_iter()
        .map(|[x, y, z]| EsSolution { x, y, z, ordered: true })
        .collect();
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for EsSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// `gcd(x, y) = 1` and `xy < √(z/2)`, tested as `2(xy)² < z`.
pub fn is_type_iii_triple(x: u128, y: u128, z: u128) -> bool {
    if gcd_u128(x, y) != 1 {
        return false;
    }
    x.checked_mul(y)
        .and_then(|xy| xy.checked_mul(xy))
        .and_then(|sq| sq.checked_mul(2))
        .is_some_and(|lhs| lhs < z)
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// All divisors `d ≤ limit` of `∏ qᵉ`.
fn divisors_up_to(factors: &[(u128, u32)], limit: u128) -> Vec<u128> {
    let mut out = vec![1u128];
    for &(q, e) in factors {
        let len = out.len();
        for i in 0..len {
            let mut d = out[i];
            for _ in 0..e {
                match d.checked_mul(q) {
                    Some(next) if next <= limit => {
                        d = next;
                        out.push(d);
                    }
                    _ => break,
                }
            }
        }
    }
    out
}

/// Canonical solutions of `a/n = 1/x + 1/y + 1/z`, empty when `a/n > 3`.
///
/// The smallest coordinate satisfies `n/a < x ≤ 3n/a`. For each `x`, write
/// `a/n − 1/x = A/B` in lowest terms; then `(Ay − B)(Az − B) = B²`, so `y`
/// and `z` come from divisor pairs of `B²` and nothing is searched blindly.
pub fn enumerate_solutions_general(a: u64, n: u64) -> Result<Vec<EsSolution>> {
    if n == 0 {
        return Err(Error::DenominatorTooSmall(n));
    }
    if a == 0 {
        return Err(Error::InvalidArgument("numerator must be >= 1".into()));
    }
    if n > MAX_N {
        return Err(Error::TooLarge(n));
    }
    let n_factors = factorize(n);
    let x_lo = n / a + 1;
    let x_hi = 3 * n / a;
    let mut out = Vec::new();
    for x in x_lo..=x_hi {
        let num = a * x - n;
        let den = n * x;
        let g = gcd_u64(num, den);
        let (big_a, big_b) = ((num / g) as u128, (den / g) as u128);

        let factors = reduced_factors(&n_factors, x, g);
        let x128 = x as u128;
        for d in divisors_up_to(&factors, big_b) {
            if (big_b + d) % big_a != 0 {
                continue;
            }
            let y = (big_b + d) / big_a;
            if y < x128 {
                continue;
            }
            let cofactor = big_b * big_b / d;
            if (big_b + cofactor) % big_a != 0 {
                continue;
            }
            let z = (big_b + cofactor) / big_a;
            let sol = EsSolution { x: x128, y, z, ordered: false };
            assert!(sol.satisfies(a, n), "non-solution {sol} for {a}/{n}");
            out.push(sol);
        }
    }
    out.sort();
    Ok(out)
}

/// Factorisation of `B²` where `B = n·x / g`.
fn reduced_factors(n_factors: &[(u64, u32)], x: u64, mut g: u64) -> Vec<(u128, u32)> {
    let mut merged: BTreeMap<u64, u32> = n_factors.iter().copied().collect();
    for (q, e) in factorize(x) {
        *merged.entry(q).or_default() += e;
    }
    merged
        .into_iter()
        .filter_map(|(q, mut e)| {
            while g % q == 0 && e > 0 {
                g /= q;
                e -= 1;
            }
            (e > 0).then_some((q as u128, 2 * e))
        })
        .collect()
}

/// Solutions of `4/n = 1/x + 1/y + 1/z`, canonical or as all ordered triples.
pub fn enumerate_solutions(n: u64, ordered: bool) -> Result<Vec<EsSolution>> {
    if n < 2 {
        return Err(Error::DenominatorTooSmall(n));
    }
    let canonical = enumerate_solutions_general(4, n)?;
    if !ordered {
        return Ok(canonical);
    }
    Ok(canonical.iter().flat_map(EsSolution::permutations).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SolutionTag {
    /// Exactly one coordinate divisible by `p`.
    TypeI,
    /// Exactly two coordinates divisible by `p`.
    TypeII,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolutionType {
    pub tag: SolutionTag,
    pub is_type_iii: bool,
}

/// Ordered records are tested in their given roles; canonical records count
/// as Type III when any ordering of the coordinates qualifies.
pub fn classify(p: u64, sol: &EsSolution) -> Result<SolutionType> {
    let p128 = p as u128;
    let count = sol.coords().iter().filter(|&&c| c % p128 == 0).count();
    let tag = match count {
        1 => SolutionTag::TypeI,
        2 => SolutionTag::TypeII,
        _ => {
            return Err(Error::BadPartition {
                p,
                x: sol.x,
                y: sol.y,
                z: sol.z,
                count,
            })
        }
    };
    let is_type_iii = if sol.ordered {
        is_type_iii_triple(sol.x, sol.y, sol.z)
    } else {
        sol.permutations()
            .iter()
            .any(|s| is_type_iii_triple(s.x, s.y, s.z))
    };
    Ok(SolutionType { tag, is_type_iii })
}

/// Solution counts for one prime. `f_ordered` counts ordered triples;
/// `f_i` those with the `p`-divisible coordinate in the `x` slot; `f_ii`
/// those with the `p`-coprime coordinate in the `x` slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub n: u64,
    pub f_ordered: u64,
    pub f_unordered: u64,
    pub f_i: u64,
    pub f_ii: u64,
    pub f_iii: u64,
}

impl Census {
    pub fn identity_holds(&self) -> bool {
        self.f_ordered == 3 * self.f_i + 3 * self.f_ii
    }
}

pub fn census(p: u64) -> Result<Census> {
    if p < 5 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let canonical = enumerate_solutions(p, false)?;
    let p128 = p as u128;
    let div = |c: u128| c % p128 == 0;
    let mut c = Census {
        n: p,
        f_ordered: 0,
        f_unordered: canonical.len() as u64,
        f_i: 0,
        f_ii: 0,
        f_iii: 0,
    };
    for sol in &canonical {
        classify(p, sol)?;
        for t in sol.permutations() {
            c.f_ordered += 1;
            if div(t.x) && !div(t.y) && !div(t.z) {
                c.f_i += 1;
            }
            if !div(t.x) && div(t.y) && div(t.z) {
                c.f_ii += 1;
            }
            if is_type_iii_triple(t.x, t.y, t.z) {
                c.f_iii += 1;
            }
        }
    }
    Ok(c)
}

/// Censuses for many primes, evaluated in parallel, returned in input order.
pub fn census_many(primes: &[u64]) -> Vec<Result<Census>> {
    primes.par_iter().map(|&p| census(p)).collect()
}

/// Result of searching for Type III solutions of a prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeIIIReport {
    pub p: u64,
    pub xy_cap: u64,
    pub pairs_scanned: u64,
    /// Pairs whose forced `z` is a positive integer, either sign of the difference.
    pub integral_z_pairs: u64,
    /// `(x, y, z)` found by the coprime-pair scan.
    pub violations: Vec<(u64, u64, Integer)>,
    /// Ordered solutions from full enumeration satisfying the predicate.
    pub enumeration_violations: Vec<EsSolution>,
}

impl TypeIIIReport {
    pub fn violation_count(&self) -> usize {
        self.violations.len() + self.enumeration_violations.len()
    }
}

/// Coprime pairs `x ≤ y` with `xy ≤ xy_cap`: the forced
/// `z = 1 / |4/p − (x+y)/(xy)|` is checked for integrality and `2(xy)² < z`.
/// Full enumeration filtered by the same predicate runs as a second method.
pub fn verify_type_iii_absent(p: u64, xy_cap: u64) -> Result<TypeIIIReport> {
    if p < 5 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if xy_cap == 0 {
        return Err(Error::InvalidArgument("xy cap must be >= 1".into()));
    }
    let target = Rational::new(4, p)?;
    let mut report = TypeIIIReport {
        p,
        xy_cap,
        pairs_scanned: 0,
        integral_z_pairs: 0,
        violations: Vec::new(),
        enumeration_violations: Vec::new(),
    };
    let mut x = 1u64;
    while x * x <= xy_cap {
        for y in x..=xy_cap / x {
            if gcd_u64(x, y) != 1 {
                continue;
            }
            report.pairs_scanned += 1;
            let sum_over_product = Rational::new(x + y, x * y)?;
            let Some(z) = rat_sub_abs(&target, &sum_over_product).recip() else {
                continue;
            };
            if !z.is_integer() {
                continue;
            }
            report.integral_z_pairs += 1;
            let xy = BigInt::from(x * y);
            let z = z.numer().clone();
            if BigInt::from(2) * &xy * &xy < z {
                report.violations.push((x, y, z));
            }
        }
        x += 1;
    }
    report.enumeration_violations = enumerate_solutions(p, true)?
        .into_iter()
        .filter(|s| is_type_iii_triple(s.x, s.y, s.z))
        .collect();
    Ok(report)
}

/// Positive integers `x ≤ y` with `x + y = s` and `xy = q`.
pub fn solve_sum_product(s: &Natural, q: &Natural) -> Option<(Natural, Natural)> {
    if s.is_zero() || q.is_zero() {
        return None;
    }
    let disc = BigInt::from(s * s) - BigInt::from(q << 2u32);
    let disc = disc.to_biguint()?;
    let root = isqrt(&disc);
    if &root * &root != disc || root > *s {
        return None;
    }
    let lo = s - &root;
    if lo.bit(0) {
        return None;
    }
    let x = lo >> 1u32;
    let y = s - &x;
    (!x.is_zero()).then_some((x, y))
}

/// One nontrivial convergent of `4/p` pushed through the quadratic
/// `X² − p_k X + q_k = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRecord {
    pub k: usize,
    pub p_k: Integer,
    pub q_k: Integer,
    /// `p_k² − 4 q_k`.
    pub discriminant: Integer,
    pub odd_square_root: Option<Natural>,
    /// `1 / |4/p − c_k|`.
    pub z0: Rational,
    pub coprime: bool,
    pub roots: Option<(Natural, Natural)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofTrace {
    pub p: u64,
    pub n_convergents: usize,
    pub records: Vec<TraceRecord>,
}

impl ProofTrace {
    pub fn all_numerators_one(&self) -> bool {
        self.records.iter().all(|r| r.p_k.is_one())
    }

    pub fn all_discriminants_negative(&self) -> bool {
        self.records.iter().all(|r| r.discriminant.is_negative())
    }

    /// No nontrivial convergent yields integral roots.
    pub fn no_type_iii_derivable(&self) -> bool {
        self.records
            .iter()
            .all(|r| r.discriminant.is_negative() || r.odd_square_root.is_none())
    }
}

pub fn proof_trace(p: u64) -> Result<ProofTrace> {
    if p < 5 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let target = Rational::new(4, p)?;
    let convs = convergents(&cf_expand(&target)?);
    let last = convs.len() - 1;
    let records = convs[1..last]
        .iter()
        .map(|c| {
            let discriminant = &c.p * &c.p - BigInt::from(4) * &c.q;
            let z0 = rat_sub_abs(&target, &c.value())
                .recip()
                .expect("only the last convergent has zero error");
            let coprime = num_integer::Integer::gcd(&c.p, &c.q).is_one();
            let roots = match (c.p.to_biguint(), c.q.to_biguint()) {
                (Some(s), Some(q)) => solve_sum_product(&s, &q),
                _ => None,
            };
            TraceRecord {
                k: c.k,
                p_k: c.p.clone(),
                q_k: c.q.clone(),
                odd_square_root: as_odd_square_root(&discriminant),
                discriminant,
                z0,
                coprime,
                roots,
            }
        })
        .collect();
    Ok(ProofTrace {
        p,
        n_convergents: convs.len(),
        records,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ShapeTerm {
    Value(Integer),
    Star,
}

/// A continued fraction with its first partial quotient after `a₀`
/// replaced by `*`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CfShape(pub Vec<ShapeTerm>);

impl fmt::Display for CfShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            match t {
                ShapeTerm::Value(v) => write!(f, "{v}")?,
                ShapeTerm::Star => write!(f, "*")?,
            }
        }
        write!(f, "]")
    }
}

pub fn cf_shape(a: u64, p: u64) -> Result<CfShape> {
    let cf = cf_expand(&Rational::new(a, p)?)?;
    Ok(CfShape(
        cf.quotients()
            .iter()
            .enumerate()
            .map(|(i, q)| {
                if i == 1 {
                    ShapeTerm::Star
                } else {
                    ShapeTerm::Value(q.clone())
                }
            })
            .collect(),
    ))
}

/// Distinct shapes of `a/p` for primes in `[p_min, p_max]` coprime to `a`,
/// keyed by `p mod a`.
pub fn cf_residue_classifier(
    a: u64,
    p_min: u64,
    p_max: u64,
) -> Result<BTreeMap<u64, BTreeSet<CfShape>>> {
    if a < 2 {
        return Err(Error::InvalidArgument(format!("a = {a}, need a >= 2")));
    }
    let mut table: BTreeMap<u64, BTreeSet<CfShape>> = BTreeMap::new();
    for p in primes_between(p_min, p_max) {
        if gcd_u64(a, p) != 1 {
            continue;
        }
        table.entry(p % a).or_default().insert(cf_shape(a, p)?);
    }
    Ok(table)
}
