//! Counting `A_N = {(x, y, z) ∈ [1, N]³ : gcd(x, y) = 1, xy < √(z/2)}` and the
//! totient summatory function.

use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigUint;

use crate::arith::{gcd_u64, isqrt, isqrt_u64, render_scaled, Rational};
use crate::error::{Error, Result};

/// Digits after the decimal point in report ratios.
pub const RATIO_DIGITS: usize = 20;

/// `φ(n)` for `1 ≤ n ≤ limit`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotientTable {
    limit: usize,
    phi: Vec<u64>,
}

impl TotientTable {
    pub fn limit(&self) -> usize {
        self.limit
    }

    /// `φ(n)`; panics outside `1..=limit`.
    pub fn phi(&self, n: usize) -> u64 {
        assert!((1..=self.limit).contains(&n), "{n} outside 1..={}", self.limit);
        self.phi[n]
    }

    pub fn values(&self) -> &[u64] {
        &self.phi[1..]
    }

    pub fn summatory(&self) -> u64 {
        self.values().iter().sum()
    }
}

/// Linear sieve: each composite is crossed out once, by its least prime factor.
pub fn totient_sieve(limit: usize) -> Result<TotientTable> {
    if limit == 0 {
        return Err(Error::InvalidArgument("totient sieve limit must be >= 1".into()));
    }
    let mut phi = vec![0u64; limit + 1];
    let mut primes: Vec<usize> = Vec::new();
    phi[1] = 1;
    for i in 2..=limit {
        if phi[i] == 0 {
            phi[i] = (i - 1) as u64;
            primes.push(i);
        }
        for &q in &primes {
            let Some(m) = i.checked_mul(q).filter(|&m| m <= limit) else {
                break;
            };
            if i % q == 0 {
                phi[m] = phi[i] * q as u64;
                break;
            }
            phi[m] = phi[i] * (q as u64 - 1);
        }
    }
    Ok(TotientTable { limit, phi })
}

/// `Φ(X) = Σ_{n ≤ X} φ(n)`, with `Φ(0) = 0`.
pub fn totient_summatory(limit: usize) -> u64 {
    if limit == 0 {
        return 0;
    }
    totient_sieve(limit).map_or(0, |t| t.summatory())
}

/// Empirical constant of `Φ(X) ~ c·X²`.
#[derive(Clone, Debug, PartialEq)]
pub struct SummatoryReport {
    pub x: usize,
    pub phi_sum: u64,
    /// `Φ(X)/X²`, exact, rendered to [`RATIO_DIGITS`] places.
    pub ratio: String,
    /// `3/π²`.
    pub standard_constant: f64,
    /// `6/π²`, the constant as sometimes quoted.
    pub doubled_constant: f64,
    /// `Φ(X)·π²/(3X²)`; tends to 1.
    pub normalized: f64,
}

pub fn summatory_report(x: usize) -> Result<SummatoryReport> {
    let phi_sum = totient_sieve(x)?.summatory();
    let ratio = Rational::new(phi_sum, (x as u64) * (x as u64))?;
    let pi2 = PI * PI;
    Ok(SummatoryReport {
        x,
        phi_sum,
        ratio: ratio.to_decimal(RATIO_DIGITS),
        standard_constant: 3.0 / pi2,
        doubled_constant: 6.0 / pi2,
        normalized: ratio.to_f64() * pi2 / 3.0,
    })
}

/// Largest `m ≥ 0` with `2m² < z`; zero when no pair qualifies.
pub fn threshold(z: u64) -> u64 {
    if z == 0 {
        return 0;
    }
    let mut m = isqrt_u64((z - 1) / 2);
    while 2 * (m + 1) * (m + 1) < z {
        m += 1;
    }
    while m > 0 && 2 * m * m >= z {
        m -= 1;
    }
    m
}

/// `#{(x, y) : x, y ≥ 1, xy ≤ m, gcd(x, y) = 1}` by the double loop.
pub fn coprime_pairs_direct(m: u64) -> u64 {
    let mut count = 0;
    for x in 1..=m {
        for y in 1..=m / x {
            if gcd_u64(x, y) == 1 {
                count += 1;
            }
        }
    }
    count
}

/// `D(k) = Σ_{x ≤ k} ⌊k/x⌋`, pairs with `xy ≤ k`, by the hyperbola method.
fn divisor_summatory(k: u64) -> u64 {
    let r = isqrt_u64(k);
    2 * (1..=r).map(|x| k / x).sum::<u64>() - r * r
}

fn mobius_up_to(limit: usize) -> Vec<i8> {
    let mut mu = vec![1i8; limit + 1];
    let mut composite = vec![false; limit + 1];
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        for j in (i..=limit).step_by(i) {
            if j > i {
                composite[j] = true;
            }
            mu[j] = -mu[j];
        }
        let sq = i.saturating_mul(i);
        for j in (sq..=limit).step_by(sq.max(1)) {
            mu[j] = 0;
        }
    }
    mu
}

/// Coprime pairs with `xy ≤ m` via Möbius inversion over the common divisor:
/// `Σ_{d² ≤ m} μ(d)·D(⌊m/d²⌋)`.
pub fn coprime_pairs_under(m: u64) -> u64 {
    if m == 0 {
        return 0;
    }
    let root = isqrt_u64(m) as usize;
    let mu = mobius_up_to(root);
    let mut total: i64 = 0;
    for d in 1..=root {
        if mu[d] == 0 {
            continue;
        }
        let d2 = (d * d) as u64;
        total += mu[d] as i64 * divisor_summatory(m / d2) as i64;
    }
    total as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Brute,
    Sliced,
    Both,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Brute => "brute",
            Method::Sliced => "sliced",
            Method::Both => "both",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeReport {
    pub n: u64,
    pub a_n: u64,
    /// `a_N / N`.
    pub ratio_lower: Rational,
    /// `a_N / N^{5/2}`, truncated to [`RATIO_DIGITS`] places.
    pub ratio_upper: String,
    pub method: Method,
}

impl LatticeReport {
    pub fn new(n: u64, a_n: u64, method: Method) -> Self {
        LatticeReport {
            n,
            a_n,
            ratio_lower: Rational::new(a_n, n.max(1)).expect("nonzero"),
            ratio_upper: ratio_over_n_five_halves(a_n, n.max(1)),
            method,
        }
    }

    pub fn ratio_lower_decimal(&self) -> String {
        self.ratio_lower.to_decimal(RATIO_DIGITS)
    }
}

/// `floor(10^d · a/N^{5/2}) = isqrt(floor(a²·10^{2d} / N⁵))`.
fn ratio_over_n_five_halves(a: u64, n: u64) -> String {
    let scale = BigUint::from(10u32).pow(2 * RATIO_DIGITS as u32);
    let a = BigUint::from(a);
    let scaled = isqrt(&(&a * &a * scale / BigUint::from(n).pow(5)));
    render_scaled(false, &scaled, RATIO_DIGITS)
}

/// Direct scan: for every `z ≤ N`, all `(x, y)` with `2(xy)² < z`.
pub fn count_lattice_brute(n: u64) -> LatticeReport {
    let mut a_n = 0u64;
    for z in 1..=n {
        let mut x = 1u64;
        while 2 * x * x < z {
            let mut y = 1u64;
            while 2 * (x * y) * (x * y) < z {
                if gcd_u64(x, y) == 1 {
                    a_n += 1;
                }
                y += 1;
            }
            x += 1;
        }
    }
    LatticeReport::new(n, a_n, Method::Brute)
}

/// Per-slice count: slice `z` contributes the coprime pairs with
/// `xy ≤ threshold(z)`, counted by [`coprime_pairs_under`].
pub fn count_lattice_sliced(n: u64) -> LatticeReport {
    let mut a_n = 0u64;
    let mut cached: Option<(u64, u64)> = None;
    for z in 1..=n {
        let m = threshold(z);
        let c = match cached {
            Some((cm, cv)) if cm == m => cv,
            _ => {
                let v = coprime_pairs_under(m);
                cached = Some((m, v));
                v
            }
        };
        a_n += c;
    }
    LatticeReport::new(n, a_n, Method::Sliced)
}

pub fn count_lattice(n: u64, method: Method) -> Result<LatticeReport> {
    match method {
        Method::Brute => Ok(count_lattice_brute(n)),
        Method::Sliced => Ok(count_lattice_sliced(n)),
        Method::Both => {
            let brute = count_lattice_brute(n);
            let sliced = count_lattice_sliced(n);
            if brute.a_n != sliced.a_n {
                return Err(Error::LatticeMismatch {
                    n,
                    brute: brute.a_n,
                    sliced: sliced.a_n,
                });
            }
            Ok(LatticeReport::new(n, sliced.a_n, Method::Both))
        }
    }
}

/// Sliced counts for an ascending list of `N`.
pub fn asymptotic_report(ns: &[u64]) -> Result<Vec<LatticeReport>> {
    if ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("N values must be strictly ascending".into()));
    }
    if ns.contains(&0) {
        return Err(Error::InvalidArgument("N must be >= 1".into()));
    }
    Ok(ns.iter().map(|&n| count_lattice_sliced(n)).collect())
}
