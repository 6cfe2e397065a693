//! Finite continued fractions of nonnegative rationals.
//!
//! Indexing is 0-based with `a₀ = floor(r)`, so for `0 < r < 1` the
//! expansion starts `[0; a₁, ...]` and the first convergent is `0/1`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::arith::{is_prime, rat_sub_abs, Integer, Natural, Rational};
use crate::error::{Error, Result};

/// Partial quotients `[a₀; a₁, …, a_l]` in canonical form: `a₀ ≥ 0`,
/// `aᵢ ≥ 1`, and `a_l ≥ 2` whenever `l ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CFExpansion {
    quotients: Vec<Integer>,
}

impl CFExpansion {
    pub fn new(quotients: Vec<Integer>) -> Result<Self> {
        let Some(first) = quotients.first() else {
            return Err(Error::InvalidArgument("empty continued fraction".into()));
        };
        if first.is_negative() {
            return Err(Error::InvalidArgument(format!("a0 = {first} < 0")));
        }
        if let Some(bad) = quotients[1..].iter().find(|a| !a.is_positive()) {
            return Err(Error::InvalidArgument(format!("partial quotient {bad} < 1")));
        }
        if quotients.len() > 1 && quotients.last().is_some_and(|a| a.is_one()) {
            return Err(Error::InvalidArgument(
                "non-canonical expansion: last quotient is 1".into(),
            ));
        }
        Ok(CFExpansion { quotients })
    }

    pub fn quotients(&self) -> &[Integer] {
        &self.quotients
    }

    /// Index of the last partial quotient.
    pub fn last_index(&self) -> usize {
        self.quotients.len() - 1
    }

    pub fn evaluate(&self) -> Rational {
        eval_tail(&self.quotients)
    }
}

impl fmt::Display for CFExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}", self.quotients[0])?;
        for (i, a) in self.quotients[1..].iter().enumerate() {
            let sep = if i == 0 { ";" } else { "," };
            write!(f, "{sep}{a}")?;
        }
        write!(f, "]")
    }
}

fn eval_tail(quotients: &[Integer]) -> Rational {
    let (last, rest) = quotients.split_last().expect("nonempty expansion");
    let mut value = Rational::from_integer(last.clone());
    for a in rest.iter().rev() {
        let inv = value.recip().expect("tail values are >= 1");
        value = &Rational::from_integer(a.clone()) + &inv;
    }
    value
}

/// Euclidean algorithm on `num/den`.
pub fn cf_expand(r: &Rational) -> Result<CFExpansion> {
    if r.is_negative() {
        return Err(Error::NegativeInput(r.to_string()));
    }
    let mut num = r.numer().clone();
    let mut den = r.denom().clone();
    let mut quotients = Vec::new();
    while !den.is_zero() {
        let (q, rem) = num.div_rem(&den);
        quotients.push(q);
        num = std::mem::replace(&mut den, rem);
    }
    Ok(CFExpansion { quotients })
}

/// `p_k / q_k`, the value of `[a₀; …, a_k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergent {
    pub k: usize,
    pub p: Integer,
    pub q: Integer,
}

impl Convergent {
    pub fn value(&self) -> Rational {
        Rational::new(self.p.clone(), self.q.clone()).expect("q_k >= 1")
    }
}

impl fmt::Display for Convergent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// All convergents `c₀ … c_l`, from the seeds `p₋₁ = 1, q₋₁ = 0`.
pub fn convergents(cf: &CFExpansion) -> Vec<Convergent> {
    let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
    let (mut p_prev2, mut q_prev2) = (BigInt::zero(), BigInt::one());
    cf.quotients
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let p = a * &p_prev + &p_prev2;
            let q = a * &q_prev + &q_prev2;
            p_prev2 = std::mem::replace(&mut p_prev, p.clone());
            q_prev2 = std::mem::replace(&mut q_prev, q.clone());
            Convergent { k, p, q }
        })
        .collect()
}

/// `x_{k+1} = [a_{k+1}; a_{k+2}, …, a_l]`; requires `k < l`.
pub fn complete_quotient(cf: &CFExpansion, k: usize) -> Result<Rational> {
    if k >= cf.last_index() {
        return Err(Error::IndexOutOfRange {
            index: k,
            len: cf.quotients.len(),
        });
    }
    Ok(eval_tail(&cf.quotients[k + 1..]))
}

/// Exact approximation error of the k-th convergent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErrorTerm {
    pub k: usize,
    pub convergent: Convergent,
    /// `|r − c_k|`.
    pub r_k: Rational,
    /// `x_{k+1}`; absent for the last convergent.
    pub complete_quotient: Option<Rational>,
    /// `q_{k−1}`, with `q₋₁ = 0`.
    pub q_prev: Natural,
}

impl ErrorTerm {
    /// `q_k (x_{k+1} q_k + q_{k−1})`, the reciprocal of `r_k` for `k < l`.
    pub fn reciprocal_from_tail(&self) -> Option<Rational> {
        let x = self.complete_quotient.as_ref()?;
        let q = Rational::from_integer(self.convergent.q.clone());
        let q_prev = Rational::from_integer(BigInt::from(self.q_prev.clone()));
        Some(&q * &(&(x * &q) + &q_prev))
    }

    /// Checks `r_k · q_k (x_{k+1} q_k + q_{k−1}) = 1` (or `r_l = 0` at the end).
    pub fn identity_holds(&self) -> bool {
        match self.reciprocal_from_tail() {
            Some(d) => (&self.r_k * &d) == Rational::one(),
            None => self.r_k.is_zero(),
        }
    }
}

pub fn error_term(r: &Rational, k: usize) -> Result<ErrorTerm> {
    let cf = cf_expand(r)?;
    let convs = convergents(&cf);
    let Some(c) = convs.get(k) else {
        return Err(Error::IndexOutOfRange {
            index: k,
            len: convs.len(),
        });
    };
    let r_k = rat_sub_abs(r, &c.value());
    let complete_quotient = (k < cf.last_index())
        .then(|| complete_quotient(&cf, k))
        .transpose()?;
    let q_prev = if k == 0 {
        Natural::zero()
    } else {
        convs[k - 1].q.magnitude().clone()
    };
    Ok(ErrorTerm {
        k,
        convergent: c.clone(),
        r_k,
        complete_quotient,
        q_prev,
    })
}

/// Outcome of the convergent criterion for one candidate fraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LegendreCheck {
    /// `|target − r/s| < 1/(2s²)`, strict.
    pub inequality_holds: bool,
    /// `r/s` is one of the canonical convergents of `target`.
    pub is_convergent: bool,
}

pub fn legendre_check(target: &Rational, candidate: &Rational) -> Result<LegendreCheck> {
    let s = candidate.denom();
    let bound = Rational::new(1, BigInt::from(2) * s * s)?;
    let inequality_holds = rat_sub_abs(target, candidate) < bound;
    let cf = cf_expand(target)?;
    let is_convergent = convergents(&cf).iter().any(|c| &c.value() == candidate);
    Ok(LegendreCheck {
        inequality_holds,
        is_convergent,
    })
}

/// Closed-form expansion of `4/p` for a prime `p ≥ 5`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    pub expansion: CFExpansion,
    pub convergent_values: Vec<Rational>,
}

/// `p ≡ 1 (mod 4)`: `[0; (p−1)/4, 4]` with convergents `0, 4/(p−1), 4/p`.
/// `p ≡ 3 (mod 4)`: `[0; (p−3)/4, 1, 3]` with convergents
/// `0, 4/(p−3), 4/(p+1), 4/p`.
pub fn four_over_p_closed_form(p: u64) -> Result<ClosedForm> {
    if p < 5 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let int = |v: u64| BigInt::from(v);
    let frac = |n: u64, d: u64| Rational::new(int(n), int(d)).expect("nonzero");
    let (quotients, convergent_values) = if p % 4 == 1 {
        (
            vec![int(0), int((p - 1) / 4), int(4)],
            vec![Rational::zero(), frac(4, p - 1), frac(4, p)],
        )
    } else {
        (
            vec![int(0), int((p - 3) / 4), int(1), int(3)],
            vec![Rational::zero(), frac(4, p - 3), frac(4, p + 1), frac(4, p)],
        )
    };
    Ok(ClosedForm {
        expansion: CFExpansion::new(quotients)?,
        convergent_values,
    })
}
