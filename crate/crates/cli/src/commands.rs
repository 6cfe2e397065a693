use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use es_lab::arith::{is_prime, primes_between};
use es_lab::{
    cf_expand, cf_residue_classifier, cf_shape, convergents, count_lattice, error_term,
    enumerate_solutions_general, four_over_p_closed_form, proof_trace, verify_type_iii_absent,
    Method, Rational,
};

use crate::output::{emit, Format};
use crate::{Failure, Outcome};

fn check_prime_range(from: u64, to: u64) -> Result<(), Failure> {
    if from < 5 {
        return Err(Failure::Usage(format!("--from {from}: need a prime range starting at 5 or above")));
    }
    if from > to {
        return Err(Failure::Usage(format!("empty range {from}..={to}")));
    }
    Ok(())
}

#[derive(Serialize)]
struct CfRow {
    k: usize,
    a_k: String,
    convergent: String,
    error: String,
    identity_holds: bool,
}

#[derive(Serialize)]
struct CfSummary {
    input: String,
    expansion: String,
    convergents: Vec<String>,
    error_terms: Vec<String>,
    identity_holds: bool,
    closed_form_match: Option<bool>,
}

pub fn cf<W: Write>(out: &mut W, format: Format, num: u64, den: u64) -> Result<Outcome, Failure> {
    let r = Rational::new(num, den)?;
    let expansion = cf_expand(&r)?;
    let convs = convergents(&expansion);
    let mut rows = Vec::with_capacity(convs.len());
    for (c, a) in convs.iter().zip(expansion.quotients()) {
        let e = error_term(&r, c.k)?;
        rows.push(CfRow {
            k: c.k,
            a_k: a.to_string(),
            convergent: c.to_string(),
            error: e.r_k.to_string(),
            identity_holds: e.identity_holds(),
        });
    }
    let closed_form_match = (num == 4 && den >= 5 && is_prime(den)).then(|| {
        let closed = four_over_p_closed_form(den).expect("prime >= 5");
        let values: Vec<Rational> = convs.iter().map(|c| c.value()).collect();
        closed.expansion == expansion && closed.convergent_values == values
    });
    let identity_holds = rows.iter().all(|r| r.identity_holds);
    match format {
        Format::Csv => emit(
            out,
            format,
            &["k", "a_k", "convergent", "error", "identity_holds"],
            &rows,
            |_| String::new(),
        )?,
        Format::Json => {
            let summary = CfSummary {
                input: format!("{num}/{den}"),
                expansion: expansion.to_string(),
                convergents: rows.iter().map(|r| r.convergent.clone()).collect(),
                error_terms: rows.iter().map(|r| r.error.clone()).collect(),
                identity_holds,
                closed_form_match,
            };
            emit(out, format, &[], &[summary], |_| String::new())?;
        }
        Format::Text => {
            writeln!(out, "{num}/{den} = {expansion}")?;
            for row in &rows {
                writeln!(
                    out,
                    "  c_{:<3} a = {:<8} {:<16} error {:<16} identity {}",
                    row.k, row.a_k, row.convergent, row.error, row.identity_holds
                )?;
            }
            if let Some(m) = closed_form_match {
                writeln!(out, "closed-form match: {m}")?;
            }
        }
    }
    let bad = !identity_holds || closed_form_match == Some(false);
    Ok(if bad { Outcome::Violation } else { Outcome::Clean })
}

#[derive(Serialize)]
struct VerifyRow {
    p: u64,
    n_convergents: usize,
    all_numerators_one: bool,
    #[serde(rename = "all_D_negative")]
    all_d_negative: bool,
    violations: usize,
}

pub fn verify<W: Write>(
    out: &mut W,
    format: Format,
    from: u64,
    to: u64,
    xy_cap: u64,
) -> Result<Outcome, Failure> {
    check_prime_range(from, to)?;
    if xy_cap == 0 {
        return Err(Failure::Usage("--xy-cap must be >= 1".into()));
    }
    let primes = primes_between(from, to);
    let rows = primes
        .par_iter()
        .map(|&p| {
            let trace = proof_trace(p)?;
            let scan = verify_type_iii_absent(p, xy_cap)?;
            let derivable = usize::from(!trace.no_type_iii_derivable());
            Ok(VerifyRow {
                p,
                n_convergents: trace.n_convergents,
                all_numerators_one: trace.all_numerators_one(),
                all_d_negative: trace.all_discriminants_negative(),
                violations: scan.violation_count() + derivable,
            })
        })
        .collect::<Result<Vec<_>, es_lab::Error>>()?;
    emit(
        out,
        format,
        &["p", "n_convergents", "all_numerators_one", "all_D_negative", "violations"],
        &rows,
        |r| {
            format!(
                "p = {:<8} convergents {}  numerators one {}  D < 0 {}  violations {}",
                r.p, r.n_convergents, r.all_numerators_one, r.all_d_negative, r.violations
            )
        },
    )?;
    let violated = rows.iter().any(|r| r.violations > 0);
    Ok(if violated { Outcome::Violation } else { Outcome::Clean })
}

#[derive(Serialize)]
struct CensusRow {
    p: u64,
    f_ordered: u64,
    f_unordered: u64,
    #[serde(rename = "f_I")]
    f_i: u64,
    #[serde(rename = "f_II")]
    f_ii: u64,
    #[serde(rename = "f_III")]
    f_iii: u64,
    identity_holds: bool,
}

pub fn census<W: Write>(out: &mut W, format: Format, from: u64, to: u64) -> Result<Outcome, Failure> {
    check_prime_range(from, to)?;
    let primes = primes_between(from, to);
    let rows = es_lab::census_many(&primes)
        .into_iter()
        .map(|c| {
            c.map(|c| CensusRow {
                p: c.n,
                identity_holds: c.identity_holds(),
                f_ordered: c.f_ordered,
                f_unordered: c.f_unordered,
                f_i: c.f_i,
                f_ii: c.f_ii,
                f_iii: c.f_iii,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    emit(
        out,
        format,
        &["p", "f_ordered", "f_unordered", "f_I", "f_II", "f_III", "identity_holds"],
        &rows,
        |r| {
            format!(
                "p = {:<8} f = {:<6} unordered {:<5} f_I {:<5} f_II {:<5} f_III {}  identity {}",
                r.p, r.f_ordered, r.f_unordered, r.f_i, r.f_ii, r.f_iii, r.identity_holds
            )
        },
    )?;
    let violated = rows.iter().any(|r| !r.identity_holds || r.f_iii > 0);
    Ok(if violated { Outcome::Violation } else { Outcome::Clean })
}

#[derive(Serialize)]
struct LatticeRow {
    #[serde(rename = "N")]
    n: u64,
    #[serde(rename = "a_N")]
    a_n: u64,
    #[serde(rename = "a_N_over_N")]
    ratio_lower: String,
    #[serde(rename = "a_N_over_N_5_2")]
    ratio_upper: String,
    method: String,
}

pub fn lattice<W: Write>(
    out: &mut W,
    format: Format,
    ns: &[u64],
    method: Method,
) -> Result<Outcome, Failure> {
    if let Some(&bad) = ns.iter().find(|&&n| n == 0) {
        return Err(Failure::Usage(format!("--n {bad}: N must be >= 1")));
    }
    let results: Vec<_> = ns.par_iter().map(|&n| count_lattice(n, method)).collect();
    let mut rows = Vec::with_capacity(results.len());
    let mut mismatch = false;
    for res in results {
        match res {
            Ok(r) => rows.push(LatticeRow {
                n: r.n,
                a_n: r.a_n,
                ratio_lower: r.ratio_lower_decimal(),
                ratio_upper: r.ratio_upper.clone(),
                method: r.method.to_string(),
            }),
            Err(e @ es_lab::Error::LatticeMismatch { .. }) => {
                eprintln!("{e}");
                mismatch = true;
            }
            Err(e) => return Err(e.into()),
        }
    }
    emit(
        out,
        format,
        &["N", "a_N", "a_N_over_N", "a_N_over_N_5_2", "method"],
        &rows,
        |r| {
            format!(
                "N = {:<8} a_N = {:<10} a_N/N = {}  a_N/N^(5/2) = {}  [{}]",
                r.n, r.a_n, r.ratio_lower, r.ratio_upper, r.method
            )
        },
    )?;
    Ok(if mismatch { Outcome::Violation } else { Outcome::Clean })
}

#[derive(Serialize)]
struct SierpinskiRow {
    kind: &'static str,
    p: u64,
    residue: u64,
    cf_shape: String,
    has_solution: bool,
}

#[derive(Serialize)]
struct ShapeClassRow {
    kind: &'static str,
    residue: u64,
    shapes: String,
}

pub fn sierpinski<W: Write>(
    out: &mut W,
    format: Format,
    a: u64,
    from: u64,
    to: u64,
) -> Result<Outcome, Failure> {
    if a < 2 {
        return Err(Failure::Usage(format!("--a {a}: need a >= 2")));
    }
    if from > to {
        return Err(Failure::Usage(format!("empty range {from}..={to}")));
    }
    let primes: Vec<u64> = primes_between(from, to)
        .into_iter()
        .filter(|p| p % a != 0)
        .collect();
    let rows = primes
        .par_iter()
        .map(|&p| {
            Ok(SierpinskiRow {
                kind: "prime",
                p,
                residue: p % a,
                cf_shape: cf_shape(a, p)?.to_string(),
                has_solution: !enumerate_solutions_general(a, p)?.is_empty(),
            })
        })
        .collect::<Result<Vec<_>, es_lab::Error>>()?;
    let classes: Vec<ShapeClassRow> = cf_residue_classifier(a, from, to)?
        .into_iter()
        .map(|(residue, shapes)| ShapeClassRow {
            kind: "class",
            residue,
            shapes: shapes.iter().map(ToString::to_string).collect::<Vec<_>>().join(";"),
        })
        .collect();
    emit(
        out,
        format,
        &["kind", "p", "residue", "cf_shape", "has_solution"],
        &rows,
        |r| {
            format!(
                "p = {:<8} p mod {a} = {:<4} {:<20} solvable {}",
                r.p, r.residue, r.cf_shape, r.has_solution
            )
        },
    )?;
    if format == Format::Csv {
        writeln!(out)?;
    }
    emit(out, format, &["kind", "residue", "shapes"], &classes, |c| {
        format!("class {} mod {a}: {}", c.residue, c.shapes)
    })?;
    let unsolved = rows.iter().any(|r| !r.has_solution);
    Ok(if unsolved { Outcome::Violation } else { Outcome::Clean })
}
