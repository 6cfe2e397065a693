//! Exact tooling around `4/n = 1/x + 1/y + 1/z`: continued fractions of
//! `4/p`, solution enumeration and censuses, the search for coprime
//! solutions with `xy < √(z/2)`, and the associated lattice-point counts.

pub mod arith;
pub mod cf;
pub mod error;
pub mod lattice;
pub mod solver;

pub use arith::{Integer, Natural, Rational};
pub use cf::{
    cf_expand, complete_quotient, convergents, error_term, four_over_p_closed_form,
    legendre_check, CFExpansion, ClosedForm, Convergent, ErrorTerm, LegendreCheck,
};
pub use error::{Error, Result};
pub use lattice::{
    asymptotic_report, count_lattice, count_lattice_brute, count_lattice_sliced, threshold,
    totient_sieve, totient_summatory, LatticeReport, Method, TotientTable,
};
pub use solver::{
    census, census_many, cf_residue_classifier, cf_shape, classify, enumerate_solutions,
    enumerate_solutions_general, proof_trace, solve_sum_product, verify_type_iii_absent, Census,
    CfShape, EsSolution, ProofTrace, SolutionTag, SolutionType, TypeIIIReport,
};
