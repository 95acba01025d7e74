//! Enumeration and audits of conradian preorders.

mod abelian;
mod audit;
mod enumerate;
mod isolation;
mod perturb;

pub use abelian::{abelian_witness_suite, coprime_pairs, LinearFunctional, SuiteError, MAX_SUITE_HEIGHT};
pub use audit::{
    cone_axiom_audit, conradian_audit, convexity_audit, full_audit, AuditReport, Clause, ClauseResult,
    ConradianStats, ConvexityReport, Counterexample, DEFAULT_N_MAX,
};
pub use enumerate::{enumerate_all, enumerate_relative, EnumerationError, EnumerationResult, Scope};
pub use isolation::{ambient_family, isolation_check, FamilyMember, Isolation, AMBIENT_SUITE_SIZE, EXACT_SUBSET_MAX};
pub use perturb::{default_flip, perturb_falsify, Falsification, PerturbError, Perturbed};
