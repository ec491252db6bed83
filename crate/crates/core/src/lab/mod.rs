//! Checkable predicates for numerical-radius inequalities and a harness that
//! runs them over seeded ensembles.

pub mod checks;
pub mod format;
pub mod report;
pub mod suite;

pub use checks::*;
pub use report::{input_digest, inf_over_phi, sup_over_phi, InequalityReport, SupOverPhi};
pub use suite::{
    prepare_input, run_check, run_suite, run_suite_with, CellSummary, CheckId, CheckInput, Outcome, SuiteConfig,
    SuiteReport,
};
