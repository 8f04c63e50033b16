//! Random and exhaustive test-input generation and a registry of named
//! property checks covering the calculi, their equivalences and the
//! simulations between them.
//!
//! Every property runs on one input at a time ([`check_sample`]). The
//! drivers feed it seeded random inputs ([`check_property`]) or every input
//! up to a size bound ([`check_exhaustive`]), in parallel, and collect a
//! [`Report`].

mod derivations;
mod enumerate;
mod gen;
mod properties;
mod report;

pub use derivations::{
    all_maximal_derivations, all_maximal_derivations_rules, reducts, seq_reducts, seq_strongly_commute_at,
    seq_strongly_confluent_at, strongly_commute_at, strongly_confluent_at, MaximalDerivations, OpenPeak,
};
pub use enumerate::{enumerate_commands, enumerate_terms, ENUM_FREE};
pub use gen::{gen_command, gen_term, trial_seed, GenConfig, GenError, Language};
pub use properties::{
    check_exhaustive, check_property, check_sample, exhaustive_termination, stuck_terms, HarnessError, Outcome,
    PropertyId, Sample,
};
pub use report::{Failure, Mode, Report};
