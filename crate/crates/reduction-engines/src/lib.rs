//! Reduction engines for naive Open CBV, the fireball calculus, the value
//! substitution calculus and its kernel, and the shuffling calculus.
//!
//! Evaluation contexts are never reified. A redex site is a [`Path`] plus a
//! [`Rule`], and legality of a path is decided per calculus while walking.
//! Enumeration order is leftmost-outermost: a node comes before its
//! children, function parts before arguments, ES bodies before definitions.
//!
//! [`Path`]: ocbv_term::Path

mod engine;
mod rules;

pub use engine::{
    check_language, contract, e_normal_form, enumerate_redexes, evaluate, evaluate_rules, m_normal_form, redexes, step,
    step_counts, Derivation, EngineError, Status, Step, Strategy,
};
pub use rules::{Calculus, Counts, RedexSite, Rule};

/// Default fuel for evaluations.
pub const DEFAULT_FUEL: usize = 1000;
