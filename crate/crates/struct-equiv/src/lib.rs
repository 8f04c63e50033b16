//! Structural equivalences: ≡ on terms with explicit substitutions and ≅ on
//! sequent commands, with one-step bisimulation checks and postponement.
//!
//! ≡ is decided by breadth-first closure under the axioms
//! ([`struct_equiv`]) and, independently, by comparing canonical forms
//! ([`struct_equiv_fast`]). Both are exact; the second is polynomial on
//! terms without repeated unreachable bindings.

mod axioms;
mod bisim;
mod canon;
mod seq;

pub use axioms::{
    equiv_class, equiv_neighbors, root_rewrites, struct_equiv, struct_equiv_with_cap, tagged_equiv_neighbors,
    EquivAxiom, EquivError, Neighbor, DEFAULT_CAP,
};
pub use bisim::{check_bisim_step, check_seq_bisim_step, postpone, BisimReport, MixedStep, PostponeError, Postponed};
pub use canon::{canonical_key, struct_equiv_fast};
pub use seq::{root_swap, seq_equiv_neighbors, seq_is_normal, seq_struct_equiv, seq_struct_equiv_with_cap};
