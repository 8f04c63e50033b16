//! Shared syntax for the Open Call-by-Value calculi.
//!
//! Terms are named λ-terms extended with explicit substitutions `t[x:=u]`.
//! Binders are plain strings; fresh names have the shape `x#n`, which the
//! parser never produces, so a fresh name cannot clash with user input.
//! Equality of terms is alpha-equivalence ([`alpha_eq`]).

mod alpha;
mod classify;
mod parse;
mod path;
mod term;

pub use alpha::{alpha_eq, alpha_key};
pub use classify::{
    classify_fire, clean_decompose, is_fireball, is_harmless, is_inert, strip_subst_ctx, unfold, CleanDecomposition,
    ContainsEs, FireClass,
};
pub use parse::{parse_term, print_term, Lexer, ParseError, MAX_NESTING};
pub use path::{replace_at, subterm_at, Dir, Path};
pub use term::{free_vars, fresh, occurs_free, rename, substitute, Name, Term};
