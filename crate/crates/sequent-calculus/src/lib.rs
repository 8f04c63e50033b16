//! The value sequent calculus: commands `<v | e>`, environments built from
//! the output marker ε, μ̃-binders and value stacks, the append operation,
//! and reduction by the λ̄ (βvμ) and μ̃ rules.
//!
//! The concrete syntax writes ε as `#` and μ̃x.c as `mu~x.c`, for example
//! `<\x.<x | #> | y . #>`.

mod reduction;
mod syntax;

pub use reduction::{
    contract_seq, enumerate_seq_redexes, evaluate_seq, evaluate_seq_rules, rebuild, root_rule, step_seq, tail_command,
    SeqCounts, SeqDerivation, SeqRule, SeqSite, SeqStep, SeqStrategy, StaleSeqSite,
};
pub use syntax::{
    append_cmd, append_env, cmd_alpha_eq, cmd_key, fv_cmd, fv_env, fv_value, occurs_free_cmd, occurs_free_env,
    occurs_free_value, output_count, parse_command, print_command, rename_cmd, subst_cmd, validate, Command,
    Environment, SeqValue,
};
