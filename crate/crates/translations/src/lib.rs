//! Translations between the calculi and the derivation-level simulations
//! that relate their step counts.
//!
//! * [`to_kernel`] maps value-substitution terms into the kernel, where
//!   every argument is a value.
//! * [`to_sequent`] and [`from_sequent`] map kernel terms to sequent
//!   commands and back.
//! * The `simulate_*` and `project_*` functions build target derivations
//!   from source derivations and verify the stated relations.

mod simulate;
mod translate;

pub use simulate::{
    project_shuf_derivation, project_shuf_step, simulate_fire_derivation, simulate_fire_step, simulate_kernel_in_seq,
    simulate_vsub_in_kernel, staged_vsub_eval, swap_evar_m, FireStepSimulation, SeqSimulation, ShufProjection,
    SimulationError, SimulationWitness,
};
pub use translate::{from_sequent, to_kernel, to_sequent, to_sequent_value, NotKernel};
