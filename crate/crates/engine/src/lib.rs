//! Equivalence checking and variational redesign of quantum circuits.
//!
//! Two circuits realize the same unitary (up to global phase) exactly when,
//! for every shared input state, their outputs have unit overlap. This crate
//! drives candidate circuit pairs with cheap product random states, measures
//! the overlap with a (parameterized) destructive SWAP-test discriminator,
//! and aggregates per-trial failure probabilities into a verdict. On top of
//! that sit two Adam-based training loops: one tunes the discriminator's Rz
//! compensation angles against coherent CZ errors, the other fits a
//! parameterized replacement circuit to a reference.

pub mod adam;
pub mod builtin;
pub mod check;
pub mod discriminator;
pub mod error;
pub mod randstate;
pub mod seeds;
pub mod train;

pub use adam::AdamState;
pub use builtin::{builtin_circuit, BuiltinCircuit};
pub use check::{
    build_worst_case_difference, check_equivalence, delta_sweep, sweep_pair,
    worst_case_undetected, CheckConfig, EquivalenceReport, EvalMode, FreeSymbolRule, SweepConfig,
    SweepPoint, TrialRecord, Verdict,
};
pub use discriminator::{
    build_discriminator, build_discriminator_with_noise, p_failure_analytic, p_failure_sampled,
    parity_statistic, sample_noise, DiscriminatorParams, EstimateMode, FailureEstimate,
    NoiseModel, ShotOutcome,
};
pub use error::EngineError;
pub use randstate::{build_local_random_circuit, local_state_amplitude, LocalRandomSpec};
pub use train::{train_discriminator, train_generator, GeneratorTraining, TrainLog, TrainRecord};
