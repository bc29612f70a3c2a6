//! Variational training loops.
//!
//! `train_discriminator` tunes the Rz compensation angles against a frozen
//! coherent-error instance, feeding the test an identical pair of local
//! random states redrawn every step. Perfect compensation (θ = −ε) zeroes
//! the failure probability for *every* input, so it is the unique point the
//! open-loop sequence of cost surfaces shares; a fixed basis-state input
//! would leave the reference-register angles without a gradient (they act as
//! pure phase ahead of the control, see the zero-state test below) and the
//! error on that register uncorrected. `train_generator` fits a
//! parameterized ansatz to a reference circuit in the same open-loop style:
//! every step draws a fresh batch of random input states, so the optimizer
//! never sees the same cost surface twice anywhere but at the true optimum.

use crate::adam::AdamState;
use crate::discriminator::{p_failure_analytic, DiscriminatorParams, NoiseModel};
use crate::error::EngineError;
use crate::randstate::{build_local_random_circuit, LocalRandomSpec};
use crate::seeds::{self, stream};
use qverify_core::{cost_gradient, run_circuit, Circuit, ParamMap, Statevector};
use serde::{Deserialize, Serialize};

/// A run is flagged converged when its final cost drops below this.
pub const CONVERGENCE_COST: f64 = 1e-8;

/// Training halts early once a step's cost drops below this; three orders
/// under the convergence target, so stopping never costs accuracy, while
/// running past it would let the normalized optimizer orbit the optimum on
/// stochastic batches instead of settling.
pub const STOP_COST: f64 = 1e-11;

/// Fresh random input states per discriminator-training step; batching keeps
/// the per-step cost surface close to its mean so the optimizer rings down.
pub const DISC_BATCH: u64 = 4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainRecord {
    pub step: u64,
    pub p_failure: f64,
    pub params: Vec<f64>,
}

/// Step-by-step training trace. Record 0 holds the initial point; the last
/// record equals `final_params`. The returned trained parameters are the
/// best-cost snapshot, which may precede the final one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainLog {
    pub records: Vec<TrainRecord>,
    pub final_params: Vec<f64>,
    pub converged: bool,
}

impl TrainLog {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("step,p_failure\n");
        for r in &self.records {
            out.push_str(&format!("{},{:.12e}\n", r.step, r.p_failure));
        }
        out
    }

    pub fn initial_cost(&self) -> f64 {
        self.records.first().map(|r| r.p_failure).unwrap_or(f64::NAN)
    }

    pub fn final_cost(&self) -> f64 {
        self.records.last().map(|r| r.p_failure).unwrap_or(f64::NAN)
    }

    pub fn best(&self) -> &TrainRecord {
        self.records
            .iter()
            .min_by(|a, b| a.p_failure.partial_cmp(&b.p_failure).unwrap())
            .expect("log never empty")
    }
}

fn run_adam_loop<F>(
    initial: Vec<f64>,
    names: &[String],
    steps: u64,
    learning_rate: f64,
    mut cost_at: F,
) -> Result<(Vec<f64>, TrainLog), EngineError>
where
    F: FnMut(u64, &ParamMap) -> Result<f64, EngineError>,
{
    let mut params = initial;
    let mut adam = AdamState::new(params.len(), learning_rate);
    let map_of = |values: &[f64]| {
        ParamMap::from_pairs(names.iter().cloned().zip(values.iter().copied()))
    };

    let mut records = Vec::with_capacity(steps as usize + 1);
    records.push(TrainRecord {
        step: 0,
        p_failure: cost_at(0, &map_of(&params))?,
        params: params.clone(),
    });
    for step in 1..=steps {
        if records.last().unwrap().p_failure < STOP_COST {
            break;
        }
        // Shift-rule gradient; the batch (selected by the step index) is held
        // fixed across the shifted evaluations.
        let mut inner_err: Option<EngineError> = None;
        let grads = cost_gradient(
            |p| match cost_at(step, p) {
                Ok(v) => Ok(v),
                Err(e) => {
                    inner_err = Some(e);
                    Ok(f64::NAN)
                }
            },
            &map_of(&params),
        )
        .map_err(EngineError::from)?;
        if let Some(e) = inner_err {
            return Err(e);
        }
        adam.apply(&mut params, &grads)?;
        records.push(TrainRecord {
            step,
            p_failure: cost_at(step, &map_of(&params))?,
            params: params.clone(),
        });
    }

    let converged = records.last().unwrap().p_failure < CONVERGENCE_COST;
    let log = TrainLog { records, final_params: params, converged };
    let best = log.best().params.clone();
    Ok((best, log))
}

/// Trains the discriminator's compensation angles under the given frozen
/// noise. Angles start at zero (the plain destructive SWAP test); each step
/// feeds the test one identical pair of seeded random product states. The
/// returned values are the best-cost snapshot.
pub fn train_discriminator(
    n_pairs: usize,
    noise: &NoiseModel,
    steps: u64,
    learning_rate: f64,
    seed: u64,
) -> Result<(DiscriminatorParams, TrainLog), EngineError> {
    if steps == 0 {
        return Err(EngineError::ZeroSteps);
    }
    if noise.epsilons.len() != 2 * n_pairs {
        return Err(EngineError::ParamLength { pairs: n_pairs, got: noise.epsilons.len() });
    }
    let names: Vec<String> = (0..2 * n_pairs).map(|i| format!("theta_{i}")).collect();
    let empty = ParamMap::new();
    let cost = |step: u64, map: &ParamMap| -> Result<f64, EngineError> {
        let thetas = DiscriminatorParams::new(map.values());
        let mut total = 0.0;
        for b in 0..DISC_BATCH {
            let spec = LocalRandomSpec::new(
                n_pairs,
                seeds::derive(seed, stream::DISC_INPUT, step * DISC_BATCH + b),
            );
            let input = run_circuit(
                &build_local_random_circuit(&spec),
                &empty,
                &Statevector::zero_state(n_pairs),
            )?;
            total += p_failure_analytic(&input, &input, &thetas, Some(noise))?.p_failure;
        }
        Ok(total / DISC_BATCH as f64)
    };
    let (best, log) = run_adam_loop(vec![0.0; 2 * n_pairs], &names, steps, learning_rate, cost)?;
    Ok((DiscriminatorParams::new(best), log))
}

/// Options for [`train_generator`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorTraining {
    pub steps: u64,
    pub learning_rate: f64,
    pub batch: usize,
    pub seed: u64,
}

impl Default for GeneratorTraining {
    fn default() -> Self {
        GeneratorTraining { steps: 500, learning_rate: 0.1, batch: 4, seed: 0 }
    }
}

/// Trains the ansatz's free symbols (zero-initialized) so its output matches
/// the reference on random inputs. Per step, the cost is the mean failure
/// probability over a fresh batch of local random states.
pub fn train_generator(
    reference: &Circuit,
    ansatz: &Circuit,
    disc_params: Option<&DiscriminatorParams>,
    noise: Option<&NoiseModel>,
    options: &GeneratorTraining,
) -> Result<(ParamMap, TrainLog), EngineError> {
    if reference.num_qubits() != ansatz.num_qubits() {
        return Err(EngineError::QubitMismatch {
            reference: reference.num_qubits(),
            generator: ansatz.num_qubits(),
        });
    }
    if ansatz.symbols().is_empty() {
        return Err(EngineError::SymbolFreeAnsatz);
    }
    if options.batch == 0 {
        return Err(EngineError::Invalid("batch size must be at least 1".into()));
    }
    ansatz.shift_rule_applicable()?;
    if !reference.symbols().is_empty() {
        return Err(EngineError::Invalid(
            "reference circuit must be fully bound before generator training".into(),
        ));
    }

    let n = reference.num_qubits();
    let disc =
        disc_params.cloned().unwrap_or_else(|| DiscriminatorParams::zeros(n));
    let names: Vec<String> = ansatz.symbols().to_vec();
    let empty = ParamMap::new();

    let cost = |step: u64, map: &ParamMap| -> Result<f64, EngineError> {
        let mut total = 0.0;
        for b in 0..options.batch {
            let state_seed = seeds::derive(
                options.seed,
                stream::BATCH,
                step * options.batch as u64 + b as u64,
            );
            let spec = LocalRandomSpec::new(n, state_seed);
            let input = run_circuit(
                &build_local_random_circuit(&spec),
                &empty,
                &Statevector::zero_state(n),
            )?;
            let out_ref = run_circuit(reference, &empty, &input)?;
            let out_gen = run_circuit(ansatz, map, &input)?;
            total += p_failure_analytic(&out_ref, &out_gen, &disc, noise)?.p_failure;
        }
        Ok(total / options.batch as f64)
    };

    let (best, log) = run_adam_loop(
        vec![0.0; names.len()],
        &names,
        options.steps,
        options.learning_rate,
        cost,
    )?;
    Ok((ParamMap::from_pairs(names.into_iter().zip(best)), log))
}
