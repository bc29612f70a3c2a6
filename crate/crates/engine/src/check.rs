//! Equivalence checking of circuit pairs over local random input states.
//!
//! For each trial a fresh product random state |φ⟩ is prepared, both circuits
//! are applied to it, and the discriminator measures the failure probability
//! `1 − |⟨Uφ|U′φ⟩|²`. If the circuits are equivalent up to a global phase,
//! every trial yields 0, so the check cannot produce false positives. A
//! non-identity difference `U†U′` shows up in the mean failure probability;
//! the one structure that can hide it is a difference confined to a single
//! amplitude pair, for which the survival probability over `m` shots is
//! bounded by `exp(−m / 2^(n−1))`.

use crate::builtin::BuiltinCircuit;
use crate::discriminator::{
    p_failure_analytic, p_failure_sampled, DiscriminatorParams, FailureEstimate, NoiseModel,
};
use crate::error::EngineError;
use crate::randstate::{build_local_random_circuit, LocalRandomSpec};
use crate::seeds::{self, stream};
use qverify_core::{run_circuit, Circuit, Gate, ParamMap, Statevector};
use serde::{Deserialize, Serialize};

/// Default analytic-equivalence threshold: a max per-trial failure below this
/// is double-precision dust, not a genuine deviation.
pub const DEFAULT_EPS_EQUIVALENT: f64 = 1e-10;
/// Default detection threshold on the mean failure probability.
pub const DEFAULT_DETECTION_MEAN: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvalMode {
    Analytic,
    Sampled { shots: u64 },
}

/// How free parameter symbols are instantiated per trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum FreeSymbolRule {
    /// Any free symbol is an error.
    Reject,
    /// Symbols appearing in both circuits are drawn uniformly from [0, 2π)
    /// once per trial (identically on both sides); a symbol unique to one
    /// circuit is an error.
    #[default]
    SharedUniform,
    /// Every free symbol is drawn uniformly from [0, 2π) per trial; same
    /// name, same value.
    SampleAll,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckConfig {
    pub num_states: usize,
    pub mode: EvalMode,
    pub seed: u64,
    pub noise: Option<NoiseModel>,
    /// Compensation angles; `None` means all-zero (the plain test).
    pub disc_params: Option<DiscriminatorParams>,
    pub free_symbols: FreeSymbolRule,
    pub eps_equivalent: f64,
    pub detection_mean: f64,
}

impl CheckConfig {
    pub fn analytic(num_states: usize, seed: u64) -> Self {
        CheckConfig {
            num_states,
            mode: EvalMode::Analytic,
            seed,
            noise: None,
            disc_params: None,
            free_symbols: FreeSymbolRule::default(),
            eps_equivalent: DEFAULT_EPS_EQUIVALENT,
            detection_mean: DEFAULT_DETECTION_MEAN,
        }
    }

    pub fn sampled(num_states: usize, shots: u64, seed: u64) -> Self {
        CheckConfig { mode: EvalMode::Sampled { shots }, ..Self::analytic(num_states, seed) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Equivalent,
    NotEquivalent,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub state: LocalRandomSpec,
    pub free_bindings: Vec<(String, f64)>,
    pub estimate: FailureEstimate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub config: CheckConfig,
    pub num_qubits: usize,
    pub per_trial: Vec<TrialRecord>,
    pub mean_p_failure: f64,
    pub max_p_failure: f64,
    pub std_dev: f64,
    pub verdict: Verdict,
    /// Worst-case probability that a real difference went undetected,
    /// `exp(−m_total / 2^(n−1))`; only meaningful in sampled mode.
    pub undetected_bound: Option<f64>,
}

impl EquivalenceReport {
    /// Re-derives the verdict from the per-trial records and the echoed
    /// config; must agree with the stored verdict.
    pub fn recompute_verdict(&self) -> Verdict {
        let estimates: Vec<FailureEstimate> =
            self.per_trial.iter().map(|t| t.estimate).collect();
        verdict_for(&self.config, &estimates)
    }

    pub fn csv_header() -> &'static str {
        "name,n,gates,depth,p_failure_Y,p_failure_N,t"
    }

    /// One CSV row for this report; the mean lands in the `p_failure_Y`
    /// column when the verdict is Equivalent and in `p_failure_N` otherwise.
    pub fn csv_row(&self, name: &str, gates: usize, depth: usize, seconds: f64) -> String {
        let (y, n) = match self.verdict {
            Verdict::Equivalent => (format!("{:.6e}", self.mean_p_failure), String::new()),
            _ => (String::new(), format!("{:.6e}", self.mean_p_failure)),
        };
        format!("{name},{},{gates},{depth},{y},{n},{seconds:.3}", self.num_qubits)
    }
}

fn verdict_for(config: &CheckConfig, estimates: &[FailureEstimate]) -> Verdict {
    let mean = estimates.iter().map(|e| e.p_failure).sum::<f64>() / estimates.len() as f64;
    match config.mode {
        EvalMode::Analytic => {
            let max = estimates.iter().fold(0.0f64, |m, e| m.max(e.p_failure));
            if max < config.eps_equivalent {
                Verdict::Equivalent
            } else if mean > config.detection_mean {
                Verdict::NotEquivalent
            } else {
                Verdict::Inconclusive
            }
        }
        EvalMode::Sampled { .. } => {
            let failures: u64 = estimates.iter().map(|e| e.failure_shots()).sum();
            if failures == 0 {
                Verdict::Equivalent
            } else if mean > config.detection_mean {
                Verdict::NotEquivalent
            } else {
                Verdict::Inconclusive
            }
        }
    }
}

/// Instantiation plan for the free symbols of a circuit pair.
struct SymbolPlan {
    names: Vec<String>,
}

impl SymbolPlan {
    fn resolve(
        reference: &Circuit,
        generator: &Circuit,
        rule: FreeSymbolRule,
    ) -> Result<Self, EngineError> {
        let mut names: Vec<String> = Vec::new();
        for s in reference.symbols().iter().chain(generator.symbols()) {
            if !names.contains(s) {
                names.push(s.clone());
            }
        }
        match rule {
            FreeSymbolRule::Reject => {
                if let Some(name) = names.first() {
                    return Err(EngineError::FreeSymbolRejected(name.clone()));
                }
            }
            FreeSymbolRule::SharedUniform => {
                for name in &names {
                    if !(reference.has_symbol(name) && generator.has_symbol(name)) {
                        return Err(EngineError::UnboundUniqueSymbol(name.clone()));
                    }
                }
            }
            FreeSymbolRule::SampleAll => {}
        }
        // Deterministic sampling order.
        names.sort();
        Ok(SymbolPlan { names })
    }

    fn bindings_for_trial(&self, trial_seed: u64) -> ParamMap {
        ParamMap::from_pairs(self.names.iter().enumerate().map(|(k, name)| {
            (name.clone(), seeds::uniform_angle(seeds::derive(trial_seed, stream::FREE_SYMBOL, k as u64)))
        }))
    }
}

/// Runs the full check: per trial, prepare a local random state, push it
/// through both circuits, evaluate the discriminator, and aggregate.
///
/// ```
/// use qverify_core::{Circuit, Gate};
/// use qverify_engine::{check_equivalence, CheckConfig, Verdict};
///
/// let reference = Circuit::build(2).h(0).cx(0, 1).finish().unwrap();
/// // Appending Ry(2π) only changes the global phase.
/// let same = reference.appended(Gate::ry(0, std::f64::consts::TAU)).unwrap();
/// let broken = reference.appended(Gate::rx(1, 1.23)).unwrap();
///
/// let config = CheckConfig::analytic(100, 7);
/// assert_eq!(check_equivalence(&reference, &same, &config).unwrap().verdict, Verdict::Equivalent);
/// assert_eq!(check_equivalence(&reference, &broken, &config).unwrap().verdict, Verdict::NotEquivalent);
/// ```
pub fn check_equivalence(
    reference: &Circuit,
    generator: &Circuit,
    config: &CheckConfig,
) -> Result<EquivalenceReport, EngineError> {
    if reference.num_qubits() != generator.num_qubits() {
        return Err(EngineError::QubitMismatch {
            reference: reference.num_qubits(),
            generator: generator.num_qubits(),
        });
    }
    if config.num_states == 0 {
        return Err(EngineError::ZeroTrials);
    }
    if let EvalMode::Sampled { shots: 0 } = config.mode {
        return Err(EngineError::ZeroShots);
    }
    let n = reference.num_qubits();
    let plan = SymbolPlan::resolve(reference, generator, config.free_symbols)?;
    let disc_params =
        config.disc_params.clone().unwrap_or_else(|| DiscriminatorParams::zeros(n));

    let mut per_trial = Vec::with_capacity(config.num_states);
    for trial in 0..config.num_states {
        let trial_seed = seeds::derive(config.seed, stream::TRIAL, trial as u64);
        let spec = LocalRandomSpec::new(n, trial_seed);
        let input = run_circuit(
            &build_local_random_circuit(&spec),
            &ParamMap::new(),
            &Statevector::zero_state(n),
        )?;
        let bindings = plan.bindings_for_trial(trial_seed);
        let out_ref = run_circuit(reference, &bindings, &input)?;
        let out_gen = run_circuit(generator, &bindings, &input)?;
        let estimate = match config.mode {
            EvalMode::Analytic => {
                p_failure_analytic(&out_ref, &out_gen, &disc_params, config.noise.as_ref())?
            }
            EvalMode::Sampled { shots } => p_failure_sampled(
                &out_ref,
                &out_gen,
                &disc_params,
                config.noise.as_ref(),
                shots,
                seeds::derive(config.seed, stream::SHOTS, trial as u64),
            )?,
        };
        per_trial.push(TrialRecord {
            state: spec,
            free_bindings: bindings.iter().map(|(k, v)| (k.to_string(), v)).collect(),
            estimate,
        });
    }

    // Aggregation in trial order keeps the floating-point result fixed.
    let estimates: Vec<FailureEstimate> = per_trial.iter().map(|t| t.estimate).collect();
    let mean = estimates.iter().map(|e| e.p_failure).sum::<f64>() / estimates.len() as f64;
    let max = estimates.iter().fold(0.0f64, |m, e| m.max(e.p_failure));
    let var = estimates.iter().map(|e| (e.p_failure - mean).powi(2)).sum::<f64>()
        / estimates.len() as f64;
    let verdict = verdict_for(config, &estimates);
    let undetected_bound = match config.mode {
        EvalMode::Analytic => None,
        EvalMode::Sampled { shots } => {
            Some(worst_case_undetected(n, config.num_states as u64 * shots))
        }
    };

    Ok(EquivalenceReport {
        config: config.clone(),
        num_qubits: n,
        per_trial,
        mean_p_failure: mean,
        max_p_failure: max,
        std_dev: var.sqrt(),
        verdict,
        undetected_bound,
    })
}

/// Worst-case probability that a difference confined to a single amplitude
/// pair survives `m` shots undetected: `exp(−m / 2^(n−1))`.
pub fn worst_case_undetected(n: usize, m: u64) -> f64 {
    (-(m as f64) / 2f64.powi(n as i32 - 1)).exp()
}

/// The difference unitary that is hardest to detect: identity everywhere
/// except the final 2×2 block, which holds `u_s`. Realized as `u_s` on the
/// last qubit controlled by all the others.
pub fn build_worst_case_difference(n: usize, u_s: &Gate) -> Result<Circuit, EngineError> {
    if n < 2 {
        return Err(EngineError::RegisterTooSmall(n));
    }
    if u_s.targets.len() != 1 || !u_s.controls.is_empty() {
        return Err(EngineError::Invalid(
            "worst-case difference takes an uncontrolled single-qubit gate".into(),
        ));
    }
    let gate = Gate::new(u_s.kind, vec![n - 1], (0..n - 1).collect(), u_s.args.clone())?;
    Circuit::from_gates(n, vec![gate]).map_err(EngineError::from)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    /// Random input states per grid point.
    pub states: usize,
    /// Random draws of the shared symbol set per state (cartesian with
    /// `states`); 1 when the pair has no shared symbols.
    pub beta_samples: usize,
    pub seed: u64,
    pub noise: Option<NoiseModel>,
    pub disc_params: Option<DiscriminatorParams>,
}

impl SweepConfig {
    pub fn analytic(states: usize, beta_samples: usize, seed: u64) -> Self {
        SweepConfig { states, beta_samples, seed, noise: None, disc_params: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub delta: f64,
    pub mean_p_failure: f64,
    pub std_dev: f64,
}

/// Sweeps the generator's `delta` knob over a grid. States and shared-symbol
/// draws are derived from their indices only, so every grid point sees the
/// same inputs, making curves comparable point to point.
pub fn delta_sweep(
    reference: &Circuit,
    generator: &Circuit,
    delta_symbol: &str,
    deltas: &[f64],
    config: &SweepConfig,
) -> Result<Vec<SweepPoint>, EngineError> {
    if !generator.has_symbol(delta_symbol) {
        return Err(EngineError::MissingSweepSymbol { symbol: delta_symbol.to_string() });
    }
    if reference.num_qubits() != generator.num_qubits() {
        return Err(EngineError::QubitMismatch {
            reference: reference.num_qubits(),
            generator: generator.num_qubits(),
        });
    }
    if config.states == 0 || config.beta_samples == 0 {
        return Err(EngineError::ZeroTrials);
    }
    let n = reference.num_qubits();
    let disc_params =
        config.disc_params.clone().unwrap_or_else(|| DiscriminatorParams::zeros(n));

    // Shared symbols of the bound pair (everything except the sweep knob).
    let mut shared: Vec<String> = Vec::new();
    for s in reference.symbols().iter().chain(generator.symbols()) {
        if s != delta_symbol && !shared.contains(s) {
            shared.push(s.clone());
        }
    }
    shared.sort();

    let mut points = Vec::with_capacity(deltas.len());
    for &delta in deltas {
        let gen_bound = generator.bind(delta_symbol, delta);
        let ref_bound = reference.bind(delta_symbol, delta);
        let mut samples = Vec::with_capacity(config.states * config.beta_samples);
        for state_idx in 0..config.states {
            let state_seed = seeds::derive(config.seed, stream::SWEEP_STATE, state_idx as u64);
            let spec = LocalRandomSpec::new(n, state_seed);
            let input = run_circuit(
                &build_local_random_circuit(&spec),
                &ParamMap::new(),
                &Statevector::zero_state(n),
            )?;
            for beta_idx in 0..config.beta_samples {
                let beta_seed = seeds::derive(config.seed, stream::SWEEP_BETA, beta_idx as u64);
                let bindings = ParamMap::from_pairs(shared.iter().enumerate().map(|(k, name)| {
                    (name.clone(), seeds::uniform_angle(seeds::derive(beta_seed, stream::FREE_SYMBOL, k as u64)))
                }));
                let out_ref = run_circuit(&ref_bound, &bindings, &input)?;
                let out_gen = run_circuit(&gen_bound, &bindings, &input)?;
                let est =
                    p_failure_analytic(&out_ref, &out_gen, &disc_params, config.noise.as_ref())?;
                samples.push(est.p_failure);
            }
        }
        let mean = samples.iter().sum::<f64>() / samples.len() as f64;
        let var = samples.iter().map(|p| (p - mean).powi(2)).sum::<f64>() / samples.len() as f64;
        points.push(SweepPoint { delta, mean_p_failure: mean, std_dev: var.sqrt() });
    }
    Ok(points)
}

/// The two named circuit pairs the sweep workloads use.
pub fn sweep_pair(name: &str) -> Result<(Circuit, Circuit), EngineError> {
    match name {
        "flipper" => Ok((
            BuiltinCircuit::FlipperA.circuit(),
            BuiltinCircuit::FlipperB.circuit(),
        )),
        "cry" => Ok((BuiltinCircuit::CryD.circuit(), BuiltinCircuit::CryE.circuit())),
        other => Err(EngineError::UnknownBuiltin(other.to_string())),
    }
}
