//! The (parameterized) destructive SWAP test.
//!
//! For each qubit pair (k, n+k) the circuit applies H on the second qubit,
//! CZ across the pair, one compensating Rz(θ) on each qubit, H on the second
//! qubit, and H on the first: a CX-based destructive SWAP test with the CX
//! realized as H·CZ·H and a θ pair inserted right after each CZ. With all
//! θ = 0 this is the exact destructive SWAP test: measuring every qubit and
//! taking the parity of `Σ_k O_ref^k AND O_gen^k` gives
//! `P(odd) = (1 − |⟨φ|ψ⟩|²) / 2`, so the failure probability
//! `p_failure = 2·P(odd) = 1 − F`.
//!
//! Coherent CZ miscalibration is modeled as a frozen pair of stray Rz(ε)
//! rotations right after each CZ. Because Rz angles add, θ = −ε restores the
//! exact test; that cancellation is what discriminator training exploits.
//!
//! Note on the parity convention: associating *odd* parity with a failure
//! shot is what reproduces p_failure = 1 − F on the identical/orthogonal
//! calibration cases (brute-forced in the tests below); the even-parity
//! convention would invert the statistic.

use crate::error::EngineError;
use qverify_core::{run_circuit, Circuit, Gate, ParamMap, SimError, Statevector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Rz compensation angles, two per pair: θ_{2k} on qubit k, θ_{2k+1} on
/// qubit n+k.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscriminatorParams {
    pub thetas: Vec<f64>,
}

impl DiscriminatorParams {
    pub fn zeros(n_pairs: usize) -> Self {
        DiscriminatorParams { thetas: vec![0.0; 2 * n_pairs] }
    }

    pub fn new(thetas: Vec<f64>) -> Self {
        DiscriminatorParams { thetas }
    }

    pub fn n_pairs(&self) -> usize {
        self.thetas.len() / 2
    }

    fn check_pairs(&self, n_pairs: usize) -> Result<(), EngineError> {
        if self.thetas.len() != 2 * n_pairs {
            return Err(EngineError::ParamLength { pairs: n_pairs, got: self.thetas.len() });
        }
        if let Some(idx) = self.thetas.iter().position(|t| !t.is_finite()) {
            return Err(EngineError::Invalid(format!("theta {idx} is not finite")));
        }
        Ok(())
    }
}

/// Frozen coherent-error instance: one stray Rz angle per qubit per CZ,
/// sampled once from N(0, σ²) and then fixed for the whole experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    pub epsilons: Vec<f64>,
    pub sigma: f64,
    pub seed: u64,
}

impl NoiseModel {
    pub fn n_pairs(&self) -> usize {
        self.epsilons.len() / 2
    }
}

/// Draws the 2·n_pairs Gaussian error angles (Box–Muller, seeded).
pub fn sample_noise(n_pairs: usize, sigma: f64, seed: u64) -> NoiseModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let epsilons = (0..2 * n_pairs)
        .map(|_| {
            let u1: f64 = 1.0 - rng.gen::<f64>(); // (0, 1]
            let u2: f64 = rng.gen();
            sigma * (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
        })
        .collect();
    NoiseModel { epsilons, sigma, seed }
}

/// One full-register measurement outcome, split by register. Qubit k of
/// either register is bit `n-1-k` of the corresponding word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShotOutcome {
    pub bits_ref: u64,
    pub bits_gen: u64,
    pub num_qubits: usize,
}

impl ShotOutcome {
    /// Splits a joint 2n-qubit basis index (reference register in the high
    /// bits) into the two register words.
    pub fn from_joint_index(index: usize, num_qubits: usize) -> Self {
        let mask = (1u64 << num_qubits) - 1;
        ShotOutcome {
            bits_ref: (index as u64 >> num_qubits) & mask,
            bits_gen: index as u64 & mask,
            num_qubits,
        }
    }

    pub fn is_failure(&self) -> bool {
        parity_statistic(self) == 1
    }
}

/// Parity of `Σ_k O_ref^k AND O_gen^k`; 1 (odd) marks a failure shot.
pub fn parity_statistic(outcome: &ShotOutcome) -> u8 {
    ((outcome.bits_ref & outcome.bits_gen).count_ones() & 1) as u8
}

/// A failure-probability estimate, either exact or from sampled shots.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FailureEstimate {
    pub p_failure: f64,
    pub mode: EstimateMode,
    pub shots: u64,
    pub std_error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateMode {
    Analytic,
    Sampled,
}

impl FailureEstimate {
    fn analytic(p_failure: f64) -> Self {
        FailureEstimate { p_failure, mode: EstimateMode::Analytic, shots: 0, std_error: 0.0 }
    }

    fn sampled(failure_shots: u64, shots: u64) -> Self {
        let p_hat = failure_shots as f64 / shots as f64;
        FailureEstimate {
            p_failure: 2.0 * p_hat,
            mode: EstimateMode::Sampled,
            shots,
            std_error: 2.0 * (p_hat * (1.0 - p_hat) / shots as f64).sqrt(),
        }
    }

    /// Failure shots recovered from the estimate (sampled mode).
    pub fn failure_shots(&self) -> u64 {
        (self.p_failure * self.shots as f64 / 2.0).round() as u64
    }
}

/// Builds the 2·n_pairs-qubit discriminator circuit with the given
/// compensation angles and no error model.
pub fn build_discriminator(
    n_pairs: usize,
    params: &DiscriminatorParams,
) -> Result<Circuit, EngineError> {
    build_discriminator_with_noise(n_pairs, params, None)
}

/// As [`build_discriminator`], with the stray Rz error pair of `noise`
/// inserted immediately after each CZ (before the compensation pair).
pub fn build_discriminator_with_noise(
    n_pairs: usize,
    params: &DiscriminatorParams,
    noise: Option<&NoiseModel>,
) -> Result<Circuit, EngineError> {
    if n_pairs == 0 {
        return Err(EngineError::Invalid("discriminator needs at least one pair".into()));
    }
    params.check_pairs(n_pairs)?;
    if let Some(noise) = noise {
        if noise.epsilons.len() != 2 * n_pairs {
            return Err(EngineError::ParamLength { pairs: n_pairs, got: noise.epsilons.len() });
        }
    }
    let mut gates = Vec::with_capacity(n_pairs * 8);
    for k in 0..n_pairs {
        let (a, b) = (k, n_pairs + k);
        gates.push(Gate::h(b));
        gates.push(Gate::cz(a, b));
        if let Some(noise) = noise {
            gates.push(Gate::rz(a, noise.epsilons[2 * k]));
            gates.push(Gate::rz(b, noise.epsilons[2 * k + 1]));
        }
        gates.push(Gate::rz(a, params.thetas[2 * k]));
        gates.push(Gate::rz(b, params.thetas[2 * k + 1]));
        gates.push(Gate::h(b));
        gates.push(Gate::h(a));
    }
    Circuit::from_gates(2 * n_pairs, gates).map_err(EngineError::from)
}

fn joint_output(
    state_ref: &Statevector,
    state_gen: &Statevector,
    params: &DiscriminatorParams,
    noise: Option<&NoiseModel>,
) -> Result<Statevector, EngineError> {
    if state_ref.num_qubits() != state_gen.num_qubits() {
        return Err(EngineError::Sim(SimError::QubitCountMismatch {
            left: state_ref.num_qubits(),
            right: state_gen.num_qubits(),
        }));
    }
    let n = state_ref.num_qubits();
    let circuit = build_discriminator_with_noise(n, params, noise)?;
    let joint = state_ref.tensor(state_gen)?;
    run_circuit(&circuit, &ParamMap::new(), &joint).map_err(EngineError::from)
}

/// Exact failure probability: the joint product state is pushed through the
/// (noise-augmented) discriminator and `p_failure` is twice the probability
/// mass on odd-parity outcomes. With θ = 0 and no noise this equals
/// `1 − fidelity(state_ref, state_gen)` to machine precision.
pub fn p_failure_analytic(
    state_ref: &Statevector,
    state_gen: &Statevector,
    params: &DiscriminatorParams,
    noise: Option<&NoiseModel>,
) -> Result<FailureEstimate, EngineError> {
    let out = joint_output(state_ref, state_gen, params, noise)?;
    let n = state_ref.num_qubits();
    let mut odd_mass = 0.0;
    for index in 0..out.dim() {
        if ShotOutcome::from_joint_index(index, n).is_failure() {
            odd_mass += out.probability(index);
        }
    }
    Ok(FailureEstimate::analytic(2.0 * odd_mass))
}

/// Sampled failure probability: draws `shots` terminal measurements from the
/// post-discriminator distribution and returns `2 × failures / shots`.
/// Deterministic for a fixed seed.
pub fn p_failure_sampled(
    state_ref: &Statevector,
    state_gen: &Statevector,
    params: &DiscriminatorParams,
    noise: Option<&NoiseModel>,
    shots: u64,
    seed: u64,
) -> Result<FailureEstimate, EngineError> {
    if shots == 0 {
        return Err(EngineError::ZeroShots);
    }
    let out = joint_output(state_ref, state_gen, params, noise)?;
    let n = state_ref.num_qubits();

    let mut cdf = Vec::with_capacity(out.dim());
    let mut acc = 0.0;
    for index in 0..out.dim() {
        acc += out.probability(index);
        cdf.push(acc);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0u64;
    for _ in 0..shots {
        let u: f64 = rng.gen::<f64>() * acc;
        let index = cdf.partition_point(|&c| c <= u).min(out.dim() - 1);
        if ShotOutcome::from_joint_index(index, n).is_failure() {
            failures += 1;
        }
    }
    Ok(FailureEstimate::sampled(failures, shots))
}
