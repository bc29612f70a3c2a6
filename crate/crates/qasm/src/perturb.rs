//! Perturbed circuit variants for benchmark protocols: insert one gate,
//! an identity (equivalence-preserving) or a real rotation, at an explicit
//! or seeded-random position.

use crate::error::QasmError;
use qverify_core::{Circuit, Gate, GateKind, ParamExpr};

#[derive(Debug, Clone, PartialEq)]
pub enum PerturbationKind {
    InsertIdentity,
    InsertGate { kind: GateKind, angles: Vec<f64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InsertPosition {
    Explicit { gate_index: usize, qubit: usize },
    Random { seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationSpec {
    pub kind: PerturbationKind,
    pub position: InsertPosition,
}

impl PerturbationSpec {
    pub fn insert_identity(position: InsertPosition) -> Self {
        PerturbationSpec { kind: PerturbationKind::InsertIdentity, position }
    }

    pub fn insert_rx(angle: f64, position: InsertPosition) -> Self {
        PerturbationSpec {
            kind: PerturbationKind::InsertGate { kind: GateKind::Rx, angles: vec![angle] },
            position,
        }
    }
}

/// Unbiased-enough bounded sample from a 64-bit word (fixed-point multiply);
/// deterministic and platform-independent.
fn sample_below(word: u64, bound: usize) -> usize {
    ((word as u128 * bound as u128) >> 64) as usize
}

/// Returns a new circuit with exactly one extra gate. An identity insertion
/// leaves the realized unitary untouched; gate insertions use the given kind
/// and angles. Random positions are uniform over
/// (gate boundary index) × (qubit index), derived from the seed alone.
pub fn insert_perturbation(
    circuit: &Circuit,
    spec: &PerturbationSpec,
) -> Result<Circuit, QasmError> {
    let (kind, angles): (GateKind, &[f64]) = match &spec.kind {
        PerturbationKind::InsertIdentity => (GateKind::I, &[]),
        PerturbationKind::InsertGate { kind, angles } => (*kind, angles),
    };
    if kind.target_count() != 1 || kind.implied_controls() != 0 {
        return Err(QasmError::Perturbation(format!(
            "only single-qubit gates can be inserted, not `{}`",
            kind.name()
        )));
    }
    if angles.len() != kind.angle_count() {
        return Err(QasmError::Perturbation(format!(
            "`{}` takes {} angle(s), got {}",
            kind.name(),
            kind.angle_count(),
            angles.len()
        )));
    }
    if let Some(bad) = angles.iter().find(|a| !a.is_finite()) {
        return Err(QasmError::Perturbation(format!("angle {bad} is not finite")));
    }

    let (gate_index, qubit) = match spec.position {
        InsertPosition::Explicit { gate_index, qubit } => {
            if qubit >= circuit.num_qubits() {
                return Err(QasmError::Perturbation(format!(
                    "qubit {qubit} out of range for {} qubits",
                    circuit.num_qubits()
                )));
            }
            if gate_index > circuit.gate_count() {
                return Err(QasmError::Perturbation(format!(
                    "position {gate_index} beyond {} gates",
                    circuit.gate_count()
                )));
            }
            (gate_index, qubit)
        }
        InsertPosition::Random { seed } => {
            if circuit.gate_count() == 0 {
                return Err(QasmError::Perturbation(
                    "cannot pick a random position in an empty circuit".into(),
                ));
            }
            if circuit.is_parameterized() {
                return Err(QasmError::Perturbation(
                    "random insertion requires a fully bound circuit".into(),
                ));
            }
            let boundaries = circuit.gate_count() + 1;
            let b = crate::perturb::sample_below(seeds_mix(seed, 0), boundaries);
            let q = crate::perturb::sample_below(seeds_mix(seed, 1), circuit.num_qubits());
            (b, q)
        }
    };

    let args: Vec<ParamExpr> = angles.iter().map(|&a| ParamExpr::lit(a)).collect();
    let gate = Gate::new(kind, vec![qubit], vec![], args)?;
    circuit.with_gate_inserted(gate_index, gate).map_err(QasmError::from)
}

// Same SplitMix64 chain the engine uses for its derivations.
fn seeds_mix(seed: u64, index: u64) -> u64 {
    const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;
    let mut z = (seed ^ index.wrapping_mul(GOLDEN)).wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
