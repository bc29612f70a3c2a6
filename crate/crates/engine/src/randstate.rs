//! Local random product states.
//!
//! The test-input distribution of the whole pipeline: per qubit, a
//! Rz(a)·Ry(b)·Rz(c) chain with angles drawn uniformly from [0, 2π) turns
//! |0⟩ into an arbitrary point on the Bloch sphere, so the n-qubit circuit
//! prepares a tensor product of n independent single-qubit random states at
//! depth 3 and gate count 3n, with no entangling gates and no deep prep.

use crate::seeds;
use qverify_core::{Circuit, SimError, C64};
use serde::{Deserialize, Serialize};

/// Specification of one local random state. Angles are a pure function of
/// `(seed, qubit, slot)`, so the record `{n, seed}` replays the exact state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalRandomSpec {
    #[serde(rename = "n")]
    pub num_qubits: usize,
    pub seed: u64,
}

impl LocalRandomSpec {
    pub fn new(num_qubits: usize, seed: u64) -> Self {
        LocalRandomSpec { num_qubits, seed }
    }

    /// The (a, b, c) rotation angles for qubit `k`.
    pub fn angles(&self, qubit: usize) -> (f64, f64, f64) {
        debug_assert!(qubit < self.num_qubits);
        let a = seeds::uniform_angle(seeds::derive(self.seed, qubit as u64, 0));
        let b = seeds::uniform_angle(seeds::derive(self.seed, qubit as u64, 1));
        let c = seeds::uniform_angle(seeds::derive(self.seed, qubit as u64, 2));
        (a, b, c)
    }

    /// Amplitudes (⟨0|φ_k⟩, ⟨1|φ_k⟩) of the single-qubit state on qubit `k`.
    pub fn qubit_amplitudes(&self, qubit: usize) -> (C64, C64) {
        let (a, b, c) = self.angles(qubit);
        let half = b / 2.0;
        let amp0 = C64::from_polar(half.cos(), -(a + c) / 2.0);
        let amp1 = C64::from_polar(half.sin(), -(a - c) / 2.0);
        (amp0, amp1)
    }
}

/// The depth-3 preparation circuit: per qubit k, Rz(a_k) then Ry(b_k) then
/// Rz(c_k), laid out in three layers.
pub fn build_local_random_circuit(spec: &LocalRandomSpec) -> Circuit {
    let n = spec.num_qubits;
    let mut builder = Circuit::build(n);
    for k in 0..n {
        builder = builder.rz(k, spec.angles(k).0);
    }
    for k in 0..n {
        builder = builder.ry(k, spec.angles(k).1);
    }
    for k in 0..n {
        builder = builder.rz(k, spec.angles(k).2);
    }
    builder.finish().expect("rotation layers are always valid")
}

/// The i-th amplitude of the product state, `Π_k ⟨bit_k(i)|φ_k⟩`, computed in
/// O(n) without materializing the 2^n vector. Qubit k reads bit `n-1-k` of
/// `i`, matching the statevector index convention.
pub fn local_state_amplitude(spec: &LocalRandomSpec, index: usize) -> Result<C64, SimError> {
    let n = spec.num_qubits;
    if index >= (1usize << n) {
        return Err(SimError::InvalidState(format!(
            "basis index {index} out of range for {n} qubits"
        )));
    }
    let mut amp = C64::new(1.0, 0.0);
    for k in 0..n {
        let (amp0, amp1) = spec.qubit_amplitudes(k);
        let bit = (index >> (n - 1 - k)) & 1;
        amp *= if bit == 0 { amp0 } else { amp1 };
    }
    Ok(amp)
}
