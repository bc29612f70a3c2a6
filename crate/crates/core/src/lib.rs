//! Dense statevector simulation of parameterized quantum circuits.
//!
//! The crate provides the building blocks used by the equivalence-checking
//! and training layers: complex statevectors, a small gate set with symbolic
//! angle parameters, circuit execution, exact fidelity, unitary extraction
//! for small registers, and parameter-shift gradients of scalar costs.
//!
//! Conventions (fixed, since downstream angle cancellation depends on them):
//!
//! * Qubit 0 is the **most significant** bit of an amplitude index, so the
//!   basis state `|x_0 x_1 … x_{n-1}⟩` lives at index `Σ_k x_k · 2^(n-1-k)`.
//! * `Rz(θ) = diag(e^{-iθ/2}, e^{iθ/2})`,
//!   `Ry(θ) = [[cos θ/2, -sin θ/2], [sin θ/2, cos θ/2]]`,
//!   `Rx(θ) = [[cos θ/2, -i sin θ/2], [-i sin θ/2, cos θ/2]]`.
//!
//! Circuits and parameter maps are immutable and freely shareable across
//! threads; execution never mutates its inputs.
//!
//! ```
//! use qverify_core::{fidelity, run_circuit, Circuit, ParamMap, Statevector};
//!
//! // Bell pair: H then CX.
//! let circuit = Circuit::build(2).h(0).cx(0, 1).finish().unwrap();
//! let out = run_circuit(&circuit, &ParamMap::new(), &Statevector::zero_state(2)).unwrap();
//!
//! assert!((out.probability(0b00) - 0.5).abs() < 1e-12);
//! assert!((out.probability(0b11) - 0.5).abs() < 1e-12);
//! assert!((fidelity(&out, &out).unwrap() - 1.0).abs() < 1e-12);
//! ```

pub mod circuit;
pub mod error;
pub mod gate;
pub mod gradient;
pub mod matrix;
pub mod params;
pub mod simulate;
pub mod state;

pub use circuit::{Circuit, CircuitBuilder};
pub use error::SimError;
pub use gate::{Gate, GateKind};
pub use gradient::cost_gradient;
pub use matrix::CMatrix;
pub use params::{ParamExpr, ParamMap};
pub use simulate::{run_circuit, unitary_of, MAX_UNITARY_QUBITS};
pub use state::{fidelity, Statevector};

/// Complex amplitude type used throughout.
pub type C64 = num_complex::Complex64;
