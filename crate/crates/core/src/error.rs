use thiserror::Error;

/// Errors raised by circuit construction, execution, and gradients.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("qubit index {qubit} out of range for {num_qubits}-qubit register")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },

    #[error("gate {gate_index}: qubit {qubit} used more than once")]
    DuplicateQubit { gate_index: usize, qubit: usize },

    #[error("{kind} expects {expected} {what}, got {got}")]
    GateArity {
        kind: &'static str,
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("symbol `{0}` is not bound")]
    UnboundSymbol(String),

    #[error("qubit counts differ: {left} vs {right}")]
    QubitCountMismatch { left: usize, right: usize },

    #[error("register of {num_qubits} qubits exceeds the supported maximum of {max}")]
    TooManyQubits { num_qubits: usize, max: usize },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("non-finite value for `{0}`")]
    NonFinite(String),

    #[error("symbol `{symbol}` does not admit the two-point shift rule: {reason}")]
    UnsupportedGradient { symbol: String, reason: String },
}
