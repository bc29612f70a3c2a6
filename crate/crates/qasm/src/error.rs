use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QasmError {
    #[error("line {line}, col {col}: syntax error: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("line {line}, col {col}: unknown gate `{name}`")]
    UnknownGate { line: usize, col: usize, name: String },

    #[error("line {line}, col {col}: `{name}`: {msg}")]
    Arity { line: usize, col: usize, name: String, msg: String },

    #[error("line {line}, col {col}: gate `{name}` is defined recursively")]
    RecursiveGate { line: usize, col: usize, name: String },

    #[error("line {line}, col {col}: unknown register `{name}`")]
    UnknownRegister { line: usize, col: usize, name: String },

    #[error("line {line}, col {col}: index {index} out of range for `{name}[{size}]`")]
    IndexOutOfRange { line: usize, col: usize, name: String, index: usize, size: usize },

    #[error("line {line}, col {col}: {what} is not supported")]
    Unsupported { line: usize, col: usize, what: String },

    #[error("program declares no qubits")]
    NoQubits,

    #[error("circuit cannot be written as QASM: {0}")]
    Unwritable(String),

    #[error("perturbation: {0}")]
    Perturbation(String),

    #[error(transparent)]
    Sim(#[from] qverify_core::SimError),
}
