use qverify_core::SimError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Sim(#[from] SimError),

    #[error("qubit counts differ: reference has {reference}, generator has {generator}")]
    QubitMismatch { reference: usize, generator: usize },

    #[error("symbol `{0}` appears in only one circuit and no sampling rule covers it")]
    UnboundUniqueSymbol(String),

    #[error("free symbol `{0}` present but the configuration rejects free symbols")]
    FreeSymbolRejected(String),

    #[error("discriminator parameter count {got} does not match 2×{pairs} pairs")]
    ParamLength { pairs: usize, got: usize },

    #[error("number of trials must be at least 1")]
    ZeroTrials,

    #[error("shot count must be at least 1")]
    ZeroShots,

    #[error("training step count must be at least 1")]
    ZeroSteps,

    #[error("ansatz has no free symbols to train")]
    SymbolFreeAnsatz,

    #[error("parameter/gradient length mismatch: {params} vs {grads}")]
    LengthMismatch { params: usize, grads: usize },

    #[error("non-finite gradient component {index}")]
    NonFiniteGradient { index: usize },

    #[error("worst-case difference circuit needs n ≥ 2, got {0}")]
    RegisterTooSmall(usize),

    #[error("`{0}` is not a known builtin circuit")]
    UnknownBuiltin(String),

    #[error("symbol `{symbol}` is not a free symbol of the generator")]
    MissingSweepSymbol { symbol: String },

    #[error("{0}")]
    Invalid(String),
}
