use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: {0} vs {1} qubits")]
    LengthMismatch(usize, usize),
    #[error("qubit {qubit} out of range for {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("invalid gate: {0}")]
    InvalidGate(String),
    #[error("Rz({0}) is not a Clifford gate")]
    NonClifford(f64),
    #[error("result slot {0}: {1}")]
    Slot(usize, &'static str),
    #[error("{n} qubits exceeds the dense simulation budget of {max}")]
    TooManyQubits { n: usize, max: usize },
    #[error("forced outcome {outcome} on qubit {qubit} has probability {probability:e}")]
    ImpossibleOutcome { qubit: usize, outcome: u8, probability: f64 },
    #[error("state is entangled across the cut (residual {0:e})")]
    EntangledCut(f64),
    #[error("unsupported measurement basis for this simulator: {0}")]
    UnsupportedBasis(String),
    #[error("invalid initial symbol {0:?}")]
    InvalidSymbol(char),
    #[error("graph error: {0}")]
    Graph(String),
    #[error("lattice error: {0}")]
    Lattice(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
