use thiserror::Error;

use crate::circuit::{ParseError, Violation};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("register of {requested} qubits exceeds capacity (1..={max})")]
    Capacity { requested: usize, max: usize },

    #[error("qubit index {index} out of range for {num_qubits}-qubit register")]
    QubitOutOfRange { index: usize, num_qubits: usize },

    #[error("invalid instruction: {0}")]
    InvalidInstruction(String),

    #[error("{0} is a two-qubit gate and has no 2x2 matrix")]
    TwoQubitGate(&'static str),

    #[error("matrix is not unitary (max deviation {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("state is not normalized (norm^2 = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("amplitude vector length {0} is not a power of two")]
    BadDimension(usize),

    #[error("rate {name} = {value} outside [0, 1]")]
    RateOutOfRange { name: &'static str, value: f64 },

    #[error("Kraus operators are not trace preserving (deviation {deviation:e})")]
    NotTracePreserving { deviation: f64 },

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("cx q{control} q{target}: neither endpoint is an allowed CNOT target")]
    Untranspilable { control: usize, target: usize },

    #[error("circuit rejected by device: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Rejected(Vec<Violation>),

    #[error("measured qubit list is empty")]
    EmptyMeasurement,

    #[error("qubit {0} listed more than once")]
    DuplicateQubit(usize),

    #[error("shot count must be at least 1")]
    ZeroShots,

    #[error("invalid device description: {0}")]
    Device(String),
}
