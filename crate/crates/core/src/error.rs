use thiserror::Error;

use crate::qubit::Qubit;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("qubit label lists differ: [{left}] vs [{right}]")]
    LabelMismatch { left: String, right: String },
    #[error("qubit {0} appears more than once")]
    DuplicateLabel(Qubit),
    #[error("qubit {0} is not part of the operator")]
    MissingLabel(Qubit),
    #[error("{qubits} qubits exceed the dense limit of {limit}")]
    DenseLimit { qubits: usize, limit: usize },
    #[error("{qubits} qubits exceed the Pauli-string limit of {limit}")]
    PauliLimit { qubits: usize, limit: usize },
    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("dimension {dim} does not match {qubits} qubits")]
    DimensionMismatch { dim: usize, qubits: usize },
    #[error("Bloch vector ({x}, {y}, {z}) has norm {norm}, expected 1")]
    NonUnitBloch { x: f64, y: f64, z: f64, norm: f64 },
    #[error("Pauli index {0} is outside 0..=3")]
    InvalidPauliIndex(usize),
    #[error("sector index {0} is outside 1..=3")]
    InvalidSector(usize),
    #[error("pair count n = {0} is outside the supported range")]
    InvalidPairCount(usize),
    #[error("signal count {count} is outside 0..={n}")]
    InvalidSignalCount { count: usize, n: usize },
    #[error("pair index {index} is outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("subset must not contain A")]
    ContainsA,
    #[error("subset is not one qubit per pair: {0}")]
    NotASpanSubset(String),
    #[error("unknown qubit label `{0}`")]
    UnknownLabel(String),
    #[error("cannot parse `{0}`")]
    Parse(String),
    #[error("reduced state is not affine in the Bloch vector (residual {0:e})")]
    NonAffine(f64),
    #[error("Γ sector {sector} for (n={n}, q={q}) does not have exactly one nonzero operator")]
    GammaStructure { n: usize, q: usize, sector: usize },
}
