//! Simulation and verification of the encrypted-cloning qubit encoding:
//! exact Pauli algebra, dense reference linear algebra, the encoded state,
//! the parity classifiers for qubit subsets, the closed-form reduced states,
//! and a brute-force oracle that cross-checks all of them.

pub mod analytic;
pub mod classifier;
pub mod dense;
pub mod encoding;
pub mod error;
pub mod oracle;
pub mod pauli;
pub mod qubit;

pub use analytic::{CoeffMatrix4, GammaEntry, GammaTable, PauliCombination};
pub use classifier::{
    classify_storage, classify_with_a, complement_in_register, decide, has_full_pair, spans_all_pairs, Condition,
    Decision, Family, InformativenessClass, SubsetSpec,
};
pub use dense::{bloch_to_state, BlochVector, DenseOperator, StateVector};
pub use encoding::{
    alpha, build_bell_pair, build_encoded_branch_sum, build_encoded_unitary_path, build_encoding_unitary,
    AlphaCoefficients, EncodedState,
};
pub use error::{Error, Result};
pub use oracle::{
    channel_decompose, observed_class, reduce_encoded, verify_all, ChannelDecomposition, Limits, ReducedOperator,
    ReductionPath, VerificationReport,
};
pub use pauli::{pauli_product, PauliLetter, PauliString, PauliSum, Phase4};
pub use qubit::Qubit;
