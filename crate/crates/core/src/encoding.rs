//! The encrypted-cloning encoder, built two independent ways: the dense
//! encoding unitary applied to `|ψ⟩ ⊗ |φ⟩^{⊗n}`, and the sixteen-branch Pauli
//! expansion of the encoded density matrix.

use num_complex::Complex64;

use crate::dense::{BlochVector, DenseOperator, StateVector};
use crate::error::{Error, Result};
use crate::pauli::{pauli_triple, PauliLetter, PauliSum, Phase4, MAX_PAULI_QUBITS};
use crate::qubit::{global_labels, Qubit};

/// Largest pair count the Pauli representation can hold (`2n + 1 ≤ 64`).
pub const MAX_PAIRS: usize = (MAX_PAULI_QUBITS - 1) / 2;

pub(crate) fn check_pairs(n: usize) -> Result<()> {
    if n == 0 || n > MAX_PAIRS {
        return Err(Error::InvalidPairCount(n));
    }
    Ok(())
}

/// `α_0 = 1, α_1 = α_3 = i, α_2 = -i^{n+1}`.
pub fn alpha(n: usize, mu: usize) -> Result<Phase4> {
    check_pairs(n)?;
    match mu {
        0 => Ok(Phase4::ONE),
        1 | 3 => Ok(Phase4::I),
        2 => Ok(-Phase4::i_pow(n as i64 + 1)),
        _ => Err(Error::InvalidPauliIndex(mu)),
    }
}

/// The four encoding phases for a fixed `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlphaCoefficients {
    n: usize,
    alpha: [Phase4; 4],
}

impl AlphaCoefficients {
    pub fn new(n: usize) -> Result<Self> {
        let mut alpha = [Phase4::ONE; 4];
        for (mu, a) in alpha.iter_mut().enumerate() {
            *a = self::alpha(n, mu)?;
        }
        Ok(Self { n, alpha })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, mu: usize) -> Phase4 {
        self.alpha[mu]
    }

    /// `α_μ^{-1}`, the exact conjugate.
    pub fn inverse(&self, mu: usize) -> Phase4 {
        self.alpha[mu].conj()
    }

    /// The matrix `(α_μ^{-1} α_ν)_{μν}`.
    pub fn product_matrix(&self) -> [[Phase4; 4]; 4] {
        let mut m = [[Phase4::ONE; 4]; 4];
        for (mu, row) in m.iter_mut().enumerate() {
            for (nu, e) in row.iter_mut().enumerate() {
                *e = self.inverse(mu) * self.alpha[nu];
            }
        }
        m
    }
}

/// `(|00⟩ + |11⟩)/√2` on `(S_k, N_k)`.
pub fn build_bell_pair(k: usize) -> StateVector {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let o = Complex64::new(0.0, 0.0);
    StateVector::new(vec![Qubit::S(k), Qubit::N(k)], vec![h, o, o, h]).expect("Bell pair is normalised")
}

/// Pauli expansion of `|φ_μ⟩⟨φ_ν|` without its overall `1/4`: four
/// `(phase, signal letter, noise letter)` terms obtained from
/// `(II + XX - YY + ZZ)` multiplied by `σ_μ ⊗ I` on the left and `σ_ν ⊗ I`
/// on the right.
pub fn bell_operator_terms(mu: PauliLetter, nu: PauliLetter) -> [(Phase4, PauliLetter, PauliLetter); 4] {
    PauliLetter::ALL.map(|a| {
        let sign = if a == PauliLetter::Y { Phase4::MINUS_ONE } else { Phase4::ONE };
        let (phase, s) = pauli_triple(mu, a, nu);
        (sign * phase, s, a)
    })
}

/// `U = ½ Σ_μ α_μ^{-1} σ_μ^{(A)} ⊗ σ_μ^{⊗n}` on `(A, S_1, ..., S_n)`.
pub fn build_encoding_unitary(n: usize, dense_limit: usize) -> Result<DenseOperator> {
    check_pairs(n)?;
    let labels: Vec<Qubit> = std::iter::once(Qubit::A).chain((1..=n).map(Qubit::S)).collect();
    if labels.len() > dense_limit {
        return Err(Error::DenseLimit { qubits: labels.len(), limit: dense_limit });
    }
    let alphas = AlphaCoefficients::new(n)?;
    let mut u = DenseOperator::zeros(labels.clone())?;
    for mu in PauliLetter::ALL {
        let mut term = letter_operator(mu, labels[0]);
        for &l in &labels[1..] {
            term = term.tensor(&letter_operator(mu, l))?;
        }
        let w = alphas.inverse(mu.index()).to_complex() * 0.5;
        u = u.linear_combination(1.0, &term.scale(w), 1.0)?;
    }
    Ok(u)
}

fn letter_operator(letter: PauliLetter, label: Qubit) -> DenseOperator {
    let rows: Vec<Vec<Complex64>> = letter.matrix().iter().map(|r| r.to_vec()).collect();
    DenseOperator::from_rows(vec![label], &rows).expect("2x2 Pauli")
}

/// The encoded global state in every representation the dense path offers.
#[derive(Debug, Clone)]
pub struct EncodedState {
    pub n: usize,
    pub input: BlochVector,
    /// Pure state on `A, S_1, N_1, ..., S_n, N_n`.
    pub vector: StateVector,
    pub density: DenseOperator,
}

impl EncodedState {
    /// Pauli decomposition of [`density`](Self::density).
    pub fn pauli(&self) -> Result<PauliSum> {
        PauliSum::from_dense(&self.density)
    }
}

/// Global state vector `U (|ψ⟩_A ⊗ |φ⟩^{⊗n})` in the global qubit order.
pub fn encode_state_vector(n: usize, b: &BlochVector, dense_limit: usize) -> Result<StateVector> {
    check_pairs(n)?;
    let qubits = 2 * n + 1;
    if qubits > dense_limit {
        return Err(Error::DenseLimit { qubits, limit: dense_limit });
    }
    let mut state = b.to_state(Qubit::A);
    for k in 1..=n {
        state = state.tensor(&build_bell_pair(k))?;
    }
    debug_assert_eq!(state.labels(), global_labels(n).as_slice());
    state.apply(&build_encoding_unitary(n, dense_limit)?)
}

pub fn build_encoded_unitary_path(n: usize, b: &BlochVector, dense_limit: usize) -> Result<EncodedState> {
    let vector = encode_state_vector(n, b, dense_limit)?;
    let density = vector.density();
    Ok(EncodedState { n, input: *b, vector, density })
}

/// `ρ_enc = ¼ Σ_{μν} α_μ^{-1} α_ν (σ_μ|ψ⟩⟨ψ|σ_ν) ⊗ ⊗_i |φ_μ⟩⟨φ_ν|` as a Pauli
/// sum on the global qubit order. Every phase is multiplied out exactly
/// before being folded into a coefficient.
pub fn build_encoded_branch_sum(n: usize, b: &BlochVector) -> Result<PauliSum> {
    check_pairs(n)?;
    let alphas = AlphaCoefficients::new(n)?;
    let bloch = b.components();
    let mut rho = PauliSum::new(global_labels(n))?;
    // ¼ (branch sum) · ½ (Bloch expansion) · (¼)^n (Bell expansions)
    let scale = 0.125 * 0.25f64.powi(n as i32);
    let mut bell_keys = Vec::with_capacity(1 << (2 * n));
    for mu in PauliLetter::ALL {
        for nu in PauliLetter::ALL {
            let branch = alphas.inverse(mu.index()) * alphas.get(nu.index());
            let bell = bell_operator_terms(mu, nu);
            bell_keys.clear();
            expand_pairs(&bell, n, 0, Phase4::ONE, &mut bell_keys);
            for r in PauliLetter::ALL {
                let weight = bloch[r.index()];
                if weight == 0.0 {
                    continue;
                }
                let (a_phase, a_letter) = pauli_triple(mu, r, nu);
                let head = (a_letter.index() as u128) << (4 * n);
                for &(tail, phase) in &bell_keys {
                    let total = branch * a_phase * phase;
                    rho.accumulate_key(head | tail, total.to_complex() * (weight * scale));
                }
            }
        }
    }
    rho.prune();
    Ok(rho)
}

/// All `4^n` products of one Bell term per pair, as (packed `S_i N_i` digits, phase).
fn expand_pairs(
    bell: &[(Phase4, PauliLetter, PauliLetter); 4],
    remaining: usize,
    key: u128,
    phase: Phase4,
    out: &mut Vec<(u128, Phase4)>,
) {
    if remaining == 0 {
        out.push((key, phase));
        return;
    }
    for &(p, s, nl) in bell {
        let k = (key << 4) | ((s.index() as u128) << 2) | nl.index() as u128;
        expand_pairs(bell, remaining - 1, k, phase * p, out);
    }
}
