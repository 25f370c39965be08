//! Closed-form reduced states and the coefficient-matrix machinery behind them.
//!
//! Tracing the encoded state down to `H = {A} ∪ C` with `|C| = n` (one qubit
//! per pair, `q` of them signals) leaves a sum over `(μ, ν)` of
//! `α_μ^{-1} α_ν (σ_μ ρ_ψ σ_ν) ⊗ (σ_μσ_ν)^{⊗q} ⊗ ((σ_νσ_μ)^T)^{⊗(n-q)}`.
//! Splitting every factor by the Pauli letter it produces gives the 4×4
//! coefficient matrices `S_j`, `N_j` and `C_j^(n)`; their entrywise product
//! `L_j^(n,q)` selects which `σ_μ σ_r σ_ν` survive in sector `j`, and the
//! resulting single-qubit operators `Γ_{j,r}` carry the dependence on Bloch
//! component `r`.
//!
//! Every table exists twice: as tabulated constants and as a derivation from
//! [`pauli_product`] and the encoding phases. Tests pin the two together.

use std::fmt;

use num_complex::{Complex, Complex64};
use serde::Serialize;

use crate::dense::BlochVector;
use crate::encoding::{check_pairs, AlphaCoefficients};
use crate::error::{Error, Result};
use crate::pauli::{pauli_product, pauli_triple, PauliLetter, PauliSum, Phase4};
use crate::qubit::Qubit;

/// A 4×4 matrix whose entries are zero or a unit phase, indexed `(μ, ν)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct CoeffMatrix4([[Option<Phase4>; 4]; 4]);

impl CoeffMatrix4 {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds from `(μ, ν, i-exponent)` triples; unspecified entries are zero.
    fn from_entries(entries: &[(usize, usize, i64)]) -> Self {
        let mut m = Self::zero();
        for &(mu, nu, k) in entries {
            m.0[mu][nu] = Some(Phase4::i_pow(k));
        }
        m
    }

    pub fn get(&self, mu: usize, nu: usize) -> Option<Phase4> {
        self.0[mu][nu]
    }

    pub fn support(&self) -> [[bool; 4]; 4] {
        self.0.map(|row| row.map(|e| e.is_some()))
    }

    pub fn nonzero_count(&self) -> usize {
        self.0.iter().flatten().filter(|e| e.is_some()).count()
    }

    /// Entrywise product.
    pub fn hadamard(&self, other: &CoeffMatrix4) -> CoeffMatrix4 {
        let mut out = Self::zero();
        for mu in 0..4 {
            for nu in 0..4 {
                out.0[mu][nu] = match (self.0[mu][nu], other.0[mu][nu]) {
                    (Some(a), Some(b)) => Some(a * b),
                    _ => None,
                };
            }
        }
        out
    }

    /// Entrywise `k`-th power; the zeroth power is the all-ones matrix.
    pub fn hadamard_pow(&self, k: usize) -> CoeffMatrix4 {
        let mut out = Self::zero();
        for mu in 0..4 {
            for nu in 0..4 {
                out.0[mu][nu] = match self.0[mu][nu] {
                    _ if k == 0 => Some(Phase4::ONE),
                    Some(p) => Some(p.pow(k as u64)),
                    None => None,
                };
            }
        }
        out
    }

    /// Keeps only the entries where `mask` is nonzero.
    pub fn masked_by(&self, mask: &CoeffMatrix4) -> CoeffMatrix4 {
        let mut out = *self;
        for mu in 0..4 {
            for nu in 0..4 {
                if mask.0[mu][nu].is_none() {
                    out.0[mu][nu] = None;
                }
            }
        }
        out
    }

    pub fn rows(&self) -> Vec<Vec<String>> {
        self.0.iter().map(|row| row.iter().map(|e| entry_text(*e)).collect()).collect()
    }
}

fn entry_text(e: Option<Phase4>) -> String {
    match e.map(|p| p.exponent()) {
        None => "0".into(),
        Some(0) => "1".into(),
        Some(1) => "i".into(),
        Some(2) => "-1".into(),
        Some(_) => "-i".into(),
    }
}

impl fmt::Display for CoeffMatrix4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.0 {
            let cells: Vec<String> = row
                .iter()
                .map(|e| match e {
                    None => format!("{:>3}", "·"),
                    Some(_) => format!("{:>3}", entry_text(*e)),
                })
                .collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for CoeffMatrix4 {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(serializer)
    }
}

fn check_sector(j: usize) -> Result<()> {
    if (1..=3).contains(&j) {
        Ok(())
    } else {
        Err(Error::InvalidSector(j))
    }
}

fn check_signals(n: usize, q: usize) -> Result<()> {
    check_pairs(n)?;
    if q > n {
        return Err(Error::InvalidSignalCount { count: q, n });
    }
    Ok(())
}

/// Tabulated `S_j`: `σ_μ σ_ν = δ_{μν} I + Σ_j (S_j)_{μν} σ_j`.
pub fn s_matrix(j: usize) -> Result<CoeffMatrix4> {
    check_sector(j)?;
    Ok(CoeffMatrix4::from_entries(match j {
        1 => &[(0, 1, 0), (1, 0, 0), (2, 3, 1), (3, 2, 3)],
        2 => &[(0, 2, 0), (1, 3, 3), (2, 0, 0), (3, 1, 1)],
        _ => &[(0, 3, 0), (1, 2, 1), (2, 1, 3), (3, 0, 0)],
    }))
}

/// Tabulated `N_j`: `(σ_ν σ_μ)^T = δ_{μν} I + Σ_j (N_j)_{μν} σ_j`.
pub fn n_matrix(j: usize) -> Result<CoeffMatrix4> {
    check_sector(j)?;
    Ok(CoeffMatrix4::from_entries(match j {
        1 => &[(0, 1, 0), (1, 0, 0), (2, 3, 3), (3, 2, 1)],
        2 => &[(0, 2, 2), (1, 3, 3), (2, 0, 2), (3, 1, 1)],
        _ => &[(0, 3, 0), (1, 2, 3), (2, 1, 1), (3, 0, 0)],
    }))
}

/// Tabulated `C_j^(n)`, the sector-`j` part of `(α_μ^{-1} α_ν)`.
pub fn c_matrix(n: usize, j: usize) -> Result<CoeffMatrix4> {
    check_pairs(n)?;
    check_sector(j)?;
    let n = n as i64;
    // -i^k = i^{k+2}
    let entries = match j {
        1 => [(0, 1, 1), (1, 0, 3), (2, 3, -n + 2), (3, 2, n + 2)],
        2 => [(0, 2, n + 3), (1, 3, 0), (2, 0, -(n + 1) + 2), (3, 1, 0)],
        _ => [(0, 3, 1), (1, 2, n + 2), (2, 1, -n + 2), (3, 0, 3)],
    };
    Ok(CoeffMatrix4::from_entries(&entries))
}

/// `S_j` derived from the Pauli product table.
pub fn s_matrix_derived(j: usize) -> Result<CoeffMatrix4> {
    check_sector(j)?;
    let mut m = CoeffMatrix4::zero();
    for mu in PauliLetter::ALL {
        for nu in PauliLetter::ALL {
            let (phase, c) = pauli_product(mu, nu);
            if c.index() == j {
                m.0[mu.index()][nu.index()] = Some(phase);
            }
        }
    }
    Ok(m)
}

/// `N_j` derived from the Pauli product table and `σ^T = ±σ`.
pub fn n_matrix_derived(j: usize) -> Result<CoeffMatrix4> {
    check_sector(j)?;
    let mut m = CoeffMatrix4::zero();
    for mu in PauliLetter::ALL {
        for nu in PauliLetter::ALL {
            let (phase, c) = pauli_product(nu, mu);
            if c.index() == j {
                m.0[mu.index()][nu.index()] = Some(phase * c.transpose_sign());
            }
        }
    }
    Ok(m)
}

/// `C_j^(n)` derived from the encoding phases, restricted to the support of `S_j`.
pub fn c_matrix_derived(n: usize, j: usize) -> Result<CoeffMatrix4> {
    let products = AlphaCoefficients::new(n)?.product_matrix();
    let full = CoeffMatrix4(products.map(|row| row.map(Some)));
    Ok(full.masked_by(&s_matrix_derived(j)?))
}

/// `(α_μ^{-1} α_ν)` as a coefficient matrix.
pub fn alpha_matrix(n: usize) -> Result<CoeffMatrix4> {
    let products = AlphaCoefficients::new(n)?.product_matrix();
    Ok(CoeffMatrix4(products.map(|row| row.map(Some))))
}

/// `L_j^(n,q) = C_j^(n) ∘ S_j^{∘q} ∘ N_j^{∘(n-q)}`.
pub fn l_matrix(n: usize, q: usize, j: usize) -> Result<CoeffMatrix4> {
    check_signals(n, q)?;
    Ok(c_matrix(n, j)?.hadamard(&s_matrix(j)?.hadamard_pow(q)).hadamard(&n_matrix(j)?.hadamard_pow(n - q)))
}

/// A single-qubit operator `Σ_c w_c σ_c` with Gaussian-integer weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PauliCombination(pub [Complex<i64>; 4]);

impl PauliCombination {
    pub fn weight(&self, letter: PauliLetter) -> Complex<i64> {
        self.0[letter.index()]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|w| *w == Complex::new(0, 0))
    }

    /// `Some((s, σ))` when the operator is `s·σ` with real integer `s`.
    pub fn as_signed_letter(&self) -> Option<(i64, PauliLetter)> {
        let mut nonzero = PauliLetter::ALL.into_iter().filter(|l| self.weight(*l) != Complex::new(0, 0));
        let letter = nonzero.next()?;
        if nonzero.next().is_some() {
            return None;
        }
        let w = self.weight(letter);
        (w.im == 0).then_some((w.re, letter))
    }
}

impl fmt::Display for PauliCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        if let Some((s, l)) = self.as_signed_letter() {
            return write!(f, "{s:+}{l}");
        }
        let parts: Vec<String> = PauliLetter::ALL
            .iter()
            .filter(|l| self.weight(**l) != Complex::new(0, 0))
            .map(|l| {
                let w = self.weight(*l);
                format!("({}{:+}i){}", w.re, w.im, l)
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `Γ_{j,r}^(n,q) = Σ_{μν} (L_j^(n,q))_{μν} σ_μ σ_r σ_ν`, in exact arithmetic.
pub fn gamma(n: usize, q: usize, j: usize, r: usize) -> Result<PauliCombination> {
    let l = l_matrix(n, q, j)?;
    let r = PauliLetter::from_index(r)?;
    let mut out = PauliCombination::default();
    for mu in PauliLetter::ALL {
        for nu in PauliLetter::ALL {
            if let Some(coeff) = l.get(mu.index(), nu.index()) {
                let (phase, c) = pauli_triple(mu, r, nu);
                out.0[c.index()] += phase_to_gaussian(coeff * phase);
            }
        }
    }
    Ok(out)
}

fn phase_to_gaussian(p: Phase4) -> Complex<i64> {
    match p.exponent() {
        0 => Complex::new(1, 0),
        1 => Complex::new(0, 1),
        2 => Complex::new(-1, 0),
        _ => Complex::new(0, -1),
    }
}

/// The surviving operator of one sector: `Γ_{sector, component} = coefficient · letter`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GammaEntry {
    pub sector: usize,
    pub component: usize,
    pub coefficient: i64,
    pub letter: PauliLetter,
}

/// The single nonzero `Γ_{j,r}` of each sector `j = 1, 2, 3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaTable {
    pub n: usize,
    pub q: usize,
    pub entries: [GammaEntry; 3],
}

impl GammaTable {
    /// Fails with [`Error::GammaStructure`] if a sector has zero or several
    /// nonzero operators, or one that is not a signed single letter.
    pub fn new(n: usize, q: usize) -> Result<Self> {
        check_signals(n, q)?;
        let mut entries = Vec::with_capacity(3);
        for j in 1..=3 {
            let mut found = None;
            for r in 0..4 {
                let g = gamma(n, q, j, r)?;
                if g.is_zero() {
                    continue;
                }
                let bad = Error::GammaStructure { n, q, sector: j };
                let (coefficient, letter) = g.as_signed_letter().ok_or(bad.clone())?;
                if found.is_some() {
                    return Err(bad);
                }
                found = Some(GammaEntry { sector: j, component: r, coefficient, letter });
            }
            entries.push(found.ok_or(Error::GammaStructure { n, q, sector: j })?);
        }
        Ok(Self { n, q, entries: [entries[0], entries[1], entries[2]] })
    }

    pub fn entry(&self, sector: usize) -> &GammaEntry {
        &self.entries[sector - 1]
    }
}

/// `(A, S_1, ..., S_q, N_{q+1}, ..., N_n)`.
pub fn with_a_span_labels(n: usize, q: usize) -> Vec<Qubit> {
    std::iter::once(Qubit::A).chain((1..=q).map(Qubit::S)).chain((q + 1..=n).map(Qubit::N)).collect()
}

/// `(S_1, ..., S_p, N_{p+1}, ..., N_n)`.
pub fn storage_span_labels(n: usize, p: usize) -> Vec<Qubit> {
    (1..=p).map(Qubit::S).chain((p + 1..=n).map(Qubit::N)).collect()
}

/// `letter_A ⊗ σ^{⊗n}` as a letter vector.
fn a_tensor_power(a: PauliLetter, s: PauliLetter, n: usize) -> Vec<PauliLetter> {
    std::iter::once(a).chain(std::iter::repeat_n(s, n)).collect()
}

/// `I/2^{n+1} + 2^{-(n+3)} Σ_j (Γ_{j,0} + xΓ_{j,1} + yΓ_{j,2} + zΓ_{j,3}) ⊗ σ_j^{⊗n}`
/// on [`with_a_span_labels`].
pub fn reduced_with_a_via_gamma(n: usize, q: usize, b: &BlochVector) -> Result<PauliSum> {
    check_signals(n, q)?;
    let mut rho = PauliSum::new(with_a_span_labels(n, q))?;
    let bloch = b.components();
    rho.accumulate(
        &a_tensor_power(PauliLetter::I, PauliLetter::I, n),
        Complex64::new(2f64.powi(-(n as i32 + 1)), 0.0),
    )?;
    let scale = 2f64.powi(-(n as i32 + 3));
    for j in 1..=3 {
        let sigma = PauliLetter::from_index(j)?;
        for (r, &br) in bloch.iter().enumerate() {
            let g = gamma(n, q, j, r)?;
            for c in PauliLetter::ALL {
                let w = g.weight(c);
                if w == Complex::new(0, 0) {
                    continue;
                }
                let coeff = Complex64::new(w.re as f64, w.im as f64) * (br * scale);
                rho.accumulate(&a_tensor_power(c, sigma, n), coeff)?;
            }
        }
    }
    rho.prune();
    Ok(rho)
}

/// The four parity-case closed forms for `H = {A} ∪ C`, `|C| = n`, on
/// [`with_a_span_labels`].
pub fn reduced_with_a_case_form(n: usize, q: usize, b: &BlochVector) -> Result<PauliSum> {
    use PauliLetter::*;
    check_signals(n, q)?;
    let (x, y, z) = (b.x, b.y, b.z);
    let sign = |k: usize| if k % 2 == 0 { 1.0 } else { -1.0 };
    // (A letter, register letter, weight) for the three non-identity terms.
    let terms: [(PauliLetter, PauliLetter, f64); 3] = match (n % 2 == 0, q % 2 == 0) {
        (true, true) => [(Y, X, -z), (Z, Y, sign(n / 2) * x), (X, Z, -y)],
        (true, false) => [(Z, X, y), (X, Y, sign(n / 2) * z), (Y, Z, x)],
        (false, false) => [(Y, X, -z), (I, Y, sign((n - 1) / 2) * y), (Y, Z, x)],
        (false, true) => [(Z, X, y), (Y, Y, sign((n + 1) / 2)), (X, Z, -y)],
    };
    let norm = 2f64.powi(-(n as i32 + 1));
    let mut rho = PauliSum::new(with_a_span_labels(n, q))?;
    rho.accumulate(&a_tensor_power(I, I, n), Complex64::new(norm, 0.0))?;
    for (a, s, w) in terms {
        rho.accumulate(&a_tensor_power(a, s, n), Complex64::new(w * norm, 0.0))?;
    }
    rho.prune();
    Ok(rho)
}

/// Reduced state of a storage subset with one qubit per pair and `p`
/// signals, on [`storage_span_labels`]: maximally mixed unless `n` and `p`
/// are both odd, when a `(-1)^{(n-1)/2} y Y^{⊗n}` term survives.
pub fn reduced_storage_span_form(n: usize, p: usize, b: &BlochVector) -> Result<PauliSum> {
    check_signals(n, p)?;
    let norm = 2f64.powi(-(n as i32));
    let mut rho = PauliSum::new(storage_span_labels(n, p))?;
    rho.accumulate(&vec![PauliLetter::I; n], Complex64::new(norm, 0.0))?;
    if n % 2 == 1 && p % 2 == 1 {
        let sign = if (n - 1) / 2 % 2 == 0 { 1.0 } else { -1.0 };
        rho.accumulate(&vec![PauliLetter::Y; n], Complex64::new(sign * b.y * norm, 0.0))?;
    }
    rho.prune();
    Ok(rho)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ph(k: i64) -> Option<Phase4> {
        Some(Phase4::i_pow(k))
    }

    #[test]
    fn s_entries() {
        let s1 = s_matrix(1).unwrap();
        assert_eq!(s1.get(0, 1), ph(0));
        assert_eq!(s1.get(2, 3), ph(1));
        assert_eq!(s1.get(3, 2), ph(3));
        let s2 = s_matrix(2).unwrap();
        assert_eq!(s2.get(0, 2), ph(0));
        assert_eq!(s2.get(1, 3), ph(3));
        assert_eq!(s_matrix(3).unwrap().get(3, 0), ph(0));
        assert_eq!(s_matrix(0), Err(Error::InvalidSector(0)));
    }

    #[test]
    fn n_entries() {
        assert_eq!(n_matrix(2).unwrap().get(0, 2), ph(2));
        assert_eq!(n_matrix(1).unwrap().get(2, 3), ph(3));
        assert_eq!(n_matrix(3).unwrap().get(1, 2), ph(3));
    }

    #[test]
    fn c_entries() {
        for n in 1..=8 {
            assert_eq!(c_matrix(n, 1).unwrap().get(0, 1), ph(1));
            assert_eq!(c_matrix(n, 2).unwrap().get(1, 3), ph(0));
            assert_eq!(c_matrix(n, 3).unwrap().get(2, 1), Some(-Phase4::i_pow(-(n as i64))));
        }
    }

    #[test]
    fn tabulated_matches_derived() {
        for j in 1..=3 {
            assert_eq!(s_matrix(j).unwrap(), s_matrix_derived(j).unwrap(), "S_{j}");
            assert_eq!(n_matrix(j).unwrap(), n_matrix_derived(j).unwrap(), "N_{j}");
            for n in 1..=8 {
                assert_eq!(c_matrix(n, j).unwrap(), c_matrix_derived(n, j).unwrap(), "C_{j}^({n})");
            }
        }
    }

    #[test]
    fn l1_l2_l3_entries() {
        for n in 1..=8 {
            for q in 0..=n {
                let s = |k: usize| Phase4::sign_pow(k as i64);
                let l1 = l_matrix(n, q, 1).unwrap();
                assert_eq!(l1.get(0, 1), ph(1));
                assert_eq!(l1.get(1, 0), ph(3));
                assert_eq!(l1.get(2, 3), Some(s(n - q + 1)));
                assert_eq!(l1.get(3, 2), Some(s(n - q + 1)));
                let l2 = l_matrix(n, q, 2).unwrap();
                assert_eq!(l2.get(1, 3), Some(Phase4::MINUS_I.pow(n as u64)));
                assert_eq!(l2.get(3, 1), Some(Phase4::I.pow(n as u64)));
                assert_eq!(l2.get(0, 2), Some(-s(n - q) * Phase4::i_pow(n as i64 + 1)));
                assert_eq!(l2.get(2, 0), Some(-s(n - q) * Phase4::i_pow(-(n as i64 + 1))));
                let l3 = l_matrix(n, q, 3).unwrap();
                assert_eq!(l3.get(0, 3), ph(1));
                assert_eq!(l3.get(3, 0), ph(3));
                assert_eq!(l3.get(1, 2), Some(s(q + 1)));
                assert_eq!(l3.get(2, 1), Some(s(q + 1)));
                for l in [l1, l2, l3] {
                    assert_eq!(l.nonzero_count(), 4);
                }
            }
        }
        assert_eq!(l_matrix(2, 3, 1), Err(Error::InvalidSignalCount { count: 3, n: 2 }));
    }

    #[test]
    fn gamma_examples() {
        use PauliLetter::*;
        for n in 1..=6 {
            for q in 0..=n {
                if (n - q) % 2 == 0 {
                    assert_eq!(gamma(n, q, 1, 3).unwrap().as_signed_letter(), Some((-4, Y)));
                    for r in 0..3 {
                        assert!(gamma(n, q, 1, r).unwrap().is_zero());
                    }
                }
                if n % 2 == 1 && q % 2 == 1 {
                    let s = if (n - 1) / 2 % 2 == 0 { 4 } else { -4 };
                    assert_eq!(gamma(n, q, 2, 2).unwrap().as_signed_letter(), Some((s, I)));
                }
                if q % 2 == 0 {
                    assert_eq!(gamma(n, q, 3, 2).unwrap().as_signed_letter(), Some((-4, X)));
                }
            }
        }
        assert_eq!(gamma(1, 0, 1, 4), Err(Error::InvalidPauliIndex(4)));
    }

    #[test]
    fn gamma_table_builds() {
        let t = GammaTable::new(3, 0).unwrap();
        assert_eq!(t.entry(2).component, 0);
        assert_eq!(t.entry(2).letter, PauliLetter::Y);
        assert_eq!(t.entry(2).coefficient, 4);
    }

    #[test]
    fn n1_examples_from_gamma() {
        let b = BlochVector::new(0.36, 0.48, 0.8).unwrap();
        let r = reduced_with_a_via_gamma(1, 0, &b).unwrap();
        assert_eq!(r.labels(), &[Qubit::A, Qubit::N(1)]);
        let expect = [("II", 0.25), ("ZX", 0.25 * b.y), ("YY", -0.25), ("XZ", -0.25 * b.y)];
        assert_eq!(r.len(), 4);
        for (s, v) in expect {
            assert!((r.coefficient_of(s) - Complex64::new(v, 0.0)).norm() < 1e-15, "{s}");
        }
    }

    #[test]
    fn storage_form_examples() {
        let b = BlochVector::PLUS_Y;
        let r = reduced_storage_span_form(3, 3, &b).unwrap();
        assert_eq!(r.coefficient_of("III"), Complex64::new(0.125, 0.0));
        assert_eq!(r.coefficient_of("YYY"), Complex64::new(-0.125, 0.0));
        let r = reduced_storage_span_form(2, 1, &b).unwrap();
        assert_eq!(r.len(), 1);
        let r = reduced_storage_span_form(1, 1, &b).unwrap();
        assert_eq!(r.coefficient_of("Y"), Complex64::new(0.5, 0.0));
    }

    #[test]
    fn hadamard_pow_zero_is_ones() {
        let m = s_matrix(1).unwrap().hadamard_pow(0);
        assert_eq!(m.nonzero_count(), 16);
    }
}
