//! Exact single-qubit Pauli algebra, Pauli strings on explicit qubit lists,
//! and complex-weighted Pauli sums.
//!
//! Phases of products are tracked exactly as powers of `i` ([`Phase4`]) and
//! only become floating-point when folded into a [`PauliSum`] coefficient.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Mul, Neg};

use num_complex::Complex64;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

use crate::dense::DenseOperator;
use crate::error::{Error, Result};
use crate::qubit::{ensure_distinct, join_labels, Qubit};

/// Coefficients with magnitude at or below this are dropped from a [`PauliSum`].
pub const PRUNE_TOLERANCE: f64 = 1e-12;

/// Largest register a [`PauliSum`] can address (two bits per qubit in a `u128` key).
pub const MAX_PAULI_QUBITS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

impl PauliLetter {
    pub const ALL: [PauliLetter; 4] = [PauliLetter::I, PauliLetter::X, PauliLetter::Y, PauliLetter::Z];

    /// Index `μ` of `σ_μ`.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Result<Self> {
        Self::ALL.get(index).copied().ok_or(Error::InvalidPauliIndex(index))
    }

    pub fn as_char(self) -> char {
        match self {
            PauliLetter::I => 'I',
            PauliLetter::X => 'X',
            PauliLetter::Y => 'Y',
            PauliLetter::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(PauliLetter::I),
            'X' => Some(PauliLetter::X),
            'Y' => Some(PauliLetter::Y),
            'Z' => Some(PauliLetter::Z),
            _ => None,
        }
    }

    /// `σ^T = ±σ`; only `Y` flips sign.
    pub fn transpose_sign(self) -> Phase4 {
        if self == PauliLetter::Y {
            Phase4::MINUS_ONE
        } else {
            Phase4::ONE
        }
    }

    /// Dense 2×2 matrix, row-major.
    pub fn matrix(self) -> [[Complex64; 2]; 2] {
        let o = Complex64::new(0.0, 0.0);
        let l = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            PauliLetter::I => [[l, o], [o, l]],
            PauliLetter::X => [[o, l], [l, o]],
            PauliLetter::Y => [[o, -i], [i, o]],
            PauliLetter::Z => [[l, o], [o, -l]],
        }
    }

    fn x_bit(self) -> bool {
        matches!(self, PauliLetter::X | PauliLetter::Y)
    }

    fn z_bit(self) -> bool {
        matches!(self, PauliLetter::Y | PauliLetter::Z)
    }

    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => PauliLetter::I,
            (true, false) => PauliLetter::X,
            (true, true) => PauliLetter::Y,
            (false, true) => PauliLetter::Z,
        }
    }
}

impl fmt::Display for PauliLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A unit phase `i^k`, `k` in `0..4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Phase4(u8);

impl Phase4 {
    pub const ONE: Phase4 = Phase4(0);
    pub const I: Phase4 = Phase4(1);
    pub const MINUS_ONE: Phase4 = Phase4(2);
    pub const MINUS_I: Phase4 = Phase4(3);

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        Phase4(k.rem_euclid(4) as u8)
    }

    /// `(-1)^k`.
    pub fn sign_pow(k: i64) -> Self {
        Phase4::i_pow(2 * k.rem_euclid(2))
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    /// Complex conjugate, which is also the inverse.
    pub fn conj(self) -> Self {
        Phase4((4 - self.0) % 4)
    }

    pub fn pow(self, k: u64) -> Self {
        Phase4(((self.0 as u64 * (k % 4)) % 4) as u8)
    }

    pub fn to_complex(self) -> Complex64 {
        match self.0 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }

    pub fn is_real(self) -> bool {
        self.0 % 2 == 0
    }

    fn prefix(self) -> &'static str {
        ["+", "+i", "-", "-i"][self.0 as usize]
    }
}

impl Mul for Phase4 {
    type Output = Phase4;

    fn mul(self, rhs: Phase4) -> Phase4 {
        Phase4((self.0 + rhs.0) % 4)
    }
}

impl Neg for Phase4 {
    type Output = Phase4;

    fn neg(self) -> Phase4 {
        self * Phase4::MINUS_ONE
    }
}

impl fmt::Display for Phase4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["+1", "+i", "-1", "-i"][self.0 as usize])
    }
}

/// `σ_a σ_b = phase · σ_c`.
pub fn pauli_product(a: PauliLetter, b: PauliLetter) -> (Phase4, PauliLetter) {
    use PauliLetter::*;
    match (a, b) {
        (I, p) | (p, I) => (Phase4::ONE, p),
        (p, q) if p == q => (Phase4::ONE, I),
        (X, Y) => (Phase4::I, Z),
        (Y, Z) => (Phase4::I, X),
        (Z, X) => (Phase4::I, Y),
        (Y, X) => (Phase4::MINUS_I, Z),
        (Z, Y) => (Phase4::MINUS_I, X),
        (X, Z) => (Phase4::MINUS_I, Y),
        _ => unreachable!(),
    }
}

/// Product of three letters `σ_a σ_b σ_c`.
pub fn pauli_triple(a: PauliLetter, b: PauliLetter, c: PauliLetter) -> (Phase4, PauliLetter) {
    let (p1, ab) = pauli_product(a, b);
    let (p2, abc) = pauli_product(ab, c);
    (p1 * p2, abc)
}

/// A phase times a tensor product of Pauli letters, one per labelled qubit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    phase: Phase4,
    letters: Vec<PauliLetter>,
    labels: Vec<Qubit>,
}

impl PauliString {
    pub fn new(phase: Phase4, letters: Vec<PauliLetter>, labels: Vec<Qubit>) -> Result<Self> {
        ensure_distinct(&labels)?;
        if letters.len() != labels.len() {
            return Err(Error::DimensionMismatch { dim: letters.len(), qubits: labels.len() });
        }
        Ok(Self { phase, letters, labels })
    }

    pub fn identity(labels: Vec<Qubit>) -> Result<Self> {
        let letters = vec![PauliLetter::I; labels.len()];
        Self::new(Phase4::ONE, letters, labels)
    }

    /// Parses the text form `<phase><letters>`, e.g. `-iXYZI`. The phase is
    /// one of `+`, `+i`, `-`, `-i`, `i` or absent (`+1`).
    pub fn parse(text: &str, labels: Vec<Qubit>) -> Result<Self> {
        let t = text.trim();
        let (phase, rest) = if let Some(r) = t.strip_prefix("-i") {
            (Phase4::MINUS_I, r)
        } else if let Some(r) = t.strip_prefix("+i") {
            (Phase4::I, r)
        } else if let Some(r) = t.strip_prefix('-') {
            (Phase4::MINUS_ONE, r)
        } else if let Some(r) = t.strip_prefix('+') {
            (Phase4::ONE, r)
        } else if let Some(r) = t.strip_prefix('i') {
            (Phase4::I, r)
        } else {
            (Phase4::ONE, t)
        };
        let letters = parse_letters(rest)?;
        Self::new(phase, letters, labels)
    }

    pub fn phase(&self) -> Phase4 {
        self.phase
    }

    pub fn letters(&self) -> &[PauliLetter] {
        &self.letters
    }

    pub fn labels(&self) -> &[Qubit] {
        &self.labels
    }

    pub fn multiply(&self, other: &PauliString) -> Result<PauliString> {
        if self.labels != other.labels {
            return Err(label_mismatch(&self.labels, &other.labels));
        }
        let mut phase = self.phase * other.phase;
        let letters = self
            .letters
            .iter()
            .zip(&other.letters)
            .map(|(&a, &b)| {
                let (p, c) = pauli_product(a, b);
                phase = phase * p;
                c
            })
            .collect();
        Ok(PauliString { phase, letters, labels: self.labels.clone() })
    }

    /// Pauli letters are Hermitian, so only the phase is conjugated.
    pub fn adjoint(&self) -> PauliString {
        PauliString { phase: self.phase.conj(), ..self.clone() }
    }

    pub fn letters_string(&self) -> String {
        self.letters.iter().map(|l| l.as_char()).collect()
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.phase.prefix(), self.letters_string())
    }
}

pub fn parse_letters(text: &str) -> Result<Vec<PauliLetter>> {
    text.chars().map(|c| PauliLetter::from_char(c).ok_or_else(|| Error::Parse(text.to_string()))).collect()
}

fn label_mismatch(a: &[Qubit], b: &[Qubit]) -> Error {
    Error::LabelMismatch { left: join_labels(a), right: join_labels(b) }
}

/// Base-4 key with qubit 0 in the most significant digit, so that key order
/// equals lexicographic letter order.
type Key = u128;

fn digit(key: Key, m: usize, pos: usize) -> usize {
    ((key >> (2 * (m - 1 - pos))) & 3) as usize
}

fn pack(letters: &[PauliLetter]) -> Key {
    letters.iter().fold(0, |k, l| (k << 2) | l.index() as Key)
}

fn unpack(key: Key, m: usize) -> Vec<PauliLetter> {
    (0..m).map(|p| PauliLetter::ALL[digit(key, m, p)]).collect()
}

/// Bitmask (bit `m-1-p` for qubit `p`, matching dense indexing) of the X and Z parts.
fn xz_masks(key: Key, m: usize) -> (usize, usize) {
    let (mut x, mut z) = (0usize, 0usize);
    for p in 0..m {
        let l = PauliLetter::ALL[digit(key, m, p)];
        let bit = 1usize << (m - 1 - p);
        if l.x_bit() {
            x |= bit;
        }
        if l.z_bit() {
            z |= bit;
        }
    }
    (x, z)
}

fn key_from_masks(x: usize, z: usize, m: usize) -> Key {
    (0..m).fold(0, |k, p| {
        let bit = 1usize << (m - 1 - p);
        let l = PauliLetter::from_bits(x & bit != 0, z & bit != 0);
        (k << 2) | l.index() as Key
    })
}

/// A complex-weighted sum of Pauli strings on an ordered qubit list.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    labels: Vec<Qubit>,
    terms: BTreeMap<Key, Complex64>,
}

impl PauliSum {
    /// The zero operator on `labels`.
    pub fn new(labels: Vec<Qubit>) -> Result<Self> {
        ensure_distinct(&labels)?;
        if labels.len() > MAX_PAULI_QUBITS {
            return Err(Error::PauliLimit { qubits: labels.len(), limit: MAX_PAULI_QUBITS });
        }
        Ok(Self { labels, terms: BTreeMap::new() })
    }

    /// Builds a sum from `(letters, coefficient)` text pairs such as `("XZ", 0.25)`.
    pub fn from_terms<'a, I>(labels: Vec<Qubit>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, Complex64)>,
    {
        let mut sum = Self::new(labels)?;
        for (text, c) in terms {
            let letters = parse_letters(text)?;
            sum.accumulate(&letters, c)?;
        }
        sum.prune();
        Ok(sum)
    }

    pub fn labels(&self) -> &[Qubit] {
        &self.labels
    }

    pub fn num_qubits(&self) -> usize {
        self.labels.len()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff · letters`, dropping the entry if it cancels to below
    /// [`PRUNE_TOLERANCE`].
    pub fn add_term(&mut self, letters: &[PauliLetter], coeff: Complex64) -> Result<()> {
        let key = self.key_for(letters)?;
        let entry = self.terms.entry(key).or_default();
        *entry += coeff;
        if entry.norm() <= PRUNE_TOLERANCE {
            self.terms.remove(&key);
        }
        Ok(())
    }

    /// Adds `coeff · s`, folding the string's phase into the coefficient.
    pub fn add_string(&mut self, s: &PauliString, coeff: Complex64) -> Result<()> {
        if s.labels != self.labels {
            return Err(label_mismatch(&self.labels, &s.labels));
        }
        self.add_term(&s.letters, coeff * s.phase.to_complex())
    }

    /// Unpruned accumulation; callers must [`prune`](Self::prune) afterwards.
    pub(crate) fn accumulate(&mut self, letters: &[PauliLetter], coeff: Complex64) -> Result<()> {
        let key = self.key_for(letters)?;
        *self.terms.entry(key).or_default() += coeff;
        Ok(())
    }

    pub(crate) fn accumulate_key(&mut self, key: u128, coeff: Complex64) {
        *self.terms.entry(key).or_default() += coeff;
    }

    pub fn prune(&mut self) {
        self.terms.retain(|_, c| c.norm() > PRUNE_TOLERANCE);
    }

    fn key_for(&self, letters: &[PauliLetter]) -> Result<Key> {
        if letters.len() != self.labels.len() {
            return Err(Error::DimensionMismatch { dim: letters.len(), qubits: self.labels.len() });
        }
        Ok(pack(letters))
    }

    pub fn coefficient(&self, letters: &[PauliLetter]) -> Complex64 {
        if letters.len() != self.labels.len() {
            return Complex64::new(0.0, 0.0);
        }
        self.terms.get(&pack(letters)).copied().unwrap_or_default()
    }

    /// Coefficient looked up by letter text, e.g. `"ZX"`. Unknown letters give zero.
    pub fn coefficient_of(&self, letters: &str) -> Complex64 {
        parse_letters(letters).map(|l| self.coefficient(&l)).unwrap_or_default()
    }

    /// Terms in lexicographic letter order (`I < X < Y < Z`, first qubit most significant).
    pub fn iter(&self) -> impl Iterator<Item = (Vec<PauliLetter>, Complex64)> + '_ {
        let m = self.labels.len();
        self.terms.iter().map(move |(&k, &c)| (unpack(k, m), c))
    }

    pub fn scale(&self, factor: Complex64) -> PauliSum {
        let mut out = self.clone();
        out.terms.values_mut().for_each(|c| *c *= factor);
        out.prune();
        out
    }

    /// `a·self + b·other`.
    pub fn linear_combination(&self, a: f64, other: &PauliSum, b: f64) -> Result<PauliSum> {
        if self.labels != other.labels {
            return Err(label_mismatch(&self.labels, &other.labels));
        }
        let mut out = PauliSum { labels: self.labels.clone(), terms: BTreeMap::new() };
        for (&k, &c) in &self.terms {
            out.accumulate_key(k, c * a);
        }
        for (&k, &c) in &other.terms {
            out.accumulate_key(k, c * b);
        }
        out.prune();
        Ok(out)
    }

    pub fn add(&self, other: &PauliSum) -> Result<PauliSum> {
        self.linear_combination(1.0, other, 1.0)
    }

    /// `Tr(ρ) = 2^m · c_I`.
    pub fn trace(&self) -> Complex64 {
        let m = self.labels.len();
        self.terms.get(&0).copied().unwrap_or_default() * 2f64.powi(m as i32)
    }

    /// `Tr(ρ†ρ) = 2^m Σ|c_P|²`; equals the purity for Hermitian `ρ`.
    pub fn hilbert_schmidt_norm_sqr(&self) -> f64 {
        let m = self.labels.len();
        self.terms.values().map(|c| c.norm_sqr()).sum::<f64>() * 2f64.powi(m as i32)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.im.abs() <= tol)
    }

    pub fn max_abs_coefficient(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest coefficientwise difference. Label lists must match exactly.
    pub fn max_abs_diff(&self, other: &PauliSum) -> Result<f64> {
        if self.labels != other.labels {
            return Err(label_mismatch(&self.labels, &other.labels));
        }
        let zero = Complex64::new(0.0, 0.0);
        let mut worst = 0.0f64;
        for (k, &a) in &self.terms {
            let b = other.terms.get(k).copied().unwrap_or(zero);
            worst = worst.max((a - b).norm());
        }
        for (k, &b) in &other.terms {
            if !self.terms.contains_key(k) {
                worst = worst.max(b.norm());
            }
        }
        Ok(worst)
    }

    /// Same operator on a relabelled register (positions kept, names replaced).
    pub fn relabel(&self, labels: Vec<Qubit>) -> Result<PauliSum> {
        ensure_distinct(&labels)?;
        if labels.len() != self.labels.len() {
            return Err(label_mismatch(&self.labels, &labels));
        }
        Ok(PauliSum { labels, terms: self.terms.clone() })
    }

    /// Traces out every qubit not in `keep`; the result is on `keep` in the
    /// given order. Strings acting non-trivially on a traced qubit vanish and
    /// the survivors pick up a factor 2 per traced qubit.
    pub fn partial_trace(&self, keep: &[Qubit]) -> Result<PauliSum> {
        ensure_distinct(keep)?;
        let m = self.labels.len();
        let positions = positions_of(&self.labels, keep)?;
        let mut traced_support: Key = 0;
        for p in 0..m {
            if !positions.contains(&p) {
                traced_support |= 1 << (2 * (m - 1 - p));
            }
        }
        // A digit d is non-identity iff (d | d >> 1) & 1 == 1.
        let low = traced_support;
        let factor = 2f64.powi((m - keep.len()) as i32);
        let mut out = PauliSum { labels: keep.to_vec(), terms: BTreeMap::new() };
        for (&k, &c) in &self.terms {
            if (k | (k >> 1)) & low != 0 {
                continue;
            }
            let reduced = positions.iter().fold(0 as Key, |acc, &p| (acc << 2) | digit(k, m, p) as Key);
            out.accumulate_key(reduced, c * factor);
        }
        out.prune();
        Ok(out)
    }

    /// Dense matrix `Σ c_P ⊗σ`, refusing registers above `limit` qubits.
    pub fn to_dense(&self, limit: usize) -> Result<DenseOperator> {
        let m = self.labels.len();
        if m > limit {
            return Err(Error::DenseLimit { qubits: m, limit });
        }
        let dim = 1usize << m;
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (&k, &c) in &self.terms {
            let (x, z) = xz_masks(k, m);
            let base = c * Phase4::i_pow((x & z).count_ones() as i64).to_complex();
            for col in 0..dim {
                let row = col ^ x;
                let v = if (col & z).count_ones() % 2 == 0 { base } else { -base };
                data[row * dim + col] += v;
            }
        }
        DenseOperator::from_raw(self.labels.clone(), data)
    }

    /// Pauli decomposition `c_P = Tr(P·d) / 2^m` of a dense operator.
    ///
    /// For a fixed X-pattern the Z-dependence is a Walsh–Hadamard transform of
    /// the matching off-diagonal, so the whole expansion costs `O(m·4^m)`.
    pub fn from_dense(d: &DenseOperator) -> Result<PauliSum> {
        let m = d.num_qubits();
        let dim = d.dim();
        let mut out = PauliSum::new(d.labels().to_vec())?;
        let norm = 1.0 / dim as f64;
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        for x in 0..dim {
            for (j, slot) in v.iter_mut().enumerate() {
                *slot = d.get(j, j ^ x);
            }
            walsh_hadamard(&mut v);
            for (z, &w) in v.iter().enumerate() {
                let c = w * Phase4::i_pow((x & z).count_ones() as i64).to_complex() * norm;
                if c.norm() > PRUNE_TOLERANCE {
                    out.terms.insert(key_from_masks(x, z, m), c);
                }
            }
        }
        Ok(out)
    }

    /// Rebuilds a sum from its JSON term list (see the `Serialize` impl).
    pub fn from_json(labels: Vec<Qubit>, json: &str) -> Result<PauliSum> {
        let entries: Vec<TermJson> = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
        let mut sum = PauliSum::new(labels)?;
        for e in entries {
            let letters = parse_letters(&e.string)?;
            sum.accumulate(&letters, Complex64::new(e.re, e.im))?;
        }
        sum.prune();
        Ok(sum)
    }
}

/// A sum flattened for repeated partial traces: each term carries a bitmask
/// of the qubit positions it acts on, so tracing down to a subset is one mask
/// test per term.
#[derive(Debug, Clone)]
pub struct SupportIndex {
    labels: Vec<Qubit>,
    terms: Vec<(Key, u64, Complex64)>,
}

impl SupportIndex {
    pub fn new(sum: &PauliSum) -> Self {
        let m = sum.labels.len();
        let terms = sum
            .terms
            .iter()
            .map(|(&k, &c)| {
                let support = (0..m).filter(|&p| digit(k, m, p) != 0).fold(0u64, |s, p| s | 1 << p);
                (k, support, c)
            })
            .collect();
        Self { labels: sum.labels.clone(), terms }
    }

    pub fn labels(&self) -> &[Qubit] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same result as [`PauliSum::partial_trace`].
    pub fn partial_trace(&self, keep: &[Qubit]) -> Result<PauliSum> {
        ensure_distinct(keep)?;
        let m = self.labels.len();
        let positions = positions_of(&self.labels, keep)?;
        let kept = positions.iter().fold(0u64, |s, p| s | 1 << p);
        let factor = 2f64.powi((m - keep.len()) as i32);
        let mut out = PauliSum::new(keep.to_vec())?;
        for &(k, support, c) in &self.terms {
            if support & !kept != 0 {
                continue;
            }
            let reduced = positions.iter().fold(0 as Key, |acc, &p| (acc << 2) | digit(k, m, p) as Key);
            out.accumulate_key(reduced, c * factor);
        }
        out.prune();
        Ok(out)
    }
}

fn positions_of(labels: &[Qubit], keep: &[Qubit]) -> Result<Vec<usize>> {
    keep.iter().map(|q| labels.iter().position(|l| l == q).ok_or(Error::MissingLabel(*q))).collect()
}

impl Serialize for PauliLetter {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_char(self.as_char())
    }
}

fn walsh_hadamard(v: &mut [Complex64]) {
    let n = v.len();
    let mut h = 1;
    while h < n {
        for block in (0..n).step_by(2 * h) {
            for i in block..block + h {
                let (a, b) = (v[i], v[i + h]);
                v[i] = a + b;
                v[i + h] = a - b;
            }
        }
        h *= 2;
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    string: String,
    re: f64,
    im: f64,
}

/// Serialises as `[{"string": "XYZ", "re": 0.25, "im": 0.0}, ...]` in letter order.
impl Serialize for PauliSum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (letters, c) in self.iter() {
            seq.serialize_element(&TermJson {
                string: letters.iter().map(|l| l.as_char()).collect(),
                re: c.re,
                im: c.im,
            })?;
        }
        seq.end()
    }
}
