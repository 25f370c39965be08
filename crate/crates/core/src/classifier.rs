//! Qubit subsets of the encoded register and the parity rules that classify
//! their informativeness about the input state.
//!
//! Storage-only subsets `B ⊆ R_n` follow one decision tree; subsets
//! `H = {A} ∪ C` follow the complementary one, obtained through `B = R_n \ C`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qubit::Qubit;

/// Largest pair count a [`SubsetSpec`] can represent.
pub const MAX_SUBSET_PAIRS: usize = 31;

/// A set of qubit labels drawn from `{A} ∪ R_n`, stored as pair bitmasks
/// (bit `k-1` for pair `k`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubsetSpec {
    n: usize,
    includes_a: bool,
    signals: u64,
    noises: u64,
}

impl SubsetSpec {
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_SUBSET_PAIRS {
            return Err(Error::InvalidPairCount(n));
        }
        Ok(Self { n, includes_a: false, signals: 0, noises: 0 })
    }

    /// Builds from 1-based pair indices.
    pub fn new(n: usize, includes_a: bool, signals: &[usize], noises: &[usize]) -> Result<Self> {
        let mut s = Self::empty(n)?;
        s.includes_a = includes_a;
        for &k in signals {
            s.insert(Qubit::S(k))?;
        }
        for &k in noises {
            s.insert(Qubit::N(k))?;
        }
        Ok(s)
    }

    pub fn from_labels(n: usize, labels: &[Qubit]) -> Result<Self> {
        let mut s = Self::empty(n)?;
        for &q in labels {
            s.insert(q)?;
        }
        Ok(s)
    }

    /// Parses `A,S1,N2,N3` (case-insensitive, 1-based). The empty string and
    /// `{}` denote the empty subset.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let mut s = Self::empty(n)?;
        let t = text.trim();
        if t.is_empty() || t == "{}" {
            return Ok(s);
        }
        for token in t.split(',') {
            let q: Qubit = token.trim().parse()?;
            s.insert(q)?;
        }
        Ok(s)
    }

    /// Subset of `R_n` (plus `A` if requested) from a register mask: bit
    /// `2(k-1)` is `S_k`, bit `2(k-1)+1` is `N_k`.
    pub fn from_register_mask(n: usize, mask: u64, includes_a: bool) -> Result<Self> {
        let mut s = Self::empty(n)?;
        s.includes_a = includes_a;
        for k in 0..n {
            if mask >> (2 * k) & 1 == 1 {
                s.signals |= 1 << k;
            }
            if mask >> (2 * k + 1) & 1 == 1 {
                s.noises |= 1 << k;
            }
        }
        Ok(s)
    }

    pub fn register_mask(&self) -> u64 {
        (0..self.n).fold(0, |m, k| m | (self.signals >> k & 1) << (2 * k) | (self.noises >> k & 1) << (2 * k + 1))
    }

    /// All `4^n` subsets of `R_n`, each with or without `A`, in mask order.
    pub fn enumerate(n: usize, includes_a: bool) -> Result<impl Iterator<Item = SubsetSpec>> {
        Self::empty(n)?;
        if 2 * n >= 64 {
            return Err(Error::InvalidPairCount(n));
        }
        Ok((0..1u64 << (2 * n)).map(move |m| Self::from_register_mask(n, m, includes_a).expect("n validated")))
    }

    fn insert(&mut self, q: Qubit) -> Result<()> {
        let check = |k: usize| {
            if k == 0 || k > self.n {
                Err(Error::IndexOutOfRange { index: k, n: self.n })
            } else {
                Ok(1u64 << (k - 1))
            }
        };
        let dup = Err(Error::DuplicateLabel(q));
        match q {
            Qubit::A if self.includes_a => return dup,
            Qubit::A => self.includes_a = true,
            Qubit::S(k) => {
                let bit = check(k)?;
                if self.signals & bit != 0 {
                    return dup;
                }
                self.signals |= bit;
            }
            Qubit::N(k) => {
                let bit = check(k)?;
                if self.noises & bit != 0 {
                    return dup;
                }
                self.noises |= bit;
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn includes_a(&self) -> bool {
        self.includes_a
    }

    pub fn signals(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.n).filter(|k| self.signals >> (k - 1) & 1 == 1)
    }

    pub fn noises(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.n).filter(|k| self.noises >> (k - 1) & 1 == 1)
    }

    pub fn contains(&self, q: Qubit) -> bool {
        match q {
            Qubit::A => self.includes_a,
            Qubit::S(k) => k >= 1 && k <= self.n && self.signals >> (k - 1) & 1 == 1,
            Qubit::N(k) => k >= 1 && k <= self.n && self.noises >> (k - 1) & 1 == 1,
        }
    }

    /// Number of signal qubits (`p` for storage sets, `q` for the `C` of `H`).
    pub fn signal_count(&self) -> usize {
        self.signals.count_ones() as usize
    }

    pub fn noise_count(&self) -> usize {
        self.noises.count_ones() as usize
    }

    /// Number of register qubits, excluding `A`.
    pub fn register_len(&self) -> usize {
        self.signal_count() + self.noise_count()
    }

    pub fn len(&self) -> usize {
        self.register_len() + usize::from(self.includes_a)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Labels in reporting order: `A`, signals ascending, noises ascending.
    pub fn labels(&self) -> Vec<Qubit> {
        let mut v = Vec::with_capacity(self.len());
        if self.includes_a {
            v.push(Qubit::A);
        }
        v.extend(self.signals().map(Qubit::S));
        v.extend(self.noises().map(Qubit::N));
        v
    }

    /// The register part `C` of `H = {A} ∪ C`.
    pub fn without_a(&self) -> SubsetSpec {
        SubsetSpec { includes_a: false, ..*self }
    }

    pub fn with_a(&self) -> SubsetSpec {
        SubsetSpec { includes_a: true, ..*self }
    }

    fn all_pairs(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    /// Every pair contributes exactly one qubit (`SPAN` with size `n`).
    pub fn is_one_per_pair(&self) -> bool {
        self.signals ^ self.noises == self.all_pairs() && self.signals & self.noises == 0
    }
}

impl fmt::Display for SubsetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("{}");
        }
        let parts: Vec<String> = self.labels().iter().map(Qubit::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl Serialize for SubsetSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `FULL-PAIR`: some pair has both `S_k` and `N_k`.
pub fn has_full_pair(s: &SubsetSpec) -> bool {
    s.signals & s.noises != 0
}

/// `SPAN`: every pair has at least one member present.
pub fn spans_all_pairs(s: &SubsetSpec) -> bool {
    s.signals | s.noises == s.all_pairs()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum InformativenessClass {
    FullyInformative,
    PartiallyInformative,
    CompletelyUninformative,
}

impl InformativenessClass {
    pub fn short(self) -> &'static str {
        match self {
            InformativenessClass::FullyInformative => "FI",
            InformativenessClass::PartiallyInformative => "PI",
            InformativenessClass::CompletelyUninformative => "CU",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            InformativenessClass::FullyInformative => "FullyInformative",
            InformativenessClass::PartiallyInformative => "PartiallyInformative",
            InformativenessClass::CompletelyUninformative => "CompletelyUninformative",
        }
    }
}

impl fmt::Display for InformativenessClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InformativenessClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "FullyInformative" | "FI" => Ok(Self::FullyInformative),
            "PartiallyInformative" | "PI" => Ok(Self::PartiallyInformative),
            "CompletelyUninformative" | "CU" => Ok(Self::CompletelyUninformative),
            _ => Err(Error::Parse(s.to_string())),
        }
    }
}

/// Which decision tree a subset belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `B ⊆ R_n`.
    Storage,
    /// `H = {A} ∪ C`.
    WithA,
}

impl Family {
    pub fn of(s: &SubsetSpec) -> Family {
        if s.includes_a() {
            Family::WithA
        } else {
            Family::Storage
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Storage => "storage",
            Family::WithA => "with-a",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A node of the decision trees, recorded in the order it fires.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Condition {
    #[serde(rename = "MISSING-PAIR")]
    MissingPair,
    #[serde(rename = "SPAN")]
    Span,
    #[serde(rename = "FULL-PAIR")]
    FullPair,
    #[serde(rename = "ALL-PAIRS-INCOMPLETE")]
    AllPairsIncomplete,
    #[serde(rename = "SIZE<n")]
    SizeBelowN,
    #[serde(rename = "SIZE=n")]
    SizeEqualsN,
    #[serde(rename = "SIZE>n")]
    SizeAboveN,
    #[serde(rename = "n-EVEN")]
    NEven,
    #[serde(rename = "n-ODD")]
    NOdd,
    #[serde(rename = "SIGNALS-EVEN")]
    SignalsEven,
    #[serde(rename = "SIGNALS-ODD")]
    SignalsOdd,
}

impl Condition {
    pub fn name(self) -> &'static str {
        match self {
            Condition::MissingPair => "MISSING-PAIR",
            Condition::Span => "SPAN",
            Condition::FullPair => "FULL-PAIR",
            Condition::AllPairsIncomplete => "ALL-PAIRS-INCOMPLETE",
            Condition::SizeBelowN => "SIZE<n",
            Condition::SizeEqualsN => "SIZE=n",
            Condition::SizeAboveN => "SIZE>n",
            Condition::NEven => "n-EVEN",
            Condition::NOdd => "n-ODD",
            Condition::SignalsEven => "SIGNALS-EVEN",
            Condition::SignalsOdd => "SIGNALS-ODD",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Predicted class plus the path through the decision tree that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub class: InformativenessClass,
    pub rule_path: Vec<Condition>,
}

impl Decision {
    pub fn path_string(&self) -> String {
        self.rule_path.iter().map(|c| c.name()).collect::<Vec<_>>().join(" > ")
    }
}

/// Parity branch shared by both trees once the size-`n` case is reached.
fn parity_branch(n: usize, signals: usize, path: &mut Vec<Condition>) -> (bool, bool) {
    let n_even = n % 2 == 0;
    path.push(if n_even { Condition::NEven } else { Condition::NOdd });
    if n_even {
        return (true, false);
    }
    let s_odd = signals % 2 == 1;
    path.push(if s_odd { Condition::SignalsOdd } else { Condition::SignalsEven });
    (false, s_odd)
}

/// Decision tree for `B ⊆ R_n`.
pub fn storage_decision(b: &SubsetSpec) -> Result<Decision> {
    use Condition::*;
    use InformativenessClass::*;
    if b.includes_a() {
        return Err(Error::ContainsA);
    }
    let n = b.n();
    let mut path = Vec::new();
    if !spans_all_pairs(b) {
        path.push(MissingPair);
        return Ok(Decision { class: CompletelyUninformative, rule_path: path });
    }
    path.push(Span);
    let class = if b.register_len() > n {
        path.extend([SizeAboveN, FullPair]);
        debug_assert!(has_full_pair(b));
        FullyInformative
    } else {
        path.push(SizeEqualsN);
        match parity_branch(n, b.signal_count(), &mut path) {
            (true, _) => CompletelyUninformative,
            (false, false) => CompletelyUninformative,
            (false, true) => PartiallyInformative,
        }
    };
    Ok(Decision { class, rule_path: path })
}

pub fn classify_storage(b: &SubsetSpec) -> Result<InformativenessClass> {
    storage_decision(b).map(|d| d.class)
}

/// Decision tree for `H = {A} ∪ C`; `c` is the register part and must not contain `A`.
pub fn with_a_decision(c: &SubsetSpec) -> Result<Decision> {
    use Condition::*;
    use InformativenessClass::*;
    if c.includes_a() {
        return Err(Error::ContainsA);
    }
    let n = c.n();
    let mut path = Vec::new();
    if has_full_pair(c) {
        path.push(FullPair);
        return Ok(Decision { class: FullyInformative, rule_path: path });
    }
    path.push(AllPairsIncomplete);
    let class = if c.register_len() < n {
        path.extend([SizeBelowN, MissingPair]);
        CompletelyUninformative
    } else {
        path.push(SizeEqualsN);
        match parity_branch(n, c.signal_count(), &mut path) {
            (true, _) => FullyInformative,
            (false, true) => FullyInformative,
            (false, false) => PartiallyInformative,
        }
    };
    Ok(Decision { class, rule_path: path })
}

pub fn classify_with_a(c: &SubsetSpec) -> Result<InformativenessClass> {
    with_a_decision(c).map(|d| d.class)
}

/// Dispatches on whether `A` is in the subset.
pub fn decide(s: &SubsetSpec) -> Decision {
    if s.includes_a() { with_a_decision(&s.without_a()) } else { storage_decision(s) }
        .expect("A removed before dispatch")
}

/// `B = R_n \ C`. `A` is not part of the register and never appears in the result.
pub fn complement_in_register(c: &SubsetSpec) -> SubsetSpec {
    let all = c.all_pairs();
    SubsetSpec { n: c.n, includes_a: false, signals: !c.signals & all, noises: !c.noises & all }
}
