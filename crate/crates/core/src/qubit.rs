use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A qubit of the encrypted-cloning register: the transformed input `A`, or
/// the signal / noise half of pair `k` (1-based).
///
/// The derived ordering (`A`, then signals ascending, then noises ascending)
/// is the order in which reduced states are reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Qubit {
    A,
    S(usize),
    N(usize),
}

impl Qubit {
    pub fn pair(self) -> Option<usize> {
        match self {
            Qubit::A => None,
            Qubit::S(k) | Qubit::N(k) => Some(k),
        }
    }
}

impl fmt::Display for Qubit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Qubit::A => f.write_str("A"),
            Qubit::S(k) => write!(f, "S{k}"),
            Qubit::N(k) => write!(f, "N{k}"),
        }
    }
}

impl FromStr for Qubit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let unknown = || Error::UnknownLabel(t.to_string());
        let mut chars = t.chars();
        let head = chars.next().ok_or_else(unknown)?.to_ascii_uppercase();
        let rest = chars.as_str();
        match head {
            'A' if rest.is_empty() => Ok(Qubit::A),
            'S' | 'N' => {
                if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(unknown());
                }
                let k: usize = rest.parse().map_err(|_| unknown())?;
                if k == 0 {
                    return Err(unknown());
                }
                Ok(if head == 'S' { Qubit::S(k) } else { Qubit::N(k) })
            }
            _ => Err(unknown()),
        }
    }
}

impl Serialize for Qubit {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Global qubit order of the encoded state: `A, S1, N1, S2, N2, ..., Sn, Nn`.
pub fn global_labels(n: usize) -> Vec<Qubit> {
    let mut labels = Vec::with_capacity(2 * n + 1);
    labels.push(Qubit::A);
    for k in 1..=n {
        labels.push(Qubit::S(k));
        labels.push(Qubit::N(k));
    }
    labels
}

/// Fails with [`Error::DuplicateLabel`] on the first repeated label.
pub fn ensure_distinct(labels: &[Qubit]) -> Result<()> {
    for (i, q) in labels.iter().enumerate() {
        if labels[..i].contains(q) {
            return Err(Error::DuplicateLabel(*q));
        }
    }
    Ok(())
}

pub fn join_labels(labels: &[Qubit]) -> String {
    labels.iter().map(Qubit::to_string).collect::<Vec<_>>().join(",")
}
