//! Dense state vectors and operators on explicit, ordered qubit lists.
//!
//! Basis index convention: the first label is the most significant bit, so
//! `a ⊗ b` is the ordinary Kronecker product.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::qubit::{ensure_distinct, join_labels, Qubit};

/// Default ceiling for the dense path: 9 qubits, i.e. `n ≤ 4` pairs plus `A`.
pub const DEFAULT_DENSE_QUBITS: usize = 9;

pub const HERMITIAN_TOLERANCE: f64 = 1e-12;
pub const TRACE_TOLERANCE: f64 = 1e-12;
pub const EIGENVALUE_FLOOR: f64 = -1e-10;
pub const STATE_NORM_TOLERANCE: f64 = 1e-12;
pub const BLOCH_NORM_TOLERANCE: f64 = 1e-10;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Index maps splitting a register into a kept block (in `keep` order) and the rest.
///
/// The global basis index of (kept index `a`, rest index `t`) is `keep[a] | rest[t]`.
struct Split {
    keep: Vec<usize>,
    rest: Vec<usize>,
}

impl Split {
    fn new(labels: &[Qubit], keep: &[Qubit]) -> Result<Self> {
        ensure_distinct(keep)?;
        let m = labels.len();
        let kept_pos = keep
            .iter()
            .map(|q| labels.iter().position(|l| l == q).ok_or(Error::MissingLabel(*q)))
            .collect::<Result<Vec<_>>>()?;
        let rest_pos: Vec<usize> = (0..m).filter(|p| !kept_pos.contains(p)).collect();
        Ok(Self { keep: scatter_table(&kept_pos, m), rest: scatter_table(&rest_pos, m) })
    }
}

fn scatter_table(positions: &[usize], m: usize) -> Vec<usize> {
    let k = positions.len();
    (0..1usize << k)
        .map(|local| {
            positions.iter().enumerate().fold(
                0,
                |g, (i, &p)| {
                    if local >> (k - 1 - i) & 1 == 1 {
                        g | 1 << (m - 1 - p)
                    } else {
                        g
                    }
                },
            )
        })
        .collect()
}

fn qubits_for_dim(dim: usize) -> Result<usize> {
    if dim == 0 || !dim.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(dim));
    }
    Ok(dim.trailing_zeros() as usize)
}

/// A normalised pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    labels: Vec<Qubit>,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn new(labels: Vec<Qubit>, amps: Vec<Complex64>) -> Result<Self> {
        ensure_distinct(&labels)?;
        let m = qubits_for_dim(amps.len())?;
        if m != labels.len() {
            return Err(Error::DimensionMismatch { dim: amps.len(), qubits: labels.len() });
        }
        let s = Self { labels, amps };
        let norm = s.norm();
        if (norm - 1.0).abs() > STATE_NORM_TOLERANCE {
            return Err(Error::Parse(format!("state norm {norm} is not 1")));
        }
        Ok(s)
    }

    pub fn basis(labels: Vec<Qubit>, index: usize) -> Result<Self> {
        let mut amps = vec![zero(); 1 << labels.len()];
        *amps.get_mut(index).ok_or(Error::NotPowerOfTwo(index))? = Complex64::new(1.0, 0.0);
        Self::new(labels, amps)
    }

    pub fn labels(&self) -> &[Qubit] {
        &self.labels
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn num_qubits(&self) -> usize {
        self.labels.len()
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        let labels = concat_labels(&self.labels, &other.labels)?;
        let amps = self.amps.iter().flat_map(|a| other.amps.iter().map(move |b| a * b)).collect();
        Ok(StateVector { labels, amps })
    }

    /// Applies `op` to the qubits it is labelled with, identity elsewhere.
    pub fn apply(&self, op: &DenseOperator) -> Result<StateVector> {
        let split = Split::new(&self.labels, &op.labels)?;
        let d = op.dim;
        let mut out = vec![zero(); self.amps.len()];
        let mut column = vec![zero(); d];
        for &t in &split.rest {
            for (b, slot) in column.iter_mut().enumerate() {
                *slot = self.amps[split.keep[b] | t];
            }
            for a in 0..d {
                let row = &op.data[a * d..(a + 1) * d];
                out[split.keep[a] | t] = row.iter().zip(&column).map(|(x, y)| x * y).sum();
            }
        }
        Ok(StateVector { labels: self.labels.clone(), amps: out })
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn density(&self) -> DenseOperator {
        let data = self.amps.iter().flat_map(|a| self.amps.iter().map(move |b| a * b.conj())).collect();
        DenseOperator { labels: self.labels.clone(), dim: self.amps.len(), data }
    }

    /// Reduced density matrix on `keep` (in that order), computed directly
    /// from the amplitudes.
    pub fn reduced_density(&self, keep: &[Qubit]) -> Result<DenseOperator> {
        let split = Split::new(&self.labels, keep)?;
        let d = split.keep.len();
        let mut data = vec![zero(); d * d];
        for &t in &split.rest {
            for a in 0..d {
                let va = self.amps[split.keep[a] | t];
                if va == zero() {
                    continue;
                }
                for b in 0..d {
                    data[a * d + b] += va * self.amps[split.keep[b] | t].conj();
                }
            }
        }
        Ok(DenseOperator { labels: keep.to_vec(), dim: d, data })
    }

    /// Bloch vector `(⟨X⟩, ⟨Y⟩, ⟨Z⟩)` of a single-qubit state.
    pub fn bloch(&self) -> Result<[f64; 3]> {
        if self.amps.len() != 2 {
            return Err(Error::DimensionMismatch { dim: self.amps.len(), qubits: 1 });
        }
        let (a0, a1) = (self.amps[0], self.amps[1]);
        let c = a0.conj() * a1;
        Ok([2.0 * c.re, 2.0 * c.im, a0.norm_sqr() - a1.norm_sqr()])
    }
}

fn concat_labels(a: &[Qubit], b: &[Qubit]) -> Result<Vec<Qubit>> {
    if let Some(q) = a.iter().find(|q| b.contains(q)) {
        return Err(Error::DuplicateLabel(*q));
    }
    Ok(a.iter().chain(b).copied().collect())
}

/// A `2^m × 2^m` complex matrix, row-major, on an ordered qubit list.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    labels: Vec<Qubit>,
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseOperator {
    pub fn from_raw(labels: Vec<Qubit>, data: Vec<Complex64>) -> Result<Self> {
        ensure_distinct(&labels)?;
        let dim = 1usize << labels.len();
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch { dim: data.len(), qubits: labels.len() });
        }
        Ok(Self { labels, dim, data })
    }

    /// Builds from rows; the dimension must be a power of two matching `labels`.
    pub fn from_rows(labels: Vec<Qubit>, rows: &[Vec<Complex64>]) -> Result<Self> {
        let m = qubits_for_dim(rows.len())?;
        if m != labels.len() {
            return Err(Error::DimensionMismatch { dim: rows.len(), qubits: labels.len() });
        }
        if rows.iter().any(|r| r.len() != rows.len()) {
            return Err(Error::Parse("matrix is not square".into()));
        }
        Self::from_raw(labels, rows.concat())
    }

    pub fn zeros(labels: Vec<Qubit>) -> Result<Self> {
        let dim = 1usize << labels.len();
        Self::from_raw(labels, vec![zero(); dim * dim])
    }

    pub fn identity(labels: Vec<Qubit>) -> Result<Self> {
        let mut op = Self::zeros(labels)?;
        for i in 0..op.dim {
            op.data[i * op.dim + i] = Complex64::new(1.0, 0.0);
        }
        Ok(op)
    }

    pub fn labels(&self) -> &[Qubit] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_qubits(&self) -> usize {
        self.labels.len()
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    /// Kronecker product with concatenated labels; the label sets must be disjoint.
    pub fn tensor(&self, other: &DenseOperator) -> Result<DenseOperator> {
        let labels = concat_labels(&self.labels, &other.labels)?;
        let (da, db) = (self.dim, other.dim);
        let dim = da * db;
        let mut data = vec![zero(); dim * dim];
        for i in 0..da {
            for j in 0..da {
                let a = self.data[i * da + j];
                if a == zero() {
                    continue;
                }
                for k in 0..db {
                    for l in 0..db {
                        data[(i * db + k) * dim + j * db + l] = a * other.data[k * db + l];
                    }
                }
            }
        }
        Ok(DenseOperator { labels, dim, data })
    }

    pub fn matmul(&self, other: &DenseOperator) -> Result<DenseOperator> {
        self.require_same_labels(other)?;
        let d = self.dim;
        let mut data = vec![zero(); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == zero() {
                    continue;
                }
                for j in 0..d {
                    data[i * d + j] += a * other.data[k * d + j];
                }
            }
        }
        Ok(DenseOperator { labels: self.labels.clone(), dim: d, data })
    }

    pub fn adjoint(&self) -> DenseOperator {
        self.map_transposed(|c| c.conj())
    }

    pub fn transpose(&self) -> DenseOperator {
        self.map_transposed(|c| c)
    }

    fn map_transposed(&self, f: impl Fn(Complex64) -> Complex64) -> DenseOperator {
        let d = self.dim;
        let mut data = vec![zero(); d * d];
        for i in 0..d {
            for j in 0..d {
                data[j * d + i] = f(self.data[i * d + j]);
            }
        }
        DenseOperator { labels: self.labels.clone(), dim: d, data }
    }

    pub fn scale(&self, factor: Complex64) -> DenseOperator {
        DenseOperator {
            labels: self.labels.clone(),
            dim: self.dim,
            data: self.data.iter().map(|c| c * factor).collect(),
        }
    }

    /// `a·self + b·other`.
    pub fn linear_combination(&self, a: f64, other: &DenseOperator, b: f64) -> Result<DenseOperator> {
        self.require_same_labels(other)?;
        Ok(DenseOperator {
            labels: self.labels.clone(),
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(x, y)| x * a + y * b).collect(),
        })
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    /// `Tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        let d = self.dim;
        let mut acc = zero();
        for i in 0..d {
            for j in 0..d {
                acc += self.data[i * d + j] * self.data[j * d + i];
            }
        }
        acc.re
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &DenseOperator) -> Result<f64> {
        self.require_same_labels(other)?;
        Ok(self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let d = self.dim;
        (0..d).all(|i| (i..d).all(|j| (self.data[i * d + j] - self.data[j * d + i].conj()).norm() <= tol))
    }

    /// Hermitian, unit trace and positive semidefinite within the module tolerances.
    pub fn is_density_matrix(&self) -> bool {
        self.is_hermitian(HERMITIAN_TOLERANCE)
            && (self.trace() - Complex64::new(1.0, 0.0)).norm() <= TRACE_TOLERANCE
            && self.eigenvalues_hermitian().first().is_none_or(|&e| e >= EIGENVALUE_FLOOR)
    }

    /// Eigenvalues of a Hermitian matrix, ascending.
    pub fn eigenvalues_hermitian(&self) -> Vec<f64> {
        let m = DMatrix::from_row_slice(self.dim, self.dim, &self.data);
        let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// Traces out every qubit not in `keep`; the result is on `keep` in the given order.
    pub fn partial_trace(&self, keep: &[Qubit]) -> Result<DenseOperator> {
        let split = Split::new(&self.labels, keep)?;
        let d = split.keep.len();
        let mut data = vec![zero(); d * d];
        for a in 0..d {
            for b in 0..d {
                data[a * d + b] =
                    split.rest.iter().map(|&t| self.data[(split.keep[a] | t) * self.dim + (split.keep[b] | t)]).sum();
            }
        }
        Ok(DenseOperator { labels: keep.to_vec(), dim: d, data })
    }

    fn require_same_labels(&self, other: &DenseOperator) -> Result<()> {
        if self.labels != other.labels {
            return Err(Error::LabelMismatch { left: join_labels(&self.labels), right: join_labels(&other.labels) });
        }
        Ok(())
    }
}

/// `{"labels": [...], "entries": [[[re, im], ...], ...]}`.
impl Serialize for DenseOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> =
            self.data.chunks(self.dim).map(|r| r.iter().map(|c| [c.re, c.im]).collect()).collect();
        let mut st = serializer.serialize_struct("DenseOperator", 2)?;
        st.serialize_field("labels", &self.labels)?;
        st.serialize_field("entries", &rows)?;
        st.end()
    }
}

/// Bloch vector `(x, y, z)` of a pure single-qubit state; `b_0 = 1` is implicit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub const PLUS_Z: BlochVector = BlochVector { x: 0.0, y: 0.0, z: 1.0 };
    pub const MINUS_Z: BlochVector = BlochVector { x: 0.0, y: 0.0, z: -1.0 };
    pub const PLUS_X: BlochVector = BlochVector { x: 1.0, y: 0.0, z: 0.0 };
    pub const PLUS_Y: BlochVector = BlochVector { x: 0.0, y: 1.0, z: 0.0 };

    /// Requires `|b| = 1` within `1e-10`.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::normalized(x, y, z, BLOCH_NORM_TOLERANCE)
    }

    /// Accepts `|b| = 1` within `tol` and rescales onto the sphere.
    pub fn normalized(x: f64, y: f64, z: f64, tol: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > tol {
            return Err(Error::NonUnitBloch { x, y, z, norm });
        }
        Ok(Self { x: x / norm, y: y / norm, z: z / norm })
    }

    /// `(b_0, b_1, b_2, b_3) = (1, x, y, z)`.
    pub fn components(&self) -> [f64; 4] {
        [1.0, self.x, self.y, self.z]
    }

    /// The pure state with these expectations on qubit `label`. Global phase:
    /// real nonnegative amplitude on `|0⟩`, or exactly `|1⟩` when that amplitude is zero.
    pub fn to_state(&self, label: Qubit) -> StateVector {
        let a0 = ((1.0 + self.z) / 2.0).max(0.0).sqrt();
        let r1 = ((1.0 - self.z) / 2.0).max(0.0).sqrt();
        let phi = if self.x == 0.0 && self.y == 0.0 { 0.0 } else { self.y.atan2(self.x) };
        let a1 = Complex64::from_polar(r1, phi);
        let norm = (a0 * a0 + r1 * r1).sqrt();
        StateVector { labels: vec![label], amps: vec![Complex64::new(a0 / norm, 0.0), a1 / norm] }
    }
}

/// Single-qubit state on `A` with the given Bloch vector.
pub fn bloch_to_state(b: &BlochVector) -> StateVector {
    b.to_state(Qubit::A)
}
