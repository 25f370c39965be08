//! Brute-force ground truth: encode, trace down to a subset, split the reduced
//! state into its affine Bloch channels and compare against the classifier
//! and the closed forms.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, UnitSphere};
use serde::Serialize;

use crate::analytic::{reduced_storage_span_form, reduced_with_a_case_form, reduced_with_a_via_gamma};
use crate::classifier::{decide, Family, InformativenessClass, SubsetSpec};
use crate::dense::{BlochVector, DenseOperator, StateVector, BLOCH_NORM_TOLERANCE, DEFAULT_DENSE_QUBITS};
use crate::encoding::{build_encoded_branch_sum, encode_state_vector};
use crate::error::{Error, Result};
use crate::pauli::{PauliSum, SupportIndex};

/// Default channel-activity threshold.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
/// Largest tolerated deviation of the fifth probe from the affine model.
pub const AFFINE_TOLERANCE: f64 = 1e-10;
/// Seed for the consistency probe when none is supplied.
pub const DEFAULT_SEED: u64 = 42;

/// Recorded in every report: the oracle cannot test recoverability directly.
pub const FULL_INFORMATIVENESS_ASSUMPTION: &str =
    "fully informative is operationalized as all three Bloch channels active";

/// The four axis probes `+z, -z, +x, +y`.
pub const PROBES: [BlochVector; 4] =
    [BlochVector::PLUS_Z, BlochVector::MINUS_Z, BlochVector::PLUS_X, BlochVector::PLUS_Y];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Registers of up to this many qubits use state vectors; larger ones the
    /// Pauli-sum path. Zero forces the Pauli path everywhere.
    pub dense_qubits: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self { dense_qubits: DEFAULT_DENSE_QUBITS }
    }
}

impl Limits {
    pub fn path(&self, n: usize) -> ReductionPath {
        if 2 * n < self.dense_qubits {
            ReductionPath::Dense
        } else {
            ReductionPath::Pauli
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReductionPath {
    Dense,
    Pauli,
}

impl ReductionPath {
    pub fn name(self) -> &'static str {
        match self {
            ReductionPath::Dense => "dense",
            ReductionPath::Pauli => "pauli",
        }
    }
}

/// A reduced state in whichever representation produced it.
#[derive(Debug, Clone, PartialEq)]
pub enum ReducedOperator {
    Dense(DenseOperator),
    Pauli(PauliSum),
}

impl ReducedOperator {
    /// Max-abs matrix entry (dense) or max-abs Pauli coefficient (Pauli).
    pub fn max_abs(&self) -> f64 {
        match self {
            ReducedOperator::Dense(d) => d.max_abs(),
            ReducedOperator::Pauli(p) => p.max_abs_coefficient(),
        }
    }

    pub fn linear_combination(&self, a: f64, other: &ReducedOperator, b: f64) -> Result<ReducedOperator> {
        match (self, other) {
            (ReducedOperator::Dense(x), ReducedOperator::Dense(y)) => {
                Ok(ReducedOperator::Dense(x.linear_combination(a, y, b)?))
            }
            (ReducedOperator::Pauli(x), ReducedOperator::Pauli(y)) => {
                Ok(ReducedOperator::Pauli(x.linear_combination(a, y, b)?))
            }
            (x, y) => x.to_pauli()?.linear_combination(a, &y.to_pauli()?, b).map(ReducedOperator::Pauli),
        }
    }

    /// Deviation from `other` in this operator's own norm.
    pub fn max_abs_diff(&self, other: &ReducedOperator) -> Result<f64> {
        self.linear_combination(1.0, other, -1.0).map(|d| d.max_abs())
    }

    /// Deviation from an analytic Pauli sum: entrywise for dense operators,
    /// coefficientwise otherwise.
    pub fn diff_from_pauli(&self, analytic: &PauliSum) -> Result<f64> {
        match self {
            ReducedOperator::Dense(d) => d.max_abs_diff(&analytic.to_dense(d.num_qubits())?),
            ReducedOperator::Pauli(p) => p.max_abs_diff(analytic),
        }
    }

    pub fn to_pauli(&self) -> Result<PauliSum> {
        match self {
            ReducedOperator::Dense(d) => PauliSum::from_dense(d),
            ReducedOperator::Pauli(p) => Ok(p.clone()),
        }
    }

    pub fn to_dense(&self, limit: usize) -> Result<DenseOperator> {
        match self {
            ReducedOperator::Dense(d) => Ok(d.clone()),
            ReducedOperator::Pauli(p) => p.to_dense(limit),
        }
    }
}

/// One encoded input, prepared for repeated reductions.
#[derive(Debug, Clone)]
pub enum PreparedState {
    Dense(StateVector),
    Pauli(SupportIndex),
}

impl PreparedState {
    pub fn new(n: usize, b: &BlochVector, limits: &Limits) -> Result<Self> {
        Ok(match limits.path(n) {
            ReductionPath::Dense => PreparedState::Dense(encode_state_vector(n, b, limits.dense_qubits)?),
            ReductionPath::Pauli => PreparedState::Pauli(SupportIndex::new(&build_encoded_branch_sum(n, b)?)),
        })
    }

    /// Reduced state on `keep`, in canonical label order.
    pub fn reduce(&self, keep: &SubsetSpec) -> Result<ReducedOperator> {
        let labels = keep.labels();
        Ok(match self {
            PreparedState::Dense(v) => ReducedOperator::Dense(v.reduced_density(&labels)?),
            PreparedState::Pauli(s) => ReducedOperator::Pauli(s.partial_trace(&labels)?),
        })
    }
}

/// Reduced state of the encoded input `b` on `keep`.
pub fn reduce_encoded(n: usize, b: &BlochVector, keep: &SubsetSpec, limits: &Limits) -> Result<ReducedOperator> {
    check_subset(n, keep)?;
    PreparedState::new(n, b, limits)?.reduce(keep)
}

fn check_subset(n: usize, keep: &SubsetSpec) -> Result<()> {
    if keep.n() != n {
        return Err(Error::InvalidPairCount(keep.n()));
    }
    Ok(())
}

/// `ρ(b) = T0 + x·T1 + y·T2 + z·T3` on one subset.
#[derive(Debug, Clone)]
pub struct ChannelDecomposition {
    pub subset: SubsetSpec,
    /// `[T0, T1, T2, T3]`.
    pub channels: [ReducedOperator; 4],
    /// Max-abs norms of `T1, T2, T3`.
    pub norms: [f64; 3],
    /// Deviation of the consistency probe from the affine model.
    pub consistency_error: f64,
}

impl ChannelDecomposition {
    pub fn constant(&self) -> &ReducedOperator {
        &self.channels[0]
    }

    pub fn channel(&self, r: usize) -> &ReducedOperator {
        &self.channels[r]
    }

    pub fn active(&self, tol: f64) -> [bool; 3] {
        self.norms.map(|v| v > tol)
    }

    /// Active channels as a subsequence of `"xyz"`.
    pub fn active_string(&self, tol: f64) -> String {
        self.active(tol).iter().zip(['x', 'y', 'z']).filter_map(|(&a, c)| a.then_some(c)).collect()
    }

    /// `T0 + x·T1 + y·T2 + z·T3`.
    pub fn evaluate(&self, b: &BlochVector) -> Result<ReducedOperator> {
        let mut acc = self.channels[0].clone();
        for (r, w) in [(1, b.x), (2, b.y), (3, b.z)] {
            acc = acc.linear_combination(1.0, &self.channels[r], w)?;
        }
        Ok(acc)
    }
}

/// The four axis probes plus one consistency probe, encoded once per `n`.
#[derive(Debug, Clone)]
pub struct ProbeBank {
    n: usize,
    path: ReductionPath,
    check_input: BlochVector,
    states: Vec<PreparedState>,
}

impl ProbeBank {
    pub fn new(n: usize, check_input: BlochVector, limits: &Limits) -> Result<Self> {
        let states = PROBES
            .iter()
            .chain(std::iter::once(&check_input))
            .map(|b| PreparedState::new(n, b, limits))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n, path: limits.path(n), check_input, states })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn path(&self) -> ReductionPath {
        self.path
    }

    pub fn decompose(&self, keep: &SubsetSpec) -> Result<ChannelDecomposition> {
        check_subset(self.n, keep)?;
        let reduced = self.states.iter().map(|s| s.reduce(keep)).collect::<Result<Vec<_>>>()?;
        let [plus_z, minus_z, plus_x, plus_y, check] = <[ReducedOperator; 5]>::try_from(reduced).expect("five probes");
        let t0 = plus_z.linear_combination(0.5, &minus_z, 0.5)?;
        let t3 = plus_z.linear_combination(0.5, &minus_z, -0.5)?;
        let t1 = plus_x.linear_combination(1.0, &t0, -1.0)?;
        let t2 = plus_y.linear_combination(1.0, &t0, -1.0)?;
        let norms = [t1.max_abs(), t2.max_abs(), t3.max_abs()];
        let mut d = ChannelDecomposition { subset: *keep, channels: [t0, t1, t2, t3], norms, consistency_error: 0.0 };
        d.consistency_error = d.evaluate(&self.check_input)?.max_abs_diff(&check)?;
        Ok(d)
    }
}

/// Channel decomposition of `keep` with a seeded consistency probe; fails
/// with [`Error::NonAffine`] if the probe misses the affine model.
pub fn channel_decompose(n: usize, keep: &SubsetSpec, limits: &Limits) -> Result<ChannelDecomposition> {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let bank = ProbeBank::new(n, random_bloch(&mut rng), limits)?;
    let d = bank.decompose(keep)?;
    if d.consistency_error > AFFINE_TOLERANCE {
        return Err(Error::NonAffine(d.consistency_error));
    }
    Ok(d)
}

pub fn class_from_norms(norms: &[f64; 3], tol: f64) -> InformativenessClass {
    match norms.iter().filter(|&&v| v > tol).count() {
        0 => InformativenessClass::CompletelyUninformative,
        3 => InformativenessClass::FullyInformative,
        _ => InformativenessClass::PartiallyInformative,
    }
}

pub fn observed_class(d: &ChannelDecomposition, tol: f64) -> InformativenessClass {
    class_from_norms(&d.norms, tol)
}

/// A uniformly random point on the Bloch sphere.
pub fn random_bloch<R: rand::Rng + ?Sized>(rng: &mut R) -> BlochVector {
    let [x, y, z]: [f64; 3] = UnitSphere.sample(rng);
    BlochVector::normalized(x, y, z, BLOCH_NORM_TOLERANCE).expect("unit sphere sample")
}

/// Generator for sweep inputs at pair count `n`.
pub fn sweep_rng(seed: u64, n: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_add(n as u64))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportMeta {
    pub n_max: usize,
    pub tol: f64,
    pub seed: u64,
    pub samples: usize,
    /// Omitted unless requested, so repeated runs stay byte-identical.
    pub duration_ms: Option<u64>,
    pub subset_count: usize,
    pub mismatches: usize,
    pub paths: Vec<ReductionPath>,
    pub assumptions: Vec<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub n: usize,
    pub subset: SubsetSpec,
    pub family: Family,
    pub predicted: InformativenessClass,
    pub observed: InformativenessClass,
    pub channels: String,
    pub norms: [f64; 3],
    /// Worst of the affine-consistency error and every analytic comparison.
    pub max_err: f64,
}

impl ReportRow {
    /// Class disagreement, partial leakage outside `y`, or an error above `tol`.
    pub fn is_mismatch(&self, tol: f64) -> bool {
        self.predicted != self.observed
            || (self.observed == InformativenessClass::PartiallyInformative && self.channels != "y")
            || self.max_err.is_nan()
            || self.max_err > tol
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub meta: ReportMeta,
    pub results: Vec<ReportRow>,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    n: usize,
    subset: String,
    family: &'static str,
    predicted: &'static str,
    observed: &'static str,
    channels: &'a str,
    norm_x: f64,
    norm_y: f64,
    norm_z: f64,
    max_err: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.meta.mismatches == 0
    }

    pub fn mismatched_rows(&self) -> impl Iterator<Item = &ReportRow> {
        self.results.iter().filter(|r| r.is_mismatch(self.meta.tol))
    }

    pub fn max_error(&self) -> f64 {
        self.results.iter().map(|r| r.max_err).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.results {
            w.serialize(CsvRow {
                n: r.n,
                subset: r.subset.to_string(),
                family: r.family.name(),
                predicted: r.predicted.name(),
                observed: r.observed.name(),
                channels: &r.channels,
                norm_x: r.norms[0],
                norm_y: r.norms[1],
                norm_z: r.norms[2],
                max_err: r.max_err,
            })
            .map_err(|e| Error::Parse(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Sweeps every storage subset and every `{A} ∪ C` for `n = 1..=n_max`.
///
/// Each subset's observed class comes from its channel decomposition; the
/// one-qubit-per-pair subsets are also compared against the closed forms on
/// `samples` seeded random inputs. Mismatches are recorded, not raised.
pub fn verify_all(n_max: usize, tol: f64, samples: usize, seed: u64, limits: &Limits) -> Result<VerificationReport> {
    if n_max == 0 {
        return Err(Error::InvalidPairCount(0));
    }
    let mut results = Vec::new();
    let mut paths = Vec::new();
    for n in 1..=n_max {
        let mut rng = sweep_rng(seed, n);
        let bank = ProbeBank::new(n, random_bloch(&mut rng), limits)?;
        paths.push(bank.path());
        let subsets: Vec<SubsetSpec> =
            SubsetSpec::enumerate(n, false)?.chain(SubsetSpec::enumerate(n, true)?).collect();
        let first = results.len();
        for s in &subsets {
            let d = bank.decompose(s)?;
            let observed = observed_class(&d, tol);
            results.push(ReportRow {
                n,
                subset: *s,
                family: Family::of(s),
                predicted: decide(s).class,
                observed,
                channels: d.active_string(tol),
                norms: d.norms,
                max_err: d.consistency_error,
            });
        }
        for _ in 0..samples {
            let b = random_bloch(&mut rng);
            let state = PreparedState::new(n, &b, limits)?;
            for row in results[first..].iter_mut().filter(|r| r.subset.is_one_per_pair()) {
                let err = analytic_error(&state, &row.subset, &b)?;
                row.max_err = row.max_err.max(err);
            }
        }
    }
    let mismatches = results.iter().filter(|r| r.is_mismatch(tol)).count();
    Ok(VerificationReport {
        meta: ReportMeta {
            n_max,
            tol,
            seed,
            samples,
            duration_ms: None,
            subset_count: results.len(),
            mismatches,
            paths,
            assumptions: vec![FULL_INFORMATIVENESS_ASSUMPTION],
        },
        results,
    })
}

/// Like [`verify_all`] but with the wall-clock duration recorded.
pub fn verify_all_timed(
    n_max: usize,
    tol: f64,
    samples: usize,
    seed: u64,
    limits: &Limits,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut report = verify_all(n_max, tol, samples, seed, limits)?;
    report.meta.duration_ms = Some(start.elapsed().as_millis() as u64);
    Ok(report)
}

/// Worst deviation between the numeric reduction of a one-per-pair subset
/// and every closed form that applies to it.
fn analytic_error(state: &PreparedState, s: &SubsetSpec, b: &BlochVector) -> Result<f64> {
    let n = s.n();
    let q = s.signal_count();
    let numeric = state.reduce(s)?;
    let labels = s.labels();
    let forms = if s.includes_a() {
        vec![reduced_with_a_via_gamma(n, q, b)?, reduced_with_a_case_form(n, q, b)?]
    } else {
        vec![reduced_storage_span_form(n, q, b)?]
    };
    let mut worst = 0.0f64;
    for form in forms {
        worst = worst.max(numeric.diff_from_pauli(&form.relabel(labels.clone())?)?);
    }
    Ok(worst)
}
