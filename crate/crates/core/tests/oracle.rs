mod common;

use common::{c, encoded_density, from_dense, partial_trace, random_unit, Mat};
use qec_core::oracle::{class_from_norms, PreparedState, ProbeBank};
use qec_core::{
    channel_decompose, reduce_encoded, verify_all, BlochVector, Family, InformativenessClass, Limits, ReducedOperator,
    SubsetSpec,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const PAULI_ONLY: Limits = Limits { dense_qubits: 0 };

fn sub(n: usize, text: &str) -> SubsetSpec {
    SubsetSpec::parse(n, text).unwrap()
}

fn bloch(b: [f64; 3]) -> BlochVector {
    BlochVector::new(b[0], b[1], b[2]).unwrap()
}

fn dense(r: &ReducedOperator) -> Mat {
    from_dense(&r.to_dense(12).unwrap())
}

#[test]
fn noise_marginal_via_both_paths() {
    let keep = sub(3, "N1,N2,N3");
    for limits in [Limits::default(), PAULI_ONLY] {
        let r = reduce_encoded(3, &bloch([0.6, 0.0, 0.8]), &keep, &limits).unwrap();
        assert!(dense(&r).max_abs_diff(&Mat::identity(8).scale(c(0.125, 0.0))) <= 1e-12);
    }
}

#[test]
fn reductions_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in 1..=3 {
        let b = random_unit(&mut rng);
        let rho = encoded_density(n, b);
        for s in SubsetSpec::enumerate(n, false).unwrap().chain(SubsetSpec::enumerate(n, true).unwrap()) {
            let keep: Vec<usize> = s.labels().iter().map(|q| common::global_position(*q)).collect();
            let oracle = partial_trace(&rho, 2 * n + 1, &keep);
            for limits in [Limits::default(), PAULI_ONLY] {
                let r = reduce_encoded(n, &bloch(b), &s, &limits).unwrap();
                assert!(dense(&r).max_abs_diff(&oracle) <= 1e-12, "n={n} {s}");
            }
        }
    }
}

#[test]
fn missing_pair_subset_is_input_independent() {
    let keep = sub(2, "S1,N1");
    let probes = [[0.0, 0.0, 1.0], [0.0, 0.0, -1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]];
    let states: Vec<Mat> =
        probes.iter().map(|b| dense(&reduce_encoded(2, &bloch(*b), &keep, &Limits::default()).unwrap())).collect();
    for s in &states[1..] {
        assert!(s.max_abs_diff(&states[0]) <= 1e-12);
    }
    let d = channel_decompose(2, &keep, &Limits::default()).unwrap();
    assert_eq!(d.active_string(1e-10), "");
}

#[test]
fn channel_examples() {
    let d = channel_decompose(3, &sub(3, "A,N1,N2,N3"), &Limits::default()).unwrap();
    assert!(d.norms[0] <= 1e-10 && d.norms[2] <= 1e-10 && d.norms[1] > 1e-3);
    assert_eq!(d.active_string(1e-10), "y");
    let d = channel_decompose(2, &sub(2, "A,S1,N2"), &Limits::default()).unwrap();
    assert_eq!(d.active_string(1e-10), "xyz");
    // T0 has unit trace, the channel operators are traceless.
    let t0 = dense(d.constant());
    assert!((t0.trace() - c(1.0, 0.0)).norm() <= 1e-12);
    for r in 1..=3 {
        assert!(dense(d.channel(r)).trace().norm() <= 1e-12);
    }
    assert!(d.consistency_error <= 1e-12);
}

#[test]
fn n1_signal_channel_is_half_y() {
    let d = channel_decompose(1, &sub(1, "S1"), &Limits::default()).unwrap();
    let expect = common::string_matrix("Y").scale(c(0.5, 0.0));
    assert!(dense(d.channel(2)).max_abs_diff(&expect) <= 1e-12);
    assert_eq!(class_from_norms(&d.norms, 1e-10), InformativenessClass::PartiallyInformative);
}

#[test]
fn sweep_counts_and_results() {
    let r = verify_all(3, 1e-10, 5, 42, &Limits::default()).unwrap();
    assert_eq!(r.meta.mismatches, 0);
    let at3 = |f| r.results.iter().filter(|row| row.n == 3 && row.family == f).count();
    assert_eq!(at3(Family::Storage), 64);
    assert_eq!(at3(Family::WithA), 64);
    assert!(r.max_error() <= 1e-10);
    let s1 = r.results.iter().find(|row| row.n == 1 && row.subset == sub(1, "S1")).unwrap();
    assert_eq!(s1.observed, InformativenessClass::PartiallyInformative);
    assert!((s1.norms[1] - 0.5).abs() <= 1e-12);
}

#[test]
fn sweep_is_deterministic_and_path_independent_in_class() {
    let a = verify_all(3, 1e-10, 3, 7, &Limits::default()).unwrap();
    let b = verify_all(3, 1e-10, 3, 7, &Limits::default()).unwrap();
    assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
    assert_eq!(a.to_csv().unwrap(), b.to_csv().unwrap());
    let p = verify_all(3, 1e-10, 3, 7, &PAULI_ONLY).unwrap();
    assert_eq!(p.meta.mismatches, 0);
    for (x, y) in a.results.iter().zip(&p.results) {
        assert_eq!((x.subset, x.observed, &x.channels), (y.subset, y.observed, &y.channels));
    }
}

#[test]
fn permutation_symmetry_of_span_sets() {
    // Same q, different signal pairs: identical matrices in canonical order.
    let b = bloch([0.36, 0.48, 0.8]);
    let groups = [
        vec!["A,S1,N2,N3", "A,N1,S2,N3", "A,N1,N2,S3"],
        vec!["A,S1,S2,N3", "A,S1,N2,S3", "A,N1,S2,S3"],
        vec!["S1,N2,N3", "N1,S2,N3", "N1,N2,S3"],
    ];
    for g in groups {
        let ms: Vec<Mat> =
            g.iter().map(|t| dense(&reduce_encoded(3, &b, &sub(3, t), &Limits::default()).unwrap())).collect();
        for m in &ms[1..] {
            assert!(m.max_abs_diff(&ms[0]) <= 1e-12, "{g:?}");
        }
    }
}

#[test]
fn probe_bank_consistency_on_pauli_path() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let bank = ProbeBank::new(5, bloch(random_unit(&mut rng)), &Limits::default()).unwrap();
    for text in ["A,S1,N2,N3,N4,N5", "S1,S2,S3,N4,N5", "A,S1,N1", "N1,N2,N3,N4,N5"] {
        let d = bank.decompose(&sub(5, text)).unwrap();
        assert!(d.consistency_error <= 1e-12, "{text}");
    }
    let s = PreparedState::new(5, &BlochVector::PLUS_Y, &Limits::default()).unwrap();
    assert!(matches!(s, PreparedState::Pauli(_)));
}
