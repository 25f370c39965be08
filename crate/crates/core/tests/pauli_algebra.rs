mod common;

use common::{c, string_matrix, sum_matrix, Mat, C};
use proptest::prelude::*;
use qec_core::pauli::{pauli_triple, PauliLetter, PauliString, PauliSum, Phase4};
use qec_core::{DenseOperator, Error, Qubit};

fn labels(m: usize) -> Vec<Qubit> {
    (1..=m).map(Qubit::S).collect()
}

fn letter() -> impl Strategy<Value = PauliLetter> {
    (0usize..4).prop_map(|i| PauliLetter::from_index(i).unwrap())
}

fn phase() -> impl Strategy<Value = Phase4> {
    (0i64..4).prop_map(Phase4::i_pow)
}

fn string(m: usize) -> impl Strategy<Value = PauliString> {
    (phase(), prop::collection::vec(letter(), m)).prop_map(move |(p, ls)| PauliString::new(p, ls, labels(m)).unwrap())
}

fn string_oracle(s: &PauliString) -> Mat {
    string_matrix(&s.letters_string()).scale(s.phase().to_complex())
}

fn coeff() -> impl Strategy<Value = C> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(a, b)| c(a, b))
}

fn pauli_sum(m: usize) -> impl Strategy<Value = PauliSum> {
    prop::collection::vec((prop::collection::vec(letter(), m), coeff()), 1..12).prop_map(move |terms| {
        let mut s = PauliSum::new(labels(m)).unwrap();
        for (ls, w) in terms {
            s.add_term(&ls, w).unwrap();
        }
        s
    })
}

#[test]
fn product_table_matches_matrices() {
    for a in PauliLetter::ALL {
        for b in PauliLetter::ALL {
            let (p, l) = qec_core::pauli_product(a, b);
            let lhs = sigma_of(a).matmul(&sigma_of(b));
            let rhs = sigma_of(l).scale(p.to_complex());
            assert!(lhs.max_abs_diff(&rhs) == 0.0, "{a}{b}");
        }
    }
}

fn sigma_of(l: PauliLetter) -> Mat {
    common::sigma(l.as_char())
}

#[test]
fn product_examples() {
    use PauliLetter::*;
    assert_eq!(qec_core::pauli_product(I, X), (Phase4::ONE, X));
    assert_eq!(qec_core::pauli_product(X, Y), (Phase4::I, Z));
    assert_eq!(qec_core::pauli_product(Y, X), (Phase4::MINUS_I, Z));
}

#[test]
fn string_examples() {
    let l = labels(2);
    let xx = PauliString::parse("XX", l.clone()).unwrap();
    let yy = PauliString::parse("YY", l.clone()).unwrap();
    assert_eq!(xx.multiply(&yy).unwrap(), PauliString::parse("-ZZ", l.clone()).unwrap());
    let id = PauliString::identity(l.clone()).unwrap();
    assert_eq!(id.multiply(&xx).unwrap(), xx);
    let x = PauliString::parse("X", labels(1)).unwrap();
    assert_eq!(x.multiply(&x).unwrap(), PauliString::parse("I", labels(1)).unwrap());
    let other = PauliString::parse("XX", vec![Qubit::A, Qubit::N(1)]).unwrap();
    assert!(matches!(xx.multiply(&other), Err(Error::LabelMismatch { .. })));
    let s = PauliString::parse("-iXYZI", labels(4)).unwrap();
    assert_eq!(s.to_string(), "-iXYZI");
}

#[test]
fn bell_projector_to_dense() {
    let q = c(0.25, 0.0);
    let s = PauliSum::from_terms(labels(2), [("II", q), ("XX", q), ("YY", -q), ("ZZ", q)]).unwrap();
    let d = s.to_dense(8).unwrap();
    let h = c(0.5, 0.0);
    let z = c(0.0, 0.0);
    let expect = [h, z, z, h, z, z, z, z, z, z, z, z, h, z, z, h];
    for (a, b) in d.data().iter().zip(expect) {
        assert!((a - b).norm() < 1e-15);
    }
    let back = PauliSum::from_dense(&d).unwrap();
    assert!(back.max_abs_diff(&s).unwrap() < 1e-15);
    assert_eq!(back.len(), 4);

    let half = PauliSum::from_terms(labels(1), [("I", c(0.5, 0.0))]).unwrap();
    assert_eq!(half.to_dense(8).unwrap(), DenseOperator::identity(labels(1)).unwrap().scale(c(0.5, 0.0)));
    assert_eq!(PauliSum::from_dense(&half.to_dense(8).unwrap()).unwrap(), half);
}

#[test]
fn dense_limit_is_enforced() {
    let s = PauliSum::new(labels(3)).unwrap();
    assert_eq!(s.to_dense(2), Err(Error::DenseLimit { qubits: 3, limit: 2 }));
}

#[test]
fn json_shape() {
    let s = PauliSum::from_terms(labels(3), [("XYZ", c(0.25, 0.0))]).unwrap();
    assert_eq!(serde_json::to_string(&s).unwrap(), r#"[{"string":"XYZ","re":0.25,"im":0.0}]"#);
    let back = PauliSum::from_json(labels(3), &serde_json::to_string(&s).unwrap()).unwrap();
    assert_eq!(back, s);
}

proptest! {
    #[test]
    fn triple_product_associative(a in letter(), b in letter(), d in letter()) {
        let (p1, l1) = qec_core::pauli_product(a, b);
        let (p2, l2) = qec_core::pauli_product(l1, d);
        let (q1, m1) = qec_core::pauli_product(b, d);
        let (q2, m2) = qec_core::pauli_product(a, m1);
        prop_assert_eq!((p1 * p2, l2), (q1 * q2, m2));
        prop_assert_eq!(pauli_triple(a, b, d), (p1 * p2, l2));
    }

    #[test]
    fn string_product_associative((a, b, d) in (1usize..6).prop_flat_map(|m| (string(m), string(m), string(m)))) {
        let left = a.multiply(&b).unwrap().multiply(&d).unwrap();
        let right = a.multiply(&b.multiply(&d).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        let oracle = string_oracle(&a).matmul(&string_oracle(&b)).matmul(&string_oracle(&d));
        prop_assert!(string_oracle(&left).max_abs_diff(&oracle) < 1e-14);
    }

    #[test]
    fn adjoint_reverses_products(a in string(3), b in string(3)) {
        let lhs = a.multiply(&b).unwrap().adjoint();
        let rhs = b.adjoint().multiply(&a.adjoint()).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert!(string_oracle(&lhs).max_abs_diff(&string_oracle(&a.multiply(&b).unwrap()).dagger()) < 1e-14);
    }

    #[test]
    fn to_dense_matches_kronecker_oracle(s in pauli_sum(3)) {
        let oracle = common::pauli_sum_matrix(&s);
        let d = common::from_dense(&s.to_dense(8).unwrap());
        prop_assert!(d.max_abs_diff(&oracle) < 1e-14);
    }

    #[test]
    fn dense_round_trip(s in (1usize..=8).prop_flat_map(pauli_sum)) {
        let back = PauliSum::from_dense(&s.to_dense(8).unwrap()).unwrap();
        prop_assert!(back.max_abs_diff(&s).unwrap() <= 1e-12);
    }

    #[test]
    fn hermitian_dense_has_real_coefficients(s in pauli_sum(3)) {
        // A + A† is Hermitian whatever A is.
        let d = s.to_dense(8).unwrap();
        let h = d.linear_combination(1.0, &d.adjoint(), 1.0).unwrap();
        let p = PauliSum::from_dense(&h).unwrap();
        for (_, w) in p.iter() {
            prop_assert!(w.im.abs() <= 1e-12);
        }
        prop_assert!(p.is_hermitian(1e-12));
    }

    #[test]
    fn linearity_of_to_dense(a in pauli_sum(2), b in pauli_sum(2), x in -2.0f64..2.0, y in -2.0f64..2.0) {
        let lhs = a.linear_combination(x, &b, y).unwrap().to_dense(8).unwrap();
        let rhs = a.to_dense(8).unwrap().linear_combination(x, &b.to_dense(8).unwrap(), y).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-13);
    }
}

#[test]
fn sum_matrix_oracle_sanity() {
    // Oracle self-check: XY = iZ through literal matrices.
    let xy = string_matrix("X").matmul(&string_matrix("Y"));
    assert_eq!(xy.max_abs_diff(&sum_matrix(&[("Z", c(0.0, 1.0))])), 0.0);
}
