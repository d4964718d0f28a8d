use iontrap_core::quantum::{CompositeSpace, DensityMatrix, Operator, Pauli, PureState, SubsystemSpec};
use iontrap_core::C64;
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

fn space(dims: &[usize]) -> CompositeSpace {
    CompositeSpace::new(
        dims.iter()
            .enumerate()
            .map(|(i, &d)| if d == 2 && i == 0 { SubsystemSpec::two_level("q") } else { SubsystemSpec::mode(format!("m{i}"), d).unwrap() })
            .collect(),
    )
    .unwrap()
}

fn matrix(d: usize, entries: &[(f64, f64)]) -> DMatrix<C64> {
    DMatrix::from_fn(d, d, |i, j| {
        let (re, im) = entries[(i * d + j) % entries.len()];
        C64::new(re + i as f64 * 0.1, im - j as f64 * 0.2)
    })
}

fn complex_entries(n: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), n)
}

#[test]
fn number_operator_from_ladders() {
    for n in 2..12 {
        let a = Operator::annihilation(n).unwrap();
        let product = a.dagger().matmul(&a).unwrap();
        for k in 0..n {
            assert!((product.matrix()[(k, k)].re - k as f64).abs() <= 4.0 * f64::EPSILON * k as f64);
        }
        assert_eq!(a.matrix()[(0, 1)], C64::new(1.0, 0.0));
    }
    let a = Operator::annihilation(10).unwrap();
    assert_eq!(a.matrix()[(3, 4)], C64::new(2.0, 0.0));
}

#[test]
fn commutator_truncation_edge() {
    let a = Operator::annihilation(20).unwrap();
    let c = a.commutator(&a.dagger()).unwrap();
    for k in 0..19 {
        assert!((c.matrix()[(k, k)] - C64::new(1.0, 0.0)).norm() < 1e-12);
    }
    assert!((c.matrix()[(19, 19)] - C64::new(-19.0, 0.0)).norm() < 1e-12);
}

#[test]
fn embedding_preserves_spectra() {
    let s = space(&[2, 3]);
    let z = Operator::pauli(Pauli::Z).embed(0, &s).unwrap();
    let eig = z.eigenvalues().unwrap();
    assert_eq!(eig.iter().filter(|&&e| (e + 1.0).abs() < 1e-12).count(), 3);
    assert_eq!(eig.iter().filter(|&&e| (e - 1.0).abs() < 1e-12).count(), 3);
    let a = Operator::annihilation(3).unwrap().embed(1, &s).unwrap();
    assert!(a.commutator(&z).unwrap().max_abs() == 0.0);
    let id = Operator::identity(&CompositeSpace::modes(1, 3).unwrap()).embed(0, &CompositeSpace::modes(2, 3).unwrap()).unwrap();
    assert_eq!(id.matrix(), &DMatrix::identity(9, 9));
}

#[test]
fn fidelities_of_simple_states() {
    let s = CompositeSpace::modes(1, 2).unwrap();
    let zero = PureState::basis(&s, &[0]).unwrap();
    let one = PureState::basis(&s, &[1]).unwrap();
    let plus = PureState::new(s, DVector::from_element(2, C64::new(1.0, 0.0))).unwrap();
    assert_eq!(zero.fidelity(&zero).unwrap(), 1.0);
    assert_eq!(zero.fidelity(&one).unwrap(), 0.0);
    assert!((plus.fidelity(&zero).unwrap() - 0.5).abs() < 1e-15);
    assert!((zero.to_density().fidelity(&plus.to_density()).unwrap() - 0.5).abs() < 1e-7);
    let other = CompositeSpace::modes(1, 3).unwrap();
    assert!(zero.fidelity(&PureState::basis(&other, &[0]).unwrap()).is_err());
}

#[test]
fn bell_state_marginal_is_maximally_mixed() {
    let s = space(&[2, 2]);
    let mut v = DVector::zeros(4);
    v[0] = C64::new(1.0, 0.0);
    v[3] = C64::new(1.0, 0.0);
    let bell = PureState::new(s, v).unwrap().to_density();
    let reduced = bell.partial_trace(&[0]).unwrap();
    assert!((reduced.matrix() - DMatrix::identity(2, 2) * C64::new(0.5, 0.0)).norm() < 1e-15);
    let all = bell.partial_trace(&[0, 1]).unwrap();
    assert!((all.matrix() - bell.matrix()).norm() < 1e-15);
    assert!(bell.partial_trace(&[]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tensor_mixed_product(a in complex_entries(4), b in complex_entries(9), c in complex_entries(4), d in complex_entries(9)) {
        let s2 = CompositeSpace::modes(1, 2).unwrap();
        let s3 = CompositeSpace::modes(1, 3).unwrap();
        let op = |s: &CompositeSpace, n, e: &[(f64, f64)]| Operator::new(s.clone(), matrix(n, e)).unwrap();
        let (a, b, c, d) = (op(&s2, 2, &a), op(&s3, 3, &b), op(&s2, 2, &c), op(&s3, 3, &d));
        let lhs = a.tensor(&b).matmul(&c.tensor(&d)).unwrap();
        let rhs = a.matmul(&c).unwrap().tensor(&b.matmul(&d).unwrap());
        prop_assert!(lhs.sub(&rhs).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn partial_trace_round_trip(x in complex_entries(2), y in complex_entries(3)) {
        let s2 = CompositeSpace::modes(1, 2).unwrap();
        let s3 = CompositeSpace::modes(1, 3).unwrap();
        let to_vec = |e: &[(f64, f64)]| DVector::from_iterator(e.len(), e.iter().map(|&(r, i)| C64::new(r + 2.0, i)));
        let ra = PureState::new(s2, to_vec(&x)).unwrap().to_density();
        let rb = PureState::new(s3, to_vec(&y)).unwrap().to_density();
        let mixed_a = DensityMatrix::new(ra.space().clone(), (ra.matrix() + DMatrix::identity(2, 2) * C64::new(1.0, 0.0)) * C64::new(1.0 / 3.0, 0.0)).unwrap();
        let joint = mixed_a.tensor(&rb);
        let back_a = joint.partial_trace(&[0]).unwrap();
        let back_b = joint.partial_trace(&[1]).unwrap();
        prop_assert!((back_a.matrix() - mixed_a.matrix()).norm() < 1e-12);
        prop_assert!((back_b.matrix() - rb.matrix()).norm() < 1e-12);
        prop_assert!((back_a.trace() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn hermitian_expectations_are_real(e in complex_entries(6)) {
        let s = CompositeSpace::modes(1, 6).unwrap();
        let v = DVector::from_iterator(6, e.iter().map(|&(r, i)| C64::new(r, i + 0.01)));
        let psi = PureState::new(s, v).unwrap();
        let n = Operator::number(6).unwrap();
        let x = Operator::annihilation(6).unwrap().add(&Operator::creation(6).unwrap()).unwrap();
        prop_assert!(n.expectation(&psi).unwrap().im.abs() < 1e-10);
        prop_assert!(x.expectation(&psi).unwrap().im.abs() < 1e-10);
        prop_assert!((psi.norm() - 1.0).abs() < 1e-12);
        prop_assert_eq!(x.dagger().dagger(), x);
    }
}
