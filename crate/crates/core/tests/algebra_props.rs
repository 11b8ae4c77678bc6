mod common;

use common::algebra::*;
use num_complex::Complex64;
use proptest::prelude::*;
use qaoalie::closure::{dense_closure_oracle, exact_closure, lie_closure, ClosureOptions, ExactStrategy};
use qaoalie::pauli::{pauli_product, string_to_dense, to_dense, ExactOperator, Operator, Rational};

const CASES: u32 = 1000;
const DENSE_TOL: f64 = 1e-9;

fn dense(a: &ExactOperator) -> qaoalie::dense::DenseMatrix {
    to_dense(a, 4).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn antisymmetry((a, b) in arb_pair()) {
        let ab = a.bracket(&b).unwrap();
        let ba = b.bracket(&a).unwrap();
        prop_assert_eq!(ab, ba.neg());
        prop_assert!(a.bracket(&a).unwrap().is_zero());
    }

    #[test]
    fn jacobi((a, b, c) in arb_triple()) {
        let t1 = a.bracket(&b.bracket(&c).unwrap()).unwrap();
        let t2 = b.bracket(&c.bracket(&a).unwrap()).unwrap();
        let t3 = c.bracket(&a.bracket(&b).unwrap()).unwrap();
        prop_assert!(t1.add(&t2).unwrap().add(&t3).unwrap().is_zero());
    }

    #[test]
    fn bilinearity((a, b, c) in arb_triple(), k in arb_rational()) {
        let lhs = a.add_scaled(&k, &b).unwrap().bracket(&c).unwrap();
        let rhs = a.bracket(&c).unwrap().add_scaled(&k, &b.bracket(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reality((a, b) in arb_pair()) {
        // Real coefficients on Pauli strings are Hermitian; the bracket keeps them so.
        let m = dense(&a.bracket(&b).unwrap());
        prop_assert!(m.max_abs_diff(&m.adjoint()) <= DENSE_TOL);
    }

    #[test]
    fn tracelessness((a, b) in arb_pair()) {
        let c = a.bracket(&b).unwrap();
        prop_assert!(!c.has_identity());
        prop_assert!(dense(&c).trace().norm() <= DENSE_TOL);
    }

    #[test]
    fn dense_consistency((a, b) in arb_pair()) {
        let (ma, mb) = (dense(&a), dense(&b));
        let comm = ma.matmul(&mb).sub(&mb.matmul(&ma)).scale(Complex64::new(0.0, -0.5));
        prop_assert!(dense(&a.bracket(&b).unwrap()).max_abs_diff(&comm) <= DENSE_TOL);
        prop_assert!(dense(&a.add(&b).unwrap()).max_abs_diff(&ma.add(&mb)) <= DENSE_TOL);
    }

    #[test]
    fn pauli_products_match_matrices(p in arb_string(3), q in arb_string(3)) {
        let (k, r) = pauli_product(&p, &q).unwrap();
        let phase = Complex64::new(0.0, 1.0).powu(k as u32);
        let lhs = string_to_dense(&p).matmul(&string_to_dense(&q));
        prop_assert!(lhs.max_abs_diff(&string_to_dense(&r).scale(phase)) <= DENSE_TOL);
        prop_assert_eq!(p.commutes(&q).unwrap(), k % 2 == 0);
    }
}

fn dim(g: &[ExactOperator], strategy: ExactStrategy) -> usize {
    exact_closure(g, &ClosureOptions::default(), strategy).unwrap().dimension()
}

#[test]
fn dimension_is_invariant_under_reordering_and_scaling() {
    let all = instances();
    assert_eq!(all.len(), 20);
    let scales = [Rational::new(-3, 2), Rational::new(7, 5), Rational::integer(-1), Rational::new(1, 9)];
    for (i, g) in all.iter().enumerate() {
        let base = dim(g, ExactStrategy::Auto);
        let mut rev: Vec<_> = g.iter().rev().cloned().collect();
        assert_eq!(dim(&rev, ExactStrategy::Auto), base, "instance {i} reversed");
        for (j, op) in rev.iter_mut().enumerate() {
            *op = op.scale(&scales[j % scales.len()]);
        }
        assert_eq!(dim(&rev, ExactStrategy::Auto), base, "instance {i} scaled");
        let mut mixed = g.clone();
        mixed[0] = mixed[0].add_scaled(&Rational::integer(2), &g[g.len() - 1]).unwrap();
        assert_eq!(dim(&mixed, ExactStrategy::Auto), base, "instance {i} sheared");
    }
}

#[test]
fn strategies_and_float_mode_agree() {
    for (i, g) in instances().iter().enumerate() {
        let auto = dim(g, ExactStrategy::Auto);
        assert_eq!(dim(g, ExactStrategy::RationalOnly), auto, "instance {i}");
        let f: Vec<Operator<f64>> = g.iter().map(|o| o.to_float()).collect();
        let (b, _) = lie_closure(&f, &ClosureOptions::default()).unwrap();
        assert_eq!(b.dimension(), auto, "instance {i} float");
        if g[0].n() <= 3 {
            assert_eq!(dense_closure_oracle(g).unwrap(), auto, "instance {i} oracle");
        }
    }
}
