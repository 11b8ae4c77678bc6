use proptest::prelude::*;
use qaoalie::hamlib::ProblemSpec;
use qaoalie::pauli::{ExactOperator, Operator, PauliString, Rational};

pub fn arb_string(n: usize) -> impl Strategy<Value = PauliString> {
    let full = (1u64 << n) - 1;
    (0..=full, 0..=full).prop_map(move |(x, z)| PauliString::from_masks(n, x, z).unwrap())
}

pub fn arb_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=7).prop_map(|(p, q)| Rational::new(p, q))
}

pub fn arb_op(n: usize) -> impl Strategy<Value = ExactOperator> {
    proptest::collection::vec((arb_string(n), arb_rational()), 0..6)
        .prop_map(move |terms| Operator::from_terms(n, terms).unwrap())
}

pub fn arb_triple() -> impl Strategy<Value = (ExactOperator, ExactOperator, ExactOperator)> {
    (1usize..=4).prop_flat_map(|n| (arb_op(n), arb_op(n), arb_op(n)))
}

pub fn arb_pair() -> impl Strategy<Value = (ExactOperator, ExactOperator)> {
    (1usize..=4).prop_flat_map(|n| (arb_op(n), arb_op(n)))
}

fn gens(n: usize, raw: &[(u64, u64, i64)]) -> ExactOperator {
    Operator::from_terms(
        n,
        raw.iter().map(|&(x, z, c)| (PauliString::from_masks(n, x, z).unwrap(), Rational::integer(c))),
    )
    .unwrap()
}

/// Twenty generator sets: family Hamiltonians plus small hand-picked pairs.
pub fn instances() -> Vec<Vec<ExactOperator>> {
    let mut out = Vec::new();
    for (n, seed) in [(2, 1), (3, 1), (3, 2), (4, 1), (4, 5)] {
        let (hz, hx) = ProblemSpec::chain(n, seed).unwrap().hamiltonians().unwrap();
        out.push(vec![hz, hx]);
    }
    let raw_sets: Vec<Vec<Vec<(u64, u64, i64)>>> = vec![
        vec![vec![(0, 0b11, 1)], vec![(0b01, 0, 1), (0b10, 0, 1)]],
        vec![vec![(0, 0b11, 2), (0, 0b01, 1)], vec![(0b01, 0, 1), (0b10, 0, 1)]],
        vec![vec![(0, 0b01, 1)], vec![(0b01, 0, 1)]],
        vec![vec![(0, 0b011, 1), (0, 0b110, 3)], vec![(0b001, 0, 1), (0b010, 0, 1), (0b100, 0, 1)]],
        vec![vec![(0, 0b011, 1), (0, 0b110, 1)], vec![(0b001, 0, 1), (0b010, 0, 1), (0b100, 0, 1)]],
        vec![vec![(0, 0b111, 1), (0, 0b001, 2)], vec![(0b111, 0, 1)]],
        vec![vec![(0b01, 0b10, 1)], vec![(0b10, 0b01, 1)], vec![(0, 0b11, 1)]],
        vec![vec![(0, 0b0011, 1), (0, 0b0110, 2), (0, 0b1100, 3)], vec![(0b0001, 0, 1), (0b0010, 0, 1), (0b0100, 0, 1), (0b1000, 0, 1)]],
        vec![vec![(0, 0b0011, 1), (0, 0b1100, 1)], vec![(0b0001, 0, 1), (0b0010, 0, 1), (0b0100, 0, 1), (0b1000, 0, 1)]],
        vec![vec![(0, 0b101, 1), (0, 0b010, 5)], vec![(0b011, 0, 1), (0b100, 0, 2)]],
        vec![vec![(0b1, 0, 1)], vec![(0b1, 0b1, 1)]],
        vec![vec![(0, 0b11, 1), (0b11, 0, 1)], vec![(0b01, 0b10, 1)]],
        vec![vec![(0, 0b0111, 1), (0, 0b1110, 2)], vec![(0b0001, 0, 1), (0b0010, 0, 1), (0b0100, 0, 1), (0b1000, 0, 1)]],
        vec![vec![(0, 0b110, 1), (0, 0b001, 1)], vec![(0b010, 0, 1), (0b101, 0, 1)]],
        vec![vec![(0b11, 0b11, 1)], vec![(0, 0b01, 1), (0b10, 0, 3)]],
    ];
    for raw in raw_sets {
        let n = raw.iter().flatten().map(|&(x, z, _): &(u64, u64, i64)| 64 - (x | z).leading_zeros() as usize).max().unwrap().max(1);
        out.push(raw.iter().map(|g| gens(n, g)).collect());
    }
    out
}

