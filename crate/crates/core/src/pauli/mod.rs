//! Pauli strings, real-coefficient Hermitian operators, and the normalized
//! Lie bracket `(1/2i)[A, B]`.

mod operator;
mod parse;
mod scalar;
mod string;

use num_complex::Complex64;

pub use operator::{validate_permutation, ExactOperator, Operator};
pub use parse::parse_operator;
pub use scalar::{Rational, Scalar};
pub use string::{Axis, PauliString, MAX_QUBITS};

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};

pub const DEFAULT_DENSE_LIMIT: usize = 6;

/// `P·Q = i^k · R`.
pub fn pauli_product(p: &PauliString, q: &PauliString) -> Result<(u8, PauliString)> {
    p.product(q)
}

pub fn commutes(p: &PauliString, q: &PauliString) -> Result<bool> {
    p.commutes(q)
}

/// `(1/2i)(AB − BA)`.
pub fn bracket<S: Scalar>(a: &Operator<S>, b: &Operator<S>) -> Result<Operator<S>> {
    a.bracket(b)
}

pub fn linear_combine<S: Scalar>(n: usize, pairs: &[(S, &Operator<S>)]) -> Result<Operator<S>> {
    Operator::linear_combine(n, pairs)
}

/// `perm` is 1-based: qubit `j` is sent to `perm[j-1]`.
pub fn apply_permutation<S: Scalar>(a: &Operator<S>, perm: &[usize]) -> Result<Operator<S>> {
    a.apply_permutation(perm)
}

fn single_qubit_matrix(axis: Axis) -> [[Complex64; 2]; 2] {
    let o = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    match axis {
        Axis::I => [[one, o], [o, one]],
        Axis::X => [[o, one], [one, o]],
        Axis::Y => [[o, -i], [i, o]],
        Axis::Z => [[one, o], [o, -one]],
    }
}

/// Matrix of a single Pauli string; qubit 1 is the leftmost tensor factor.
pub fn string_to_dense(p: &PauliString) -> DenseMatrix {
    let n = p.n();
    let dim = 1usize << n;
    let mut m = DenseMatrix::zeros(dim);
    // Each row has exactly one nonzero entry: column = row XOR x-pattern.
    let mats: Vec<_> = (0..n).map(|q| single_qubit_matrix(p.axis(q))).collect();
    for row in 0..dim {
        let mut col = 0usize;
        let mut v = Complex64::new(1.0, 0.0);
        for (q, mat) in mats.iter().enumerate() {
            let shift = n - 1 - q;
            let r = row >> shift & 1;
            let c = r ^ (p.x_mask() >> q & 1) as usize;
            v *= mat[r][c];
            col |= c << shift;
        }
        m[(row, col)] = v;
    }
    m
}

/// Dense `2^n × 2^n` matrix `Σ c·P`.
pub fn to_dense<S: Scalar>(a: &Operator<S>, limit: usize) -> Result<DenseMatrix> {
    if a.n() > limit {
        return Err(Error::DenseLimit { n: a.n(), limit });
    }
    let mut m = DenseMatrix::zeros(1 << a.n());
    for (p, c) in a.terms() {
        m = m.add(&string_to_dense(p).scale(Complex64::new(c.to_f64(), 0.0)));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn dense_identity_and_z() {
        let i1: ExactOperator = Operator::from_string(PauliString::identity(1).unwrap(), Rational::one());
        assert_eq!(to_dense(&i1, 6).unwrap(), DenseMatrix::identity(2));
        let z1: ExactOperator = Operator::single(1, 1, Axis::Z).unwrap();
        let d = to_dense(&z1, 6).unwrap();
        assert_eq!(d, DenseMatrix::from_rows(&[vec![c(1.0), c(0.0)], vec![c(0.0), c(-1.0)]]));
    }

    #[test]
    fn dense_cnot_expansion() {
        let a = parse_operator("1/2 + (1/2)*Z1 + (1/2)*X2 + (-1/2)*Z1*X2", 2).unwrap();
        let d = to_dense(&a, 6).unwrap();
        let mut cnot = DenseMatrix::zeros(4);
        cnot[(0, 0)] = c(1.0);
        cnot[(1, 1)] = c(1.0);
        cnot[(2, 3)] = c(1.0);
        cnot[(3, 2)] = c(1.0);
        assert_eq!(d, cnot);
    }

    #[test]
    fn dense_matches_kron_construction() {
        let p = PauliString::from_factors(3, &[(0, Axis::Y), (2, Axis::X)]).unwrap();
        let expected = string_to_dense(&PauliString::single(1, 0, Axis::Y).unwrap())
            .kron(&DenseMatrix::identity(2))
            .kron(&string_to_dense(&PauliString::single(1, 0, Axis::X).unwrap()));
        assert!(string_to_dense(&p).max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn dense_limit_enforced() {
        let z: ExactOperator = Operator::single(7, 1, Axis::Z).unwrap();
        assert!(matches!(to_dense(&z, 6), Err(Error::DenseLimit { .. })));
    }

    #[test]
    fn product_phase_matches_dense() {
        // Z1Z2 · X1X2 = i^2 Y1Y2
        let zz = PauliString::from_factors(2, &[(0, Axis::Z), (1, Axis::Z)]).unwrap();
        let xx = PauliString::from_factors(2, &[(0, Axis::X), (1, Axis::X)]).unwrap();
        let (k, r) = pauli_product(&zz, &xx).unwrap();
        let lhs = string_to_dense(&zz).matmul(&string_to_dense(&xx));
        let phase = Complex64::new(0.0, 1.0).powu(k as u32);
        let rhs = string_to_dense(&r).scale(phase);
        assert!(lhs.max_abs_diff(&rhs) < 1e-15);
        assert_eq!(k, 2);
        assert!(commutes(&zz, &xx).unwrap());
    }
}
