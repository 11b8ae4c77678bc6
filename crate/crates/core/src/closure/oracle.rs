use num_complex::Complex64;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::pauli::{to_dense, ExactOperator};

pub const ORACLE_LIMIT: usize = 3;
pub const ORACLE_TOLERANCE: f64 = 1e-8;

fn vectorize(m: &DenseMatrix) -> Vec<f64> {
    m.data().iter().flat_map(|c| [c.re, c.im]).collect()
}

fn devectorize(v: &[f64], dim: usize) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            let k = 2 * (i * dim + j);
            m[(i, j)] = Complex64::new(v[k], v[k + 1]);
        }
    }
    m
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Orthonormal real basis grown by modified Gram-Schmidt.
struct Span {
    q: Vec<Vec<f64>>,
}

impl Span {
    /// Add `v` if its component outside the span is above tolerance.
    ///
    /// The threshold is absolute for short vectors so that roundoff left in
    /// a vanishing commutator is not rescaled into a spurious direction.
    fn insert(&mut self, mut v: Vec<f64>) -> Option<usize> {
        let scale = norm(&v).max(1.0);
        for _ in 0..2 {
            for q in &self.q {
                let c = dot(q, &v);
                for (x, y) in v.iter_mut().zip(q) {
                    *x -= c * y;
                }
            }
        }
        let r = norm(&v);
        if r <= ORACLE_TOLERANCE * scale {
            return None;
        }
        for x in &mut v {
            *x /= r;
        }
        self.q.push(v);
        Some(self.q.len() - 1)
    }
}

/// Dimension of `⟨iG₁, …⟩_Lie` computed with explicit `2^n × 2^n` matrices.
///
/// Independent of the sparse kernel: elements are skew-Hermitian matrices,
/// brackets are matrix commutators, and rank is decided by orthogonal
/// projection.
pub fn dense_closure_oracle(generators: &[ExactOperator]) -> Result<usize> {
    let first = generators
        .first()
        .ok_or_else(|| Error::InvalidArgument("oracle needs at least one generator".into()))?;
    let n = first.n();
    if n > ORACLE_LIMIT {
        return Err(Error::DenseLimit { n, limit: ORACLE_LIMIT });
    }
    let dim = 1usize << n;
    let ambient = dim * dim - 1;
    let i = Complex64::new(0.0, 1.0);
    let gens: Vec<DenseMatrix> = generators
        .iter()
        .map(|g| to_dense(g, ORACLE_LIMIT).map(|m| m.scale(i)))
        .collect::<Result<_>>()?;
    let mut span = Span { q: Vec::new() };
    let mut elements: Vec<DenseMatrix> = Vec::new();
    let mut frontier = Vec::new();
    for g in &gens {
        if span.insert(vectorize(g)).is_some() {
            elements.push(g.clone());
            frontier.push(elements.len() - 1);
        }
    }
    while !frontier.is_empty() && span.q.len() < ambient {
        let mut next = Vec::new();
        for &e in &frontier {
            for g in &gens {
                let a = &elements[e];
                let c = a.matmul(g).sub(&g.matmul(a));
                if let Some(k) = span.insert(vectorize(&c)) {
                    elements.push(devectorize(&span.q[k], dim));
                    next.push(elements.len() - 1);
                }
            }
        }
        frontier = next;
    }
    Ok(span.q.len())
}
