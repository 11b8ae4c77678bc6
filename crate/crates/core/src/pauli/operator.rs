use std::collections::HashMap;
use std::fmt;

use super::scalar::{Rational, Scalar};
use super::string::{Axis, PauliString};
use crate::error::{Error, Result};

/// Hermitian operator as a real combination of Pauli strings.
///
/// Terms are kept sorted in canonical string order with no zero coefficients,
/// so two operators are equal iff their term lists are equal. The Lie-algebra
/// element represented is `i·H`.
#[derive(Clone, PartialEq)]
pub struct Operator<S: Scalar = Rational> {
    n: usize,
    terms: Vec<(PauliString, S)>,
}

pub type ExactOperator = Operator<Rational>;

impl<S: Scalar> Operator<S> {
    pub fn zero(n: usize) -> Self {
        Operator { n, terms: Vec::new() }
    }

    pub fn from_string(p: PauliString, c: S) -> Self {
        let n = p.n();
        if c.is_zero() {
            return Self::zero(n);
        }
        Operator { n, terms: vec![(p, c)] }
    }

    /// Single-qubit term with a 1-based qubit index, coefficient one.
    pub fn single(n: usize, qubit: usize, axis: Axis) -> Result<Self> {
        if qubit == 0 || qubit > n {
            return Err(Error::QubitIndex { index: qubit, n });
        }
        Ok(Self::from_string(
            PauliString::single(n, qubit - 1, axis)?,
            S::one(),
        ))
    }

    /// Product string with unit coefficient from 1-based `(qubit, axis)` pairs.
    pub fn product(n: usize, factors: &[(usize, Axis)]) -> Result<Self> {
        let mut zero_based = Vec::with_capacity(factors.len());
        for &(q, a) in factors {
            if q == 0 || q > n {
                return Err(Error::QubitIndex { index: q, n });
            }
            zero_based.push((q - 1, a));
        }
        Ok(Self::from_string(
            PauliString::from_factors(n, &zero_based)?,
            S::one(),
        ))
    }

    /// Combine duplicate strings, drop zeros, sort canonically.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (PauliString, S)>,
    {
        let mut acc: HashMap<PauliString, S> = HashMap::new();
        for (p, c) in terms {
            if p.n() != n {
                return Err(Error::DimensionMismatch { left: n, right: p.n() });
            }
            accumulate(&mut acc, p, c);
        }
        Ok(Self::from_map(n, acc))
    }

    fn from_map(n: usize, acc: HashMap<PauliString, S>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|a| a.0);
        Operator { n, terms }
    }

    /// Caller guarantees sorted, distinct, nonzero terms.
    pub(crate) fn from_sorted_unchecked(n: usize, terms: Vec<(PauliString, S)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Operator { n, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(PauliString, S)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: &PauliString) -> Option<&S> {
        self.terms
            .binary_search_by(|(q, _)| q.cmp(p))
            .ok()
            .map(|i| &self.terms[i].1)
    }

    pub fn leading(&self) -> Option<&(PauliString, S)> {
        self.terms.first()
    }

    pub fn has_identity(&self) -> bool {
        self.terms.first().is_some_and(|(p, _)| p.is_identity())
    }

    pub fn is_diagonal(&self) -> bool {
        self.terms.iter().all(|(p, _)| p.is_diagonal())
    }

    /// Union of qubit supports of all terms.
    pub fn support_mask(&self) -> u64 {
        self.terms.iter().fold(0, |m, (p, _)| m | p.support_mask())
    }

    pub fn max_bits(&self) -> u64 {
        self.terms.iter().map(|(_, c)| c.bits()).max().unwrap_or(0)
    }

    fn check_n(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Operator {
            n: self.n,
            terms: self.terms.iter().map(|(p, a)| (*p, a.mul(c))).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Operator {
            n: self.n,
            terms: self.terms.iter().map(|(p, a)| (*p, a.neg())).collect(),
        }
    }

    /// `self + c·other`, merging sorted term lists.
    pub fn add_scaled(&self, c: &S, other: &Self) -> Result<Self> {
        self.check_n(other)?;
        Ok(self.add_scaled_unchecked(c, other))
    }

    pub(crate) fn add_scaled_unchecked(&self, c: &S, other: &Self) -> Self {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((b[j].0, b[j].1.mul(c)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let v = a[i].1.add(&b[j].1.mul(c));
                    if !v.is_zero() {
                        out.push((a[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|(p, v)| (*p, v.mul(c))));
        Operator { n: self.n, terms: out }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.add_scaled(&S::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add_scaled(&S::one().neg(), other)
    }

    /// Canonical sparse sum `Σ cᵢ·Aᵢ`; an empty list needs `n` from the caller.
    pub fn linear_combine(n: usize, pairs: &[(S, &Operator<S>)]) -> Result<Self> {
        let mut acc: HashMap<PauliString, S> = HashMap::new();
        for (c, op) in pairs {
            if op.n != n {
                return Err(Error::DimensionMismatch { left: n, right: op.n });
            }
            if c.is_zero() {
                continue;
            }
            for (p, a) in &op.terms {
                accumulate(&mut acc, *p, a.mul(c));
            }
        }
        Ok(Self::from_map(n, acc))
    }

    /// Normalized Lie bracket `(1/2i)[A, B]`.
    ///
    /// Only anticommuting string pairs contribute; for those `P·Q = i^k R` with
    /// `k` odd, giving `(1/2i)·2·i^k R = ±R`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.check_n(other)?;
        Ok(self.bracket_unchecked(other))
    }

    pub(crate) fn bracket_unchecked(&self, other: &Self) -> Self {
        let mut acc: HashMap<PauliString, S> =
            HashMap::with_capacity(self.terms.len().saturating_mul(other.terms.len()).min(1 << 16));
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                if p.commutes_unchecked(q) {
                    continue;
                }
                let (k, r) = p.product_unchecked(q);
                let v = a.mul(b);
                let v = if k == 1 { v } else { v.neg() };
                accumulate(&mut acc, r, v);
            }
        }
        Self::from_map(self.n, acc)
    }

    /// Relabel qubits with a 1-based permutation: `perm[j-1] = π(j)`.
    pub fn apply_permutation(&self, perm: &[usize]) -> Result<Self> {
        let zero_based = validate_permutation(self.n, perm)?;
        Ok(self.permute_zero_based(&zero_based))
    }

    pub(crate) fn permute_zero_based(&self, perm: &[usize]) -> Self {
        let mut terms: Vec<_> = self
            .terms
            .iter()
            .map(|(p, c)| (p.permuted(perm), c.clone()))
            .collect();
        terms.sort_unstable_by_key(|a| a.0);
        Operator { n: self.n, terms }
    }

    /// Terms whose strings satisfy `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&PauliString) -> bool) -> Self {
        Operator {
            n: self.n,
            terms: self.terms.iter().filter(|(p, _)| keep(p)).cloned().collect(),
        }
    }

    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Operator<T> {
        let terms = self
            .terms
            .iter()
            .map(|(p, c)| (*p, f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Operator { n: self.n, terms }
    }

    pub fn to_float(&self) -> Operator<f64> {
        self.map_scalar(|c| c.to_f64())
    }
}

fn accumulate<S: Scalar>(acc: &mut HashMap<PauliString, S>, p: PauliString, c: S) {
    match acc.get_mut(&p) {
        Some(v) => *v = v.add(&c),
        None => {
            acc.insert(p, c);
        }
    }
}

/// Check a 1-based permutation of `{1..n}` and convert it to 0-based.
pub fn validate_permutation(n: usize, perm: &[usize]) -> Result<Vec<usize>> {
    if perm.len() != n {
        return Err(Error::InvalidPermutation(format!(
            "length {} does not match {n} qubits",
            perm.len()
        )));
    }
    let mut seen = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for &t in perm {
        if t == 0 || t > n || seen[t - 1] {
            return Err(Error::InvalidPermutation(format!(
                "{perm:?} is not a bijection on 1..={n}"
            )));
        }
        seen[t - 1] = true;
        out.push(t - 1);
    }
    Ok(out)
}

impl<S: Scalar> fmt::Display for Operator<S> {
    /// Canonical rendering, e.g. `(3/2)*Z1*Z2 + (-1)*X3`; identity terms
    /// render as a bare `(c)` and the zero operator as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if p.is_identity() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{p}")?;
            }
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for Operator<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Operator[n={}]({})", self.n, self)
    }
}
