use std::collections::HashMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{Operator, PauliString, Scalar};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_BIT_BUDGET: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Mode {
    Exact,
    Float { tolerance: f64 },
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float { .. } => "float",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClosureOptions {
    /// Only consulted by float runs.
    pub tolerance: f64,
    pub bit_budget: u64,
    /// `None` uses the ambient rayon pool.
    pub threads: Option<usize>,
    pub early_exit: bool,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        ClosureOptions {
            tolerance: DEFAULT_TOLERANCE,
            bit_budget: DEFAULT_BIT_BUDGET,
            threads: None,
            early_exit: true,
        }
    }
}

/// Counters from one closure run.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ClosureStats {
    pub rounds: usize,
    pub brackets: usize,
    pub early_exit: bool,
    pub max_bits: u64,
    pub wall_ms: u128,
}

/// `4^n − 1`, saturating for large `n`.
pub fn ambient_dimension(n: usize) -> u128 {
    if n >= 64 {
        u128::MAX
    } else {
        (1u128 << (2 * n)) - 1
    }
}

/// Fully reduced echelon basis of a real span of traceless operators.
#[derive(Debug, Clone)]
pub struct LieBasis<S: Scalar> {
    n: usize,
    rows: Vec<Operator<S>>,
    pivots: Vec<PauliString>,
    pivot_index: HashMap<PauliString, usize>,
    generators: Vec<Operator<S>>,
    tolerance: f64,
}

impl<S: Scalar> LieBasis<S> {
    pub fn new(n: usize, tolerance: f64) -> Self {
        LieBasis {
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_index: HashMap::new(),
            generators: Vec::new(),
            tolerance,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Operator<S>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[PauliString] {
        &self.pivots
    }

    pub fn generators(&self) -> &[Operator<S>] {
        &self.generators
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() as u128 == ambient_dimension(self.n)
    }

    /// `candidate − Σ c_p·row_p`, eliminating every pivot string.
    pub fn reduce_against(&self, candidate: &Operator<S>) -> Result<Operator<S>> {
        if candidate.n() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: candidate.n(),
            });
        }
        Ok(self.reduce(candidate))
    }

    pub(crate) fn reduce(&self, candidate: &Operator<S>) -> Operator<S> {
        let hits: Vec<(usize, &S)> = candidate
            .terms()
            .iter()
            .filter_map(|(p, c)| self.pivot_index.get(p).map(|&r| (r, c)))
            .collect();
        if hits.is_empty() {
            return candidate.clone();
        }
        // Rows carry no foreign pivots, so one combination clears them all.
        let mut acc: HashMap<PauliString, S> = HashMap::with_capacity(candidate.len() * 2);
        let mut scale = 0f64;
        for (p, c) in candidate.terms() {
            if !S::EXACT {
                scale = scale.max(c.abs_f64());
            }
            acc.insert(*p, c.clone());
        }
        for (r, c) in hits {
            let row = &self.rows[r];
            if !S::EXACT {
                scale = scale.max(c.abs_f64());
            }
            let minus_c = c.neg();
            for (p, a) in row.terms() {
                let v = a.mul(&minus_c);
                match acc.get_mut(p) {
                    Some(x) => *x = x.add(&v),
                    None => {
                        acc.insert(*p, v);
                    }
                }
            }
        }
        let threshold = self.tolerance * scale;
        let mut terms: Vec<(PauliString, S)> = acc
            .into_iter()
            .filter(|(p, c)| {
                !c.is_zero() && (S::EXACT || (c.abs_f64() > threshold && !self.pivot_index.contains_key(p)))
            })
            .collect();
        terms.sort_unstable_by_key(|a| a.0);
        Operator::from_sorted_unchecked(self.n, terms)
    }

    fn snap(&self, op: Operator<S>) -> Operator<S> {
        if S::EXACT {
            op
        } else {
            op.filter_values(self.tolerance)
        }
    }

    /// Admit a nonzero residual; returns its row index.
    pub(crate) fn admit(&mut self, residual: Operator<S>, budget: u64) -> Result<usize> {
        let (pivot, lead) = residual.leading().cloned().expect("nonzero residual");
        debug_assert!(!self.pivot_index.contains_key(&pivot));
        let row = self.snap(residual.scale(&S::one().div(&lead)));
        if S::EXACT {
            check_bits(&row, budget)?;
        }
        let idx = self.rows.len();
        let row_ref = &row;
        let touched: Vec<usize> = self
            .rows
            .par_iter_mut()
            .enumerate()
            .filter_map(|(i, r)| {
                let pos = r.terms().binary_search_by(|(p, _)| p.cmp(&pivot)).ok()?;
                let c = r.terms()[pos].1.neg();
                *r = r.add_scaled_unchecked(&c, row_ref);
                Some(i)
            })
            .collect();
        if !S::EXACT {
            let tol = self.tolerance;
            for &i in &touched {
                let r = std::mem::replace(&mut self.rows[i], Operator::zero(self.n));
                self.rows[i] = r.filter_values(tol).without(&pivot);
            }
        } else {
            for &i in &touched {
                check_bits(&self.rows[i], budget)?;
            }
        }
        self.rows.push(row);
        self.pivots.push(pivot);
        self.pivot_index.insert(pivot, idx);
        Ok(idx)
    }

    /// `Some(coefficients)` over rows when `target` lies in the span.
    pub fn membership(&self, target: &Operator<S>) -> Result<Option<Vec<(usize, S)>>> {
        let residual = self.reduce_against(target)?;
        if !residual.is_zero() {
            return Ok(None);
        }
        Ok(Some(
            target
                .terms()
                .iter()
                .filter_map(|(p, c)| self.pivot_index.get(p).map(|&r| (r, c.clone())))
                .collect(),
        ))
    }

    pub fn contains(&self, target: &Operator<S>) -> Result<bool> {
        Ok(self.reduce_against(target)?.is_zero())
    }

    /// `Σ cᵢ·rowᵢ`.
    pub fn expand(&self, coefficients: &[(usize, S)]) -> Operator<S> {
        let pairs: Vec<_> = coefficients
            .iter()
            .map(|(r, c)| (c.clone(), &self.rows[*r]))
            .collect();
        Operator::linear_combine(self.n, &pairs).expect("rows share n")
    }

    pub fn max_bits(&self) -> u64 {
        self.rows.iter().map(Operator::max_bits).max().unwrap_or(0)
    }

    /// Echelon basis of all traceless operators: one unit row per
    /// non-identity string, in canonical order.
    pub fn full(n: usize, generators: Vec<Operator<S>>) -> Result<Self> {
        if n > MAX_FULL_QUBITS {
            return Err(Error::InvalidArgument(format!(
                "refusing to materialize 4^{n} - 1 basis rows"
            )));
        }
        let mut strings = Vec::with_capacity((1usize << (2 * n)) - 1);
        for x in 0..1u64 << n {
            for z in 0..1u64 << n {
                if x | z != 0 {
                    strings.push(PauliString::from_masks(n, x, z)?);
                }
            }
        }
        strings.sort_unstable();
        let mut b = LieBasis::new(n, 0.0);
        b.generators = generators;
        for (i, p) in strings.into_iter().enumerate() {
            b.rows.push(Operator::from_string(p, S::one()));
            b.pivots.push(p);
            b.pivot_index.insert(p, i);
        }
        Ok(b)
    }
}

/// Largest `n` for which a full basis is materialized.
pub const MAX_FULL_QUBITS: usize = 9;

fn check_bits<S: Scalar>(row: &Operator<S>, budget: u64) -> Result<()> {
    let bits = row.max_bits();
    if bits > budget {
        return Err(Error::OverflowGuard { bits, budget });
    }
    Ok(())
}

trait FloatClean<S: Scalar> {
    fn filter_values(self, threshold_rel: f64) -> Self;
    fn without(self, p: &PauliString) -> Self;
}

impl<S: Scalar> FloatClean<S> for Operator<S> {
    fn filter_values(self, threshold_rel: f64) -> Self {
        let scale = self.terms().iter().map(|(_, c)| c.abs_f64()).fold(0.0, f64::max);
        let threshold = threshold_rel * scale;
        let terms = self
            .terms()
            .iter()
            .filter(|(_, c)| c.abs_f64() > threshold)
            .cloned()
            .collect();
        Operator::from_sorted_unchecked(self.n(), terms)
    }

    fn without(self, p: &PauliString) -> Self {
        self.filter(|q| q != p)
    }
}

fn validate<S: Scalar>(generators: &[Operator<S>]) -> Result<usize> {
    let n = generators
        .first()
        .ok_or_else(|| Error::InvalidArgument("closure needs at least one generator".into()))?
        .n();
    for (i, g) in generators.iter().enumerate() {
        if g.n() != n {
            return Err(Error::DimensionMismatch { left: n, right: g.n() });
        }
        if g.has_identity() {
            return Err(Error::IdentityGenerator(i));
        }
    }
    Ok(n)
}

/// Span of `⟨iG₁, …, iG_q⟩_Lie`.
///
/// Each admitted row is bracketed against the generators only; left-normed
/// brackets already span the generated algebra. Brackets in a round run in
/// parallel and are pre-reduced against the round's starting basis, then
/// finished and admitted serially in (row, generator) order, so the result
/// does not depend on the thread count.
pub fn lie_closure<S: Scalar>(
    generators: &[Operator<S>],
    options: &ClosureOptions,
) -> Result<(LieBasis<S>, ClosureStats)> {
    match options.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(|| closure_inner(generators, options)),
        None => closure_inner(generators, options),
    }
}

fn closure_inner<S: Scalar>(
    generators: &[Operator<S>],
    options: &ClosureOptions,
) -> Result<(LieBasis<S>, ClosureStats)> {
    let start = Instant::now();
    let n = validate(generators)?;
    let tolerance = if S::EXACT { 0.0 } else { options.tolerance };
    let mut basis = LieBasis::new(n, tolerance);
    basis.generators = generators.to_vec();
    let mut stats = ClosureStats::default();
    let mut frontier: Vec<usize> = Vec::new();

    for g in generators {
        let r = basis.reduce(g);
        if !r.is_zero() {
            frontier.push(basis.admit(r, options.bit_budget)?);
        }
    }

    while !frontier.is_empty() && !(options.early_exit && basis.is_full()) {
        stats.rounds += 1;
        let jobs: Vec<(usize, usize)> = frontier
            .iter()
            .flat_map(|&r| (0..generators.len()).map(move |g| (r, g)))
            .collect();
        stats.brackets += jobs.len();
        let snapshot = &basis;
        // Row contents at the start of the round are what gets bracketed.
        let candidates: Vec<Operator<S>> = jobs
            .par_iter()
            .map(|&(r, g)| {
                let b = snapshot.rows[r].bracket_unchecked(&generators[g]);
                snapshot.reduce(&b)
            })
            .collect();
        let mut next = Vec::new();
        for cand in candidates {
            if cand.is_zero() {
                continue;
            }
            let r = basis.reduce(&cand);
            if r.is_zero() {
                continue;
            }
            next.push(basis.admit(r, options.bit_budget)?);
            if options.early_exit && basis.is_full() {
                stats.early_exit = true;
                break;
            }
        }
        frontier = next;
    }
    stats.early_exit = stats.early_exit || (options.early_exit && basis.is_full() && !frontier.is_empty());
    stats.max_bits = basis.max_bits();
    stats.wall_ms = start.elapsed().as_millis();
    Ok((basis, stats))
}
