use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{ExactOperator, PauliString, Rational};

/// Largest `n` searched over the full symmetric group.
pub const EXHAUSTIVE_LIMIT: usize = 10;
pub const DEFAULT_SYMMETRY_BUDGET: u64 = 2_000_000;
const MAX_CERTIFICATES: usize = 256;

/// Qubit permutation fixing both Hamiltonians exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryCertificate {
    /// 1-based images: qubit `j` goes to `permutation[j-1]`.
    pub permutation: Vec<usize>,
    pub cycles: String,
    pub residual_hz_terms: usize,
    pub residual_hx_terms: usize,
}

impl SymmetryCertificate {
    /// Recompute `π(H) − H` for both operators.
    pub fn verify(&self, hz: &ExactOperator, hx: &ExactOperator) -> Result<bool> {
        let a = hz.apply_permutation(&self.permutation)?.sub(hz)?;
        let b = hx.apply_permutation(&self.permutation)?.sub(hx)?;
        Ok(a.is_zero() && b.is_zero() && !is_identity(&self.permutation))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetrySearch {
    pub certificates: Vec<SymmetryCertificate>,
    /// Every permutation was considered.
    pub complete: bool,
    pub involutions_only: bool,
    pub nodes: u64,
}

fn is_identity(perm: &[usize]) -> bool {
    perm.iter().enumerate().all(|(i, &p)| p == i + 1)
}

/// Cycle notation for a 1-based permutation, fixed points omitted; `()` for identity.
pub fn cycle_notation(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start + 1 {
            continue;
        }
        let mut cyc = Vec::new();
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            cyc.push((j + 1).to_string());
            j = perm[j] - 1;
        }
        out.push('(');
        out.push_str(&cyc.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

struct Search<'a> {
    n: usize,
    terms: HashMap<PauliString, &'a Rational>,
    /// Terms grouped by the highest qubit in their support.
    by_top: Vec<Vec<(PauliString, &'a Rational)>>,
    signature: Vec<Vec<(String, u32, u8)>>,
    perm: Vec<Option<usize>>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
    involutions: bool,
    found: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(hz: &'a ExactOperator, budget: u64, involutions: bool) -> Self {
        let n = hz.n();
        let mut by_top = vec![Vec::new(); n];
        let mut signature = vec![Vec::new(); n];
        for (p, c) in hz.terms() {
            let s = p.support_mask();
            if s == 0 {
                continue;
            }
            by_top[63 - s.leading_zeros() as usize].push((*p, c));
            for q in 0..n {
                if s >> q & 1 == 1 {
                    let (x, z) = p.axis(q).bits();
                    signature[q].push((c.to_string(), p.weight(), (x as u8) << 1 | z as u8));
                }
            }
        }
        for s in &mut signature {
            s.sort();
        }
        Search {
            n,
            terms: hz.terms().iter().map(|(p, c)| (*p, c)).collect(),
            by_top,
            signature,
            perm: vec![None; n],
            used: vec![false; n],
            nodes: 0,
            budget,
            exhausted: false,
            involutions,
            found: Vec::new(),
        }
    }

    /// Terms whose support is now fully assigned map onto equal terms.
    fn consistent_upto(&self, q: usize) -> bool {
        let perm: Vec<usize> = self.perm.iter().map(|p| p.unwrap_or(0)).collect();
        self.by_top[q].iter().all(|(p, c)| {
            let img = p.permuted(&perm);
            self.terms.get(&img).is_some_and(|d| d == c)
        })
    }

    fn record(&mut self) {
        let perm: Vec<usize> = self.perm.iter().map(|p| p.expect("complete") + 1).collect();
        if !is_identity(&perm) {
            if self.found.len() >= MAX_CERTIFICATES {
                self.exhausted = true;
                return;
            }
            self.found.push(perm);
        }
    }

    fn run(&mut self, q: usize) {
        if self.exhausted {
            return;
        }
        if q == self.n {
            self.record();
            return;
        }
        if self.perm[q].is_some() {
            // Pre-assigned as the partner of an earlier involution swap.
            if self.consistent_upto(q) {
                self.run(q + 1);
            }
            return;
        }
        for t in 0..self.n {
            if self.used[t] || self.signature[q] != self.signature[t] {
                continue;
            }
            if self.involutions && t < q {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                self.exhausted = true;
                return;
            }
            self.perm[q] = Some(t);
            self.used[t] = true;
            if self.involutions && t != q {
                self.perm[t] = Some(q);
                self.used[q] = true;
            }
            if self.consistent_upto(q) {
                self.run(q + 1);
            }
            if self.involutions && t != q {
                self.perm[t] = None;
                self.used[q] = false;
            }
            self.perm[q] = None;
            self.used[t] = false;
            if self.exhausted {
                return;
            }
        }
    }
}

/// Nontrivial qubit permutations `π` with `π(H_Z) = H_Z` and `π(H_X) = H_X`.
///
/// Up to [`EXHAUSTIVE_LIMIT`] qubits every permutation is considered, pruned
/// by per-qubit term signatures. Beyond that only involutions are tried, and
/// only when a node `budget` is given; such results are never complete.
pub fn detect_permutation_symmetries(
    hz: &ExactOperator,
    hx: &ExactOperator,
    budget: Option<u64>,
) -> Result<SymmetrySearch> {
    if hz.n() != hx.n() {
        return Err(Error::DimensionMismatch {
            left: hz.n(),
            right: hx.n(),
        });
    }
    let n = hz.n();
    let involutions = n > EXHAUSTIVE_LIMIT;
    if involutions && budget.is_none() {
        return Ok(SymmetrySearch {
            certificates: Vec::new(),
            complete: false,
            involutions_only: true,
            nodes: 0,
        });
    }
    let mut search = Search::new(hz, budget.unwrap_or(DEFAULT_SYMMETRY_BUDGET), involutions);
    search.run(0);
    let mut certificates = Vec::new();
    for perm in &search.found {
        let rz = hz.apply_permutation(perm)?.sub(hz)?;
        let rx = hx.apply_permutation(perm)?.sub(hx)?;
        // H_Z matched by construction; H_X is checked here.
        if rz.is_zero() && rx.is_zero() {
            certificates.push(SymmetryCertificate {
                permutation: perm.clone(),
                cycles: cycle_notation(perm),
                residual_hz_terms: rz.len(),
                residual_hx_terms: rx.len(),
            });
        }
    }
    Ok(SymmetrySearch {
        certificates,
        complete: !search.exhausted && !involutions,
        involutions_only: involutions,
        nodes: search.nodes,
    })
}
