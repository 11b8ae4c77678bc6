use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::basis::{ambient_dimension, lie_closure, ClosureOptions, Mode};
use super::exact::{exact_closure, ExactStrategy, Method};
use super::symmetry::{detect_permutation_symmetries, SymmetrySearch};
use crate::error::Result;
use crate::hamlib::{Constraint, Family, ProblemSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisOptions {
    pub mode: Mode,
    pub closure: ClosureOptions,
    pub strategy: ExactStrategy,
    /// Number of seeds (starting at the spec's) to rerun the closure with.
    pub stability: usize,
    pub symmetry_budget: Option<u64>,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            mode: Mode::Exact,
            closure: ClosureOptions::default(),
            strategy: ExactStrategy::Auto,
            stability: 1,
            symmetry_budget: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Universal,
    /// A qubit-permutation symmetry certifies non-universality.
    NonUniversalCertified,
    /// Dimension fell short at the sampled coefficients; no certificate.
    DeficientAtSample,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedRun {
    pub seed: u64,
    pub dimension: usize,
    pub method: Method,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stability {
    pub runs: Vec<SeedRun>,
    pub agree: bool,
}

/// Whether the sufficient conditions behind the universality theorems hold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hypotheses {
    pub checked: Vec<String>,
    pub violated: Vec<String>,
    pub hold: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub family: Family,
    pub n: usize,
    pub dimension: usize,
    pub ambient: String,
    pub ambient_dimension: u128,
    pub universal: bool,
    pub verdict: Verdict,
    pub early_exit: bool,
    pub mode: String,
    pub method: Method,
    pub modular_dimension: Option<usize>,
    pub rounds: usize,
    pub brackets: usize,
    pub seeds: Vec<u64>,
    pub coefficients: BTreeMap<String, String>,
    pub sampled: Vec<String>,
    pub hypotheses: Option<Hypotheses>,
    pub symmetries: Vec<String>,
    pub symmetry_search_complete: bool,
    pub stability: Stability,
    pub notes: Vec<String>,
    pub wall_ms: u128,
}

impl ClosureReport {
    /// JSON with the wall-time field zeroed, for determinism comparisons.
    pub fn canonical_json(&self) -> String {
        let mut c = self.clone();
        c.wall_ms = 0;
        serde_json::to_string_pretty(&c).expect("report serializes")
    }
}

struct Run {
    dimension: usize,
    method: Method,
    modular_dimension: Option<usize>,
    rounds: usize,
    brackets: usize,
    early_exit: bool,
}

fn closure_once(spec: &ProblemSpec, opts: &AnalysisOptions) -> Result<Run> {
    let (hz, hx) = spec.hamiltonians()?;
    match opts.mode {
        Mode::Exact => {
            let c = exact_closure(&[hz, hx], &opts.closure, opts.strategy)?;
            Ok(Run {
                dimension: c.dimension(),
                method: c.method,
                modular_dimension: c.modular_dimension,
                rounds: c.stats.rounds,
                brackets: c.stats.brackets,
                early_exit: c.stats.early_exit,
            })
        }
        Mode::Float { tolerance } => {
            let o = ClosureOptions {
                tolerance,
                ..opts.closure.clone()
            };
            let (b, s) = lie_closure(&[hz.to_float(), hx.to_float()], &o)?;
            Ok(Run {
                dimension: b.dimension(),
                method: Method::FloatElimination,
                modular_dimension: None,
                rounds: s.rounds,
                brackets: s.brackets,
                early_exit: s.early_exit,
            })
        }
    }
}

/// Sufficient conditions of the family's universality theorem, where stated.
pub fn hypotheses(spec: &ProblemSpec) -> Result<Option<Hypotheses>> {
    let cs: Vec<Constraint> = match spec.family {
        Family::Chain => spec.constraints(),
        Family::Hyperchain => vec![
            Constraint::Nonzero("delta".into()),
            Constraint::Nonzero("gamma".into()),
        ],
        _ => return Ok(None),
    };
    let mut checked = Vec::new();
    let mut violated = Vec::new();
    for c in &cs {
        checked.push(c.describe());
        if !c.holds(&spec.coefficients)? {
            violated.push(c.describe());
        }
    }
    Ok(Some(Hypotheses {
        hold: violated.is_empty(),
        checked,
        violated,
    }))
}

/// Closure dimension, verdict, symmetry search and seed stability for a spec.
pub fn analyze(spec: &ProblemSpec, opts: &AnalysisOptions) -> Result<ClosureReport> {
    let start = Instant::now();
    let first = closure_once(spec, opts)?;
    let ambient = ambient_dimension(spec.n);
    let universal = first.dimension as u128 == ambient;

    let mut k = opts.stability.max(1);
    if matches!(opts.mode, Mode::Float { .. }) && !universal {
        k = k.max(2);
    }
    let sampled = spec.sampled_symbols();
    let mut runs = vec![SeedRun {
        seed: spec.seed,
        dimension: first.dimension,
        method: first.method,
    }];
    for i in 1..k as u64 {
        let seed = spec.seed.wrapping_add(i);
        let run = if sampled.is_empty() {
            SeedRun { seed, ..runs[0].clone() }
        } else {
            let r = closure_once(&spec.with_seed(seed)?, opts)?;
            SeedRun {
                seed,
                dimension: r.dimension,
                method: r.method,
            }
        };
        runs.push(run);
    }
    let agree = runs.iter().all(|r| r.dimension == first.dimension);

    let (hz, hx) = spec.hamiltonians()?;
    let search: SymmetrySearch = detect_permutation_symmetries(&hz, &hx, opts.symmetry_budget)?;
    let symmetries: Vec<String> = search.certificates.iter().map(|c| c.cycles.clone()).collect();

    let verdict = if universal {
        Verdict::Universal
    } else if !symmetries.is_empty() {
        Verdict::NonUniversalCertified
    } else {
        Verdict::DeficientAtSample
    };

    let hyp = hypotheses(spec)?;
    let mut notes = Vec::new();
    if let Some(h) = &hyp {
        if !h.hold {
            notes.push(format!(
                "sufficient conditions fail ({}); the theorem does not apply and no non-universality is claimed without a symmetry certificate",
                h.violated.join(", ")
            ));
        }
    }
    if universal && !symmetries.is_empty() {
        notes.push("inconsistent: symmetry certificate found for a full-dimension closure".into());
    }
    if !agree {
        notes.push("closure dimension differs across seeds; sampled point may be non-generic".into());
    }
    if spec.family == Family::Chain && spec.n.is_multiple_of(2) && universal {
        notes.push(
            "even-length chain closes to the full algebra at these coefficients; the mirror-symmetry obstruction needs wA = wB"
                .into(),
        );
    }
    if !sampled.is_empty() {
        notes.push(
            "sampled coefficients are generic rationals, not rationally independent reals; the verdict is for this sample"
                .into(),
        );
    }
    if let Mode::Float { .. } = opts.mode {
        notes.push("float mode: rank decisions use a relative tolerance".into());
    }

    Ok(ClosureReport {
        family: spec.family,
        n: spec.n,
        dimension: first.dimension,
        ambient: format!("4^{}-1", spec.n),
        ambient_dimension: ambient,
        universal,
        verdict,
        early_exit: first.early_exit,
        mode: opts.mode.name().to_string(),
        method: first.method,
        modular_dimension: first.modular_dimension,
        rounds: first.rounds,
        brackets: first.brackets,
        seeds: runs.iter().map(|r| r.seed).collect(),
        coefficients: spec.coefficients.to_strings(),
        sampled,
        hypotheses: hyp,
        symmetries,
        symmetry_search_complete: search.complete,
        stability: Stability { runs, agree },
        notes,
        wall_ms: start.elapsed().as_millis(),
    })
}
