use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::engine::{completions, forcing_run, ForcingMode, ForcingOptions, ForcingState};
use crate::closure::{ambient_dimension, exact_closure, ClosureOptions, ExactStrategy, Method};
use crate::error::Result;
use crate::hamlib::{x, zz, CoefficientAssignment, Family, GraphSpec, ProblemSpec, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipCheck {
    /// Vertex labels, e.g. `Z1 Z3` or `X2`.
    pub target: String,
    /// `Some(true)` when forcing predicts membership; `None` without a prediction.
    pub predicted: Option<bool>,
    pub member: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForcingUniversality {
    pub mode: ForcingMode,
    pub forcing: bool,
    pub state: ForcingState,
    pub dimension: usize,
    pub ambient_dimension: u128,
    pub universal: bool,
    pub method: Method,
    pub coefficients: BTreeMap<String, String>,
    pub checks: Vec<MembershipCheck>,
    /// Predicted members that are absent from the closure.
    pub mismatches: Vec<String>,
    pub notes: Vec<String>,
}

fn family(mode: ForcingMode) -> Family {
    match mode {
        ForcingMode::Generalized => Family::MultitypeGraph,
        _ => Family::Graph,
    }
}

/// `g` with `S₁`/`S₂` installed as its infected sets.
pub fn with_initial_sets(
    g: &GraphSpec,
    s1: &BTreeSet<Vertex>,
    s2: &BTreeSet<(Vertex, Vertex)>,
) -> GraphSpec {
    let mut g = g.clone();
    g.infected_vertices = s1.iter().copied().collect();
    g.infected_2edges = s2.iter().copied().collect();
    g
}

/// Generic coefficients for the Hamiltonian built from `g` with initial set `s1`.
pub fn sampled_forcing_coefficients(
    g: &GraphSpec,
    s1: &BTreeSet<Vertex>,
    mode: ForcingMode,
    seed: u64,
) -> Result<CoefficientAssignment> {
    let g = with_initial_sets(g, s1, &BTreeSet::new());
    let spec = ProblemSpec::sampled(family(mode), g.n(), None, Some(g), seed)?;
    Ok(spec.coefficients)
}

/// Run the forcing process and the closure side by side.
///
/// Membership of `Z_k Z_j` is checked for every edge (in hyper mode also
/// every 2-element hyperedge and every terminal infected 2-edge) and of
/// `X_k` for every vertex. Only a forcing set yields predictions; failure to
/// force is never read as non-universality.
pub fn forcing_to_universality(
    g: &GraphSpec,
    s1: &BTreeSet<Vertex>,
    s2: &BTreeSet<(Vertex, Vertex)>,
    mode: ForcingMode,
    coefficients: &CoefficientAssignment,
    closure: &ClosureOptions,
) -> Result<ForcingUniversality> {
    let state = forcing_run(g, s1, s2, mode, ForcingOptions::default())?;
    let forcing = state.covers(g);
    let g1 = with_initial_sets(g, s1, s2);
    let spec = ProblemSpec::from_parts(family(mode), g1.n(), None, Some(g1), coefficients.clone())
        .with_seed(0)?;
    let (hz, hx) = spec.hamiltonians()?;
    let n = hz.n();
    let c = exact_closure(&[hz, hx], closure, ExactStrategy::Auto)?;

    let mut pairs: BTreeSet<(Vertex, Vertex)> = g.edges.iter().map(|e| e.key()).collect();
    if mode == ForcingMode::Hyper {
        completions(g)?;
        for h in g.hyperedges.iter().filter(|h| h.len() == 2) {
            pairs.insert((h[0].min(h[1]), h[0].max(h[1])));
        }
        pairs.extend(state.infected_2edges.iter().copied());
    }
    let q = g.qubit_map();
    let predicted = forcing.then_some(true);
    let mut checks = Vec::new();
    for (u, v) in pairs {
        checks.push(MembershipCheck {
            target: format!("Z{u} Z{v}"),
            predicted,
            member: c.basis.contains(&zz(n, q[&u], q[&v]))?,
        });
    }
    let mut verts = g.vertices.clone();
    verts.sort_unstable();
    for v in verts {
        checks.push(MembershipCheck {
            target: format!("X{v}"),
            predicted,
            member: c.basis.contains(&x(n, q[&v]))?,
        });
    }
    let mismatches: Vec<String> = checks
        .iter()
        .filter(|k| k.predicted == Some(true) && !k.member)
        .map(|k| k.target.clone())
        .collect();
    let mut notes = Vec::new();
    if !mismatches.is_empty() {
        notes.push(format!(
            "finding: forcing set predicts membership but the closure lacks {}",
            mismatches.join(", ")
        ));
    }
    if !forcing {
        notes.push("not a forcing set; memberships are reported without a prediction".into());
    }
    Ok(ForcingUniversality {
        mode,
        forcing,
        state,
        dimension: c.dimension(),
        ambient_dimension: ambient_dimension(n),
        universal: c.universal(),
        method: c.method,
        coefficients: spec.coefficients.to_strings(),
        checks,
        mismatches,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamlib::hyperchain_graph;

    fn run(g: &GraphSpec, s1: &[Vertex], s2: &[(Vertex, Vertex)], mode: ForcingMode) -> ForcingUniversality {
        let s1: BTreeSet<_> = s1.iter().copied().collect();
        let s2: BTreeSet<_> = s2.iter().copied().collect();
        let c = sampled_forcing_coefficients(g, &s1, mode, 7).unwrap();
        forcing_to_universality(g, &s1, &s2, mode, &c, &ClosureOptions::default()).unwrap()
    }

    #[test]
    fn path_forcing_members() {
        let r = run(&GraphSpec::path(3), &[1], &[], ForcingMode::Zero);
        assert!(r.forcing && r.universal);
        assert_eq!(r.checks.len(), 5);
        assert!(r.checks.iter().all(|k| k.member && k.predicted == Some(true)));
        assert!(r.mismatches.is_empty());
    }

    #[test]
    fn cycle_without_prediction() {
        let r = run(&GraphSpec::cycle(4), &[1], &[], ForcingMode::Zero);
        assert!(!r.forcing);
        assert!(r.checks.iter().all(|k| k.predicted.is_none()));
        assert!(r.mismatches.is_empty());
    }

    #[test]
    fn hyperchain_four() {
        let r = run(&hyperchain_graph(4), &[1, 2], &[(1, 2)], ForcingMode::Hyper);
        assert!(r.forcing);
        assert!(r.mismatches.is_empty());
        assert!(r.checks.iter().any(|k| k.target == "Z3 Z4" && k.member));
    }

    #[test]
    fn typed_star_members() {
        let g = GraphSpec::new([1, 2, 3, 4]).with_typed_edges([(1, 2, "a"), (1, 3, "b"), (1, 4, "c")]);
        let r = run(&g, &[1], &[], ForcingMode::Generalized);
        assert!(r.forcing);
        assert!(r.mismatches.is_empty(), "{:?}", r.mismatches);
    }
}
