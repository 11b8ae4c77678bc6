//! Builders for every cost/mixer Hamiltonian family, plus problem-file ingestion.

mod coeffs;
mod graph;
mod spec;

pub use coeffs::{
    even_odd_constraints, sample_generic_coefficients, separation_constraints,
    CoefficientAssignment, Constraint, Provenance, SAMPLE_MAX, SAMPLE_MIN,
};
pub use graph::{parse_graph, Edge, GraphSpec, Vertex};
pub use spec::{parse_spec, serialize_spec, CoefficientRequest, Family, ProblemSpec, DEFAULT_SEED};

use crate::error::{Error, Result};
use crate::pauli::{Axis, ExactOperator, Operator, Rational, Scalar};

pub fn z(n: usize, i: usize) -> ExactOperator {
    Operator::single(n, i, Axis::Z).expect("qubit index in range")
}

pub fn x(n: usize, i: usize) -> ExactOperator {
    Operator::single(n, i, Axis::X).expect("qubit index in range")
}

pub fn zz(n: usize, i: usize, j: usize) -> ExactOperator {
    Operator::product(n, &[(i, Axis::Z), (j, Axis::Z)]).expect("distinct qubits in range")
}

pub fn zzz(n: usize, i: usize, j: usize, k: usize) -> ExactOperator {
    Operator::product(n, &[(i, Axis::Z), (j, Axis::Z), (k, Axis::Z)])
        .expect("distinct qubits in range")
}

/// Unit-coefficient sum of the given operators.
pub fn sum(n: usize, ops: impl IntoIterator<Item = ExactOperator>) -> ExactOperator {
    let ops: Vec<_> = ops.into_iter().collect();
    let pairs: Vec<_> = ops.iter().map(|o| (Rational::one(), o)).collect();
    Operator::linear_combine(n, &pairs).expect("shared qubit count")
}

/// `Σ_{j=1}^{n} X_j`.
pub fn mixer(n: usize) -> ExactOperator {
    sum(n, (1..=n).map(|j| x(n, j)))
}

/// Weighted sum `Σ cᵢ·Aᵢ` over exact operators.
pub fn combine(n: usize, pairs: &[(&Rational, &ExactOperator)]) -> ExactOperator {
    let owned: Vec<_> = pairs.iter().map(|(c, o)| ((*c).clone(), *o)).collect();
    Operator::linear_combine(n, &owned).expect("shared qubit count")
}

/// Parity-split 1-D chain operators.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainHamiltonians {
    pub n: usize,
    pub h_z: ExactOperator,
    pub h_x: ExactOperator,
    pub h_a: ExactOperator,
    pub h_b: ExactOperator,
    pub h_ab: ExactOperator,
    pub h_ba: ExactOperator,
    pub x_even: ExactOperator,
    pub x_odd: ExactOperator,
}

impl ChainHamiltonians {
    /// `ω_A H_A + ω_B H_B`.
    pub fn h_z1(&self, c: &CoefficientAssignment) -> Result<ExactOperator> {
        Ok(combine(self.n, &[(c.get("wA")?, &self.h_a), (c.get("wB")?, &self.h_b)]))
    }

    /// `γ_AB H_AB + γ_BA H_BA`.
    pub fn h_z2(&self, c: &CoefficientAssignment) -> Result<ExactOperator> {
        Ok(combine(self.n, &[(c.get("gAB")?, &self.h_ab), (c.get("gBA")?, &self.h_ba)]))
    }
}

pub const CHAIN_SYMBOLS: [&str; 4] = ["wA", "wB", "gAB", "gBA"];

/// `H_A = Σ Z_{2j}`, `H_B = Σ Z_{2j+1}`, `H_AB = Σ_{j≥1} Z_{2j}Z_{2j+1}`,
/// `H_BA = Σ_{j≥0} Z_{2j+1}Z_{2j+2}`, all sites 1-based and within `1..=n`.
pub fn build_chain(n: usize, coeffs: &CoefficientAssignment) -> Result<ChainHamiltonians> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("chain needs n >= 2, got {n}")));
    }
    coeffs.require(&CHAIN_SYMBOLS)?;
    let h_a = sum(n, (2..=n).step_by(2).map(|i| z(n, i)));
    let h_b = sum(n, (1..=n).step_by(2).map(|i| z(n, i)));
    let h_ab = sum(n, (2..n).step_by(2).map(|i| zz(n, i, i + 1)));
    let h_ba = sum(n, (1..n).step_by(2).map(|i| zz(n, i, i + 1)));
    let x_even = sum(n, (2..=n).step_by(2).map(|i| x(n, i)));
    let x_odd = sum(n, (1..=n).step_by(2).map(|i| x(n, i)));
    let h_z = combine(
        n,
        &[
            (coeffs.get("wA")?, &h_a),
            (coeffs.get("wB")?, &h_b),
            (coeffs.get("gAB")?, &h_ab),
            (coeffs.get("gBA")?, &h_ba),
        ],
    );
    Ok(ChainHamiltonians {
        n,
        h_z,
        h_x: mixer(n),
        h_a,
        h_b,
        h_ab,
        h_ba,
        x_even,
        x_odd,
    })
}

/// Coupling symbol for an edge type in the multi-type family.
pub fn edge_symbol(kind: &str) -> String {
    format!("g_{kind}")
}

/// Field symbol for an initially infected vertex.
pub fn vertex_symbol(v: Vertex) -> String {
    format!("w_{v}")
}

/// Symbols the graph families need.
pub fn graph_symbols(g: &GraphSpec, multitype: bool) -> Result<Vec<String>> {
    let mut out = Vec::new();
    if multitype {
        let types = g.edge_types().ok_or_else(|| {
            Error::InvalidArgument("multi-type family requires every edge to be typed".into())
        })?;
        out.extend(types.iter().map(|t| edge_symbol(t)));
    } else if !g.edges.is_empty() {
        out.push("gamma".to_string());
    }
    out.extend(g.infected_vertices.iter().map(|v| vertex_symbol(*v)));
    if g.vertices.len() > g.infected_vertices.len() {
        out.push("w".to_string());
    }
    Ok(out)
}

/// `Σ_k γ_k Σ_{(i,j)∈E_k} Z_iZ_j + Σ_{i∈S} ω_i Z_i + ω Σ_{i∉S} Z_i` and `Σ X_i`.
///
/// With `multitype == false` all edges share the single coupling `gamma`.
pub fn build_graph_hamiltonian(
    g: &GraphSpec,
    coeffs: &CoefficientAssignment,
    multitype: bool,
) -> Result<(ExactOperator, ExactOperator)> {
    g.validate("graph")?;
    for s in graph_symbols(g, multitype)? {
        coeffs.get(&s)?;
    }
    let q = g.qubit_map();
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidArgument("graph has no vertices".into()));
    }
    let mut terms: Vec<(Rational, ExactOperator)> = Vec::new();
    for e in &g.edges {
        let c = if multitype {
            coeffs.get(&edge_symbol(e.kind.as_deref().unwrap_or_default()))?
        } else {
            coeffs.get("gamma")?
        };
        terms.push((c.clone(), zz(n, q[&e.u], q[&e.v])));
    }
    for v in &g.vertices {
        let c = if g.infected_vertices.contains(v) {
            coeffs.get(&vertex_symbol(*v))?
        } else {
            coeffs.get("w")?
        };
        terms.push((c.clone(), z(n, q[v])));
    }
    let pairs: Vec<_> = terms.iter().map(|(c, o)| (c.clone(), o)).collect();
    Ok((Operator::linear_combine(n, &pairs)?, mixer(n)))
}

pub const GRID_SYMBOLS: [&str; 6] = ["wA", "wB", "wC", "gA", "gB", "gC"];

/// Separated pieces of the grid cost Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct GridHamiltonians {
    pub side: usize,
    /// `N = side²`; total qubits `N + 2`.
    pub grid_size: usize,
    pub h_z: ExactOperator,
    pub h_x: ExactOperator,
    /// `Σ_{grid} Z_i`
    pub h_a1: ExactOperator,
    /// `Σ_{grid edges} Z_iZ_j`
    pub h_a2: ExactOperator,
    pub x_grid: ExactOperator,
    /// `Z_1 Z_{N+1}`
    pub pendant_b: ExactOperator,
    /// `Z_side Z_{N+2}`
    pub pendant_c: ExactOperator,
}

pub fn grid_hamiltonians(side: usize, coeffs: &CoefficientAssignment) -> Result<GridHamiltonians> {
    if side < 2 {
        return Err(Error::InvalidArgument(format!("grid side must be >= 2, got {side}")));
    }
    coeffs.require(&GRID_SYMBOLS)?;
    let big_n = side * side;
    let n = big_n + 2;
    let graph = GraphSpec::grid(side as Vertex);
    let h_a1 = sum(n, (1..=big_n).map(|i| z(n, i)));
    let h_a2 = sum(n, graph.edges.iter().map(|e| zz(n, e.u as usize, e.v as usize)));
    let x_grid = sum(n, (1..=big_n).map(|i| x(n, i)));
    let pendant_b = zz(n, 1, big_n + 1);
    let pendant_c = zz(n, side, big_n + 2);
    let h_z = combine(
        n,
        &[
            (coeffs.get("wA")?, &h_a1),
            (coeffs.get("wB")?, &z(n, big_n + 1)),
            (coeffs.get("wC")?, &z(n, big_n + 2)),
            (coeffs.get("gA")?, &h_a2),
            (coeffs.get("gB")?, &pendant_b),
            (coeffs.get("gC")?, &pendant_c),
        ],
    );
    Ok(GridHamiltonians {
        side,
        grid_size: big_n,
        h_z,
        h_x: mixer(n),
        h_a1,
        h_a2,
        x_grid,
        pendant_b,
        pendant_c,
    })
}

/// Grid graph with pendant `N+1` on `v_1` (type B) and `N+2` on `v_side` (type C).
pub fn grid_graph(side: usize) -> GraphSpec {
    let big_n = (side * side) as Vertex;
    let mut g = GraphSpec::grid(side as Vertex);
    for e in &mut g.edges {
        e.kind = Some("A".into());
    }
    g.vertices.extend([big_n + 1, big_n + 2]);
    g.edges.push(Edge::typed(1, big_n + 1, "B"));
    g.edges.push(Edge::typed(side as Vertex, big_n + 2, "C"));
    g
}

pub fn build_grid(side: usize, coeffs: &CoefficientAssignment) -> Result<ProblemSpec> {
    grid_hamiltonians(side, coeffs)?;
    Ok(ProblemSpec::from_parts(
        Family::Grid,
        side * side + 2,
        Some(side),
        Some(grid_graph(side)),
        coeffs.clone(),
    ))
}

pub const HYPERCHAIN_SYMBOLS: [&str; 4] = ["delta", "gamma", "w1", "w"];

#[derive(Debug, Clone, PartialEq)]
pub struct HyperchainHamiltonians {
    pub n: usize,
    pub h_z: ExactOperator,
    pub h_x: ExactOperator,
    /// `Σ_{k=1}^{n-2} Z_k Z_{k+1} Z_{k+2}`
    pub h_delta: ExactOperator,
    /// `Σ_{i≠1} Z_i`
    pub h_v: ExactOperator,
}

/// `δ H_δ + γ Z_1Z_2 + ω_1 Z_1 + ω H_V` on hyperedges `{1,2}, {k,k+1,k+2}`.
pub fn build_hyperchain(n: usize, coeffs: &CoefficientAssignment) -> Result<HyperchainHamiltonians> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("hyperchain needs n >= 3, got {n}")));
    }
    coeffs.require(&HYPERCHAIN_SYMBOLS)?;
    let h_delta = sum(n, (1..=n - 2).map(|k| zzz(n, k, k + 1, k + 2)));
    let h_v = sum(n, (2..=n).map(|i| z(n, i)));
    let h_z = combine(
        n,
        &[
            (coeffs.get("delta")?, &h_delta),
            (coeffs.get("gamma")?, &zz(n, 1, 2)),
            (coeffs.get("w1")?, &z(n, 1)),
            (coeffs.get("w")?, &h_v),
        ],
    );
    Ok(HyperchainHamiltonians {
        n,
        h_z,
        h_x: mixer(n),
        h_delta,
        h_v,
    })
}

/// Hyperchain as a hypergraph: `{1,2}` plus consecutive triples.
pub fn hyperchain_graph(n: usize) -> GraphSpec {
    let n = n as Vertex;
    let mut hyper = vec![vec![1, 2]];
    hyper.extend((1..=n.saturating_sub(2)).map(|k| vec![k, k + 1, k + 2]));
    GraphSpec::new(1..=n).with_hyperedges(hyper)
}

/// Symbols for the general hypergraph family.
pub fn hypergraph_symbols(g: &GraphSpec) -> Vec<String> {
    let mut out = Vec::new();
    if g.hyperedges.iter().any(|h| h.len() == 3) {
        out.push("delta".to_string());
    }
    if g.hyperedges.iter().any(|h| h.len() == 2) || !g.edges.is_empty() {
        out.push("gamma".to_string());
    }
    out.extend(g.infected_vertices.iter().map(|v| vertex_symbol(*v)));
    if g.vertices.len() > g.infected_vertices.len() {
        out.push("w".to_string());
    }
    out
}

/// `δ Σ_{|e|=3} Z Z Z + γ Σ_{|e|=2} Z Z + Σ_{i∈S₁} ω_i Z_i + ω Σ_{i∉S₁} Z_i`.
///
/// Plain edges count as 2-element hyperedges. Hyperedges must have at most
/// three vertices; singleton hyperedges contribute nothing beyond the field terms.
pub fn build_hypergraph_hamiltonian(
    g: &GraphSpec,
    coeffs: &CoefficientAssignment,
) -> Result<(ExactOperator, ExactOperator)> {
    g.validate("graph")?;
    if let Some(h) = g.hyperedges.iter().find(|h| h.len() > 3) {
        return Err(Error::InvalidArgument(format!(
            "hyperedge {h:?} has more than three vertices"
        )));
    }
    for s in hypergraph_symbols(g) {
        coeffs.get(&s)?;
    }
    let q = g.qubit_map();
    let n = g.n();
    let mut terms: Vec<(Rational, ExactOperator)> = Vec::new();
    for h in &g.hyperedges {
        match h.len() {
            3 => terms.push((coeffs.get("delta")?.clone(), zzz(n, q[&h[0]], q[&h[1]], q[&h[2]]))),
            2 => terms.push((coeffs.get("gamma")?.clone(), zz(n, q[&h[0]], q[&h[1]]))),
            _ => {}
        }
    }
    for e in &g.edges {
        let key = [e.u, e.v];
        if g.hyperedges.iter().any(|h| h.len() == 2 && h.contains(&key[0]) && h.contains(&key[1])) {
            continue;
        }
        terms.push((coeffs.get("gamma")?.clone(), zz(n, q[&e.u], q[&e.v])));
    }
    for v in &g.vertices {
        let c = if g.infected_vertices.contains(v) {
            coeffs.get(&vertex_symbol(*v))?
        } else {
            coeffs.get("w")?
        };
        terms.push((c.clone(), z(n, q[v])));
    }
    let pairs: Vec<_> = terms.iter().map(|(c, o)| (c.clone(), o)).collect();
    Ok((Operator::linear_combine(n, &pairs)?, mixer(n)))
}
