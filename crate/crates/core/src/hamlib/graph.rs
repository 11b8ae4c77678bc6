use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = u32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
    pub kind: Option<String>,
}

impl Edge {
    pub fn new(u: Vertex, v: Vertex) -> Self {
        Edge { u, v, kind: None }
    }

    pub fn typed(u: Vertex, v: Vertex, kind: &str) -> Self {
        Edge {
            u,
            v,
            kind: Some(kind.to_string()),
        }
    }

    pub fn key(&self) -> (Vertex, Vertex) {
        (self.u.min(self.v), self.u.max(self.v))
    }
}

/// Vertices, typed edges, hyperedges and initial infection sets.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GraphSpec {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub hyperedges: Vec<Vec<Vertex>>,
    pub infected_vertices: Vec<Vertex>,
    pub infected_2edges: Vec<(Vertex, Vertex)>,
}

impl GraphSpec {
    pub fn new(vertices: impl IntoIterator<Item = Vertex>) -> Self {
        GraphSpec {
            vertices: vertices.into_iter().collect(),
            ..Default::default()
        }
    }

    pub fn with_edges(mut self, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Self {
        self.edges.extend(edges.into_iter().map(|(u, v)| Edge::new(u, v)));
        self
    }

    pub fn with_typed_edges<'a>(
        mut self,
        edges: impl IntoIterator<Item = (Vertex, Vertex, &'a str)>,
    ) -> Self {
        self.edges
            .extend(edges.into_iter().map(|(u, v, k)| Edge::typed(u, v, k)));
        self
    }

    pub fn with_hyperedges(mut self, hyper: impl IntoIterator<Item = Vec<Vertex>>) -> Self {
        self.hyperedges.extend(hyper);
        self
    }

    pub fn with_infected(mut self, s: impl IntoIterator<Item = Vertex>) -> Self {
        self.infected_vertices = s.into_iter().collect();
        self
    }

    pub fn path(n: Vertex) -> Self {
        GraphSpec::new(1..=n).with_edges((1..n).map(|i| (i, i + 1)))
    }

    pub fn cycle(n: Vertex) -> Self {
        GraphSpec::path(n).with_edges([(n, 1)])
    }

    pub fn star(leaves: Vertex) -> Self {
        GraphSpec::new(1..=leaves + 1).with_edges((2..=leaves + 1).map(|l| (1, l)))
    }

    /// `side × side` grid, vertices numbered row-major from 1.
    pub fn grid(side: Vertex) -> Self {
        let mut g = GraphSpec::new(1..=side * side);
        for r in 0..side {
            for c in 0..side {
                let v = r * side + c + 1;
                if c + 1 < side {
                    g.edges.push(Edge::new(v, v + 1));
                }
                if r + 1 < side {
                    g.edges.push(Edge::new(v, v + side));
                }
            }
        }
        g
    }

    /// Check simple-graph and membership invariants; `path` prefixes messages.
    pub fn validate(&self, path: &str) -> Result<()> {
        let mut seen = BTreeSet::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if !seen.insert(*v) {
                return Err(Error::schema(
                    format!("{path}.vertices[{i}]"),
                    format!("duplicate vertex {v}"),
                ));
            }
        }
        let mut edge_keys = BTreeSet::new();
        for (i, e) in self.edges.iter().enumerate() {
            let p = format!("{path}.edges[{i}]");
            if e.u == e.v {
                return Err(Error::schema(p, format!("loop edge ({}, {})", e.u, e.v)));
            }
            for x in [e.u, e.v] {
                if !seen.contains(&x) {
                    return Err(Error::schema(p, format!("unknown vertex {x} in edge ({}, {})", e.u, e.v)));
                }
            }
            if !edge_keys.insert(e.key()) {
                return Err(Error::schema(p, format!("duplicate edge ({}, {})", e.u, e.v)));
            }
        }
        let mut hyper_keys = BTreeSet::new();
        for (i, h) in self.hyperedges.iter().enumerate() {
            let p = format!("{path}.hyperedges[{i}]");
            if h.is_empty() {
                return Err(Error::schema(p, "empty hyperedge"));
            }
            let set: BTreeSet<_> = h.iter().copied().collect();
            if set.len() != h.len() {
                return Err(Error::schema(p, format!("repeated vertex in hyperedge {h:?}")));
            }
            if let Some(x) = set.iter().find(|x| !seen.contains(x)) {
                return Err(Error::schema(p, format!("unknown vertex {x} in hyperedge {h:?}")));
            }
            if !hyper_keys.insert(set) {
                return Err(Error::schema(p, format!("duplicate hyperedge {h:?}")));
            }
        }
        for (i, v) in self.infected_vertices.iter().enumerate() {
            if !seen.contains(v) {
                return Err(Error::schema(
                    format!("{path}.infected_vertices[{i}]"),
                    format!("vertex {v} not declared"),
                ));
            }
        }
        for (i, (u, v)) in self.infected_2edges.iter().enumerate() {
            let p = format!("{path}.infected_2edges[{i}]");
            if u == v {
                return Err(Error::schema(p, format!("loop 2-edge ({u}, {v})")));
            }
            if !seen.contains(u) || !seen.contains(v) {
                return Err(Error::schema(p, format!("2-edge ({u}, {v}) uses undeclared vertex")));
            }
        }
        Ok(())
    }

    /// 1-based qubit index of each vertex: its rank in sorted label order.
    pub fn qubit_map(&self) -> BTreeMap<Vertex, usize> {
        let mut vs = self.vertices.clone();
        vs.sort_unstable();
        vs.into_iter().enumerate().map(|(i, v)| (v, i + 1)).collect()
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    /// Edge type labels in first-seen order; `None` if any edge is untyped.
    pub fn edge_types(&self) -> Option<Vec<String>> {
        let mut out: Vec<String> = Vec::new();
        for e in &self.edges {
            let k = e.kind.as_ref()?;
            if !out.contains(k) {
                out.push(k.clone());
            }
        }
        Some(out)
    }

    /// Sorted adjacency lists over all edges, or over edges of one type.
    pub fn adjacency(&self, kind: Option<&str>) -> BTreeMap<Vertex, Vec<Vertex>> {
        let mut adj: BTreeMap<Vertex, Vec<Vertex>> =
            self.vertices.iter().map(|v| (*v, Vec::new())).collect();
        for e in &self.edges {
            if let Some(k) = kind {
                if e.kind.as_deref() != Some(k) {
                    continue;
                }
            }
            adj.entry(e.u).or_default().push(e.v);
            adj.entry(e.v).or_default().push(e.u);
        }
        for l in adj.values_mut() {
            l.sort_unstable();
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        let adj = self.adjacency(None);
        let Some(&start) = self.vertices.first() else {
            return true;
        };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for w in &adj[&v] {
                if seen.insert(*w) {
                    stack.push(*w);
                }
            }
        }
        seen.len() == self.vertices.len()
    }
}

// JSON form: edges as `[u, v]` or `[u, v, "type"]`, 2-edges as `[u, v]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct GraphDoc {
    #[serde(default)]
    pub vertices: Vec<Vertex>,
    #[serde(default)]
    pub edges: Vec<EdgeDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub hyperedges: Vec<Vec<Vertex>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub infected_vertices: Vec<Vertex>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub infected_2edges: Vec<(Vertex, Vertex)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub(crate) enum EdgeDoc {
    Typed(Vertex, Vertex, String),
    Plain(Vertex, Vertex),
}

impl From<GraphDoc> for GraphSpec {
    fn from(d: GraphDoc) -> Self {
        GraphSpec {
            vertices: d.vertices,
            edges: d
                .edges
                .into_iter()
                .map(|e| match e {
                    EdgeDoc::Typed(u, v, k) => Edge::typed(u, v, &k),
                    EdgeDoc::Plain(u, v) => Edge::new(u, v),
                })
                .collect(),
            hyperedges: d.hyperedges,
            infected_vertices: d.infected_vertices,
            infected_2edges: d.infected_2edges,
        }
    }
}

impl From<&GraphSpec> for GraphDoc {
    fn from(g: &GraphSpec) -> Self {
        GraphDoc {
            vertices: g.vertices.clone(),
            edges: g
                .edges
                .iter()
                .map(|e| match &e.kind {
                    Some(k) => EdgeDoc::Typed(e.u, e.v, k.clone()),
                    None => EdgeDoc::Plain(e.u, e.v),
                })
                .collect(),
            hyperedges: g.hyperedges.clone(),
            infected_vertices: g.infected_vertices.clone(),
            infected_2edges: g.infected_2edges.clone(),
        }
    }
}

/// Parse and validate a bare graph document.
pub fn parse_graph(document: &str) -> Result<GraphSpec> {
    let de = &mut serde_json::Deserializer::from_str(document);
    let doc: GraphDoc = serde_path_to_error::deserialize(de).map_err(|e| Error::Schema {
        path: format!("graph.{}", e.path()).trim_end_matches('.').to_string(),
        message: e.inner().to_string(),
    })?;
    let g = GraphSpec::from(doc);
    g.validate("graph")?;
    Ok(g)
}
