use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::coeffs::{
    even_odd_constraints, sample_generic_coefficients, separation_constraints,
    CoefficientAssignment, Constraint, Provenance,
};
use super::graph::{GraphDoc, GraphSpec};
use crate::error::{Error, Result};
use crate::pauli::{Axis, ExactOperator, Operator, PauliString, Rational, MAX_QUBITS};

pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Chain,
    Graph,
    MultitypeGraph,
    Grid,
    Hyperchain,
    Custom,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CoefficientRequest {
    Value(Rational),
    Sample,
}

/// Validated problem: family, size, graph, and resolved coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub family: Family,
    pub n: usize,
    pub side: Option<usize>,
    pub graph: Option<GraphSpec>,
    pub requests: BTreeMap<String, CoefficientRequest>,
    pub coefficients: CoefficientAssignment,
    pub seed: u64,
    /// Diagonal cost terms for the custom family.
    pub custom_terms: Vec<(PauliString, Rational)>,
}

impl ProblemSpec {
    /// Spec whose coefficients are all user values.
    pub fn from_parts(
        family: Family,
        n: usize,
        side: Option<usize>,
        graph: Option<GraphSpec>,
        coefficients: CoefficientAssignment,
    ) -> Self {
        let requests = coefficients
            .values()
            .iter()
            .map(|(k, v)| (k.clone(), CoefficientRequest::Value(v.clone())))
            .collect();
        ProblemSpec {
            family,
            n,
            side,
            graph,
            requests,
            coefficients,
            seed: DEFAULT_SEED,
            custom_terms: Vec::new(),
        }
    }

    /// Family with every required coefficient sampled from `seed`.
    pub fn sampled(
        family: Family,
        n: usize,
        side: Option<usize>,
        graph: Option<GraphSpec>,
        seed: u64,
    ) -> Result<Self> {
        let mut spec = ProblemSpec::from_parts(family, n, side, graph, CoefficientAssignment::new());
        for s in spec.required_symbols()? {
            spec.requests.insert(s, CoefficientRequest::Sample);
        }
        spec.with_seed(seed)
    }

    pub fn chain(n: usize, seed: u64) -> Result<Self> {
        ProblemSpec::sampled(Family::Chain, n, None, None, seed)
    }

    /// Override or pin one coefficient, keeping the rest.
    pub fn with_value(mut self, symbol: &str, value: Rational) -> Result<Self> {
        self.requests
            .insert(symbol.to_string(), CoefficientRequest::Value(value));
        self.with_seed(self.seed)
    }

    /// Mark symbols as sampled and re-resolve.
    pub fn with_sampled(mut self, symbols: &[&str]) -> Result<Self> {
        for s in symbols {
            self.requests.insert(s.to_string(), CoefficientRequest::Sample);
        }
        self.with_seed(self.seed)
    }

    pub fn required_symbols(&self) -> Result<Vec<String>> {
        Ok(match self.family {
            Family::Chain => super::CHAIN_SYMBOLS.map(String::from).to_vec(),
            Family::Grid => super::GRID_SYMBOLS.map(String::from).to_vec(),
            Family::Hyperchain => super::HYPERCHAIN_SYMBOLS.map(String::from).to_vec(),
            Family::Graph | Family::MultitypeGraph => {
                let g = self.graph.as_ref().ok_or_else(|| Error::schema("graph", "required"))?;
                if g.hyperedges.is_empty() {
                    super::graph_symbols(g, self.family == Family::MultitypeGraph)?
                } else {
                    super::hypergraph_symbols(g)
                }
            }
            Family::Custom => Vec::new(),
        })
    }

    /// Side conditions sampled values must satisfy.
    pub fn constraints(&self) -> Vec<Constraint> {
        match self.family {
            Family::Chain => {
                let mut c = even_odd_constraints();
                c.extend(separation_constraints());
                c
            }
            _ => Vec::new(),
        }
    }

    /// Re-resolve every sampled coefficient from `seed`; user values stay fixed.
    pub fn with_seed(&self, seed: u64) -> Result<Self> {
        let mut fixed = CoefficientAssignment::new();
        let mut sampled = Vec::new();
        for (k, r) in &self.requests {
            match r {
                CoefficientRequest::Value(v) => fixed.set(k, v.clone()),
                CoefficientRequest::Sample => sampled.push(k.as_str()),
            }
        }
        let constraints: Vec<Constraint> = self
            .constraints()
            .into_iter()
            .filter(|c| c.symbols().iter().any(|s| sampled.contains(s)))
            .collect();
        let coefficients = if sampled.is_empty() {
            fixed
        } else {
            sample_generic_coefficients(&sampled, seed, &constraints, &fixed)?
        };
        let mut out = self.clone();
        out.coefficients = coefficients;
        out.seed = seed;
        out.check()?;
        Ok(out)
    }

    /// Symbols that were drawn at random rather than supplied.
    pub fn sampled_symbols(&self) -> Vec<String> {
        self.coefficients
            .values()
            .keys()
            .filter(|k| self.coefficients.provenance(k) == Some(Provenance::Sampled))
            .cloned()
            .collect()
    }

    fn check(&self) -> Result<()> {
        if self.n == 0 || self.n > MAX_QUBITS {
            return Err(Error::schema("n", format!("qubit count {} outside 1..={MAX_QUBITS}", self.n)));
        }
        for s in self.required_symbols()? {
            if !self.coefficients.contains(&s) {
                return Err(Error::schema(
                    format!("coefficients.{s}"),
                    format!("missing coefficient `{s}` required by this family"),
                ));
            }
        }
        self.hamiltonians().map(|_| ())
    }

    /// `(H_Z, H_X)` for this spec.
    pub fn hamiltonians(&self) -> Result<(ExactOperator, ExactOperator)> {
        let c = &self.coefficients;
        let (hz, hx) = match self.family {
            Family::Chain => {
                let h = super::build_chain(self.n, c)?;
                (h.h_z, h.h_x)
            }
            Family::Grid => {
                let side = self.side.ok_or_else(|| Error::schema("side", "required for grid"))?;
                let h = super::grid_hamiltonians(side, c)?;
                (h.h_z, h.h_x)
            }
            Family::Hyperchain => {
                let h = super::build_hyperchain(self.n, c)?;
                (h.h_z, h.h_x)
            }
            Family::Graph | Family::MultitypeGraph => {
                let g = self.graph.as_ref().ok_or_else(|| Error::schema("graph", "required"))?;
                if g.hyperedges.is_empty() {
                    super::build_graph_hamiltonian(g, c, self.family == Family::MultitypeGraph)?
                } else {
                    super::build_hypergraph_hamiltonian(g, c)?
                }
            }
            Family::Custom => {
                let hz = Operator::from_terms(self.n, self.custom_terms.iter().cloned())?;
                (hz, super::mixer(self.n))
            }
        };
        if !hz.is_diagonal() {
            return Err(Error::schema("custom_terms", "H_Z must be diagonal (Z-type strings only)"));
        }
        Ok((hz, hx))
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecDoc {
    family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    side: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    graph: Option<GraphDoc>,
    #[serde(default)]
    coefficients: BTreeMap<String, CoeffDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    custom_terms: Vec<TermDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffDoc {
    Text(String),
    Int(i64),
    Sample(SampleDoc),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SampleDoc {
    sample: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDoc {
    paulis: Vec<FactorDoc>,
    coeff: CoeffValue,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffValue {
    Text(String),
    Int(i64),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FactorDoc {
    qubit: usize,
    axis: String,
}

fn rational_at(path: &str, text: &str) -> Result<Rational> {
    text.parse::<Rational>()
        .map_err(|e| Error::schema(path, e.to_string()))
}

/// Parse and fully validate a JSON problem document.
pub fn parse_spec(document: &str) -> Result<ProblemSpec> {
    let de = &mut serde_json::Deserializer::from_str(document);
    let doc: SpecDoc = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::schema(if path == "." { "$".to_string() } else { path }, e.inner().to_string())
    })?;

    let graph: Option<GraphSpec> = doc.graph.map(GraphSpec::from);
    if let Some(g) = &graph {
        g.validate("graph")?;
    }
    let n = match doc.family {
        Family::Graph | Family::MultitypeGraph => {
            let g = graph.as_ref().ok_or_else(|| Error::schema("graph", "required for graph families"))?;
            if let Some(n) = doc.n.filter(|n| *n != g.n()) {
                return Err(Error::schema("n", format!("n = {n} but graph has {} vertices", g.n())));
            }
            g.n()
        }
        Family::Grid => {
            let side = doc.side.ok_or_else(|| Error::schema("side", "required for grid"))?;
            if side < 2 {
                return Err(Error::schema("side", format!("grid side must be >= 2, got {side}")));
            }
            let n = side * side + 2;
            if let Some(m) = doc.n.filter(|m| *m != n) {
                return Err(Error::schema("n", format!("n = {m} but a side-{side} grid has {n} qubits")));
            }
            n
        }
        _ => doc.n.ok_or_else(|| Error::schema("n", "required for this family"))?,
    };
    if doc.family != Family::Custom && !doc.custom_terms.is_empty() {
        return Err(Error::schema("custom_terms", "only allowed for the custom family"));
    }
    if doc.family == Family::Grid && graph.is_some() {
        return Err(Error::schema("graph", "grid layout is generated from `side`"));
    }

    let mut requests = BTreeMap::new();
    for (k, v) in doc.coefficients {
        let path = format!("coefficients.{k}");
        let r = match v {
            CoeffDoc::Text(t) => CoefficientRequest::Value(rational_at(&path, &t)?),
            CoeffDoc::Int(i) => CoefficientRequest::Value(Rational::integer(i)),
            CoeffDoc::Sample(SampleDoc { sample: true }) => CoefficientRequest::Sample,
            CoeffDoc::Sample(SampleDoc { sample: false }) => {
                return Err(Error::schema(path, "`sample` must be true; give a value instead"))
            }
        };
        requests.insert(k, r);
    }

    let mut custom_terms = Vec::new();
    for (i, t) in doc.custom_terms.iter().enumerate() {
        let path = format!("custom_terms[{i}]");
        let mut factors = Vec::new();
        for (j, f) in t.paulis.iter().enumerate() {
            let fpath = format!("{path}.paulis[{j}]");
            let axis = match f.axis.as_str() {
                "I" | "X" | "Y" | "Z" => Axis::from_letter(f.axis.chars().next().unwrap_or('?')),
                _ => None,
            }
            .ok_or_else(|| Error::schema(format!("{fpath}.axis"), format!("unknown axis `{}`", f.axis)))?;
            if !matches!(axis, Axis::Z | Axis::I) {
                return Err(Error::schema(
                    format!("{fpath}.axis"),
                    format!("H_Z must be diagonal: `{}` term not allowed", f.axis),
                ));
            }
            if f.qubit == 0 || f.qubit > n {
                return Err(Error::schema(
                    format!("{fpath}.qubit"),
                    format!("qubit {} out of range 1..={n}", f.qubit),
                ));
            }
            if axis != Axis::I {
                factors.push((f.qubit - 1, axis));
            }
        }
        let p = PauliString::from_factors(n, &factors).map_err(|e| Error::schema(&path, e.to_string()))?;
        let c = match &t.coeff {
            CoeffValue::Text(s) => rational_at(&format!("{path}.coeff"), s)?,
            CoeffValue::Int(v) => Rational::integer(*v),
        };
        custom_terms.push((p, c));
    }

    let spec = ProblemSpec {
        family: doc.family,
        n,
        side: doc.side,
        graph,
        requests,
        coefficients: CoefficientAssignment::new(),
        seed: doc.seed.unwrap_or(DEFAULT_SEED),
        custom_terms,
    };
    spec.with_seed(spec.seed)
}

/// JSON document that `parse_spec` maps back to an equal spec.
pub fn serialize_spec(spec: &ProblemSpec) -> String {
    let doc = SpecDoc {
        family: spec.family,
        n: Some(spec.n),
        side: spec.side,
        graph: match spec.family {
            Family::Grid => None,
            _ => spec.graph.as_ref().map(GraphDoc::from),
        },
        coefficients: spec
            .requests
            .iter()
            .map(|(k, r)| {
                let v = match r {
                    CoefficientRequest::Value(v) => CoeffDoc::Text(v.to_string()),
                    CoefficientRequest::Sample => CoeffDoc::Sample(SampleDoc { sample: true }),
                };
                (k.clone(), v)
            })
            .collect(),
        seed: Some(spec.seed),
        custom_terms: spec
            .custom_terms
            .iter()
            .map(|(p, c)| TermDoc {
                paulis: p
                    .factors()
                    .into_iter()
                    .map(|(q, a)| FactorDoc {
                        qubit: q + 1,
                        axis: a.letter().to_string(),
                    })
                    .collect(),
                coeff: CoeffValue::Text(c.to_string()),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("spec documents always serialize")
}
