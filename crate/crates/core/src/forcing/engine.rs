use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamlib::{GraphSpec, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ForcingMode {
    Zero,
    Generalized,
    Hyper,
}

impl ForcingMode {
    pub fn name(self) -> &'static str {
        match self {
            ForcingMode::Zero => "zero",
            ForcingMode::Generalized => "generalized",
            ForcingMode::Hyper => "hyper",
        }
    }
}

impl std::str::FromStr for ForcingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero" => Ok(ForcingMode::Zero),
            "generalized" => Ok(ForcingMode::Generalized),
            "hyper" => Ok(ForcingMode::Hyper),
            _ => Err(Error::InvalidArgument(format!(
                "unknown forcing mode `{s}` (expected zero, generalized or hyper)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Infects {
    Vertex(Vertex),
    Edge([Vertex; 2]),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    /// `basic`, `typed:k` (1-based stage) or `hyper-pair`.
    pub rule: String,
    pub by: Vec<Vertex>,
    pub infects: Infects,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ForcingState {
    pub infected_vertices: BTreeSet<Vertex>,
    pub infected_2edges: BTreeSet<(Vertex, Vertex)>,
    pub trace: Vec<Step>,
}

impl ForcingState {
    pub fn covers(&self, g: &GraphSpec) -> bool {
        g.vertices.iter().all(|v| self.infected_vertices.contains(v))
    }
}

/// Forcing behaviour switches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ForcingOptions {
    /// Generalized mode: later stages of a round may force from vertices
    /// infected at earlier stages of the same round.
    pub sequential_stages: bool,
}

impl Default for ForcingOptions {
    fn default() -> Self {
        ForcingOptions {
            sequential_stages: true,
        }
    }
}

fn pair(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    (u.min(v), u.max(v))
}

fn check_set(g: &GraphSpec, s: &BTreeSet<Vertex>) -> Result<()> {
    let vs: BTreeSet<_> = g.vertices.iter().copied().collect();
    if let Some(v) = s.iter().find(|v| !vs.contains(v)) {
        return Err(Error::InvalidArgument(format!("infected vertex {v} is not in the graph")));
    }
    Ok(())
}

/// Lowest-labelled infected vertex with exactly one uninfected neighbour.
fn basic_move(
    adj: &BTreeMap<Vertex, Vec<Vertex>>,
    infected: &BTreeSet<Vertex>,
    forcers: Option<&BTreeSet<Vertex>>,
) -> Option<(Vertex, Vertex)> {
    for &v in infected {
        if forcers.is_some_and(|f| !f.contains(&v)) {
            continue;
        }
        let mut open = adj[&v].iter().filter(|w| !infected.contains(w));
        if let (Some(&w), None) = (open.next(), open.next()) {
            return Some((v, w));
        }
    }
    None
}

/// Classic zero forcing to its fixpoint.
pub fn zero_forcing_run(g: &GraphSpec, s: &BTreeSet<Vertex>) -> Result<ForcingState> {
    check_set(g, s)?;
    let adj = g.adjacency(None);
    let mut st = ForcingState {
        infected_vertices: s.clone(),
        ..Default::default()
    };
    while let Some((v, w)) = basic_move(&adj, &st.infected_vertices, None) {
        st.infected_vertices.insert(w);
        st.trace.push(Step {
            rule: "basic".into(),
            by: vec![v],
            infects: Infects::Vertex(w),
        });
    }
    Ok(st)
}

/// Edge types in stage order (sorted labels).
pub fn stage_types(g: &GraphSpec) -> Result<Vec<String>> {
    let mut t = g.edge_types().ok_or_else(|| {
        Error::InvalidArgument("generalized forcing requires every edge to be typed".into())
    })?;
    t.sort();
    Ok(t)
}

/// Multi-type zero forcing: each round sweeps the typed subgraphs in order.
pub fn generalized_forcing_run(
    g: &GraphSpec,
    s: &BTreeSet<Vertex>,
    options: ForcingOptions,
) -> Result<ForcingState> {
    check_set(g, s)?;
    let types = stage_types(g)?;
    let adjs: Vec<_> = types.iter().map(|t| g.adjacency(Some(t))).collect();
    let mut st = ForcingState {
        infected_vertices: s.clone(),
        ..Default::default()
    };
    loop {
        let before = st.infected_vertices.len();
        let round_start = st.infected_vertices.clone();
        for (k, adj) in adjs.iter().enumerate() {
            let forcers = (!options.sequential_stages).then_some(&round_start);
            while let Some((v, w)) = basic_move(adj, &st.infected_vertices, forcers) {
                st.infected_vertices.insert(w);
                st.trace.push(Step {
                    rule: format!("typed:{}", k + 1),
                    by: vec![v],
                    infects: Infects::Vertex(w),
                });
            }
        }
        if st.infected_vertices.len() == before {
            return Ok(st);
        }
    }
}

/// 3-neighbours of each unordered vertex pair.
pub(crate) fn completions(g: &GraphSpec) -> Result<BTreeMap<(Vertex, Vertex), Vec<Vertex>>> {
    let mut out: BTreeMap<(Vertex, Vertex), Vec<Vertex>> = BTreeMap::new();
    for h in &g.hyperedges {
        if h.len() > 3 {
            return Err(Error::InvalidArgument(format!(
                "hyperedge {h:?} has more than three vertices"
            )));
        }
        if h.len() == 3 {
            for (a, b, c) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
                out.entry(pair(h[a], h[b])).or_default().push(h[c]);
            }
        }
    }
    for ws in out.values_mut() {
        ws.sort_unstable();
        ws.dedup();
    }
    Ok(out)
}

/// Hyper-zero forcing: an infected pair joined by an infected 2-edge infects
/// its only uninfected 3-neighbour `w`, which also infects `{v₁,w}`, `{v₂,w}`.
pub fn hyper_forcing_run(
    g: &GraphSpec,
    s1: &BTreeSet<Vertex>,
    s2: &BTreeSet<(Vertex, Vertex)>,
) -> Result<ForcingState> {
    check_set(g, s1)?;
    let comp = completions(g)?;
    let mut st = ForcingState {
        infected_vertices: s1.clone(),
        infected_2edges: s2.iter().map(|&(u, v)| pair(u, v)).collect(),
        trace: Vec::new(),
    };
    loop {
        let mv = st.infected_2edges.iter().find_map(|&(a, b)| {
            if !st.infected_vertices.contains(&a) || !st.infected_vertices.contains(&b) {
                return None;
            }
            let ws = comp.get(&(a, b))?;
            let mut open = ws.iter().filter(|w| !st.infected_vertices.contains(w));
            match (open.next(), open.next()) {
                (Some(&w), None) => Some((a, b, w)),
                _ => None,
            }
        });
        let Some((a, b, w)) = mv else {
            return Ok(st);
        };
        let by = vec![a, b];
        st.infected_vertices.insert(w);
        st.trace.push(Step {
            rule: "hyper-pair".into(),
            by: by.clone(),
            infects: Infects::Vertex(w),
        });
        for u in [a, b] {
            let e = pair(u, w);
            if st.infected_2edges.insert(e) {
                st.trace.push(Step {
                    rule: "hyper-pair".into(),
                    by: by.clone(),
                    infects: Infects::Edge([e.0, e.1]),
                });
            }
        }
    }
}

/// Run the process selected by `mode`.
pub fn forcing_run(
    g: &GraphSpec,
    s1: &BTreeSet<Vertex>,
    s2: &BTreeSet<(Vertex, Vertex)>,
    mode: ForcingMode,
    options: ForcingOptions,
) -> Result<ForcingState> {
    match mode {
        ForcingMode::Zero => zero_forcing_run(g, s1),
        ForcingMode::Generalized => generalized_forcing_run(g, s1, options),
        ForcingMode::Hyper => hyper_forcing_run(g, s1, s2),
    }
}

pub fn is_forcing_set(
    g: &GraphSpec,
    s1: &BTreeSet<Vertex>,
    s2: &BTreeSet<(Vertex, Vertex)>,
    mode: ForcingMode,
) -> Result<bool> {
    Ok(forcing_run(g, s1, s2, mode, ForcingOptions::default())?.covers(g))
}

/// Replay a trace from the initial sets, checking each step's precondition.
pub fn replay_trace(
    g: &GraphSpec,
    s1: &BTreeSet<Vertex>,
    s2: &BTreeSet<(Vertex, Vertex)>,
    trace: &[Step],
) -> Result<ForcingState> {
    let comp = completions(g)?;
    let mut st = ForcingState {
        infected_vertices: s1.clone(),
        infected_2edges: s2.iter().map(|&(u, v)| pair(u, v)).collect(),
        trace: Vec::new(),
    };
    let types = g.edge_types().map(|mut t| {
        t.sort();
        t
    });
    let bad = |i: usize, why: &str| Error::InvalidArgument(format!("trace step {i}: {why}"));
    for (i, step) in trace.iter().enumerate() {
        match (step.rule.as_str(), &step.infects) {
            ("hyper-pair", Infects::Vertex(w)) => {
                let (a, b) = match step.by.as_slice() {
                    [a, b] => (*a, *b),
                    _ => return Err(bad(i, "hyper step needs a vertex pair")),
                };
                let ok = st.infected_vertices.contains(&a)
                    && st.infected_vertices.contains(&b)
                    && st.infected_2edges.contains(&pair(a, b))
                    && comp.get(&pair(a, b)).is_some_and(|ws| {
                        let open: Vec<_> = ws.iter().filter(|x| !st.infected_vertices.contains(x)).collect();
                        open == [w]
                    });
                if !ok {
                    return Err(bad(i, "hyper-pair precondition fails"));
                }
                st.infected_vertices.insert(*w);
            }
            ("hyper-pair", Infects::Edge([u, v])) => {
                let newest = st.infected_vertices.contains(u) && st.infected_vertices.contains(v);
                if !newest || !step.by.iter().any(|x| x == u || x == v) {
                    return Err(bad(i, "2-edge infection without its vertex step"));
                }
                st.infected_2edges.insert(pair(*u, *v));
            }
            (rule, Infects::Vertex(w)) => {
                let adj = if rule == "basic" {
                    g.adjacency(None)
                } else if let Some(k) = rule.strip_prefix("typed:") {
                    let k: usize = k.parse().map_err(|_| bad(i, "bad stage index"))?;
                    let t = types
                        .as_ref()
                        .and_then(|t| t.get(k.wrapping_sub(1)))
                        .ok_or_else(|| bad(i, "unknown stage"))?;
                    g.adjacency(Some(t))
                } else {
                    return Err(bad(i, "unknown rule"));
                };
                let v = *step.by.first().ok_or_else(|| bad(i, "missing forcing vertex"))?;
                let open: Vec<_> = adj[&v].iter().filter(|x| !st.infected_vertices.contains(x)).collect();
                if !st.infected_vertices.contains(&v) || open != [w] {
                    return Err(bad(i, "forcing precondition fails"));
                }
                st.infected_vertices.insert(*w);
            }
            _ => return Err(bad(i, "malformed step")),
        }
        st.trace.push(step.clone());
    }
    Ok(st)
}
