#![allow(dead_code)]

pub mod algebra;

use std::collections::BTreeSet;

use qaoalie::forcing::ForcingMode;
use qaoalie::hamlib::{Edge, GraphSpec, Vertex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One corpus graph with the process it is meant for.
#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub graph: GraphSpec,
    pub mode: ForcingMode,
}

fn inst(name: impl Into<String>, graph: GraphSpec, mode: ForcingMode) -> Instance {
    Instance {
        name: name.into(),
        graph,
        mode,
    }
}

fn complete(n: Vertex) -> GraphSpec {
    let mut e = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            e.push((u, v));
        }
    }
    GraphSpec::new(1..=n).with_edges(e)
}

fn bipartite(a: Vertex, b: Vertex) -> GraphSpec {
    let mut e = Vec::new();
    for u in 1..=a {
        for v in a + 1..=a + b {
            e.push((u, v));
        }
    }
    GraphSpec::new(1..=a + b).with_edges(e)
}

fn rect(rows: Vertex, cols: Vertex) -> GraphSpec {
    let id = |r: Vertex, c: Vertex| r * cols + c + 1;
    let mut e = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                e.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                e.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    GraphSpec::new(1..=rows * cols).with_edges(e)
}

fn wheel(rim: Vertex) -> GraphSpec {
    let mut g = GraphSpec::cycle(rim);
    g.vertices.push(rim + 1);
    g.edges.extend((1..=rim).map(|v| Edge::new(v, rim + 1)));
    g
}

fn cube() -> GraphSpec {
    let mut e = Vec::new();
    for u in 0..8u32 {
        for b in 0..3 {
            let v = u ^ (1 << b);
            if u < v {
                e.push((u + 1, v + 1));
            }
        }
    }
    GraphSpec::new(1..=8).with_edges(e)
}

fn random_graph(rng: &mut ChaCha8Rng, n: Vertex, p: f64) -> GraphSpec {
    let mut e = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_bool(p) {
                e.push((u, v));
            }
        }
    }
    GraphSpec::new(1..=n).with_edges(e)
}

fn typed(g: &GraphSpec, rng: &mut ChaCha8Rng, kinds: &[&str]) -> GraphSpec {
    let mut t = g.clone();
    for e in &mut t.edges {
        e.kind = Some(kinds[rng.gen_range(0..kinds.len())].to_string());
    }
    t
}

fn hyperchain(n: Vertex) -> GraphSpec {
    let mut h = vec![vec![1, 2]];
    h.extend((1..=n.saturating_sub(2)).map(|k| vec![k, k + 1, k + 2]));
    GraphSpec::new(1..=n).with_hyperedges(h)
}

fn random_hypergraph(rng: &mut ChaCha8Rng, n: Vertex, triples: usize) -> GraphSpec {
    let mut h: BTreeSet<Vec<Vertex>> = BTreeSet::new();
    let vs: Vec<Vertex> = (1..=n).collect();
    while h.len() < triples {
        let mut t: Vec<Vertex> = vs.choose_multiple(rng, 3).copied().collect();
        t.sort_unstable();
        h.insert(t);
    }
    let mut g = GraphSpec::new(1..=n).with_hyperedges(h);
    g.hyperedges.push(vec![1, 2]);
    g
}

/// Simple graphs on at most 8 vertices.
pub fn simple_graphs() -> Vec<Instance> {
    use ForcingMode::Zero;
    let mut out = Vec::new();
    for n in 1..=8 {
        out.push(inst(format!("path{n}"), GraphSpec::path(n), Zero));
    }
    for n in 3..=8 {
        out.push(inst(format!("cycle{n}"), GraphSpec::cycle(n), Zero));
    }
    for l in 1..=7 {
        out.push(inst(format!("star{l}"), GraphSpec::star(l), Zero));
    }
    for n in 2..=6 {
        out.push(inst(format!("complete{n}"), complete(n), Zero));
    }
    out.push(inst("k23", bipartite(2, 3), Zero));
    out.push(inst("k33", bipartite(3, 3), Zero));
    out.push(inst("grid2x2", rect(2, 2), Zero));
    out.push(inst("grid2x3", rect(2, 3), Zero));
    out.push(inst("grid2x4", rect(2, 4), Zero));
    out.push(inst("wheel4", wheel(4), Zero));
    out.push(inst("wheel6", wheel(6), Zero));
    out.push(inst("cube", cube(), Zero));
    out.push(inst(
        "binary_tree7",
        GraphSpec::new(1..=7).with_edges([(1, 2), (1, 3), (2, 4), (2, 5), (3, 6), (3, 7)]),
        Zero,
    ));
    out.push(inst(
        "spider",
        GraphSpec::new(1..=7).with_edges([(1, 2), (2, 3), (1, 4), (4, 5), (1, 6), (6, 7)]),
        Zero,
    ));
    out.push(inst(
        "caterpillar",
        GraphSpec::new(1..=8).with_edges([(1, 2), (2, 3), (3, 4), (1, 5), (2, 6), (3, 7), (4, 8)]),
        Zero,
    ));
    out.push(inst("isolated3", GraphSpec::new(1..=3), Zero));
    out.push(inst("path2_path3", GraphSpec::new(1..=5).with_edges([(1, 2), (3, 4), (4, 5)]), Zero));
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..12 {
        let n = 3 + (i % 6) as Vertex;
        out.push(inst(format!("random{i}_n{n}"), random_graph(&mut rng, n, 0.45), Zero));
    }
    out
}

/// Typed-edge graphs on at most 8 vertices.
pub fn typed_graphs() -> Vec<Instance> {
    use ForcingMode::Generalized;
    let mut out = vec![
        inst(
            "typed_path3",
            GraphSpec::new(1..=3).with_typed_edges([(1, 2, "a"), (2, 3, "b")]),
            Generalized,
        ),
        inst(
            "typed_star3",
            GraphSpec::new(1..=4).with_typed_edges([(1, 2, "a"), (1, 3, "b"), (1, 4, "c")]),
            Generalized,
        ),
        inst(
            "typed_triangle",
            GraphSpec::new(1..=3).with_typed_edges([(1, 2, "a"), (2, 3, "b"), (1, 3, "a")]),
            Generalized,
        ),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for base in simple_graphs() {
        if base.graph.edges.is_empty() || base.graph.n() < 3 {
            continue;
        }
        let kinds: &[&str] = if base.graph.edges.len() % 2 == 0 { &["a", "b"] } else { &["a", "b", "c"] };
        out.push(inst(format!("typed_{}", base.name), typed(&base.graph, &mut rng, kinds), Generalized));
    }
    out
}

/// Hypergraphs with hyperedges of size at most 3, at most 8 vertices.
pub fn hypergraphs() -> Vec<Instance> {
    use ForcingMode::Hyper;
    let mut out = Vec::new();
    for n in 3..=8 {
        out.push(inst(format!("hyperchain{n}"), hyperchain(n), Hyper));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for i in 0..10 {
        let n = 4 + (i % 5) as Vertex;
        let t = 2 + i % 4;
        out.push(inst(format!("random_hyper{i}_n{n}"), random_hypergraph(&mut rng, n, t), Hyper));
    }
    out
}

pub fn corpus() -> Vec<Instance> {
    let mut all = simple_graphs();
    all.extend(typed_graphs());
    all.extend(hypergraphs());
    all
}

pub fn subsets(vs: &[Vertex]) -> impl Iterator<Item = BTreeSet<Vertex>> + '_ {
    (0u32..1 << vs.len()).map(move |m| vs.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, v)| *v).collect())
}

/// Initial 2-edge sets tried with a vertex set in hyper mode.
pub fn two_edge_choices(g: &GraphSpec, s1: &BTreeSet<Vertex>) -> Vec<BTreeSet<(Vertex, Vertex)>> {
    let inside: Vec<(Vertex, Vertex)> = s1
        .iter()
        .flat_map(|&u| s1.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
        .collect();
    let mut out = vec![BTreeSet::new(), inside.iter().copied().collect()];
    if g.hyperedges.iter().any(|h| h == &vec![1, 2]) {
        out.push([(1, 2)].into_iter().collect());
    }
    out
}

// Naive simulators: plain definitions over the raw edge lists.

fn neighbours(g: &GraphSpec, v: Vertex, kind: Option<&str>) -> BTreeSet<Vertex> {
    g.edges
        .iter()
        .filter(|e| kind.is_none() || e.kind.as_deref() == kind)
        .filter_map(|e| {
            if e.u == v {
                Some(e.v)
            } else if e.v == v {
                Some(e.u)
            } else {
                None
            }
        })
        .collect()
}

fn sweep(g: &GraphSpec, infected: &mut BTreeSet<Vertex>, forcers: &BTreeSet<Vertex>, kind: Option<&str>) -> bool {
    let mut changed = false;
    loop {
        let mut hit = None;
        for &v in infected.iter().filter(|v| forcers.is_empty() || forcers.contains(v)) {
            let open: Vec<Vertex> = neighbours(g, v, kind).into_iter().filter(|w| !infected.contains(w)).collect();
            if open.len() == 1 {
                hit = Some(open[0]);
                break;
            }
        }
        match hit {
            Some(w) => {
                infected.insert(w);
                changed = true;
            }
            None => return changed,
        }
    }
}

pub fn naive_zero(g: &GraphSpec, s: &BTreeSet<Vertex>) -> BTreeSet<Vertex> {
    let mut infected = s.clone();
    sweep(g, &mut infected, &BTreeSet::new(), None);
    infected
}

/// Rounds over the sorted edge types; `sequential` lets later stages use
/// vertices infected earlier in the same round.
pub fn naive_generalized(g: &GraphSpec, s: &BTreeSet<Vertex>, sequential: bool) -> BTreeSet<Vertex> {
    let kinds: BTreeSet<String> = g.edges.iter().filter_map(|e| e.kind.clone()).collect();
    let mut infected = s.clone();
    loop {
        let start = infected.clone();
        let mut changed = false;
        for k in &kinds {
            if sequential {
                changed |= sweep(g, &mut infected, &BTreeSet::new(), Some(k));
            } else if !start.is_empty() {
                changed |= sweep(g, &mut infected, &start, Some(k));
            }
        }
        if !changed {
            return infected;
        }
    }
}

fn third(h: &[Vertex], a: Vertex, b: Vertex) -> Option<Vertex> {
    if h.len() == 3 && h.contains(&a) && h.contains(&b) && a != b {
        h.iter().copied().find(|&x| x != a && x != b)
    } else {
        None
    }
}

fn hyper_moves(g: &GraphSpec, infected: &BTreeSet<Vertex>, edges: &BTreeSet<(Vertex, Vertex)>) -> Vec<(Vertex, Vertex, Vertex)> {
    let mut out = Vec::new();
    for &(a, b) in edges {
        if !infected.contains(&a) || !infected.contains(&b) {
            continue;
        }
        let open: BTreeSet<Vertex> = g
            .hyperedges
            .iter()
            .filter_map(|h| third(h, a, b))
            .filter(|w| !infected.contains(w))
            .collect();
        if open.len() == 1 {
            out.push((a, b, *open.iter().next().unwrap()));
        }
    }
    out
}

fn key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    (u.min(v), u.max(v))
}

/// Hyper process; `rng` picks among applicable moves, `None` takes the first.
pub fn naive_hyper(
    g: &GraphSpec,
    s1: &BTreeSet<Vertex>,
    s2: &BTreeSet<(Vertex, Vertex)>,
    mut rng: Option<&mut ChaCha8Rng>,
) -> (BTreeSet<Vertex>, BTreeSet<(Vertex, Vertex)>) {
    let mut infected = s1.clone();
    let mut edges: BTreeSet<(Vertex, Vertex)> = s2.iter().map(|&(u, v)| key(u, v)).collect();
    loop {
        let moves = hyper_moves(g, &infected, &edges);
        let Some(&(a, b, w)) = (match rng.as_deref_mut() {
            Some(r) => moves.choose(r),
            None => moves.first(),
        }) else {
            return (infected, edges);
        };
        infected.insert(w);
        edges.insert(key(a, w));
        edges.insert(key(b, w));
    }
}

/// Zero or typed forcing with a random choice among applicable moves.
pub fn shuffled_run(g: &GraphSpec, s: &BTreeSet<Vertex>, kind: Option<&str>, rng: &mut ChaCha8Rng) -> BTreeSet<Vertex> {
    let mut infected = s.clone();
    loop {
        let mut moves: Vec<Vertex> = Vec::new();
        for &v in &infected {
            let open: Vec<Vertex> = neighbours(g, v, kind).into_iter().filter(|w| !infected.contains(w)).collect();
            if open.len() == 1 {
                moves.push(open[0]);
            }
        }
        match moves.choose(rng) {
            Some(&w) => {
                infected.insert(w);
            }
            None => return infected,
        }
    }
}

/// Generalized rounds with each stage's moves taken in random order.
pub fn shuffled_generalized(g: &GraphSpec, s: &BTreeSet<Vertex>, rng: &mut ChaCha8Rng) -> BTreeSet<Vertex> {
    let kinds: BTreeSet<String> = g.edges.iter().filter_map(|e| e.kind.clone()).collect();
    let mut infected = s.clone();
    loop {
        let before = infected.len();
        for k in &kinds {
            infected = shuffled_run(g, &infected, Some(k), rng);
        }
        if infected.len() == before {
            return infected;
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Minimum forcing size and every minimum set, by brute force over the naive simulators.
pub fn exhaustive_minimum(g: &GraphSpec, mode: ForcingMode) -> (Option<usize>, Vec<Vec<Vertex>>) {
    let s2: BTreeSet<(Vertex, Vertex)> = g.infected_2edges.iter().copied().collect();
    let mut best: Option<usize> = None;
    let mut sets = Vec::new();
    for s in subsets(&g.vertices) {
        let covered = match mode {
            ForcingMode::Zero => naive_zero(g, &s),
            ForcingMode::Generalized => naive_generalized(g, &s, true),
            ForcingMode::Hyper => naive_hyper(g, &s, &s2, None).0,
        }
        .len()
            == g.n();
        if !covered {
            continue;
        }
        match best {
            Some(b) if s.len() > b => {}
            Some(b) if s.len() == b => sets.push(s.into_iter().collect()),
            _ => {
                best = Some(s.len());
                sets = vec![s.into_iter().collect()];
            }
        }
    }
    sets.sort();
    (best, sets)
}
