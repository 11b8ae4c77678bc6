use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::engine::{forcing_run, ForcingMode, ForcingOptions};
use crate::error::{Error, Result};
use crate::hamlib::{GraphSpec, Vertex};

/// Largest vertex count accepted by the brute-force search.
pub const SEARCH_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalForcing {
    pub mode: ForcingMode,
    /// `None` when no set of size `≤ max_size` forces.
    pub size: Option<usize>,
    pub sets: Vec<Vec<Vertex>>,
    pub examined: u64,
}

/// Lexicographic `k`-subsets of `0..n` as index vectors.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Every minimum-cardinality forcing set up to `max_size`.
///
/// In hyper mode the graph's own infected 2-edges are the fixed initial 2-edge set.
pub fn minimal_forcing_search(
    g: &GraphSpec,
    mode: ForcingMode,
    max_size: usize,
) -> Result<MinimalForcing> {
    let nv = g.vertices.len();
    if nv > SEARCH_LIMIT {
        return Err(Error::GraphTooLarge {
            vertices: nv,
            limit: SEARCH_LIMIT,
        });
    }
    let mut verts = g.vertices.clone();
    verts.sort_unstable();
    let s2: BTreeSet<(Vertex, Vertex)> = g
        .infected_2edges
        .iter()
        .map(|&(u, v)| (u.min(v), u.max(v)))
        .collect();
    let opts = ForcingOptions::default();
    // Surface mode errors once, before the parallel sweep.
    forcing_run(g, &BTreeSet::new(), &s2, mode, opts)?;
    let mut examined = 0u64;
    for k in 0..=max_size.min(nv) {
        let cands = combinations(nv, k);
        examined += cands.len() as u64;
        let sets: Vec<Vec<Vertex>> = cands
            .par_iter()
            .filter_map(|c| {
                let s: BTreeSet<Vertex> = c.iter().map(|&i| verts[i]).collect();
                let st = forcing_run(g, &s, &s2, mode, opts).ok()?;
                st.covers(g).then(|| s.into_iter().collect())
            })
            .collect();
        if !sets.is_empty() {
            return Ok(MinimalForcing {
                mode,
                size: Some(k),
                sets,
                examined,
            });
        }
    }
    Ok(MinimalForcing {
        mode,
        size: None,
        sets: Vec::new(),
        examined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combination_counts() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(4, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
        assert_eq!(combinations(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn path_and_cycle() {
        let r = minimal_forcing_search(&GraphSpec::path(4), ForcingMode::Zero, 4).unwrap();
        assert_eq!(r.size, Some(1));
        assert_eq!(r.sets, vec![vec![1], vec![4]]);
        let r = minimal_forcing_search(&GraphSpec::cycle(4), ForcingMode::Zero, 4).unwrap();
        assert_eq!(r.size, Some(2));
        assert!(r.sets.contains(&vec![1, 2]));
        assert!(!r.sets.contains(&vec![1, 3]));
    }

    #[test]
    fn isolated_vertices_need_everything() {
        let g = GraphSpec::new([1, 2, 3]);
        let r = minimal_forcing_search(&g, ForcingMode::Zero, 3).unwrap();
        assert_eq!(r.size, Some(3));
        assert_eq!(r.sets, vec![vec![1, 2, 3]]);
        assert_eq!(minimal_forcing_search(&g, ForcingMode::Zero, 2).unwrap().size, None);
    }

    #[test]
    fn too_large_rejected() {
        let g = GraphSpec::path(21);
        assert!(matches!(
            minimal_forcing_search(&g, ForcingMode::Zero, 1),
            Err(Error::GraphTooLarge { .. })
        ));
    }

    #[test]
    fn typed_star_any_singleton() {
        let g = GraphSpec::new([1, 2, 3, 4]).with_typed_edges([(1, 2, "a"), (1, 3, "b"), (1, 4, "c")]);
        let r = minimal_forcing_search(&g, ForcingMode::Generalized, 4).unwrap();
        assert_eq!(r.size, Some(1));
        assert_eq!(r.sets, vec![vec![1], vec![2], vec![3], vec![4]]);
    }
}
