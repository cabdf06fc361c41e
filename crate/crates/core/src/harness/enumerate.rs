//! Graph enumeration and seeded random instances.

use std::ops::RangeInclusive;
use std::sync::Arc;

use rand::seq::index::sample;
use rand::Rng;

use super::HarnessError;
use crate::graphs::Graph;
use crate::scomplex::SimplicialComplex;
use crate::symmatrix::permutations_with_parity;
use crate::vset::VertexSet;

/// Largest `n` accepted by [`enumerate_graphs`].
pub const LABELLED_CAP: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphMode {
    /// All `2^(n choose 2)` graphs on `[n]`.
    Labelled,
    /// One graph per isomorphism class: the one with the smallest
    /// adjacency code.
    Canonical,
}

/// For each permutation, where each adjacency-code bit moves to.
struct BitMaps {
    maps: Vec<Vec<u8>>,
}

impl BitMaps {
    fn new(n: usize) -> Self {
        let total = n * n.saturating_sub(1) / 2;
        let mut pos = vec![vec![0u8; n]; n];
        let mut k = 0;
        for u in 0..n {
            for v in u + 1..n {
                let bit = (total - 1 - k) as u8;
                pos[u][v] = bit;
                pos[v][u] = bit;
                k += 1;
            }
        }
        let mut maps = Vec::new();
        for (p, _) in permutations_with_parity(n) {
            let mut map = vec![0u8; total];
            for u in 0..n {
                for v in u + 1..n {
                    map[pos[u][v] as usize] = pos[p[u]][p[v]];
                }
            }
            maps.push(map);
        }
        BitMaps { maps }
    }

    fn apply(map: &[u8], code: u128) -> u128 {
        let mut out = 0u128;
        let mut rest = code;
        while rest != 0 {
            let b = rest.trailing_zeros() as usize;
            out |= 1u128 << map[b];
            rest &= rest - 1;
        }
        out
    }

    fn is_canonical(&self, code: u128) -> bool {
        self.maps.iter().all(|m| Self::apply(m, code) >= code)
    }

    fn canonical(&self, code: u128) -> u128 {
        self.maps.iter().map(|m| Self::apply(m, code)).min().unwrap_or(code)
    }
}

/// The smallest adjacency code over all relabellings of `g`.
pub fn canonical_code(g: &Graph) -> u128 {
    BitMaps::new(g.n()).canonical(g.adjacency_code())
}

/// Graphs on `[n]` in increasing order of adjacency code.
pub fn enumerate_graphs(n: usize, mode: GraphMode) -> Result<Box<dyn Iterator<Item = Graph> + Send>, HarnessError> {
    enumerate_graphs_where(n, mode, |_| true)
}

/// As [`enumerate_graphs`], keeping only graphs passing `keep`. In canonical
/// mode the filter should be isomorphism invariant.
pub fn enumerate_graphs_where<F>(
    n: usize,
    mode: GraphMode,
    keep: F,
) -> Result<Box<dyn Iterator<Item = Graph> + Send>, HarnessError>
where
    F: Fn(&Graph) -> bool + Send + Sync + 'static,
{
    if n > LABELLED_CAP {
        return Err(HarnessError::CapExceeded { n, cap: LABELLED_CAP });
    }
    let total = n * n.saturating_sub(1) / 2;
    let codes = 0..(1u128 << total);
    match mode {
        GraphMode::Labelled => {
            Ok(Box::new(codes.map(move |c| Graph::from_adjacency_code(n, c)).filter(move |g| keep(g))))
        }
        GraphMode::Canonical => {
            let maps = Arc::new(BitMaps::new(n));
            Ok(Box::new(
                codes
                    .filter(move |&c| maps.is_canonical(c))
                    .map(move |c| Graph::from_adjacency_code(n, c))
                    .filter(move |g| keep(g)),
            ))
        }
    }
}

/// One forest per isomorphism class on `[n]`, in increasing code order.
pub fn enumerate_forests(n: usize) -> Result<Vec<Graph>, HarnessError> {
    if n > LABELLED_CAP {
        return Err(HarnessError::CapExceeded { n, cap: LABELLED_CAP });
    }
    let total = n * n.saturating_sub(1) / 2;
    let maps = BitMaps::new(n);
    Ok((0..(1u128 << total))
        .filter(|c| (c.count_ones() as usize) < n.max(1))
        .map(|c| Graph::from_adjacency_code(n, c))
        .filter(|g| g.is_forest() && maps.is_canonical(g.adjacency_code()))
        .collect())
}

/// Each of the possible edges is present with probability 1/2.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let total = n * n.saturating_sub(1) / 2;
    let mut code = 0u128;
    for _ in 0..total {
        code = (code << 1) | u128::from(rng.gen_bool(0.5));
    }
    Graph::from_adjacency_code(n, code)
}

/// A pure complex with `d` drawn from `dims`, between `d + 1` and `n_max`
/// vertices, and between one and `max_facets` facets (fewer when repeated
/// draws coincide).
pub fn random_complex<R: Rng>(
    rng: &mut R,
    n_max: usize,
    dims: RangeInclusive<usize>,
    max_facets: usize,
) -> SimplicialComplex {
    let d = rng.gen_range(dims);
    let n = rng.gen_range(d + 1..=n_max.max(d + 1));
    let count = rng.gen_range(1..=max_facets.max(1));
    let facets =
        (0..count).map(|_| VertexSet::from_vertices(sample(rng, n, d + 1).into_iter().map(|v| v + 1))).collect();
    SimplicialComplex::new(n, d, facets).expect("facets drawn inside [n]")
}
