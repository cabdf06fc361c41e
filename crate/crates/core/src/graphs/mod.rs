//! Simple graphs on `[n]` and the complexes built from them.

mod cliques;
mod forbidden;

use std::fmt;

use thiserror::Error;

use crate::scomplex::{Labelling, SimplicialComplex};
use crate::vset::{VertexSet, MAX_VERTICES};

pub use cliques::{
    clique_interval_rep, consecutive_ones_both, consecutive_ones_columns, cor33_criterion, is_interval_graph,
    maximal_cliques, Cor33, IntervalCertificate, OrientedGraph,
};
pub use forbidden::{find_d_claw, find_d_paw, has_induced_cycle_of_length_at_least, is_chordal, Claw};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} outside 1..={1}")]
    VertexOutOfRange(usize, usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("at most {MAX_VERTICES} vertices are supported, got {0}")]
    TooManyVertices(usize),
    #[error("corona needs one graph per vertex: {got} given for {expected} vertices")]
    FamilySize { got: usize, expected: usize },
    #[error("unknown criterion '{0}'")]
    UnknownCriterion(String),
    #[error("d must be at least 1")]
    ZeroDimension,
}

/// A simple undirected graph on the vertex set `[n]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    /// `adj[v]` for `v` in `1..=n`; index 0 is unused.
    adj: Vec<VertexSet>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![VertexSet::EMPTY; n + 1] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w == 0 || w > self.n {
                return Err(GraphError::VertexOutOfRange(w, self.n));
            }
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        self.adj[u] = self.adj[u].with(v);
        self.adj[v] = self.adj[v].with(u);
        Ok(())
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n).expect("size checked by caller");
        for u in 1..=n {
            g.adj[u] = VertexSet::full(n).without(u);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Self::from_edges(n, &edges).expect("valid path")
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        if n >= 3 {
            edges.push((1, n));
        }
        Self::from_edges(n, &edges).expect("valid cycle")
    }

    /// `K_{1,k}` with centre `k + 1`.
    pub fn star(k: usize) -> Self {
        let edges: Vec<_> = (1..=k).map(|i| (i, k + 1)).collect();
        Self::from_edges(k + 1, &edges).expect("valid star")
    }

    /// Three legs of `len` vertices each, joined at the centre `1`.
    pub fn spider(len: usize) -> Self {
        let mut edges = Vec::new();
        for leg in 0..3 {
            let mut prev = 1;
            for step in 0..len {
                let v = 2 + leg * len + step;
                edges.push((prev, v));
                prev = v;
            }
        }
        Self::from_edges(1 + 3 * len, &edges).expect("valid spider")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u <= self.n && self.adj[u].contains(v)
    }

    pub fn neighbours(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn closed_neighbourhood(&self, v: usize) -> VertexSet {
        self.adj[v].with(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (1..=self.n).flat_map(|u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v))).collect()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn is_clique(&self, u: VertexSet) -> bool {
        u.iter().all(|v| u.without(v).is_subset(self.adj[v]))
    }

    /// Vertices of `u` reachable from `start` inside `G[u]`.
    pub fn component_within(&self, start: usize, u: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier.iter() {
                next = next.union(self.adj[v]);
            }
            frontier = next.intersection(u).difference(seen);
            seen = seen.union(frontier);
        }
        seen
    }

    /// Connected components of `G[u]`, ordered by smallest vertex.
    pub fn components_within(&self, u: VertexSet) -> Vec<VertexSet> {
        let mut rest = u;
        let mut out = Vec::new();
        while let Some(v) = rest.min() {
            let c = self.component_within(v, u);
            rest = rest.difference(c);
            out.push(c);
        }
        out
    }

    /// `G[u]` is connected; the empty set counts as connected.
    pub fn is_connected_within(&self, u: VertexSet) -> bool {
        match u.min() {
            None => true,
            Some(v) => self.component_within(v, u) == u,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_within(self.vertices())
    }

    /// Degree of `v` inside `G[u]`.
    pub fn degree_within(&self, v: usize, u: VertexSet) -> usize {
        self.adj[v].intersection(u).len()
    }

    /// The graph with every vertex `v` renamed to `l.apply(v)`.
    pub fn relabel(&self, l: &Labelling) -> Self {
        let mut adj = vec![VertexSet::EMPTY; self.n + 1];
        for v in 1..=self.n {
            adj[l.apply(v)] = self.adj[v].map(l.images());
        }
        Graph { n: self.n, adj }
    }

    /// Adjacency bits of the upper triangle, read row by row; used for
    /// canonical forms.
    pub fn adjacency_code(&self) -> u128 {
        let mut code = 0u128;
        for u in 1..=self.n {
            for v in u + 1..=self.n {
                code = (code << 1) | u128::from(self.has_edge(u, v));
            }
        }
        code
    }

    /// Graph on `[n]` whose edges are read from the bits of `code` in the
    /// order of [`Graph::adjacency_code`].
    pub fn from_adjacency_code(n: usize, code: u128) -> Self {
        let mut g = Self::empty(n).expect("size checked by caller");
        let total = n * n.saturating_sub(1) / 2;
        let mut bit = total;
        for u in 1..=n {
            for v in u + 1..=n {
                bit -= 1;
                if (code >> bit) & 1 == 1 {
                    g.adj[u] = g.adj[u].with(v);
                    g.adj[v] = g.adj[v].with(u);
                }
            }
        }
        g
    }

    /// Every component has one edge fewer than it has vertices.
    pub fn is_forest(&self) -> bool {
        self.components_within(self.vertices())
            .iter()
            .all(|c| c.iter().map(|v| self.degree_within(v, *c)).sum::<usize>() / 2 + 1 == c.len())
    }

    /// `G[c]` is a path; a single vertex counts as one.
    pub fn is_path_component(&self, c: VertexSet) -> bool {
        let edges = c.iter().map(|v| self.degree_within(v, c)).sum::<usize>() / 2;
        self.is_connected_within(c) && edges + 1 == c.len() && c.iter().all(|v| self.degree_within(v, c) <= 2)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// The pure `d`-complex whose facets are the connected `(d+1)`-subsets.
pub fn delta_d(g: &Graph, d: usize) -> Result<SimplicialComplex, GraphError> {
    if d == 0 {
        return Err(GraphError::ZeroDimension);
    }
    let facets = g.vertices().subsets_of_size(d + 1).filter(|&u| g.is_connected_within(u)).collect();
    Ok(SimplicialComplex::new(g.n(), d, facets).expect("connected subsets are pure"))
}

/// Every component of `G[u]` has at most `d` vertices.
pub fn is_d_independent(g: &Graph, u: VertexSet, d: usize) -> Result<bool, GraphError> {
    if let Some(v) = u.difference(g.vertices()).min() {
        return Err(GraphError::VertexOutOfRange(v, g.n()));
    }
    Ok(g.components_within(u).iter().all(|c| c.len() <= d))
}

/// Faces of the `d`-independence complex, grouped by cardinality: entry `k`
/// lists the `k`-element faces in lexicographic order.
pub fn ind_d(g: &Graph, d: usize) -> Result<Vec<Vec<VertexSet>>, GraphError> {
    if d == 0 {
        return Err(GraphError::ZeroDimension);
    }
    Ok(group_faces(g.n(), |u| g.components_within(u).iter().all(|c| c.len() <= d)))
}

/// Faces of the independence complex of `Δ_d(G)`: sets containing no facet.
pub fn independence_complex(c: &SimplicialComplex) -> Vec<Vec<VertexSet>> {
    group_faces(c.n(), |u| !c.facets().iter().any(|f| f.is_subset(u)))
}

fn group_faces(n: usize, keep: impl Fn(VertexSet) -> bool) -> Vec<Vec<VertexSet>> {
    let mut groups: Vec<Vec<VertexSet>> = Vec::new();
    for k in 0..=n {
        let layer: Vec<VertexSet> = VertexSet::full(n).subsets_of_size(k).filter(|&u| keep(u)).collect();
        if layer.is_empty() {
            break;
        }
        groups.push(layer);
    }
    groups
}

/// `G` with a copy of `hs[x - 1]` attached to each vertex `x`, joined to
/// every vertex of that copy. Copies are numbered after `G` in order of `x`.
pub fn corona(g: &Graph, hs: &[Graph]) -> Result<Graph, GraphError> {
    if hs.len() != g.n() {
        return Err(GraphError::FamilySize { got: hs.len(), expected: g.n() });
    }
    let total = g.n() + hs.iter().map(|h| h.n()).sum::<usize>();
    let mut out = Graph::empty(total)?;
    for (u, v) in g.edges() {
        out.add_edge(u, v)?;
    }
    let mut offset = g.n();
    for (x, h) in hs.iter().enumerate() {
        for (u, v) in h.edges() {
            out.add_edge(offset + u, offset + v)?;
        }
        for w in 1..=h.n() {
            out.add_edge(x + 1, offset + w)?;
        }
        offset += h.n();
    }
    Ok(out)
}
