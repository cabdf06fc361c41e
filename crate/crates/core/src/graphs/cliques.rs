//! Interval recognition through maximal cliques and consecutive ones, plus
//! the labelled criteria for proper interval graphs.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use super::{delta_d, Graph, GraphError};
use crate::groebner::is_groebner;
use crate::polyring::Field;
use crate::scomplex::{
    exists_labelling, is_strong_interval_with_rep, IntervalRep, LabelledClass, Labelling, SearchBudget, SearchOutcome,
};
use crate::vset::VertexSet;

/// All maximal cliques, sorted lexicographically. Isolated vertices give
/// singleton cliques.
pub fn maximal_cliques(g: &Graph) -> Vec<VertexSet> {
    fn bron_kerbosch(g: &Graph, r: VertexSet, mut p: VertexSet, mut x: VertexSet, out: &mut Vec<VertexSet>) {
        if p.is_empty() {
            if x.is_empty() {
                out.push(r);
            }
            return;
        }
        let pivot = p.union(x).iter().max_by_key(|&u| g.neighbours(u).intersection(p).len()).unwrap();
        for v in p.difference(g.neighbours(pivot)).iter() {
            let nv = g.neighbours(v);
            bron_kerbosch(g, r.with(v), p.intersection(nv), x.intersection(nv), out);
            p = p.without(v);
            x = x.with(v);
        }
    }
    let mut out = Vec::new();
    if g.n() > 0 {
        bron_kerbosch(g, VertexSet::EMPTY, g.vertices(), VertexSet::EMPTY, &mut out);
    }
    out.sort();
    out
}

/// An order of `0..m` in which every set (given as a bitmask over `0..m`) is
/// contiguous, found by backtracking.
fn contiguous_order(m: usize, sets: &[u64]) -> Option<Vec<usize>> {
    fn go(m: usize, sets: &[u64], placed: u64, last: Option<usize>, order: &mut Vec<usize>) -> bool {
        if order.len() == m {
            return true;
        }
        for e in 0..m {
            if placed >> e & 1 == 1 {
                continue;
            }
            let ok = sets.iter().all(|&s| {
                let has_e = s >> e & 1 == 1;
                let started = s & placed != 0;
                let open = last.is_some_and(|l| s >> l & 1 == 1);
                let complete = s & !placed == 0;
                if has_e {
                    // Entering or continuing: the set must not have closed.
                    !started || open
                } else {
                    // Leaving an open set requires it to be finished.
                    !open || complete
                }
            });
            if !ok {
                continue;
            }
            order.push(e);
            if go(m, sets, placed | 1 << e, Some(e), order) {
                return true;
            }
            order.pop();
        }
        false
    }
    let mut order = Vec::with_capacity(m);
    go(m, sets, 0, None, &mut order).then_some(order)
}

/// An order of the cliques in which the cliques containing any one vertex
/// are consecutive (indices into `cliques`).
pub fn consecutive_ones_columns(g: &Graph, cliques: &[VertexSet]) -> Option<Vec<usize>> {
    let sets: Vec<u64> = (1..=g.n())
        .map(|v| cliques.iter().enumerate().filter(|(_, c)| c.contains(v)).fold(0u64, |a, (i, _)| a | 1 << i))
        .collect();
    contiguous_order(cliques.len(), &sets)
}

/// Vertex and clique orders for which the clique-vertex incidence matrix has
/// consecutive ones in every row and every column.
pub fn consecutive_ones_both(g: &Graph, cliques: &[VertexSet]) -> Option<(Vec<usize>, Vec<usize>)> {
    let rows: Vec<u64> = cliques.iter().map(|c| c.bits()).collect();
    let vertex_order = contiguous_order(g.n(), &rows)?;
    let clique_order = consecutive_ones_columns(g, cliques)?;
    Some((vertex_order.into_iter().map(|i| i + 1).collect(), clique_order))
}

/// Intervals read off the maximal cliques: order the cliques by smallest and
/// then largest label under `l`, and give each vertex the index range of the
/// cliques that contain it.
pub fn clique_interval_rep(g: &Graph, l: &Labelling) -> IntervalRep {
    let mut cliques = maximal_cliques(g);
    let key = |c: &VertexSet| {
        let labels = c.map(l.images());
        (labels.min().unwrap(), labels.max().unwrap())
    };
    cliques.sort_by_key(key);
    let intervals = (1..=g.n())
        .map(|v| {
            let idx: Vec<i64> =
                cliques.iter().enumerate().filter(|(_, c)| c.contains(v)).map(|(i, _)| i as i64).collect();
            (Rational64::from(idx[0]), Rational64::from(*idx.last().unwrap()))
        })
        .collect();
    IntervalRep::new(intervals).expect("first index precedes last")
}

/// Witness that a graph is an interval graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalCertificate {
    /// Labelling under which `Δ_1(G)` is global interval.
    pub labelling: Labelling,
    /// Clique-derived intervals, indexed by the original vertex names.
    pub rep: IntervalRep,
    /// The intervals reproduce exactly the edges of `G`.
    pub verified: bool,
}

/// Searches for a labelling making `Δ_1(G)` global interval and, on success,
/// builds and checks the clique interval representation.
pub fn is_interval_graph(g: &Graph, budget: SearchBudget) -> SearchOutcome<IntervalCertificate> {
    let complex = delta_d(g, 1).expect("d = 1");
    match exists_labelling(&complex, LabelledClass::GlobalInterval, budget) {
        SearchOutcome::Found(labelling) => {
            let rep = clique_interval_rep(g, &labelling);
            let verified = is_strong_interval_with_rep(&complex, &rep).unwrap_or(false);
            SearchOutcome::Found(IntervalCertificate { labelling, rep, verified })
        }
        SearchOutcome::ExhaustedNone => SearchOutcome::ExhaustedNone,
        SearchOutcome::BudgetExceeded => SearchOutcome::BudgetExceeded,
    }
}

/// `G*`: the edge `{i, j}` becomes the arc `i -> j` when `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedGraph {
    n: usize,
    out: Vec<VertexSet>,
}

impl OrientedGraph {
    pub fn from_graph(g: &Graph) -> Self {
        let out = (0..=g.n())
            .map(|v| if v == 0 { VertexSet::EMPTY } else { g.neighbours(v).difference(VertexSet::full(v)) })
            .collect();
        OrientedGraph { n: g.n(), out }
    }

    pub fn has_arc(&self, i: usize, j: usize) -> bool {
        self.out[i].contains(j)
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (1..=self.n).flat_map(|i| self.out[i].iter().map(move |j| (i, j))).collect()
    }

    fn undirected(&self, v: usize) -> VertexSet {
        let incoming = (1..v).filter(|&u| self.out[u].contains(v)).fold(VertexSet::EMPTY, |s, u| s.with(u));
        self.out[v].union(incoming)
    }

    fn distances_from(&self, s: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n + 1];
        dist[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for w in self.undirected(u).iter() {
                if dist[w].is_none() {
                    dist[w] = Some(dist[u].unwrap() + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// For all `i < j`, every shortest path from `i` to `j` follows arcs.
    ///
    /// An edge `{u, w}` lies on a shortest `i`-`j` path walked from `u` to
    /// `w` exactly when `d(i,u) + 1 + d(w,j) = d(i,j)`.
    pub fn all_shortest_paths_directed(&self) -> bool {
        let dist: Vec<Vec<Option<usize>>> =
            (0..=self.n).map(|s| if s == 0 { Vec::new() } else { self.distances_from(s) }).collect();
        for i in 1..=self.n {
            for j in i + 1..=self.n {
                let Some(total) = dist[i][j] else { continue };
                for u in 1..=self.n {
                    for w in self.undirected(u).iter() {
                        let (Some(a), Some(b)) = (dist[i][u], dist[w][j]) else { continue };
                        if a + 1 + b == total && !self.has_arc(u, w) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// The labelled characterisations of proper interval graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Cor33 {
    /// The edge binomials form a Gröbner basis.
    C12,
    /// Shortest paths of `G*` are directed.
    C14,
    /// Maximal cliques are integer intervals.
    C15,
    /// An edge `ij` makes `G[i..=j]` complete.
    C16,
    /// `N[i]` within `G[i..=n]` is a clique and an interval.
    C17,
    /// `N[i]` within `G[1..=i]` is a clique and an interval.
    C18,
    /// `N[i]` is an interval.
    C19,
    /// Smaller and larger neighbours of `i` form cliques.
    C20,
    /// The clique-vertex incidence matrix has consecutive ones in rows and
    /// columns. Independent of the labelling.
    C22,
}

impl Cor33 {
    pub const ALL: [Cor33; 9] =
        [Cor33::C12, Cor33::C14, Cor33::C15, Cor33::C16, Cor33::C17, Cor33::C18, Cor33::C19, Cor33::C20, Cor33::C22];

    pub fn is_labelling_independent(self) -> bool {
        self == Cor33::C22
    }
}

impl fmt::Display for Cor33 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Cor33 {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, GraphError> {
        Cor33::ALL
            .into_iter()
            .find(|c| c.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| GraphError::UnknownCriterion(s.to_string()))
    }
}

fn is_integer_interval(s: VertexSet) -> bool {
    match (s.min(), s.max()) {
        (Some(a), Some(b)) => s.len() == b - a + 1,
        _ => true,
    }
}

/// The truth value of one criterion for `G` under its own labels.
pub fn cor33_criterion(g: &Graph, id: Cor33) -> bool {
    let n = g.n();
    let above = |i: usize| g.neighbours(i).difference(VertexSet::full(i));
    let below = |i: usize| g.neighbours(i).intersection(VertexSet::full(i - 1));
    match id {
        Cor33::C12 => {
            if g.num_edges() == 0 {
                return true;
            }
            let basis = delta_d(g, 1).unwrap().determinantal_facet_ideal(Field::Rationals).expect("valid context");
            is_groebner(&basis).expect("nonempty basis").is_gb
        }
        Cor33::C14 => OrientedGraph::from_graph(g).all_shortest_paths_directed(),
        Cor33::C15 => maximal_cliques(g).into_iter().all(is_integer_interval),
        Cor33::C16 => g.edges().into_iter().all(|(i, j)| g.is_clique(VertexSet::range(i, j))),
        Cor33::C17 => (1..=n).all(|i| {
            let s = above(i).with(i);
            g.is_clique(s) && is_integer_interval(s)
        }),
        Cor33::C18 => (1..=n).all(|i| {
            let s = below(i).with(i);
            g.is_clique(s) && is_integer_interval(s)
        }),
        Cor33::C19 => (1..=n).all(|i| is_integer_interval(g.closed_neighbourhood(i))),
        Cor33::C20 => (1..=n).all(|i| g.is_clique(above(i)) && g.is_clique(below(i))),
        Cor33::C22 => consecutive_ones_both(g, &maximal_cliques(g)).is_some(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> VertexSet {
        VertexSet::from_vertices(v.iter().copied())
    }

    #[test]
    fn cliques_of_small_graphs() {
        assert_eq!(maximal_cliques(&Graph::path(3)), vec![set(&[1, 2]), set(&[2, 3])]);
        assert_eq!(maximal_cliques(&Graph::complete(4)), vec![VertexSet::full(4)]);
        assert_eq!(maximal_cliques(&Graph::empty(2).unwrap()), vec![set(&[1]), set(&[2])]);
        assert_eq!(maximal_cliques(&Graph::cycle(4)).len(), 4);
    }

    #[test]
    fn contiguous_order_basics() {
        assert!(contiguous_order(3, &[0b011, 0b110]).is_some());
        // Three pairwise-overlapping pairs of a 3-set cannot all be contiguous.
        assert!(contiguous_order(3, &[0b011, 0b110, 0b101]).is_none());
        assert_eq!(contiguous_order(0, &[]), Some(vec![]));
    }

    #[test]
    fn criteria_on_path_and_claw() {
        let p3 = Graph::path(3);
        for id in Cor33::ALL {
            assert!(cor33_criterion(&p3, id), "{id}");
        }
        let claw = Graph::star(3);
        assert!(!cor33_criterion(&claw, Cor33::C22));
        assert!(consecutive_ones_columns(&claw, &maximal_cliques(&claw)).is_some());
        let k5 = Graph::complete(5);
        assert!(Cor33::ALL.iter().all(|&id| cor33_criterion(&k5, id)));
    }

    #[test]
    fn criterion_names() {
        assert_eq!("c14".parse::<Cor33>().unwrap(), Cor33::C14);
        assert_eq!("C13".parse::<Cor33>(), Err(GraphError::UnknownCriterion("C13".into())));
    }

    #[test]
    fn oriented_paths() {
        let g = Graph::from_edges(3, &[(1, 2), (1, 3)]).unwrap();
        let o = OrientedGraph::from_graph(&g);
        assert_eq!(o.arcs(), vec![(1, 2), (1, 3)]);
        assert!(!o.all_shortest_paths_directed());
        assert!(OrientedGraph::from_graph(&Graph::path(5)).all_shortest_paths_directed());
    }

    #[test]
    fn interval_recognition() {
        for g in [Graph::path(5), Graph::complete(4), Graph::star(3)] {
            let cert = is_interval_graph(&g, SearchBudget::default()).found().unwrap();
            assert!(cert.verified, "{g:?}");
        }
        assert_eq!(is_interval_graph(&Graph::cycle(4), SearchBudget::default()), SearchOutcome::ExhaustedNone);
    }
}
