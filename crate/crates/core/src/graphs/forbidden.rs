//! Forbidden induced configurations: d-claws, d-paws and long induced cycles.

use serde::Serialize;

use super::Graph;
use crate::vset::VertexSet;

/// Three connected induced branches meeting only in `centre`, with no edges
/// between different branches away from the centre.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claw {
    pub centre: usize,
    pub branches: [VertexSet; 3],
}

impl Claw {
    pub fn vertices(&self) -> VertexSet {
        self.branches.iter().fold(VertexSet::EMPTY, |a, b| a.union(*b))
    }
}

/// Connected vertex sets containing `v` with between `lo` and `hi` elements.
fn connected_sets_through(g: &Graph, v: usize, lo: usize, hi: usize) -> Vec<VertexSet> {
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut stack = vec![VertexSet::singleton(v)];
    while let Some(s) = stack.pop() {
        if !seen.insert(s) {
            continue;
        }
        if s.len() >= lo {
            out.push(s);
        }
        if s.len() == hi {
            continue;
        }
        let frontier = s.iter().fold(VertexSet::EMPTY, |a, u| a.union(g.neighbours(u))).difference(s);
        for u in frontier.iter() {
            stack.push(s.with(u));
        }
    }
    out.sort();
    out
}

/// The first d-claw in order of centre and then branch sets.
pub fn find_d_claw(g: &Graph, d: usize) -> Option<Claw> {
    for v in 1..=g.n() {
        let branches = connected_sets_through(g, v, 2, d + 1);
        let rest: Vec<VertexSet> = branches.iter().map(|b| b.without(v)).collect();
        let reach: Vec<VertexSet> =
            rest.iter().map(|r| r.iter().fold(VertexSet::EMPTY, |a, u| a.union(g.neighbours(u)))).collect();
        let compatible = |a: usize, b: usize| {
            rest[a].is_disjoint(rest[b])
                && reach[a].is_disjoint(rest[b])
                && branches[a].len() + branches[b].len() > d + 1
        };
        let m = branches.len();
        for a in 0..m {
            for b in a + 1..m {
                if !compatible(a, b) {
                    continue;
                }
                for c in b + 1..m {
                    if compatible(a, c) && compatible(b, c) {
                        return Some(Claw { centre: v, branches: [branches[a], branches[b], branches[c]] });
                    }
                }
            }
        }
    }
    None
}

/// A connected induced subgraph on `d + 2` vertices with exactly three
/// vertices of degree one.
pub fn find_d_paw(g: &Graph, d: usize) -> Option<VertexSet> {
    g.vertices()
        .subsets_of_size(d + 2)
        .find(|&u| g.is_connected_within(u) && u.iter().filter(|&v| g.degree_within(v, u) == 1).count() == 3)
}

/// Some vertex set of size at least `len` induces a chordless cycle.
pub fn has_induced_cycle_of_length_at_least(g: &Graph, len: usize) -> bool {
    let len = len.max(3);
    (len..=g.n()).any(|k| {
        g.vertices()
            .subsets_of_size(k)
            .any(|u| u.iter().all(|v| g.degree_within(v, u) == 2) && g.is_connected_within(u))
    })
}

pub fn is_chordal(g: &Graph) -> bool {
    !has_induced_cycle_of_length_at_least(g, 4)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn claw_examples() {
        let claw = find_d_claw(&Graph::star(3), 1).unwrap();
        assert_eq!(claw.centre, 4);
        assert!(claw.branches.iter().all(|b| b.len() == 2));
        assert_eq!(find_d_claw(&Graph::path(4), 1), None);
        let spider = find_d_claw(&Graph::spider(2), 2).unwrap();
        assert_eq!(spider.centre, 1);
        // The three full legs form a witness as well.
        let legs = [2, 4, 6].map(|s| VertexSet::from_vertices([1, s, s + 1]));
        let g = Graph::spider(2);
        assert!(legs.iter().all(|l| g.is_connected_within(*l)));
        assert_eq!(find_d_claw(&Graph::cycle(6), 2), None);
    }

    #[test]
    fn paw_examples() {
        assert_eq!(find_d_paw(&Graph::star(3), 2), Some(VertexSet::full(4)));
        for code in 0..(1u128 << 10) {
            assert_eq!(find_d_paw(&Graph::from_adjacency_code(5, code), 1), None);
        }
        for d in 1..=3 {
            assert_eq!(find_d_paw(&Graph::cycle(5), d), None);
        }
    }

    #[test]
    fn cycle_examples() {
        assert!(has_induced_cycle_of_length_at_least(&Graph::cycle(5), 5));
        assert!(!has_induced_cycle_of_length_at_least(&Graph::cycle(5), 6));
        assert!(!has_induced_cycle_of_length_at_least(&Graph::spider(2), 3));
        let mut chorded = Graph::cycle(4);
        chorded.add_edge(1, 3).unwrap();
        assert!(!has_induced_cycle_of_length_at_least(&chorded, 4));
        assert!(has_induced_cycle_of_length_at_least(&chorded, 3));
        assert!(is_chordal(&chorded) && !is_chordal(&Graph::cycle(4)));
    }
}
