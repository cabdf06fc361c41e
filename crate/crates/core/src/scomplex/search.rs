//! Labelling search.
//!
//! Labels are handed out in increasing order. Once labels `1..=k` are placed,
//! the facets lying entirely on those vertices form a complex whose class
//! predicate is a necessary condition for every completion, so a failing
//! prefix prunes its whole subtree. The vertex receiving label 1 ranges over
//! one representative per automorphism orbit only.

use std::sync::atomic::{AtomicBool, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::predicates::full_skeleton_on;
use super::{LabelledClass, Labelling, SimplicialComplex};
use crate::vset::VertexSet;

/// Upper bound on search-tree nodes for one search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_nodes: u64,
}

impl SearchBudget {
    pub const DEFAULT_NODES: u64 = 1_000_000;

    pub fn new(max_nodes: u64) -> Self {
        SearchBudget { max_nodes: max_nodes.max(1) }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::new(Self::DEFAULT_NODES)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    ExhaustedNone,
    BudgetExceeded,
}

impl<T> SearchOutcome<T> {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn is_conclusive(&self) -> bool {
        !matches!(self, SearchOutcome::BudgetExceeded)
    }

    pub fn category(&self) -> &'static str {
        match self {
            SearchOutcome::Found(_) => "found",
            SearchOutcome::ExhaustedNone => "exhausted_none",
            SearchOutcome::BudgetExceeded => "budget_exceeded",
        }
    }

    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    /// `Some(true)` for found, `Some(false)` for exhausted, `None` otherwise.
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            SearchOutcome::Found(_) => Some(true),
            SearchOutcome::ExhaustedNone => Some(false),
            SearchOutcome::BudgetExceeded => None,
        }
    }
}

/// Searches for a labelling under which the complex belongs to `class`.
pub fn exists_labelling(c: &SimplicialComplex, class: LabelledClass, budget: SearchBudget) -> SearchOutcome<Labelling> {
    search(c, &|x: &SimplicialComplex| class.holds(x), Some(class), budget)
}

/// Searches for a labelling under which `pred` holds.
///
/// `pred` must be prefix-monotone: if it holds for a complex it holds for the
/// subcomplex of facets supported on the labels `1..=k`, for every `k`. All
/// five labelled classes and the chordal condition have this property.
pub fn exists_labelling_by<P>(c: &SimplicialComplex, pred: P, budget: SearchBudget) -> SearchOutcome<Labelling>
where
    P: Fn(&SimplicialComplex) -> bool + Sync,
{
    search(c, &pred, None, budget)
}

fn search<P>(
    c: &SimplicialComplex,
    pred: &P,
    class: Option<LabelledClass>,
    budget: SearchBudget,
) -> SearchOutcome<Labelling>
where
    P: Fn(&SimplicialComplex) -> bool + Sync,
{
    let n = c.n();
    if pred(c) {
        return SearchOutcome::Found(Labelling::identity(n));
    }
    if n <= 1 {
        return SearchOutcome::ExhaustedNone;
    }
    let orbits = automorphism_orbits(c);
    let reps: Vec<usize> = (1..=n).filter(|&v| orbits[v - 1] == v).collect();
    let blocks: Vec<(usize, usize)> =
        reps.iter().flat_map(|&r| (1..=n).filter(move |&s| s != r).map(move |s| (r, s))).collect();
    let per_block = (budget.max_nodes / blocks.len() as u64).max(1);
    let exceeded = AtomicBool::new(false);
    let hit = blocks.par_iter().find_map_first(|&(r, s)| {
        let mut dfs = Dfs::new(c, pred, class, per_block);
        let found = dfs.start(&[r, s]);
        if dfs.exceeded {
            exceeded.store(true, Ordering::Relaxed);
        }
        found
    });
    match hit {
        Some(images) => {
            let l = Labelling { images };
            debug_assert!(pred(&c.relabel_unchecked(l.images())));
            SearchOutcome::Found(l)
        }
        None if exceeded.load(Ordering::Relaxed) => SearchOutcome::BudgetExceeded,
        None => SearchOutcome::ExhaustedNone,
    }
}

struct Dfs<'a, P> {
    c: &'a SimplicialComplex,
    pred: &'a P,
    class: Option<LabelledClass>,
    nb: Vec<VertexSet>,
    nodes_left: u64,
    exceeded: bool,
    /// `label[v]` for assigned vertices, 0 otherwise.
    label: Vec<usize>,
    assigned: VertexSet,
    /// Relabelled facets supported on the assigned vertices.
    placed: Vec<VertexSet>,
}

impl<'a, P: Fn(&SimplicialComplex) -> bool> Dfs<'a, P> {
    fn new(c: &'a SimplicialComplex, pred: &'a P, class: Option<LabelledClass>, nodes: u64) -> Self {
        Dfs {
            c,
            pred,
            class,
            nb: c.cofacet_neighbours(),
            nodes_left: nodes,
            exceeded: false,
            label: vec![0; c.n() + 1],
            assigned: VertexSet::EMPTY,
            placed: Vec::new(),
        }
    }

    fn start(&mut self, prefix: &[usize]) -> Option<Vec<usize>> {
        for &v in prefix {
            if !self.push(v) {
                return None;
            }
        }
        self.descend()
    }

    /// Gives `v` the next label. Returns false when the prefix already fails.
    fn push(&mut self, v: usize) -> bool {
        let k = self.assigned.len() + 1;
        self.label[v] = k;
        self.assigned = self.assigned.with(v);
        let before = self.placed.len();
        for &f in self.c.facets() {
            if f.contains(v) && f.is_subset(self.assigned) {
                let image = f.iter().fold(VertexSet::EMPTY, |s, u| s.with(self.label[u]));
                self.placed.push(image);
            }
        }
        if self.placed.len() > before {
            let sub = SimplicialComplex::from_facets_unchecked(self.c.n(), self.c.dim(), self.placed.clone());
            if !(self.pred)(&sub) {
                return false;
            }
        }
        self.lookahead()
    }

    /// Extra necessary conditions from facets that are only partly labelled.
    /// Such a facet will end above label `k`, so every labelled vertex above
    /// its smallest label that it misses is already known to be a gap.
    fn lookahead(&self) -> bool {
        let class = match self.class {
            Some(c @ (LabelledClass::UnitInterval | LabelledClass::ProperInterval | LabelledClass::GlobalInterval)) => {
                c
            }
            _ => return true,
        };
        for &f in self.c.facets() {
            let known = f.intersection(self.assigned);
            if known.is_empty() || known == f {
                continue;
            }
            let lo = known.iter().map(|u| self.label[u]).min().unwrap();
            let later = self.assigned.iter().filter(|&u| self.label[u] > lo).fold(VertexSet::EMPTY, |s, u| s.with(u));
            let gaps = later.difference(f);
            let ok = match class {
                LabelledClass::UnitInterval => full_skeleton_on(self.c, later.union(f)),
                LabelledClass::ProperInterval => gaps
                    .iter()
                    .all(|j| f.intersection(self.nb[j]).iter().all(|i| self.c.is_facet(f.without(i).with(j)))),
                _ => f.len() - known.len() > 1 || gaps.iter().all(|j| self.c.is_facet(known.with(j))),
            };
            if !ok {
                return false;
            }
        }
        true
    }

    fn pop(&mut self, v: usize) {
        self.label[v] = 0;
        self.assigned = self.assigned.without(v);
        self.placed.retain(|f| !f.contains(self.assigned.len() + 1));
    }

    fn descend(&mut self) -> Option<Vec<usize>> {
        let n = self.c.n();
        if self.assigned.len() == n {
            return Some(self.label[1..].to_vec());
        }
        for v in VertexSet::full(n).difference(self.assigned).iter() {
            if self.nodes_left == 0 {
                self.exceeded = true;
                return None;
            }
            self.nodes_left -= 1;
            if self.push(v) {
                if let Some(found) = self.descend() {
                    return Some(found);
                }
            }
            self.pop(v);
            if self.exceeded {
                return None;
            }
        }
        None
    }
}

const AUTOMORPHISM_STEP_LIMIT: u64 = 20_000;

/// For every vertex, the smallest vertex known to share its orbit under
/// facet-preserving permutations. Orbits may be reported finer than the true
/// ones when a search hits its step limit; that only weakens pruning.
pub fn automorphism_orbits(c: &SimplicialComplex) -> Vec<usize> {
    let n = c.n();
    let mut parent: Vec<usize> = (0..=n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    fn union(p: &mut [usize], a: usize, b: usize) {
        let (ra, rb) = (find(p, a), find(p, b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            p[hi] = lo;
        }
    }

    let nb = c.cofacet_neighbours();
    let degree: Vec<usize> = (0..=n).map(|v| c.facets().iter().filter(|f| f.contains(v)).count()).collect();
    let invariant = |v: usize| (degree[v], nb[v].len());
    for u in 1..=n {
        for v in u + 1..=n {
            if find(&mut parent, u) == find(&mut parent, v) || invariant(u) != invariant(v) {
                continue;
            }
            if let Some(sigma) = automorphism_mapping(c, u, v, &invariant) {
                for w in 1..=n {
                    union(&mut parent, w, sigma[w]);
                }
            }
        }
    }
    (1..=n).map(|v| find(&mut parent, v)).collect()
}

/// A facet-preserving permutation sending `u` to `v`, as `sigma[w]` for
/// `w` in `1..=n` (index 0 unused).
fn automorphism_mapping<I>(c: &SimplicialComplex, u: usize, v: usize, invariant: &I) -> Option<Vec<usize>>
where
    I: Fn(usize) -> (usize, usize),
{
    let n = c.n();
    let order: Vec<usize> = std::iter::once(u).chain((1..=n).filter(|&w| w != u)).collect();
    let mut sigma = vec![0; n + 1];
    let mut used = VertexSet::EMPTY;
    let mut steps = 0u64;

    fn consistent(c: &SimplicialComplex, sigma: &[usize], done: VertexSet, w: usize) -> bool {
        c.facets()
            .iter()
            .filter(|f| f.contains(w) && f.is_subset(done))
            .all(|f| c.is_facet(f.iter().fold(VertexSet::EMPTY, |s, x| s.with(sigma[x]))))
    }

    #[allow(clippy::too_many_arguments)]
    fn go<I: Fn(usize) -> (usize, usize)>(
        c: &SimplicialComplex,
        order: &[usize],
        depth: usize,
        sigma: &mut Vec<usize>,
        used: &mut VertexSet,
        done: VertexSet,
        steps: &mut u64,
        invariant: &I,
        forced: Option<usize>,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let w = order[depth];
        let candidates: Vec<usize> = match forced {
            Some(t) => vec![t],
            None => VertexSet::full(c.n()).difference(*used).iter().collect(),
        };
        for t in candidates {
            *steps += 1;
            if *steps > AUTOMORPHISM_STEP_LIMIT {
                return false;
            }
            if used.contains(t) || invariant(t) != invariant(w) {
                continue;
            }
            sigma[w] = t;
            *used = used.with(t);
            let done2 = done.with(w);
            if consistent(c, sigma, done2, w) && go(c, order, depth + 1, sigma, used, done2, steps, invariant, None) {
                return true;
            }
            *used = used.without(t);
            sigma[w] = 0;
        }
        false
    }

    go(c, &order, 0, &mut sigma, &mut used, VertexSet::EMPTY, &mut steps, invariant, Some(v)).then_some(sigma)
}
