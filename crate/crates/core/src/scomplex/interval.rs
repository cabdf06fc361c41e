//! Interval representations and the strong interval condition.

use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Zero};

use super::search::{SearchBudget, SearchOutcome};
use super::{ComplexError, Labelling, SimplicialComplex};
use crate::vset::VertexSet;

/// A closed interval `[a, b]` for every vertex; entry `v - 1` belongs to `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntervalRep {
    intervals: Vec<(Rational64, Rational64)>,
}

impl IntervalRep {
    pub fn new(intervals: Vec<(Rational64, Rational64)>) -> Result<Self, ComplexError> {
        if let Some(v) = intervals.iter().position(|(a, b)| a > b) {
            return Err(ComplexError::BadRepresentation(format!("vertex {} has left end above right end", v + 1)));
        }
        Ok(IntervalRep { intervals })
    }

    pub fn from_integers(intervals: &[(i64, i64)]) -> Result<Self, ComplexError> {
        Self::new(intervals.iter().map(|&(a, b)| (Rational64::from(a), Rational64::from(b))).collect())
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn interval(&self, v: usize) -> (Rational64, Rational64) {
        self.intervals[v - 1]
    }

    pub fn intervals(&self) -> &[(Rational64, Rational64)] {
        &self.intervals
    }

    /// Shifts every interval by `by` and then scales by `factor > 0`.
    pub fn affine(&self, by: Rational64, factor: Rational64) -> Self {
        assert!(factor > Rational64::zero());
        let t = |x: Rational64| (x + by) * factor;
        IntervalRep { intervals: self.intervals.iter().map(|&(a, b)| (t(a), t(b))).collect() }
    }

    /// The union of the intervals of `u` is a single interval.
    pub fn union_is_interval(&self, u: VertexSet) -> bool {
        let mut spans: Vec<(Rational64, Rational64)> = u.iter().map(|v| self.interval(v)).collect();
        spans.sort();
        let mut reach = match spans.first() {
            Some(&(_, b)) => b,
            None => return true,
        };
        for &(a, b) in &spans[1..] {
            if a > reach {
                return false;
            }
            reach = reach.max(b);
        }
        true
    }

    /// Ranks vertices by left endpoint, then right endpoint, then name.
    pub fn induced_labelling(&self) -> Labelling {
        let mut order: Vec<usize> = (1..=self.len()).collect();
        order.sort_by_key(|&u| (self.interval(u), u));
        let mut images = vec![0; self.len()];
        for (rank, v) in order.into_iter().enumerate() {
            images[v - 1] = rank + 1;
        }
        Labelling { images }
    }

    /// The same intervals, moved to the vertices' new names.
    pub fn relabel(&self, l: &Labelling) -> Self {
        let mut intervals = self.intervals.clone();
        for (k, iv) in self.intervals.iter().enumerate() {
            intervals[l.apply(k + 1) - 1] = *iv;
        }
        IntervalRep { intervals }
    }
}

impl fmt::Display for IntervalRep {
    /// One `v a b` line per vertex.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (a, b)) in self.intervals.iter().enumerate() {
            writeln!(f, "{} {} {}", k + 1, a, b)?;
        }
        Ok(())
    }
}

/// Facets are exactly the `(d+1)`-sets whose intervals union to an interval.
pub fn is_strong_interval_with_rep(c: &SimplicialComplex, rep: &IntervalRep) -> Result<bool, ComplexError> {
    if rep.len() != c.n() {
        return Err(ComplexError::BadRepresentation(format!("{} intervals for {} vertices", rep.len(), c.n())));
    }
    Ok(VertexSet::full(c.n()).subsets_of_size(c.dim() + 1).all(|u| c.is_facet(u) == rep.union_is_interval(u)))
}

/// Backtracking search for an interval representation.
///
/// Only the relative order of endpoints matters, so each new interval is
/// chosen among the distinct order types it can take against the endpoints
/// already placed: each end sits on an existing endpoint or inside one of the
/// gaps between them. Exhaustion is therefore a proof of non-existence. The
/// result is rescaled to integer endpoints `0..2n`.
///
/// Vertices are placed most-constrained first and every completed
/// `(d+1)`-set is checked as soon as its last vertex is placed. Swaps of twin
/// vertices are removed: of two twins, the one placed later takes an
/// interval no smaller than the earlier one.
pub fn find_interval_rep(c: &SimplicialComplex, budget: SearchBudget) -> SearchOutcome<IntervalRep> {
    let n = c.n();
    let order = placement_order(c);
    let twin_of = earlier_twins(c, &order);
    let mut st = RepSearch {
        c,
        order: &order,
        twin_of: &twin_of,
        rep: IntervalRep { intervals: vec![(Rational64::zero(), Rational64::one()); n] },
        nodes_left: budget.max_nodes,
        exceeded: false,
    };
    if st.place(0) {
        let rep = st.rep.ranked();
        debug_assert_eq!(is_strong_interval_with_rep(c, &rep), Ok(true));
        SearchOutcome::Found(rep)
    } else if st.exceeded {
        SearchOutcome::BudgetExceeded
    } else {
        SearchOutcome::ExhaustedNone
    }
}

impl IntervalRep {
    /// Replaces every endpoint by its rank among the distinct endpoints.
    fn ranked(&self) -> IntervalRep {
        let mut values: Vec<Rational64> = self.intervals.iter().flat_map(|&(a, b)| [a, b]).collect();
        values.sort();
        values.dedup();
        let rank = |x: Rational64| Rational64::from(values.binary_search(&x).expect("endpoint listed") as i64);
        IntervalRep { intervals: self.intervals.iter().map(|&(a, b)| (rank(a), rank(b))).collect() }
    }
}

/// One interval per order type relative to the sorted distinct `points`.
fn candidate_intervals(points: &[Rational64]) -> Vec<(Rational64, Rational64)> {
    let one = Rational64::one();
    if points.is_empty() {
        return vec![(Rational64::zero(), Rational64::zero()), (Rational64::zero(), one)];
    }
    // Slots alternate gap, point, gap, ..., gap; each gap is an open range.
    let mut slots: Vec<Slot> = Vec::with_capacity(2 * points.len() + 1);
    slots.push(Slot::Gap(points[0] - one - one, points[0]));
    for (k, &p) in points.iter().enumerate() {
        slots.push(Slot::Point(p));
        let next = points.get(k + 1).copied().unwrap_or(p + one + one);
        slots.push(Slot::Gap(p, next));
    }
    let mut out = Vec::new();
    for (i, si) in slots.iter().enumerate() {
        for sj in &slots[i..] {
            match (si, sj) {
                (Slot::Gap(lo, hi), Slot::Gap(lo2, _)) if lo == lo2 => {
                    let third = (*hi - *lo) / Rational64::from(3);
                    out.push((*lo + third, *lo + third));
                    out.push((*lo + third, *lo + third + third));
                }
                _ => out.push((si.value(), sj.value())),
            }
        }
    }
    out
}

enum Slot {
    Point(Rational64),
    Gap(Rational64, Rational64),
}

impl Slot {
    fn value(&self) -> Rational64 {
        match self {
            Slot::Point(p) => *p,
            Slot::Gap(lo, hi) => (*lo + *hi) / Rational64::from(2),
        }
    }
}

/// Greedy order: next is the vertex sharing facets with the most placed
/// vertices, then the one in most facets, then the smallest.
fn placement_order(c: &SimplicialComplex) -> Vec<usize> {
    let nb = c.cofacet_neighbours();
    let degree: Vec<usize> = (0..=c.n()).map(|v| c.facets().iter().filter(|f| f.contains(v)).count()).collect();
    let mut placed = VertexSet::EMPTY;
    let mut order = Vec::with_capacity(c.n());
    while order.len() < c.n() {
        let v = VertexSet::full(c.n())
            .difference(placed)
            .iter()
            .max_by_key(|&v| (nb[v].intersection(placed).len(), degree[v], std::cmp::Reverse(v)))
            .expect("unplaced vertex remains");
        order.push(v);
        placed = placed.with(v);
    }
    order
}

/// For each position in `order`, an earlier position holding a twin: a
/// vertex whose swap with this one maps facets to facets.
fn earlier_twins(c: &SimplicialComplex, order: &[usize]) -> Vec<Option<usize>> {
    let n = c.n();
    let swaps = |u: usize, v: usize| {
        let mut image: Vec<usize> = (1..=n).collect();
        image.swap(u - 1, v - 1);
        c.relabel_unchecked(&image) == *c
    };
    (0..order.len()).map(|k| (0..k).rev().find(|&j| swaps(order[j], order[k]))).collect()
}

struct RepSearch<'a> {
    c: &'a SimplicialComplex,
    order: &'a [usize],
    twin_of: &'a [Option<usize>],
    rep: IntervalRep,
    nodes_left: u64,
    exceeded: bool,
}

impl RepSearch<'_> {
    fn place(&mut self, pos: usize) -> bool {
        if pos == self.order.len() {
            return true;
        }
        let v = self.order[pos];
        let earlier: VertexSet = self.order[..pos].iter().copied().collect();
        let mut points: Vec<Rational64> = earlier
            .iter()
            .flat_map(|u| {
                let (a, b) = self.rep.interval(u);
                [a, b]
            })
            .collect();
        points.sort();
        points.dedup();
        let floor = self.twin_of[pos].map(|j| self.rep.interval(self.order[j]));
        let placed = earlier.with(v);
        for iv in candidate_intervals(&points) {
            if floor.is_some_and(|f| iv < f) {
                continue;
            }
            if self.nodes_left == 0 {
                self.exceeded = true;
                return false;
            }
            self.nodes_left -= 1;
            self.rep.intervals[v - 1] = iv;
            let ok = self.consistent(v, earlier) && self.order[pos + 1..].iter().all(|&u| self.has_room(u, placed));
            if ok && self.place(pos + 1) {
                return true;
            }
            if self.exceeded {
                return false;
            }
        }
        false
    }

    /// Every `(d+1)`-set made of `v` and vertices of `earlier` is a facet
    /// exactly when its union is an interval.
    fn consistent(&self, v: usize, earlier: VertexSet) -> bool {
        let k = self.c.dim() + 1;
        k == 0
            || earlier
                .subsets_of_size(k - 1)
                .map(|s| s.with(v))
                .all(|u| self.c.is_facet(u) == self.rep.union_is_interval(u))
    }

    /// Lookahead: some interval for the unplaced `u` is consistent with the
    /// vertices in `placed`.
    fn has_room(&mut self, u: usize, placed: VertexSet) -> bool {
        let mut points: Vec<Rational64> = placed
            .iter()
            .flat_map(|w| {
                let (a, b) = self.rep.interval(w);
                [a, b]
            })
            .collect();
        points.sort();
        points.dedup();
        let saved = self.rep.intervals[u - 1];
        let found = candidate_intervals(&points).into_iter().any(|iv| {
            self.rep.intervals[u - 1] = iv;
            self.consistent(u, placed)
        });
        self.rep.intervals[u - 1] = saved;
        found
    }
}
