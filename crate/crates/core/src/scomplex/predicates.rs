//! Labelled class predicates. Each reads the vertex labels of the complex as
//! the order `1 < 2 < ... < n`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::SimplicialComplex;
use crate::vset::VertexSet;

/// The labelling-dependent classes that admit a labelling search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LabelledClass {
    Closed,
    UnitInterval,
    PoorClosed,
    GlobalInterval,
    ProperInterval,
}

impl LabelledClass {
    pub const ALL: [LabelledClass; 5] = [
        LabelledClass::Closed,
        LabelledClass::UnitInterval,
        LabelledClass::PoorClosed,
        LabelledClass::GlobalInterval,
        LabelledClass::ProperInterval,
    ];

    pub fn holds(self, c: &SimplicialComplex) -> bool {
        match self {
            LabelledClass::Closed => is_closed_lab(c),
            LabelledClass::UnitInterval => is_unit_interval_lab(c),
            LabelledClass::PoorClosed => is_poor_closed_lab(c),
            LabelledClass::GlobalInterval => is_global_interval_lab(c),
            LabelledClass::ProperInterval => is_proper_interval_lab(c),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LabelledClass::Closed => "closed",
            LabelledClass::UnitInterval => "unit",
            LabelledClass::PoorClosed => "poor_closed",
            LabelledClass::GlobalInterval => "global",
            LabelledClass::ProperInterval => "proper",
        }
    }
}

impl fmt::Display for LabelledClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LabelledClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LabelledClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown class '{s}' (expected closed, unit, poor_closed, global or proper)"))
    }
}

/// True when the two sorted facets carry the same vertex at some position.
fn share_position(f: VertexSet, g: VertexSet) -> bool {
    f.iter().zip(g.iter()).any(|(a, b)| a == b)
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Every `(d+1)`-subset of `u` is a facet.
pub(super) fn full_skeleton_on(c: &SimplicialComplex, u: VertexSet) -> bool {
    let k = c.dim() + 1;
    let inside = c.facets().iter().filter(|f| f.is_subset(u)).count();
    inside == binomial(u.len(), k)
}

pub fn is_closed_lab(c: &SimplicialComplex) -> bool {
    let fs = c.facets();
    for (a, &f) in fs.iter().enumerate() {
        for &g in &fs[a + 1..] {
            if share_position(f, g) && !full_skeleton_on(c, f.union(g)) {
                return false;
            }
        }
    }
    true
}

pub fn is_unit_interval_lab(c: &SimplicialComplex) -> bool {
    let mut windows = HashSet::new();
    for &f in c.facets() {
        let w = VertexSet::range(f.min().unwrap(), f.max().unwrap());
        if windows.insert(w) && !full_skeleton_on(c, w) {
            return false;
        }
    }
    true
}

pub fn is_poor_closed_lab(c: &SimplicialComplex) -> bool {
    let fs = c.facets();
    for (a, &f) in fs.iter().enumerate() {
        for &g in &fs[a + 1..] {
            if !share_position(f, g) {
                continue;
            }
            let u = f.union(g);
            if !fs.iter().any(|&h| h != f && h != g && h.is_subset(u)) {
                return false;
            }
        }
    }
    true
}

/// Vertices strictly inside the span of `f` that are not in `f`.
fn gaps(f: VertexSet) -> VertexSet {
    VertexSet::range(f.min().unwrap(), f.max().unwrap()).difference(f)
}

/// A vertex `j` in a gap of a facet may replace its largest vertex.
pub fn is_global_interval_lab(c: &SimplicialComplex) -> bool {
    c.facets().iter().all(|&f| {
        let top = f.without(f.max().unwrap());
        gaps(f).iter().all(|j| c.is_facet(top.with(j)))
    })
}

/// A vertex `j` in a gap of a facet may replace any vertex it shares a facet
/// with.
pub fn is_proper_interval_lab(c: &SimplicialComplex) -> bool {
    let nb = c.cofacet_neighbours();
    c.facets()
        .iter()
        .all(|&f| gaps(f).iter().all(|j| f.intersection(nb[j]).iter().all(|i| c.is_facet(f.without(i).with(j)))))
}

/// For every facet and every gap vertex `j`, each vertex of the facet shares
/// some facet with `j`.
pub fn span_meets_all(c: &SimplicialComplex) -> bool {
    let nb = c.cofacet_neighbours();
    c.facets().iter().all(|&f| gaps(f).iter().all(|j| f.is_subset(nb[j])))
}

/// For every facet and every gap vertex `j`, some vertex of the facet shares a
/// facet with `j`.
pub fn span_meets_some(c: &SimplicialComplex) -> bool {
    let nb = c.cofacet_neighbours();
    c.facets().iter().all(|&f| gaps(f).iter().all(|j| !f.is_disjoint(nb[j])))
}

/// Facets sharing their largest vertex span a full skeleton together.
pub fn is_chordal_lab(c: &SimplicialComplex) -> bool {
    let fs = c.facets();
    for (a, &f) in fs.iter().enumerate() {
        for &g in &fs[a + 1..] {
            if f.max() == g.max() && !full_skeleton_on(c, f.union(g)) {
                return false;
            }
        }
    }
    true
}
