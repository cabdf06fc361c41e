//! Pure simplicial complexes on `[n]`, stored by facets, together with the
//! labelling-dependent interval-type classes and the determinantal facet
//! ideal.

mod interval;
mod predicates;
mod search;

use std::fmt;

use thiserror::Error;

use crate::groebner::Basis;
use crate::polyring::{Field, MatrixContext};
use crate::symmatrix::{minor, MinorSpec};
use crate::vset::{VertexSet, MAX_VERTICES};

pub use interval::{find_interval_rep, is_strong_interval_with_rep, IntervalRep};
pub use predicates::{
    is_chordal_lab, is_closed_lab, is_global_interval_lab, is_poor_closed_lab, is_proper_interval_lab,
    is_unit_interval_lab, span_meets_all, span_meets_some, LabelledClass,
};
pub use search::{automorphism_orbits, exists_labelling, exists_labelling_by, SearchBudget, SearchOutcome};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("facet {facet} has {got} vertices, expected {expected}")]
    Impure { facet: String, got: usize, expected: usize },
    #[error("vertex {0} outside 1..={1}")]
    VertexOutOfRange(usize, usize),
    #[error("at most {MAX_VERTICES} vertices are supported, got {0}")]
    TooManyVertices(usize),
    #[error("labelling covers {0} vertices, complex has {1}")]
    SizeMismatch(usize, usize),
    #[error("not a permutation of 1..={0}")]
    NotBijective(usize),
    #[error("skeleton dimension {0} exceeds complex dimension {1}")]
    BadSkeleton(usize, usize),
    #[error("interval representation: {0}")]
    BadRepresentation(String),
}

/// A pure `d`-dimensional complex on the vertex set `[n]`.
///
/// Facets are kept sorted lexicographically; a second copy sorted by bit
/// pattern serves membership queries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    n: usize,
    d: usize,
    facets: Vec<VertexSet>,
    index: Vec<u64>,
}

impl SimplicialComplex {
    pub fn new(n: usize, d: usize, facets: Vec<VertexSet>) -> Result<Self, ComplexError> {
        if n > MAX_VERTICES {
            return Err(ComplexError::TooManyVertices(n));
        }
        let all = VertexSet::full(n);
        for f in &facets {
            if f.len() != d + 1 {
                return Err(ComplexError::Impure { facet: f.to_string(), got: f.len(), expected: d + 1 });
            }
            if !f.is_subset(all) {
                let v = f.difference(all).min().unwrap();
                return Err(ComplexError::VertexOutOfRange(v, n));
            }
        }
        Ok(Self::from_facets_unchecked(n, d, facets))
    }

    /// Builds from vertex lists, as read from a file.
    pub fn from_lists(n: usize, d: usize, facets: &[Vec<usize>]) -> Result<Self, ComplexError> {
        if n > MAX_VERTICES {
            return Err(ComplexError::TooManyVertices(n));
        }
        let mut sets = Vec::with_capacity(facets.len());
        for f in facets {
            if let Some(&v) = f.iter().find(|&&v| v == 0 || v > n) {
                return Err(ComplexError::VertexOutOfRange(v, n));
            }
            let s = VertexSet::from_vertices(f.iter().copied());
            if s.len() != f.len() || s.len() != d + 1 {
                return Err(ComplexError::Impure { facet: format!("{f:?}"), got: s.len(), expected: d + 1 });
            }
            sets.push(s);
        }
        Self::new(n, d, sets)
    }

    pub(crate) fn from_facets_unchecked(n: usize, d: usize, mut facets: Vec<VertexSet>) -> Self {
        facets.sort();
        facets.dedup();
        let mut index: Vec<u64> = facets.iter().map(|f| f.bits()).collect();
        index.sort_unstable();
        SimplicialComplex { n, d, facets, index }
    }

    /// The complex whose facets are all `(d+1)`-subsets of `[n]`.
    pub fn complete(n: usize, d: usize) -> Result<Self, ComplexError> {
        if n > MAX_VERTICES {
            return Err(ComplexError::TooManyVertices(n));
        }
        Ok(Self::from_facets_unchecked(n, d, VertexSet::full(n).subsets_of_size(d + 1).collect()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_facet(&self, s: VertexSet) -> bool {
        self.index.binary_search(&s.bits()).is_ok()
    }

    /// For every vertex, the vertices sharing some facet with it (itself
    /// included when it lies in a facet).
    pub fn cofacet_neighbours(&self) -> Vec<VertexSet> {
        let mut out = vec![VertexSet::EMPTY; self.n + 1];
        for f in &self.facets {
            for v in f.iter() {
                out[v] = out[v].union(*f);
            }
        }
        out
    }

    /// Connected when any two vertices of `[n]` are joined by a chain of
    /// facets; vertices outside every facet disconnect the complex.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let nb = self.cofacet_neighbours();
        let mut seen = VertexSet::singleton(1);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier.iter() {
                next = next.union(nb[v]);
            }
            frontier = next.difference(seen);
            seen = seen.union(next);
        }
        seen == VertexSet::full(self.n)
    }

    /// Vertices that lie in at least one facet.
    pub fn support(&self) -> VertexSet {
        self.facets.iter().fold(VertexSet::EMPTY, |a, f| a.union(*f))
    }

    /// The complex with every vertex `v` renamed to `labelling.apply(v)`.
    pub fn relabel(&self, labelling: &Labelling) -> Result<Self, ComplexError> {
        if labelling.len() != self.n {
            return Err(ComplexError::SizeMismatch(labelling.len(), self.n));
        }
        Ok(self.relabel_unchecked(labelling.images()))
    }

    pub(crate) fn relabel_unchecked(&self, image: &[usize]) -> Self {
        let facets = self.facets.iter().map(|f| f.map(image)).collect();
        Self::from_facets_unchecked(self.n, self.d, facets)
    }

    /// The pure `k`-complex of all `(k+1)`-subsets of facets; `k = d`
    /// returns the complex itself.
    pub fn skeleton(&self, k: usize) -> Result<Self, ComplexError> {
        if k > self.d {
            return Err(ComplexError::BadSkeleton(k, self.d));
        }
        let faces = self.facets.iter().flat_map(|f| f.subsets_of_size(k + 1)).collect();
        Ok(Self::from_facets_unchecked(self.n, k, faces))
    }

    /// The maximal minors of the generic `(d+1) x n` matrix indexed by the
    /// facets, in facet order.
    pub fn determinantal_facet_ideal(&self, field: Field) -> Result<Basis, crate::Error> {
        let ctx = MatrixContext::with_field(self.d as u32 + 1, self.n.max(1) as u32, field)?;
        let mut polys = Vec::with_capacity(self.facets.len());
        for f in &self.facets {
            let cols = f.iter().map(|v| v as u32).collect();
            polys.push(minor(&MinorSpec::maximal(cols)?, &ctx)?);
        }
        Ok(Basis::new(ctx, polys)?)
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialComplex(n={}, d={}, facets={:?})", self.n, self.d, self.facets)
    }
}

/// A bijection `[n] -> [n]`; vertex `v` receives label `images[v - 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Labelling {
    images: Vec<usize>,
}

impl Labelling {
    pub fn new(images: Vec<usize>) -> Result<Self, ComplexError> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(ComplexError::NotBijective(n));
            }
            seen[v] = true;
        }
        Ok(Labelling { images })
    }

    pub fn identity(n: usize) -> Self {
        Labelling { images: (1..=n).collect() }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, v: usize) -> usize {
        self.images[v - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (k, &v) in self.images.iter().enumerate() {
            inv[v - 1] = k + 1;
        }
        Labelling { images: inv }
    }

    /// `self` after `first`: `v -> self(first(v))`.
    pub fn compose(&self, first: &Labelling) -> Self {
        Labelling { images: first.images.iter().map(|&v| self.apply(v)).collect() }
    }
}

impl fmt::Display for Labelling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().enumerate().map(|(k, v)| format!("{}->{}", k + 1, v)).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// The complex from the literature that is poor closed but neither closed nor
/// unit interval under its given labels.
pub fn bsv_fixture() -> SimplicialComplex {
    let facets: Vec<Vec<usize>> = vec![
        vec![1, 2, 3],
        vec![1, 2, 4],
        vec![1, 3, 4],
        vec![2, 3, 4],
        vec![2, 3, 5],
        vec![2, 4, 5],
        vec![3, 4, 5],
        vec![5, 6, 8],
        vec![7, 8, 9],
        vec![8, 10, 11],
    ];
    SimplicialComplex::from_lists(11, 2, &facets).expect("fixture is pure")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(n: usize, d: usize, facets: &[&[usize]]) -> SimplicialComplex {
        let lists: Vec<Vec<usize>> = facets.iter().map(|f| f.to_vec()).collect();
        SimplicialComplex::from_lists(n, d, &lists).unwrap()
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(SimplicialComplex::from_lists(3, 1, &[vec![1, 2, 3]]), Err(ComplexError::Impure { .. })));
        assert_eq!(SimplicialComplex::from_lists(3, 1, &[vec![1, 4]]), Err(ComplexError::VertexOutOfRange(4, 3)));
        assert!(matches!(SimplicialComplex::from_lists(3, 1, &[vec![2, 2]]), Err(ComplexError::Impure { .. })));
        assert_eq!(SimplicialComplex::new(65, 1, vec![]), Err(ComplexError::TooManyVertices(65)));
    }

    #[test]
    fn facets_are_deduplicated_and_sorted() {
        let c = cx(4, 1, &[&[3, 4], &[1, 2], &[2, 1]]);
        assert_eq!(c.num_facets(), 2);
        assert_eq!(c.facets()[0].to_vec(), vec![1, 2]);
        assert!(c.is_facet(VertexSet::from_vertices([4, 3])));
        assert!(!c.is_facet(VertexSet::from_vertices([1, 3])));
    }

    #[test]
    fn relabel_examples() {
        let c = cx(3, 1, &[&[1, 3], &[2, 3]]);
        assert_eq!(c.relabel(&Labelling::identity(3)).unwrap(), c);
        let pi = Labelling::new(vec![1, 3, 2]).unwrap();
        let r = c.relabel(&pi).unwrap();
        assert_eq!(r, cx(3, 1, &[&[1, 2], &[2, 3]]));
        assert_eq!(r.relabel(&pi.inverse()).unwrap(), c);
        assert_eq!(c.relabel(&Labelling::identity(4)), Err(ComplexError::SizeMismatch(4, 3)));
    }

    #[test]
    fn labelling_validation() {
        assert!(Labelling::new(vec![1, 1, 2]).is_err());
        assert!(Labelling::new(vec![0, 1]).is_err());
        let p = Labelling::new(vec![2, 3, 1]).unwrap();
        assert_eq!(p.compose(&p.inverse()), Labelling::identity(3));
    }

    #[test]
    fn skeleton_examples() {
        let c = cx(3, 2, &[&[1, 2, 3]]);
        assert_eq!(c.skeleton(2).unwrap(), c);
        assert_eq!(c.skeleton(1).unwrap(), cx(3, 1, &[&[1, 2], &[1, 3], &[2, 3]]));
        assert_eq!(c.skeleton(3), Err(ComplexError::BadSkeleton(3, 2)));
        assert_eq!(bsv_fixture().skeleton(1).unwrap().num_facets(), 18);
    }

    #[test]
    fn connectivity() {
        assert!(cx(3, 1, &[&[1, 2], &[2, 3]]).is_connected());
        assert!(!cx(3, 1, &[&[1, 3]]).is_connected());
        assert!(bsv_fixture().is_connected());
    }

    #[test]
    fn facet_ideal_of_complete_complex() {
        let c = SimplicialComplex::complete(4, 2).unwrap();
        let b = c.determinantal_facet_ideal(Field::Rationals).unwrap();
        assert_eq!(b.len(), 4);
        assert_eq!(b.ctx().rows(), 3);
        assert!(b.polys().iter().all(|p| p.len() == 6));
    }

    #[test]
    fn facet_ideal_of_graph_edges() {
        let c = cx(3, 1, &[&[1, 3], &[2, 3]]);
        let b = c.determinantal_facet_ideal(Field::Rationals).unwrap();
        let text: Vec<String> = b.polys().iter().map(|p| p.to_string()).collect();
        assert_eq!(text, vec!["x[1,1]*x[2,3] - x[1,3]*x[2,1]", "x[1,2]*x[2,3] - x[1,3]*x[2,2]"]);
        let empty = SimplicialComplex::new(3, 1, vec![]).unwrap();
        assert!(empty.determinantal_facet_ideal(Field::Rationals).unwrap().is_empty());
    }
}
