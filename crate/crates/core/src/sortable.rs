//! The sorting operator on equal-size vertex sets and sortable families.

use thiserror::Error;

use crate::vset::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SortError {
    #[error("faces of sizes {0} and {1} cannot be sorted together")]
    CardinalityMismatch(usize, usize),
}

/// Merges `F ⊎ G` into `a_1 <= ... <= a_2k` and splits it into the odd and
/// even positions. A shared vertex lands once on each side.
pub fn sort_pair(f: VertexSet, g: VertexSet) -> Result<(VertexSet, VertexSet), SortError> {
    if f.len() != g.len() {
        return Err(SortError::CardinalityMismatch(f.len(), g.len()));
    }
    Ok(sort_pair_any(f, g))
}

/// The same odd/even split for faces of any sizes; the outputs have
/// `ceil((|F|+|G|)/2)` and `floor((|F|+|G|)/2)` elements.
pub fn sort_pair_any(f: VertexSet, g: VertexSet) -> (VertexSet, VertexSet) {
    let mut merged: Vec<usize> = f.iter().chain(g.iter()).collect();
    merged.sort_unstable();
    let odd = merged.iter().step_by(2).copied().collect();
    let even = merged.iter().skip(1).step_by(2).copied().collect();
    (odd, even)
}

/// A pair of faces whose sorted images leave the family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnsortedPair {
    pub f: VertexSet,
    pub g: VertexSet,
    pub sorted: (VertexSet, VertexSet),
}

/// The family is closed under `sort_pair`; on failure the first offending
/// pair in lexicographic order is returned.
pub fn is_sortable_family(faces: &[VertexSet]) -> Result<Result<(), UnsortedPair>, SortError> {
    if let Some(first) = faces.first() {
        if let Some(bad) = faces.iter().find(|f| f.len() != first.len()) {
            return Err(SortError::CardinalityMismatch(first.len(), bad.len()));
        }
    }
    let mut members: Vec<u64> = faces.iter().map(|f| f.bits()).collect();
    members.sort_unstable();
    let contains = |s: VertexSet| members.binary_search(&s.bits()).is_ok();
    let mut ordered = faces.to_vec();
    ordered.sort();
    for (a, &f) in ordered.iter().enumerate() {
        for &g in &ordered[a + 1..] {
            let sorted = sort_pair(f, g)?;
            if !contains(sorted.0) || !contains(sorted.1) {
                return Ok(Err(UnsortedPair { f, g, sorted }));
            }
        }
    }
    Ok(Ok(()))
}

/// Every cardinality layer of the complex is a sortable family.
pub fn is_sortable_by_layer(layers: &[Vec<VertexSet>]) -> Result<bool, SortError> {
    for layer in layers {
        if is_sortable_family(layer)?.is_err() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The set of faces is closed under [`sort_pair_any`] for every pair of
/// faces, whatever their sizes; on failure the first offending pair is
/// returned. Layers are given as produced by [`crate::graphs::ind_d`].
pub fn sortable_complex_witness(layers: &[Vec<VertexSet>]) -> Option<UnsortedPair> {
    let faces: Vec<VertexSet> = layers.iter().flatten().copied().collect();
    let mut members: Vec<u64> = faces.iter().map(|f| f.bits()).collect();
    members.sort_unstable();
    let contains = |s: VertexSet| members.binary_search(&s.bits()).is_ok();
    for (a, &f) in faces.iter().enumerate() {
        for &g in &faces[a + 1..] {
            let sorted = sort_pair_any(f, g);
            if !contains(sorted.0) || !contains(sorted.1) {
                return Some(UnsortedPair { f, g, sorted });
            }
        }
    }
    None
}

pub fn is_sortable_complex(layers: &[Vec<VertexSet>]) -> bool {
    sortable_complex_witness(layers).is_none()
}
