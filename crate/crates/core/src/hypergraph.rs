//! Hypergraphs as finite sets of non-empty vertex sets.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense vertex identifier; labels are interned by the parser.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// A non-empty finite set of vertices, stored sorted.
///
/// Ordered by dimension first and lexicographically within a dimension,
/// which is the order used for every chain basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hyperedge(Vec<VertexId>);

impl Hyperedge {
    /// Sorts the vertices; rejects empty or repeated vertex lists.
    pub fn new(vertices: impl IntoIterator<Item = VertexId>) -> Result<Self> {
        let mut v: Vec<VertexId> = vertices.into_iter().collect();
        if v.is_empty() {
            return Err(Error::InvalidInput("hyperedges must be non-empty".into()));
        }
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput(format!(
                "hyperedge repeats a vertex: {:?}",
                v.iter().map(|x| x.0).collect::<Vec<_>>()
            )));
        }
        Ok(Hyperedge(v))
    }

    /// Shorthand for tests and fixtures.
    pub fn from_ids(ids: &[u32]) -> Self {
        Hyperedge::new(ids.iter().map(|&i| VertexId(i))).expect("valid hyperedge literal")
    }

    /// Vertices must already be strictly increasing and non-empty.
    pub(crate) fn from_sorted(v: Vec<VertexId>) -> Self {
        debug_assert!(!v.is_empty() && v.windows(2).all(|w| w[0] < w[1]));
        Hyperedge(v)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Hyperedge) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().all(|v| other.contains_vertex(*v))
    }

    pub fn intersects(&self, other: &Hyperedge) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => return true,
            }
        }
        false
    }

    /// Common vertices, or `None` when disjoint.
    pub fn intersection(&self, other: &Hyperedge) -> Option<Hyperedge> {
        let common: Vec<VertexId> = self.0.iter().copied().filter(|v| other.contains_vertex(*v)).collect();
        (!common.is_empty()).then_some(Hyperedge(common))
    }

    /// Codimension-one faces `(i, face)` where `face` drops the `i`-th vertex.
    pub fn faces(&self) -> impl Iterator<Item = (usize, Hyperedge)> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |i| {
            let mut v = self.0.clone();
            v.remove(i);
            (i, Hyperedge(v))
        })
    }

    /// All non-empty subsets, including the hyperedge itself.
    pub fn subsets(&self) -> Vec<Hyperedge> {
        let n = self.0.len();
        assert!(n < 32, "hyperedge too large to enumerate subsets");
        (1u32..(1 << n))
            .map(|mask| {
                Hyperedge(
                    (0..n)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| self.0[i])
                        .collect(),
                )
            })
            .collect()
    }
}

impl Ord for Hyperedge {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Hyperedge {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Hyperedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v.0)?;
        }
        write!(f, "}}")
    }
}

/// A finite set of hyperedges. The empty hypergraph is valid.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Hypergraph {
    edges: BTreeSet<Hyperedge>,
}

impl Hypergraph {
    pub fn new() -> Self {
        Hypergraph::default()
    }

    pub fn from_edges(edges: impl IntoIterator<Item = Hyperedge>) -> Self {
        Hypergraph {
            edges: edges.into_iter().collect(),
        }
    }

    /// Shorthand for tests and fixtures.
    pub fn from_ids(edges: &[&[u32]]) -> Self {
        Hypergraph::from_edges(edges.iter().map(|e| Hyperedge::from_ids(e)))
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Hyperedges in (dimension, lexicographic) order.
    pub fn iter(&self) -> impl Iterator<Item = &Hyperedge> + '_ {
        self.edges.iter()
    }

    pub fn edges(&self) -> &BTreeSet<Hyperedge> {
        &self.edges
    }

    pub fn contains(&self, e: &Hyperedge) -> bool {
        self.edges.contains(e)
    }

    pub fn insert(&mut self, e: Hyperedge) -> bool {
        self.edges.insert(e)
    }

    pub fn vertices(&self) -> BTreeSet<VertexId> {
        self.edges.iter().flat_map(|e| e.0.iter().copied()).collect()
    }

    /// Largest hyperedge dimension, `None` when empty.
    pub fn max_dim(&self) -> Option<usize> {
        self.edges.iter().map(Hyperedge::dim).max()
    }

    pub fn edges_of_dim(&self, n: usize) -> impl Iterator<Item = &Hyperedge> + '_ {
        self.edges.iter().filter(move |e| e.dim() == n)
    }

    pub fn is_subset_of(&self, other: &Hypergraph) -> bool {
        self.edges.is_subset(&other.edges)
    }

    /// Closed under taking non-empty subsets.
    pub fn is_simplicial(&self) -> bool {
        self.edges
            .iter()
            .all(|e| e.faces().all(|(_, f)| self.edges.contains(&f)))
    }

    /// Smallest simplicial complex containing the hypergraph.
    pub fn delta_closure(&self) -> Hypergraph {
        let mut out = BTreeSet::new();
        let mut stack: Vec<Hyperedge> = self.edges.iter().cloned().collect();
        while let Some(e) = stack.pop() {
            if out.contains(&e) {
                continue;
            }
            for (_, f) in e.faces() {
                if !out.contains(&f) {
                    stack.push(f);
                }
            }
            out.insert(e);
        }
        Hypergraph { edges: out }
    }

    /// Largest simplicial complex contained in the hypergraph.
    pub fn lower_closure(&self) -> Hypergraph {
        // Ascending dimension: a hyperedge survives when all its faces did.
        let mut out = BTreeSet::new();
        for e in &self.edges {
            if e.faces().all(|(_, f)| out.contains(&f)) {
                out.insert(e.clone());
            }
        }
        Hypergraph { edges: out }
    }

    /// Hyperedges of dimension at most `k`.
    pub fn skeleton(&self, k: usize) -> Hypergraph {
        Hypergraph {
            edges: self.edges.iter().filter(|e| e.dim() <= k).cloned().collect(),
        }
    }

    pub fn union(&self, other: &Hypergraph) -> Hypergraph {
        Hypergraph {
            edges: self.edges.union(&other.edges).cloned().collect(),
        }
    }

    pub fn intersection(&self, other: &Hypergraph) -> Hypergraph {
        Hypergraph {
            edges: self.edges.intersection(&other.edges).cloned().collect(),
        }
    }

    pub fn difference(&self, other: &Hypergraph) -> Hypergraph {
        Hypergraph {
            edges: self.edges.difference(&other.edges).cloned().collect(),
        }
    }

    pub fn filter(&self, mut keep: impl FnMut(&Hyperedge) -> bool) -> Hypergraph {
        Hypergraph {
            edges: self.edges.iter().filter(|e| keep(e)).cloned().collect(),
        }
    }
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.edges.iter()).finish()
    }
}

impl FromIterator<Hyperedge> for Hypergraph {
    fn from_iter<I: IntoIterator<Item = Hyperedge>>(iter: I) -> Self {
        Hypergraph::from_edges(iter)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetOp {
    Union,
    Intersection,
    Difference,
}

pub fn set_algebra(a: &Hypergraph, b: &Hypergraph, op: SetOp) -> Hypergraph {
    match op {
        SetOp::Union => a.union(b),
        SetOp::Intersection => a.intersection(b),
        SetOp::Difference => a.difference(b),
    }
}

pub fn delta_closure(h: &Hypergraph) -> Hypergraph {
    h.delta_closure()
}

pub fn lower_closure(h: &Hypergraph) -> Hypergraph {
    h.lower_closure()
}

pub fn skeleton(h: &Hypergraph, k: usize) -> Hypergraph {
    h.skeleton(k)
}

/// A hypergraph `total` with a chosen sub-hypergraph `sub`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergraphPair {
    total: Hypergraph,
    sub: Hypergraph,
}

impl HypergraphPair {
    pub fn new(total: Hypergraph, sub: Hypergraph) -> Result<Self> {
        if let Some(e) = sub.iter().find(|e| !total.contains(e)) {
            return Err(Error::NotContained(format!(
                "hyperedge {e:?} of the sub-hypergraph is not in the hypergraph"
            )));
        }
        Ok(HypergraphPair { total, sub })
    }

    pub fn total(&self) -> &Hypergraph {
        &self.total
    }

    pub fn sub(&self) -> &Hypergraph {
        &self.sub
    }
}

/// A nested triple `inner <= middle <= total`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergraphTriple {
    pub total: Hypergraph,
    pub middle: Hypergraph,
    pub inner: Hypergraph,
}

impl HypergraphTriple {
    pub fn new(total: Hypergraph, middle: Hypergraph, inner: Hypergraph) -> Result<Self> {
        HypergraphPair::new(total.clone(), middle.clone())?;
        HypergraphPair::new(middle.clone(), inner.clone())?;
        Ok(HypergraphTriple {
            total,
            middle,
            inner,
        })
    }
}

/// A map on vertices, applied to hyperedges by taking images.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VertexMorphism {
    map: BTreeMap<VertexId, VertexId>,
}

impl VertexMorphism {
    pub fn new(map: BTreeMap<VertexId, VertexId>) -> Self {
        VertexMorphism { map }
    }

    pub fn from_pairs(pairs: &[(u32, u32)]) -> Self {
        VertexMorphism {
            map: pairs.iter().map(|&(a, b)| (VertexId(a), VertexId(b))).collect(),
        }
    }

    pub fn get(&self, v: VertexId) -> Option<VertexId> {
        self.map.get(&v).copied()
    }

    /// Image of a hyperedge as a set (collapsed vertices merge).
    pub fn image(&self, e: &Hyperedge) -> Result<Hyperedge> {
        let mut out = Vec::with_capacity(e.len());
        for v in e.vertices() {
            out.push(self.get(*v).ok_or_else(|| {
                Error::InvalidMorphism(format!("vertex {} has no image", v.0))
            })?);
        }
        out.sort_unstable();
        out.dedup();
        Ok(Hyperedge::from_sorted(out))
    }

    /// Image hypergraph `{f(sigma)}`.
    pub fn apply(&self, h: &Hypergraph) -> Result<Hypergraph> {
        h.iter().map(|e| self.image(e)).collect()
    }

    /// Checks that every hyperedge of `source` lands in `target`.
    pub fn check_morphism(&self, source: &Hypergraph, target: &Hypergraph) -> Result<()> {
        for e in source.iter() {
            let img = self.image(e)?;
            if !target.contains(&img) {
                return Err(Error::InvalidMorphism(format!(
                    "image {img:?} of {e:?} is not a hyperedge of the target"
                )));
            }
        }
        Ok(())
    }

    pub fn check_pair_morphism(&self, source: &HypergraphPair, target: &HypergraphPair) -> Result<()> {
        self.check_morphism(source.total(), target.total())?;
        self.check_morphism(source.sub(), target.sub())
    }
}

/// Applies a vertex map, failing if a vertex has no image or if `target` is
/// given and some image is not one of its hyperedges.
pub fn apply_morphism(
    f: &VertexMorphism,
    h: &Hypergraph,
    target: Option<&Hypergraph>,
) -> Result<Hypergraph> {
    if let Some(t) = target {
        f.check_morphism(h, t)?;
    }
    f.apply(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_is_dimension_then_lexicographic() {
        let h = Hypergraph::from_ids(&[&[0, 1, 2], &[3], &[0, 2], &[0], &[1, 2]]);
        let order: Vec<Vec<u32>> = h
            .iter()
            .map(|e| e.vertices().iter().map(|v| v.0).collect())
            .collect();
        assert_eq!(order, vec![vec![0], vec![3], vec![0, 2], vec![1, 2], vec![0, 1, 2]]);
    }

    #[test]
    fn closures_of_a_small_hypergraph() {
        let h = Hypergraph::from_ids(&[&[0], &[0, 1], &[0, 1, 2]]);
        let d = h.delta_closure();
        assert_eq!(d.len(), 7);
        assert!(d.is_simplicial());
        assert_eq!(h.lower_closure(), Hypergraph::from_ids(&[&[0]]));
        assert_eq!(Hypergraph::new().delta_closure(), Hypergraph::new());
        assert_eq!(h.skeleton(1).len(), 2);
    }

    #[test]
    fn hyperedge_validation() {
        assert!(Hyperedge::new(vec![]).is_err());
        assert!(Hyperedge::new(vec![VertexId(1), VertexId(1)]).is_err());
        let e = Hyperedge::from_ids(&[2, 0, 1]);
        assert_eq!(e.dim(), 2);
        assert_eq!(e.faces().count(), 3);
        assert_eq!(e.subsets().len(), 7);
        assert_eq!(Hyperedge::from_ids(&[4]).faces().count(), 0);
    }

    #[test]
    fn pair_requires_containment() {
        let h = Hypergraph::from_ids(&[&[0], &[1]]);
        assert!(HypergraphPair::new(h.clone(), Hypergraph::from_ids(&[&[0]])).is_ok());
        assert!(HypergraphPair::new(h, Hypergraph::from_ids(&[&[2]])).is_err());
    }

    #[test]
    fn morphisms_collapse_and_validate() {
        let f = VertexMorphism::from_pairs(&[(0, 5), (1, 5), (2, 6)]);
        let h = Hypergraph::from_ids(&[&[0, 1], &[1, 2]]);
        let img = f.apply(&h).unwrap();
        assert_eq!(img, Hypergraph::from_ids(&[&[5], &[5, 6]]));
        assert!(f.check_morphism(&h, &img).is_ok());
        assert!(f.check_morphism(&h, &Hypergraph::from_ids(&[&[5]])).is_err());
        let partial = VertexMorphism::from_pairs(&[(0, 1)]);
        assert!(partial.apply(&h).is_err());
    }
}
