//! Combinatorial topology on the sub-hypergraphs of a hypergraph.
//!
//! A sub-hypergraph is open when its boundary is empty, which makes the open
//! sub-hypergraphs exactly the subsets of `H` that are closed upward under
//! inclusion of hyperedges.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{Hyperedge, Hypergraph, HypergraphPair, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TopologyKind {
    Complement,
    ClosedComplement,
    Boundary,
    Interior,
    Closure,
}

impl TopologyKind {
    pub const ALL: [TopologyKind; 5] = [
        TopologyKind::Complement,
        TopologyKind::ClosedComplement,
        TopologyKind::Boundary,
        TopologyKind::Interior,
        TopologyKind::Closure,
    ];
}

/// `H \ A`.
pub fn complement(pair: &HypergraphPair) -> Hypergraph {
    pair.total().difference(pair.sub())
}

/// `H - A`: hyperedges of `H` lying inside some hyperedge of `H \ A`.
pub fn closed_complement(pair: &HypergraphPair) -> Hypergraph {
    let outside = complement(pair);
    pair.total()
        .filter(|s| outside.iter().any(|t| s.is_subset_of(t)))
}

/// `A ∩ (H - A)`.
pub fn boundary(pair: &HypergraphPair) -> Hypergraph {
    let outside = complement(pair);
    pair.sub().filter(|s| outside.iter().any(|t| s.is_subset_of(t)))
}

/// `A \ bd(H, A)`.
pub fn interior(pair: &HypergraphPair) -> Hypergraph {
    pair.sub().difference(&boundary(pair))
}

/// `H \ int(H, H \ A)`.
pub fn closure(pair: &HypergraphPair) -> Hypergraph {
    let c = HypergraphPair::new(pair.total().clone(), complement(pair)).expect("complement is contained");
    pair.total().difference(&interior(&c))
}

pub fn topology_operator(pair: &HypergraphPair, kind: TopologyKind) -> Hypergraph {
    match kind {
        TopologyKind::Complement => complement(pair),
        TopologyKind::ClosedComplement => closed_complement(pair),
        TopologyKind::Boundary => boundary(pair),
        TopologyKind::Interior => interior(pair),
        TopologyKind::Closure => closure(pair),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Openness {
    pub is_open: bool,
    pub is_closed: bool,
}

pub fn openness(pair: &HypergraphPair) -> Openness {
    let c = HypergraphPair::new(pair.total().clone(), complement(pair)).expect("complement is contained");
    Openness {
        is_open: boundary(pair).is_empty(),
        is_closed: boundary(&c).is_empty(),
    }
}

/// Hyperedges of `h` meeting some hyperedge of `a`.
fn neighborhood_once(h: &Hypergraph, a: &Hypergraph) -> Hypergraph {
    let touched: std::collections::BTreeSet<VertexId> = a.vertices();
    h.filter(|s| s.vertices().iter().any(|v| touched.contains(v)))
}

/// `n^k(H, A)`, the `k`-fold iterated neighborhood (`k >= 1`).
pub fn neighborhood(pair: &HypergraphPair, k: usize) -> Result<Hypergraph> {
    check_iterations(k)?;
    let mut cur = pair.sub().clone();
    for _ in 0..k {
        cur = neighborhood_once(pair.total(), &cur);
    }
    Ok(cur)
}

fn core_once(h: &Hypergraph, a: &Hypergraph) -> Hypergraph {
    h.difference(&neighborhood_once(h, &h.difference(a)))
}

/// How the core is iterated beyond `k = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CoreIteration {
    /// `cor^k = cor(H, cor^{k-1})`, a decreasing chain.
    #[default]
    Nested,
    /// `cor^k = n(H, cor^{k-1})`, the neighborhood of the previous core.
    Literal,
}

/// `cor^k(H, A)`, iterated per `mode` (`k >= 1`).
pub fn core(pair: &HypergraphPair, k: usize, mode: CoreIteration) -> Result<Hypergraph> {
    check_iterations(k)?;
    let h = pair.total();
    let mut cur = core_once(h, pair.sub());
    for _ in 1..k {
        cur = match mode {
            CoreIteration::Nested => core_once(h, &cur),
            CoreIteration::Literal => neighborhood_once(h, &cur),
        };
    }
    Ok(cur)
}

fn check_iterations(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidInput("iteration count must be at least 1".into()));
    }
    Ok(())
}

/// Minimum length of a hyperedge chain joining two hyperedges, or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PathDistance {
    Finite(usize),
    Infinite,
}

impl fmt::Display for PathDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathDistance::Finite(k) => write!(f, "{k}"),
            PathDistance::Infinite => write!(f, "inf"),
        }
    }
}

/// `d(tau, tau2)`: the least `k` admitting hyperedges `s_0, ..., s_k` of `h`
/// with `tau ⊆ s_0`, `tau2 ⊆ s_k` and consecutive ones intersecting.
pub fn path_distance(h: &Hypergraph, tau: &Hyperedge, tau2: &Hyperedge) -> Result<PathDistance> {
    for t in [tau, tau2] {
        if !h.contains(t) {
            return Err(Error::InvalidInput(format!("{t:?} is not a hyperedge of the hypergraph")));
        }
    }
    let edges: Vec<&Hyperedge> = h.iter().collect();
    let mut incident: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
    for (i, e) in edges.iter().enumerate() {
        for v in e.vertices() {
            incident.entry(*v).or_default().push(i);
        }
    }
    let mut dist = vec![usize::MAX; edges.len()];
    let mut queue = VecDeque::new();
    for (i, e) in edges.iter().enumerate() {
        if tau.is_subset_of(e) {
            dist[i] = 0;
            queue.push_back(i);
        }
    }
    while let Some(i) = queue.pop_front() {
        if tau2.is_subset_of(edges[i]) {
            return Ok(PathDistance::Finite(dist[i]));
        }
        for v in edges[i].vertices() {
            for &j in &incident[v] {
                if dist[j] == usize::MAX {
                    dist[j] = dist[i] + 1;
                    queue.push_back(j);
                }
            }
        }
    }
    Ok(PathDistance::Infinite)
}

/// Hyperedges within path distance one of `sigma` (the "unit ball").
pub fn unit_ball(h: &Hypergraph, sigma: &Hyperedge) -> Result<Hypergraph> {
    let mut out = Hypergraph::new();
    for t in h.iter() {
        if path_distance(h, sigma, t)? <= PathDistance::Finite(1) {
            out.insert(t.clone());
        }
    }
    Ok(out)
}

pub const DEFAULT_OPEN_CAP: usize = 16;

/// Bitmask view of a hypergraph: bit `i` is the `i`-th hyperedge in order.
#[derive(Clone, Debug)]
pub struct OpenSetIndex {
    edges: Vec<Hyperedge>,
    /// `up[i]`: hyperedges containing hyperedge `i` (including itself).
    up: Vec<u64>,
}

impl OpenSetIndex {
    pub fn new(h: &Hypergraph) -> Result<Self> {
        if h.len() > 63 {
            return Err(Error::SizeLimit {
                what: "hypergraph for bitmask topology".into(),
                actual: h.len(),
                limit: 63,
            });
        }
        let edges: Vec<Hyperedge> = h.iter().cloned().collect();
        let up = edges
            .iter()
            .map(|s| {
                edges
                    .iter()
                    .enumerate()
                    .filter(|(_, t)| s.is_subset_of(t))
                    .fold(0u64, |m, (j, _)| m | (1 << j))
            })
            .collect();
        Ok(OpenSetIndex { edges, up })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn full_mask(&self) -> u64 {
        if self.edges.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.edges.len()) - 1
        }
    }

    pub fn is_open_mask(&self, mask: u64) -> bool {
        (0..self.edges.len()).all(|i| mask & (1 << i) == 0 || self.up[i] & !mask == 0)
    }

    pub fn to_hypergraph(&self, mask: u64) -> Hypergraph {
        (0..self.edges.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| self.edges[i].clone())
            .collect()
    }

    pub fn to_mask(&self, a: &Hypergraph) -> u64 {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| a.contains(e))
            .fold(0, |m, (i, _)| m | (1 << i))
    }

    /// Masks of all open sub-hypergraphs, in increasing numeric order.
    pub fn open_masks(&self) -> Vec<u64> {
        (0..=self.full_mask()).filter(|&m| self.is_open_mask(m)).collect()
    }
}

/// Every open sub-hypergraph of `h`, found by exhaustive enumeration.
pub fn enumerate_open(h: &Hypergraph, cap: usize) -> Result<Vec<Hypergraph>> {
    if h.len() > cap {
        return Err(Error::SizeLimit {
            what: "open-set enumeration".into(),
            actual: h.len(),
            limit: cap,
        });
    }
    let idx = OpenSetIndex::new(h)?;
    Ok(idx.open_masks().into_iter().map(|m| idx.to_hypergraph(m)).collect())
}

/// Outcome of checking the topology axioms on every sub-hypergraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomsReport {
    pub hyperedges: usize,
    pub opens: usize,
    pub subsets_checked: usize,
    /// First failures found, at most [`MAX_REPORTED`].
    pub failures: Vec<String>,
}

impl AxiomsReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

pub const MAX_REPORTED: usize = 20;

/// Opens are taken from the definition (empty boundary) for every subset of
/// `h`. Checks that they contain `∅` and `H`, are closed under pairwise and
/// whole-family unions and intersections, agree with the bitmask
/// enumeration, and that `int` and `cl` are the largest open inside and the
/// smallest closed around every sub-hypergraph.
pub fn topology_axioms_check(h: &Hypergraph, cap: usize) -> Result<AxiomsReport> {
    if h.len() > cap {
        return Err(Error::SizeLimit {
            what: "topology axiom check".into(),
            actual: h.len(),
            limit: cap,
        });
    }
    let idx = OpenSetIndex::new(h)?;
    let full = idx.full_mask();
    let per_subset: Vec<(bool, u64, u64)> = (0..=full)
        .into_par_iter()
        .map(|m| {
            let pair = HypergraphPair::new(h.clone(), idx.to_hypergraph(m)).expect("subset");
            (
                boundary(&pair).is_empty(),
                idx.to_mask(&interior(&pair)),
                idx.to_mask(&closure(&pair)),
            )
        })
        .collect();
    let is_open = |m: u64| per_subset[m as usize].0;
    let opens: Vec<u64> = (0..=full).filter(|&m| is_open(m)).collect();

    let mut failures = Vec::new();
    let mut fail = |msg: String| {
        if failures.len() < MAX_REPORTED {
            failures.push(msg);
        }
    };
    let show = |m: u64| format!("{:?}", idx.to_hypergraph(m));
    if !is_open(0) {
        fail("the empty sub-hypergraph is not open".into());
    }
    if !is_open(full) {
        fail("H is not open in itself".into());
    }
    if opens != idx.open_masks() {
        fail("opens by definition differ from the upward-closed enumeration".into());
    }
    for (i, &a) in opens.iter().enumerate() {
        for &b in &opens[i + 1..] {
            if !is_open(a | b) {
                fail(format!("union of opens {} and {} is not open", show(a), show(b)));
            }
            if !is_open(a & b) {
                fail(format!("intersection of opens {} and {} is not open", show(a), show(b)));
            }
        }
    }
    let union_all = opens.iter().fold(0, |x, &m| x | m);
    let inter_all = opens.iter().fold(full, |x, &m| x & m);
    if !is_open(union_all) || !is_open(inter_all) {
        fail("union or intersection of the whole family of opens is not open".into());
    }

    let bad: Vec<String> = (0..=full)
        .into_par_iter()
        .filter_map(|a| {
            let (_, int, cl) = per_subset[a as usize];
            let largest_open = opens.iter().filter(|&&o| o & !a == 0).fold(0, |x, &o| x | o);
            let smallest_closed = opens
                .iter()
                .map(|&o| full & !o)
                .filter(|&c| a & !c == 0)
                .fold(full, |x, c| x & c);
            match (int == largest_open, cl == smallest_closed) {
                (true, true) => None,
                (false, _) => Some(format!(
                    "int of {} is {}, the largest open inside is {}",
                    show(a),
                    show(int),
                    show(largest_open)
                )),
                (_, false) => Some(format!(
                    "cl of {} is {}, the smallest closed around is {}",
                    show(a),
                    show(cl),
                    show(smallest_closed)
                )),
            }
        })
        .collect();
    for b in bad {
        fail(b);
    }

    Ok(AxiomsReport {
        hyperedges: h.len(),
        opens: opens.len(),
        subsets_checked: per_subset.len(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// H = {v0,v1,v2,v3,v0v1,v0v1v2,v0v1v3}, A = {v0,v1,v3,v0v1,v0v1v3}.
    fn ex4a() -> HypergraphPair {
        let h = Hypergraph::from_ids(&[&[0], &[1], &[2], &[3], &[0, 1], &[0, 1, 2], &[0, 1, 3]]);
        let a = Hypergraph::from_ids(&[&[0], &[1], &[3], &[0, 1], &[0, 1, 3]]);
        HypergraphPair::new(h, a).unwrap()
    }

    #[test]
    fn worked_example_operators() {
        let p = ex4a();
        assert_eq!(complement(&p), Hypergraph::from_ids(&[&[2], &[0, 1, 2]]));
        assert_eq!(boundary(&p), Hypergraph::from_ids(&[&[0], &[1], &[0, 1]]));
        assert_eq!(interior(&p), Hypergraph::from_ids(&[&[3], &[0, 1, 3]]));
        assert_eq!(
            closed_complement(&p),
            Hypergraph::from_ids(&[&[0], &[1], &[2], &[0, 1], &[0, 1, 2]])
        );
        assert_eq!(closure(&p), p.sub().clone());
        assert_eq!(core(&p, 1, CoreIteration::Nested).unwrap(), Hypergraph::from_ids(&[&[3]]));
        let o = openness(&p);
        assert!(o.is_closed && !o.is_open);
        let c = HypergraphPair::new(p.total().clone(), complement(&p)).unwrap();
        assert!(openness(&c).is_open);
        let n = neighborhood(&c, 1).unwrap();
        assert_eq!(n, p.total().difference(&Hypergraph::from_ids(&[&[3]])));
    }

    #[test]
    fn distances() {
        let p = ex4a();
        let h = p.total();
        let d = |a: &[u32], b: &[u32]| {
            path_distance(h, &Hyperedge::from_ids(a), &Hyperedge::from_ids(b)).unwrap()
        };
        assert_eq!(d(&[2], &[3]), PathDistance::Finite(1));
        assert_eq!(d(&[3], &[3]), PathDistance::Finite(0));
        assert_eq!(d(&[0], &[1]), PathDistance::Finite(0));
        let split = Hypergraph::from_ids(&[&[0], &[1]]);
        assert_eq!(
            path_distance(&split, &Hyperedge::from_ids(&[0]), &Hyperedge::from_ids(&[1])).unwrap(),
            PathDistance::Infinite
        );
        assert!(path_distance(&split, &Hyperedge::from_ids(&[2]), &Hyperedge::from_ids(&[1])).is_err());
    }

    #[test]
    fn axioms_on_the_worked_example() {
        let r = topology_axioms_check(ex4a().total(), DEFAULT_OPEN_CAP).unwrap();
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.subsets_checked, 1 << 7);
        assert!(topology_axioms_check(ex4a().total(), 3).is_err());
    }

    #[test]
    fn small_open_enumerations() {
        let h = Hypergraph::from_ids(&[&[0]]);
        assert_eq!(enumerate_open(&h, 16).unwrap().len(), 2);
        let h = Hypergraph::from_ids(&[&[0], &[0, 1]]);
        let opens = enumerate_open(&h, 16).unwrap();
        assert_eq!(
            opens,
            vec![Hypergraph::new(), Hypergraph::from_ids(&[&[0, 1]]), h.clone()]
        );
        let big = Hypergraph::from_ids(&[&[0], &[1], &[2]]);
        assert!(matches!(enumerate_open(&big, 2), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn unit_ball_differs_from_neighborhood() {
        let h = Hypergraph::from_ids(&[&[1], &[3], &[1, 2], &[2, 3]]);
        let s = Hyperedge::from_ids(&[1]);
        let p = HypergraphPair::new(h.clone(), Hypergraph::from_edges([s.clone()])).unwrap();
        let ball = unit_ball(&h, &s).unwrap();
        let n = neighborhood(&p, 1).unwrap();
        assert!(ball.contains(&Hyperedge::from_ids(&[3])));
        assert!(!n.contains(&Hyperedge::from_ids(&[3])));
    }

    #[test]
    fn iteration_count_must_be_positive() {
        assert!(neighborhood(&ex4a(), 0).is_err());
        assert!(core(&ex4a(), 0, CoreIteration::Nested).is_err());
    }
}
