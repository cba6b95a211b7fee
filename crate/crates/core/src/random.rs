//! Seeded random hypergraphs, pairs, triples, morphisms and filtration values
//! for fuzzing and property tests.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hypergraph::{Hyperedge, Hypergraph, HypergraphPair, HypergraphTriple, VertexId, VertexMorphism};

/// Size bounds for generated hypergraphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomConfig {
    pub max_vertices: u32,
    pub max_edges: usize,
    pub max_edge_size: usize,
}

impl Default for RandomConfig {
    fn default() -> Self {
        RandomConfig {
            max_vertices: 10,
            max_edges: 14,
            max_edge_size: 4,
        }
    }
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A non-empty hypergraph within `cfg`, biased towards overlapping hyperedges.
pub fn random_hypergraph<R: Rng + ?Sized>(rng: &mut R, cfg: &RandomConfig) -> Hypergraph {
    let nv = rng.random_range(1..=cfg.max_vertices.max(1));
    let target = rng.random_range(1..=cfg.max_edges.max(1));
    let mut h = Hypergraph::new();
    let mut attempts = 0;
    while h.len() < target && attempts < 20 * target {
        attempts += 1;
        let size = rng.random_range(1..=cfg.max_edge_size.min(nv as usize).max(1));
        let mut verts: Vec<u32> = (0..nv).collect();
        let (chosen, _) = verts.partial_shuffle(rng, size);
        let e = Hyperedge::new(chosen.iter().map(|&v| VertexId(v))).expect("distinct vertices");
        h.insert(e);
        // Sometimes add a face, so that Inf complexes are not always trivial.
        if rng.random_bool(0.5) {
            if let Some(e) = h.iter().last().cloned() {
                let faces: Vec<Hyperedge> = e.faces().map(|(_, f)| f).collect();
                if let Some(f) = faces.choose(rng) {
                    if h.len() < target {
                        h.insert(f.clone());
                    }
                }
            }
        }
    }
    h
}

/// Each hyperedge kept independently with probability one half.
pub fn random_sub<R: Rng + ?Sized>(rng: &mut R, h: &Hypergraph) -> Hypergraph {
    h.filter(|_| rng.random_bool(0.5))
}

pub fn random_pair<R: Rng + ?Sized>(rng: &mut R, cfg: &RandomConfig) -> HypergraphPair {
    let h = random_hypergraph(rng, cfg);
    let a = random_sub(rng, &h);
    HypergraphPair::new(h, a).expect("sub-hypergraph")
}

pub fn random_triple<R: Rng + ?Sized>(rng: &mut R, cfg: &RandomConfig) -> HypergraphTriple {
    let h = random_hypergraph(rng, cfg);
    let a = random_sub(rng, &h);
    let b = random_sub(rng, &a);
    HypergraphTriple::new(h, a, b).expect("nested")
}

/// Identity on the vertices of `h` except that one vertex is sent onto another.
pub fn random_collapse<R: Rng + ?Sized>(rng: &mut R, h: &Hypergraph) -> VertexMorphism {
    let vs: Vec<VertexId> = h.vertices().into_iter().collect();
    let mut map: BTreeMap<VertexId, VertexId> = vs.iter().map(|&v| (v, v)).collect();
    if vs.len() >= 2 {
        let from = *vs.choose(rng).expect("non-empty");
        let to = *vs.choose(rng).expect("non-empty");
        map.insert(from, to);
    }
    VertexMorphism::new(map)
}

/// Values `k/2` with `0 ≤ k ≤ 2 * max` on every hyperedge.
pub fn random_values<R: Rng + ?Sized>(rng: &mut R, h: &Hypergraph, max: u32) -> BTreeMap<Hyperedge, BigRational> {
    h.iter()
        .map(|e| {
            let k = rng.random_range(0..=2 * max);
            (e.clone(), BigRational::new(BigInt::from(k), BigInt::from(2)))
        })
        .collect()
}
