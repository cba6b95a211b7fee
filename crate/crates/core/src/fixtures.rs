//! The worked examples from the reference text as ready-made hypergraphs.
//!
//! Vertex `v_i` is `VertexId(i)`. In the Mayer–Vietoris example the extra
//! apex vertices `w_1..w_4` are `VertexId(4..8)`.

use crate::hypergraph::{Hyperedge, Hypergraph, HypergraphPair};

fn pair(h: Hypergraph, a: Hypergraph) -> HypergraphPair {
    HypergraphPair::new(h, a).expect("fixture pairs are nested")
}

/// `{v0, v1, v2, v0v1, v0v1v2}`.
pub fn ex21_h() -> Hypergraph {
    Hypergraph::from_ids(&[&[0], &[1], &[2], &[0, 1], &[0, 1, 2]])
}

/// The three pairs `(H, A)`, `(H, A')`, `(H, A'')` of the first example.
pub fn ex21_pairs() -> [(&'static str, HypergraphPair); 3] {
    let h = ex21_h();
    [
        ("A", pair(h.clone(), Hypergraph::from_ids(&[&[0], &[1], &[0, 1]]))),
        ("A'", pair(h.clone(), Hypergraph::from_ids(&[&[0], &[2], &[0, 1]]))),
        ("A''", pair(h, Hypergraph::from_ids(&[&[0, 1], &[0, 1, 2]]))),
    ]
}

/// `{v0, v1, v0v1, v0v1v2}`.
pub fn ex22_a() -> Hypergraph {
    Hypergraph::from_ids(&[&[0], &[1], &[0, 1], &[0, 1, 2]])
}

/// The three pairs `(H, A)`, `(H', A)`, `(H'', A)` of the second example.
pub fn ex22_pairs() -> [(&'static str, HypergraphPair); 3] {
    let a = ex22_a();
    let h = Hypergraph::from_ids(&[&[0], &[1], &[0, 1], &[1, 2], &[0, 2], &[0, 1, 2]]);
    let h1 = Hypergraph::from_ids(&[&[0], &[1], &[2], &[0, 1], &[1, 2], &[0, 2], &[0, 1, 2]]);
    let h2 = Hypergraph::from_ids(&[&[0], &[1], &[2], &[0, 1], &[0, 1, 2]]);
    [("H", pair(h, a.clone())), ("H'", pair(h1, a.clone())), ("H''", pair(h2, a))]
}

/// The 2-skeleton of the tetrahedron on `v0..v3`.
pub fn ex23_h() -> Hypergraph {
    Hypergraph::from_ids(&[&[0, 1, 2, 3]]).delta_closure().skeleton(2)
}

/// The four pairs of the third example: `dim ≥ 1`, `dim ≤ 1`, `dim ≠ 1`, `dim = 1`.
pub fn ex23_pairs() -> [(&'static str, HypergraphPair); 4] {
    let h = ex23_h();
    [
        ("A", pair(h.clone(), h.filter(|e| e.dim() >= 1))),
        ("A'", pair(h.clone(), h.filter(|e| e.dim() <= 1))),
        ("A''", pair(h.clone(), h.filter(|e| e.dim() != 1))),
        ("A'''", pair(h.clone(), h.filter(|e| e.dim() == 1))),
    ]
}

/// The topology example pair.
pub fn ex4a() -> HypergraphPair {
    pair(
        Hypergraph::from_ids(&[&[0], &[1], &[2], &[3], &[0, 1], &[0, 1, 2], &[0, 1, 3]]),
        Hypergraph::from_ids(&[&[0], &[1], &[3], &[0, 1], &[0, 1, 3]]),
    )
}

/// Pair `(H(j), A(j))` of the Mayer–Vietoris tetrahedron example, `j` in `1..=4`.
pub fn mv_tetrahedron_pair(j: u32) -> HypergraphPair {
    assert!((1..=4).contains(&j), "j ranges over 1..=4");
    let face: Vec<u32> = (0..4).filter(|&v| v != j - 1).collect();
    let mut cone = face.clone();
    cone.push(3 + j);
    let cone = Hyperedge::from_ids(&cone);
    let tetra = Hypergraph::from_ids(&[&[0, 1, 2, 3]]).delta_closure();
    let h = tetra.union(&cone.subsets().into_iter().filter(|s| s.len() >= 3).collect());
    let a = Hypergraph::from_ids(&[&face])
        .delta_closure()
        .union(&cone.subsets().into_iter().filter(|s| s.len() == 3).collect());
    pair(h, a)
}

/// The four pairs and the union pair `(∪H(j), ∪A(j))`.
pub fn mv_tetrahedron() -> (Vec<HypergraphPair>, HypergraphPair) {
    let pairs: Vec<_> = (1..=4).map(mv_tetrahedron_pair).collect();
    let h = pairs.iter().fold(Hypergraph::new(), |acc, p| acc.union(p.total()));
    let a = pairs.iter().fold(Hypergraph::new(), |acc, p| acc.union(p.sub()));
    (pairs, pair(h, a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(ex21_h().len(), 5);
        assert_eq!(ex23_h().len(), 14);
        let p = mv_tetrahedron_pair(1);
        // 15 faces of the tetrahedron, 4 triangles and 1 tetrahedron on the cone.
        assert_eq!(p.total().len(), 15 + 3 + 1);
        // 7 faces of v1v2v3, plus the 4 triangles of the cone apart from v1v2v3 itself.
        assert_eq!(p.sub().len(), 7 + 3);
        let (pairs, union) = mv_tetrahedron();
        assert_eq!(pairs.len(), 4);
        assert_eq!(union.total().vertices().len(), 8);
    }
}
