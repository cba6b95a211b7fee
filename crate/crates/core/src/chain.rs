//! Chain complexes inside the simplicial chains of an ambient complex.
//!
//! Every complex is a graded family of lattices in `C_n(K)` for one fixed
//! ambient simplicial complex `K` (usually `ΔH`), so inclusions between them
//! are plain lattice containments. For homology they are rewritten in
//! lattice coordinates as a [`CoordComplex`].

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hypergraph::{Hyperedge, Hypergraph, VertexMorphism};
use crate::lattice::{IntegerLattice, IntegerMatrix, Lattice, Matrix, QuotientPresentation};

pub use crate::scalar::CoefficientSpec;

/// Simplices of an ambient simplicial complex, grouped by dimension, in the
/// global (dimension, lexicographic) order.
#[derive(Debug)]
pub struct SimplexBasis {
    by_dim: Vec<Vec<Hyperedge>>,
    index: HashMap<Hyperedge, usize>,
    /// `faces[n][i]`: `(face index, sign)` for the boundary of simplex `i` of dimension `n`.
    faces: Vec<Vec<Vec<(usize, i8)>>>,
}

impl SimplexBasis {
    /// Basis of `Δ(h)`.
    pub fn new(h: &Hypergraph) -> Arc<Self> {
        let closure = h.delta_closure();
        let top = closure.max_dim().map_or(0, |d| d + 1);
        let mut by_dim = vec![Vec::new(); top];
        for e in closure.iter() {
            by_dim[e.dim()].push(e.clone());
        }
        let mut index = HashMap::new();
        for simplices in &by_dim {
            for (i, s) in simplices.iter().enumerate() {
                index.insert(s.clone(), i);
            }
        }
        let faces = by_dim
            .iter()
            .map(|simplices| {
                simplices
                    .iter()
                    .map(|s| {
                        s.faces()
                            .map(|(i, f)| (index[&f], if i % 2 == 0 { 1 } else { -1 }))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Arc::new(SimplexBasis {
            by_dim,
            index,
            faces,
        })
    }

    /// Number of dimensions present (top dimension + 1); 0 for the empty complex.
    pub fn num_dims(&self) -> usize {
        self.by_dim.len()
    }

    pub fn count(&self, n: usize) -> usize {
        self.by_dim.get(n).map_or(0, Vec::len)
    }

    pub fn simplices(&self, n: usize) -> &[Hyperedge] {
        self.by_dim.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn position(&self, s: &Hyperedge) -> Option<usize> {
        let i = *self.index.get(s)?;
        Some(i)
    }

    pub fn contains(&self, s: &Hyperedge) -> bool {
        self.index.contains_key(s)
    }

    /// True when every hyperedge of `h` is a simplex of this basis.
    pub fn spans(&self, h: &Hypergraph) -> bool {
        h.iter().all(|e| self.contains(e))
    }

    /// `∂_n` as a `count(n) x count(n-1)` matrix (rows are simplices).
    pub fn boundary_matrix(&self, n: usize) -> IntegerMatrix {
        let rows = self.count(n);
        let cols = if n == 0 { 0 } else { self.count(n - 1) };
        let mut m = Matrix::zeros(rows, cols);
        if n > 0 {
            for (i, fs) in self.faces[n].iter().enumerate() {
                for &(j, s) in fs {
                    m[(i, j)] = BigInt::from(s);
                }
            }
        }
        m
    }

    /// Boundary of an `n`-chain given in ambient coordinates.
    pub fn boundary_of(&self, n: usize, chain: &[BigInt]) -> Vec<BigInt> {
        if n == 0 {
            return Vec::new();
        }
        let mut out = vec![BigInt::zero(); self.count(n - 1)];
        for (i, c) in chain.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(j, s) in &self.faces[n][i] {
                out[j] += c * BigInt::from(s);
            }
        }
        out
    }

    /// `G(h)_n`: the coordinate lattice on the `n`-hyperedges of `h`.
    pub fn coordinate_lattice(&self, h: &Hypergraph, n: usize) -> IntegerLattice {
        let idx: Vec<usize> = h.edges_of_dim(n).filter_map(|e| self.position(e)).collect();
        Lattice::coordinate(self.count(n), &idx)
    }

    fn require_spans(&self, h: &Hypergraph) -> Result<()> {
        match h.iter().find(|e| !self.contains(e)) {
            Some(e) => Err(Error::NotContained(format!(
                "hyperedge {e:?} is not a simplex of the ambient complex"
            ))),
            None => Ok(()),
        }
    }
}

/// Graded sublattices of the ambient simplicial chains, closed under `∂`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    basis: Arc<SimplexBasis>,
    groups: Vec<IntegerLattice>,
}

impl PartialEq for ChainComplex {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.basis, &other.basis) && self.groups == other.groups
    }
}

impl ChainComplex {
    /// Wraps lattices after checking that the boundary preserves them.
    pub fn from_groups(basis: Arc<SimplexBasis>, groups: Vec<IntegerLattice>) -> Result<Self> {
        let c = ChainComplex { basis, groups };
        c.validate()?;
        Ok(c)
    }

    fn empty_groups(basis: &SimplexBasis) -> Vec<IntegerLattice> {
        (0..basis.num_dims())
            .map(|n| Lattice::zero(basis.count(n)))
            .collect()
    }

    /// `C_*(k)` for a simplicial complex `k` inside the ambient.
    ///
    /// With `require_simplicial == false` a non-simplicial `k` is replaced by
    /// its simplicial closure.
    pub fn simplicial(basis: &Arc<SimplexBasis>, k: &Hypergraph, require_simplicial: bool) -> Result<Self> {
        if !k.is_simplicial() {
            if require_simplicial {
                return Err(Error::InvalidInput(
                    "hypergraph is not closed under taking faces".into(),
                ));
            }
            return ChainComplex::simplicial(basis, &k.delta_closure(), true);
        }
        basis.require_spans(k)?;
        let groups = (0..basis.num_dims())
            .map(|n| basis.coordinate_lattice(k, n))
            .collect();
        Ok(ChainComplex {
            basis: basis.clone(),
            groups,
        })
    }

    /// `Inf_n(h) = G(h)_n ∩ ∂^{-1} G(h)_{n-1}`, one integer kernel per degree.
    pub fn inf(basis: &Arc<SimplexBasis>, h: &Hypergraph) -> Result<Self> {
        basis.require_spans(h)?;
        let mut groups = ChainComplex::empty_groups(basis);
        for (n, g) in groups.iter_mut().enumerate() {
            let edges: Vec<usize> = h.edges_of_dim(n).filter_map(|e| basis.position(e)).collect();
            if edges.is_empty() {
                continue;
            }
            if n == 0 {
                *g = Lattice::coordinate(basis.count(0), &edges);
                continue;
            }
            // Boundary of each hyperedge, projected onto faces missing from h.
            let in_h: Vec<bool> = basis
                .simplices(n - 1)
                .iter()
                .map(|f| h.contains(f))
                .collect();
            let missing: Vec<usize> = (0..in_h.len()).filter(|&j| !in_h[j]).collect();
            let mut proj = Matrix::zeros(edges.len(), missing.len());
            let col_of: HashMap<usize, usize> =
                missing.iter().enumerate().map(|(c, &j)| (j, c)).collect();
            for (r, &e) in edges.iter().enumerate() {
                for &(j, s) in &basis.faces[n][e] {
                    if let Some(&c) = col_of.get(&j) {
                        proj[(r, c)] = BigInt::from(s);
                    }
                }
            }
            let kernel = crate::lattice::left_kernel(&proj);
            let mut lifted = Matrix::zeros(kernel.rows(), basis.count(n));
            for r in 0..kernel.rows() {
                for (c, &e) in edges.iter().enumerate() {
                    lifted[(r, e)] = kernel[(r, c)].clone();
                }
            }
            *g = Lattice::from_generators(&lifted);
        }
        Ok(ChainComplex {
            basis: basis.clone(),
            groups,
        })
    }

    /// `Sup_n(h) = G(h)_n + ∂ G(h)_{n+1}`.
    pub fn sup(basis: &Arc<SimplexBasis>, h: &Hypergraph) -> Result<Self> {
        basis.require_spans(h)?;
        let dims = basis.num_dims();
        let mut groups = Vec::with_capacity(dims);
        for n in 0..dims {
            let mut gens = Matrix::zeros(0, basis.count(n));
            for e in h.edges_of_dim(n) {
                let mut v = vec![BigInt::zero(); basis.count(n)];
                v[basis.position(e).expect("spanned")] = BigInt::one();
                gens.push_row(&v);
            }
            if n + 1 < dims {
                for e in h.edges_of_dim(n + 1) {
                    let mut v = vec![BigInt::zero(); basis.count(n + 1)];
                    v[basis.position(e).expect("spanned")] = BigInt::one();
                    gens.push_row(&basis.boundary_of(n + 1, &v));
                }
            }
            groups.push(Lattice::from_generators(&gens));
        }
        Ok(ChainComplex {
            basis: basis.clone(),
            groups,
        })
    }

    /// `C_*(δh)`.
    pub fn lower(basis: &Arc<SimplexBasis>, h: &Hypergraph) -> Result<Self> {
        ChainComplex::simplicial(basis, &h.lower_closure(), true)
    }

    /// `C_*(Δh)`.
    pub fn delta(basis: &Arc<SimplexBasis>, h: &Hypergraph) -> Result<Self> {
        ChainComplex::simplicial(basis, &h.delta_closure(), true)
    }

    pub fn basis(&self) -> &Arc<SimplexBasis> {
        &self.basis
    }

    pub fn num_dims(&self) -> usize {
        self.groups.len()
    }

    pub fn group(&self, n: usize) -> &IntegerLattice {
        &self.groups[n]
    }

    pub fn groups(&self) -> &[IntegerLattice] {
        &self.groups
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.groups.iter().map(Lattice::rank).collect()
    }

    /// Checks `∂ C_n ⊆ C_{n-1}` for every degree.
    pub fn validate(&self) -> Result<()> {
        if self.groups.len() != self.basis.num_dims() {
            return Err(Error::Integrity("degree count does not match ambient".into()));
        }
        for n in 1..self.groups.len() {
            for r in self.groups[n].basis().iter_rows() {
                let b = self.basis.boundary_of(n, r);
                if !self.groups[n - 1].contains(&b) {
                    return Err(Error::Integrity(format!(
                        "boundary leaves the complex in degree {n}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_subcomplex_of(&self, other: &ChainComplex) -> bool {
        Arc::ptr_eq(&self.basis, &other.basis)
            && self
                .groups
                .iter()
                .zip(&other.groups)
                .all(|(a, b)| b.contains_lattice(a))
    }

    /// Degreewise sum (the result is again closed under `∂`).
    pub fn sum(&self, other: &ChainComplex) -> Result<ChainComplex> {
        self.same_ambient(other)?;
        let groups = self
            .groups
            .iter()
            .zip(&other.groups)
            .map(|(a, b)| a.sum(b))
            .collect::<Result<_>>()?;
        Ok(ChainComplex {
            basis: self.basis.clone(),
            groups,
        })
    }

    /// Degreewise intersection.
    pub fn intersection(&self, other: &ChainComplex) -> Result<ChainComplex> {
        self.same_ambient(other)?;
        let groups = self
            .groups
            .iter()
            .zip(&other.groups)
            .map(|(a, b)| a.intersection(b))
            .collect::<Result<_>>()?;
        Ok(ChainComplex {
            basis: self.basis.clone(),
            groups,
        })
    }

    fn same_ambient(&self, other: &ChainComplex) -> Result<()> {
        if !Arc::ptr_eq(&self.basis, &other.basis) {
            return Err(Error::InvalidInput("complexes live in different ambients".into()));
        }
        Ok(())
    }

    /// `self / sub` rewritten in the coordinates of `self`'s lattice bases.
    pub fn relative_to(&self, sub: &ChainComplex) -> Result<CoordComplex> {
        self.same_ambient(sub)?;
        let mut boundaries = Vec::with_capacity(self.num_dims());
        let mut relations = Vec::with_capacity(self.num_dims());
        for n in 0..self.num_dims() {
            let g = &self.groups[n];
            let mut bd = Matrix::zeros(0, if n == 0 { 0 } else { self.groups[n - 1].rank() });
            if n > 0 {
                for r in g.basis().iter_rows() {
                    let b = self.basis.boundary_of(n, r);
                    let c = self.groups[n - 1].coordinates(&b).ok_or_else(|| {
                        Error::Integrity(format!("boundary leaves the complex in degree {n}"))
                    })?;
                    bd.push_row(&c);
                }
            }
            boundaries.push(bd);
            relations.push(g.coordinates_of(&sub.groups[n]).map_err(|_| {
                Error::NotContained(format!("sub-complex is not contained in degree {n}"))
            })?);
        }
        Ok(CoordComplex {
            ranks: self.ranks(),
            boundaries,
            relations,
        })
    }

    /// The complex itself in lattice coordinates.
    pub fn coords(&self) -> CoordComplex {
        let zero = ChainComplex {
            basis: self.basis.clone(),
            groups: ChainComplex::empty_groups(&self.basis),
        };
        self.relative_to(&zero).expect("zero complex is contained")
    }

    /// Coordinates (in `self`) of an ambient chain of degree `n`.
    pub fn coordinates(&self, n: usize, chain: &[BigInt]) -> Option<Vec<BigInt>> {
        self.groups[n].coordinates(chain)
    }
}

/// A complex `C / R` presented in coordinates: `C_n = Z^{ranks[n]}`, the
/// boundary `boundaries[n]` (`ranks[n] x ranks[n-1]`) and relation rows
/// `relations[n]` spanning the sub-complex `R_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoordComplex {
    pub ranks: Vec<usize>,
    pub boundaries: Vec<IntegerMatrix>,
    pub relations: Vec<IntegerMatrix>,
}

impl CoordComplex {
    pub fn num_dims(&self) -> usize {
        self.ranks.len()
    }

    /// Exact checks: `∂∂ = 0` and `∂ R_n ⊆ R_{n-1}`.
    pub fn validate(&self) -> Result<()> {
        for n in 2..self.num_dims() {
            if !self.boundaries[n].mul(&self.boundaries[n - 1]).is_zero() {
                return Err(Error::Integrity(format!("∂∂ ≠ 0 at degree {n}")));
            }
        }
        for n in 1..self.num_dims() {
            let r = Lattice::from_generators(&self.relations[n - 1]);
            let img = self.relations[n].mul(&self.boundaries[n]);
            if img.iter_rows().any(|row| !r.contains(row)) {
                return Err(Error::Integrity(format!(
                    "boundary does not preserve the relations at degree {n}"
                )));
            }
        }
        Ok(())
    }

    /// Extends with zero groups up to `dims` degrees.
    pub fn padded(&self, dims: usize) -> CoordComplex {
        let mut c = self.clone();
        while c.ranks.len() < dims {
            let prev = c.ranks.last().copied().unwrap_or(0);
            let n = c.ranks.len();
            c.ranks.push(0);
            c.boundaries.push(Matrix::zeros(0, if n == 0 { 0 } else { prev }));
            c.relations.push(Matrix::zeros(0, 0));
        }
        c
    }

    /// Ranks of the quotient chain groups `C_n / R_n` (over the rationals).
    pub fn quotient_ranks(&self) -> Vec<usize> {
        (0..self.num_dims())
            .map(|n| self.ranks[n] - Lattice::from_generators(&self.relations[n]).rank())
            .collect()
    }

    /// Block sum of two complexes with the same number of degrees.
    pub fn direct_sum(&self, other: &CoordComplex) -> CoordComplex {
        assert_eq!(self.num_dims(), other.num_dims(), "degree mismatch in direct sum");
        CoordComplex {
            ranks: self.ranks.iter().zip(&other.ranks).map(|(a, b)| a + b).collect(),
            boundaries: self
                .boundaries
                .iter()
                .zip(&other.boundaries)
                .map(|(a, b)| a.direct_sum(b))
                .collect(),
            relations: self
                .relations
                .iter()
                .zip(&other.relations)
                .map(|(a, b)| a.direct_sum(b))
                .collect(),
        }
    }

    /// A complex with no relations from explicit boundary matrices.
    pub fn from_boundaries(ranks: Vec<usize>, boundaries: Vec<IntegerMatrix>) -> Result<Self> {
        if boundaries.len() != ranks.len() {
            return Err(Error::InvalidInput("one boundary matrix per degree expected".into()));
        }
        for (n, b) in boundaries.iter().enumerate() {
            let cols = if n == 0 { 0 } else { ranks[n - 1] };
            if b.rows() != ranks[n] || b.cols() != cols {
                return Err(Error::InvalidInput(format!("boundary {n} has the wrong shape")));
            }
        }
        let relations = ranks.iter().map(|&r| Matrix::zeros(0, r)).collect();
        Ok(CoordComplex {
            ranks,
            boundaries,
            relations,
        })
    }
}

/// A chain map in lattice coordinates: `maps[n]` is `source.ranks[n] x target.ranks[n]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap {
    pub maps: Vec<IntegerMatrix>,
}

impl ChainMap {
    pub fn identity(ranks: &[usize]) -> ChainMap {
        ChainMap {
            maps: ranks.iter().map(|&r| Matrix::identity(r)).collect(),
        }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &ChainMap) -> ChainMap {
        ChainMap {
            maps: self.maps.iter().zip(&next.maps).map(|(a, b)| a.mul(b)).collect(),
        }
    }

    /// Exact check that the map commutes with boundaries and respects relations.
    pub fn check(&self, source: &CoordComplex, target: &CoordComplex) -> Result<()> {
        if self.maps.len() != source.num_dims() || self.maps.len() != target.num_dims() {
            return Err(Error::Integrity("chain map degree count mismatch".into()));
        }
        for n in 1..self.maps.len() {
            let lhs = source.boundaries[n].mul(&self.maps[n - 1]);
            let rhs = self.maps[n].mul(&target.boundaries[n]);
            let diff = lhs
                .iter_rows()
                .zip(rhs.iter_rows())
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<_>>())
                .collect::<Vec<_>>();
            let rel = Lattice::from_generators(&target.relations[n - 1]);
            if diff.iter().any(|d| !rel.contains(d)) {
                return Err(Error::Integrity(format!("chain map does not commute at degree {n}")));
            }
        }
        for n in 0..self.maps.len() {
            let rel = Lattice::from_generators(&target.relations[n]);
            let img = source.relations[n].mul(&self.maps[n]);
            if img.iter_rows().any(|r| !rel.contains(r)) {
                return Err(Error::Integrity(format!(
                    "chain map does not preserve relations at degree {n}"
                )));
            }
        }
        Ok(())
    }

    /// Block map `x ⊕ y -> x * self + y * other` out of a direct sum.
    pub fn stack(&self, other: &ChainMap) -> ChainMap {
        ChainMap {
            maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.vstack(b)).collect(),
        }
    }

    /// Block map `x -> (x * self, x * other)` into a direct sum.
    pub fn pair(&self, other: &ChainMap) -> ChainMap {
        ChainMap {
            maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.hstack(b)).collect(),
        }
    }

    pub fn negate(&self) -> ChainMap {
        ChainMap {
            maps: self.maps.iter().map(|m| m.map(|x| -x)).collect(),
        }
    }
}

/// Coordinate matrices of the inclusion `sub ⊆ sup`.
pub fn inclusion_chain_map(sub: &ChainComplex, sup: &ChainComplex) -> Result<ChainMap> {
    if !Arc::ptr_eq(&sub.basis, &sup.basis) {
        return Err(Error::InvalidInput("complexes live in different ambients".into()));
    }
    let maps = (0..sub.num_dims())
        .map(|n| {
            sup.groups[n].coordinates_of(&sub.groups[n]).map_err(|_| {
                Error::NotContained(format!("not an inclusion of complexes in degree {n}"))
            })
        })
        .collect::<Result<_>>()?;
    Ok(ChainMap { maps })
}

/// The four complexes `C(δH) ⊆ Inf(H) ⊆ Sup(H) ⊆ C(ΔH)` over one ambient.
#[derive(Clone, Debug)]
pub struct Tower {
    pub lower: ChainComplex,
    pub inf: ChainComplex,
    pub sup: ChainComplex,
    pub delta: ChainComplex,
}

impl Tower {
    pub fn new(basis: &Arc<SimplexBasis>, h: &Hypergraph) -> Result<Self> {
        Ok(Tower {
            lower: ChainComplex::lower(basis, h)?,
            inf: ChainComplex::inf(basis, h)?,
            sup: ChainComplex::sup(basis, h)?,
            delta: ChainComplex::delta(basis, h)?,
        })
    }

    pub fn get(&self, flavor: Flavor) -> &ChainComplex {
        match flavor {
            Flavor::Lower => &self.lower,
            Flavor::Inf => &self.inf,
            Flavor::Sup => &self.sup,
            Flavor::Delta => &self.delta,
        }
    }

    /// Maps `lower -> inf -> sup -> delta`.
    pub fn maps(&self) -> Result<[ChainMap; 3]> {
        Ok([
            inclusion_chain_map(&self.lower, &self.inf)?,
            inclusion_chain_map(&self.inf, &self.sup)?,
            inclusion_chain_map(&self.sup, &self.delta)?,
        ])
    }
}

/// Which chain complex represents a hypergraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Flavor {
    #[default]
    Inf,
    Sup,
    /// Simplicial chains of `ΔH`.
    Delta,
    /// Simplicial chains of `δH`.
    Lower,
}

impl Flavor {
    pub fn build(self, basis: &Arc<SimplexBasis>, h: &Hypergraph) -> Result<ChainComplex> {
        match self {
            Flavor::Inf => ChainComplex::inf(basis, h),
            Flavor::Sup => ChainComplex::sup(basis, h),
            Flavor::Delta => ChainComplex::delta(basis, h),
            Flavor::Lower => ChainComplex::lower(basis, h),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Inf => "inf",
            Flavor::Sup => "sup",
            Flavor::Delta => "delta",
            Flavor::Lower => "lower",
        }
    }
}

impl std::str::FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" => Ok(Flavor::Inf),
            "sup" => Ok(Flavor::Sup),
            "delta" => Ok(Flavor::Delta),
            "lower" => Ok(Flavor::Lower),
            _ => Err(Error::InvalidInput(format!(
                "unknown flavor '{s}' (expected inf, sup, delta or lower)"
            ))),
        }
    }
}

/// Quotient of two nested complexes with per-degree group presentations.
#[derive(Clone, Debug)]
pub struct QuotientComplex {
    pub coords: CoordComplex,
    pub presentations: Vec<QuotientPresentation>,
}

impl QuotientComplex {
    pub fn ranks(&self) -> Vec<usize> {
        self.presentations.iter().map(|p| p.rank).collect()
    }

    pub fn has_torsion(&self) -> bool {
        self.presentations.iter().any(|p| !p.torsion.is_empty())
    }
}

pub fn quotient_complex(total: &ChainComplex, sub: &ChainComplex) -> Result<QuotientComplex> {
    let coords = total.relative_to(sub)?;
    let presentations = (0..total.num_dims())
        .map(|n| crate::lattice::quotient_presentation(sub.group(n), total.group(n)))
        .collect::<Result<_>>()?;
    Ok(QuotientComplex {
        coords,
        presentations,
    })
}

/// Chain map induced by a vertex map on simplicial chains: a simplex goes to
/// the signed image simplex, or to zero when two vertices collide.
///
/// Both complexes are subcomplexes of their own ambients; the image of every
/// source generator must lie in the target complex.
pub fn morphism_chain_map(
    f: &VertexMorphism,
    source: &ChainComplex,
    target: &ChainComplex,
) -> Result<ChainMap> {
    let sb = &source.basis;
    let tb = &target.basis;
    let dims = source.num_dims().max(target.num_dims());
    let mut maps = Vec::with_capacity(dims);
    for n in 0..dims {
        let trank = target.groups.get(n).map_or(0, Lattice::rank);
        let mut m = Matrix::zeros(0, trank);
        let Some(group) = source.groups.get(n) else {
            maps.push(m);
            continue;
        };
        for r in group.basis().iter_rows() {
            let mut img = vec![BigInt::zero(); tb.count(n)];
            for (i, c) in r.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let s = &sb.simplices(n)[i];
                let mut verts = Vec::with_capacity(s.len());
                for v in s.vertices() {
                    verts.push(f.get(*v).ok_or_else(|| {
                        Error::InvalidMorphism(format!("vertex {} has no image", v.0))
                    })?);
                }
                let Some(sign) = sort_sign(&mut verts) else {
                    continue;
                };
                let t = Hyperedge::new(verts).expect("distinct vertices");
                let j = tb.position(&t).ok_or_else(|| {
                    Error::InvalidMorphism(format!("image {t:?} is outside the target"))
                })?;
                if sign > 0 {
                    img[j] += c;
                } else {
                    img[j] -= c;
                }
            }
            let coords = match target.groups.get(n) {
                Some(g) => g.coordinates(&img),
                None => img.iter().all(Zero::is_zero).then(Vec::new),
            }
            .ok_or_else(|| {
                Error::InvalidMorphism(format!(
                    "image of a degree-{n} chain is not in the target complex"
                ))
            })?;
            m.push_row(&coords);
        }
        maps.push(m);
    }
    Ok(ChainMap { maps })
}

/// Sorts in place; returns the permutation sign, or `None` on a repeated entry.
fn sort_sign<T: Ord>(v: &mut [T]) -> Option<i32> {
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

pub fn simplicial_chain_complex(k: &Hypergraph, require_simplicial: bool) -> Result<ChainComplex> {
    let basis = SimplexBasis::new(k);
    ChainComplex::simplicial(&basis, k, require_simplicial)
}

pub fn inf_complex(h: &Hypergraph) -> Result<ChainComplex> {
    ChainComplex::inf(&SimplexBasis::new(h), h)
}

pub fn sup_complex(h: &Hypergraph) -> Result<ChainComplex> {
    ChainComplex::sup(&SimplexBasis::new(h), h)
}
