//! Homology of presented complexes over the integers and over fields.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::chain::{inclusion_chain_map, ChainComplex, ChainMap, CoordComplex, Flavor, SimplexBasis};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, HypergraphPair};
use crate::lattice::field::{self, RowSolver, Subspace};
use crate::lattice::{quotient_presentation, IntegerMatrix, Lattice, Matrix, QuotientPresentation};
use crate::scalar::{CoefficientField, CoefficientSpec};

/// `Z^betti ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k`, or `F^betti` over a field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub betti: usize,
    /// Invariant factors greater than one.
    #[serde(with = "bigint_strings")]
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn free(betti: usize) -> Self {
        HomologyGroup {
            betti,
            torsion: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    /// Human-readable form over the given coefficients, e.g. `Z^2 + Z/2`.
    pub fn render(&self, coeff: CoefficientSpec) -> String {
        let ring = match coeff {
            CoefficientSpec::Integers => "Z".to_string(),
            CoefficientSpec::Rationals => "Q".to_string(),
            CoefficientSpec::PrimeField(p) => format!("Z/{p}"),
        };
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push(ring),
            b => parts.push(format!("{ring}^{b}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(CoefficientSpec::Integers))
    }
}

mod bigint_strings {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|x| x.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Cycle representatives (in complex coordinates) for the free summands and
/// for each torsion summand.
#[derive(Clone, Debug, PartialEq)]
pub struct HomologyBasis {
    pub free: IntegerMatrix,
    pub torsion: IntegerMatrix,
}

/// `H_n = Z_n / B_n` presented degree by degree: `sup` is the cycle lattice
/// and `class_of` reads off the class of a cycle.
pub fn integer_presentations(c: &CoordComplex) -> Result<Vec<QuotientPresentation>> {
    c.validate()?;
    let dims = c.num_dims();
    let mut out = Vec::with_capacity(dims);
    for n in 0..dims {
        let r = c.ranks[n];
        let cycles = if n == 0 {
            Lattice::full(r)
        } else {
            Lattice::full(r).preimage(&c.boundaries[n], &Lattice::from_generators(&c.relations[n - 1]))
        };
        let mut gens = c.relations[n].clone();
        if n + 1 < dims {
            gens = gens.vstack(&c.boundaries[n + 1]);
        }
        let bounds = Lattice::from_generators(&gens);
        out.push(quotient_presentation(&bounds, &cycles)?);
    }
    Ok(out)
}

/// Integer homology in every degree together with representative cycles.
pub fn integer_homology(c: &CoordComplex) -> Result<Vec<(HomologyGroup, HomologyBasis)>> {
    Ok(integer_presentations(c)?
        .into_iter()
        .map(|q| {
            let k = q.torsion.len();
            let lifts = &q.lift_basis;
            let torsion_rows: Vec<usize> = (0..k).collect();
            let free_rows: Vec<usize> = (k..lifts.rows()).collect();
            (
                HomologyGroup {
                    betti: q.rank,
                    torsion: q.torsion.clone(),
                },
                HomologyBasis {
                    free: lifts.select_rows(&free_rows),
                    torsion: lifts.select_rows(&torsion_rows),
                },
            )
        })
        .collect())
}

/// A presented complex with entries pushed into a field.
#[derive(Clone, Debug)]
pub struct FieldComplex<F> {
    pub ranks: Vec<usize>,
    pub boundaries: Vec<Matrix<F>>,
    pub relations: Vec<Subspace<F>>,
}

impl<F: crate::scalar::FieldScalar> FieldComplex<F> {
    pub fn new<K: CoefficientField<Elem = F>>(c: &CoordComplex, k: &K) -> Self {
        FieldComplex {
            ranks: c.ranks.clone(),
            boundaries: c.boundaries.iter().map(|m| embed(m, k)).collect(),
            relations: c
                .relations
                .iter()
                .zip(&c.ranks)
                .map(|(m, &r)| {
                    if m.rows() == 0 {
                        Subspace::zero(r)
                    } else {
                        Subspace::span(&embed(m, k))
                    }
                })
                .collect(),
        }
    }

    pub fn num_dims(&self) -> usize {
        self.ranks.len()
    }
}

pub fn embed<K: CoefficientField>(m: &IntegerMatrix, k: &K) -> Matrix<K::Elem> {
    m.map(|x| k.embed(x))
}

/// Homology in one degree over a field, with an explicit basis.
#[derive(Clone, Debug)]
pub struct HomologySpace<F> {
    /// Representative cycles, one row per basis class.
    pub reps: Matrix<F>,
    pub cycles: Subspace<F>,
    pub boundaries: Subspace<F>,
    solver: Option<RowSolver<F>>,
}

impl<F: crate::scalar::FieldScalar> HomologySpace<F> {
    pub fn dim(&self) -> usize {
        self.reps.rows()
    }

    /// Class of a cycle in the representative basis; `None` if `z` is not a cycle.
    pub fn coordinates(&self, z: &[F]) -> Option<Vec<F>> {
        if !self.cycles.contains(z) {
            return None;
        }
        match &self.solver {
            None => Some(Vec::new()),
            Some(s) => {
                let x = s.solve(z)?;
                Some(x[..self.dim()].to_vec())
            }
        }
    }
}

/// Homology of a complex over a field, degree by degree.
#[derive(Clone, Debug)]
pub struct FieldHomology<F> {
    pub complex: FieldComplex<F>,
    pub degrees: Vec<HomologySpace<F>>,
}

impl<F: crate::scalar::FieldScalar> FieldHomology<F> {
    pub fn compute(complex: FieldComplex<F>) -> Self {
        let dims = complex.num_dims();
        let mut degrees = Vec::with_capacity(dims);
        for n in 0..dims {
            let r = complex.ranks[n];
            let full = Subspace::span(&Matrix::identity(r));
            let cycles = if n == 0 {
                full
            } else {
                full.preimage(&complex.boundaries[n], &complex.relations[n - 1])
            };
            let mut bounds = complex.relations[n].clone();
            if n + 1 < dims && complex.boundaries[n + 1].rows() > 0 {
                bounds = bounds.sum(&Subspace::span(&complex.boundaries[n + 1]));
            }
            // Extend a basis of the boundaries to one of the cycles.
            let mut acc = bounds.clone();
            let mut reps = Matrix::zeros(0, r);
            for z in cycles.basis().iter_rows() {
                if !acc.contains(z) {
                    reps.push_row(z);
                    acc = acc.sum(&Subspace::span(&Matrix::from_rows(r, vec![z.to_vec()])));
                }
            }
            let solver = (reps.rows() > 0).then(|| {
                RowSolver::new(&reps.vstack(bounds.basis())).expect("independent by construction")
            });
            degrees.push(HomologySpace {
                reps,
                cycles,
                boundaries: bounds,
                solver,
            });
        }
        FieldHomology { complex, degrees }
    }

    pub fn of<K: CoefficientField<Elem = F>>(c: &CoordComplex, k: &K) -> Result<Self> {
        c.validate()?;
        Ok(FieldHomology::compute(FieldComplex::new(c, k)))
    }

    pub fn num_dims(&self) -> usize {
        self.degrees.len()
    }

    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(HomologySpace::dim).collect()
    }

    /// Dimension in degree `n`, zero outside the stored range.
    pub fn dim(&self, n: usize) -> usize {
        self.degrees.get(n).map_or(0, HomologySpace::dim)
    }

    pub fn groups(&self) -> Vec<HomologyGroup> {
        self.betti().into_iter().map(HomologyGroup::free).collect()
    }
}

/// Matrix of `f_*` in degree `n` (rows: source classes, columns: target classes).
pub fn induced_map<F: crate::scalar::FieldScalar, K: CoefficientField<Elem = F>>(
    f: &ChainMap,
    source: &FieldHomology<F>,
    target: &FieldHomology<F>,
    n: usize,
    k: &K,
) -> Result<Matrix<F>> {
    let sdim = source.dim(n);
    let tdim = target.dim(n);
    let mut out = Matrix::zeros(0, tdim);
    if sdim == 0 {
        return Ok(out);
    }
    let m = embed(&f.maps[n], k);
    for z in source.degrees[n].reps.iter_rows() {
        let img = m.apply(z);
        let row = if tdim == 0 && n >= target.num_dims() {
            Vec::new()
        } else {
            target.degrees[n].coordinates(&img).ok_or_else(|| {
                Error::Integrity(format!("chain map sends a cycle to a non-cycle in degree {n}"))
            })?
        };
        out.push_row(&row);
    }
    Ok(out)
}

/// Rank and entries of an induced map, independent of the field type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InducedMap {
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub entries: Vec<Vec<String>>,
}

fn summarize<F: crate::scalar::FieldScalar + fmt::Display>(m: &Matrix<F>) -> InducedMap {
    InducedMap {
        rows: m.rows(),
        cols: m.cols(),
        rank: field::rank(m),
        entries: m
            .iter_rows()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect(),
    }
}

/// `f_*` in degree `n` over a field; integer coefficients are rejected.
pub fn induced_homology_map(
    f: &ChainMap,
    source: &CoordComplex,
    target: &CoordComplex,
    n: usize,
    coeff: CoefficientSpec,
) -> Result<InducedMap> {
    f.check(source, target)?;
    crate::with_field!(coeff, k => {
        let s = FieldHomology::of(source, &k)?;
        let t = FieldHomology::of(target, &k)?;
        Ok(summarize(&induced_map(f, &s, &t, n, &k)?))
    }, integers => Err(Error::Unsupported(
        "maps on homology are computed over fields only; use --coeff q or zp:<p>".into()
    )))
}

/// Homology of a presented complex in degrees `0..num_dims`.
pub fn homology(c: &CoordComplex, coeff: CoefficientSpec) -> Result<Vec<HomologyGroup>> {
    crate::with_field!(coeff, k => {
        Ok(FieldHomology::of(c, &k)?.groups())
    }, integers => {
        Ok(integer_homology(c)?.into_iter().map(|(g, _)| g).collect())
    })
}

/// `(total, sub)` complexes of a pair for the given flavor, over `Δ(total)`.
pub fn pair_complexes(pair: &HypergraphPair, flavor: Flavor) -> Result<(ChainComplex, ChainComplex)> {
    let basis = SimplexBasis::new(pair.total());
    let total = flavor.build(&basis, pair.total())?;
    let sub = flavor.build(&basis, pair.sub())?;
    Ok((total, sub))
}

pub fn relative_embedded_homology(
    pair: &HypergraphPair,
    coeff: CoefficientSpec,
    flavor: Flavor,
) -> Result<Vec<HomologyGroup>> {
    let (total, sub) = pair_complexes(pair, flavor)?;
    homology(&total.relative_to(&sub)?, coeff)
}

pub fn embedded_homology(h: &Hypergraph, coeff: CoefficientSpec) -> Result<Vec<HomologyGroup>> {
    let pair = HypergraphPair::new(h.clone(), Hypergraph::new())?;
    relative_embedded_homology(&pair, coeff, Flavor::Inf)
}

/// Betti numbers of a list of groups.
pub fn bettis(groups: &[HomologyGroup]) -> Vec<usize> {
    groups.iter().map(|g| g.betti).collect()
}

/// Connecting map `H_n(P3) -> H_{n-1}(P1)` for a short exact sequence
/// `0 -> P1 -α-> P2 -β-> P3 -> 0`, by lifting, taking the boundary and
/// pulling back.
pub fn connecting_map<F: crate::scalar::FieldScalar, K: CoefficientField<Elem = F>>(
    p1: &FieldHomology<F>,
    p2: &FieldHomology<F>,
    p3: &FieldHomology<F>,
    alpha: &ChainMap,
    beta: &ChainMap,
    n: usize,
    k: &K,
) -> Result<Matrix<F>> {
    let tdim = if n == 0 { 0 } else { p1.dim(n - 1) };
    let mut out = Matrix::zeros(0, tdim);
    if p3.dim(n) == 0 || n == 0 {
        for _ in 0..p3.dim(n) {
            out.push_row(&[]);
        }
        return Ok(out);
    }
    let b = embed(&beta.maps[n], k);
    let a = embed(&alpha.maps[n - 1], k);
    let lift_system = b.vstack(p3.complex.relations[n].basis());
    let pull_system = a.vstack(p2.complex.relations[n - 1].basis());
    let r2 = p2.complex.ranks[n];
    let r1 = p1.complex.ranks[n - 1];
    for x in p3.degrees[n].reps.iter_rows() {
        let lift = field::solve_left(&lift_system, x)
            .ok_or_else(|| Error::Integrity(format!("cannot lift a degree-{n} class")))?;
        let lift = &lift[..r2];
        let w = p2.complex.boundaries[n].apply(lift);
        let y = field::solve_left(&pull_system, &w).ok_or_else(|| {
            Error::Integrity(format!("boundary of a lift is not in the image in degree {}", n - 1))
        })?;
        let y = &y[..r1];
        let c = p1.degrees[n - 1].coordinates(y).ok_or_else(|| {
            Error::Integrity(format!("pulled-back boundary is not a cycle in degree {}", n - 1))
        })?;
        out.push_row(&c);
    }
    Ok(out)
}

/// Relative homology of a pair through Inf and through Sup quotients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfSupReport {
    pub inf: Vec<HomologyGroup>,
    pub sup: Vec<HomologyGroup>,
    /// Inclusion `Inf(H)/Inf(A) -> Sup(H)/Sup(A)` induces an isomorphism over `Q`, per degree.
    pub rational_iso: Vec<bool>,
}

impl InfSupReport {
    pub fn holds(&self) -> bool {
        self.inf == self.sup && self.rational_iso.iter().all(|&b| b)
    }
}

/// Compares the integer groups of both quotients and checks that the
/// inclusion induces isomorphisms over the rationals.
pub fn inf_sup_check(pair: &HypergraphPair) -> Result<InfSupReport> {
    let basis = SimplexBasis::new(pair.total());
    let inf_h = ChainComplex::inf(&basis, pair.total())?;
    let sup_h = ChainComplex::sup(&basis, pair.total())?;
    let inf_q = inf_h.relative_to(&ChainComplex::inf(&basis, pair.sub())?)?;
    let sup_q = sup_h.relative_to(&ChainComplex::sup(&basis, pair.sub())?)?;
    let inf = homology(&inf_q, CoefficientSpec::Integers)?;
    let sup = homology(&sup_q, CoefficientSpec::Integers)?;
    let incl = inclusion_chain_map(&inf_h, &sup_h)?;
    incl.check(&inf_q, &sup_q)?;
    let k = crate::scalar::Rationals;
    let hi = FieldHomology::of(&inf_q, &k)?;
    let hs = FieldHomology::of(&sup_q, &k)?;
    let rational_iso = (0..hi.num_dims())
        .map(|n| {
            let m = induced_map(&incl, &hi, &hs, n, &k)?;
            Ok(m.rows() == m.cols() && field::rank(&m) == m.rows())
        })
        .collect::<Result<_>>()?;
    Ok(InfSupReport { inf, sup, rational_iso })
}
