//! Long exact sequences built constructively from short exact sequences of
//! presented complexes, and the identities that follow from them.
//!
//! Exactness is always checked over a field. Every map in a sequence is an
//! explicit matrix in the representative bases of [`FieldHomology`], so
//! `im = ker` is a subspace equality rather than a rank count.

use std::sync::Arc;

use serde::Serialize;

use crate::chain::{
    inclusion_chain_map, morphism_chain_map, ChainComplex, ChainMap, CoordComplex, Flavor, SimplexBasis,
};
use crate::error::{Error, Result};
use crate::homology::{
    connecting_map, embed, homology, induced_map, integer_presentations, FieldComplex, FieldHomology,
    HomologyGroup,
};
use crate::hypergraph::{Hyperedge, Hypergraph, HypergraphPair, HypergraphTriple, VertexMorphism};
use crate::lattice::field::{self, Subspace};
use crate::lattice::{IntegerMatrix, Matrix};
use crate::scalar::{CoefficientField, CoefficientSpec, FieldScalar, Rationals};

/// `0 -> P1 -α-> P2 -β-> P3 -> 0` in lattice coordinates.
#[derive(Clone, Debug)]
pub struct ShortExact {
    pub p1: CoordComplex,
    pub p2: CoordComplex,
    pub p3: CoordComplex,
    pub alpha: ChainMap,
    pub beta: ChainMap,
}

impl ShortExact {
    /// `0 -> M/I -> O/I -> O/M -> 0` for complexes `I ⊆ M ⊆ O` on one ambient.
    pub fn nested(outer: &ChainComplex, middle: &ChainComplex, inner: &ChainComplex) -> Result<Self> {
        let ses = ShortExact {
            p1: middle.relative_to(inner)?,
            p2: outer.relative_to(inner)?,
            p3: outer.relative_to(middle)?,
            alpha: inclusion_chain_map(middle, outer)?,
            beta: ChainMap::identity(&outer.ranks()),
        };
        ses.check_maps()?;
        Ok(ses)
    }

    pub fn check_maps(&self) -> Result<()> {
        self.alpha.check(&self.p1, &self.p2)?;
        self.beta.check(&self.p2, &self.p3)
    }

    pub fn num_dims(&self) -> usize {
        self.p2.num_dims()
    }

    /// Appends zero degrees up to `dims`.
    pub fn padded(&self, dims: usize) -> ShortExact {
        let pad = |m: &ChainMap| {
            let mut m = m.clone();
            while m.maps.len() < dims {
                m.maps.push(Matrix::zeros(0, 0));
            }
            m
        };
        ShortExact {
            p1: self.p1.padded(dims),
            p2: self.p2.padded(dims),
            p3: self.p3.padded(dims),
            alpha: pad(&self.alpha),
            beta: pad(&self.beta),
        }
    }

    /// Degreewise exactness of the chain-level sequence over `k`.
    pub fn chain_level_failures<K: CoefficientField>(&self, k: &K) -> Vec<String> {
        let mut failures = Vec::new();
        let rel = |c: &CoordComplex, n: usize| Subspace::span(&embed(&c.relations[n], k));
        let full = |r: usize| Subspace::<K::Elem>::span(&Matrix::identity(r));
        for n in 0..self.num_dims() {
            let (r1, r2, r3) = (rel(&self.p1, n), rel(&self.p2, n), rel(&self.p3, n));
            let a = embed(&self.alpha.maps[n], k);
            let b = embed(&self.beta.maps[n], k);
            if full(self.p1.ranks[n]).preimage(&a, &r2) != r1 {
                failures.push(format!("chain level: P1 -> P2 is not injective in degree {n}"));
            }
            let ker_b = full(self.p2.ranks[n]).preimage(&b, &r3);
            if ker_b != Subspace::span(&a).sum(&r2) {
                failures.push(format!("chain level: image of P1 differs from kernel to P3 in degree {n}"));
            }
            if Subspace::span(&b).sum(&r3) != full(self.p3.ranks[n]) {
                failures.push(format!("chain level: P2 -> P3 is not surjective in degree {n}"));
            }
        }
        failures
    }
}

/// The long exact sequence of a [`ShortExact`] over a field.
///
/// `i[n]: H_n(P1) -> H_n(P2)`, `j[n]: H_n(P2) -> H_n(P3)` and
/// `d[n]: H_n(P3) -> H_{n-1}(P1)` (with `d[0]` the zero map to `0`).
#[derive(Clone, Debug)]
pub struct LongExact<F> {
    pub homology: [FieldHomology<F>; 3],
    pub i: Vec<Matrix<F>>,
    pub j: Vec<Matrix<F>>,
    pub d: Vec<Matrix<F>>,
}

impl<F: FieldScalar + std::fmt::Display> LongExact<F> {
    pub fn new<K: CoefficientField<Elem = F>>(ses: &ShortExact, k: &K) -> Result<Self> {
        let h1 = FieldHomology::of(&ses.p1, k)?;
        let h2 = FieldHomology::of(&ses.p2, k)?;
        let h3 = FieldHomology::of(&ses.p3, k)?;
        let dims = ses.num_dims();
        let mut i = Vec::with_capacity(dims);
        let mut j = Vec::with_capacity(dims);
        let mut d = Vec::with_capacity(dims);
        for n in 0..dims {
            i.push(induced_map(&ses.alpha, &h1, &h2, n, k)?);
            j.push(induced_map(&ses.beta, &h2, &h3, n, k)?);
            d.push(connecting_map(&h1, &h2, &h3, &ses.alpha, &ses.beta, n, k)?);
        }
        Ok(LongExact {
            homology: [h1, h2, h3],
            i,
            j,
            d,
        })
    }

    pub fn num_dims(&self) -> usize {
        self.i.len()
    }

    pub fn dim(&self, which: usize, n: usize) -> usize {
        self.homology[which].dim(n)
    }

    /// Junctions, identities and ranks, from the top degree down.
    pub fn report(&self, label: &str, names: [&str; 3], coeff: CoefficientSpec) -> ExactnessReport {
        let mut r = ExactnessReport::new(label, coeff);
        let dims = self.num_dims();
        for n in (0..dims).rev() {
            for (t, name) in names.iter().enumerate() {
                r.groups.push(GroupDim {
                    label: format!("H_{n}({name})"),
                    degree: n,
                    dim: self.dim(t, n),
                });
            }
            r.maps.push(MapRank::of("i", n, &self.i[n]));
            r.maps.push(MapRank::of("j", n, &self.j[n]));
            r.maps.push(MapRank::of("d", n, &self.d[n]));

            let incoming = if n + 1 < dims {
                self.d[n + 1].clone()
            } else {
                Matrix::zeros(0, self.dim(0, n))
            };
            r.push_junction(format!("H_{n}({})", names[0]), n, &incoming, &self.i[n]);
            r.push_junction(format!("H_{n}({})", names[1]), n, &self.i[n], &self.j[n]);
            r.push_junction(format!("H_{n}({})", names[2]), n, &self.j[n], &self.d[n]);

            if n >= 1 {
                // Second route: composite zero plus rank-nullity.
                let rank_j = field::rank(&self.j[n]);
                let rank_d = field::rank(&self.d[n]);
                let rank_i = field::rank(&self.i[n - 1]);
                r.identities.push(IdentityCheck {
                    identity: "Ker d_n = Im j_n".into(),
                    degree: n,
                    holds: self.j[n].mul(&self.d[n]).is_zero() && rank_j + rank_d == self.dim(2, n),
                });
                r.identities.push(IdentityCheck {
                    identity: "Im d_n = Ker i_{n-1}".into(),
                    degree: n,
                    holds: self.d[n].mul(&self.i[n - 1]).is_zero() && rank_d + rank_i == self.dim(0, n - 1),
                });
            }
        }
        r
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupDim {
    pub label: String,
    pub degree: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapRank {
    pub label: String,
    pub degree: usize,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
}

impl MapRank {
    fn of<F: FieldScalar>(label: &str, degree: usize, m: &Matrix<F>) -> Self {
        MapRank {
            label: label.into(),
            degree,
            rows: m.rows(),
            cols: m.cols(),
            rank: field::rank(m),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Junction {
    pub position: String,
    pub degree: usize,
    pub image_dim: usize,
    pub kernel_dim: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub degree: usize,
    pub holds: bool,
}

/// Outcome of checking one long exact sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub label: String,
    pub coefficients: String,
    /// Set when a hypothesis fails; no exactness claim is made then.
    pub precondition: Option<String>,
    pub groups: Vec<GroupDim>,
    pub maps: Vec<MapRank>,
    pub junctions: Vec<Junction>,
    pub identities: Vec<IdentityCheck>,
    pub failures: Vec<String>,
}

impl ExactnessReport {
    fn new(label: &str, coeff: CoefficientSpec) -> Self {
        ExactnessReport {
            label: label.into(),
            coefficients: coeff.to_string(),
            precondition: None,
            groups: Vec::new(),
            maps: Vec::new(),
            junctions: Vec::new(),
            identities: Vec::new(),
            failures: Vec::new(),
        }
    }

    /// True when the hypotheses hold and every check passed.
    pub fn is_exact(&self) -> bool {
        self.precondition.is_none()
            && self.failures.is_empty()
            && self.junctions.iter().all(|j| j.exact)
            && self.identities.iter().all(|i| i.holds)
    }

    /// Keeps only the entries in degrees `lo..=hi`.
    pub fn restrict(&mut self, lo: usize, hi: usize) {
        let keep = |n: usize| (lo..=hi).contains(&n);
        self.groups.retain(|g| keep(g.degree));
        self.maps.retain(|m| keep(m.degree));
        self.junctions.retain(|j| keep(j.degree));
        self.identities.retain(|i| keep(i.degree));
        self.failures.retain(|f| failure_degree(f).is_none_or(keep));
    }

    pub fn group_dim(&self, label: &str) -> Option<usize> {
        self.groups.iter().find(|g| g.label == label).map(|g| g.dim)
    }

    fn push_junction<F: FieldScalar + std::fmt::Display>(
        &mut self,
        position: String,
        degree: usize,
        incoming: &Matrix<F>,
        outgoing: &Matrix<F>,
    ) {
        let ambient = outgoing.rows();
        debug_assert_eq!(incoming.cols(), ambient);
        let im = Subspace::span(incoming);
        let ker = Subspace::span(&field::left_kernel(outgoing));
        let exact = im == ker;
        if !exact {
            let witness = ker
                .basis()
                .iter_rows()
                .find(|v| !im.contains(v))
                .map(|v| format!("kernel vector {} is not in the image", show(v)))
                .or_else(|| {
                    im.basis()
                        .iter_rows()
                        .find(|v| !ker.contains(v))
                        .map(|v| format!("image vector {} is not in the kernel", show(v)))
                })
                .unwrap_or_default();
            self.failures.push(format!("not exact at {position} (degree {degree}): {witness}"));
        }
        self.junctions.push(Junction {
            position,
            degree,
            image_dim: im.dim(),
            kernel_dim: ker.dim(),
            exact,
        });
    }
}

/// Degree named in a failure message ("... degree N ...").
fn failure_degree(msg: &str) -> Option<usize> {
    let rest = &msg[msg.find("degree ")? + "degree ".len()..];
    let digits: String = rest.chars().take_while(char::is_ascii_digit).collect();
    digits.parse().ok()
}

fn show<F: std::fmt::Display>(v: &[F]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn require_field(coeff: CoefficientSpec) -> Error {
    Error::Unsupported(format!(
        "exactness is checked over a field; got coefficients '{coeff}' (use q or zp:<p>)"
    ))
}

/// Long exact sequence of the pair `(h, a)`, or of the triple `(h, a, b)`,
/// on Inf complexes.
pub fn les_check(
    h: &Hypergraph,
    a: &Hypergraph,
    b: Option<&Hypergraph>,
    coeff: CoefficientSpec,
) -> Result<ExactnessReport> {
    let inner = b.cloned().unwrap_or_default();
    HypergraphTriple::new(h.clone(), a.clone(), inner.clone())?;
    let (label, names) = match b {
        None => ("pair", ["A", "H", "H,A"]),
        Some(_) => ("triple", ["A,B", "H,B", "H,A"]),
    };
    crate::with_field!(coeff, k => {
        let basis = SimplexBasis::new(h);
        let ses = ShortExact::nested(
            &ChainComplex::inf(&basis, h)?,
            &ChainComplex::inf(&basis, a)?,
            &ChainComplex::inf(&basis, &inner)?,
        )?;
        let les = LongExact::new(&ses, &k)?;
        let mut r = les.report(label, names, coeff);
        r.failures.extend(ses.chain_level_failures(&k));
        Ok(r)
    }, integers => Err(require_field(coeff)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareCheck {
    pub square: String,
    pub degree: usize,
    pub commutes: bool,
}

/// The δ-row, embedded row and Δ-row of the sequence of a pair or triple,
/// with the squares between consecutive rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LesDiagramReport {
    pub rows: Vec<ExactnessReport>,
    pub squares: Vec<SquareCheck>,
}

impl LesDiagramReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(ExactnessReport::is_exact) && self.squares.iter().all(|s| s.commutes)
    }
}

/// Flavors of the δ-row, the embedded row and the Δ-row.
pub const ROW_FLAVORS: [Flavor; 3] = [Flavor::Lower, Flavor::Inf, Flavor::Delta];

pub fn row_name(f: Flavor) -> &'static str {
    match f {
        Flavor::Lower => "delta-row",
        Flavor::Delta => "Delta-row",
        _ => "embedded-row",
    }
}

pub fn les_diagram_check(
    h: &Hypergraph,
    a: &Hypergraph,
    b: Option<&Hypergraph>,
    coeff: CoefficientSpec,
) -> Result<LesDiagramReport> {
    let inner = b.cloned().unwrap_or_default();
    HypergraphTriple::new(h.clone(), a.clone(), inner.clone())?;
    let names = match b {
        None => ["A", "H", "H,A"],
        Some(_) => ["A,B", "H,B", "H,A"],
    };
    crate::with_field!(coeff, k => {
        let basis = SimplexBasis::new(h);
        diagram_rows(&basis, [h, a, &inner], names, coeff, &k)
    }, integers => Err(require_field(coeff)))
}

fn diagram_rows<K: CoefficientField>(
    basis: &Arc<SimplexBasis>,
    hs: [&Hypergraph; 3],
    names: [&str; 3],
    coeff: CoefficientSpec,
    k: &K,
) -> Result<LesDiagramReport> {
    Ok(diagram_parts(basis, hs, names, coeff, k)?.report)
}

/// The three rows of a diagram together with the complexes and sequences
/// they were built from, in [`ROW_FLAVORS`] order.
pub(crate) struct DiagramParts<F> {
    pub report: LesDiagramReport,
    pub complexes: Vec<[ChainComplex; 3]>,
    pub sequences: Vec<(ShortExact, LongExact<F>)>,
}

pub(crate) fn diagram_parts<K: CoefficientField>(
    basis: &Arc<SimplexBasis>,
    [h, a, b]: [&Hypergraph; 3],
    names: [&str; 3],
    coeff: CoefficientSpec,
    k: &K,
) -> Result<DiagramParts<K::Elem>> {
    let mut complexes = Vec::new();
    let mut sequences = Vec::new();
    let mut rows = Vec::new();
    for f in ROW_FLAVORS {
        let c = [f.build(basis, h)?, f.build(basis, a)?, f.build(basis, b)?];
        let ses = ShortExact::nested(&c[0], &c[1], &c[2])?;
        let les = LongExact::new(&ses, k)?;
        let mut r = les.report(row_name(f), names, coeff);
        r.failures.extend(ses.chain_level_failures(k));
        rows.push(r);
        complexes.push(c);
        sequences.push((ses, les));
    }
    let mut squares = Vec::new();
    for w in 0..2 {
        let v1 = inclusion_chain_map(&complexes[w][1], &complexes[w + 1][1])?;
        let v2 = inclusion_chain_map(&complexes[w][0], &complexes[w + 1][0])?;
        let step = format!("{}->{}", row_name(ROW_FLAVORS[w]), row_name(ROW_FLAVORS[w + 1]));
        squares.extend(ladder_squares(&sequences[w], &sequences[w + 1], [&v1, &v2, &v2], &step, k)?);
    }
    Ok(DiagramParts {
        report: LesDiagramReport { rows, squares },
        complexes,
        sequences,
    })
}

/// Squares between two long exact sequences joined by chain maps
/// `v[t]: P_t -> P'_t` that commute with the short exact sequences.
pub fn ladder_squares<F: FieldScalar + std::fmt::Display, K: CoefficientField<Elem = F>>(
    lo: &(ShortExact, LongExact<F>),
    hi: &(ShortExact, LongExact<F>),
    v: [&ChainMap; 3],
    name: &str,
    k: &K,
) -> Result<Vec<SquareCheck>> {
    v[0].check(&lo.0.p1, &hi.0.p1)?;
    v[1].check(&lo.0.p2, &hi.0.p2)?;
    v[2].check(&lo.0.p3, &hi.0.p3)?;
    let (ll, hl) = (&lo.1, &hi.1);
    let dims = ll.num_dims();
    let mut vert = Vec::with_capacity(dims);
    for n in 0..dims {
        vert.push([
            induced_map(v[0], &ll.homology[0], &hl.homology[0], n, k)?,
            induced_map(v[1], &ll.homology[1], &hl.homology[1], n, k)?,
            induced_map(v[2], &ll.homology[2], &hl.homology[2], n, k)?,
        ]);
    }
    let mut squares = Vec::new();
    for n in 0..dims {
        let [v1n, v2n, v3n] = &vert[n];
        squares.push(SquareCheck {
            square: format!("{name} i"),
            degree: n,
            commutes: ll.i[n].mul(v2n) == v1n.mul(&hl.i[n]),
        });
        squares.push(SquareCheck {
            square: format!("{name} j"),
            degree: n,
            commutes: ll.j[n].mul(v3n) == v2n.mul(&hl.j[n]),
        });
        if n >= 1 {
            squares.push(SquareCheck {
                square: format!("{name} d"),
                degree: n,
                commutes: ll.d[n].mul(&vert[n - 1][0]) == v3n.mul(&hl.d[n]),
            });
        }
    }
    Ok(squares)
}

/// Checks `∂'_* ∘ f_* = (f|_A)_* ∘ ∂_*` in degree `degree` for a morphism of pairs.
pub fn naturality_check(
    f: &VertexMorphism,
    source: &HypergraphPair,
    target: &HypergraphPair,
    degree: usize,
    coeff: CoefficientSpec,
) -> Result<bool> {
    f.check_pair_morphism(source, target)?;
    crate::with_field!(coeff, k => naturality_inner(f, source, target, degree, &k),
        integers => Err(require_field(coeff)))
}

fn naturality_inner<K: CoefficientField>(
    f: &VertexMorphism,
    source: &HypergraphPair,
    target: &HypergraphPair,
    n: usize,
    k: &K,
) -> Result<bool> {
    let sb = SimplexBasis::new(source.total());
    let tb = SimplexBasis::new(target.total());
    let s = [
        ChainComplex::inf(&sb, source.total())?,
        ChainComplex::inf(&sb, source.sub())?,
        ChainComplex::inf(&sb, &Hypergraph::new())?,
    ];
    let t = [
        ChainComplex::inf(&tb, target.total())?,
        ChainComplex::inf(&tb, target.sub())?,
        ChainComplex::inf(&tb, &Hypergraph::new())?,
    ];
    let invalid = |e: Error| Error::InvalidMorphism(e.to_string());
    let f_total = morphism_chain_map(f, &s[0], &t[0])?;
    let f_sub = morphism_chain_map(f, &s[1], &t[1])?;
    let dims = f_total.maps.len();
    let ses_s = ShortExact::nested(&s[0], &s[1], &s[2])?.padded(dims);
    let ses_t = ShortExact::nested(&t[0], &t[1], &t[2])?.padded(dims);
    f_sub.check(&ses_s.p1, &ses_t.p1).map_err(invalid)?;
    f_total.check(&ses_s.p3, &ses_t.p3).map_err(invalid)?;
    if n == 0 || n >= dims {
        return Ok(true);
    }
    let ls = LongExact::new(&ses_s, k)?;
    let lt = LongExact::new(&ses_t, k)?;
    let f3 = induced_map(&f_total, &ls.homology[2], &lt.homology[2], n, k)?;
    let f1 = induced_map(&f_sub, &ls.homology[0], &lt.homology[0], n - 1, k)?;
    Ok(ls.d[n].mul(&f1) == f3.mul(&lt.d[n]))
}

/// Hypothesis of the relative Mayer–Vietoris sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MvHypothesis {
    pub totals_ok: bool,
    pub subs_ok: bool,
    pub witness: Option<String>,
}

impl MvHypothesis {
    pub fn holds(&self) -> bool {
        self.totals_ok && self.subs_ok
    }
}

fn intersection_violation(x: &Hypergraph, y: &Hypergraph) -> Option<(Hyperedge, Hyperedge)> {
    let both = x.intersection(y);
    for s in x.iter() {
        for t in y.iter() {
            if let Some(c) = s.intersection(t) {
                if !both.contains(&c) {
                    return Some((s.clone(), t.clone()));
                }
            }
        }
    }
    None
}

/// Every pairwise intersection of hyperedges is empty or lies in both
/// hypergraphs, for the totals and for the subs.
pub fn mv_hypothesis(p: &HypergraphPair, q: &HypergraphPair) -> MvHypothesis {
    let t = intersection_violation(p.total(), q.total());
    let s = intersection_violation(p.sub(), q.sub());
    let witness = t
        .as_ref()
        .map(|(a, b)| format!("totals: {a:?} ∩ {b:?} is not a common hyperedge"))
        .or_else(|| s.as_ref().map(|(a, b)| format!("subs: {a:?} ∩ {b:?} is not a common hyperedge")));
    MvHypothesis {
        totals_ok: t.is_none(),
        subs_ok: s.is_none(),
        witness,
    }
}

/// The relative Mayer–Vietoris sequence
/// `H_n(H∩H', A∩A') -> H_n(H,A) ⊕ H_n(H',A') -> H_n(H∪H', A∪A') -> ...`.
pub fn mayer_vietoris_check(
    p: &HypergraphPair,
    q: &HypergraphPair,
    coeff: CoefficientSpec,
) -> Result<ExactnessReport> {
    let hyp = mv_hypothesis(p, q);
    if !hyp.holds() {
        let mut r = ExactnessReport::new("mayer-vietoris", coeff);
        r.precondition = Some(format!(
            "intersection hypothesis fails ({})",
            hyp.witness.unwrap_or_default()
        ));
        return Ok(r);
    }
    crate::with_field!(coeff, k => {
        let ses = mv_short_exact(p, q)?;
        let les = LongExact::new(&ses, &k)?;
        let mut r = les.report("mayer-vietoris", ["H∩H',A∩A'", "(H,A)+(H',A')", "H∪H',A∪A'"], coeff);
        r.failures.extend(ses.chain_level_failures(&k));
        Ok(r)
    }, integers => Err(require_field(coeff)))
}

/// `0 -> Inf(H∩H')/Inf(A∩A') -> Inf(H)/Inf(A) ⊕ Inf(H')/Inf(A') -> Inf(H∪H')/Inf(A∪A') -> 0`.
pub fn mv_short_exact(p: &HypergraphPair, q: &HypergraphPair) -> Result<ShortExact> {
    let (h, a, h2, a2) = (p.total(), p.sub(), q.total(), q.sub());
    let basis = SimplexBasis::new(&h.union(h2));
    let inf = |x: &Hypergraph| ChainComplex::inf(&basis, x);
    let (ih, ia, ih2, ia2) = (inf(h)?, inf(a)?, inf(h2)?, inf(a2)?);
    let (cap_h, cap_a) = (inf(&h.intersection(h2))?, inf(&a.intersection(a2))?);
    let (cup_h, cup_a) = (inf(&h.union(h2))?, inf(&a.union(a2))?);
    let alpha = inclusion_chain_map(&cap_h, &ih)?.pair(&inclusion_chain_map(&cap_h, &ih2)?);
    let beta = inclusion_chain_map(&ih, &cup_h)?.stack(&inclusion_chain_map(&ih2, &cup_h)?.negate());
    let ses = ShortExact {
        p1: cap_h.relative_to(&cap_a)?,
        p2: ih.relative_to(&ia)?.direct_sum(&ih2.relative_to(&ia2)?),
        p3: cup_h.relative_to(&cup_a)?,
        alpha,
        beta,
    };
    ses.check_maps()?;
    Ok(ses)
}

/// One step of folding a list of pairs into their union.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MvStep {
    /// Number of pairs already merged into the left-hand side.
    pub merged: usize,
    pub hypothesis: MvHypothesis,
    pub exact: bool,
    /// Betti numbers of the intersection, the two sides and the union.
    pub intersection: Vec<usize>,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub union: Vec<usize>,
}

impl MvStep {
    /// Whether `H_n(union) = H_n(left) ⊕ H_n(right)` for every `n ≥ from`.
    pub fn splits_from(&self, from: usize) -> bool {
        let get = |v: &[usize], n: usize| v.get(n).copied().unwrap_or(0);
        let top = self.union.len().max(self.left.len()).max(self.right.len());
        (from..top).all(|n| get(&self.union, n) == get(&self.left, n) + get(&self.right, n))
    }
}

/// Merges `pairs` one at a time, running the Mayer–Vietoris check at each step.
pub fn mayer_vietoris_induction(pairs: &[HypergraphPair], coeff: CoefficientSpec) -> Result<Vec<MvStep>> {
    let Some(first) = pairs.first() else {
        return Ok(Vec::new());
    };
    let betti = |x: &HypergraphPair| -> Result<Vec<usize>> {
        Ok(crate::homology::relative_embedded_homology(x, coeff, Flavor::Inf)?
            .iter()
            .map(|g| g.betti)
            .collect())
    };
    let mut acc = first.clone();
    let mut steps = Vec::new();
    for (idx, next) in pairs.iter().enumerate().skip(1) {
        let hypothesis = mv_hypothesis(&acc, next);
        let report = mayer_vietoris_check(&acc, next, coeff)?;
        let union = HypergraphPair::new(acc.total().union(next.total()), acc.sub().union(next.sub()))?;
        let cap = HypergraphPair::new(
            acc.total().intersection(next.total()),
            acc.sub().intersection(next.sub()),
        )?;
        steps.push(MvStep {
            merged: idx,
            hypothesis,
            exact: report.is_exact(),
            intersection: betti(&cap)?,
            left: betti(&acc)?,
            right: betti(next)?,
            union: betti(&union)?,
        });
        acc = union;
    }
    Ok(steps)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubadditivityRow {
    pub degree: usize,
    /// `rank H_n(H, B)`.
    pub h_b: usize,
    /// `rank H_n(H, A)`.
    pub h_a: usize,
    /// `rank H_n(A, B)`.
    pub a_b: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubadditivityReport {
    pub rows: Vec<SubadditivityRow>,
}

impl SubadditivityReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }
}

/// `rank H_n(H, B) ≤ rank H_n(H, A) + rank H_n(A, B)` in every degree.
pub fn subadditivity_check(h: &Hypergraph, a: &Hypergraph, b: &Hypergraph) -> Result<SubadditivityReport> {
    HypergraphTriple::new(h.clone(), a.clone(), b.clone())?;
    let basis = SimplexBasis::new(h);
    let (ih, ia, ib) = (
        ChainComplex::inf(&basis, h)?,
        ChainComplex::inf(&basis, a)?,
        ChainComplex::inf(&basis, b)?,
    );
    let rank = |x: &ChainComplex, y: &ChainComplex| -> Result<Vec<usize>> {
        Ok(homology(&x.relative_to(y)?, CoefficientSpec::Rationals)?
            .iter()
            .map(|g| g.betti)
            .collect())
    };
    let (hb, ha, ab) = (rank(&ih, &ib)?, rank(&ih, &ia)?, rank(&ia, &ib)?);
    let rows = (0..basis.num_dims())
        .map(|n| SubadditivityRow {
            degree: n,
            h_b: hb[n],
            h_a: ha[n],
            a_b: ab[n],
            holds: hb[n] <= ha[n] + ab[n],
        })
        .collect();
    Ok(SubadditivityReport { rows })
}

/// `H_*(H^n, H^{n-1})` for one `n`, against `rank Inf_n(H)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkeletalRow {
    pub n: usize,
    pub groups: Vec<HomologyGroup>,
    pub inf_rank: usize,
    pub lemma_holds: bool,
}

/// A chain complex assembled from connecting maps of skeletal triples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellComplex {
    pub row: String,
    pub coefficients: String,
    pub ranks: Vec<usize>,
    /// `boundaries[n]` is `ranks[n] x ranks[n-1]`, entries rendered exactly.
    pub boundaries: Vec<Vec<Vec<String>>>,
    pub is_complex: bool,
    pub homology: Vec<HomologyGroup>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellStructure {
    pub coefficients: String,
    pub skeletal: Vec<SkeletalRow>,
    /// The middle complex `D(H)`.
    pub cell_complex: CellComplex,
    pub embedded: Vec<HomologyGroup>,
    /// `H_*(D(H))` equals the embedded homology (groups over `Z`, dimensions over a field).
    pub comparison_holds: bool,
    /// The δ- and Δ-rows, over the given field or over `Q` for integer input.
    pub rows: Vec<CellComplex>,
}

impl CellStructure {
    pub fn holds(&self) -> bool {
        self.skeletal.iter().all(|r| r.lemma_holds)
            && self.comparison_holds
            && self.cell_complex.is_complex
            && self.rows.iter().all(|r| r.is_complex)
    }
}

fn render_matrix<T: Clone + std::fmt::Display>(m: &Matrix<T>) -> Vec<Vec<String>> {
    m.iter_rows().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

/// Skeletal homology table, the cell complex `D(H)` and the outer rows.
pub fn cell_structure(h: &Hypergraph, coeff: CoefficientSpec) -> Result<CellStructure> {
    let basis = SimplexBasis::new(h);
    let dims = basis.num_dims();
    let skeleta = Skeleta::new(h, dims);
    let inf = ChainComplex::inf(&basis, h)?;
    let inf_ranks = inf.ranks();

    let mut skeletal = Vec::with_capacity(dims);
    for (n, &inf_rank) in inf_ranks.iter().enumerate() {
        let x = ChainComplex::inf(&basis, skeleta.get(n as isize))?;
        let y = ChainComplex::inf(&basis, skeleta.get(n as isize - 1))?;
        let groups = homology(&x.relative_to(&y)?, coeff)?;
        let lemma_holds = groups.iter().enumerate().all(|(i, g)| {
            if i == n {
                g.betti == inf_rank && g.torsion.is_empty()
            } else {
                g.is_zero()
            }
        });
        skeletal.push(SkeletalRow {
            n,
            groups,
            inf_rank,
            lemma_holds,
        });
    }

    let embedded = homology(&inf.coords(), coeff)?;
    let (cell_complex, rows) = crate::with_field!(coeff, k => {
        let d = field_cell_complex(&basis, &skeleta, Flavor::Inf, coeff, &k)?;
        let rows = [Flavor::Lower, Flavor::Delta]
            .into_iter()
            .map(|f| field_cell_complex(&basis, &skeleta, f, coeff, &k))
            .collect::<Result<Vec<_>>>()?;
        (d, rows)
    }, integers => {
        let d = integer_cell_complex(&basis, &skeleta)?;
        let q = CoefficientSpec::Rationals;
        let rows = [Flavor::Lower, Flavor::Delta]
            .into_iter()
            .map(|f| field_cell_complex(&basis, &skeleta, f, q, &Rationals))
            .collect::<Result<Vec<_>>>()?;
        (d, rows)
    });
    let comparison_holds = cell_complex.homology == embedded;
    Ok(CellStructure {
        coefficients: coeff.to_string(),
        skeletal,
        cell_complex,
        embedded,
        comparison_holds,
        rows,
    })
}

struct Skeleta {
    levels: Vec<Hypergraph>,
    empty: Hypergraph,
}

impl Skeleta {
    fn new(h: &Hypergraph, dims: usize) -> Self {
        Skeleta {
            levels: (0..dims).map(|n| h.skeleton(n)).collect(),
            empty: Hypergraph::new(),
        }
    }

    /// `H^n`, empty for negative `n`.
    fn get(&self, n: isize) -> &Hypergraph {
        if n < 0 {
            &self.empty
        } else {
            &self.levels[n as usize]
        }
    }
}

fn field_cell_complex<K: CoefficientField>(
    basis: &Arc<SimplexBasis>,
    skeleta: &Skeleta,
    flavor: Flavor,
    coeff: CoefficientSpec,
    k: &K,
) -> Result<CellComplex> {
    let dims = basis.num_dims();
    let x = |n: isize| flavor.build(basis, skeleta.get(n));
    let mut ranks = Vec::with_capacity(dims);
    let mut boundaries: Vec<Matrix<K::Elem>> = Vec::with_capacity(dims);
    let mut previous: Option<CoordComplex> = None;
    for n in 0..dims as isize {
        let ses = ShortExact::nested(&x(n)?, &x(n - 1)?, &x(n - 2)?)?;
        if let Some(prev) = &previous {
            if *prev != ses.p1 {
                return Err(Error::Integrity(format!("skeletal presentations disagree in degree {n}")));
            }
        }
        let h1 = FieldHomology::of(&ses.p1, k)?;
        let h2 = FieldHomology::of(&ses.p2, k)?;
        let h3 = FieldHomology::of(&ses.p3, k)?;
        let u = n as usize;
        ranks.push(h3.dim(u));
        boundaries.push(connecting_map(&h1, &h2, &h3, &ses.alpha, &ses.beta, u, k)?);
        previous = Some(ses.p3);
    }
    let is_complex = (2..dims).all(|n| boundaries[n].mul(&boundaries[n - 1]).is_zero());
    let homology = if is_complex {
        let fc = FieldComplex {
            ranks: ranks.clone(),
            boundaries: boundaries.clone(),
            relations: ranks.iter().map(|&r| Subspace::zero(r)).collect(),
        };
        FieldHomology::compute(fc).groups()
    } else {
        Vec::new()
    };
    Ok(CellComplex {
        row: row_name(flavor).into(),
        coefficients: coeff.to_string(),
        ranks,
        boundaries: boundaries.iter().map(render_matrix).collect(),
        is_complex,
        homology,
    })
}

/// `D(H)` over the integers: free generators of `H_n(H^n, H^{n-1})` and
/// boundaries read off as integral classes.
fn integer_cell_complex(basis: &Arc<SimplexBasis>, skeleta: &Skeleta) -> Result<CellComplex> {
    let dims = basis.num_dims();
    let levels = (-1..dims as isize)
        .map(|n| ChainComplex::inf(basis, skeleta.get(n)))
        .collect::<Result<Vec<_>>>()?;
    // levels[n + 1] is Inf(H^n).
    let mut presentations = Vec::with_capacity(dims);
    for n in 0..dims {
        let p = integer_presentations(&levels[n + 1].relative_to(&levels[n])?)?;
        presentations.push(p.into_iter().nth(n).expect("degree in range"));
    }
    let mut ranks = Vec::with_capacity(dims);
    let mut boundaries: Vec<IntegerMatrix> = Vec::with_capacity(dims);
    for n in 0..dims {
        let q = &presentations[n];
        let k = q.torsion.len();
        ranks.push(q.rank);
        let prev_rank = if n == 0 { 0 } else { presentations[n - 1].rank };
        let mut m = if n == 0 { Matrix::zeros(q.rank, 0) } else { Matrix::zeros(0, prev_rank) };
        if n > 0 {
            let top = &levels[n + 1];
            let below = &levels[n];
            for x in q.lift_basis.iter_rows().skip(k) {
                let chain = top.group(n).basis().apply(x);
                let bd = basis.boundary_of(n, &chain);
                let y = below.coordinates(n - 1, &bd).ok_or_else(|| {
                    Error::Integrity(format!("boundary of a degree-{n} cell leaves the lower skeleton"))
                })?;
                let (free, torsion) = presentations[n - 1].class_of(&y).ok_or_else(|| {
                    Error::Integrity(format!("boundary of a degree-{n} cell is not a relative cycle"))
                })?;
                if torsion.iter().any(|t| !num_traits::Zero::is_zero(t)) {
                    return Err(Error::Integrity("cell boundary has a torsion component".into()));
                }
                m.push_row(&free);
            }
        }
        boundaries.push(m);
    }
    let is_complex = (2..dims).all(|n| boundaries[n].mul(&boundaries[n - 1]).is_zero());
    let homology = if is_complex {
        let c = CoordComplex::from_boundaries(ranks.clone(), boundaries.clone())?;
        crate::homology::homology(&c, CoefficientSpec::Integers)?
    } else {
        Vec::new()
    };
    Ok(CellComplex {
        row: row_name(Flavor::Inf).into(),
        coefficients: CoefficientSpec::Integers.to_string(),
        ranks,
        boundaries: boundaries.iter().map(render_matrix).collect(),
        is_complex,
        homology,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Th1Row {
    pub n: usize,
    /// `dim H_n(ΔH, δH)`.
    pub delta_lower: usize,
    /// `dim H_n(ΔH)`.
    pub delta: usize,
    /// `dim H_{n-1}(δH)`.
    pub lower_below: usize,
    pub rank_identity: bool,
    /// `H_n(ΔH) -> H_n(ΔH, H)` is an isomorphism.
    pub iso_delta_pair: bool,
    /// `∂: H_n(H, δH) -> H_{n-1}(δH)` is an isomorphism.
    pub iso_lower_pair: bool,
    /// `0 -> H_n(ΔH) -> H_n(ΔH, δH) -> H_{n-1}(δH) -> 0` is exact.
    pub short_exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Th1Report {
    pub l: usize,
    pub m: usize,
    pub coefficients: String,
    /// `dim H_n(H)` for `l ≤ n ≤ m`.
    pub hypothesis_dims: Vec<usize>,
    pub applicable: bool,
    pub rows: Vec<Th1Row>,
    /// `(n, H_n(δH) -> H_n(ΔH) is zero)` for `l ≤ n ≤ m`.
    pub zero_maps: Vec<(usize, bool)>,
}

impl Th1Report {
    /// Vacuously true when the hypothesis does not hold.
    pub fn holds(&self) -> bool {
        !self.applicable
            || (self.zero_maps.iter().all(|z| z.1)
                && self.rows.iter().all(|r| {
                    r.rank_identity && r.iso_delta_pair && r.iso_lower_pair && r.short_exact
                }))
    }
}

/// Checks the short exact sequence relating `H_n(ΔH)`, `H_n(ΔH, δH)` and
/// `H_{n-1}(δH)` when `H_n(H) = 0` for `l ≤ n ≤ m`.
pub fn delta_h_proposition_check(h: &Hypergraph, l: usize, m: usize, coeff: CoefficientSpec) -> Result<Th1Report> {
    crate::with_field!(coeff, k => th1_inner(h, l, m, coeff, &k), integers => Err(require_field(coeff)))
}

fn th1_inner<K: CoefficientField>(
    h: &Hypergraph,
    l: usize,
    m: usize,
    coeff: CoefficientSpec,
    k: &K,
) -> Result<Th1Report> {
    let basis = SimplexBasis::new(h);
    let delta = ChainComplex::delta(&basis, h)?;
    let inf = ChainComplex::inf(&basis, h)?;
    let lower = ChainComplex::lower(&basis, h)?;
    let empty = ChainComplex::inf(&basis, &Hypergraph::new())?;
    // (H ⊆ ΔH): i', j', ∂'.
    let les_a = LongExact::new(&ShortExact::nested(&delta, &inf, &empty)?, k)?;
    // (δH ⊆ H): i, j, ∂.
    let les_b = LongExact::new(&ShortExact::nested(&inf, &lower, &empty)?, k)?;
    // (δH ⊆ ΔH): i'', j'', ∂''.
    let les_c = LongExact::new(&ShortExact::nested(&delta, &lower, &empty)?, k)?;

    let hypothesis_dims: Vec<usize> = (l..=m).map(|n| les_a.dim(0, n)).collect();
    let applicable = m > l && hypothesis_dims.iter().all(|&d| d == 0);
    let mut report = Th1Report {
        l,
        m,
        coefficients: coeff.to_string(),
        hypothesis_dims,
        applicable,
        rows: Vec::new(),
        zero_maps: Vec::new(),
    };
    if !applicable {
        return Ok(report);
    }
    let dims = basis.num_dims();
    let rank_at = |v: &[Matrix<K::Elem>], n: usize| v.get(n).map_or(0, field::rank);
    for n in l..=m {
        report.zero_maps.push((n, n >= dims || les_c.i[n].is_zero()));
    }
    for n in l + 1..=m {
        let delta_dim = les_c.dim(1, n);
        let delta_lower = les_c.dim(2, n);
        let lower_below = les_c.dim(0, n - 1);
        let jp = rank_at(&les_a.j, n);
        let db = rank_at(&les_b.d, n);
        let jc = rank_at(&les_c.j, n);
        let dc = rank_at(&les_c.d, n);
        report.rows.push(Th1Row {
            n,
            delta_lower,
            delta: delta_dim,
            lower_below,
            rank_identity: delta_lower == delta_dim + lower_below,
            iso_delta_pair: jp == delta_dim && jp == les_a.dim(2, n),
            iso_lower_pair: db == les_b.dim(2, n) && db == les_b.dim(0, n - 1),
            short_exact: jc == delta_dim && dc == lower_below && jc + dc == delta_lower,
        });
    }
    Ok(report)
}
