//! Filtrations of hypergraphs and their persistence: one-parameter barcodes
//! from persistent ranks, relative persistence along a filtration of
//! subspaces, the persistent long exact sequence of a pair, and the
//! two-parameter rank invariant of a sublevel filtration.
//!
//! Everything is over a field. Persistent ranks are ranks of maps induced
//! directly by inclusions `step_i -> step_j`, and barcodes are read off them
//! by inclusion-exclusion.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::chain::{inclusion_chain_map, ChainComplex, ChainMap, CoordComplex, Flavor, SimplexBasis};
use crate::error::{Error, Result};
use crate::homology::{induced_map, FieldHomology};
use crate::hypergraph::{Hyperedge, Hypergraph, HypergraphPair};
use crate::lattice::field;
use crate::scalar::{CoefficientField, CoefficientSpec, FieldScalar};
use crate::sequences::{diagram_parts, ladder_squares, row_name, LesDiagramReport, SquareCheck, ROW_FLAVORS};
use crate::topology::{closure, core, interior, neighborhood, CoreIteration};

/// A nested sequence of hypergraphs `step_0 ⊆ step_1 ⊆ ...` with a label and
/// an exact index value per step.
#[derive(Clone, Debug, PartialEq)]
pub struct Filtration {
    steps: Vec<Hypergraph>,
    labels: Vec<String>,
    values: Vec<BigRational>,
}

impl Filtration {
    /// Checks lengths, that values do not decrease, and containment.
    pub fn new(steps: Vec<Hypergraph>, labels: Vec<String>, values: Vec<BigRational>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::InvalidInput("a filtration needs at least one step".into()));
        }
        if labels.len() != steps.len() || values.len() != steps.len() {
            return Err(Error::InvalidInput("one label and one value per step are required".into()));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidInput("filtration values must not decrease".into()));
        }
        if let Some(i) = first_violation(&steps) {
            return Err(Error::NotContained(format!(
                "step '{}' is not contained in step '{}'",
                labels[i],
                labels[i + 1]
            )));
        }
        Ok(Filtration { steps, labels, values })
    }

    /// `len` copies of `h` at values `0, 1, ...`.
    pub fn constant(h: &Hypergraph, len: usize) -> Self {
        let len = len.max(1);
        Filtration {
            steps: vec![h.clone(); len],
            labels: (0..len).map(|i| i.to_string()).collect(),
            values: (0..len).map(|i| BigRational::from_integer(BigInt::from(i))).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[Hypergraph] {
        &self.steps
    }

    pub fn step(&self, i: usize) -> &Hypergraph {
        &self.steps[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// The last (largest) step.
    pub fn top(&self) -> &Hypergraph {
        self.steps.last().expect("non-empty")
    }
}

fn first_violation(steps: &[Hypergraph]) -> Option<usize> {
    steps.windows(2).position(|w| !w[0].is_subset_of(&w[1]))
}

/// How to build a filtration of a hypergraph.
#[derive(Clone, Debug, PartialEq)]
pub enum FiltrationSpec {
    /// `cor^kmax ⊆ ... ⊆ cor ⊆ int ⊆ A ⊆ cl ⊆ n ⊆ ... ⊆ n^kmax`, indexed so
    /// that `A` sits at value 0.
    IteratedCoreNeighborhood {
        sub: Hypergraph,
        kmax: usize,
        mode: CoreIteration,
    },
    /// `H(t) = {σ : f(σ) ≤ t}` at each threshold.
    Sublevel {
        values: BTreeMap<Hyperedge, BigRational>,
        thresholds: Vec<BigRational>,
    },
}

pub fn build_filtration(h: &Hypergraph, spec: &FiltrationSpec) -> Result<Filtration> {
    match spec {
        FiltrationSpec::IteratedCoreNeighborhood { sub, kmax, mode } => {
            core_neighborhood_filtration(h, sub, *kmax, *mode)
        }
        FiltrationSpec::Sublevel { values, thresholds } => sublevel(h, values, thresholds),
    }
}

fn core_neighborhood_filtration(h: &Hypergraph, a: &Hypergraph, kmax: usize, mode: CoreIteration) -> Result<Filtration> {
    let pair = HypergraphPair::new(h.clone(), a.clone())?;
    let mut steps = Vec::new();
    let mut labels = Vec::new();
    for k in (1..=kmax).rev() {
        steps.push(core(&pair, k, mode)?);
        labels.push(if k == 1 { "cor".to_string() } else { format!("cor^{k}") });
    }
    steps.push(interior(&pair));
    labels.push("int".into());
    steps.push(a.clone());
    labels.push("A".into());
    steps.push(closure(&pair));
    labels.push("cl".into());
    for k in 1..=kmax {
        steps.push(neighborhood(&pair, k)?);
        labels.push(if k == 1 { "n".to_string() } else { format!("n^{k}") });
    }
    if let Some(i) = first_violation(&steps) {
        return Err(Error::Integrity(format!(
            "{} is not contained in {}",
            labels[i],
            labels[i + 1]
        )));
    }
    let offset = kmax as i64 + 1;
    let values = (0..steps.len())
        .map(|i| BigRational::from_integer(BigInt::from(i as i64 - offset)))
        .collect();
    Ok(Filtration { steps, labels, values })
}

/// Sublevel filtration of `f` at the given non-decreasing thresholds.
pub fn sublevel(h: &Hypergraph, f: &BTreeMap<Hyperedge, BigRational>, thresholds: &[BigRational]) -> Result<Filtration> {
    if let Some(e) = h.iter().find(|e| !f.contains_key(*e)) {
        return Err(Error::InvalidInput(format!("no filtration value for hyperedge {e:?}")));
    }
    if thresholds.is_empty() {
        return Err(Error::InvalidInput("at least one threshold is required".into()));
    }
    if thresholds.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidInput("thresholds must be sorted".into()));
    }
    let steps = thresholds.iter().map(|t| h.filter(|e| &f[e] <= t)).collect();
    let labels = thresholds.iter().map(format_value).collect();
    Filtration::new(steps, labels, thresholds.to_vec())
}

/// Dimension of each hyperedge, as filtration values.
pub fn dimension_values(h: &Hypergraph) -> BTreeMap<Hyperedge, BigRational> {
    h.iter()
        .map(|e| (e.clone(), BigRational::from_integer(BigInt::from(e.dim()))))
        .collect()
}

/// Sorted distinct values of `f`.
pub fn distinct_values(f: &BTreeMap<Hyperedge, BigRational>) -> Vec<BigRational> {
    let mut v: Vec<BigRational> = f.values().cloned().collect();
    v.sort();
    v.dedup();
    v
}

/// Exact decimal when the denominator divides a power of ten, `p/q` otherwise.
pub fn format_value(x: &BigRational) -> String {
    let mut d = x.denom().clone();
    let mut twos = 0u32;
    let mut fives = 0u32;
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    while (&d % &two).is_zero() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    if !d.is_one() {
        return x.to_string();
    }
    let places = twos.max(fives);
    if places == 0 {
        return x.numer().to_string();
    }
    let scaled = (x * BigRational::from_integer(BigInt::from(10).pow(places))).to_integer();
    let digits = scaled.abs().to_string();
    let digits = format!("{digits:0>width$}", width = places as usize + 1);
    let (int, frac) = digits.split_at(digits.len() - places as usize);
    let sign = if x.is_negative() { "-" } else { "" };
    format!("{sign}{int}.{frac}")
}

/// A persistence interval `[birth, death)` in step indices; `death = None` is infinity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bar {
    pub birth: usize,
    pub death: Option<usize>,
    pub multiplicity: usize,
}

impl Bar {
    pub fn alive_at(&self, i: usize) -> bool {
        self.birth <= i && self.death.is_none_or(|d| i < d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Barcode {
    pub degree: usize,
    /// Which complexes represent the steps, or `relative` for relative persistence.
    pub flavor: String,
    pub coefficients: String,
    pub labels: Vec<String>,
    pub values: Vec<String>,
    pub betti: Vec<usize>,
    /// `ranks[i][j]` is the rank of step `i -> step j` for `j >= i`; zero below the diagonal.
    pub ranks: Vec<Vec<usize>>,
    pub bars: Vec<Bar>,
}

impl Barcode {
    pub fn alive_at(&self, i: usize) -> usize {
        self.bars.iter().filter(|b| b.alive_at(i)).map(|b| b.multiplicity).sum()
    }

    /// Persistent rank recovered from the bars.
    pub fn rank_from_bars(&self, i: usize, j: usize) -> usize {
        self.bars
            .iter()
            .filter(|b| b.birth <= i && b.death.is_none_or(|d| d > j))
            .map(|b| b.multiplicity)
            .sum()
    }

    /// Bars reproduce every persistent rank.
    pub fn round_trip_holds(&self) -> bool {
        let n = self.ranks.len();
        (0..n).all(|i| (i..n).all(|j| self.rank_from_bars(i, j) == self.ranks[i][j]))
    }

    /// Bars alive at each step sum to the Betti number there.
    pub fn betti_consistent(&self) -> bool {
        (0..self.betti.len()).all(|i| self.alive_at(i) == self.betti[i])
    }

    /// `(degree, birth value, death value or "inf", multiplicity)` rows.
    pub fn csv_rows(&self) -> Vec<[String; 4]> {
        self.bars
            .iter()
            .map(|b| {
                [
                    self.degree.to_string(),
                    self.values[b.birth].clone(),
                    b.death.map_or_else(|| "inf".to_string(), |d| self.values[d].clone()),
                    b.multiplicity.to_string(),
                ]
            })
            .collect()
    }
}

/// Interval multiplicities from a full table of persistent ranks.
pub fn bars_from_ranks(ranks: &[Vec<usize>]) -> Result<Vec<Bar>> {
    let n = ranks.len();
    let r = |i: isize, j: usize| -> i64 {
        if i < 0 || j >= n {
            0
        } else {
            ranks[i as usize][j] as i64
        }
    };
    let mut bars = Vec::new();
    for i in 0..n {
        for j in i + 1..=n {
            let ii = i as isize;
            let mu = r(ii, j - 1) - r(ii, j) - r(ii - 1, j - 1) + r(ii - 1, j);
            if mu < 0 {
                return Err(Error::Integrity(format!(
                    "negative multiplicity {mu} for the interval [{i}, {j})"
                )));
            }
            if mu > 0 {
                bars.push(Bar {
                    birth: i,
                    death: (j < n).then_some(j),
                    multiplicity: mu as usize,
                });
            }
        }
    }
    Ok(bars)
}

/// Persistent ranks of a sequence of complexes in degree `n`, with
/// `map(i, j)` the chain map from step `i` to step `j`.
fn rank_table<K, M>(homs: &[FieldHomology<K::Elem>], map: M, n: usize, k: &K) -> Result<Vec<Vec<usize>>>
where
    K: CoefficientField,
    M: Fn(usize, usize) -> Result<ChainMap> + Sync,
{
    let len = homs.len();
    (0..len)
        .into_par_iter()
        .map(|i| {
            let mut row = vec![0; len];
            if homs[i].dim(n) == 0 {
                return Ok(row);
            }
            row[i] = homs[i].dim(n);
            for j in i + 1..len {
                if homs[j].dim(n) > 0 {
                    let f = map(i, j)?;
                    row[j] = field::rank(&induced_map(&f, &homs[i], &homs[j], n, k)?);
                }
            }
            Ok(row)
        })
        .collect()
}

fn homologies<K: CoefficientField>(coords: &[CoordComplex], k: &K) -> Result<Vec<FieldHomology<K::Elem>>> {
    coords.par_iter().map(|c| FieldHomology::of(c, k)).collect()
}

fn require_field(coeff: CoefficientSpec) -> Error {
    Error::Unsupported(format!(
        "persistence is computed over a field; got coefficients '{coeff}' (use q or zp:<p>)"
    ))
}

fn assemble(
    filt: &Filtration,
    degree: usize,
    flavor: &str,
    coeff: CoefficientSpec,
    betti: Vec<usize>,
    ranks: Vec<Vec<usize>>,
) -> Result<Barcode> {
    let bars = bars_from_ranks(&ranks)?;
    Ok(Barcode {
        degree,
        flavor: flavor.into(),
        coefficients: coeff.to_string(),
        labels: filt.labels.clone(),
        values: filt.values.iter().map(format_value).collect(),
        betti,
        ranks,
        bars,
    })
}

/// Barcode of `H_degree` along the filtration, each step represented by its
/// `flavor` complex.
pub fn barcode(filt: &Filtration, degree: usize, coeff: CoefficientSpec, flavor: Flavor) -> Result<Barcode> {
    crate::with_field!(coeff, k => {
        let basis = SimplexBasis::new(filt.top());
        let complexes = filt
            .steps
            .iter()
            .map(|s| flavor.build(&basis, s))
            .collect::<Result<Vec<_>>>()?;
        let coords: Vec<CoordComplex> = complexes.iter().map(ChainComplex::coords).collect();
        let homs = homologies(&coords, &k)?;
        let betti = homs.iter().map(|h| h.dim(degree)).collect();
        let ranks = rank_table(&homs, |i, j| inclusion_chain_map(&complexes[i], &complexes[j]), degree, &k)?;
        assemble(filt, degree, flavor.name(), coeff, betti, ranks)
    }, integers => Err(require_field(coeff)))
}

/// Persistence of `H_degree(H, A_i)` along a filtration `A_0 ⊆ A_1 ⊆ ...` of
/// sub-hypergraphs of `h`, with maps induced by the inclusions of the subspace.
pub fn relative_persistence(h: &Hypergraph, subs: &Filtration, degree: usize, coeff: CoefficientSpec) -> Result<Barcode> {
    if let Some(i) = subs.steps.iter().position(|s| !s.is_subset_of(h)) {
        return Err(Error::NotContained(format!("step '{}' is not contained in H", subs.labels[i])));
    }
    crate::with_field!(coeff, k => {
        let basis = SimplexBasis::new(h);
        let total = ChainComplex::inf(&basis, h)?;
        let coords = subs
            .steps
            .iter()
            .map(|s| total.relative_to(&ChainComplex::inf(&basis, s)?))
            .collect::<Result<Vec<_>>>()?;
        let homs = homologies(&coords, &k)?;
        let betti = homs.iter().map(|h| h.dim(degree)).collect();
        let id = ChainMap::identity(&total.ranks());
        let ranks = rank_table(&homs, |_, _| Ok(id.clone()), degree, &k)?;
        assemble(subs, degree, "relative", coeff, betti, ranks)
    }, integers => Err(require_field(coeff)))
}

/// The three rows at one index of the persistent sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PersistentLesIndex {
    pub index: usize,
    pub label: String,
    pub diagram: LesDiagramReport,
    /// Alternating sum of group dimensions along each full row, in row order.
    pub euler: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PersistentLesReport {
    pub coefficients: String,
    pub kmax: usize,
    pub degrees: (usize, usize),
    pub labels: Vec<String>,
    pub indices: Vec<PersistentLesIndex>,
    /// Squares between consecutive indices, one ladder per row.
    pub ladder: Vec<SquareCheck>,
}

impl PersistentLesReport {
    pub fn holds(&self) -> bool {
        self.indices
            .iter()
            .all(|ix| ix.diagram.holds() && ix.euler.iter().all(|&e| e == 0))
            && self.ladder.iter().all(|s| s.commutes)
    }
}

/// Persistent long exact sequence of `(h, a)` along the iterated
/// core/neighborhood filtration of `a`, checked pointwise and between
/// consecutive indices on the δ-row, the embedded row and the Δ-row.
pub fn persistent_les_check(
    h: &Hypergraph,
    a: &Hypergraph,
    kmax: usize,
    mode: CoreIteration,
    degrees: (usize, usize),
    coeff: CoefficientSpec,
) -> Result<PersistentLesReport> {
    let filt = build_filtration(
        h,
        &FiltrationSpec::IteratedCoreNeighborhood {
            sub: a.clone(),
            kmax,
            mode,
        },
    )?;
    crate::with_field!(coeff, k => persistent_les_inner(h, &filt, kmax, degrees, coeff, &k),
        integers => Err(require_field(coeff)))
}

fn persistent_les_inner<K: CoefficientField>(
    h: &Hypergraph,
    filt: &Filtration,
    kmax: usize,
    (lo, hi): (usize, usize),
    coeff: CoefficientSpec,
    k: &K,
) -> Result<PersistentLesReport> {
    let basis = SimplexBasis::new(h);
    let empty = Hypergraph::new();
    let parts = filt
        .steps
        .par_iter()
        .map(|s| diagram_parts(&basis, [h, s, &empty], ["A", "H", "H,A"], coeff, k))
        .collect::<Result<Vec<_>>>()?;

    let mut ladder = Vec::new();
    for i in 0..parts.len().saturating_sub(1) {
        for (w, &f) in ROW_FLAVORS.iter().enumerate() {
            let (lo_c, hi_c) = (&parts[i].complexes[w], &parts[i + 1].complexes[w]);
            let v1 = inclusion_chain_map(&lo_c[1], &hi_c[1])?;
            let id = ChainMap::identity(&lo_c[0].ranks());
            let name = format!("{} {}->{}", row_name(f), filt.labels[i], filt.labels[i + 1]);
            let squares = ladder_squares(&parts[i].sequences[w], &parts[i + 1].sequences[w], [&v1, &id, &id], &name, k)?;
            ladder.extend(squares.into_iter().filter(|s| (lo..=hi).contains(&s.degree)));
        }
    }

    let indices = parts
        .into_iter()
        .enumerate()
        .map(|(i, p)| {
            let euler = p.sequences.iter().map(|(_, les)| alternating_sum(les)).collect();
            let mut diagram = p.report;
            for r in &mut diagram.rows {
                r.restrict(lo, hi);
            }
            diagram.squares.retain(|s| (lo..=hi).contains(&s.degree));
            PersistentLesIndex {
                index: i,
                label: filt.labels[i].clone(),
                diagram,
                euler,
            }
        })
        .collect();

    Ok(PersistentLesReport {
        coefficients: coeff.to_string(),
        kmax,
        degrees: (lo, hi),
        labels: filt.labels.clone(),
        indices,
        ladder,
    })
}

fn alternating_sum<F: FieldScalar + std::fmt::Display>(les: &crate::sequences::LongExact<F>) -> i64 {
    (0..les.num_dims())
        .map(|n| {
            let s = les.dim(0, n) as i64 - les.dim(1, n) as i64 + les.dim(2, n) as i64;
            if n % 2 == 0 {
                s
            } else {
                -s
            }
        })
        .sum()
}

/// `rank H_n(f(H(b)), f(H(a)))` for one grid cell, per row flavor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankCell {
    pub a: usize,
    pub b: usize,
    /// In [`ROW_FLAVORS`] order: δ, embedded, Δ.
    pub ranks: [usize; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleViolation {
    pub flavor: String,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub lhs: usize,
    pub rhs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankInvariant2D {
    pub degree: usize,
    pub coefficients: String,
    pub grid: Vec<String>,
    pub flavors: Vec<String>,
    pub cells: Vec<RankCell>,
    pub triples_checked: usize,
    pub violations: Vec<TripleViolation>,
    pub squares_checked: usize,
    pub failed_squares: Vec<String>,
}

impl RankInvariant2D {
    pub fn rank(&self, flavor: usize, a: usize, b: usize) -> Option<usize> {
        self.cells.iter().find(|c| c.a == a && c.b == b).map(|c| c.ranks[flavor])
    }

    pub fn holds(&self) -> bool {
        self.violations.is_empty()
            && self.failed_squares.is_empty()
            && self.cells.iter().filter(|c| c.a == c.b).all(|c| c.ranks == [0; 3])
    }
}

/// Two-parameter rank invariant of the sublevel filtration of `f` on the
/// grid, with the triple inequalities and the commutation of the maps
/// δ-row -> embedded row -> Δ-row with the structure maps.
pub fn rank_invariant_2d(
    h: &Hypergraph,
    f: &BTreeMap<Hyperedge, BigRational>,
    grid: &[BigRational],
    degree: usize,
    coeff: CoefficientSpec,
) -> Result<RankInvariant2D> {
    let filt = sublevel(h, f, grid)?;
    crate::with_field!(coeff, k => rank_invariant_inner(h, &filt, degree, coeff, &k),
        integers => Err(require_field(coeff)))
}

struct Cell<F> {
    a: usize,
    b: usize,
    homs: Vec<FieldHomology<F>>,
}

fn rank_invariant_inner<K: CoefficientField>(
    h: &Hypergraph,
    filt: &Filtration,
    n: usize,
    coeff: CoefficientSpec,
    k: &K,
) -> Result<RankInvariant2D> {
    let basis: Arc<SimplexBasis> = SimplexBasis::new(h);
    let g = filt.len();
    // complexes[w][t]: flavor w of H(grid_t).
    let complexes = ROW_FLAVORS
        .iter()
        .map(|f| filt.steps.iter().map(|s| f.build(&basis, s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(usize, usize)> = (0..g).flat_map(|a| (a..g).map(move |b| (a, b))).collect();
    let cells = pairs
        .par_iter()
        .map(|&(a, b)| {
            let homs = (0..3)
                .map(|w| FieldHomology::of(&complexes[w][b].relative_to(&complexes[w][a])?, k))
                .collect::<Result<Vec<_>>>()?;
            Ok(Cell { a, b, homs })
        })
        .collect::<Result<Vec<_>>>()?;
    let index = |a: usize, b: usize| cells.iter().position(|c| c.a == a && c.b == b).expect("grid cell");

    let rank_cells: Vec<RankCell> = cells
        .iter()
        .map(|c| RankCell {
            a: c.a,
            b: c.b,
            ranks: [c.homs[0].dim(n), c.homs[1].dim(n), c.homs[2].dim(n)],
        })
        .collect();

    let mut triples_checked = 0;
    let mut violations = Vec::new();
    for a in 0..g {
        for b in a..g {
            for c in b..g {
                for (w, f) in ROW_FLAVORS.iter().enumerate() {
                    triples_checked += 1;
                    let lhs = rank_cells[index(a, c)].ranks[w];
                    let rhs = rank_cells[index(b, c)].ranks[w] + rank_cells[index(a, b)].ranks[w];
                    if lhs > rhs {
                        violations.push(TripleViolation {
                            flavor: row_name(*f).into(),
                            a,
                            b,
                            c,
                            lhs,
                            rhs,
                        });
                    }
                }
            }
        }
    }

    // Structure maps to the adjacent cells (a, b+1) and (a+1, b).
    let mut moves = Vec::new();
    for c in &cells {
        if c.b + 1 < g {
            moves.push((c.a, c.b, c.a, c.b + 1));
        }
        if c.a < c.b {
            moves.push((c.a, c.b, c.a + 1, c.b));
        }
    }
    let outcomes = moves
        .par_iter()
        .map(|&(a, b, a2, b2)| -> Result<Vec<(String, bool)>> {
            let (src, dst) = (&cells[index(a, b)], &cells[index(a2, b2)]);
            if n >= src.homs[0].num_dims() {
                return Ok(Vec::new());
            }
            let mut out = Vec::new();
            for w in 0..2 {
                let s_lo = inclusion_chain_map(&complexes[w][b], &complexes[w][b2])?;
                let s_hi = inclusion_chain_map(&complexes[w + 1][b], &complexes[w + 1][b2])?;
                let phi_src = inclusion_chain_map(&complexes[w][b], &complexes[w + 1][b])?;
                let phi_dst = inclusion_chain_map(&complexes[w][b2], &complexes[w + 1][b2])?;
                let lhs = induced_map(&s_lo, &src.homs[w], &dst.homs[w], n, k)?
                    .mul(&induced_map(&phi_dst, &dst.homs[w], &dst.homs[w + 1], n, k)?);
                let rhs = induced_map(&phi_src, &src.homs[w], &src.homs[w + 1], n, k)?
                    .mul(&induced_map(&s_hi, &src.homs[w + 1], &dst.homs[w + 1], n, k)?);
                let name = format!(
                    "{}->{} ({a},{b})->({a2},{b2})",
                    row_name(ROW_FLAVORS[w]),
                    row_name(ROW_FLAVORS[w + 1])
                );
                out.push((name, lhs == rhs));
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    let squares: Vec<(String, bool)> = outcomes.into_iter().flatten().collect();

    Ok(RankInvariant2D {
        degree: n,
        coefficients: coeff.to_string(),
        grid: filt.labels.clone(),
        flavors: ROW_FLAVORS.iter().map(|&f| row_name(f).to_string()).collect(),
        cells: rank_cells,
        triples_checked,
        violations,
        squares_checked: squares.len(),
        failed_squares: squares.into_iter().filter(|(_, ok)| !ok).map(|(s, _)| s).collect(),
    })
}
