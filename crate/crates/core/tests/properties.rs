//! Property tests over seeded random hypergraphs, with reference values from
//! the independent rational oracle in `oracle/`.

mod oracle;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use hyperhom::chain::{inf_complex, ChainComplex, Flavor, SimplexBasis};
use hyperhom::homology::{bettis, embedded_homology, inf_sup_check, relative_embedded_homology};
use hyperhom::hypergraph::{Hypergraph, HypergraphPair};
use hyperhom::io::{parse_hypergraph, parse_rational, Format, HypergraphDocument};
use hyperhom::lattice::{smith, IntegerLattice, Lattice, Matrix};
use hyperhom::persistence::{barcode, distinct_values, format_value, sublevel};
use hyperhom::random::{random_pair, random_triple, random_values, seeded, RandomConfig};
use hyperhom::scalar::CoefficientSpec;
use hyperhom::sequences::{les_check, subadditivity_check};
use hyperhom::topology::{
    boundary, closed_complement, closure, complement, core, interior, neighborhood, openness, path_distance, CoreIteration,
    PathDistance,
};

const Z: CoefficientSpec = CoefficientSpec::Integers;
const Q: CoefficientSpec = CoefficientSpec::Rationals;

fn small() -> RandomConfig {
    RandomConfig {
        max_vertices: 7,
        max_edges: 10,
        max_edge_size: 4,
    }
}

fn ids(h: &Hypergraph) -> Vec<Vec<u32>> {
    oracle::simplices(h.iter().map(|e| e.vertices().iter().map(|v| v.0).collect()))
}

fn padded(mut v: Vec<usize>, len: usize) -> Vec<usize> {
    v.resize(len, 0);
    v
}

fn oracle_bettis(p: &HypergraphPair) -> Vec<usize> {
    oracle::relative_bettis(&ids(p.total()), &ids(p.sub()))
}

#[test]
fn oracle_agrees_with_hand_computed_examples() {
    let h = Hypergraph::from_ids(&[&[0], &[1], &[2], &[0, 1], &[0, 1, 2]]);
    let a = Hypergraph::from_ids(&[&[0], &[1], &[0, 1]]);
    // (H, A): the class of v2 survives; nothing else.
    assert_eq!(oracle::relative_bettis(&ids(&h), &ids(&a)), [1, 0, 0]);
    // Hollow triangle: one component, one loop.
    let c = Hypergraph::from_ids(&[&[0], &[1], &[2], &[0, 1], &[1, 2], &[0, 2]]);
    assert_eq!(oracle::relative_bettis(&ids(&c), &[]), [1, 1]);
    // An edge without its vertices carries no Inf chains in degree 1.
    let e = Hypergraph::from_ids(&[&[0, 1]]);
    assert_eq!(oracle::inf_rank(&ids(&e), 1), 0);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn relative_homology_matches_the_oracle(seed in any::<u64>()) {
        let p = random_pair(&mut seeded(seed), &small());
        let want = oracle_bettis(&p);
        let over_q = bettis(&relative_embedded_homology(&p, Q, Flavor::Inf).unwrap());
        let over_z = bettis(&relative_embedded_homology(&p, Z, Flavor::Inf).unwrap());
        let len = want.len().max(over_q.len());
        prop_assert_eq!(padded(over_q, len), padded(want.clone(), len));
        prop_assert_eq!(padded(over_z, len), padded(want, len));
    }

    #[test]
    fn inf_ranks_match_the_oracle(seed in any::<u64>()) {
        let p = random_pair(&mut seeded(seed), &small());
        let h = p.total();
        let ranks = inf_complex(h).unwrap().ranks();
        for (n, &r) in ranks.iter().enumerate() {
            prop_assert_eq!(r, oracle::inf_rank(&ids(h), n), "degree {}", n);
        }
    }

    #[test]
    fn inf_is_inside_sup_and_both_give_the_same_homology(seed in any::<u64>()) {
        let p = random_pair(&mut seeded(seed), &small());
        let h = p.total();
        let basis = SimplexBasis::new(h);
        let (inf, sup) = (ChainComplex::inf(&basis, h).unwrap(), ChainComplex::sup(&basis, h).unwrap());
        prop_assert!(inf.is_subcomplex_of(&sup));
        prop_assert!(inf_sup_check(&p).unwrap().holds());
    }

    #[test]
    fn euler_characteristic_of_inf_complex(seed in any::<u64>()) {
        let p = random_pair(&mut seeded(seed), &small());
        let h = p.total();
        let chi_chains: i64 = inf_complex(h).unwrap().ranks().iter().enumerate()
            .map(|(n, &r)| if n % 2 == 0 { r as i64 } else { -(r as i64) }).sum();
        let chi_homology: i64 = bettis(&embedded_homology(h, Q).unwrap()).iter().enumerate()
            .map(|(n, &b)| if n % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        prop_assert_eq!(chi_chains, chi_homology);
    }

    #[test]
    fn pair_sequence_is_exact(seed in any::<u64>()) {
        let p = random_pair(&mut seeded(seed), &small());
        let r = les_check(p.total(), p.sub(), None, Q).unwrap();
        prop_assert!(r.is_exact(), "{:?}", r.failures);
    }

    #[test]
    fn triple_sequence_is_exact_and_subadditive(seed in any::<u64>()) {
        let t = random_triple(&mut seeded(seed), &small());
        let r = les_check(&t.total, &t.middle, Some(&t.inner), Q).unwrap();
        prop_assert!(r.is_exact(), "{:?}", r.failures);
        prop_assert!(subadditivity_check(&t.total, &t.middle, &t.inner).unwrap().holds());
    }

    #[test]
    fn operators_are_ordered_and_idempotent(seed in any::<u64>()) {
        let p = random_pair(&mut seeded(seed), &small());
        let h = p.total().clone();
        let (int, cl) = (interior(&p), closure(&p));
        prop_assert!(int.is_subset_of(p.sub()) && p.sub().is_subset_of(&cl));
        let int_pair = HypergraphPair::new(h.clone(), int.clone()).unwrap();
        let cl_pair = HypergraphPair::new(h.clone(), cl.clone()).unwrap();
        prop_assert!(openness(&int_pair).is_open);
        prop_assert!(openness(&cl_pair).is_closed);
        prop_assert_eq!(interior(&int_pair), int.clone());
        prop_assert_eq!(closure(&cl_pair), cl);
        let cor = core(&p, 1, CoreIteration::Nested).unwrap();
        prop_assert!(cor.is_subset_of(&interior(&p)));
        let n = neighborhood(&p, 1).unwrap();
        prop_assert!(openness(&HypergraphPair::new(h.clone(), n).unwrap()).is_open);
        // Only inclusion: int keeps hyperedges that meet H∖A without lying inside it.
        let n_cor = neighborhood(&HypergraphPair::new(h.clone(), cor).unwrap(), 1).unwrap();
        let n_int = neighborhood(&HypergraphPair::new(h, int).unwrap(), 1).unwrap();
        prop_assert!(n_cor.is_subset_of(&n_int));
    }

    #[test]
    fn operators_decompose_the_hypergraph(seed in any::<u64>()) {
        let p = random_pair(&mut seeded(seed), &small());
        let h = p.total();
        let (int, bd, comp) = (interior(&p), boundary(&p), complement(&p));
        prop_assert!(int.intersection(&bd).is_empty() && bd.intersection(&comp).is_empty());
        prop_assert_eq!(&int.union(&bd), p.sub());
        prop_assert_eq!(bd.union(&comp), closed_complement(&p));
        prop_assert_eq!(closed_complement(&p), h.intersection(&comp.delta_closure()));
        prop_assert_eq!(closure(&p), h.intersection(&p.sub().delta_closure()));
        let flipped = HypergraphPair::new(h.clone(), comp.clone()).unwrap();
        prop_assert_eq!(boundary(&flipped), comp.intersection(&p.sub().delta_closure()));
    }

    #[test]
    fn path_distance_is_symmetric_and_concatenates(seed in any::<u64>()) {
        let p = random_pair(&mut seeded(seed), &small());
        let h = p.total();
        let edges: Vec<_> = h.iter().take(6).cloned().collect();
        let d = |a, b| path_distance(h, a, b).unwrap();
        for a in &edges {
            for b in &edges {
                prop_assert_eq!(d(a, b), d(b, a));
                for c in &edges {
                    if let (PathDistance::Finite(x), PathDistance::Finite(y)) = (d(a, b), d(b, c)) {
                        prop_assert!(d(a, c) <= PathDistance::Finite(x + y + 1));
                    }
                }
            }
        }
    }

    #[test]
    fn delta_closure_is_a_closure(seed in any::<u64>()) {
        let p = random_pair(&mut seeded(seed), &small());
        let h = p.total();
        let d = h.delta_closure();
        prop_assert!(h.is_subset_of(&d) && d.is_simplicial());
        prop_assert_eq!(d.delta_closure(), d);
        prop_assert!(h.lower_closure().is_subset_of(h));
        prop_assert!(h.lower_closure().is_simplicial());
    }

    #[test]
    fn barcodes_round_trip_through_ranks(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let p = random_pair(&mut rng, &small());
        let f = random_values(&mut rng, p.total(), 3);
        let filt = sublevel(p.total(), &f, &distinct_values(&f)).unwrap();
        for degree in 0..3 {
            let bc = barcode(&filt, degree, Q, Flavor::Inf).unwrap();
            prop_assert!(bc.round_trip_holds());
            prop_assert!(bc.betti_consistent());
        }
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let p = random_pair(&mut rng, &small());
        let doc = HypergraphDocument::from_hypergraph(p.total())
            .with_sub("A", p.sub()).unwrap()
            .with_values(random_values(&mut rng, p.total(), 4)).unwrap();
        let plain = parse_hypergraph(&doc.to_plain(), Format::Plain).unwrap();
        let json = parse_hypergraph(&doc.to_json(), Format::Json).unwrap();
        prop_assert_eq!(plain.to_plain(), doc.to_plain());
        // The plain format has no vertex list, so ids are compared through labels.
        prop_assert_eq!(plain.render(plain.hypergraph()), doc.render(doc.hypergraph()));
        prop_assert_eq!(plain.render(plain.sub("A").unwrap()), doc.render(doc.sub("A").unwrap()));
        let labelled = |d: &HypergraphDocument| -> Vec<(String, BigRational)> {
            d.values().iter().map(|(e, v)| (d.render_edge(e), v.clone())).collect()
        };
        prop_assert_eq!(labelled(&plain), labelled(&doc));
        prop_assert_eq!(json.hypergraph(), doc.hypergraph());
        prop_assert_eq!(json.values(), doc.values());
        prop_assert_eq!(json.to_json(), doc.to_json());
        prop_assert_eq!(json.subs(), doc.subs());
    }

    #[test]
    fn values_print_and_parse_exactly(n in -10_000i64..10_000, d in 1i64..500) {
        let x = BigRational::new(BigInt::from(n), BigInt::from(d));
        prop_assert_eq!(parse_rational(&format_value(&x)), Some(x));
    }

    #[test]
    fn smith_rank_and_lattices_agree_across_scalars(
        rows in prop::collection::vec(prop::collection::vec(-6i64..6, 4), 0..5)
    ) {
        let small: Matrix<i64> = Matrix::from_rows(4, rows.clone());
        let big: Matrix<BigInt> = small.map(|&x| BigInt::from(x));
        let s_small = smith(&small);
        let s_big = smith(&big);
        prop_assert_eq!(s_small.rank(), s_big.rank());
        prop_assert_eq!(
            s_small.invariant_factors.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>(),
            s_big.invariant_factors.clone()
        );
        let q_rows: Vec<Vec<BigRational>> = rows.iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
            .collect();
        prop_assert_eq!(s_big.rank(), if q_rows.is_empty() { 0 } else { oracle::rank(&q_rows) });
        let l: IntegerLattice = Lattice::from_generators(&big);
        prop_assert_eq!(Lattice::from_generators(l.basis()), l.clone());
        for r in big.iter_rows() {
            prop_assert!(l.contains(r));
        }
    }
}
