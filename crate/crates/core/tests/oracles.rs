mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use quandle_lie::colorings::{coloring_image, enumerate_colorings};
use quandle_lie::{assoc_ideal, lie_ideal, AlgebraElement, FiniteAlgebra, FiniteQuandle, DEFAULT_ENUMERATION_BOUND};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn propagation_matches_brute_force() {
    for (dname, d) in small_diagrams() {
        for (qname, q) in small_quandles() {
            let fast: Vec<Vec<usize>> = enumerate_colorings(&d, &q).into_iter().map(|c| c.labels).collect();
            assert_eq!(fast, naive_colorings(&d, &q), "{dname} / {qname}");
        }
    }
}

#[test]
fn l7a4_and_l7n1_by_brute_force() {
    // every assignment of the 6 units to the 7 arcs
    let alg = FiniteAlgebra::matrix(2, 2).unwrap();
    let uq = alg.quandle_of_units(1, DEFAULT_ENUMERATION_BOUND).unwrap();
    let oracle = OracleAlgebra::matrices(2, 2);
    for (name, expected_lie) in [
        ("L7a4", vec![(16, 20), (4, 9), (2, 1)]),
        ("L7n1", vec![(16, 14), (8, 6), (4, 9), (2, 1)]),
    ] {
        let d = diagram(name);
        let naive = naive_colorings(&d, &uq.quandle);
        assert_eq!(naive.len(), 30, "{name}");
        // link groups have deficiency one, so the count is a multiple of |S3|
        assert_eq!(naive.len() % 6, 0);
        let mut sizes = std::collections::BTreeMap::new();
        for labels in &naive {
            let image = uq.quandle.subquandle_generated(labels.iter().copied());
            let gens: Vec<Vec<u32>> = image.iter().map(|&i| uq.elements[i].coeffs().to_vec()).collect();
            *sizes.entry(oracle.closure(&gens, Closure::Lie).len()).or_insert(0) += 1;
        }
        let got: Vec<(usize, i32)> = sizes.into_iter().rev().collect();
        assert_eq!(got, expected_lie, "{name}");
    }
}

fn random_gens(rng: &mut ChaCha8Rng, alg: &FiniteAlgebra) -> Vec<AlgebraElement> {
    let count = rng.gen_range(1..=3);
    (0..count)
        .map(|_| {
            alg.element((0..alg.dim()).map(|_| rng.gen_range(0..alg.p().get())).collect())
                .unwrap()
        })
        .collect()
}

#[test]
fn ideal_closures_match_exhaustive_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1de4);
    for (name, alg, oracle) in oracle_algebras() {
        for _ in 0..50 {
            let gens = random_gens(&mut rng, &alg);
            let raw: Vec<Vec<u32>> = gens.iter().map(|g| g.coeffs().to_vec()).collect();
            let lie: BTreeSet<Vec<u32>> = lie_ideal(&alg, &gens).unwrap().elements().into_iter().collect();
            assert_eq!(lie, oracle.closure(&raw, Closure::Lie), "{name} lie {raw:?}");
            let assoc: BTreeSet<Vec<u32>> = assoc_ideal(&alg, &gens).unwrap().elements().into_iter().collect();
            assert_eq!(assoc, oracle.closure(&raw, Closure::TwoSided), "{name} assoc {raw:?}");
        }
    }
}

#[test]
fn empty_generators_give_zero_ideal() {
    for (_, alg, oracle) in oracle_algebras() {
        assert_eq!(
            lie_ideal(&alg, &[]).unwrap().elements().len(),
            oracle.closure(&[], Closure::Lie).len()
        );
        assert_eq!(assoc_ideal(&alg, &[]).unwrap().rank(), 0);
    }
}

#[test]
fn units_match_exhaustive_search() {
    for (name, alg, oracle) in oracle_algebras() {
        let everything = oracle.all();
        let one = alg.one().into_coeffs();
        let units: Vec<Vec<u32>> = everything
            .iter()
            .filter(|x| {
                everything
                    .iter()
                    .any(|y| oracle.mul(x, y) == one && oracle.mul(y, x) == one)
            })
            .cloned()
            .collect();
        let got: Vec<Vec<u32>> = alg
            .units(DEFAULT_ENUMERATION_BOUND)
            .unwrap()
            .into_iter()
            .map(|u| u.into_coeffs())
            .collect();
        assert_eq!(got, units, "{name}");
    }
}

#[test]
fn image_is_the_closure_of_the_labels() {
    for (dn, d) in small_diagrams()
        .into_iter()
        .chain([("L7a4".to_string(), diagram("L7a4"))])
    {
        for (qn, q) in small_quandles() {
            for c in enumerate_colorings(&d, &q) {
                let image = coloring_image(&c, &q);
                assert!(c.image().is_subset(&image), "{dn} {qn}");
                assert!(image
                    .iter()
                    .all(|&x| image.iter().all(|&y| image.contains(&q.op(x, y)))));
            }
        }
    }
}

#[test]
fn link_label_sets_need_not_be_closed() {
    // one component on transpositions, the other on 3-cycles: the
    // transpositions conjugate to the third one
    let q = FiniteQuandle::conjugation(&quandle_lie::Group::symmetric3(), 1);
    let cols = enumerate_colorings(&diagram("L4a1"), &q);
    let c = cols
        .iter()
        .find(|c| c.labels == vec![1, 2, 4, 3])
        .expect("coloring exists");
    assert_eq!(c.image(), BTreeSet::from([1, 2, 3, 4]));
    assert_eq!(coloring_image(c, &q), BTreeSet::from([1, 2, 3, 4, 5]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn alexander_colorings_match_brute_force(pi in 0usize..4, t in 1i64..7, di in 0usize..10, mirror in any::<bool>()) {
        let p = [2u32, 3, 5, 7][pi];
        prop_assume!(t % p as i64 != 0);
        let q = FiniteQuandle::alexander(p, t).unwrap();
        let diagrams = small_diagrams();
        let (_, d) = &diagrams[di % diagrams.len()];
        let d = if mirror && di % diagrams.len() < 4 {
            let name = ["unknot", "3_1", "L2a1", "L4a1"][di % diagrams.len()];
            quandle_lie::build_diagram(&quandle_lie::mirror(&quandle_lie::lookup_link(name).unwrap()))
        } else {
            d.clone()
        };
        let fast: Vec<Vec<usize>> = enumerate_colorings(&d, &q).into_iter().map(|c| c.labels).collect();
        prop_assert_eq!(fast, naive_colorings(&d, &q));
    }

    #[test]
    fn lie_closure_on_random_matrices(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = FiniteAlgebra::matrix(2, 2).unwrap();
        let oracle = OracleAlgebra::matrices(2, 2);
        let gens = random_gens(&mut rng, &alg);
        let raw: Vec<Vec<u32>> = gens.iter().map(|g| g.coeffs().to_vec()).collect();
        let lie: BTreeSet<Vec<u32>> = lie_ideal(&alg, &gens).unwrap().elements().into_iter().collect();
        prop_assert_eq!(lie, oracle.closure(&raw, Closure::Lie));
    }
}
