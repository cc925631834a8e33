use std::sync::LazyLock;

use brauer_coend::brauer::{compose, Charge};
use brauer_coend::characters::{class_size, multiplicities, specht_character, specht_dimension};
use brauer_coend::coend::{canonicalize, product_class, CoendRing};
use brauer_coend::combinatorics::{
    enumerate_partitions, enumerate_strict_partitions, integer_partitions, sequence_sign, FiniteSetPair, Part,
};
use brauer_coend::graphs::{enumerate_graphs, enumerate_marked, ih_rewrite, relate, DirectedGraph21};
use brauer_coend::partition::{apply_p, PartitionVector};
use brauer_coend::selftest::random_composable_pair;
use brauer_coend::tensor_rep::k_on_morphism;
use brauer_coend::Rational;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn permutation(len: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..len).collect::<Vec<_>>()).prop_shuffle()
}

static MARKED_4_1: LazyLock<Vec<DirectedGraph21>> = LazyLock::new(|| enumerate_marked(4, 1));
static MARKED_5_1: LazyLock<Vec<DirectedGraph21>> = LazyLock::new(|| enumerate_marked(5, 1));

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reorder_signs_compose(
        g in (0usize..120).prop_map(|i| MARKED_4_1[i].clone()),
        o1 in permutation(3),
        o2 in permutation(3),
        s1 in proptest::collection::vec(any::<bool>(), 3),
        s2 in proptest::collection::vec(any::<bool>(), 3),
    ) {
        let (h, a) = g.reorder_sign(&o1, &s1).unwrap();
        let (k, b) = h.reorder_sign(&o2, &s2).unwrap();
        let order: Vec<usize> = o2.iter().map(|&i| o1[i]).collect();
        let swaps: Vec<bool> = (0..3)
            .map(|old| {
                let mid = o1.iter().position(|&x| x == old).unwrap();
                s1[old] ^ s2[mid]
            })
            .collect();
        let (direct, c) = g.reorder_sign(&order, &swaps).unwrap();
        prop_assert!(direct.same_shape(&k));
        prop_assert_eq!(a * b, c);
        prop_assert_eq!(relate(&g, &k), Some(1));
    }

    #[test]
    fn normal_forms_are_fixed_points(i in 0usize..5040) {
        let g = &MARKED_5_1[i];
        let nf = ih_rewrite(g);
        let again = ih_rewrite(&nf.graph());
        prop_assert_eq!(&again.components, &nf.components);
        prop_assert_eq!(again.sign, nf.sign);
    }

    #[test]
    fn k_and_p_are_functors(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (f, g) = random_composable_pair(4, &mut rng).unwrap();
        for n in 2..=3usize {
            let gf = compose(&g, &f, &Rational::from_integer(n.into())).unwrap();
            let lhs = k_on_morphism(&gf, n).unwrap();
            let rhs = k_on_morphism(&g, n).unwrap().mul(&k_on_morphism(&f, n).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            let c = Charge::int(n as i64);
            let (p, q) = f.source().shape();
            for lp in enumerate_partitions(p, q) {
                let v = PartitionVector::basis(lp);
                let direct = apply_p(&gf, &v, &c).unwrap();
                let stepwise = apply_p(&g, &apply_p(&f, &v, &c).unwrap(), &c).unwrap();
                prop_assert_eq!(direct, stepwise);
            }
        }
    }

    #[test]
    fn relabeling_positions_multiplies_by_sign(
        cov in proptest::collection::vec(0u8..4, 4),
        con in proptest::collection::vec(0u8..4, 2),
        perm in permutation(4),
    ) {
        let parts = vec![
            Part { block: vec![0, 1], label: Some(0) },
            Part { block: vec![2, 3], label: Some(1) },
        ];
        let moved: Vec<u8> = perm.iter().map(|&i| cov[i]).collect();
        let moved_parts: Vec<Part> = parts
            .iter()
            .map(|p| Part {
                block: p.block.iter().map(|&a| perm.iter().position(|&x| x == a).unwrap()).collect(),
                label: p.label,
            })
            .collect();
        let before = canonicalize(&cov, &con, &parts);
        let after = canonicalize(&moved, &con, &moved_parts);
        prop_assert_eq!(before.is_some(), after.is_some());
        if let (Some((k, s)), Some((l, t))) = (before, after) {
            prop_assert_eq!(k, l);
            prop_assert_eq!(s * sequence_sign(&perm), t);
        }
    }
}

#[test]
fn character_columns_are_orthonormal() {
    for k in 1..=7 {
        let parts = integer_partitions(k);
        let order: BigInt = (1..=k).map(BigInt::from).product();
        for a in &parts {
            for b in &parts {
                let inner: BigInt = parts
                    .iter()
                    .map(|rho| {
                        class_size(rho)
                            * specht_character(a, rho).unwrap()
                            * specht_character(b, rho).unwrap()
                    })
                    .sum();
                let expected = if a == b { order.clone() } else { BigInt::from(0) };
                assert_eq!(inner, expected, "{a:?} {b:?}");
            }
        }
    }
}

#[test]
fn multiplicities_conserve_dimension() {
    for p in 0..=6 {
        for q in 0..=3 {
            if p < 2 * q {
                continue;
            }
            let t = multiplicities(p, q).unwrap();
            let total: i64 = t
                .entries
                .iter()
                .map(|(b, &m)| m as i64 * specht_dimension(&b.lambda) * specht_dimension(&b.mu))
                .sum();
            assert_eq!(total as usize, enumerate_strict_partitions(p, q).len(), "({p},{q})");
        }
    }
}

#[test]
fn products_in_degree_one_anticommute() {
    let mut ring = CoendRing::new(3);
    let basis = ring.basis(1).unwrap();
    for a in &basis {
        for b in &basis {
            match (product_class(a, b), product_class(b, a)) {
                (Some((x, s)), Some((y, t))) => {
                    assert_eq!(x, y);
                    assert_eq!(s, -t);
                }
                (None, None) => {}
                other => panic!("asymmetric vanishing {other:?}"),
            }
        }
    }
}

#[test]
fn graph_counts_match_marked_enumeration() {
    let shape = FiniteSetPair::standard(2, 1);
    let marked = enumerate_marked(2, 1);
    assert_eq!(marked.len(), 6);
    let classes = enumerate_graphs(&shape).unwrap();
    for g in &marked {
        assert!(classes.iter().any(|c| relate(g, c).is_some()));
    }
}
