use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sandpile_core::enumerate::{connected_multigraphs, indexed_graph};
use sandpile_core::graph::Multigraph;
use sandpile_core::matroid::*;

fn square_with_diagonal() -> RegularMatroid {
    let arcs = [
        ("e1", "a", "b"),
        ("e2", "b", "c"),
        ("e3", "c", "d"),
        ("e4", "a", "d"),
        ("e5", "a", "c"),
    ];
    let g = Multigraph::from_edges(&["a", "b", "c", "d"], &arcs).unwrap();
    let o: HashMap<String, [String; 2]> = arcs
        .iter()
        .map(|(e, t, h)| (e.to_string(), [t.to_string(), h.to_string()]))
        .collect();
    RegularMatroid::from_graph(&g, Some(&o)).unwrap()
}

fn supports(m: &RegularMatroid, vs: &[SignedVector]) -> BTreeSet<BTreeSet<String>> {
    vs.iter()
        .map(|v| {
            v.iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, _)| m.labels()[i].clone())
                .collect()
        })
        .collect()
}

#[test]
fn default_signature_tables() {
    let m = square_with_diagonal();
    let sigma: BTreeSet<SignedVector> = m.circuits().iter().cloned().collect();
    let expected: BTreeSet<SignedVector> = [vec![1, 1, 0, 0, -1], vec![1, 1, 1, -1, 0], vec![0, 0, 1, -1, 1]].into();
    assert_eq!(sigma, expected);
    let sigma_star: BTreeSet<SignedVector> = m.cocircuits().iter().cloned().collect();
    let expected: BTreeSet<SignedVector> = [
        vec![1, -1, 0, 0, 0],
        vec![1, 0, -1, 0, 1],
        vec![1, 0, 0, 1, 1],
        vec![0, 1, -1, 0, 1],
        vec![0, 1, 0, 1, 1],
        vec![0, 0, 1, 1, 0],
    ]
    .into();
    assert_eq!(sigma_star, expected);
}

#[test]
fn vectors_classes_and_action() {
    let m = square_with_diagonal();
    let pair = SignaturePair::default_for(&m);
    let b = m.set_from_labels(&["e2", "e3", "e5"]).unwrap();
    let b2 = m.set_from_labels(&["e1", "e3", "e4"]).unwrap();
    assert_eq!(bby_vector(&m, &pair, b).unwrap(), [1, 0, 1, 0, 1]);
    assert_eq!(bby_vector(&m, &pair, b2).unwrap(), [1, 1, 0, 1, 1]);
    assert_eq!(m.class_of(&[1, 0, 2, 0, 1]), m.class_of(&[1, 1, 0, 1, 1]));
    assert_eq!(m.group_order(), BigInt::from(8));
    let classes: BTreeSet<MatroidClass> = m
        .bases()
        .iter()
        .map(|&b| m.class_of(&bby_vector(&m, &pair, b).unwrap()))
        .collect();
    assert_eq!(classes.len(), 8);
    let bby = Bby::new(&m, &pair, MatroidVariant::Bby).unwrap();
    assert_eq!(bby.act_set(&m.class_of_labels(&["e3"]).unwrap(), b).unwrap(), b2);
    let zero = m.class_of(&[0; 5]);
    for &b in m.bases() {
        assert_eq!(bby.act_set(&zero, b).unwrap(), b);
    }
    assert!(verify_bby_action(&bby).unwrap().passed());
}

#[test]
fn small_cases() {
    let triangle = RegularMatroid::from_graph(&indexed_graph(3, &[[0, 1], [1, 2], [0, 2]]), None).unwrap();
    assert_eq!(triangle.rank(), 2);
    assert_eq!(triangle.bases().len(), 3);
    let bridge = RegularMatroid::from_graph(&indexed_graph(2, &[[0, 1]]), None).unwrap();
    assert!(bridge.circuits().is_empty());
    assert!(bridge.is_coloop(0));
    assert!(SignaturePair::default_for(&bridge).is_acyclic());
}

#[test]
fn bases_match_trees_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let n = rng.gen_range(2..=5);
        let mut ends: Vec<[usize; 2]> = (1..n).map(|v| [rng.gen_range(0..v), v]).collect();
        for _ in 0..rng.gen_range(0..4) {
            let a = rng.gen_range(0..n);
            let b = (a + rng.gen_range(1..n)) % n;
            ends.push([a.min(b), a.max(b)]);
        }
        let g = indexed_graph(n, &ends);
        let m = RegularMatroid::from_graph(&g, None).unwrap();
        assert_eq!(m.bases().len(), g.spanning_trees().unwrap().len());
        assert_eq!(m.group_order(), BigInt::from(m.bases().len()));
    }
}

#[test]
fn graphic_minors_match_graph_minors() {
    for g in connected_multigraphs(5) {
        let m = RegularMatroid::from_graph(&g, None).unwrap();
        for e in 0..g.num_edges() {
            if !m.is_coloop(e) {
                let mm = m.minor(e, MinorOp::Delete).unwrap();
                let gm = RegularMatroid::from_graph(&g.delete(e).graph, None).unwrap();
                assert_eq!(supports(&mm, mm.circuits()), supports(&gm, gm.circuits()));
            }
            let mm = m.minor(e, MinorOp::Contract).unwrap();
            let gm = g.contract(e).graph;
            let loops: BTreeSet<BTreeSet<String>> = g
                .parallel_class(e)
                .without(e)
                .iter()
                .map(|f| [g.edge_id(f).to_string()].into())
                .collect();
            let mut expected = loops;
            if gm.num_edges() > 0 {
                let gmm = RegularMatroid::from_graph(&gm, None).unwrap();
                expected.extend(supports(&gmm, gmm.circuits()));
            }
            assert_eq!(supports(&mm, mm.circuits()), expected, "{g:?} / {e}");
        }
    }
}

#[test]
fn contraction_and_deletion_commute() {
    let m = r10();
    let pair = SignaturePair::default_for(&m);
    let (a, _) = m.minor_with_signatures(&pair, 0, MinorOp::Contract).unwrap();
    let a = a.minor(4, MinorOp::Delete).unwrap();
    let (b, _) = m.minor_with_signatures(&pair, 5, MinorOp::Delete).unwrap();
    let b = b.minor(0, MinorOp::Contract).unwrap();
    assert_eq!(a.labels(), b.labels());
    assert_eq!(a.bases(), b.bases());
    assert_eq!(a.circuits(), b.circuits());
    assert_eq!(a.cocircuits(), b.cocircuits());
}

#[test]
fn induced_signatures_keep_signs() {
    let m = square_with_diagonal();
    let pair = SignaturePair::default_for(&m).flipped(true, false);
    let e4 = m.index("e4").unwrap();
    let (mm, induced) = m.minor_with_signatures(&pair, e4, MinorOp::Delete).unwrap();
    // the one circuit avoiding e4 keeps its chosen sign
    assert_eq!(induced.circuits, [vec![-1, -1, 0, 1]]);
    assert_eq!(mm.labels(), ["e1", "e2", "e3", "e5"]);
    assert!(induced.is_acyclic());
}

#[test]
fn variant_on_negated_signature_is_base_action() {
    let m = square_with_diagonal();
    let pair = SignaturePair::default_for(&m);
    let plain = Bby::new(&m, &pair, MatroidVariant::Bby).unwrap();
    let primed = Bby::new(&m, &pair.flipped(true, false), MatroidVariant::Prime).unwrap();
    for c in m.classes() {
        for b in 0..m.bases().len() {
            assert_eq!(plain.act(&c, b).unwrap(), primed.act(&c, b).unwrap());
        }
    }
}

#[test]
fn consistency_report_on_example() {
    let m = square_with_diagonal();
    let found = examine("square", &m).unwrap();
    assert!(found.default_acyclic);
    assert!(found.torsor_violations.is_empty());
    assert_eq!(found.variants.len(), 4);
    assert!(found.variants.iter().all(|v| v.checks > 0));
}

#[test]
fn group_order_is_basis_count() {
    for g in connected_multigraphs(5) {
        let m = RegularMatroid::from_graph(&g, None).unwrap();
        assert_eq!(m.group_order(), BigInt::from(m.bases().len()));
        assert!(SignaturePair::default_for(&m).is_acyclic());
        let bby = Bby::new(&m, &SignaturePair::default_for(&m), MatroidVariant::Bby).unwrap();
        assert!(verify_bby_action(&bby).unwrap().passed());
    }
}

/// A nonnegative integer combination with coefficients below `bound` summing to zero.
fn small_positive_dependency(vs: &[SignedVector], bound: u32) -> bool {
    let k = vs.len();
    let total = (bound as u64).pow(k as u32);
    (1..total).any(|mut code| {
        let mut sum = vec![0i64; vs[0].len()];
        for v in vs {
            let c = (code % bound as u64) as i64;
            code /= bound as u64;
            for (s, &x) in sum.iter_mut().zip(v) {
                *s += c * x as i64;
            }
        }
        sum.iter().all(|&x| x == 0)
    })
}

proptest! {
    #[test]
    fn acyclicity_agrees_with_search(flips in proptest::collection::vec(any::<bool>(), 6)) {
        let m = square_with_diagonal();
        let vs: Vec<SignedVector> = m
            .cocircuits()
            .iter()
            .zip(&flips)
            .map(|(v, &f)| if f { v.iter().map(|x| -x).collect() } else { v.clone() })
            .collect();
        prop_assert_eq!(positive_functional(&vs).is_some(), !small_positive_dependency(&vs, 3));
    }

    #[test]
    fn circuit_acyclicity_agrees_with_search(flips in proptest::collection::vec(any::<bool>(), 3)) {
        let m = square_with_diagonal();
        let vs: Vec<SignedVector> = m
            .circuits()
            .iter()
            .zip(&flips)
            .map(|(v, &f)| if f { v.iter().map(|x| -x).collect() } else { v.clone() })
            .collect();
        prop_assert_eq!(positive_functional(&vs).is_some(), !small_positive_dependency(&vs, 3));
    }
}
