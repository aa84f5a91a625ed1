mod common;

use common::{closure, dag, poset, realizes_by_definition};
use posetdim::oracle::{all_linear_extensions, brute_dimension, count_linear_extensions};
use posetdim::poset::{is_isomorphic, is_linear_extension, reverse_realizer};
use posetdim::{realizes, ElementId, LinearExtension, Poset, Realizer};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn ids(n: usize) -> Vec<ElementId> {
    (0..n).map(ElementId).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closure_matches_floyd_warshall((labels, edges) in dag(9)) {
        let n = labels.len();
        let p = Poset::from_index_relations(labels, &edges).unwrap();
        let want = closure(n, &edges);
        for (a, row) in want.iter().enumerate() {
            for (b, &lt) in row.iter().enumerate() {
                prop_assert_eq!(p.less(ElementId(a), ElementId(b)), lt);
            }
        }
        prop_assert!(p.check_axioms());
    }

    #[test]
    fn order_axioms(p in poset(9)) {
        for a in p.elements() {
            prop_assert!(!p.less(a, a));
            for b in p.elements() {
                prop_assert!(!(p.less(a, b) && p.less(b, a)));
                for c in p.elements() {
                    if p.less(a, b) && p.less(b, c) {
                        prop_assert!(p.less(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn covers_are_the_transitive_reduction(p in poset(9)) {
        let covers = p.covers();
        for a in p.elements() {
            for b in p.elements() {
                let is_cover = p.less(a, b) && !p.elements().any(|c| p.less(a, c) && p.less(c, b));
                prop_assert_eq!(covers.contains(&(a, b)), is_cover);
            }
        }
        let edges: Vec<(usize, usize)> = covers.iter().map(|&(a, b)| (a.0, b.0)).collect();
        let again = Poset::from_index_relations(p.labels().to_vec(), &edges).unwrap();
        prop_assert_eq!(again, p);
    }

    #[test]
    fn extension_enumeration_is_exact(p in poset(7)) {
        let exts = all_linear_extensions(&p, 10_000).unwrap();
        prop_assert_eq!(exts.len() as u64, count_linear_extensions(&p).unwrap());
        let mut sorted = exts.clone();
        sorted.sort_by(|a, b| a.order.cmp(&b.order));
        sorted.dedup();
        prop_assert_eq!(sorted.len(), exts.len());
        for l in &exts {
            prop_assert!(is_linear_extension(&p, &l.order));
        }
    }

    #[test]
    fn realizes_agrees_with_definition(p in poset(6), picks in proptest::collection::vec(any::<prop::sample::Index>(), 0..4)) {
        let exts = all_linear_extensions(&p, 10_000).unwrap();
        let r = Realizer::new(picks.iter().map(|i| exts[i.index(exts.len())].clone()).collect());
        prop_assert_eq!(realizes(&p, &r), realizes_by_definition(&p, &r));
    }

    #[test]
    fn realizer_restricts_and_dualizes(p in poset(7), keep in subsequence((0..7).collect::<Vec<usize>>(), 0..=7)) {
        let res = brute_dimension(&p, 4, 100_000).unwrap();
        let r = res.witness.expect("posets on 7 elements have dimension at most 3");
        prop_assert!(realizes(&p, &r));
        prop_assert!(realizes(&p.dual(), &reverse_realizer(&r)));

        let subset: Vec<ElementId> = keep.into_iter().filter(|&i| i < p.len()).map(ElementId).collect();
        let q = p.restrict(&subset).unwrap();
        let rq = r.restrict(&p, &subset).unwrap();
        prop_assert!(realizes(&q, &rq));
    }

    #[test]
    fn dual_of_non_realizer_fails_too(p in poset(6), picks in proptest::collection::vec(any::<prop::sample::Index>(), 1..3)) {
        let exts = all_linear_extensions(&p, 10_000).unwrap();
        let r = Realizer::new(picks.iter().map(|i| exts[i.index(exts.len())].clone()).collect());
        prop_assert_eq!(realizes(&p, &r), realizes(&p.dual(), &reverse_realizer(&r)));
    }

    #[test]
    fn relabelling_is_an_isomorphism(p in poset(8), rot in 0usize..8) {
        let n = p.len();
        let perm: Vec<usize> = (0..n).map(|i| (i + rot) % n.max(1)).collect();
        let labels: Vec<String> = (0..n).map(|i| format!("q{}", perm[i])).collect();
        let edges: Vec<(usize, usize)> = p.covers().iter().map(|&(a, b)| (a.0, b.0)).collect();
        let q = Poset::from_index_relations(labels, &edges).unwrap();
        prop_assert!(is_isomorphic(&p, &q).unwrap());
        prop_assert!(is_isomorphic(&p, &p.dual()).unwrap() == is_isomorphic(&p.dual(), &p).unwrap());
    }
}

#[test]
fn empty_and_singleton_are_legal() {
    let e = Poset::empty();
    assert!(realizes(&e, &Realizer::from_words(vec![vec![]; 3])));
    assert!(realizes(&e, &Realizer::default()));
    let s = Poset::new(&["s"], &[] as &[(&str, &str)]).unwrap();
    assert!(realizes(
        &s,
        &Realizer::new(vec![LinearExtension::new(ids(1))])
    ));
    assert!(!realizes(&s, &Realizer::default()));
}

#[test]
fn non_isomorphic_shapes() {
    let chain = Poset::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
    let vee = Poset::new(&["a", "b", "c"], &[("a", "b"), ("a", "c")]).unwrap();
    assert!(!is_isomorphic(&chain, &vee).unwrap());
    assert!(!is_isomorphic(&vee, &vee.dual()).unwrap());
}
