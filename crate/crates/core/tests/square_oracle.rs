//! Fast square detection against the pairwise definition.

use proptest::prelude::*;
use sqfree::perm::{find_square_through, is_order_isomorphic, suffix_square};
use sqfree::search::naive;
use sqfree::{canonicalize, order_isomorphic, Perm, SquareWitness};

#[test]
fn find_square_matches_naive_on_all_short_permutations() {
    for n in 0..=8 {
        for p in naive::all_permutations(n) {
            let expected = naive::all_squares(&p)
                .first()
                .map(|&(start, half_len)| SquareWitness { start, half_len });
            assert_eq!(sqfree::perm::find_square(&p), expected, "{p:?}");
        }
    }
}

#[test]
fn squares_end_at_some_prefix() {
    for p in naive::all_permutations(7) {
        let prefix_hit = (1..=p.len()).any(|k| suffix_square(&p[..k]).is_some());
        assert_eq!(prefix_hit, sqfree::perm::find_square(&p).is_some(), "{p:?}");
    }
}

#[test]
fn through_index_sees_every_new_square() {
    // for square-free p, an extension has a square iff one covers the new symbol
    for p in naive::square_free_permutations(6) {
        let p = Perm::new(p).unwrap();
        for pos in 0..=p.len() {
            for ext in p.extensions(pos).unwrap() {
                assert_eq!(
                    find_square_through(ext.symbols(), pos).is_some(),
                    naive::contains_square(ext.symbols()),
                    "{ext}"
                );
            }
        }
    }
}

fn distinct_symbols(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::hash_set(-1000i64..1000, 0..=max_len).prop_flat_map(|set| {
        let v: Vec<i64> = set.into_iter().collect();
        Just(v).prop_shuffle()
    })
}

proptest! {
    #[test]
    fn iso_matches_sign_condition(a in distinct_symbols(9), b in distinct_symbols(9)) {
        prop_assert_eq!(is_order_isomorphic(&a, &b), naive::sign_isomorphic(&a, &b));
    }

    #[test]
    fn iso_to_own_canonical_form(a in distinct_symbols(12)) {
        let p = Perm::new(a).unwrap();
        let c = p.canonical();
        prop_assert!(order_isomorphic(&p, &c));
        prop_assert!(c.is_canonical());
        prop_assert_eq!(canonicalize(c.symbols()).unwrap(), c.clone());
        prop_assert_eq!(p.find_square(), c.find_square());
    }

    #[test]
    fn iso_equals_canonical_equality(a in distinct_symbols(6), b in distinct_symbols(6)) {
        let (p, q) = (Perm::new(a).unwrap(), Perm::new(b).unwrap());
        prop_assert_eq!(order_isomorphic(&p, &q), p.canonical() == q.canonical());
    }

    #[test]
    fn extensions_delete_back(a in distinct_symbols(10), pos_seed in 0usize..100) {
        let p = Perm::new(a).unwrap();
        let pos = pos_seed % (p.len() + 1);
        let exts = p.extensions(pos).unwrap();
        prop_assert_eq!(exts.len(), p.len() + 1);
        for (k, e) in exts.iter().enumerate() {
            prop_assert!(e.is_canonical());
            prop_assert_eq!(e.symbols()[pos], k as i64 + 1);
            prop_assert_eq!(e.without(pos).canonical(), p.canonical());
        }
        for (i, e) in exts.iter().enumerate() {
            for f in &exts[i + 1..] {
                prop_assert!(!order_isomorphic(e, f));
            }
        }
    }

    #[test]
    fn text_form_roundtrip(a in distinct_symbols(15)) {
        let p = Perm::new(a).unwrap();
        prop_assert_eq!(p.to_string().parse::<Perm>().unwrap(), p.clone());
        let commas = p.symbols().iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",");
        prop_assert_eq!(commas.parse::<Perm>().unwrap(), p);
    }
}

#[test]
fn every_extension_class_is_represented() {
    // raw insertions of any value land in exactly one canonical class
    let p = Perm::new(vec![5, -2, 9, 0]).unwrap();
    for pos in 0..=p.len() {
        let reps = p.extensions(pos).unwrap();
        for inserted in [-10, -1, 1, 7, 100] {
            let mut raw = p.symbols().to_vec();
            raw.insert(pos, inserted);
            let raw = Perm::new(raw).unwrap();
            assert_eq!(reps.iter().filter(|r| order_isomorphic(r, &raw)).count(), 1);
        }
    }
}
