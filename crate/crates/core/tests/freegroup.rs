use freefield::freegroup::{group_inv, group_mul, is_reduced_factorization, prefix_suffixes, reduce, GroupElement, Letter, Word};
use proptest::prelude::*;

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..6usize, 0..=max_len).prop_map(|codes| Word(codes.into_iter().map(Letter::from_code).collect()))
}

fn element(max_len: usize) -> impl Strategy<Value = GroupElement> {
    word(max_len).prop_map(|w| reduce(&w))
}

proptest! {
    #[test]
    fn reduce_is_idempotent(w in word(12)) {
        let r = reduce(&w);
        prop_assert!(r.word().is_reduced());
        prop_assert_eq!(reduce(r.word()), r);
    }

    #[test]
    fn cancelling_pairs_do_not_matter(w in word(10), at in 0..11usize, code in 0..6usize) {
        let l = Letter::from_code(code);
        let mut v = w.0.clone();
        let at = at.min(v.len());
        v.splice(at..at, [l, l.inverse()]);
        prop_assert_eq!(reduce(&Word(v)), reduce(&w));
    }

    #[test]
    fn length_law(a in element(8), b in element(8)) {
        let ab = group_mul(&a, &b);
        prop_assert!(ab.len() <= a.len() + b.len());
        let factored = is_reduced_factorization(&ab, &[a.clone(), b.clone()]);
        prop_assert_eq!(ab.len() == a.len() + b.len(), factored);
    }

    #[test]
    fn inverse_laws(a in element(10)) {
        prop_assert_eq!(group_inv(&group_inv(&a)), a.clone());
        prop_assert!(group_mul(&a, &group_inv(&a)).is_identity());
        prop_assert!(group_mul(&group_inv(&a), &a).is_identity());
    }

    #[test]
    fn suffix_count_is_length(a in element(10)) {
        prop_assume!(!a.is_identity());
        let (p, suffixes) = prefix_suffixes(&a).unwrap();
        prop_assert_eq!(suffixes.len(), a.len());
        prop_assert_eq!(p.len() + 1, a.len());
    }
}
