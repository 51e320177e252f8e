use std::cmp::Ordering;

use freefield::connes::reduced_words;
use freefield::freegroup::{group_mul, GroupElement, Letter, Word};
use freefield::magnus::{magnus_cmp, MonoidPolynomial, magnus_truncated, military_cmp, subword_count};
use proptest::prelude::*;

fn ball(gens: usize, max_len: usize) -> Vec<GroupElement> {
    reduced_words(gens, max_len).into_iter().map(|w| GroupElement::from_reduced(w).unwrap()).collect()
}

fn positive(gens: usize, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut level = vec![Word::empty()];
    for _ in 0..max_len {
        level = level.iter().flat_map(|w| (0..gens).map(move |g| w.concat(&Word::from_gens(&[g])))).collect();
        out.extend(level.iter().cloned());
    }
    out.sort_by(military_cmp);
    out
}

/// Comparison by scanning all Magnus coefficients in military order.
fn all_words_cmp(ma: &MonoidPolynomial, mb: &MonoidPolynomial, words: &[Word]) -> Ordering {
    for w in words {
        match ma.coefficient(w).cmp(&mb.coefficient(w)) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

#[test]
fn lyndon_comparison_matches_all_words() {
    let elems = ball(2, 4);
    let words = positive(2, 8);
    let images: Vec<MonoidPolynomial> = elems.iter().map(|g| magnus_truncated(g, 8)).collect();
    for (a, ma) in elems.iter().zip(&images) {
        for (b, mb) in elems.iter().zip(&images) {
            assert_eq!(magnus_cmp(a, b).unwrap(), all_words_cmp(ma, mb, &words), "{a:?} {b:?}");
        }
    }
}

#[test]
fn subword_count_is_magnus_coefficient() {
    let pats = positive(2, 4);
    for omega in ball(2, 4) {
        let m = magnus_truncated(&omega, 4);
        for v in &pats {
            assert_eq!(subword_count(&omega, v).unwrap(), m.coefficient(v), "{omega:?} {v:?}");
        }
    }
}

fn element(max_len: usize) -> impl Strategy<Value = GroupElement> {
    prop::collection::vec(0..4usize, 0..=max_len)
        .prop_map(|codes| freefield::freegroup::reduce(&Word(codes.into_iter().map(Letter::from_code).collect())))
}

proptest! {
    #[test]
    fn bi_invariance(a in element(4), b in element(4), u in element(3), v in element(3)) {
        let o = magnus_cmp(&a, &b).unwrap();
        let moved = magnus_cmp(&group_mul(&u, &group_mul(&a, &v)), &group_mul(&u, &group_mul(&b, &v))).unwrap();
        prop_assert_eq!(o, moved);
    }

    #[test]
    fn total_order(a in element(4), b in element(4), c in element(4)) {
        let ab = magnus_cmp(&a, &b).unwrap();
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        prop_assert_eq!(magnus_cmp(&b, &a).unwrap(), ab.reverse());
        let bc = magnus_cmp(&b, &c).unwrap();
        if ab != Ordering::Greater && bc != Ordering::Greater {
            prop_assert_ne!(magnus_cmp(&a, &c).unwrap(), Ordering::Greater);
        }
    }
}
