use std::cmp::Ordering;

use freefield::connes::reduced_words;
use freefield::expr::{expression_to_representation, parse_expression};
use freefield::freegroup::{Alphabet, GroupElement, Word};
use freefield::linalg::Matrix;
use freefield::magnus::magnus_cmp;
use freefield::pipeline::group_coefficient;
use freefield::support::{is_pseudo_regular, jacob_bound, min_supp, support_subword, SupportQuery};
use freefield::{series, Rational};
use num_traits::Zero;
use proptest::prelude::*;

const CORPUS: [&str; 8] = ["x", "x^-1 + y", "(x y)^*", "y^* x", "(x^-1 y x)^* x^-1", "2 - x^-1 (1 - x)^-1", "(1 - x)^-1 y", "(y^-1 x)^* - x"];

#[test]
fn min_supp_is_below_the_ball() {
    let al = Alphabet::parse("x,y").unwrap();
    let ball: Vec<GroupElement> = reduced_words(2, 6).into_iter().map(|w| GroupElement::from_reduced(w).unwrap()).collect();
    for text in CORPUS {
        let r = series(text, &al).unwrap();
        let q = SupportQuery { bound_override: Some(8), ..SupportQuery::new(&r) };
        let (m, c) = min_supp(&q).unwrap();
        assert_eq!(group_coefficient(&r, &m), c);
        for g in &ball {
            if !group_coefficient(&r, g).is_zero() {
                assert_ne!(magnus_cmp(g, &m).unwrap(), Ordering::Less, "{text}: {g:?} below {m:?}");
            }
        }
    }
}

fn is_strict_subword(v: &Word, w: &Word) -> bool {
    let mut it = w.letters().iter();
    v.len() < w.len() && v.letters().iter().all(|l| it.any(|m| m == l))
}

#[test]
fn support_subwords() {
    let al = Alphabet::parse("a,b,c").unwrap();
    for text in ["(b + a c)^*", "(a b)^* c + b^*", "a^* b a^*"] {
        let r = expression_to_representation(&parse_expression::<Rational>(text, &al).unwrap(), 3).unwrap().reduce();
        for (w, c) in r.coefficients_up_to(7) {
            if c.is_zero() || w.len() < r.dim().max(1) || !w.is_positive() {
                continue;
            }
            let v = support_subword(&r, &w).unwrap();
            assert!(is_strict_subword(&v, &w), "{text}: {v:?} from {w:?}");
            assert!(!r.coefficient(&v).is_zero(), "{text}: {v:?}");
        }
    }
}

#[test]
fn jacob_bound_grows() {
    for n in 1..8 {
        assert!(jacob_bound(n) < jacob_bound(n + 1));
    }
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

proptest! {
    #[test]
    fn pseudo_regularity_matches_rank_stabilization(d in 1..5usize, seed in prop::collection::vec(prop_oneof![Just(0i64), Just(0), -1..=1i64], 16)) {
        let m = Matrix::from_rows((0..d).map(|i| (0..d).map(|j| q(seed[i * 4 + j])).collect()).collect());
        let mut powers = vec![m.clone()];
        for _ in 0..d {
            let next = powers.last().unwrap().mul(&m);
            powers.push(next);
        }
        let ranks: Vec<usize> = powers.iter().map(Matrix::rank).collect();
        // stabilization index: first k with rank M^k = rank M^(k+1)
        let k = (0..d).find(|&k| ranks[k] == ranks[k + 1]).unwrap_or(d);
        prop_assert_eq!(is_pseudo_regular(&m).unwrap(), k == 0);
    }
}
