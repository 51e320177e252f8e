use std::cmp::Ordering;
use std::collections::BTreeMap;

use freefield::expr::{expression_to_automaton, parse_expression};
use freefield::freegroup::{reduce, Alphabet, GroupElement, Word};
use freefield::linalg::{dot, is_zero_vec};
use freefield::magnus::magnus_cmp;
use freefield::pipeline::group_coefficient;
use freefield::simplify::{check_well_ordered, remove_simplifications, support_envelope, ClosureConfig, ClosureOrder, DEFAULT_CYCLE_BUDGET};
use freefield::support::{min_supp, support_below, SupportQuery};
use freefield::{Rational, Representation};
use num_traits::Zero;

/// Expressions whose cancellations shorten a word by at most four letters.
const BOUNDED: [&str; 6] = ["x^-1 x^*", "x^* x^-1", "(x y)^* y^-1 x^-1", "(x + y)(x^-1 - y^-1)", "x y (y^-1 x^-1 + 1)", "(x^-1 + y) x (y^* + x^-1)"];

fn al() -> Alphabet {
    Alphabet::parse("x,y").unwrap()
}

fn closed(text: &str, order: ClosureOrder) -> (Representation, Representation) {
    let e = parse_expression::<Rational>(text, &al()).unwrap();
    let a = expression_to_automaton(&e, 2).unwrap();
    let s = remove_simplifications(&a, ClosureConfig { budget: None, order }).unwrap();
    (a.to_representation(), s)
}

/// Coefficients of words up to `max` whose forward vector is nonzero.
fn live_words(r: &Representation, max: usize) -> Vec<(Word, Rational)> {
    let mut out = Vec::new();
    let mut level = vec![(Word::empty(), r.lambda().to_vec())];
    for len in 0..=max {
        let mut next = Vec::new();
        for (w, v) in &level {
            out.push((w.clone(), dot(v, r.rho())));
            if len < max {
                for l in r.letters() {
                    let u = r.mu(l).left_mul(v);
                    if !is_zero_vec(&u) {
                        next.push((w.concat(&Word(vec![l])), u));
                    }
                }
            }
        }
        level = next;
    }
    out
}

#[test]
fn group_coefficients_are_preserved() {
    for text in BOUNDED {
        let (word, group) = closed(text, ClosureOrder::Simultaneous);
        let mut sums: BTreeMap<GroupElement, Rational> = BTreeMap::new();
        for (u, c) in live_words(&word, 10) {
            *sums.entry(reduce(&u)).or_insert_with(Rational::zero) += c;
        }
        for (g, c) in &sums {
            if g.len() <= 6 {
                assert_eq!(&group_coefficient(&group, g), c, "{text} at {}", al().format_element(g));
            }
        }
    }
}

#[test]
fn output_lives_on_reduced_words() {
    for text in BOUNDED.iter().chain(&["(x^-1 y x)^* x^-1", "(x^-1 y x)^*"]) {
        let (_, group) = closed(text, ClosureOrder::Simultaneous);
        for (w, c) in group.coefficients_up_to(6) {
            if !w.is_reduced() {
                assert!(c.is_zero(), "{text} at {}", al().format_word(&w));
            }
        }
    }
}

#[test]
fn closure_orders_agree() {
    for text in BOUNDED.iter().chain(&["(x^-1 y x)^* x^-1", "((x y)^* y^-1)^* x^-1"]) {
        let (_, a) = closed(text, ClosureOrder::Simultaneous);
        for order in [ClosureOrder::Sequential, ClosureOrder::SequentialReversed] {
            let (_, b) = closed(text, order);
            assert!(a.difference(&b).unwrap().is_zero(), "{text} {order:?}");
        }
    }
}

#[test]
fn well_ordered_envelopes_have_minima() {
    for text in ["(x^-1 y x)^* x^-1", "(x y)^*", "(y^-1 x)^* + y^-1", "x^* y^*", "(x y^-1)^* x^-1"] {
        let e = parse_expression::<Rational>(text, &al()).unwrap();
        assert!(check_well_ordered(&support_envelope(&e, 2).unwrap(), DEFAULT_CYCLE_BUDGET).unwrap(), "{text}");
        let (_, group) = closed(text, ClosureOrder::Simultaneous);
        let (m, _) = min_supp(&SupportQuery::new(&group)).unwrap();
        let (found, _) = support_below(&group, 7, 1_000_000).unwrap();
        for (g, _) in found {
            assert_ne!(magnus_cmp(&g, &m).unwrap(), Ordering::Less, "{text}");
        }
    }
    let e = parse_expression::<Rational>("(x^-1)^*", &al()).unwrap();
    assert!(!check_well_ordered(&support_envelope(&e, 2).unwrap(), DEFAULT_CYCLE_BUDGET).unwrap());
}
