use num_rational::BigRational;
use num_traits::{One, Zero};

use super::*;
use crate::freegroup::{Alphabet, Letter, Word};
use crate::linalg::Matrix;
use crate::scalar::Field;

type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_i64(n)
}

fn abc() -> Alphabet {
    Alphabet::new(&["a", "b", "c"]).unwrap()
}

/// The two-state automaton for (b + ac)^*.
fn bac_star() -> WeightedAutomaton<Q> {
    let mut a = WeightedAutomaton::new(3, 2);
    a.add_initial(0, q(1));
    a.set_final(0, q(1));
    a.add_edge(0, 1, Letter::gen(0), q(1));
    a.add_edge(0, 0, Letter::gen(1), q(1));
    a.add_edge(1, 0, Letter::gen(2), q(1));
    a
}

fn in_bac_star(w: &Word) -> bool {
    let ls = w.letters();
    let mut i = 0;
    while i < ls.len() {
        match (ls[i].barred, ls[i].generator_index) {
            (false, 1) => i += 1,
            (false, 0) if i + 1 < ls.len() && ls[i + 1] == Letter::gen(2) => i += 2,
            _ => return false,
        }
    }
    true
}

#[test]
fn b_ac_star_matrices() {
    let r = bac_star().to_representation();
    let m = |rows: [[i64; 2]; 2]| Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect());
    assert_eq!(r.mu(Letter::gen(0)), &m([[0, 1], [0, 0]]));
    assert_eq!(r.mu(Letter::gen(1)), &m([[1, 0], [0, 0]]));
    assert_eq!(r.mu(Letter::gen(2)), &m([[0, 0], [1, 0]]));
    assert_eq!(r.lambda(), &[q(1), q(0)]);
    assert_eq!(r.rho(), &[q(1), q(0)]);
}

#[test]
fn coefficient_examples() {
    let r = bac_star().to_representation();
    let al = abc();
    assert_eq!(r.coefficient(&al.parse_word("bacb").unwrap()), q(1));
    assert_eq!(r.coefficient(&al.parse_word("ca").unwrap()), q(0));
    assert_eq!(r.coefficient(&Word::empty()), q(1));
    let positive: Vec<(Word, Q)> =
        r.coefficients_up_to(5).into_iter().filter(|(w, _)| w.is_positive()).collect();
    for (w, c) in positive {
        assert_eq!(c, if in_bac_star(&w) { q(1) } else { q(0) }, "{}", al.format_word(&w));
    }
}

#[test]
fn empty_and_loop() {
    let e: WeightedAutomaton<Q> = WeightedAutomaton::new(1, 0);
    assert_eq!(e.to_representation().dim(), 0);
    assert!(e.to_representation().is_zero());
    let mut a = WeightedAutomaton::new(1, 1);
    a.add_initial(0, q(1));
    a.set_final(0, q(1));
    a.add_edge(0, 0, Letter::gen(0), q(2));
    let r = a.to_representation();
    for k in 0..4 {
        assert_eq!(r.coefficient(&Word::from_gens(&vec![0; k])), q(1 << k));
    }
}

#[test]
fn hadamard_examples() {
    let x = Word::from_gens(&[0]);
    let r = LinearRepresentation::monomial(1, &x, q(2)).hadamard(&LinearRepresentation::monomial(1, &x, q(3))).unwrap();
    assert_eq!(r.coefficient(&x), q(6));
    let s = bac_star().to_representation();
    let h = s.hadamard(&s).unwrap();
    for (w, c) in s.coefficients_up_to(4) {
        assert_eq!(h.coefficient(&w), c.clone() * &c);
    }
}

#[test]
fn translate_examples() {
    let al = abc();
    let s = bac_star().to_representation();
    let t = s.right_translate(&al.parse_word("c").unwrap());
    assert_eq!(t.coefficient(&al.parse_word("ba").unwrap()), q(1));
    assert_eq!(s.right_translate(&Word::empty()), s);
    let xy = LinearRepresentation::monomial(2, &Word::from_gens(&[0, 1]), q(1));
    let tx = xy.right_translate(&Word::from_gens(&[1]));
    assert!(tx.difference(&LinearRepresentation::monomial(2, &Word::from_gens(&[0]), q(1))).unwrap().is_zero());
}

#[test]
fn reduction_examples() {
    let z = LinearRepresentation::monomial(1, &Word::from_gens(&[0]), q(1));
    let zero3 = z.difference(&z).unwrap().sum(&LinearRepresentation::constant(1, q(0))).unwrap();
    assert_eq!(zero3.reduce().dim(), 0);
    assert_eq!(bac_star().to_representation().reduce().dim(), 2);
    // pad x with three unreachable states
    let x = LinearRepresentation::monomial(1, &Word::from_gens(&[0]), q(1));
    let junk = LinearRepresentation::monomial(1, &Word::from_gens(&[0, 0]), q(5)).with_lambda(vec![q(0); 3]);
    let padded = x.sum(&junk).unwrap();
    assert_eq!(padded.dim(), 5);
    assert_eq!(padded.reduce().dim(), 2);
    assert_eq!(LinearRepresentation::monomial(2, &Word::from_gens(&[0, 1]), q(1)).hankel_rank_word(), 3);
    assert_eq!(LinearRepresentation::<Q>::zero(2).hankel_rank_word(), 0);
}

#[test]
fn star_identity_at_word_level() {
    let x = LinearRepresentation::monomial(1, &Word::from_gens(&[0]), q(1));
    let xs = x.star().unwrap();
    let one_minus_x = LinearRepresentation::constant(1, q(1)).difference(&x).unwrap();
    let lhs = one_minus_x.product(&xs).unwrap();
    let d = lhs.difference(&LinearRepresentation::constant(1, q(1))).unwrap();
    assert!(d.is_zero());
    assert!(d.is_zero_by_levels());
    assert!(!bac_star().to_representation().is_zero());
    assert!(LinearRepresentation::constant(1, q(1)).star().is_err());
}

#[test]
fn json_round_trip() {
    let al = abc();
    let a = bac_star();
    let text = a.to_json(&al);
    let (al2, b) = WeightedAutomaton::<Q>::from_json(&text).unwrap();
    assert_eq!(al2, al);
    assert!(a.to_representation().difference(&b.to_representation()).unwrap().is_zero());
    assert!(text.contains("\"edges\""));
    let dot = a.to_dot(&al);
    assert!(dot.contains("doublecircle"));
    assert!(dot.contains("init0 -> q0"));
}

#[test]
fn standardize_preserves_series() {
    let a = bac_star();
    assert!(!a.is_standard());
    let s = a.standardize();
    assert!(s.is_standard());
    assert!(a.to_representation().difference(&s.to_representation()).unwrap().is_zero());
    let _ = (Q::one(), Q::zero());
}
