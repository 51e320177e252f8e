//! Rational expressions and group polynomials.

use std::collections::BTreeMap;

use crate::freegroup::{reduce, Alphabet, GroupElement, Letter, Word};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq)]
pub enum RatExpr<K> {
    ScalarLit(K),
    Gen(Letter),
    Sum(Vec<RatExpr<K>>),
    Product(Vec<RatExpr<K>>),
    Neg(Box<RatExpr<K>>),
    Star(Box<RatExpr<K>>),
    Inverse(Box<RatExpr<K>>),
}

impl<K: Field> RatExpr<K> {
    pub fn scalar(c: K) -> Self {
        RatExpr::ScalarLit(c)
    }

    pub fn zero() -> Self {
        RatExpr::ScalarLit(K::zero())
    }

    pub fn one() -> Self {
        RatExpr::ScalarLit(K::one())
    }

    pub fn gen(l: Letter) -> Self {
        RatExpr::Gen(l)
    }

    pub fn neg(e: RatExpr<K>) -> Self {
        RatExpr::Neg(Box::new(e))
    }

    pub fn star(e: RatExpr<K>) -> Self {
        RatExpr::Star(Box::new(e))
    }

    pub fn inverse(e: RatExpr<K>) -> Self {
        RatExpr::Inverse(Box::new(e))
    }

    /// Product of the letters of `w`, scaled by `c`.
    pub fn monomial(c: K, w: &Word) -> Self {
        let mut v = vec![RatExpr::ScalarLit(c)];
        v.extend(w.letters().iter().map(|&l| RatExpr::Gen(l)));
        Self::product(v)
    }

    /// Flattening sum that folds scalars and drops zeros.
    pub fn sum(children: Vec<RatExpr<K>>) -> Self {
        let mut constant = K::zero();
        let mut rest = Vec::new();
        let mut stack: Vec<RatExpr<K>> = children.into_iter().rev().collect();
        while let Some(c) = stack.pop() {
            match c {
                RatExpr::Sum(inner) => stack.extend(inner.into_iter().rev()),
                RatExpr::ScalarLit(k) => constant += k,
                other => rest.push(other),
            }
        }
        if !constant.is_zero() {
            rest.insert(0, RatExpr::ScalarLit(constant));
        }
        match rest.len() {
            0 => Self::zero(),
            1 => rest.pop().unwrap(),
            _ => RatExpr::Sum(rest),
        }
    }

    /// Flattening product that collects scalar factors (they are central) in front.
    pub fn product(children: Vec<RatExpr<K>>) -> Self {
        let mut c = K::one();
        let mut rest = Vec::new();
        let mut stack: Vec<RatExpr<K>> = children.into_iter().rev().collect();
        while let Some(f) = stack.pop() {
            match f {
                RatExpr::Product(inner) => stack.extend(inner.into_iter().rev()),
                RatExpr::ScalarLit(k) => c *= k,
                RatExpr::Neg(inner) => {
                    c = -c;
                    stack.push(*inner);
                }
                other => rest.push(other),
            }
        }
        if c.is_zero() {
            return Self::zero();
        }
        if !c.is_one() {
            rest.insert(0, RatExpr::ScalarLit(c));
        }
        match rest.len() {
            0 => Self::one(),
            1 => rest.pop().unwrap(),
            _ => RatExpr::Product(rest),
        }
    }

    /// Star that knows `0^* = 1`.
    pub fn star_of(e: RatExpr<K>) -> Self {
        if matches!(&e, RatExpr::ScalarLit(k) if k.is_zero()) {
            return Self::one();
        }
        Self::star(e)
    }

    /// No `Inverse` node anywhere.
    pub fn is_star_rational(&self) -> bool {
        match self {
            RatExpr::ScalarLit(_) | RatExpr::Gen(_) => true,
            RatExpr::Sum(v) | RatExpr::Product(v) => v.iter().all(|c| c.is_star_rational()),
            RatExpr::Neg(c) | RatExpr::Star(c) => c.is_star_rational(),
            RatExpr::Inverse(_) => false,
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + match self {
            RatExpr::ScalarLit(_) | RatExpr::Gen(_) => 0,
            RatExpr::Sum(v) | RatExpr::Product(v) => v.iter().map(|c| c.size()).sum(),
            RatExpr::Neg(c) | RatExpr::Star(c) | RatExpr::Inverse(c) => c.size(),
        }
    }

    pub fn max_generator(&self) -> Option<usize> {
        match self {
            RatExpr::ScalarLit(_) => None,
            RatExpr::Gen(l) => Some(l.generator_index),
            RatExpr::Sum(v) | RatExpr::Product(v) => v.iter().filter_map(|c| c.max_generator()).max(),
            RatExpr::Neg(c) | RatExpr::Star(c) | RatExpr::Inverse(c) => c.max_generator(),
        }
    }

    fn level(&self) -> u8 {
        match self {
            RatExpr::Sum(_) | RatExpr::Neg(_) => 0,
            RatExpr::ScalarLit(k) if *k < K::zero() => 0,
            RatExpr::Product(_) => 1,
            _ => 2,
        }
    }

    fn write(&self, al: &Alphabet, min_level: u8, out: &mut String) {
        let paren = self.level() < min_level;
        if paren {
            out.push('(');
        }
        match self {
            RatExpr::ScalarLit(k) => out.push_str(&k.to_string()),
            RatExpr::Gen(l) => out.push_str(&al.letter_name(*l)),
            RatExpr::Sum(v) => {
                for (i, c) in v.iter().enumerate() {
                    match c {
                        RatExpr::Neg(inner) if i > 0 => {
                            out.push_str(" - ");
                            inner.write(al, 1, out);
                        }
                        _ => {
                            if i > 0 {
                                out.push_str(" + ");
                            }
                            c.write(al, 0, out);
                        }
                    }
                }
            }
            RatExpr::Product(v) => {
                for (i, c) in v.iter().enumerate() {
                    if i > 0 {
                        out.push(' ');
                    }
                    c.write(al, 2, out);
                }
            }
            RatExpr::Neg(c) => {
                out.push('-');
                c.write(al, 1, out);
            }
            RatExpr::Star(c) => {
                c.write(al, 2, out);
                out.push_str("^*");
            }
            RatExpr::Inverse(c) => {
                c.write(al, 2, out);
                out.push_str("^-1");
            }
        }
        if paren {
            out.push(')');
        }
    }

    /// Text in the input grammar; reparses to an equal series.
    pub fn display(&self, al: &Alphabet) -> String {
        let mut s = String::new();
        self.write(al, 0, &mut s);
        s
    }
}

/// Finite sum of group elements with nonzero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupPolynomial<K> {
    terms: BTreeMap<GroupElement, K>,
}

impl<K: Field> Default for GroupPolynomial<K> {
    fn default() -> Self {
        GroupPolynomial { terms: BTreeMap::new() }
    }
}

impl<K: Field> GroupPolynomial<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, g: GroupElement, c: K) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(g.clone()).or_insert_with(K::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&g);
        }
    }

    /// Add `c * w`, reducing the word first.
    pub fn add_word(&mut self, w: &Word, c: K) {
        self.add_term(reduce(w), c);
    }

    pub fn coefficient(&self, g: &GroupElement) -> K {
        self.terms.get(g).cloned().unwrap_or_else(K::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &GroupElement> {
        self.terms.keys()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &K)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_expr(&self) -> RatExpr<K> {
        RatExpr::sum(self.terms.iter().map(|(g, c)| RatExpr::monomial(c.clone(), g.word())).collect())
    }
}
