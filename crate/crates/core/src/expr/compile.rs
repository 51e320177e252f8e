//! Compilation of star-rational expressions to automata and representations.

use crate::error::{Error, Result};
use crate::expr::ast::RatExpr;
use crate::freegroup::Letter;
use crate::scalar::Field;
use crate::wfa::{LinearRepresentation, WeightedAutomaton};

/// Automaton with a distinguished initial state of weight 1.
/// `standard` means the initial state has no incoming edges.
#[derive(Clone)]
struct Build<K> {
    n: usize,
    init: usize,
    edges: Vec<(usize, Letter, usize, K)>,
    finals: Vec<K>,
    standard: bool,
}

impl<K: Field> Build<K> {
    fn scalar(c: K) -> Self {
        Build { n: 1, init: 0, edges: vec![], finals: vec![c], standard: true }
    }

    fn letter(l: Letter) -> Self {
        Build { n: 2, init: 0, edges: vec![(0, l, 1, K::one())], finals: vec![K::zero(), K::one()], standard: true }
    }

    fn scale(mut self, c: &K) -> Self {
        for f in self.finals.iter_mut() {
            *f *= c;
        }
        self
    }

    fn standardize(self) -> Self {
        if self.standard {
            return self;
        }
        let mut b = self;
        let s = b.n;
        b.n += 1;
        let out: Vec<_> = b.edges.iter().filter(|e| e.0 == b.init).cloned().collect();
        for (_, l, d, w) in out {
            b.edges.push((s, l, d, w));
        }
        let f = b.finals[b.init].clone();
        b.finals.push(f);
        b.init = s;
        b.standard = true;
        b
    }

    /// Disjoint copy of `other` without its initial state; returns the state map.
    fn absorb(&mut self, other: &Build<K>) -> Vec<usize> {
        let mut map = vec![usize::MAX; other.n];
        for q in 0..other.n {
            if q != other.init {
                map[q] = self.n;
                self.n += 1;
                self.finals.push(other.finals[q].clone());
            }
        }
        for (s, l, d, w) in &other.edges {
            if *s != other.init {
                self.edges.push((map[*s], *l, map[*d], w.clone()));
            }
        }
        map
    }

    fn sum(parts: Vec<Build<K>>) -> Self {
        let mut b = Build { n: 1, init: 0, edges: vec![], finals: vec![K::zero()], standard: true };
        for p in parts {
            let p = p.standardize();
            let map = b.absorb(&p);
            for (s, l, d, w) in &p.edges {
                if *s == p.init {
                    b.edges.push((0, *l, map[*d], w.clone()));
                }
            }
            b.finals[0] += &p.finals[p.init];
        }
        b
    }

    fn product(self, right: Build<K>) -> Self {
        let right = right.standardize();
        let mut b = self;
        let left_n = b.n;
        let map = b.absorb(&right);
        let r_eps = right.finals[right.init].clone();
        for f in 0..left_n {
            let w = b.finals[f].clone();
            if w.is_zero() {
                continue;
            }
            for (s, l, d, v) in &right.edges {
                if *s == right.init {
                    b.edges.push((f, *l, map[*d], w.clone() * v));
                }
            }
            b.finals[f] = w * &r_eps;
        }
        b
    }

    fn star(self) -> Result<Self> {
        let b0 = self.standardize();
        if !b0.finals[b0.init].is_zero() {
            return Err(Error::StarNotProper);
        }
        let mut b = b0.clone();
        let init_out: Vec<_> = b0.edges.iter().filter(|e| e.0 == b0.init).cloned().collect();
        let mut merge = Vec::new();
        for f in 0..b0.n {
            let w = b0.finals[f].clone();
            if f == b0.init || w.is_zero() {
                continue;
            }
            let has_out = b0.edges.iter().any(|e| e.0 == f);
            if !has_out {
                merge.push(f);
                continue;
            }
            for (_, l, d, v) in &init_out {
                b.edges.push((f, *l, *d, w.clone() * v));
            }
        }
        b.finals[b.init] = K::one();
        if merge.is_empty() {
            return Ok(b);
        }
        // a final state without outgoing edges folds into the initial state
        for e in b.edges.iter_mut() {
            if merge.contains(&e.2) {
                e.3 *= &b0.finals[e.2];
                e.2 = b.init;
            }
        }
        let keep: Vec<usize> = (0..b.n).filter(|q| !merge.contains(q)).collect();
        let mut map = vec![usize::MAX; b.n];
        for (i, &q) in keep.iter().enumerate() {
            map[q] = i;
        }
        Ok(Build {
            n: keep.len(),
            init: map[b.init],
            edges: b.edges.into_iter().map(|(s, l, d, w)| (map[s], l, map[d], w)).collect(),
            finals: keep.iter().map(|&q| b.finals[q].clone()).collect(),
            standard: false,
        })
    }

    fn into_automaton(self, generators: usize) -> WeightedAutomaton<K> {
        let mut a = WeightedAutomaton::new(generators, self.n);
        a.add_initial(self.init, K::one());
        for (q, f) in self.finals.into_iter().enumerate() {
            a.set_final(q, f);
        }
        for (s, l, d, w) in self.edges {
            a.add_edge(s, d, l, w);
        }
        a
    }
}

fn build<K: Field>(e: &RatExpr<K>) -> Result<Build<K>> {
    Ok(match e {
        RatExpr::ScalarLit(c) => Build::scalar(c.clone()),
        RatExpr::Gen(l) => Build::letter(*l),
        RatExpr::Sum(v) => Build::sum(v.iter().map(build).collect::<Result<_>>()?),
        RatExpr::Product(v) => {
            let mut it = v.iter();
            let mut acc = match it.next() {
                Some(first) => build(first)?,
                None => Build::scalar(K::one()),
            };
            for f in it {
                acc = acc.product(build(f)?);
            }
            acc
        }
        RatExpr::Neg(c) => build(c)?.scale(&-K::one()),
        RatExpr::Star(c) => build(c)?.star()?,
        RatExpr::Inverse(_) => return Err(Error::Precondition("expression contains a field inverse".into())),
    })
}

fn envelope_build<K: Field>(e: &RatExpr<K>) -> Result<Build<K>> {
    Ok(match e {
        RatExpr::ScalarLit(c) => Build::scalar(if c.is_zero() { K::zero() } else { K::one() }),
        RatExpr::Gen(l) => Build::letter(*l),
        RatExpr::Sum(v) => Build::sum(v.iter().map(envelope_build).collect::<Result<_>>()?),
        RatExpr::Product(v) => {
            let mut acc = Build::scalar(K::one());
            for f in v {
                acc = acc.product(envelope_build(f)?);
            }
            acc
        }
        RatExpr::Neg(c) => envelope_build(c)?,
        RatExpr::Star(c) => {
            let mut b = envelope_build(c)?.standardize();
            b.finals[b.init] = K::zero();
            b.star()?
        }
        RatExpr::Inverse(_) => return Err(Error::Precondition("support envelope of a field inverse".into())),
    })
}

/// 0/1 automaton over words whose language contains every monomial of `e`.
/// Weights are all positive during construction, so nothing cancels.
pub(crate) fn envelope_automaton<K: Field>(e: &RatExpr<K>, generators: usize) -> Result<WeightedAutomaton<K>> {
    check_alphabet(e, generators)?;
    let b = envelope_build(e)?;
    let mut a = WeightedAutomaton::new(generators, b.n);
    a.add_initial(b.init, K::one());
    for (q, f) in b.finals.iter().enumerate() {
        if !f.is_zero() {
            a.set_final(q, K::one());
        }
    }
    let mut seen = std::collections::BTreeSet::new();
    for (s, l, d, w) in b.edges {
        if !w.is_zero() && seen.insert((s, l, d)) {
            a.add_edge(s, d, l, K::one());
        }
    }
    Ok(a)
}

/// Word-level automaton of a star-rational expression.
pub fn expression_to_automaton<K: Field>(e: &RatExpr<K>, generators: usize) -> Result<WeightedAutomaton<K>> {
    check_alphabet(e, generators)?;
    Ok(build(e)?.into_automaton(generators))
}

fn check_alphabet<K: Field>(e: &RatExpr<K>, generators: usize) -> Result<()> {
    match e.max_generator() {
        Some(g) if g >= generators => Err(Error::DimensionMismatch(format!("generator {g} outside alphabet of size {generators}"))),
        _ => Ok(()),
    }
}

/// Word-level representation, minimized after every construction step.
pub fn expression_to_representation<K: Field>(e: &RatExpr<K>, generators: usize) -> Result<LinearRepresentation<K>> {
    check_alphabet(e, generators)?;
    rep(e, generators)
}

fn rep<K: Field>(e: &RatExpr<K>, n: usize) -> Result<LinearRepresentation<K>> {
    Ok(match e {
        RatExpr::ScalarLit(c) => LinearRepresentation::constant(n, c.clone()),
        RatExpr::Gen(l) => LinearRepresentation::monomial(n, &crate::freegroup::Word(vec![*l]), K::one()),
        RatExpr::Sum(v) => {
            let mut acc = LinearRepresentation::zero(n);
            for c in v {
                acc = acc.sum(&rep(c, n)?)?.reduce();
            }
            acc
        }
        RatExpr::Product(v) => {
            let mut acc = LinearRepresentation::constant(n, K::one());
            for c in v {
                acc = acc.product(&rep(c, n)?)?.reduce();
            }
            acc
        }
        RatExpr::Neg(c) => rep(c, n)?.negate(),
        RatExpr::Star(c) => rep(c, n)?.star()?.reduce(),
        RatExpr::Inverse(_) => return Err(Error::Precondition("expression contains a field inverse".into())),
    })
}
