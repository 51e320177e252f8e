//! State elimination: automaton back to a star-rational expression.

use std::collections::BTreeMap;

use crate::expr::ast::RatExpr;
use crate::scalar::Field;
use crate::wfa::{LinearRepresentation, WeightedAutomaton};

/// Eliminates states one at a time (fewest in*out pairs first). Labels on
/// letter edges never carry a constant term, so every star introduced is proper.
pub fn automaton_to_expression<K: Field>(a: &WeightedAutomaton<K>) -> RatExpr<K> {
    let n = a.state_count();
    let (src, snk) = (n, n + 1);
    let mut label: BTreeMap<(usize, usize), Vec<RatExpr<K>>> = BTreeMap::new();
    for e in a.edges() {
        label.entry((e.src, e.dst)).or_default().push(RatExpr::product(vec![RatExpr::ScalarLit(e.weight.clone()), RatExpr::Gen(e.letter)]));
    }
    for q in 0..n {
        let i = a.initial_weight(q);
        if !i.is_zero() {
            label.entry((src, q)).or_default().push(RatExpr::ScalarLit(i));
        }
        let f = a.final_weight(q);
        if !f.is_zero() {
            label.entry((q, snk)).or_default().push(RatExpr::ScalarLit(f));
        }
    }
    let mut g: BTreeMap<(usize, usize), RatExpr<K>> = label.into_iter().map(|(k, v)| (k, RatExpr::sum(v))).collect();
    let mut alive: Vec<usize> = (0..n).collect();
    while !alive.is_empty() {
        let cost = |q: usize| {
            let i = g.keys().filter(|(s, d)| *d == q && *s != q).count();
            let o = g.keys().filter(|(s, d)| *s == q && *d != q).count();
            i * o
        };
        let (pos, &q) = alive.iter().enumerate().min_by_key(|(_, &q)| (cost(q), q)).expect("nonempty");
        alive.remove(pos);
        let loop_star = g.remove(&(q, q)).map(RatExpr::star_of);
        let ins: Vec<(usize, RatExpr<K>)> = g.iter().filter(|((_, d), _)| *d == q).map(|((s, _), e)| (*s, e.clone())).collect();
        let outs: Vec<(usize, RatExpr<K>)> = g.iter().filter(|((s, _), _)| *s == q).map(|((_, d), e)| (*d, e.clone())).collect();
        g.retain(|(s, d), _| *s != q && *d != q);
        for (p, e1) in &ins {
            for (r, e2) in &outs {
                let mut parts = vec![e1.clone()];
                if let Some(l) = &loop_star {
                    parts.push(l.clone());
                }
                parts.push(e2.clone());
                let path = RatExpr::product(parts);
                let merged = match g.remove(&(*p, *r)) {
                    Some(old) => RatExpr::sum(vec![old, path]),
                    None => path,
                };
                g.insert((*p, *r), merged);
            }
        }
    }
    g.remove(&(src, snk)).unwrap_or_else(RatExpr::zero)
}

pub fn representation_to_expression<K: Field>(r: &LinearRepresentation<K>) -> RatExpr<K> {
    automaton_to_expression(&WeightedAutomaton::from_representation(r))
}
