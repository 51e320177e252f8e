//! The Connes operator on Cayley-graph edges and its rank.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::freegroup::{group_mul, prefix_suffixes, GroupElement, Letter, Word};
use crate::linalg::{dot, is_zero_vec, Matrix, RowBasis};
use crate::scalar::Field;
use crate::simplify::{remove_simplifications_rep, ClosureConfig};
use crate::wfa::LinearRepresentation;

/// The edge `{p(omega), omega}`; `omega` is never the identity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CayleyEdge {
    omega: GroupElement,
}

impl CayleyEdge {
    pub fn new(omega: GroupElement) -> Result<Self> {
        if omega.is_identity() {
            return Err(Error::Precondition("the identity is not the far end of an edge".into()));
        }
        Ok(CayleyEdge { omega })
    }

    /// The edge joining two adjacent vertices, in either order.
    pub fn between(u: &GroupElement, v: &GroupElement) -> Result<Self> {
        let far = if u.len() > v.len() { u } else { v };
        let near = if u.len() > v.len() { v } else { u };
        let e = CayleyEdge::new(far.clone())?;
        if &e.prefix() != near {
            return Err(Error::Precondition("vertices are not adjacent".into()));
        }
        Ok(e)
    }

    pub fn omega(&self) -> &GroupElement {
        &self.omega
    }

    pub fn prefix(&self) -> GroupElement {
        prefix_suffixes(&self.omega).expect("nonempty").0
    }

    pub fn last_letter(&self) -> Letter {
        self.omega.last_letter().expect("nonempty")
    }

    /// `alpha . {p(w), w} = {alpha p(w), alpha w}`.
    pub fn translate(&self, alpha: &GroupElement) -> CayleyEdge {
        CayleyEdge::between(&group_mul(alpha, &self.prefix()), &group_mul(alpha, &self.omega)).expect("translates of edges are edges")
    }

    /// All edges with `l(omega) <= max_len`, by length then letters.
    pub fn all_up_to(generators: usize, max_len: usize) -> Vec<CayleyEdge> {
        reduced_words(generators, max_len)
            .into_iter()
            .filter(|w| !w.is_empty())
            .map(|w| CayleyEdge { omega: GroupElement::from_reduced(w).expect("reduced") })
            .collect()
    }
}

/// Reduced words of length at most `max_len`.
pub fn reduced_words(generators: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut level = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &level {
            for l in crate::freegroup::letters(generators) {
                if w.letters().last().is_some_and(|p| p.is_inverse_of(l)) {
                    continue;
                }
                let mut w2 = w.clone();
                w2.0.push(l);
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// Finite window of a group series: coefficients of elements of length at most `radius`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<K> {
    radius: usize,
    coeffs: BTreeMap<GroupElement, K>,
}

impl<K: Field> TruncatedSeries<K> {
    pub fn new(radius: usize) -> Self {
        TruncatedSeries { radius, coeffs: BTreeMap::new() }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Window of a simplification-free series.
    pub fn from_rep(rep: &LinearRepresentation<K>, radius: usize) -> Self {
        let mut t = Self::new(radius);
        if rep.dim() == 0 {
            return t;
        }
        let mut level: Vec<(Vec<Letter>, Vec<K>)> = vec![(Vec::new(), rep.lambda().to_vec())];
        for len in 0..=radius {
            let mut next = Vec::new();
            for (w, v) in &level {
                t.add_term(GroupElement::from_reduced(Word(w.clone())).expect("reduced"), dot(v, rep.rho()));
                if len == radius {
                    continue;
                }
                for l in rep.letters() {
                    if w.last().is_some_and(|p| p.is_inverse_of(l)) {
                        continue;
                    }
                    let u = rep.mu(l).left_mul(v);
                    if !is_zero_vec(&u) {
                        let mut w2 = w.clone();
                        w2.push(l);
                        next.push((w2, u));
                    }
                }
            }
            level = next;
        }
        t
    }

    pub fn add_term(&mut self, g: GroupElement, c: K) {
        if c.is_zero() || g.len() > self.radius {
            return;
        }
        let e = self.coeffs.entry(g.clone()).or_insert_with(K::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&g);
        }
    }

    pub fn get(&self, g: &GroupElement) -> K {
        self.coeffs.get(g).cloned().unwrap_or_else(K::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &K)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = TruncatedSeries { radius: self.radius.min(other.radius), coeffs: BTreeMap::new() };
        for (g, c) in self.terms().chain(other.terms()) {
            out.add_term(g.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &K) -> Self {
        let mut out = Self::new(self.radius);
        for (g, c) in self.terms() {
            out.add_term(g.clone(), c.clone() * k);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-K::one()))
    }

    /// Group product of the windows, kept up to `radius`. Exact on the
    /// result window only when no long terms cancel into it.
    pub fn mul(&self, other: &Self, radius: usize) -> Self {
        let mut out = Self::new(radius);
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                out.add_term(group_mul(a, b), x.clone() * y);
            }
        }
        out
    }

    /// Restriction to a smaller window.
    pub fn restrict(&self, radius: usize) -> Self {
        let mut out = Self::new(radius);
        for (g, c) in self.terms() {
            out.add_term(g.clone(), c.clone());
        }
        out
    }
}

/// `omega^-1 o a` for a simplification-free representation: the word-level right translate.
pub fn group_translate<K: Field>(r: &LinearRepresentation<K>, omega_bar: &GroupElement) -> LinearRepresentation<K> {
    r.right_translate(omega_bar.word())
}

/// `F_a {p(w), w} = (w^-1 o a) (x^-1 - 1)` where `x` is the last letter of `w`.
pub fn connes_apply<K: Field>(r: &LinearRepresentation<K>, e: &CayleyEdge) -> LinearRepresentation<K> {
    let n = r.generators();
    let omega_bar = crate::freegroup::group_inv(e.omega());
    let t = group_translate(r, &omega_bar);
    let x_bar = e.last_letter().inverse();
    let factor = LinearRepresentation::monomial(n, &Word(vec![x_bar]), K::one())
        .difference(&LinearRepresentation::constant(n, K::one()))
        .expect("same alphabet");
    t.product(&factor).expect("same alphabet").reduce()
}

/// Spaces `W_d = span{mu(w) rho : w reduced, nonempty, first letter d}`.
fn suffix_spaces<K: Field>(r: &LinearRepresentation<K>) -> Vec<RowBasis<K>> {
    let n = r.dim();
    let l = 2 * r.generators();
    let mut spaces: Vec<RowBasis<K>> = (0..l).map(|_| RowBasis::new(n)).collect();
    // worklist of (first letter, vector) pairs still to be extended on the left
    let mut queue: Vec<(usize, Vec<K>)> = Vec::new();
    for d in 0..l {
        let v = r.mu(Letter::from_code(d)).right_mul(r.rho());
        if spaces[d].insert(v.clone()) {
            queue.push((d, v));
        }
    }
    while let Some((first, v)) = queue.pop() {
        let fl = Letter::from_code(first);
        for d in 0..l {
            let dl = Letter::from_code(d);
            if dl.is_inverse_of(fl) {
                continue;
            }
            let u = r.mu(dl).right_mul(&v);
            if spaces[d].insert(u.clone()) {
                queue.push((d, u));
            }
        }
    }
    spaces
}

/// Rank of a family of final vectors as series sharing `(lambda, mu)`:
/// the rank of their pairings with a basis of the forward space.
fn series_rank<K: Field>(r: &LinearRepresentation<K>, finals: &[Vec<K>]) -> usize {
    let fwd = r.forward_basis();
    let sig: Vec<Vec<K>> = finals.iter().map(|u| fwd.rows().iter().map(|b| dot(b, u)).collect()).collect();
    crate::linalg::rank_of(fwd.len(), sig)
}

/// Rank of `w o a` over nonempty reduced `w`.
pub fn group_hankel_rank<K: Field>(r: &LinearRepresentation<K>) -> usize {
    if r.dim() == 0 {
        return 0;
    }
    let finals: Vec<Vec<K>> = suffix_spaces(r).iter().flat_map(|b| b.rows().to_vec()).collect();
    series_rank(r, &finals)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankMode {
    Exact,
    /// Edges with `l(omega) <= depth`, coefficients on the ball of radius `window`.
    Truncated { depth: usize, window: usize },
}

/// Rank of `F_a` restricted to edges.
pub fn connes_rank<K: Field>(r: &LinearRepresentation<K>, mode: RankMode) -> usize {
    match mode {
        RankMode::Exact => connes_rank_exact(r),
        RankMode::Truncated { depth, window } => connes_rank_truncated(r, depth, window),
    }
}

fn connes_rank_exact<K: Field>(r: &LinearRepresentation<K>) -> usize {
    let n = r.dim();
    if n == 0 {
        return 0;
    }
    let g = r.generators();
    let l = 2 * g;
    let spaces = suffix_spaces(r);
    // block c realizes v -> (lambda, mu, v) (c - 1): stay in the first copy, or
    // jump to the second copy on the final letter c
    let big = 2 * n * l;
    let mut lambda = vec![K::zero(); big];
    let mut mu = vec![Matrix::zeros(big, big); l];
    for c in 0..l {
        let base = 2 * n * c;
        for (i, x) in r.lambda().iter().enumerate() {
            lambda[base + i] = x.clone();
        }
        for (y, m) in mu.iter_mut().enumerate() {
            m.set_block(base, base, r.mu(Letter::from_code(y)));
            if y == c {
                m.set_block(base, base + n, &Matrix::identity(n));
            }
        }
    }
    let hat = LinearRepresentation::new(g, lambda, mu, vec![K::zero(); big]).expect("shapes");
    let mut finals = Vec::new();
    for c in 0..l {
        // edges ending in x have translates by words starting with x^-1; the factor is (x^-1 - 1)
        let base = 2 * n * c;
        for v in spaces[c].rows() {
            let mut u = vec![K::zero(); big];
            for i in 0..n {
                u[base + i] = -v[i].clone();
                u[base + n + i] = v[i].clone();
            }
            finals.push(u);
        }
    }
    series_rank(&hat, &finals)
}

fn connes_rank_truncated<K: Field>(r: &LinearRepresentation<K>, depth: usize, window: usize) -> usize {
    let ball: Vec<GroupElement> = reduced_words(r.generators(), window)
        .into_iter()
        .map(|w| GroupElement::from_reduced(w).expect("reduced"))
        .collect();
    let rows = CayleyEdge::all_up_to(r.generators(), depth).into_iter().map(|e| {
        let t = TruncatedSeries::from_rep(&connes_apply(r, &e), window);
        ball.iter().map(|g| t.get(g)).collect::<Vec<K>>()
    });
    crate::linalg::rank_of(ball.len(), rows)
}

/// Truncated ranks at `depth` and `depth + 1`, and whether they agree.
pub fn connes_rank_stabilization<K: Field>(r: &LinearRepresentation<K>, depth: usize, window: usize) -> (usize, usize, bool) {
    let a = connes_rank_truncated(r, depth, window);
    let b = connes_rank_truncated(r, depth + 1, window);
    (a, b, a == b)
}

/// `F_a(e)` from the definition, by brute force on windows: `F(a.e) - a.F(e)`.
pub fn connes_brute_force<K: Field>(a: &TruncatedSeries<K>, e: &CayleyEdge, window: usize) -> TruncatedSeries<K> {
    let mut out = TruncatedSeries::new(window);
    for (alpha, c) in a.terms() {
        let moved = e.translate(alpha);
        out.add_term(moved.omega().clone(), c.clone());
        out.add_term(group_mul(alpha, e.omega()), -c.clone());
    }
    out
}

/// `F_a` applied to the edge series `b . e`, summed over the window of `b`.
fn connes_of_translated_edge<K: Field>(a: &TruncatedSeries<K>, b: &TruncatedSeries<K>, e: &CayleyEdge, window: usize) -> TruncatedSeries<K> {
    let mut out = TruncatedSeries::new(window);
    for (beta, c) in b.terms() {
        let moved = e.translate(beta);
        for (g, x) in connes_brute_force(a, &moved, window).terms() {
            out.add_term(g.clone(), x.clone() * c);
        }
    }
    out
}

/// Checks `F_ab = F_a b + a F_b` and, when the star of `a` is defined,
/// `F_{a*} = a* F_a a*` on every edge with `l(omega) <= depth`, comparing
/// coefficients of elements of length at most `depth`. Left sides are exact;
/// right sides are brute-force sums over windows of radius `2 depth + 4`.
pub fn verify_connes_identities<K: Field>(a: &LinearRepresentation<K>, b: &LinearRepresentation<K>, depth: usize) -> Result<bool> {
    if !a.lambda_rho_is_zero() {
        return Err(Error::StarUndefined);
    }
    let cfg = ClosureConfig::default();
    let big = 2 * depth + 4;
    let n = a.generators();
    let ab = remove_simplifications_rep(&a.product(b)?, cfg)?;
    let a_star = remove_simplifications_rep(&a.star()?, cfg)?;
    let ta = TruncatedSeries::from_rep(a, big);
    let tb = TruncatedSeries::from_rep(b, big);
    let ts = TruncatedSeries::from_rep(&a_star, big);
    for e in CayleyEdge::all_up_to(n, depth) {
        let lhs = TruncatedSeries::from_rep(&connes_apply(&ab, &e), depth);
        let fb = TruncatedSeries::from_rep(&connes_apply(b, &e), big);
        let rhs = connes_of_translated_edge(&ta, &tb, &e, big).add(&ta.mul(&fb, big)).restrict(depth);
        if lhs != rhs {
            return Ok(false);
        }
        let lhs = TruncatedSeries::from_rep(&connes_apply(&a_star, &e), depth);
        let inner = connes_of_translated_edge(&ta, &ts, &e, big);
        let rhs = ts.mul(&inner, big).restrict(depth);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}
