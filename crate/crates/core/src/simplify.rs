//! Removing simplifications: closure under cancelling bypasses, the reduced-word
//! filter, and well-ordering certificates for supports.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::expr::compile::envelope_automaton;
use crate::expr::RatExpr;
use crate::freegroup::{letters, reduce, Letter, Word};
use crate::linalg::Matrix;
use crate::magnus;
use crate::scalar::Field;
use crate::wfa::{DerivationKey, LinearRepresentation, WeightedAutomaton};

/// Characteristic series of reduced words: a start state plus one state per
/// last-read letter, all final.
pub fn reduced_word_automaton<K: Field>(n: usize) -> WeightedAutomaton<K> {
    let mut a = WeightedAutomaton::new(n, 2 * n + 1);
    a.add_initial(0, K::one());
    for q in 0..=2 * n {
        a.set_final(q, K::one());
    }
    for y in letters(n) {
        a.add_edge(0, 1 + y.code(), y, K::one());
        for x in letters(n) {
            if !x.is_inverse_of(y) {
                a.add_edge(1 + x.code(), 1 + y.code(), y, K::one());
            }
        }
    }
    a
}

pub fn reduced_word_representation<K: Field>(n: usize) -> LinearRepresentation<K> {
    reduced_word_automaton(n).to_representation()
}

/// Order in which the per-letter block weights are updated during the fixpoint.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ClosureOrder {
    /// Every letter from the previous round's values.
    #[default]
    Simultaneous,
    /// In place, letters in code order.
    Sequential,
    /// In place, letters in reverse code order.
    SequentialReversed,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClosureConfig {
    /// Maximum fixpoint rounds; `None` means `10 * states^2 * letters`.
    pub budget: Option<usize>,
    pub order: ClosureOrder,
}

/// Result of closing a representation: the closed transitions and initial vector.
struct Closed<K> {
    lambda: Vec<K>,
    mu: Vec<Matrix<K>>,
}

/// `(I - s)^-1` for nilpotent `s`; anything else means an infinite coefficient sum.
fn nil_star<K: Field>(s: &Matrix<K>) -> Result<Matrix<K>> {
    let n = s.rows();
    if s.is_zero() {
        return Ok(Matrix::identity(n));
    }
    let mut t = s.clone();
    let mut p = 1;
    while p < n && !t.is_zero() {
        t = t.mul(&t);
        p *= 2;
    }
    if !t.is_zero() {
        return Err(Error::ClosureBudget);
    }
    Ok(Matrix::identity(n).sub(s).inverse().expect("unipotent"))
}

/// Star of the block weights of every letter except `skip`.
fn star_without<K: Field>(blocks: &[Matrix<K>], skip: Option<usize>) -> Result<Matrix<K>> {
    let n = blocks[0].rows();
    let mut s = Matrix::zeros(n, n);
    for (c, b) in blocks.iter().enumerate() {
        if Some(c) != skip {
            s = s.add(b);
        }
    }
    nil_star(&s)
}

/// Block weights: `P_a` sums, over primitive cancelling words `a u a^-1`, the
/// matrix of the path; inner blocks of `P_a` never start with `a^-1`.
/// Every cancelling word splits uniquely into primitive blocks, so each
/// derivation is counted once.
fn close<K: Field>(rep: &LinearRepresentation<K>, cfg: ClosureConfig) -> Result<Closed<K>> {
    let n = rep.dim();
    let l = 2 * rep.generators();
    let budget = cfg.budget.unwrap_or(10 * n * n * l).max(1);
    let mut blocks = vec![Matrix::zeros(n, n); l];
    let order: Vec<usize> = match cfg.order {
        ClosureOrder::SequentialReversed => (0..l).rev().collect(),
        _ => (0..l).collect(),
    };
    let block = |blocks: &[Matrix<K>], a: usize| -> Result<Matrix<K>> {
        let la = Letter::from_code(a);
        let inner = star_without(blocks, Some(la.inverse().code()))?;
        Ok(rep.mu(la).mul(&inner).mul(rep.mu(la.inverse())))
    };
    let mut stable = false;
    for _ in 0..budget {
        let changed = match cfg.order {
            ClosureOrder::Simultaneous => {
                let next: Vec<Matrix<K>> = (0..l).map(|a| block(&blocks, a)).collect::<Result<_>>()?;
                let changed = next != blocks;
                blocks = next;
                changed
            }
            _ => {
                let mut changed = false;
                for &a in &order {
                    let b = block(&blocks, a)?;
                    if b != blocks[a] {
                        blocks[a] = b;
                        changed = true;
                    }
                }
                changed
            }
        };
        if !changed {
            stable = true;
            break;
        }
    }
    if !stable {
        return Err(Error::ClosureBudget);
    }
    let all = star_without(&blocks, None)?;
    let lambda = all.left_mul(rep.lambda());
    let mu = (0..l)
        .map(|a| {
            let la = Letter::from_code(a);
            Ok(rep.mu(la).mul(&star_without(&blocks, Some(la.inverse().code()))?))
        })
        .collect::<Result<_>>()?;
    Ok(Closed { lambda, mu })
}

/// Adds, on the trimmed automaton, one bypass edge per `(source, letter, target)`
/// carrying the total weight of reading the letter and then any cancelling word,
/// and initial bypass weights for cancelling prefixes.
pub fn fliess_closure<K: Field>(a: &WeightedAutomaton<K>, cfg: ClosureConfig) -> Result<WeightedAutomaton<K>> {
    let t = a.trim();
    let rep = t.to_representation();
    let mut out = t.clone();
    if rep.dim() == 0 {
        return Ok(out);
    }
    let closed = close(&rep, cfg)?;
    for (code, m) in closed.mu.iter().enumerate() {
        let y = Letter::from_code(code);
        let extra = m.sub(rep.mu(y));
        for (o, r, w) in extra.nonzero_entries() {
            out.add_edge_with(o, r, y, w.clone(), DerivationKey::Bypass { source: o, letter: y, target: r });
        }
    }
    for (r, (new, old)) in closed.lambda.iter().zip(rep.lambda()).enumerate() {
        let w = new.clone() - old;
        if !w.is_zero() {
            out.add_initial_with(r, w, DerivationKey::InitialBypass { state: r });
        }
    }
    Ok(out)
}

/// Group series of `rep` as a representation supported on reduced words only.
pub fn remove_simplifications_rep<K: Field>(rep: &LinearRepresentation<K>, cfg: ClosureConfig) -> Result<LinearRepresentation<K>> {
    let r = rep.reduce();
    if r.dim() == 0 {
        return Ok(r);
    }
    let closed = close(&r, cfg)?;
    let c = LinearRepresentation::new(r.generators(), closed.lambda, closed.mu, r.rho().to_vec())?;
    Ok(c.hadamard(&reduced_word_representation(r.generators()))?.trim().reduce())
}

pub fn remove_simplifications<K: Field>(a: &WeightedAutomaton<K>, cfg: ClosureConfig) -> Result<LinearRepresentation<K>> {
    remove_simplifications_rep(&a.to_representation(), cfg)
}

/// Language containing the support of `e`, built along its rational structure.
pub fn support_envelope<K: Field>(e: &RatExpr<K>, generators: usize) -> Result<WeightedAutomaton<K>> {
    envelope_automaton(e, generators)
}

pub const DEFAULT_CYCLE_BUDGET: usize = 100_000;

/// Every simple cycle (as an edge sequence) has a label exceeding 1 in the Magnus order.
pub fn check_well_ordered<K: Field>(a: &WeightedAutomaton<K>, cycle_budget: usize) -> Result<bool> {
    let t = a.trim();
    let n = t.state_count();
    let mut adj: Vec<Vec<(usize, Letter)>> = vec![Vec::new(); n];
    for e in t.edges() {
        if !adj[e.src].contains(&(e.dst, e.letter)) {
            adj[e.src].push((e.dst, e.letter));
        }
    }
    let mut checked: HashSet<Word> = HashSet::new();
    let mut count = 0usize;
    for s in 0..n {
        let mut on_path = vec![false; n];
        let mut label = Vec::new();
        if !cycles_from(s, s, &adj, &mut on_path, &mut label, &mut checked, &mut count, cycle_budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[allow(clippy::too_many_arguments)]
fn cycles_from(
    start: usize,
    v: usize,
    adj: &[Vec<(usize, Letter)>],
    on_path: &mut [bool],
    label: &mut Vec<Letter>,
    checked: &mut HashSet<Word>,
    count: &mut usize,
    budget: usize,
) -> Result<bool> {
    on_path[v] = true;
    for &(d, l) in &adj[v] {
        if d < start {
            continue;
        }
        label.push(l);
        if d == start {
            *count += 1;
            if *count > budget {
                return Err(Error::CycleBudget(budget));
            }
            let g = reduce(&Word(label.clone()));
            if checked.insert(g.word().clone()) && (g.is_identity() || magnus::sign(&g)? != Ordering::Greater) {
                return Ok(false);
            }
        } else if !on_path[d] && !cycles_from(start, d, adj, on_path, label, checked, count, budget)? {
            return Ok(false);
        }
        label.pop();
    }
    on_path[v] = false;
    Ok(true)
}

/// Coefficient check helper: every word containing a cancelling pair has coefficient 0.
pub fn is_simplification_free<K: Field>(rep: &LinearRepresentation<K>, max_len: usize) -> bool {
    rep.coefficients_up_to(max_len).into_iter().all(|(w, c)| w.is_reduced() || c.is_zero())
}
