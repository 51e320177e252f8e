//! Minimum of a well-ordered rational support.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::freegroup::{GroupElement, Letter, Word};
use crate::linalg::{dot, is_zero_vec, Matrix, RowBasis};
use crate::magnus;
use crate::scalar::Field;
use crate::wfa::LinearRepresentation;

/// `prod_{i=1..n} (C(n, i) + 1)`.
pub fn jacob_bound(n: usize) -> BigUint {
    let mut acc = BigUint::one();
    let mut binom = BigUint::one();
    for i in 1..=n {
        binom = binom * BigUint::from(n - i + 1) / BigUint::from(i);
        acc *= &binom + BigUint::one();
    }
    acc
}

/// Similar to `diag(g, 0)` with `g` invertible, i.e. `rank M = rank M^2`.
pub fn is_pseudo_regular<K: Field>(m: &Matrix<K>) -> Result<bool> {
    if m.rows() != m.cols() {
        return Err(Error::DimensionMismatch("pseudo-regularity needs a square matrix".into()));
    }
    Ok(m.rank() == m.mul(m).rank())
}

/// A strict subword of `w` in the support, found by the linear-dependence
/// argument on the prefix vectors `lambda mu(p_i)`.
pub fn support_subword<K: Field>(r: &LinearRepresentation<K>, w: &Word) -> Result<Word> {
    let n = r.dim();
    if w.len() < n || w.is_empty() {
        return Err(Error::Precondition(format!("word length {} is below the dimension {n}", w.len())));
    }
    if r.coefficient(w).is_zero() {
        return Err(Error::Precondition("word is not in the support".into()));
    }
    let ls = w.letters();
    let mut basis = RowBasis::new(n);
    let mut prefix_vecs: Vec<Vec<K>> = Vec::new();
    let mut v = r.lambda().to_vec();
    for i in 0..=n {
        if i > 0 {
            v = r.mu(ls[i - 1]).left_mul(&v);
        }
        if !basis.contains(&v) {
            basis.insert(v.clone());
            prefix_vecs.push(v.clone());
            continue;
        }
        // express v in the earlier prefix vectors (all independent so far)
        let coeffs = solve_combination(&prefix_vecs, &v);
        let suffix = Word(ls[i..].to_vec());
        for (j, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cand = Word(ls[..j].iter().chain(suffix.letters()).copied().collect());
            if !r.coefficient(&cand).is_zero() {
                return Ok(cand);
            }
        }
        return Err(Error::Precondition("no dependent prefix produced a support subword".into()));
    }
    unreachable!("n + 1 vectors in dimension n are dependent")
}

/// Coefficients `c` with `v = sum c_j vecs[j]` for independent `vecs`.
fn solve_combination<K: Field>(vecs: &[Vec<K>], v: &[K]) -> Vec<K> {
    // basis over the independent family; coordinates come back in RREF rows,
    // so track each row as a combination of the inputs
    let dim = v.len();
    let k = vecs.len();
    let mut aug: Vec<Vec<K>> = vecs
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let mut r = x.clone();
            r.extend((0..k).map(|j| if i == j { K::one() } else { K::zero() }));
            r
        })
        .collect();
    // Gaussian elimination on the first `dim` columns
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..dim {
        let Some(p) = (row..k).find(|&i| !aug[i][col].is_zero()) else { continue };
        aug.swap(row, p);
        let s = aug[row][col].inv();
        for x in aug[row].iter_mut() {
            *x *= &s;
        }
        for i in 0..k {
            if i != row && !aug[i][col].is_zero() {
                let f = aug[i][col].clone();
                let src = aug[row].clone();
                for (x, y) in aug[i].iter_mut().zip(&src) {
                    *x -= f.clone() * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let mut out = vec![K::zero(); k];
    for (r, &col) in pivots.iter().enumerate() {
        let c = &v[col];
        if c.is_zero() {
            continue;
        }
        for j in 0..k {
            out[j] += c.clone() * &aug[r][dim + j];
        }
    }
    out
}

pub const DEFAULT_WORK_LIMIT: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct SupportQuery<'a, K> {
    /// Simplification-free series, equal to its own reduction.
    pub rep: &'a LinearRepresentation<K>,
    pub bound_override: Option<usize>,
    pub work_limit: usize,
}

impl<'a, K: Field> SupportQuery<'a, K> {
    pub fn new(rep: &'a LinearRepresentation<K>) -> Self {
        SupportQuery { rep, bound_override: None, work_limit: DEFAULT_WORK_LIMIT }
    }

    pub fn rank(&self) -> usize {
        self.rep.dim()
    }
}

/// Support elements of length below `bound`, found by walking reduced prefixes
/// whose forward vector is nonzero (a zero forward vector has no support
/// extensions). Returns `None` when the walk ran out of prefixes before `bound`,
/// i.e. the support is finite and fully listed.
pub fn support_below<K: Field>(
    rep: &LinearRepresentation<K>,
    bound: usize,
    work_limit: usize,
) -> Result<(Vec<(GroupElement, K)>, bool)> {
    let mut found = Vec::new();
    if rep.dim() == 0 {
        return Ok((found, true));
    }
    let mut level: Vec<(Vec<Letter>, Vec<K>)> = vec![(Vec::new(), rep.lambda().to_vec())];
    let mut work = 0usize;
    for len in 0..bound {
        let mut next = Vec::new();
        for (w, v) in &level {
            let c = dot(v, rep.rho());
            if !c.is_zero() {
                found.push((GroupElement::from_reduced(Word(w.clone()))?, c));
            }
            if len + 1 == bound {
                continue;
            }
            for l in rep.letters() {
                if w.last().is_some_and(|&p| p.is_inverse_of(l)) {
                    continue;
                }
                work += 1;
                if work > work_limit {
                    return Err(Error::BoundExceeded { needed: format!("> {work_limit}"), limit: work_limit });
                }
                let u = rep.mu(l).left_mul(v);
                if !is_zero_vec(&u) {
                    let mut w2 = w.clone();
                    w2.push(l);
                    next.push((w2, u));
                }
            }
        }
        if next.is_empty() {
            return Ok((found, true));
        }
        level = next;
    }
    Ok((found, false))
}

/// Magnus-minimal element of a list, by pairwise comparison.
pub fn magnus_min<K: Field>(items: &[(GroupElement, K)]) -> Result<Option<(GroupElement, K)>> {
    let mut best: Option<&(GroupElement, K)> = None;
    for it in items {
        best = match best {
            None => Some(it),
            Some(b) if magnus::magnus_cmp(&it.0, &b.0)? == Ordering::Less => Some(it),
            keep => keep,
        };
    }
    Ok(best.cloned())
}

/// The Magnus-minimal element of the support and its coefficient. Candidates
/// are the support elements shorter than the bound (Jacob's bound of the rank
/// unless overridden).
pub fn min_supp<K: Field>(q: &SupportQuery<'_, K>) -> Result<(GroupElement, K)> {
    let rep = q.rep;
    if rep.is_zero() {
        return Err(Error::ZeroSeries);
    }
    let bound = match q.bound_override {
        Some(b) => b,
        None => jacob_bound(rep.dim()).to_usize().unwrap_or(usize::MAX),
    };
    let (found, _finite) = support_below(rep, bound, q.work_limit)?;
    magnus_min(&found)?.ok_or(Error::InconsistentBound(bound))
}
