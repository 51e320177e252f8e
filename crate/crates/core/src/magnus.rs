//! Magnus ordering of the free group via Lyndon words and subword counts.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::freegroup::{GroupElement, Letter, Word};
use crate::linalg::Matrix;
use crate::wfa::LinearRepresentation;

/// Integer polynomial over the positive letters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MonoidPolynomial {
    terms: BTreeMap<Word, BigInt>,
}

impl MonoidPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(Word::empty())
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, BigInt::one())
    }

    pub fn term(w: Word, c: BigInt) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn add_term(&mut self, w: Word, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, w: &Word) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    /// Concatenation product, dropping words longer than `max_len`.
    pub fn mul_truncated(&self, other: &Self, max_len: usize) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if u.len() + v.len() <= max_len {
                    out.add_term(u.concat(v), a * b);
                }
            }
        }
        out
    }
}

/// Military order: by length, then lexicographically by generator order.
pub fn military_cmp(a: &Word, b: &Word) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.letters().cmp(b.letters()))
}

/// Lyndon words of length exactly `len` over generators `0..n`, lexicographic
/// (Duval's successor iteration, filtered by length).
fn lyndon_of_length(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n == 0 || len == 0 {
        return out;
    }
    let mut w = vec![0usize];
    loop {
        if w.len() == len {
            out.push(w.clone());
        }
        let m = w.len();
        while w.len() < len {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&(n - 1)) {
            w.pop();
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => return out,
        }
    }
}

/// All Lyndon words of length at most `max_len`, military order.
pub fn lyndon_words(n: usize, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        for w in lyndon_of_length(n, len) {
            out.push(Word::from_gens(&w));
        }
    }
    out
}

pub fn is_lyndon(w: &Word) -> bool {
    let ls = w.letters();
    if ls.is_empty() {
        return false;
    }
    (1..ls.len()).all(|k| {
        let rot: Vec<Letter> = ls[k..].iter().chain(&ls[..k]).copied().collect();
        ls < rot.as_slice()
    })
}

/// Duval factorization into nonincreasing Lyndon words, grouped with multiplicities.
pub fn lyndon_factorization(w: &Word) -> Result<Vec<(Word, usize)>> {
    if !w.is_positive() {
        return Err(Error::Precondition("Lyndon factorization needs an unbarred word".into()));
    }
    let s = w.letters();
    let n = s.len();
    let mut factors: Vec<Word> = Vec::new();
    let mut i = 0;
    while i < n {
        let (mut j, mut k) = (i + 1, i);
        while j < n && s[k] <= s[j] {
            if s[k] < s[j] {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        while i <= k {
            factors.push(Word(s[i..i + j - k].to_vec()));
            i += j - k;
        }
    }
    let mut grouped: Vec<(Word, usize)> = Vec::new();
    for f in factors {
        match grouped.last_mut() {
            Some((g, m)) if *g == f => *m += 1,
            _ => grouped.push((f, 1)),
        }
    }
    Ok(grouped)
}

fn word_shuffle(u: &[Letter], v: &[Letter], infiltrate: bool, out: &mut BTreeMap<Vec<Letter>, BigInt>, suffix: &mut Vec<Letter>, mult: &BigInt) {
    // builds words right to left: suffix holds the reversed tail
    if u.is_empty() || v.is_empty() {
        let mut w: Vec<Letter> = u.iter().chain(v).copied().collect();
        w.extend(suffix.iter().rev());
        *out.entry(w).or_insert_with(BigInt::zero) += mult;
        return;
    }
    let (a, b) = (u[u.len() - 1], v[v.len() - 1]);
    suffix.push(a);
    word_shuffle(&u[..u.len() - 1], v, infiltrate, out, suffix, mult);
    suffix.pop();
    suffix.push(b);
    word_shuffle(u, &v[..v.len() - 1], infiltrate, out, suffix, mult);
    suffix.pop();
    if infiltrate && a == b {
        suffix.push(a);
        word_shuffle(&u[..u.len() - 1], &v[..v.len() - 1], infiltrate, out, suffix, mult);
        suffix.pop();
    }
}

fn bilinear(p: &MonoidPolynomial, q: &MonoidPolynomial, infiltrate: bool) -> MonoidPolynomial {
    let mut acc: BTreeMap<Vec<Letter>, BigInt> = BTreeMap::new();
    for (u, a) in p.terms() {
        for (v, b) in q.terms() {
            word_shuffle(u.letters(), v.letters(), infiltrate, &mut acc, &mut Vec::new(), &(a * b));
        }
    }
    let mut out = MonoidPolynomial::zero();
    for (w, c) in acc {
        out.add_term(Word(w), c);
    }
    out
}

pub fn shuffle(p: &MonoidPolynomial, q: &MonoidPolynomial) -> MonoidPolynomial {
    bilinear(p, q, false)
}

pub fn infiltration(p: &MonoidPolynomial, q: &MonoidPolynomial) -> MonoidPolynomial {
    bilinear(p, q, true)
}

/// Row vector `e_0 * mu_v(w)` of the subword-counting representation of `v`.
fn subword_row(w: &GroupElement, v: &[usize]) -> Vec<BigInt> {
    let m = v.len();
    let mut row = vec![BigInt::zero(); m + 1];
    row[0] = BigInt::one();
    for l in w.letters() {
        let x = l.generator_index;
        if !l.barred {
            // row * (I + N): descending so each update sees old values
            for j in (1..=m).rev() {
                if v[j - 1] == x {
                    let t = row[j - 1].clone();
                    row[j] += t;
                }
            }
        } else {
            // row * (I + N)^-1: solve y (I + N) = row ascending
            for j in 1..=m {
                if v[j - 1] == x {
                    let t = row[j - 1].clone();
                    row[j] -= t;
                }
            }
        }
    }
    row
}

/// Coefficient of `v` in the Magnus image of `omega`: the (first, last) entry
/// of the unipotent subword-counting matrix product.
pub fn subword_count(omega: &GroupElement, v: &Word) -> Result<BigInt> {
    if v.is_empty() || !v.is_positive() {
        return Err(Error::Precondition("subword pattern must be a nonempty unbarred word".into()));
    }
    let gens: Vec<usize> = v.letters().iter().map(|l| l.generator_index).collect();
    Ok(subword_row(omega, &gens).pop().unwrap())
}

/// The `(|v|+1)`-state representation of `v` shuffled with all words: `mu_v(x) = I + N_x`
/// with `N_x` the superdiagonal at positions where `v` reads `x`, and
/// `mu_v(x^-1) = mu_v(x)^-1`. Entry (first, last) of `mu_v(w)` counts `v` in `w`.
pub fn subword_representation<K: crate::scalar::Field>(v: &Word, generators: usize) -> Result<LinearRepresentation<K>> {
    if v.is_empty() || !v.is_positive() {
        return Err(Error::Precondition("subword pattern must be a nonempty unbarred word".into()));
    }
    if let Some(l) = v.letters().iter().find(|l| l.generator_index >= generators) {
        return Err(Error::UnknownGenerator(format!("g{}", l.generator_index)));
    }
    let m = v.len() + 1;
    let mut mu = Vec::with_capacity(2 * generators);
    for l in crate::freegroup::letters(generators) {
        let mut a = Matrix::identity(m);
        for (j, c) in v.letters().iter().enumerate() {
            if c.generator_index == l.generator_index {
                a[(j, j + 1)] = K::one();
            }
        }
        mu.push(if l.barred { a.inverse().expect("unipotent") } else { a });
    }
    let mut lambda = vec![K::zero(); m];
    lambda[0] = K::one();
    let mut rho = vec![K::zero(); m];
    rho[m - 1] = K::one();
    LinearRepresentation::new(generators, lambda, mu, rho)
}

/// The Magnus image truncated at degree `degree`.
pub fn magnus_truncated(omega: &GroupElement, degree: usize) -> MonoidPolynomial {
    let mut acc = MonoidPolynomial::one();
    for l in omega.letters() {
        let x = Word(vec![Letter::gen(l.generator_index)]);
        let factor = if !l.barred {
            MonoidPolynomial::one().add(&MonoidPolynomial::word(x))
        } else {
            let mut f = MonoidPolynomial::zero();
            let mut pw = Word::empty();
            for k in 0..=degree {
                let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                f.add_term(pw.clone(), sign);
                pw = pw.concat(&x);
            }
            f
        };
        acc = acc.mul_truncated(&factor, degree);
    }
    acc
}

/// Outcome of a Magnus comparison with its witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub ordering: Ordering,
    /// First Lyndon word (military order) where the images differ.
    pub witness: Option<Word>,
    pub count_a: BigInt,
    pub count_b: BigInt,
}

pub fn default_compare_cap(a: &GroupElement, b: &GroupElement) -> usize {
    a.len() + b.len() + 4
}

/// Compare in the Magnus ordering; `Less` means `a` precedes `b`.
pub fn magnus_compare(a: &GroupElement, b: &GroupElement) -> Result<Comparison> {
    magnus_compare_capped(a, b, default_compare_cap(a, b))
}

pub fn magnus_compare_capped(a: &GroupElement, b: &GroupElement, cap: usize) -> Result<Comparison> {
    if a == b {
        return Ok(Comparison { ordering: Ordering::Equal, witness: None, count_a: BigInt::zero(), count_b: BigInt::zero() });
    }
    let mut used: Vec<usize> = a.letters().iter().chain(b.letters()).map(|l| l.generator_index).collect();
    used.sort_unstable();
    used.dedup();
    for len in 1..=cap {
        for lw in lyndon_of_length(used.len(), len) {
            let v: Vec<usize> = lw.iter().map(|&i| used[i]).collect();
            let ca = subword_row(a, &v).pop().unwrap();
            let cb = subword_row(b, &v).pop().unwrap();
            if ca != cb {
                return Ok(Comparison { ordering: ca.cmp(&cb), witness: Some(Word::from_gens(&v)), count_a: ca, count_b: cb });
            }
        }
    }
    Err(Error::ComparisonBudget(cap))
}

pub fn magnus_cmp(a: &GroupElement, b: &GroupElement) -> Result<Ordering> {
    Ok(magnus_compare(a, b)?.ordering)
}

/// Sign of the element relative to the identity: `Greater` means `g` exceeds 1.
pub fn sign(g: &GroupElement) -> Result<Ordering> {
    magnus_cmp(g, &GroupElement::identity())
}
