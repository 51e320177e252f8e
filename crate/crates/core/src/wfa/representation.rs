//! Linear representations (lambda, mu, rho) over the doubled alphabet.

use crate::error::{Error, Result};
use crate::freegroup::{letters, Letter, Word};
use crate::linalg::{dot, is_zero_vec, kron_vec, Matrix, RowBasis};
use crate::scalar::Field;

/// `(S, w) = lambda * mu(w_1) ... mu(w_k) * rho`, one matrix per letter code.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearRepresentation<K> {
    generators: usize,
    lambda: Vec<K>,
    mu: Vec<Matrix<K>>,
    rho: Vec<K>,
}

impl<K: Field> LinearRepresentation<K> {
    pub fn new(generators: usize, lambda: Vec<K>, mu: Vec<Matrix<K>>, rho: Vec<K>) -> Result<Self> {
        let n = lambda.len();
        if rho.len() != n || mu.len() != 2 * generators {
            return Err(Error::DimensionMismatch(format!(
                "lambda {n}, rho {}, {} matrices for {generators} generators",
                rho.len(),
                mu.len()
            )));
        }
        if mu.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::DimensionMismatch("transition matrix shape".into()));
        }
        Ok(LinearRepresentation { generators, lambda, mu, rho })
    }

    pub fn zero(generators: usize) -> Self {
        LinearRepresentation { generators, lambda: vec![], mu: vec![Matrix::zeros(0, 0); 2 * generators], rho: vec![] }
    }

    pub fn constant(generators: usize, c: K) -> Self {
        if c.is_zero() {
            return Self::zero(generators);
        }
        LinearRepresentation { generators, lambda: vec![K::one()], mu: vec![Matrix::zeros(1, 1); 2 * generators], rho: vec![c] }
    }

    /// `c * w` as a chain of `|w| + 1` states.
    pub fn monomial(generators: usize, w: &Word, c: K) -> Self {
        if c.is_zero() {
            return Self::zero(generators);
        }
        let n = w.len() + 1;
        let mut mu = vec![Matrix::zeros(n, n); 2 * generators];
        for (i, l) in w.letters().iter().enumerate() {
            mu[l.code()][(i, i + 1)] = K::one();
        }
        let mut lambda = vec![K::zero(); n];
        lambda[0] = K::one();
        let mut rho = vec![K::zero(); n];
        rho[n - 1] = c;
        LinearRepresentation { generators, lambda, mu, rho }
    }

    pub fn dim(&self) -> usize {
        self.lambda.len()
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn lambda(&self) -> &[K] {
        &self.lambda
    }

    pub fn rho(&self) -> &[K] {
        &self.rho
    }

    pub fn mu(&self, l: Letter) -> &Matrix<K> {
        &self.mu[l.code()]
    }

    pub fn mu_all(&self) -> &[Matrix<K>] {
        &self.mu
    }

    pub fn with_rho(&self, rho: Vec<K>) -> Self {
        assert_eq!(rho.len(), self.dim());
        LinearRepresentation { rho, ..self.clone() }
    }

    pub fn with_lambda(&self, lambda: Vec<K>) -> Self {
        assert_eq!(lambda.len(), self.dim());
        LinearRepresentation { lambda, ..self.clone() }
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + Clone {
        letters(self.generators)
    }

    pub fn mu_word(&self, w: &Word) -> Matrix<K> {
        w.letters().iter().fold(Matrix::identity(self.dim()), |acc, &l| acc.mul(self.mu(l)))
    }

    /// `v * mu(w)`.
    pub fn forward(&self, v: &[K], w: &Word) -> Vec<K> {
        w.letters().iter().fold(v.to_vec(), |acc, &l| self.mu(l).left_mul(&acc))
    }

    /// `mu(w) * v`.
    pub fn backward(&self, w: &Word, v: &[K]) -> Vec<K> {
        w.letters().iter().rev().fold(v.to_vec(), |acc, &l| self.mu(l).right_mul(&acc))
    }

    pub fn coefficient(&self, w: &Word) -> K {
        if self.dim() == 0 {
            return K::zero();
        }
        dot(&self.forward(&self.lambda, w), &self.rho)
    }

    /// Every word of length at most `max_len` with its coefficient (zeros included),
    /// in military order. Exponential; intended for oracles and tests.
    pub fn coefficients_up_to(&self, max_len: usize) -> Vec<(Word, K)> {
        let mut out = Vec::new();
        let mut level: Vec<(Word, Vec<K>)> = vec![(Word::empty(), self.lambda.clone())];
        for len in 0..=max_len {
            let mut next = Vec::new();
            for (w, v) in &level {
                out.push((w.clone(), if self.dim() == 0 { K::zero() } else { dot(v, &self.rho) }));
                if len < max_len {
                    for l in self.letters() {
                        let mut w2 = w.clone();
                        w2.0.push(l);
                        next.push((w2, self.mu(l).left_mul(v)));
                    }
                }
            }
            level = next;
        }
        out
    }

    pub fn scale(&self, c: &K) -> Self {
        self.with_rho(self.rho.iter().map(|x| x.clone() * c).collect())
    }

    pub fn negate(&self) -> Self {
        self.scale(&-K::one())
    }

    fn check_alphabet(&self, other: &Self) -> Result<()> {
        if self.generators != other.generators {
            return Err(Error::DimensionMismatch("representations over different alphabets".into()));
        }
        Ok(())
    }

    /// Direct sum.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_alphabet(other)?;
        let (n1, n2) = (self.dim(), other.dim());
        let mut mu = Vec::with_capacity(self.mu.len());
        for (a, b) in self.mu.iter().zip(&other.mu) {
            let mut m = Matrix::zeros(n1 + n2, n1 + n2);
            m.set_block(0, 0, a);
            m.set_block(n1, n1, b);
            mu.push(m);
        }
        let lambda = self.lambda.iter().chain(&other.lambda).cloned().collect();
        let rho = self.rho.iter().chain(&other.rho).cloned().collect();
        Ok(LinearRepresentation { generators: self.generators, lambda, mu, rho })
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.sum(&other.negate())
    }

    /// Cauchy (concatenation) product over the free monoid.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_alphabet(other)?;
        let (n1, n2) = (self.dim(), other.dim());
        let c1 = if n1 == 0 { K::zero() } else { dot(&self.lambda, &self.rho) };
        let mut lambda = self.lambda.clone();
        lambda.extend(other.lambda.iter().map(|x| x.clone() * &c1));
        let mut mu = Vec::with_capacity(self.mu.len());
        for (a, b) in self.mu.iter().zip(&other.mu) {
            let mut m = Matrix::zeros(n1 + n2, n1 + n2);
            m.set_block(0, 0, a);
            m.set_block(n1, n1, b);
            // a * rho1 * lambda2
            let ar = a.right_mul(&self.rho);
            for (i, x) in ar.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in other.lambda.iter().enumerate() {
                    if !y.is_zero() {
                        m[(i, n1 + j)] = x.clone() * y;
                    }
                }
            }
            mu.push(m);
        }
        let mut rho = vec![K::zero(); n1];
        rho.extend(other.rho.iter().cloned());
        Ok(LinearRepresentation { generators: self.generators, lambda, mu, rho })
    }

    /// `1 + S + S^2 + ...` over the free monoid; needs `(S, empty) = 0`.
    pub fn star(&self) -> Result<Self> {
        let n = self.dim();
        if n > 0 && !dot(&self.lambda, &self.rho).is_zero() {
            return Err(Error::StarNotProper);
        }
        let mut mu = Vec::with_capacity(self.mu.len());
        for a in &self.mu {
            let mut m = a.clone();
            let ar = a.right_mul(&self.rho);
            for (i, x) in ar.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in self.lambda.iter().enumerate() {
                    if !y.is_zero() {
                        m[(i, j)] += x.clone() * y;
                    }
                }
            }
            mu.push(m);
        }
        let plus = LinearRepresentation { generators: self.generators, lambda: self.lambda.clone(), mu, rho: self.rho.clone() };
        Self::constant(self.generators, K::one()).sum(&plus)
    }

    /// Pointwise product: Kronecker construction.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        self.check_alphabet(other)?;
        let mu = self.mu.iter().zip(&other.mu).map(|(a, b)| a.kron(b)).collect();
        Ok(LinearRepresentation {
            generators: self.generators,
            lambda: kron_vec(&self.lambda, &other.lambda),
            mu,
            rho: kron_vec(&self.rho, &other.rho),
        })
    }

    /// `u o S`: coefficient of `v` becomes the old coefficient of `v u`.
    pub fn right_translate(&self, u: &Word) -> Self {
        self.with_rho(self.backward(u, &self.rho))
    }

    /// Forward space basis: span of `lambda mu(w)` over all words.
    pub fn forward_basis(&self) -> RowBasis<K> {
        closure_basis(self.dim(), vec![self.lambda.clone()], |v, l| self.mu(l).left_mul(v), self.letters())
    }

    /// Backward space basis: span of `mu(w) rho` over all words.
    pub fn backward_basis(&self) -> RowBasis<K> {
        closure_basis(self.dim(), vec![self.rho.clone()], |v, l| self.mu(l).right_mul(v), self.letters())
    }

    /// Restrict to a mu-invariant subspace of row vectors containing lambda.
    fn restrict_forward(&self, basis: &RowBasis<K>) -> Self {
        let b = basis.rows();
        let coords = |v: &[K]| basis.coordinates(v).expect("vector outside invariant subspace");
        let lambda = coords(&self.lambda);
        let mu = self
            .mu
            .iter()
            .map(|m| Matrix::from_rows_or_empty(b.iter().map(|r| coords(&m.left_mul(r))).collect(), b.len()))
            .collect();
        let rho = b.iter().map(|r| dot(r, &self.rho)).collect();
        LinearRepresentation { generators: self.generators, lambda, mu, rho }
    }

    /// Restrict to a mu-invariant subspace of column vectors containing rho.
    fn restrict_backward(&self, basis: &RowBasis<K>) -> Self {
        let c = basis.rows();
        let k = c.len();
        let coords = |v: &[K]| basis.coordinates(v).expect("vector outside invariant subspace");
        let rho = coords(&self.rho);
        let mu = self
            .mu
            .iter()
            .map(|m| {
                let cols: Vec<Vec<K>> = c.iter().map(|col| coords(&m.right_mul(col))).collect();
                Matrix::from_rows_or_empty(cols, k).transpose()
            })
            .collect();
        let lambda = c.iter().map(|col| dot(&self.lambda, col)).collect();
        LinearRepresentation { generators: self.generators, lambda, mu, rho }
    }

    /// Minimal equivalent representation (forward then backward restriction).
    pub fn reduce(&self) -> Self {
        let fwd = self.restrict_forward(&self.forward_basis());
        fwd.restrict_backward(&fwd.backward_basis())
    }

    pub fn hankel_rank_word(&self) -> usize {
        self.reduce().dim()
    }

    pub fn is_zero(&self) -> bool {
        self.reduce().dim() == 0
    }

    /// Independent zero test: every `lambda mu(w)` with `|w| < dim` is orthogonal to rho,
    /// checked on a level-by-level spanning set.
    pub fn is_zero_by_levels(&self) -> bool {
        let n = self.dim();
        if n == 0 {
            return true;
        }
        let mut basis = RowBasis::new(n);
        let mut frontier = vec![self.lambda.clone()];
        for _level in 0..n {
            let mut next = Vec::new();
            for v in frontier {
                if basis.insert(v.clone()) {
                    if !dot(&v, &self.rho).is_zero() {
                        return false;
                    }
                    for l in self.letters() {
                        next.push(self.mu(l).left_mul(&v));
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        true
    }

    /// States reachable from lambda and co-reachable to rho along nonzero entries.
    pub fn trim(&self) -> Self {
        let n = self.dim();
        let reach = |start: Vec<usize>, fwd: bool| {
            let mut seen = vec![false; n];
            let mut stack = start;
            for &s in &stack {
                seen[s] = true;
            }
            while let Some(s) = stack.pop() {
                for m in &self.mu {
                    for t in 0..n {
                        let e = if fwd { &m[(s, t)] } else { &m[(t, s)] };
                        if !seen[t] && !e.is_zero() {
                            seen[t] = true;
                            stack.push(t);
                        }
                    }
                }
            }
            seen
        };
        let acc = reach((0..n).filter(|&i| !self.lambda[i].is_zero()).collect(), true);
        let coacc = reach((0..n).filter(|&i| !self.rho[i].is_zero()).collect(), false);
        let keep: Vec<usize> = (0..n).filter(|&i| acc[i] && coacc[i]).collect();
        self.select_states(&keep)
    }

    pub fn select_states(&self, keep: &[usize]) -> Self {
        LinearRepresentation {
            generators: self.generators,
            lambda: keep.iter().map(|&i| self.lambda[i].clone()).collect(),
            mu: self.mu.iter().map(|m| m.select(keep, keep)).collect(),
            rho: keep.iter().map(|&i| self.rho[i].clone()).collect(),
        }
    }

    /// Replace every transition matrix.
    pub fn with_mu(&self, mu: Vec<Matrix<K>>) -> Self {
        assert_eq!(mu.len(), self.mu.len());
        LinearRepresentation { mu, ..self.clone() }
    }

    /// Total number of nonzero transition entries.
    pub fn transition_count(&self) -> usize {
        self.mu.iter().map(|m| m.nonzero_entries().count()).sum()
    }

    pub fn lambda_rho_is_zero(&self) -> bool {
        is_zero_vec(&self.lambda) || dot(&self.lambda, &self.rho).is_zero()
    }
}

/// Worklist closure of `seeds` under `step(v, letter)`, returned as an echelon basis.
pub(crate) fn closure_basis<K: Field>(
    dim: usize,
    seeds: Vec<Vec<K>>,
    step: impl Fn(&[K], Letter) -> Vec<K>,
    letters: impl Iterator<Item = Letter> + Clone,
) -> RowBasis<K> {
    let mut basis = RowBasis::new(dim);
    let mut queue: Vec<Vec<K>> = Vec::new();
    for s in seeds {
        if basis.insert(s.clone()) {
            queue.push(s);
        }
    }
    let mut i = 0;
    while i < queue.len() {
        let v = queue[i].clone();
        i += 1;
        for l in letters.clone() {
            let w = step(&v, l);
            if basis.insert(w.clone()) {
                queue.push(w);
            }
        }
    }
    basis
}

impl<K: Field> Matrix<K> {
    /// Like `from_rows`, but keeps the column count when there are no rows.
    pub fn from_rows_or_empty(rows: Vec<Vec<K>>, cols: usize) -> Self {
        if rows.is_empty() {
            Matrix::zeros(0, cols)
        } else {
            Matrix::from_rows(rows)
        }
    }
}
