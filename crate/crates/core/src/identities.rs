//! Quasideterminants, quasi-Plücker coordinates and a corpus of
//! free-field identities.

use crate::error::{Error, Result};
use crate::expr::{parse_expression, RatExpr};
use crate::freegroup::Alphabet;
use crate::scalar::Field;

/// Rectangular grid of expressions.
#[derive(Clone, Debug, PartialEq)]
pub struct ExprMatrix<K> {
    rows: usize,
    cols: usize,
    entries: Vec<RatExpr<K>>,
}

impl<K: Field> ExprMatrix<K> {
    pub fn new(rows: Vec<Vec<RatExpr<K>>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("matrix rows must be nonempty and of equal length".into()));
        }
        Ok(ExprMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    /// Rows of expressions, e.g. `&[&["1", "x", "1"], &["y", "1", "z"]]`.
    pub fn parse(rows: &[&[&str]], alphabet: &Alphabet) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|row| row.iter().map(|s| parse_expression(s, alphabet)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RatExpr<K> {
        &self.entries[i * self.cols + j]
    }

    /// Submatrix keeping the listed rows and columns, in the listed order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let entries = rows.iter().flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone())).collect();
        ExprMatrix { rows: rows.len(), cols: cols.len(), entries }
    }

    fn without(&self, i: usize, j: usize) -> Self {
        let rs: Vec<usize> = (0..self.rows).filter(|&r| r != i).collect();
        let cs: Vec<usize> = (0..self.cols).filter(|&c| c != j).collect();
        self.select(&rs, &cs)
    }
}

/// Inverse that folds letters, nonzero scalars and double inverses.
fn inv<K: Field>(e: RatExpr<K>) -> RatExpr<K> {
    match e {
        RatExpr::Gen(l) => RatExpr::Gen(l.inverse()),
        RatExpr::ScalarLit(c) if !c.is_zero() => RatExpr::scalar(c.inv()),
        RatExpr::Inverse(inner) => *inner,
        e => RatExpr::inverse(e),
    }
}

/// `|A|_{ij} = A_ij - A_{i, not j} (A^{ij})^-1 A_{not i, j}` for square `A`
/// of size at most 3 (0-based indices). Inverses stay symbolic.
pub fn quasideterminant<K: Field>(a: &ExprMatrix<K>, i: usize, j: usize) -> Result<RatExpr<K>> {
    let n = a.rows;
    if n != a.cols {
        return Err(Error::DimensionMismatch(format!("quasideterminant of a {}x{} matrix", a.rows, a.cols)));
    }
    if i >= n || j >= n {
        return Err(Error::DimensionMismatch(format!("index ({i},{j}) outside a {n}x{n} matrix")));
    }
    if n > 3 {
        return Err(Error::Unsupported(format!("quasideterminants of {n}x{n} matrices")));
    }
    if n == 1 {
        return Ok(a.get(0, 0).clone());
    }
    let rs: Vec<usize> = (0..n).filter(|&r| r != i).collect();
    let cs: Vec<usize> = (0..n).filter(|&c| c != j).collect();
    let sub = a.without(i, j);
    // (sub^-1)_{qp} = |sub|_{pq}^-1
    let mut terms = vec![a.get(i, j).clone()];
    for (q, &c) in cs.iter().enumerate() {
        for (p, &r) in rs.iter().enumerate() {
            let inner = inv(quasideterminant(&sub, p, q)?);
            terms.push(RatExpr::neg(RatExpr::product(vec![a.get(i, c).clone(), inner, a.get(r, j).clone()])));
        }
    }
    Ok(RatExpr::sum(terms))
}

/// `p^K_{ij} = (|A_{[n], i K}|_{r,i})^-1 |A_{[n], j K}|_{r,i}`, columns
/// listed with `i` (resp. `j`) first. Indices are 0-based.
pub fn quasi_plucker<K: Field>(a: &ExprMatrix<K>, i: usize, j: usize, k: &[usize], r: usize) -> Result<RatExpr<K>> {
    let (n, m) = (a.rows, a.cols);
    if n >= m {
        return Err(Error::DimensionMismatch(format!("need more columns than rows, got {n}x{m}")));
    }
    if k.len() + 1 != n {
        return Err(Error::DimensionMismatch(format!("column set must have {} elements, got {}", n - 1, k.len())));
    }
    if r >= n || i >= m || j >= m || k.iter().any(|&c| c >= m) {
        return Err(Error::DimensionMismatch("index outside the matrix".into()));
    }
    if k.contains(&i) {
        return Err(Error::DimensionMismatch(format!("column {i} is in the column set")));
    }
    let all: Vec<usize> = (0..n).collect();
    let cols = |first: usize| std::iter::once(first).chain(k.iter().copied()).collect::<Vec<_>>();
    let den = quasideterminant(&a.select(&all, &cols(i)), r, 0)?;
    let num = quasideterminant(&a.select(&all, &cols(j)), r, 0)?;
    Ok(RatExpr::product(vec![inv(den), num]))
}

/// `p^{k L}_{ij} p^{i L}_{jk} + p^{j L}_{ik}`, which vanishes. Rows used
/// for the three coordinates are given separately.
pub fn skew_symmetry<K: Field>(a: &ExprMatrix<K>, (i, j, k): (usize, usize, usize), l: &[usize], rows: [usize; 3]) -> Result<RatExpr<K>> {
    let with = |c: usize| std::iter::once(c).chain(l.iter().copied()).collect::<Vec<_>>();
    let p1 = quasi_plucker(a, i, j, &with(k), rows[0])?;
    let p2 = quasi_plucker(a, j, k, &with(i), rows[1])?;
    let p3 = quasi_plucker(a, i, k, &with(j), rows[2])?;
    Ok(RatExpr::sum(vec![RatExpr::product(vec![p1, p2]), p3]))
}

/// A named expression that should be zero.
#[derive(Clone, Debug)]
pub struct CorpusItem<K> {
    pub name: String,
    pub alphabet: Alphabet,
    pub expr: RatExpr<K>,
}

/// The rational identity in inverse form.
pub const RATIONAL_IDENTITY: &str = "(x - z^-1)(1 - y x)^-1 (y - z) + (y^-1 - z^-1)(1 - x^-1 y^-1)^-1 (x^-1 - z)";
/// The same identity written with stars.
pub const RATIONAL_IDENTITY_STAR: &str = "(x - z^-1)(y x)^* (y - z) + (y^-1 - z^-1)(x^-1 y^-1)^* (x^-1 - z)";
pub const PARTIAL_FRACTIONS: &str = "x^-1 (1 - x)^-1 - x^-1 - (1 - x)^-1";
pub const EULER: &str = "(1 - x^-1)^-1 + x (1 - x)^-1";
pub const EULER_STAR: &str = "(x^-1)^* + x x^*";

/// 2x3 matrices with entries `1` and distinct generators; the first is the
/// one whose skew-symmetry relation is the rational identity.
pub const SKEW_MATRICES: [[[&str; 3]; 2]; 3] = [
    [["1", "x", "1"], ["y", "1", "z"]],
    [["x", "1", "1"], ["1", "y", "z"]],
    [["1", "1", "x"], ["y", "z", "1"]],
];

/// Skew-symmetry instances over `x,y,z`; `(i,j,k) = (0,1,2)`, `L` empty.
pub fn skew_instances<K: Field>() -> Result<Vec<CorpusItem<K>>> {
    let al = Alphabet::parse("x,y,z")?;
    let mut out = Vec::new();
    for (m, rows) in SKEW_MATRICES.iter().enumerate() {
        let grid: Vec<&[&str]> = rows.iter().map(|r| &r[..]).collect();
        let a = ExprMatrix::parse(&grid, &al)?;
        for (tag, rows) in [("r112", [0, 1, 1]), ("r222", [1, 1, 1]), ("r111", [0, 0, 0])] {
            out.push(CorpusItem {
                name: format!("skew-symmetry-m{}-{tag}", m + 1),
                alphabet: al.clone(),
                expr: skew_symmetry(&a, (0, 1, 2), &[], rows)?,
            });
        }
    }
    Ok(out)
}

/// Fixed corpus of expressions expected to be zero.
pub fn identity_corpus<K: Field>() -> Result<Vec<CorpusItem<K>>> {
    let xyz = Alphabet::parse("x,y,z")?;
    let x = Alphabet::parse("x")?;
    let item = |name: &str, al: &Alphabet, text: &str| -> Result<CorpusItem<K>> {
        Ok(CorpusItem { name: name.into(), alphabet: al.clone(), expr: parse_expression(text, al)? })
    };
    let mut out = vec![
        item("rational-identity", &xyz, RATIONAL_IDENTITY)?,
        item("rational-identity-star", &xyz, RATIONAL_IDENTITY_STAR)?,
        item("partial-fractions", &x, PARTIAL_FRACTIONS)?,
        item("euler", &x, EULER)?,
    ];
    out.extend(skew_instances()?);
    Ok(out)
}
