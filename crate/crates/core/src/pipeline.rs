//! The word-problem pipeline: inverse elimination, compilation, simplification
//! removal, and zero testing with witnesses.

use std::cmp::Ordering;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::expr::{expression_to_representation, representation_to_expression, RatExpr};
use crate::freegroup::{group_inv, group_mul, GroupElement, Letter, Word};
use crate::linalg::{dot, RowBasis};
use crate::magnus;
use crate::scalar::Field;
use crate::simplify::{self, check_well_ordered, remove_simplifications_rep, support_envelope, ClosureConfig};
use crate::support::{self, jacob_bound, magnus_min, support_below};
use crate::wfa::LinearRepresentation;

/// How a user-written star that fails the well-ordering check is read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum StarMode {
    /// As the field element `(1 - c)^-1`, expanded by Malcev-Neumann inversion.
    #[default]
    Field,
    /// As the formal sum `1 + c + c^2 + ...` over the group; a warning is recorded.
    Formal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    pub closure: ClosureConfig,
    /// Replaces Jacob's bound in minimum-of-support searches.
    pub bound: Option<usize>,
    pub work_limit: usize,
    pub cycle_budget: usize,
    pub star_mode: StarMode,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            closure: ClosureConfig::default(),
            bound: None,
            work_limit: support::DEFAULT_WORK_LIMIT,
            cycle_budget: simplify::DEFAULT_CYCLE_BUDGET,
            star_mode: StarMode::Field,
        }
    }
}

/// Output of [`normalize`].
#[derive(Clone, Debug)]
pub struct Normalized<K> {
    /// Star-rational form of the input.
    pub eliminated: RatExpr<K>,
    /// Minimal representation of the group series, supported on reduced words.
    pub series: LinearRepresentation<K>,
    pub warnings: Vec<String>,
}

pub struct Normalizer<K> {
    generators: usize,
    config: Config,
    warnings: Vec<String>,
    _k: std::marker::PhantomData<K>,
}

impl<K: Field> Normalizer<K> {
    pub fn new(generators: usize, config: Config) -> Self {
        Normalizer { generators, config, warnings: Vec::new(), _k: std::marker::PhantomData }
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn take_warnings(&mut self) -> Vec<String> {
        std::mem::take(&mut self.warnings)
    }

    /// Simplification-free series of a star-rational expression.
    pub fn series_of(&self, e: &RatExpr<K>) -> Result<LinearRepresentation<K>> {
        let word = expression_to_representation(e, self.generators)?;
        remove_simplifications_rep(&word, self.config.closure)
    }

    /// Rewrites every inverse (and every star that is not certified
    /// well-ordered, in field mode) into stars of well-ordered series.
    pub fn eliminate(&mut self, e: &RatExpr<K>) -> Result<RatExpr<K>> {
        Ok(match e {
            RatExpr::ScalarLit(_) | RatExpr::Gen(_) => e.clone(),
            RatExpr::Sum(v) => RatExpr::Sum(v.iter().map(|c| self.eliminate(c)).collect::<Result<_>>()?),
            RatExpr::Product(v) => RatExpr::Product(v.iter().map(|c| self.eliminate(c)).collect::<Result<_>>()?),
            RatExpr::Neg(c) => RatExpr::neg(self.eliminate(c)?),
            RatExpr::Inverse(c) => {
                let c = self.eliminate(c)?;
                self.invert(&c)?
            }
            RatExpr::Star(c) => {
                let c = self.eliminate(c)?;
                if self.star_is_well_ordered(&c)? {
                    RatExpr::star(c)
                } else {
                    match self.config.star_mode {
                        StarMode::Field => {
                            let one_minus = RatExpr::Sum(vec![RatExpr::one(), RatExpr::neg(c)]);
                            self.invert(&one_minus)?
                        }
                        StarMode::Formal => {
                            self.warnings.push("star is not certified well-ordered; kept as a formal group series".into());
                            RatExpr::star(c)
                        }
                    }
                }
            }
        })
    }

    /// Word-proper, every cycle of the support envelope exceeds 1, and the
    /// minimum of the support exceeds 1.
    fn star_is_well_ordered(&self, c: &RatExpr<K>) -> Result<bool> {
        let word = expression_to_representation(c, self.generators)?;
        if !word.lambda_rho_is_zero() {
            return Ok(false);
        }
        let env = support_envelope(&RatExpr::star(c.clone()), self.generators)?;
        match check_well_ordered(&env, self.config.cycle_budget) {
            Ok(true) => {}
            Ok(false) | Err(Error::CycleBudget(_)) => return Ok(false),
            Err(e) => return Err(e),
        }
        let series = match remove_simplifications_rep(&word, self.config.closure) {
            Ok(s) => s,
            Err(Error::ClosureBudget) => return Ok(false),
            Err(e) => return Err(e),
        };
        if series.is_zero() {
            return Ok(true);
        }
        let (w0, _) = self.min_supp(&series)?.0;
        Ok(magnus::sign(&w0)? == Ordering::Greater)
    }

    /// Minimum of the support, plus the full support when it is finite.
    #[allow(clippy::type_complexity)]
    fn min_supp(&self, series: &LinearRepresentation<K>) -> Result<((GroupElement, K), Option<Vec<(GroupElement, K)>>)> {
        let bound = match self.config.bound {
            Some(b) => b,
            None => jacob_bound(series.dim()).to_usize().unwrap_or(usize::MAX),
        };
        let (found, finite) = support_below(series, bound, self.config.work_limit)?;
        let min = magnus_min(&found)?.ok_or(Error::InconsistentBound(bound))?;
        Ok((min, finite.then_some(found)))
    }

    /// `c^-1 = a0^-1 w0^-1 (T)^*` with `T = -a0^-1 (c - a0 w0) w0^-1`.
    fn invert(&mut self, c: &RatExpr<K>) -> Result<RatExpr<K>> {
        let series = self.series_of(c)?;
        if series.is_zero() {
            return Err(Error::InverseOfZero);
        }
        let ((w0, a0), finite) = self.min_supp(&series)?;
        let w0_inv = group_inv(&w0);
        let inv_a0 = a0.inv();
        let tail = match finite {
            Some(terms) => RatExpr::sum(
                terms
                    .iter()
                    .filter(|(w, _)| *w != w0)
                    .map(|(w, a)| RatExpr::monomial(-(a.clone() * &inv_a0), group_mul(w, &w0_inv).word()))
                    .collect(),
            ),
            None => {
                let c_sf = representation_to_expression(&series);
                RatExpr::product(vec![
                    RatExpr::ScalarLit(-inv_a0.clone()),
                    RatExpr::sum(vec![c_sf, RatExpr::monomial(-a0.clone(), w0.word())]),
                    RatExpr::monomial(K::one(), w0_inv.word()),
                ])
            }
        };
        Ok(RatExpr::product(vec![RatExpr::ScalarLit(inv_a0), RatExpr::monomial(K::one(), w0_inv.word()), RatExpr::star_of(tail)]))
    }

    pub fn normalize(&mut self, e: &RatExpr<K>) -> Result<Normalized<K>> {
        let eliminated = self.eliminate(e)?;
        let series = self.series_of(&eliminated)?;
        Ok(Normalized { eliminated, series, warnings: self.warnings.clone() })
    }
}

/// Star-rational expression equal to `e` in the free field.
pub fn eliminate_inverses<K: Field>(e: &RatExpr<K>, generators: usize, config: Config) -> Result<RatExpr<K>> {
    Normalizer::new(generators, config).eliminate(e)
}

pub fn normalize<K: Field>(e: &RatExpr<K>, generators: usize, config: Config) -> Result<Normalized<K>> {
    Normalizer::new(generators, config).normalize(e)
}

/// A reduced word with nonzero coefficient, or `None` for the zero series.
/// Explores words breadth-first keeping only prefixes with new forward
/// vectors; these span the forward space, so one of them is in the support.
pub fn witness<K: Field>(series: &LinearRepresentation<K>) -> Option<(GroupElement, K)> {
    if series.dim() == 0 {
        return None;
    }
    let mut basis = RowBasis::new(series.dim());
    let mut queue: Vec<(Vec<Letter>, Vec<K>)> = Vec::new();
    if basis.insert(series.lambda().to_vec()) {
        queue.push((Vec::new(), series.lambda().to_vec()));
    }
    let mut i = 0;
    while i < queue.len() {
        let (w, v) = queue[i].clone();
        i += 1;
        let c = dot(&v, series.rho());
        if !c.is_zero() {
            let g = GroupElement::from_reduced(Word(w)).expect("simplification-free series");
            return Some((g, c));
        }
        for l in series.letters() {
            let u = series.mu(l).left_mul(&v);
            if basis.insert(u.clone()) {
                let mut w2 = w.clone();
                w2.push(l);
                queue.push((w2, u));
            }
        }
    }
    None
}

/// Zero test with a witness on failure.
pub fn zero_test<K: Field>(e: &RatExpr<K>, generators: usize, config: Config) -> Result<Option<(GroupElement, K)>> {
    let n = normalize(e, generators, config)?;
    Ok(witness(&n.series))
}

pub fn is_zero_expr<K: Field>(e: &RatExpr<K>, generators: usize, config: Config) -> Result<bool> {
    Ok(normalize(e, generators, config)?.series.is_zero())
}

/// `a - b`.
pub fn difference<K: Field>(a: &RatExpr<K>, b: &RatExpr<K>) -> RatExpr<K> {
    RatExpr::Sum(vec![a.clone(), RatExpr::neg(b.clone())])
}

/// Coefficient of a group element in the normalized series.
pub fn group_coefficient<K: Field>(series: &LinearRepresentation<K>, g: &GroupElement) -> K {
    series.coefficient(g.word())
}
