pub mod connes;
pub mod error;
pub mod expr;
pub mod freegroup;
pub mod identities;
pub mod linalg;
pub mod magnus;
pub mod pipeline;
pub mod scalar;
pub mod simplify;
pub mod support;
pub mod wfa;

pub use error::{Error, Result};

pub use num_rational::BigRational;

/// Exact rationals, the default scalar.
pub type Rational = BigRational;
pub type Automaton = wfa::WeightedAutomaton<Rational>;
pub type Representation = wfa::LinearRepresentation<Rational>;
pub type Expr = expr::RatExpr<Rational>;

/// Minimal simplification-free series of an expression over `alphabet`,
/// with the default pipeline configuration.
pub fn series(text: &str, alphabet: &freegroup::Alphabet) -> Result<Representation> {
    let e = expr::parse_expression::<Rational>(text, alphabet)?;
    Ok(pipeline::normalize(&e, alphabet.size(), pipeline::Config::default())?.series)
}
