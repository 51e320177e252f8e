//! Rational expressions: parsing, compilation, and inverse elimination.

pub mod ast;
pub mod compile;
pub mod parse;
pub mod to_expr;

pub use ast::{GroupPolynomial, RatExpr};
pub use compile::{expression_to_automaton, expression_to_representation};
pub use parse::parse_expression;
pub use to_expr::{automaton_to_expression, representation_to_expression};
