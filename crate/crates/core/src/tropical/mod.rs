//! Tropical (max-plus / min-plus) arithmetic over finite reals.
//!
//! Expressions use ordinary-arithmetic surface syntax: `max(..)`, `min(..)`,
//! `+`, binary and unary `-`, integer multipliers `k*e` and real constants.
//! A tropical power `x^k` is written `k*x`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := '-' term | INT '*' term | factor
//! factor := NUMBER | IDENT | ('max' | 'min') '(' expr (',' expr)* ')' | '(' expr ')'
//! ```

mod expr;
mod normal_form;
mod parser;

pub use expr::{trop_eval, TropScalar, TropicalExpr};
pub use normal_form::{to_rational_normal_form, AffineTerm, MaxPlusForm, RationalNormalForm};
pub use parser::parse_tropical;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TropError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown token {token:?} at offset {offset}")]
    UnknownToken { offset: usize, token: char },
    #[error("variable `{0}` has no assigned value")]
    UnassignedVariable(String),
    #[error("`{0}` needs at least one argument")]
    EmptyOperator(&'static str),
    #[error("negative exponent {exponent} on `{variable}`")]
    NegativeExponent { variable: String, exponent: i64 },
}
