//! Exact arithmetic in the field of rational functions over Q.

mod gcd;
mod identity;
mod laurent;
mod modp;
mod monomial;
mod parse;
mod poly;
mod rational;
mod var;

pub use gcd::{gcd, gcd_all};
pub use identity::{random_identity_test, random_point, DEFAULT_TRIALS, SAMPLE_RANGE};
pub use laurent::LaurentMonomial;
pub use monomial::Monomial;
pub use poly::Polynomial;
pub use rational::{reduce_threshold, set_reduce_threshold, Divergent, RationalFunction};
pub use var::Var;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RatError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at evaluation point")]
    PoleAtPoint,
    #[error("every sampled point hit a pole")]
    InconclusiveAllPoles,
    #[error("parse error: {0}")]
    Parse(String),
}
