//! Cluster-algebraic realizations of affine Weyl groups on quivers, their
//! degenerations by confluence, the q-Garnier translations they generate,
//! and basic hypergeometric particular solutions of the Riccati reductions.
//!
//! Seeds, orbits and the hypergeometric kernels are generic over the scalar
//! traits in [`scalar`]; the aliases below fix the common choices.

pub mod bigfloat;
pub mod dynamics;
pub mod qhg;
pub mod quiver;
pub mod ratfield;
pub mod report;
pub mod scalar;
pub mod seed;
pub mod series;
pub mod weylrep;

pub use num::BigRational as Rational;

/// Seed with symbolic coefficients in `y1, y2, …`.
pub type SymbolicSeed = seed::Seed<ratfield::RationalFunction>;
/// Seed with exact rational coefficients.
pub type ExactSeed = seed::Seed<Rational>;
pub type SeedF64 = seed::Seed<f64>;
pub type SeedF32 = seed::Seed<f32>;

pub type OrbitF64 = dynamics::Orbit<f64>;
pub type ExactOrbit = dynamics::Orbit<Rational>;

pub type ParamsF64 = qhg::Params<f64>;
pub type ExactParams = qhg::Params<Rational>;
pub type PhiF64 = qhg::PhiSpec<f64>;
pub type PhiBig = qhg::PhiSpec<bigfloat::BigFloat>;
pub type SystemF64 = qhg::LinearQSystem<f64>;
