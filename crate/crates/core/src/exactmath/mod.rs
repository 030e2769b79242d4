//! Exact arithmetic substrate.
//!
//! Everything geometric in this crate is decided with exact rationals and
//! arbitrary-precision integers: the conditions being tested (imbrication,
//! spanning, cone completeness) flip under rounding.

mod lp;
mod matrix;
mod rational;
pub mod serde_bigint;
mod snf;

pub use lp::{
    lp_solve, Constraint, FarkasCertificate, LpOutcome, LpProblem, Relation, Sense, UnboundedRay,
};
pub use matrix::{rational_rank, solve_square, IntMatrix};
pub use rational::{format_rational, int, parse_rational, rat, serde_rational, Rational};
pub use snf::{hnf_basis_extension, snf, SnfResult};
