//! Combinatorics and exact geometry of LVMB good systems.
//!
//! A good system is a fundamental set `E` (a family of `M`-subsets of
//! `{1, …, n}`) together with `n` direction vectors in `C^m = R^{2m}`.
//! This crate decides the combinatorial properties of `E` (SE, SEU,
//! minimality), certifies goodness with exact linear programming, projects
//! the toric fan of the coordinate-arrangement complement to check that the
//! associated complex is the underlying complex of a complete fan, and runs
//! the inverse construction from starshaped spheres back to good systems.

pub mod error;
pub mod exactmath;
pub mod fundsys;
pub mod geometry;
pub mod inverse;
pub mod macomplex;
pub mod simplicial;
pub mod toricfan;

pub use error::{Error, Result};
pub use simplicial::VertexSet;
