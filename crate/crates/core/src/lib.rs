//! Exact-arithmetic Lie theory for homogeneous pseudo-Riemannian Einstein metrics.
//!
//! The crate builds the matrix Lie algebras acting transitively on the
//! pseudo-hyperbolic spaces H^n_r, checks transitivity and compact duality
//! at the Lie algebra level, and computes Ricci curvature of invariant
//! metrics exactly over ℚ.

pub mod algebra;
pub mod clifford;
pub mod duality;
pub mod einstein;
pub mod error;
pub mod groups;
pub mod liealg;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod transitivity;

pub use error::{Error, Result};
pub use matrix::{Mat, Signature};
pub use rational::Q;
