//! Exact Chern class calculus in the splitting-principle model.
//!
//! - [`bigpoly`]: truncated graded polynomials and power series over `Z`
//! - [`partitions`]: partitions, Littlewood-Richardson coefficients, Schur polynomials
//! - [`chern_roots`]: virtual bundles as line-element combinations; lambda and Schur operations
//! - [`gamma`]: gamma operations and the gamma filtration
//! - [`grassmann`]: the boxed Schur model of Grassmannians and its presentation
//! - [`grr_check`]: the vanishing and factorial identities and the `B^i` ↔ `gr^i_gamma` compositions
//! - [`cli`]: the `chern` command-line front end

pub mod bigpoly;
pub mod chern_roots;
pub mod cli;
pub mod error;
pub mod gamma;
pub mod grassmann;
pub mod grr_check;
pub mod partitions;

pub use bigpoly::{GradedPoly, Ring, TotalChern, Variable};
pub use chern_roots::{KClass, LineElement, RootContext};
pub use error::{Error, Result};
pub use partitions::Partition;
