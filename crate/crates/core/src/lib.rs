//! Exact linear-relation calculus for metrized Lie algebras and Manin pairs.
//!
//! The kernel works over exact rationals by default; a float mode with a
//! global tolerance exists for the examples whose exponentials are not
//! nilpotent. All values are immutable after construction and all operations
//! are pure functions.

pub mod error;
pub mod fatgroup;
pub mod hamiltonian;
pub mod integrate;
pub mod jet;
pub mod liealg;
pub mod maninrep;
pub mod matrix;
pub mod metrized;
pub mod relation;
pub mod samples;
pub mod scalar;
pub mod subspace;

pub use error::{Error, Result};
pub use scalar::{Rat, Scalar};
