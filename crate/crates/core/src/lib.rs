//! Permutation 2-groups of finite groups and finite-type groupoids.
//!
//! The crate computes the homotopy invariants `(pi0, pi1, alpha)` of the
//! 2-group of self-equivalences of a groupoid, the classifying 3-cocycle of a
//! finite group's permutation 2-group, and decides splitness by independent
//! methods that are cross-checked against each other.

pub mod autos;
pub mod caps;
pub mod cohomology;
pub mod error;
pub mod expr;
pub mod group;
pub mod groupoid;
pub mod perm;
pub mod two_group;

pub use error::{Error, Result};
pub use group::{Elem, FiniteGroup};
