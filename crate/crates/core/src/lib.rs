//! Exact computations in the quantum K-theory of toric GIT quotients.
//!
//! The crate is layered bottom-up: [`ring`] provides exact coefficient rings and
//! rational functions in the equivariant parameter, [`linalg`] the rational and
//! integer linear algebra, and the remaining modules implement Novikov series,
//! toric combinatorics, presentations, I-functions, localization and wall-crossing.

pub mod ring;
pub mod linalg;
pub mod novikov;
pub mod toric;
pub mod catalog;
pub mod presentation;
pub mod ifunction;
pub mod localization;
pub mod wallcross;
