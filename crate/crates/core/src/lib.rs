//! Exact Riordan-group computations and symmetric lattice path enumeration.
//!
//! The crate is organised bottom-up:
//!
//! - [`series`]: truncated power series over the rationals, with composition,
//!   reversion and square roots.
//! - [`riordan`]: Riordan arrays `(g, f)` and the group operations on them.
//! - [`paths`]: Dyck / Motzkin / Schröder / MS paths, dynamic-programming counters
//!   and explicit enumerators.
//! - [`bijections`]: the level-step removal maps and the two height-changing bijections.
//! - [`identities`]: a registry that checks every identity by several independent routes.

pub mod bijections;
pub mod identities;
pub mod paths;
pub mod riordan;
pub mod series;
