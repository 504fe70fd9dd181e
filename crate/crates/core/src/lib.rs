//! Exact verification toolkit for the K3 double covers attached to plane
//! cubic curves.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact`]: rationals, sparse multivariate polynomials, resultants and
//!   triangular quotient rings.
//! * [`lattice`]: integer matrices (Smith/Hermite forms, saturated kernels)
//!   and lattices presented by a Gram matrix on labeled generators.
//! * [`groupcoh`]: finite groups acting on free modules, subgroup
//!   enumeration, `H^0` and `H^1`.
//! * [`geometry`]: diagonal and Weierstrass plane cubics over `Q`, line
//!   classification, local solvability and line searches.
//! * [`k3`]: explicit double-sextic models and the Néron-Severi catalog of
//!   the diagonal-cubic K3 surface.
//! * [`verify`]: the registry of named checks used by the command line tool.
//!
//! Data-parallel loops go through [`par`], which uses rayon when the
//! `parallel` feature is enabled and falls back to sequential iteration
//! otherwise. Results never depend on the evaluation order.

pub mod error;
pub mod exact;
pub mod geometry;
pub mod groupcoh;
pub mod k3;
pub mod lattice;
pub mod par;
pub mod verify;

pub use error::{Error, Result};
