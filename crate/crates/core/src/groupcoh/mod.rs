//! Finite groups acting on free `Z`-modules: subgroup enumeration and the
//! cohomology groups `H^0`, `H^1`.

mod cohomology;
mod group;

pub use cohomology::{h0, h1, IntegralRep};
pub use group::{FinGroup, Subgroup, DEFAULT_CAP};
