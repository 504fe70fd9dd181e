//! Lattices given by labeled generators and a symmetric rational Gram
//! matrix, plus the integer linear algebra they rest on.

mod abgroup;
mod gram;
mod intmat;

pub use abgroup::FinAbGroup;
pub use gram::{GramLattice, RadicalQuotient};
pub use intmat::{smith_normal_form, IntMatrix, Smith};

pub(crate) use intmat::solve_in_columns;
