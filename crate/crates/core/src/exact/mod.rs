//! Exact arithmetic substrate: rationals, sparse multivariate polynomials,
//! dense univariate polynomials over a coefficient ring, resultants and
//! normal forms in triangular quotient rings.

mod mpoly;
mod parse;
mod quotient;
mod rat;
mod upoly;

pub use mpoly::{Monomial, MPoly, Var};
pub use parse::parse_mpoly;
pub use quotient::{QuotientRing, Rule};
pub use rat::{factor_integer, fmt_rat, int, is_prime, is_square_rat, parse_rat, rat, Rat};
pub(crate) use rat::lcm_of_denominators;
pub use upoly::{determinant, rational_roots, Coeff, UPoly};

/// Arithmetic selector for [`poly_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(p: &MPoly, q: &MPoly, kind: ArithKind) -> MPoly {
    match kind {
        ArithKind::Add => p + q,
        ArithKind::Sub => p - q,
        ArithKind::Mul => p * q,
    }
}
