//! Plane cubics over `Q`: line intersections and their fields of
//! definition, flexes, collinearity and local solvability of diagonal
//! cubics.

mod classify;
mod curves;
mod flex;
mod line;
mod local;
mod search;

pub use classify::{
    binary_form, classify_binary, classify_line, intersect_line, CubicPointClass, EliminationChoice, PointClass,
};
pub use curves::{DiagonalCubic, PlaneCubic, WeierstrassCubic};
pub use flex::{
    collinear, flex_on_curve_check, flex_slope_poly, flex_slope_poly_symbolic, flexes_diagonal, hessian,
    weierstrass_flex, weierstrass_flex_ring, DiagonalFlexes,
};
pub use line::{ProjLine, ProjPoint};
pub use local::{bad_primes, everywhere_locally_solvable, local_report, local_solvable_at, LocalReport};
pub use search::{search_cubic_lines, FastClassifier, search_lines, SearchOptions, SearchResult, SearchSummary};
