//! The K3 double covers of the dual plane branched over the dual sextic of
//! a plane cubic, and the Néron-Severi lattice of the diagonal case.

mod h1scan;
mod labels;
mod models;
mod ns;

pub use h1scan::{h1_scan, rho_sigma_tau, small_generating_set, H1Entry, H1Report};
pub use labels::{Family, GenLabel, Sign};
pub use models::{
    conic_square_root, cusp_lattice, cxc_gram, derive_diagonal_model, derive_weierstrass_model, diagonal_cusps,
    diagonal_cusps_on_branch_locus, divisor_selfint, glue_by, glue_lambda_check, glue_linear_only, glue_vector,
    singularity_identity_check, singularity_polys, singularity_residual, special_conic, special_conic_contains_cusps,
    verify_conic_splitting, verify_conic_splitting_with, weierstrass_cusps, weierstrass_cusps_on_branch_locus,
    GlueReport, K3Model, ModelKind,
};
pub use ns::{
    ns_catalog, permutation_matrix, prop_generators, theta_labels, NSCatalog, Relation,
    GENERATOR_NAMES,
};
