//! Dyadic chains, the prenorm they induce, and its metrics.

pub mod admissible;
pub mod chain;
pub mod family;
pub mod metric;
pub mod microassoc;
pub mod norm;

pub use admissible::{
    admissible_hull, admissible_hull_radial, admissible_intersection, admissible_intersection_radial,
    admissible_quotient_inclusion_check, radial_inclusion_check, shrink, shrink_radius, symmetric_core, Orbits,
};
pub use chain::{
    ensure_valid, first_violation, validate_radial_chain, validate_set_chain, ChainFile, Flavor, RadialChain,
    SetChain,
};
pub use family::{build_radial_family, build_set_family, check_set_family, RadialFamily, SetFamily};
pub use metric::{
    check_d_pseudometric, check_prenorm_laws, check_quotient_metric, check_rho_indiscernibles, check_rho_metric,
    check_sandwich, coset_invariant_n_check, d_ball, pseudo_distance, quotient_ball_preimage, quotient_metric,
    quotient_table, rho_ball, rho_n, varrho_at,
};
pub use microassoc::{micro_assoc_check, micro_assoc_radial, MICRO_ASSOC_DIRECTIONS, MICRO_ASSOC_TOL};
pub use norm::{FinitePrenorm, Prenorm, RadialPrenorm};
