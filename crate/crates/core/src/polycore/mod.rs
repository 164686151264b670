//! Exact integer, modular and polynomial arithmetic.

pub mod arith;
pub mod finite_field;
pub mod hensel;
pub mod intpoly;
pub mod irreducible;
pub mod modpoly;
pub mod resultant;
pub mod sturm;

pub use hensel::hensel_lift_factorization;
pub use intpoly::IntPoly;
pub use irreducible::{
    is_irreducible_over_q, is_irreducible_over_q_with_budget, Irreducibility, IrreducibilityCertificate,
    ReducibilityWitness,
};
pub use modpoly::{
    current_seed, factor_mod_p, factor_mod_p_seeded, factor_shape_mod_p, set_seed, FactorizationModP, ModPoly,
    DEFAULT_SEED,
};
pub use resultant::{char_poly_of_element, discriminant, resultant};
pub use sturm::sturm_real_root_count;
