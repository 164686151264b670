//! Local arithmetic of polynomials at a prime.

pub mod eisenstein;
pub mod etale;
pub mod newton;
pub mod padic;
pub mod splitting;
pub mod wild;

pub use eisenstein::{eisenstein_generator, eisenstein_generator_at_5, star_condition};
pub use etale::{
    admitted_classes, etale_quintic_classes, local_density_factor, mass_subset, EtaleClass, LocalConditionSet,
    LocalField,
};
pub use newton::{newton_polygon, NewtonPolygon, Segment};
pub use padic::{count_roots_in_extension, find_roots_in_extension};
pub use splitting::{dedekind_is_maximal_at, is_inert, is_totally_ramified, splitting_type, SplittingType};
pub use wild::{enumerate_wild_quintic_q5, wild_class_of, wild_disc_exponent, LocalFieldClass};
