//! Density constants as certified Euler products.

pub mod certified;
pub mod euler;
pub mod local;
pub mod screen;
pub mod sieve;

pub use certified::{format_significant, round_decimal, CertifiedValue};
pub use euler::{
    average_genus_constant, average_genus_constant_at, bhargava_constant, bhargava_constant_at, bhargava_prefactor,
    genus_one_density, genus_one_density_at, genus_one_slope, local_denominator, lower_bound_5k, lower_bound_5k_at,
};
pub use local::{m, m_star};
pub use screen::{screen_density, screen_local_factors};
pub use sieve::{sieve_prediction, truncated_sieve_density, SievePrediction};
