//! Genus numbers of quintic fields from a defining polynomial.

pub mod certificate;
pub mod cyclic;
pub mod factor;

pub use certificate::{
    genus_number, genus_number_with_bound, norm_euclidean_screen, ramification_product, GenusCertificate,
    RamificationProduct,
};
pub use cyclic::{classify_cyclic, CyclicityVerdict, NonCyclicWitness, DEFAULT_SAMPLE_BOUND};
pub use factor::{factor_integer, Factorization};
