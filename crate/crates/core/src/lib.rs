//! Genus numbers of quintic number fields.
//!
//! The crate is organised bottom-up:
//!
//! * [`polycore`]: exact integer and polynomial arithmetic (discriminants,
//!   factorisation over prime fields, Hensel lifting, Sturm chains).
//! * [`localfields`]: splitting types, Newton polygons, Eisenstein
//!   generators, root finding in totally ramified extensions, the
//!   classification of quintic étale algebras over `Q_p` and their masses.
//! * [`genus`]: the genus number with a verifiable certificate.
//! * [`densities`]: certified Euler products for the density constants.
//! * [`corpus`]: ingestion of field tables and the batch pipeline.

pub mod corpus;
pub mod densities;
pub mod error;
pub mod genus;
pub mod localfields;
pub mod polycore;

pub use error::{Error, Result};
pub use polycore::IntPoly;
