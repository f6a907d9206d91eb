//! Tools for studying valleys on continuous fitness landscapes.
//!
//! Two complementary instruments:
//!
//! 1. A per-point valley test: the ratio of lower-fitness to higher-fitness
//!    area inside a δ-hypercube around a point, compared against the sphere
//!    benchmark at the same point ([`ratio`]). A valley point is one where
//!    the tested landscape's ratio is strictly smaller. Valley width (α)
//!    and narrowness (β) summarize the test over a set of points.
//! 2. A PCA projection that estimates a valley's direction and location
//!    from a truncation-selected sample: keep the best M of N uniform
//!    points, take the first principal component of the selected set, and
//!    reconstruct the selected points on that line ([`pca`]).
//!
//! Landscapes are built analytically ([`landscape`]): the elliptic family
//! `sum c_i x_i^2` (the sphere is all-ones), sign flips for ridge analysis,
//! and homeomorphism-transformed objectives such as the Rosenbrock function
//! generated from an elliptic base. Everything random flows through
//! splittable seeded streams ([`sampling`]), making runs bit-reproducible.
//!
//! All numeric code is generic over the scalar type via [`scalar::Real`]
//! (`f32` or `f64`); the `*64` aliases below fix f64, which the CLI and the
//! file formats use.

pub mod error;
pub mod landscape;
pub mod pca;
pub mod ratio;
pub mod registry;
pub mod render;
pub mod sampling;
pub mod scalar;
mod textio;

pub use error::{Error, Result};
pub use scalar::{median, real, Real};

pub use landscape::{Domain, Landscape, Point};

/// f64 aliases for the common concrete instantiation.
pub type Point64 = landscape::Point<f64>;
pub type Domain64 = landscape::Domain<f64>;
pub type Landscape64 = landscape::Landscape<f64>;
pub type Grid64 = landscape::Grid<f64>;
pub type Homeomorphism64 = landscape::Homeomorphism<f64>;
pub type EllipticParams64 = landscape::EllipticParams<f64>;
pub type RatioEstimate64 = ratio::RatioEstimate<f64>;
pub type ValleyTestResult64 = ratio::ValleyTestResult<f64>;
pub type ValleyEstimate64 = pca::ValleyEstimate<f64>;
pub type RunConfig64 = sampling::RunConfig<f64>;
