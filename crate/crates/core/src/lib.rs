//! Finite chain ring arithmetic and pinned-distance verification.
//!
//! A finite valuation (chain) ring R of order q^r is realized either as a
//! Galois ring GR(p^k, m) or as F_{p^m}[t]/(t^k). On top of that arithmetic
//! the crate computes distance sets and pinned distance sets of subsets of
//! R^2, reduces isosceles-triple counting to point/plane incidences in R^3,
//! and checks the resulting inequalities by brute force.

pub mod chain_ring;
pub mod error;
pub mod finite_field;
pub mod geometry;
pub mod incidence;
pub mod rng;
pub mod verify;

pub use chain_ring::{Coefficients, Family, Ring, RingElement, RingSpec};
pub use error::{Error, Result};
pub use finite_field::{FieldElement, FiniteField, InverseMethod};
pub use geometry::{PinHistogram, Point, PointSet};
pub use incidence::{IncidenceConfig, IncidenceCount, PlaneR3};
