//! Numerical toolkit for 3-Poncelet pairs of a circle and a central conic.
//!
//! The crate constructs triangle families inscribed in a circle and
//! circumscribed about a confocal-family conic, decides the pair condition,
//! checks the classical invariants of such families (orthocenter loci,
//! squared-side sums, nine-point coincidences), builds the circumcenter-
//! centered inscribed ellipse of an oblique triangle, and evaluates closed-
//! form area formulas against direct construction.

pub mod area;
pub mod conic;
pub mod error;
pub mod invariants;
pub mod marden;
pub mod poncelet;
pub mod tangent;

pub use conic::{CentralConic, Circle, ConicKind, ConicMatrix, Line, Point, Tolerances};
pub use error::{Error, Result, SeedRejection};
