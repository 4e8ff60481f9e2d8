//! Circular tractrices and circular pseudospheres in R³.
//!
//! A circular tractrix is the track of the free end of a unit segment whose
//! other end runs along a circle of radius `R` (the directrix), written here in
//! closed form for `R > 1`, `R = 1` and `0 < R < 1`. Sweeping the family
//! parameter gives the circular pseudosphere. The crate evaluates both exactly
//! (forward-mode derivatives), computes their Frenet data, metrics and
//! curvatures, integrates lengths, areas and flux volumes adaptively, and
//! cross-checks the closed forms against a rear-track ODE integrator.

pub mod checks;
pub mod error;
pub mod frenet;
pub mod jet;
pub mod measures;
pub mod mesh;
pub mod params;
pub mod quadrature;
pub mod rear_track;
pub mod surface;
pub mod tractrix;

pub use error::{Error, Result};
pub use params::{make_params, Branch, Regime, TractrixParams};
pub use tractrix::{CurveSample, Vec3};
