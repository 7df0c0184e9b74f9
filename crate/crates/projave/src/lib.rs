//! Projection-averaged Sobolev functionals and their convex-geometric
//! substrate: exact sharp constants, Haar sampling on SO(n) and Gr(n,i),
//! radial/spherical/Grassmannian quadrature, support functions, L^p
//! surface-area measures, projection bodies and zonoids, and seeded
//! verification of the associated sharp inequalities.
//!
//! Start with the runnable examples (`cargo run --release --example
//! constants`, `... --example sharpness`, and friends) or the `projave`
//! binary, which exposes every verification as a subcommand producing
//! machine-readable reports.

pub mod bodies;
pub mod constants;
pub mod error;
pub mod functionals;
pub mod harness;
pub mod linalg;
pub mod profiles;
pub mod quadrature;
pub mod sampling;

pub use constants::{classical_constant, q_coefficient, sharp_constant, unit_ball_volume, Dimension};
pub use error::{Error, Result};
pub use profiles::Profile;
pub use quadrature::{Estimate, QuadratureSpec};
