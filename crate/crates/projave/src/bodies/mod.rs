//! Convex-body calculus: sphere measures, polytopes, support functions,
//! L^p surface-area measures, projection bodies, zonoids and polar volumes.

mod body;
mod measure;
mod ops;
mod polytope;

pub use body::{disc_zonoid, ConvexBody, Ellipsoid, LpZonoid};
pub use measure::DiscreteSphereMeasure;
pub use ops::{
    ellipsoid_projection_body, rotation_average_residual, lp_projection_body, petty_bound, petty_product,
    polar_volume, projection_body_scale, grassmann_comparison_sides,
};
pub use polytope::{Facet, Polytope};
