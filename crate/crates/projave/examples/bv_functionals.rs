//! Bounded-variation functionals of characteristic functions: the ball
//! attains the sharp bound (value 2 pi in R^3) for every subspace
//! dimension, the cube sits strictly above it, and the i = 1 functional is
//! invariant under volume-preserving linear images.
//!
//! Run with: cargo run --release --example bv_functionals [seed]

use std::f64::consts::PI;

use projave::bodies::{ConvexBody, Ellipsoid, Polytope};
use projave::functionals::{bv_sharp_bound, e_i_bv};
use projave::linalg::Matrix;
use projave::quadrature::QuadratureSpec;

fn main() {
    let seed: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(42);
    let spec = QuadratureSpec::new(96, 1_000, 50_000, seed, 0.01).unwrap();

    let ball = ConvexBody::Ball(1.0);
    let cube = ConvexBody::Polytope(Polytope::cube(3));
    let simplex = ConvexBody::Polytope(Polytope::regular_simplex3());

    for (name, body) in [("ball", &ball), ("cube", &cube), ("simplex", &simplex)] {
        let bound = bv_sharp_bound(body, 3).unwrap();
        println!("{name}: sharp bound c_(3,1) |K|^(2/3) = {bound:.6}");
        for i in 1..=3 {
            let e = e_i_bv(body, i, &spec).unwrap();
            println!(
                "  E_{i} = {:.6} +- {:.1e}   (ratio to bound {:.4})",
                e.value, e.std_error, e.value / bound
            );
        }
    }
    println!("(exact ball value at every i: 2 pi = {:.6})", 2.0 * PI);

    println!("\ni = 1 invariance under det-1 linear images of the ball:");
    let images = [
        Matrix::diagonal(&[1.5, 1.0, 1.0 / 1.5]),
        Matrix::from_rows(&[
            vec![1.0, 0.4, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ])
        .unwrap(),
    ];
    let reference = e_i_bv(&ball, 1, &spec).unwrap();
    println!("  ball:   E_1 = {:.6} +- {:.1e}", reference.value, reference.std_error);
    for (k, m) in images.iter().enumerate() {
        let image = ConvexBody::Ellipsoid(Ellipsoid::new(m.clone()).unwrap());
        let e = e_i_bv(&image, 1, &spec).unwrap();
        println!(
            "  image {k}: E_1 = {:.6} +- {:.1e}  (difference {:+.2e})",
            e.value,
            e.std_error,
            e.value - reference.value
        );
    }
}
