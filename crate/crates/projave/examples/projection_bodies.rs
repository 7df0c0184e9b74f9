//! Projection bodies and the Petty product: the cube's projection body in
//! closed form, the shadow-area (Cauchy) formula, the exact linear-image law
//! for ellipsoids, and Petty products against the sharp bound.
//!
//! Run with: cargo run --release --example projection_bodies [seed]

use std::f64::consts::PI;

use projave::bodies::{
    ellipsoid_projection_body, lp_projection_body, petty_bound, petty_product, polar_volume,
    Ellipsoid, Polytope,
};
use projave::harness::random_symmetric_polytope;
use projave::linalg::Matrix;
use projave::quadrature::QuadratureSpec;

fn main() {
    let seed: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(42);
    let spec = QuadratureSpec::new(96, 1_000_000, 1_000, seed, 0.01).unwrap();

    let cube = Polytope::cube(3);
    let pi1 = lp_projection_body(&cube, 1.0).unwrap();
    println!(
        "Pi_1 cube support at e_1 = {:.9}   (4/pi = {:.9})",
        pi1.support(&[1.0, 0.0, 0.0]),
        4.0 / PI
    );
    let sam = cube.surface_area_measure().unwrap();
    println!(
        "shadow area of cube along e_1 = {:.9}   (expected 4)",
        0.5 * sam.cosine_transform(&[1.0, 0.0, 0.0], 1.0)
    );

    let e = Ellipsoid::new(Matrix::diagonal(&[2.0, 1.0, 1.0])).unwrap();
    let pb = ellipsoid_projection_body(&e, 1.0).unwrap();
    println!(
        "Pi_1 (diag(2,1,1) ball) axis supports = ({:.6}, {:.6}, {:.6})   (expected 1, 2, 2)",
        pb.support(&[1.0, 0.0, 0.0]),
        pb.support(&[0.0, 1.0, 0.0]),
        pb.support(&[0.0, 0.0, 1.0])
    );

    println!("\npolar volume of the cube (polar is the cross-polytope, volume 4/3):");
    let pv = polar_volume(|u| cube.support(u), 3, &spec).unwrap();
    println!("  {:.6} +- {:.1e}", pv.value, pv.std_error);

    println!("\nPetty products against the sharp bound:");
    for p in [1.0, 2.0] {
        let bound = petty_bound(3, p).unwrap();
        println!("  p = {p}, bound omega_3^(3/p) = {bound:.6}");
        let ball = Polytope::ball_approx(3);
        for (name, body) in [("cube", &cube), ("ball-1280", &ball)] {
            let product = petty_product(body, p, &spec).unwrap();
            println!(
                "    {name:<10} product = {:.6} +- {:.1e}   (ratio to bound {:.4})",
                product.value,
                product.std_error,
                product.value / bound
            );
        }
        for k in 0..3 {
            let poly = random_symmetric_polytope(seed + k).unwrap();
            let product = petty_product(&poly, p, &spec).unwrap();
            println!(
                "    random #{k}  product = {:.6} +- {:.1e}   (ratio to bound {:.4})",
                product.value,
                product.std_error,
                product.value / bound
            );
        }
    }
}
