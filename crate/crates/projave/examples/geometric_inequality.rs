//! The Grassmannian comparison behind the monotone chain, evaluated on
//! polytopes with common random numbers, and the rotational-average
//! residuals of projected lengths.
//!
//! Run with: cargo run --release --example geometric_inequality [seed]

use projave::bodies::{rotation_average_residual, grassmann_comparison_sides, Polytope};
use projave::quadrature::QuadratureSpec;
use projave::sampling::{sample_unit_vector, seeded_rng};

fn main() {
    let seed: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(42);
    let spec = QuadratureSpec::new(96, 1_000, 50_000, seed, 0.01).unwrap();

    println!("projected surface-integral comparison (left <= right expected):");
    let cube = Polytope::cube(3);
    let ball = Polytope::ball_approx(3);
    for (name, body) in [("cube", &cube), ("ball-1280", &ball)] {
        for (i, j) in [(1usize, 3usize), (1, 2), (2, 3)] {
            for p in [1.0, 2.0] {
                let (left, right) = grassmann_comparison_sides(body, i, j, p, &spec).unwrap();
                println!(
                    "  {name:<10} i={i} j={j} p={p}: left = {:.6e}  right = {:.6e}  (right-left = {:+.2e})",
                    left.value,
                    right.value,
                    right.value - left.value
                );
            }
        }
    }

    println!("\nrotational-average residuals (0 within noise expected):");
    let mut rng = seeded_rng(seed);
    let spec = QuadratureSpec::new(96, 1_000, 500_000, seed, 0.01).unwrap();
    for (i, j) in [(1usize, 2usize), (1, 3), (2, 3)] {
        for p in [1.0, 2.0] {
            let x = sample_unit_vector(&mut rng, 3);
            let res = rotation_average_residual(&x, i, j, p, &spec).unwrap();
            println!(
                "  i={i} j={j} p={p}: residual = {:+.3e} +- {:.1e}",
                res.value, res.std_error
            );
        }
    }
    let exact = rotation_average_residual(&[1.0, 0.0, 0.0], 1, 2, 2.0, &spec).unwrap();
    println!(
        "  canonical i=1 j=2 p=2 x=e1 (exact value 1/2): residual = {:+.3e} +- {:.1e}",
        exact.value, exact.std_error
    );
}
