//! Sharpness of the projection-averaged Sobolev inequality: the radial
//! power-law extremizers attain the constant for every subspace dimension,
//! a Gaussian shows a strict deficit, and the affine extremizer attains
//! equality at i = 1. Pass a seed as the first argument (default 42).
//!
//! Run with: cargo run --release --example sharpness [seed]

use projave::functionals::sobolev_ratio;
use projave::linalg::Matrix;
use projave::profiles::Profile;
use projave::quadrature::QuadratureSpec;

fn main() {
    let seed: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(42);
    let spec = QuadratureSpec::new(192, 100_000, 100_000, seed, 0.01).unwrap();

    println!("radial extremizers (equality for every i):");
    for p in [1.5, 2.0] {
        let f = Profile::aubin_talenti(3, p, 1.0, 1.0, vec![0.0; 3]).unwrap();
        for i in 1..=3 {
            let ratio = sobolev_ratio(&f, i, p, &spec).unwrap();
            println!(
                "  p={p:<4} i={i}: ratio = {:.9}  (deviation {:+.2e})",
                ratio.value,
                ratio.value - 1.0
            );
        }
    }

    println!("\ngaussian (strict deficit expected):");
    let g = Profile::gaussian(3, 1.0).unwrap();
    for i in 1..=3 {
        let ratio = sobolev_ratio(&g, i, 2.0, &spec).unwrap();
        println!(
            "  i={i}: ratio = {:.9}  (deficit {:+.3e})",
            ratio.value,
            ratio.value - 1.0
        );
    }

    println!("\naffine extremizer diag(2, 1, 1/2), equality at i = 1 only:");
    let f = Profile::affine_extremizer(3, 2.0, 1.0, Matrix::diagonal(&[2.0, 1.0, 0.5]), vec![0.0; 3])
        .unwrap();
    for i in 1..=3 {
        let ratio = sobolev_ratio(&f, i, 2.0, &spec).unwrap();
        println!(
            "  i={i}: ratio = {:.6} +- {:.1e}  (deviation {:+.3e})",
            ratio.value,
            ratio.std_error,
            ratio.value - 1.0
        );
    }
}
