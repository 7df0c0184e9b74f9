//! Calibration of the reported standard errors: re-run the anisotropic
//! i = 1 sharpness ratio over many seeds and compare the empirical spread
//! of the values against the mean reported standard error.
//!
//! Run with: cargo run --release --example error_calibration [n_seeds]

use projave::functionals::sobolev_ratio;
use projave::linalg::Matrix;
use projave::profiles::Profile;
use projave::quadrature::QuadratureSpec;

fn main() {
    let n_seeds: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(20);
    let profile = Profile::affine_extremizer(
        3,
        2.0,
        1.0,
        Matrix::diagonal(&[2.0, 1.0, 0.5]),
        vec![0.0; 3],
    )
    .unwrap();

    let mut values = Vec::new();
    let mut reported = Vec::new();
    for seed in 0..n_seeds {
        let spec = QuadratureSpec::new(128, 100_000, 100_000, seed, 0.01).unwrap();
        let ratio = sobolev_ratio(&profile, 1, 2.0, &spec).unwrap();
        values.push(ratio.value);
        reported.push(ratio.std_error);
        println!(
            "seed {seed:>3}: ratio = {:.6}  reported se = {:.2e}",
            ratio.value, ratio.std_error
        );
    }
    let m = values.len() as f64;
    let mean: f64 = values.iter().sum::<f64>() / m;
    let var: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (m - 1.0);
    let mean_se: f64 = reported.iter().sum::<f64>() / m;
    println!("\nempirical sd over seeds = {:.3e}", var.sqrt());
    println!("mean reported se        = {:.3e}", mean_se);
    println!("calibration ratio       = {:.2}", var.sqrt() / mean_se);
}
