//! The monotone chain E_{n,p} >= ... >= E_{1,p} on an anisotropic profile,
//! evaluated with common random numbers so the gaps carry low noise.
//!
//! Run with: cargo run --release --example affine_chain [seed]

use projave::functionals::chain_report;
use projave::linalg::Matrix;
use projave::profiles::Profile;
use projave::quadrature::QuadratureSpec;

fn main() {
    let seed: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(42);
    let spec = QuadratureSpec::new(128, 100_000, 100_000, seed, 0.01).unwrap();

    for diag in [[4.0, 1.0, 0.5], [2.0, 1.0, 0.5], [1.0, 1.0, 1.0]] {
        let profile =
            Profile::affine_extremizer(3, 2.0, 1.0, Matrix::diagonal(&diag), vec![0.0; 3])
                .unwrap();
        println!("shape diag({}, {}, {}):", diag[0], diag[1], diag[2]);
        let report = chain_report(&profile, 2.0, &spec).unwrap();
        for (i, est) in &report.values {
            println!(
                "  E_{i} = {:.6} +- {:.1e}   ratio = {:.6}",
                est.value, est.std_error, report.ratios[i].value
            );
        }
        for g in report.gaps.iter().filter(|g| g.upper_j == g.lower_i + 1) {
            println!(
                "  gap E_{} - E_{} = {:+.6} +- {:.1e}",
                g.upper_j, g.lower_i, g.gap.value, g.gap.std_error
            );
        }
        println!();
    }
}
