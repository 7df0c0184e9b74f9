//! Tabulate the exact constants: unit-ball volumes omega_s, the projection
//! coefficients q_{i,p}, and the sharp constants c_{n,p} / a_{n,p}, together
//! with the p = 1 consistency identities.
//!
//! Run with: cargo run --release --example constants

use projave::constants::{classical_constant, q_coefficient, sharp_constant, unit_ball_volume};

fn main() {
    println!("{:>3} {:>14}", "n", "omega_n");
    for n in 1..=10u32 {
        println!("{n:>3} {:>14.10}", unit_ball_volume(f64::from(n)).unwrap());
    }

    println!();
    println!(
        "{:>3} {:>5} {:>14} {:>14} {:>14}",
        "n", "p", "q(n,p)", "c(n,p)", "a(n,p)"
    );
    for n in 3..=8u32 {
        for p in [1.0, 1.5, 2.0, 2.5] {
            let q = q_coefficient(n, p).unwrap();
            let c = sharp_constant(n, p).unwrap();
            let a = classical_constant(n, p).unwrap();
            println!("{n:>3} {p:>5} {q:>14.10} {c:>14.10} {a:>14.10}");
        }
    }

    println!();
    println!("p = 1 consistency (isoperimetric identities):");
    for n in 3..=8u32 {
        let n_f = f64::from(n);
        let omega_n = unit_ball_volume(n_f).unwrap();
        let omega_nm1 = unit_ball_volume(n_f - 1.0).unwrap();
        let c = sharp_constant(n, 1.0).unwrap();
        let c_ref = 2.0 * omega_nm1 / omega_n.powf(1.0 - 1.0 / n_f);
        let a = classical_constant(n, 1.0).unwrap();
        let a_ref = n_f * omega_n.powf(1.0 / n_f);
        println!(
            "  n={n}: |c - 2 omega_(n-1)/omega_n^(1-1/n)| = {:.2e}, |a - n omega_n^(1/n)| = {:.2e}",
            (c - c_ref).abs(),
            (a - a_ref).abs()
        );
    }
}
