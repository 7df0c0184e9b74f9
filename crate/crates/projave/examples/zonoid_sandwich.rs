//! The zonoid-norm sandwich: for an even mass-1 measure mu spanning E_i,
//! the generalized functional sits between E_n and E_1 on both the Sobolev
//! side (smooth profiles) and the BV side (characteristic functions).
//!
//! Run with: cargo run --release --example zonoid_sandwich [seed]

use projave::bodies::{ConvexBody, Polytope};
use projave::functionals::{e_i_bv, e_i_bv_zonoid, e_ip, e_ip_zonoid};
use projave::harness::random_mass_one_measure;
use projave::linalg::Matrix;
use projave::profiles::Profile;
use projave::quadrature::QuadratureSpec;

fn main() {
    let seed: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(42);
    let spec = QuadratureSpec::new(128, 50_000, 20_000, seed, 0.01).unwrap();
    let mu = random_mass_one_measure(3, 2, 8, seed).unwrap();
    println!(
        "random even measure: {} atoms on S^1 x {{0}}, total mass {:.12}",
        mu.len(),
        mu.total_mass()
    );

    println!("\nSobolev side (Gaussian profile; all coincide for radial f):");
    let g = Profile::gaussian(3, 1.0).unwrap();
    let e3 = e_ip(&g, 3, 2.0, &spec).unwrap();
    let em = e_ip_zonoid(&g, 2, 2.0, &mu, &spec).unwrap();
    let e1 = e_ip(&g, 1, 2.0, &spec).unwrap();
    println!("  E_3   = {:.6} +- {:.1e}", e3.value, e3.std_error);
    println!("  E^mu_2 = {:.6} +- {:.1e}", em.value, em.std_error);
    println!("  E_1   = {:.6} +- {:.1e}", e1.value, e1.std_error);

    println!("\nSobolev side (anisotropic profile; strict sandwich):");
    let f = Profile::affine_extremizer(3, 2.0, 1.0, Matrix::diagonal(&[2.0, 1.0, 0.5]), vec![0.0; 3])
        .unwrap();
    let e3 = e_ip(&f, 3, 2.0, &spec).unwrap();
    let em = e_ip_zonoid(&f, 2, 2.0, &mu, &spec).unwrap();
    let e1 = e_ip(&f, 1, 2.0, &spec).unwrap();
    println!("  E_3   = {:.6} +- {:.1e}", e3.value, e3.std_error);
    println!("  E^mu_2 = {:.6} +- {:.1e}", em.value, em.std_error);
    println!("  E_1   = {:.6} +- {:.1e}", e1.value, e1.std_error);

    println!("\nBV side (cube):");
    let cube = ConvexBody::Polytope(Polytope::cube(3));
    let b3 = e_i_bv(&cube, 3, &spec).unwrap();
    let bm = e_i_bv_zonoid(&cube, 2, &mu, &spec).unwrap();
    let b1 = e_i_bv(&cube, 1, &spec).unwrap();
    println!("  E_3   = {:.6} +- {:.1e}", b3.value, b3.std_error);
    println!("  E^mu_2 = {:.6} +- {:.1e}", bm.value, bm.std_error);
    println!("  E_1   = {:.6} +- {:.1e}", b1.value, b1.std_error);
}
