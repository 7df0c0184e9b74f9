//! Acceptance suite: one test per criterion, each printing a pass line with
//! its runtime (visible under `cargo test --test acceptance -- --nocapture`).
//! Every tolerance is pinned here; nothing is deferred to calibration.

use std::f64::consts::PI;
use std::time::Instant;

use projave::bodies::{
    rotation_average_residual, petty_bound, petty_product, grassmann_comparison_sides, ConvexBody, Ellipsoid, Polytope,
};
use projave::constants::{classical_constant, sharp_constant, unit_ball_volume};
use projave::functionals::{
    bv_sharp_bound, chain_report, e_i_bv, e_i_bv_zonoid, e_ip, e_ip_zonoid, sobolev_ratio,
};
use projave::harness::{random_mass_one_measure, random_symmetric_polytope, rerun_from_header, run,
    BodySpec, ProfileSpec, RunConfig,
};
use projave::linalg::Matrix;
use projave::profiles::Profile;
use projave::quadrature::QuadratureSpec;
use projave::sampling::{sample_unit_vector, seeded_rng};

fn pass(num: u32, name: &str, start: Instant, budget_s: f64) {
    let elapsed = start.elapsed().as_secs_f64();
    println!("criterion {num:>2} {name:<34} PASS ({elapsed:.2}s)");
    assert!(
        elapsed < budget_s,
        "criterion {num} exceeded its runtime budget: {elapsed:.1}s >= {budget_s}s"
    );
}

fn spec(seed: u64, radial: usize, sphere: usize, grassmann: usize) -> QuadratureSpec {
    QuadratureSpec::new(radial, sphere, grassmann, seed, 0.01).unwrap()
}

#[test]
fn criterion_01_constants() {
    let start = Instant::now();
    for n in 3..=8u32 {
        let n_f = f64::from(n);
        let omega_n = unit_ball_volume(n_f).unwrap();
        let omega_nm1 = unit_ball_volume(n_f - 1.0).unwrap();

        let c1 = sharp_constant(n, 1.0).unwrap();
        let c1_ref = 2.0 * omega_nm1 / omega_n.powf(1.0 - 1.0 / n_f);
        assert!(
            (c1 - c1_ref).abs() <= 1e-12 * c1_ref,
            "c({n},1) = {c1} vs {c1_ref}"
        );

        let a1 = classical_constant(n, 1.0).unwrap();
        let a1_ref = n_f * omega_n.powf(1.0 / n_f);
        assert!(
            (a1 - a1_ref).abs() <= 1e-12 * a1_ref,
            "a({n},1) = {a1} vs {a1_ref}"
        );

        for &p in &[1.0, 1.5, 2.0, 2.5] {
            assert!(p < n_f);
            sharp_constant(n, p).unwrap();
            classical_constant(n, p).unwrap();
        }
    }
    let c32 = sharp_constant(3, 2.0).unwrap();
    let c32_ref = (PI * PI / 4.0).powf(1.0 / 3.0);
    assert!((c32 - c32_ref).abs() <= 1e-12 * c32_ref, "c(3,2) = {c32}");
    let a32 = classical_constant(3, 2.0).unwrap();
    let a32_ref = 3f64.sqrt() * (PI / 2.0).powf(2.0 / 3.0);
    assert!((a32 - a32_ref).abs() <= 1e-10 * a32_ref, "a(3,2) = {a32}");
    pass(1, "exact constants", start, 1.0);
}

#[test]
fn criterion_02_sharpness_radial_extremizers() {
    let start = Instant::now();
    let s = spec(202, 192, 10_000, 1_000);
    for &p in &[1.5, 2.0] {
        let profile = Profile::aubin_talenti(3, p, 1.0, 1.0, vec![0.0; 3]).unwrap();
        for i in 1..=3 {
            let ratio = sobolev_ratio(&profile, i, p, &s).unwrap();
            assert!(
                (ratio.value - 1.0).abs() <= 1e-3,
                "p={p} i={i}: ratio = {} (dev {:.2e})",
                ratio.value,
                ratio.value - 1.0
            );
        }
    }
    pass(2, "radial extremizer sharpness", start, 60.0);
}

#[test]
fn criterion_03_affine_equality_i1() {
    let start = Instant::now();
    let shape = Matrix::diagonal(&[2.0, 1.0, 0.5]);
    let profile = Profile::affine_extremizer(3, 2.0, 1.0, shape, vec![0.0; 3]).unwrap();
    let s = spec(303, 192, 100_000, 100_000);
    let ratio = sobolev_ratio(&profile, 1, 2.0, &s).unwrap();
    assert!(
        ratio.std_error <= 5e-3,
        "standard error too large: {}",
        ratio.std_error
    );
    assert!(
        (ratio.value - 1.0).abs() <= 3.0 * ratio.std_error,
        "ratio = {} +- {}",
        ratio.value,
        ratio.std_error
    );
    pass(3, "affine equality at i = 1", start, 600.0);
}

#[test]
fn criterion_04_chain_monotone_strict() {
    let start = Instant::now();
    let shape = Matrix::diagonal(&[2.0, 1.0, 0.5]);
    let profile = Profile::affine_extremizer(3, 2.0, 1.0, shape, vec![0.0; 3]).unwrap();
    let s = spec(404, 192, 100_000, 100_000);
    let report = chain_report(&profile, 2.0, &s).unwrap();
    let e1 = report.values[&1];
    let e2 = report.values[&2];
    let e3 = report.values[&3];
    for g in &report.gaps {
        assert!(
            g.gap.value >= -3.0 * g.gap.std_error,
            "gap E_{} - E_{} = {} +- {}",
            g.upper_j,
            g.lower_i,
            g.gap.value,
            g.gap.std_error
        );
    }
    let total = report
        .gaps
        .iter()
        .find(|g| g.lower_i == 1 && g.upper_j == 3)
        .unwrap();
    assert!(
        total.gap.value > 3.0 * total.gap.std_error,
        "strict decrease failed: gap {} +- {}",
        total.gap.value,
        total.gap.std_error
    );
    println!(
        "  chain: E_3 = {:.6}, E_2 = {:.6}, E_1 = {:.6}",
        e3.value, e2.value, e1.value
    );
    pass(4, "monotone chain with strict gap", start, 600.0);
}

#[test]
fn criterion_05_rotation_average_residuals() {
    let start = Instant::now();
    let s = spec(505, 64, 1_000, 1_000_000);
    let mut rng = seeded_rng(5050);
    for &(i, j) in &[(1usize, 2usize), (1, 3), (2, 3)] {
        for &p in &[1.0, 2.0] {
            for k in 0..5 {
                let x = sample_unit_vector(&mut rng, 3);
                let res = rotation_average_residual(&x, i, j, p, &s).unwrap();
                assert!(
                    res.value.abs() <= 3.0 * res.std_error,
                    "(i,j,p)=({i},{j},{p}) x#{k}: residual {} +- {}",
                    res.value,
                    res.std_error
                );
            }
        }
    }
    // canonical case against the exact circle integral 1/2
    let res = rotation_average_residual(&[1.0, 0.0, 0.0], 1, 2, 2.0, &s).unwrap();
    assert!(
        res.value.abs() <= 3.0 * res.std_error,
        "exact case: residual {} +- {}",
        res.value,
        res.std_error
    );
    pass(5, "rotational-average residuals", start, 120.0);
}

#[test]
fn criterion_06_petty_products() {
    let start = Instant::now();
    let s = spec(606, 64, 1_000_000, 1_000);

    let cube = Polytope::cube(3);
    let cube_product = petty_product(&cube, 1.0, &s).unwrap();
    let cube_ref = 4.0 * PI.powi(3) / 3.0;
    assert!(
        (cube_product.value - cube_ref).abs() <= 0.01 * cube_ref,
        "cube product {} vs {cube_ref}",
        cube_product.value
    );

    let ball = Polytope::ball_approx(3);
    assert_eq!(ball.facets().len(), 1280);
    let ball_product = petty_product(&ball, 1.0, &s).unwrap();
    let bound3 = petty_bound(3, 1.0).unwrap();
    assert!(
        (ball_product.value - bound3).abs() <= 0.02 * bound3,
        "ball product {} vs bound {bound3}",
        ball_product.value
    );

    for &p in &[1.0, 2.0] {
        let bound = petty_bound(3, p).unwrap();
        for k in 0..20u64 {
            let polytope = random_symmetric_polytope(60_600 + k).unwrap();
            let product = petty_product(&polytope, p, &s).unwrap();
            assert!(
                product.value <= bound * 1.01,
                "random polytope {k} at p={p}: product {} exceeds {}",
                product.value,
                bound * 1.01
            );
        }
    }
    pass(6, "Petty projection products", start, 300.0);
}

#[test]
fn criterion_07_grassmann_comparison() {
    let start = Instant::now();
    let s = spec(707, 64, 1_000, 20_000);

    let cube = Polytope::cube(3);
    let (left, right) = grassmann_comparison_sides(&cube, 1, 3, 1.0, &s).unwrap();
    let combined = (left.std_error.powi(2) + right.std_error.powi(2)).sqrt();
    assert!(
        right.value - left.value > 3.0 * combined,
        "cube: left {} right {} combined {combined}",
        left.value,
        right.value
    );

    let ball = Polytope::ball_approx(3);
    let (left, right) = grassmann_comparison_sides(&ball, 1, 3, 1.0, &s).unwrap();
    let combined = (left.std_error.powi(2) + right.std_error.powi(2)).sqrt();
    assert!(
        (left.value - right.value).abs() <= 3.0 * combined,
        "ball: left {} right {} combined {combined}",
        left.value,
        right.value
    );
    pass(7, "projected-integral comparison", start, 300.0);
}

#[test]
fn criterion_08_bv_functionals() {
    let start = Instant::now();
    let s = spec(808, 64, 1_000, 20_000);

    // ball: equality at 2 pi for every i (exact at i = 3 up to discretization)
    let ball = ConvexBody::Ball(1.0);
    let two_pi = 2.0 * PI;
    for i in 1..=3 {
        let e = e_i_bv(&ball, i, &s).unwrap();
        assert!(
            (e.value - two_pi).abs() <= 0.01 * two_pi,
            "ball i={i}: {} vs 2pi",
            e.value
        );
    }

    // cube: strictly above the sharp bound
    let cube = ConvexBody::Polytope(Polytope::cube(3));
    let bound = bv_sharp_bound(&cube, 3).unwrap();
    for i in 1..=3 {
        let e = e_i_bv(&cube, i, &s).unwrap();
        assert!(
            e.value - bound > 3.0 * e.std_error,
            "cube i={i}: {} vs bound {bound}",
            e.value
        );
    }

    // i = 1 invariance under a volume-preserving linear image of the ball
    let s_inv = spec(808, 64, 1_000, 100_000);
    let image = ConvexBody::Ellipsoid(
        Ellipsoid::new(Matrix::diagonal(&[1.5, 1.0, 1.0 / 1.5])).unwrap(),
    );
    let e_ball = e_i_bv(&ball, 1, &s_inv).unwrap();
    let e_image = e_i_bv(&image, 1, &s_inv).unwrap();
    let combined = (e_ball.std_error.powi(2) + e_image.std_error.powi(2))
        .sqrt()
        .max(1e-4 * e_ball.value);
    assert!(
        (e_ball.value - e_image.value).abs() <= 3.0 * combined,
        "invariance: ball {} image {} combined {combined}",
        e_ball.value,
        e_image.value
    );
    pass(8, "BV functionals", start, 300.0);
}

#[test]
fn criterion_09_zonoid_sandwich() {
    let start = Instant::now();
    let mu = random_mass_one_measure(3, 2, 8, 909).unwrap();
    assert!((mu.total_mass() - 1.0).abs() < 1e-12);

    // Sobolev side on the Gaussian profile
    let s = spec(909, 128, 50_000, 20_000);
    let f = Profile::gaussian(3, 1.0).unwrap();
    let e_hi = e_ip(&f, 3, 2.0, &s).unwrap();
    let e_mid = e_ip_zonoid(&f, 2, 2.0, &mu, &s).unwrap();
    let e_lo = e_ip(&f, 1, 2.0, &s).unwrap();
    let se_hi = (e_hi.std_error.powi(2) + e_mid.std_error.powi(2)).sqrt();
    let se_lo = (e_lo.std_error.powi(2) + e_mid.std_error.powi(2)).sqrt();
    assert!(
        e_hi.value - e_mid.value >= -3.0 * se_hi,
        "E_n {} vs E_mu {} (se {se_hi})",
        e_hi.value,
        e_mid.value
    );
    assert!(
        e_mid.value - e_lo.value >= -3.0 * se_lo,
        "E_mu {} vs E_1 {} (se {se_lo})",
        e_mid.value,
        e_lo.value
    );

    // BV side on the cube
    let cube = ConvexBody::Polytope(Polytope::cube(3));
    let b_hi = e_i_bv(&cube, 3, &s).unwrap();
    let b_mid = e_i_bv_zonoid(&cube, 2, &mu, &s).unwrap();
    let b_lo = e_i_bv(&cube, 1, &s).unwrap();
    let se_hi = (b_hi.std_error.powi(2) + b_mid.std_error.powi(2)).sqrt();
    let se_lo = (b_lo.std_error.powi(2) + b_mid.std_error.powi(2)).sqrt();
    assert!(
        b_hi.value - b_mid.value >= -3.0 * se_hi,
        "BV: E_n {} vs E_mu {}",
        b_hi.value,
        b_mid.value
    );
    assert!(
        b_mid.value - b_lo.value >= -3.0 * se_lo,
        "BV: E_mu {} vs E_1 {}",
        b_mid.value,
        b_lo.value
    );
    pass(9, "zonoid-norm sandwich", start, 600.0);
}

#[test]
fn criterion_10_reproducibility() {
    let start = Instant::now();
    let configs = [
        RunConfig::Chain {
            profile: ProfileSpec::AffineExtremizer {
                n: 3,
                p: 2.0,
                a: 1.0,
                matrix: vec![
                    vec![2.0, 0.0, 0.0],
                    vec![0.0, 1.0, 0.0],
                    vec![0.0, 0.0, 0.5],
                ],
                x0: None,
                amplitude: 1.0,
            },
            p: 2.0,
            quadrature: QuadratureSpec::new(64, 4_000, 2_000, 1010, 0.01).unwrap(),
        },
        RunConfig::Petty {
            bodies: vec![BodySpec::Cube { n: 3 }, BodySpec::Ball { subdivisions: 2 }],
            p_list: vec![1.0, 2.0],
            rel_tolerance: 0.01,
            random_polytopes: 3,
            quadrature: QuadratureSpec::new(64, 20_000, 1_000, 1011, 0.01).unwrap(),
        },
    ];
    for config in &configs {
        let report = run(config).unwrap();
        let again = rerun_from_header(&report.header).unwrap();
        assert_eq!(
            report.rows_csv(),
            again.rows_csv(),
            "rows differ for {}",
            config.command_name()
        );
    }
    pass(10, "bitwise report reproducibility", start, 120.0);
}
