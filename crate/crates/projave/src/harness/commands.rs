//! Command drivers: each CLI subcommand maps a run configuration onto a
//! report with one row per checked case. Per-row failures never abort the
//! remaining rows.

use std::time::Instant;

use rand::Rng;

use crate::bodies::{
    rotation_average_residual, petty_bound, petty_product, grassmann_comparison_sides, ConvexBody,
    DiscreteSphereMeasure, Polytope,
};
use crate::constants::{classical_constant, q_coefficient, sharp_constant, unit_ball_volume};
use crate::error::{Error, Result};
use crate::functionals::{
    bv_sharp_bound, chain_report, e_i_bv, e_i_bv_zonoid, sobolev_ratio,
};
use crate::harness::config::{BodySpec, ResidualSweepConfig, ProfileSpec, RunConfig};
use crate::harness::report::{Report, ReportHeader, ReportRow, RowBuilder};
use crate::linalg::Matrix;
use crate::profiles::Profile;
use crate::quadrature::QuadratureSpec;
use crate::sampling::{derive_seed, sample_unit_vector, seeded_rng};

/// Run a configuration and assemble the report.
pub fn run(config: &RunConfig) -> Result<Report> {
    let start = Instant::now();
    let rows = match config {
        RunConfig::Constants {
            n_min,
            n_max,
            p_list,
            quadrature,
        } => constants_rows(*n_min, *n_max, p_list, quadrature),
        RunConfig::VerifySobolev {
            profiles,
            i_list,
            equality_tolerance,
            quadrature,
        } => verify_sobolev_rows(profiles, i_list, *equality_tolerance, quadrature),
        RunConfig::Chain {
            profile,
            p,
            quadrature,
        } => chain_rows(profile, *p, quadrature),
        RunConfig::Petty {
            bodies,
            p_list,
            rel_tolerance,
            random_polytopes,
            quadrature,
        } => petty_rows(bodies, p_list, *rel_tolerance, *random_polytopes, quadrature),
        RunConfig::GeomIneq {
            bodies,
            pairs,
            p_list,
            residual_sweep,
            quadrature,
        } => geom_ineq_rows(bodies, pairs, p_list, residual_sweep.as_ref(), quadrature),
        RunConfig::Bv {
            bodies,
            i_list,
            zonoid_atom_pairs,
            invariance_matrix,
            quadrature,
        } => bv_rows(
            bodies,
            i_list,
            *zonoid_atom_pairs,
            invariance_matrix.as_deref(),
            quadrature,
        ),
    };
    let header = ReportHeader {
        library_version: env!("CARGO_PKG_VERSION").to_string(),
        command: config.command_name().to_string(),
        seed: config.quadrature().seed,
        quadrature: *config.quadrature(),
        config: config.to_json()?,
        wall_clock_ms: start.elapsed().as_millis(),
    };
    Ok(Report { header, rows })
}

/// Re-run the configuration embedded in a report header; the fresh rows
/// must match the original bitwise.
pub fn rerun_from_header(header: &ReportHeader) -> Result<Report> {
    let config: RunConfig = serde_json::from_str(&header.config)?;
    run(&config)
}

fn push(rows: &mut Vec<ReportRow>, builder: RowBuilder) {
    let index = rows.len();
    rows.push(builder.build(index));
}

// ---------------------------------------------------------------------------
// constants
// ---------------------------------------------------------------------------

fn constants_rows(
    n_min: u32,
    n_max: u32,
    p_list: &[f64],
    _quadrature: &QuadratureSpec,
) -> Vec<ReportRow> {
    let mut rows = Vec::new();
    for n in n_min..=n_max {
        let n_f = f64::from(n);
        match unit_ball_volume(n_f) {
            Ok(omega) => push(
                &mut rows,
                RowBuilder::new(format!("omega n={n}")).value(omega).margin(0.0),
            ),
            Err(e) => push(&mut rows, RowBuilder::new(format!("omega n={n}")).error(&e)),
        }

        // p = 1 consistency: c against its closed form, a against n omega^{1/n}
        let c1_closed = (|| -> Result<f64> {
            Ok(2.0 * unit_ball_volume(n_f - 1.0)? / unit_ball_volume(n_f)?.powf(1.0 - 1.0 / n_f))
        })();
        match (sharp_constant(n, 1.0), c1_closed) {
            (Ok(c), Ok(reference)) => push(
                &mut rows,
                RowBuilder::new(format!("c-identity n={n} p=1"))
                    .value(c)
                    .reference(reference)
                    .margin(1e-12 - (c - reference).abs() / reference),
            ),
            (Err(e), _) | (_, Err(e)) => push(
                &mut rows,
                RowBuilder::new(format!("c-identity n={n} p=1")).error(&e),
            ),
        }
        match (classical_constant(n, 1.0), unit_ball_volume(n_f)) {
            (Ok(a), Ok(omega)) => {
                let reference = n_f * omega.powf(1.0 / n_f);
                push(
                    &mut rows,
                    RowBuilder::new(format!("a-identity n={n} p=1"))
                        .value(a)
                        .reference(reference)
                        .margin(1e-12 - (a - reference).abs() / reference),
                );
            }
            (Err(e), _) | (_, Err(e)) => push(
                &mut rows,
                RowBuilder::new(format!("a-identity n={n} p=1")).error(&e),
            ),
        }

        for &p in p_list {
            // q_{1,p} = 1 exactly
            match q_coefficient(1, p) {
                Ok(q1) => push(
                    &mut rows,
                    RowBuilder::new(format!("q-one i=1 p={p}"))
                        .value(q1)
                        .reference(1.0)
                        .margin(1e-14 - (q1 - 1.0).abs()),
                ),
                Err(e) => push(&mut rows, RowBuilder::new(format!("q-one i=1 p={p}")).error(&e)),
            }
            let case = format!("constants n={n} p={p}");
            match (sharp_constant(n, p), classical_constant(n, p), q_coefficient(n, p)) {
                (Ok(c), Ok(a), Ok(q)) => {
                    push(
                        &mut rows,
                        RowBuilder::new(format!("{case} c")).value(c).margin(0.0),
                    );
                    push(
                        &mut rows,
                        RowBuilder::new(format!("{case} a")).value(a).margin(0.0),
                    );
                    push(
                        &mut rows,
                        RowBuilder::new(format!("{case} q")).value(q).margin(0.0),
                    );
                }
                (Err(e), ..) | (_, Err(e), _) | (.., Err(e)) => {
                    push(&mut rows, RowBuilder::new(case).error(&e));
                }
            }
        }
    }
    // closed-form anchors when they fall inside the sweep
    if n_min <= 3 && 3 <= n_max {
        let c_ref = (std::f64::consts::PI.powi(2) / 4.0).powf(1.0 / 3.0);
        if let Ok(c) = sharp_constant(3, 2.0) {
            push(
                &mut rows,
                RowBuilder::new("anchor c(3,2)")
                    .value(c)
                    .reference(c_ref)
                    .margin(1e-12 - (c - c_ref).abs() / c_ref),
            );
        }
        let a_ref = 3f64.sqrt() * (std::f64::consts::PI / 2.0).powf(2.0 / 3.0);
        if let Ok(a) = classical_constant(3, 2.0) {
            push(
                &mut rows,
                RowBuilder::new("anchor a(3,2)")
                    .value(a)
                    .reference(a_ref)
                    .margin(1e-10 - (a - a_ref).abs() / a_ref),
            );
        }
    }
    rows
}

// ---------------------------------------------------------------------------
// verify-sobolev
// ---------------------------------------------------------------------------

fn expected_equality(profile: &Profile, i: usize) -> bool {
    match profile {
        Profile::AubinTalenti { .. } => true,
        Profile::AffineExtremizer { .. } => i == 1,
        _ => false,
    }
}

fn verify_sobolev_rows(
    profiles: &[ProfileSpec],
    i_list: &[usize],
    equality_tolerance: f64,
    quadrature: &QuadratureSpec,
) -> Vec<ReportRow> {
    let mut rows = Vec::new();
    for spec in profiles {
        let profile = match spec.build() {
            Ok(p) => p,
            Err(e) => {
                push(&mut rows, RowBuilder::new(format!("ratio {}", spec.label())).error(&e));
                continue;
            }
        };
        let p = profile.intrinsic_p().unwrap_or(2.0);
        for &i in i_list {
            let case = format!("ratio {} i={i}", spec.label());
            match sobolev_ratio(&profile, i, p, quadrature) {
                Ok(ratio) => {
                    let dev = ratio.value - 1.0;
                    let builder = RowBuilder::new(case).estimate(&ratio).reference(1.0);
                    let builder = if expected_equality(&profile, i) {
                        let tol = equality_tolerance.max(3.0 * ratio.std_error);
                        builder.margin(tol - dev.abs()).note("equality-case")
                    } else if matches!(profile, Profile::Gaussian { .. }) {
                        builder
                            .margin(dev - 3.0 * ratio.std_error)
                            .note("strict-deficit")
                    } else {
                        builder.margin(dev + 3.0 * ratio.std_error).note("inequality")
                    };
                    push(&mut rows, builder);
                }
                Err(e) => push(&mut rows, RowBuilder::new(case).error(&e)),
            }
        }
    }
    rows
}

// ---------------------------------------------------------------------------
// chain
// ---------------------------------------------------------------------------

fn chain_rows(profile_spec: &ProfileSpec, p: f64, quadrature: &QuadratureSpec) -> Vec<ReportRow> {
    let mut rows = Vec::new();
    let profile = match profile_spec.build() {
        Ok(f) => f,
        Err(e) => {
            push(&mut rows, RowBuilder::new("chain profile").error(&e));
            return rows;
        }
    };
    match chain_report(&profile, p, quadrature) {
        Ok(report) => {
            for (&i, est) in &report.values {
                push(
                    &mut rows,
                    RowBuilder::new(format!("E i={i} p={p}")).estimate(est).margin(0.0),
                );
            }
            for (&i, est) in &report.ratios {
                push(
                    &mut rows,
                    RowBuilder::new(format!("ratio i={i} p={p}"))
                        .estimate(est)
                        .reference(1.0)
                        .margin(est.value - 1.0 + 3.0 * est.std_error),
                );
            }
            for g in &report.gaps {
                let adjacent = g.upper_j == g.lower_i + 1;
                if adjacent {
                    push(
                        &mut rows,
                        RowBuilder::new(format!("gap E_{} - E_{}", g.upper_j, g.lower_i))
                            .estimate(&g.gap)
                            .margin(g.gap.value + 3.0 * g.gap.std_error),
                    );
                }
            }
            if !profile.is_radial() {
                if let Some(total) = report
                    .gaps
                    .iter()
                    .find(|g| g.lower_i == 1 && g.upper_j == profile.dim())
                {
                    push(
                        &mut rows,
                        RowBuilder::new(format!("strict-gap E_{} - E_1", profile.dim()))
                            .estimate(&total.gap)
                            .margin(total.gap.value - 3.0 * total.gap.std_error)
                            .note("anisotropic input: strict decrease expected"),
                    );
                }
            }
        }
        Err(e) => push(&mut rows, RowBuilder::new(format!("chain p={p}")).error(&e)),
    }
    rows
}

// ---------------------------------------------------------------------------
// petty
// ---------------------------------------------------------------------------

/// Random origin-symmetric polytope: a random well-conditioned linear image
/// of a cube, a cross-polytope, or a random zonotope.
pub fn random_symmetric_polytope(seed: u64) -> Result<Polytope> {
    let mut rng = seeded_rng(seed);
    for attempt in 0..64 {
        let kind = rng.random_range(0..3u8);
        let result = match kind {
            0 | 1 => {
                let base = if kind == 0 {
                    Polytope::cube(3)
                } else {
                    Polytope::cross_polytope(3)
                };
                random_well_conditioned_matrix(&mut rng).and_then(|a| base.linear_image(&a))
            }
            _ => {
                let m = rng.random_range(4..=6usize);
                let generators: Vec<Vec<f64>> = (0..m)
                    .map(|_| {
                        let mut g = sample_unit_vector(&mut rng, 3);
                        let scale = 0.5 + rng.random::<f64>();
                        for x in g.iter_mut() {
                            *x *= scale;
                        }
                        g
                    })
                    .collect();
                Polytope::zonotope3(&generators)
            }
        };
        match result {
            Ok(p) => return Ok(p),
            Err(_) if attempt + 1 < 64 => continue,
            Err(e) => return Err(e),
        }
    }
    unreachable!()
}

fn random_well_conditioned_matrix<R: Rng>(rng: &mut R) -> Result<Matrix> {
    for _ in 0..64 {
        let mut m = Matrix::identity(3);
        for col in 0..3 {
            for row in 0..3 {
                let jitter: f64 = rng.random::<f64>() - 0.5;
                m.set(row, col, m.get(row, col) + jitter);
            }
        }
        if m.det().abs() > 0.3 && m.condition_number() < 10.0 {
            return Ok(m);
        }
    }
    Err(Error::Config("failed to draw a well-conditioned matrix".into()))
}

fn petty_rows(
    bodies: &[BodySpec],
    p_list: &[f64],
    rel_tolerance: f64,
    random_polytopes: usize,
    quadrature: &QuadratureSpec,
) -> Vec<ReportRow> {
    let mut rows = Vec::new();
    let mut cases: Vec<(String, Result<Polytope>, bool, bool)> = bodies
        .iter()
        .map(|spec| {
            let is_ball = matches!(spec, BodySpec::Ball { .. });
            let is_cube = matches!(spec, BodySpec::Cube { .. });
            (spec.label(), spec.build_polytope(), is_ball, is_cube)
        })
        .collect();
    for k in 0..random_polytopes {
        let seed = derive_seed(quadrature.seed, 1000 + k as u64);
        cases.push((
            format!("random-polytope {k}"),
            random_symmetric_polytope(seed),
            false,
            false,
        ));
    }

    for &p in p_list {
        for (label, polytope, is_ball, is_cube) in &cases {
            let case = format!("petty {label} p={p}");
            let polytope = match polytope {
                Ok(poly) => poly,
                Err(e) => {
                    push(&mut rows, RowBuilder::new(case).error(&e.to_string_as_config()));
                    continue;
                }
            };
            let n = polytope.dim();
            let bound = match petty_bound(n, p) {
                Ok(b) => b,
                Err(e) => {
                    push(&mut rows, RowBuilder::new(case).error(&e));
                    continue;
                }
            };
            match petty_product(polytope, p, quadrature) {
                Ok(est) => {
                    // screening: product <= bound (1 + tol)
                    push(
                        &mut rows,
                        RowBuilder::new(case.clone())
                            .estimate(&est)
                            .reference(bound)
                            .margin(bound * (1.0 + rel_tolerance) - est.value),
                    );
                    if *is_ball {
                        // near-ellipsoid: equality within 2%
                        push(
                            &mut rows,
                            RowBuilder::new(format!("{case} equality"))
                                .estimate(&est)
                                .reference(bound)
                                .margin(0.02 * bound - (est.value - bound).abs())
                                .note("ellipsoid equality case"),
                        );
                    }
                    if *is_cube && p == 1.0 {
                        let closed = 4.0 * std::f64::consts::PI.powi(3) / 3.0;
                        push(
                            &mut rows,
                            RowBuilder::new(format!("{case} closed-form"))
                                .estimate(&est)
                                .reference(closed)
                                .margin(0.01 * closed - (est.value - closed).abs())
                                .note("(4/pi) cube projection body"),
                        );
                    }
                }
                Err(e) => push(&mut rows, RowBuilder::new(case).error(&e)),
            }
        }
    }
    rows
}

// ---------------------------------------------------------------------------
// geom-ineq
// ---------------------------------------------------------------------------

fn geom_ineq_rows(
    bodies: &[BodySpec],
    pairs: &[(usize, usize)],
    p_list: &[f64],
    residual_sweep: Option<&ResidualSweepConfig>,
    quadrature: &QuadratureSpec,
) -> Vec<ReportRow> {
    let mut rows = Vec::new();
    for spec in bodies {
        let polytope = match spec.build_polytope() {
            Ok(p) => p,
            Err(e) => {
                push(&mut rows, RowBuilder::new(format!("comparison {}", spec.label())).error(&e));
                continue;
            }
        };
        let is_ball = matches!(spec, BodySpec::Ball { .. });
        let is_cube = matches!(spec, BodySpec::Cube { .. });
        for &(i, j) in pairs {
            for &p in p_list {
                let case = format!("comparison {} i={i} j={j} p={p}", spec.label());
                match grassmann_comparison_sides(&polytope, i, j, p, quadrature) {
                    Ok((left, right)) => {
                        let combined =
                            (left.std_error.powi(2) + right.std_error.powi(2)).sqrt();
                        let diff = right.value - left.value;
                        // floating-point floor: at p = 2 highly symmetric
                        // bodies make both sides exactly equal, with zero
                        // Monte Carlo variance
                        let floor = 1e-12 * left.value.abs().max(right.value.abs());
                        push(
                            &mut rows,
                            RowBuilder::new(format!("{case} direction"))
                                .value(diff)
                                .reference(0.0)
                                .margin(diff + 3.0 * combined + floor)
                                .note(format!("left={} right={}", left.value, right.value)),
                        );
                        if is_ball {
                            push(
                                &mut rows,
                                RowBuilder::new(format!("{case} equality"))
                                    .value(diff)
                                    .margin(3.0 * combined + floor - diff.abs())
                                    .note("rotation-invariant body"),
                            );
                        }
                        if is_cube && p == 1.0 {
                            push(
                                &mut rows,
                                RowBuilder::new(format!("{case} strict"))
                                    .value(diff)
                                    .margin(diff - 3.0 * combined)
                                    .note("strictness for non-ellipsoidal body at p=1"),
                            );
                        }
                    }
                    Err(e) => push(&mut rows, RowBuilder::new(case).error(&e)),
                }
            }
        }
    }
    if let Some(cfg) = residual_sweep {
        let mut rng = seeded_rng(derive_seed(quadrature.seed, 777));
        // canonical exact case first
        let mut directions = vec![("e1".to_string(), {
            let mut e1 = vec![0.0; cfg.n];
            e1[0] = 1.0;
            e1
        })];
        for k in 0..cfg.random_directions {
            directions.push((format!("x{k}"), sample_unit_vector(&mut rng, cfg.n)));
        }
        for &(i, j) in &cfg.pairs {
            for &p in &cfg.p_list {
                for (name, x) in &directions {
                    let case = format!("residual_sweep i={i} j={j} p={p} x={name}");
                    match rotation_average_residual(x, i, j, p, quadrature) {
                        Ok(res) => push(
                            &mut rows,
                            RowBuilder::new(case)
                                .estimate(&res)
                                .reference(0.0)
                                .margin(3.0 * res.std_error - res.value.abs()),
                        ),
                        Err(e) => push(&mut rows, RowBuilder::new(case).error(&e)),
                    }
                }
            }
        }
    }
    rows
}

// ---------------------------------------------------------------------------
// bv
// ---------------------------------------------------------------------------

fn bv_rows(
    bodies: &[BodySpec],
    i_list: &[usize],
    zonoid_atom_pairs: usize,
    invariance_matrix: Option<&[Vec<f64>]>,
    quadrature: &QuadratureSpec,
) -> Vec<ReportRow> {
    let mut rows = Vec::new();
    for spec in bodies {
        let body = match spec.build_convex_body() {
            Ok(b) => b,
            Err(e) => {
                push(&mut rows, RowBuilder::new(format!("bv {}", spec.label())).error(&e));
                continue;
            }
        };
        let n = body.dim(3);
        let bound = match bv_sharp_bound(&body, n) {
            Ok(b) => b,
            Err(e) => {
                push(&mut rows, RowBuilder::new(format!("bv {}", spec.label())).error(&e));
                continue;
            }
        };
        let is_ball = matches!(spec, BodySpec::Ball { .. });
        for &i in i_list {
            let case = format!("bv {} i={i}", spec.label());
            match e_i_bv(&body, i, quadrature) {
                Ok(est) => {
                    if is_ball {
                        // extremal body: equality within 1%
                        push(
                            &mut rows,
                            RowBuilder::new(case)
                                .estimate(&est)
                                .reference(bound)
                                .margin(0.01 * bound - (est.value - bound).abs())
                                .note("ball equality case"),
                        );
                    } else {
                        push(
                            &mut rows,
                            RowBuilder::new(case)
                                .estimate(&est)
                                .reference(bound)
                                .margin(est.value - bound - 3.0 * est.std_error)
                                .note("strictly above the ball bound"),
                        );
                    }
                }
                Err(e) => push(&mut rows, RowBuilder::new(case).error(&e)),
            }
        }
    }

    if let Some(matrix) = invariance_matrix {
        let case = "bv i=1 invariance det-1 image of ball";
        let result = (|| -> Result<(crate::quadrature::Estimate, crate::quadrature::Estimate)> {
            let m = Matrix::from_rows(matrix)?;
            let det = m.det();
            if (det.abs() - 1.0).abs() > 1e-9 {
                return Err(Error::Config(format!(
                    "invariance matrix must have |det| = 1, got {det}"
                )));
            }
            let ball = ConvexBody::Ball(1.0);
            let image = ConvexBody::Ellipsoid(crate::bodies::Ellipsoid::new(m)?);
            Ok((
                e_i_bv(&ball, 1, quadrature)?,
                e_i_bv(&image, 1, quadrature)?,
            ))
        })();
        match result {
            Ok((ball, image)) => {
                let combined = (ball.std_error.powi(2) + image.std_error.powi(2)).sqrt();
                push(
                    &mut rows,
                    RowBuilder::new(case)
                        .value(image.value)
                        .reference(ball.value)
                        .margin(3.0 * combined.max(1e-4 * ball.value) - (image.value - ball.value).abs())
                        .note("affine invariance of the i=1 functional"),
                );
            }
            Err(e) => push(&mut rows, RowBuilder::new(case).error(&e)),
        }
    }

    if zonoid_atom_pairs > 0 {
        for spec in bodies {
            let case = format!("bv sandwich {} i=2", spec.label());
            let result = (|| -> Result<Vec<ReportRow>> {
                let body = spec.build_convex_body()?;
                let n = body.dim(3);
                if n != 3 {
                    return Err(Error::Config("sandwich rows are sized for n = 3".into()));
                }
                let mu = random_mass_one_measure(3, 2, zonoid_atom_pairs, derive_seed(quadrature.seed, 555))?;
                let e_hi = e_i_bv(&body, 3, quadrature)?;
                let e_mid = e_i_bv_zonoid(&body, 2, &mu, quadrature)?;
                let e_lo = e_i_bv(&body, 1, quadrature)?;
                let se_hi = (e_hi.std_error.powi(2) + e_mid.std_error.powi(2)).sqrt();
                let se_lo = (e_lo.std_error.powi(2) + e_mid.std_error.powi(2)).sqrt();
                let mut out = Vec::new();
                out.push(
                    RowBuilder::new(format!("{case} upper"))
                        .value(e_hi.value - e_mid.value)
                        .margin(e_hi.value - e_mid.value + 3.0 * se_hi)
                        .note(format!("E_n={} E_mu={}", e_hi.value, e_mid.value))
                        .build(0),
                );
                out.push(
                    RowBuilder::new(format!("{case} lower"))
                        .value(e_mid.value - e_lo.value)
                        .margin(e_mid.value - e_lo.value + 3.0 * se_lo)
                        .note(format!("E_mu={} E_1={}", e_mid.value, e_lo.value))
                        .build(0),
                );
                Ok(out)
            })();
            match result {
                Ok(extra) => {
                    for r in extra {
                        push(
                            &mut rows,
                            RowBuilder::new(r.case)
                                .value(r.value)
                                .margin(r.margin)
                                .note(r.note),
                        );
                    }
                }
                Err(e) => push(&mut rows, RowBuilder::new(case).error(&e)),
            }
        }
    }
    rows
}

/// Random even measure with `pairs` antithetic atom pairs on S^{i-1},
/// total mass 1.
pub fn random_mass_one_measure(
    n: usize,
    i: usize,
    pairs: usize,
    seed: u64,
) -> Result<DiscreteSphereMeasure> {
    let mut rng = seeded_rng(seed);
    let raw: Vec<(Vec<f64>, f64)> = (0..pairs)
        .map(|_| {
            let low = sample_unit_vector(&mut rng, i);
            let mut u = vec![0.0; n];
            u[..i].copy_from_slice(&low);
            (u, 0.1 + rng.random::<f64>())
        })
        .collect();
    let total: f64 = raw.iter().map(|(_, w)| 2.0 * w).sum();
    DiscreteSphereMeasure::new_even(
        n,
        raw.into_iter().map(|(u, w)| (u, w / total)).collect(),
    )
}

trait ErrorExt {
    fn to_string_as_config(&self) -> Error;
}

impl ErrorExt for Error {
    fn to_string_as_config(&self) -> Error {
        Error::Config(self.to_string())
    }
}
