//! Projection bodies, polar volumes, the Petty product, and direct
//! evaluation of the rotational-average identities behind the monotone
//! chain of Sobolev functionals.

use crate::bodies::body::{Ellipsoid, LpZonoid};
use crate::bodies::polytope::Polytope;
use crate::constants::{q_coefficient, unit_ball_volume};
use crate::error::{Error, Result};
use crate::linalg::{dot, norm, project_length};
use crate::quadrature::{
    mean_and_se, Estimate, QuadratureSpec, MOMENT_BATCHES, STREAM_GRASSMANN, STREAM_SPHERE,
};
use crate::sampling::{derive_seed, sample_rotation, seeded_rng, RotationStream, SphereSamples};

/// Normalization omega_{p-1} / (2 omega_{n+p-2}) that makes Pi_p B^n = B^n.
pub fn projection_body_scale(n: usize, p: f64) -> Result<f64> {
    Ok(unit_ball_volume(p - 1.0)? / (2.0 * unit_ball_volume(n as f64 + p - 2.0)?))
}

/// L^p projection body of a polytope:
/// h(Pi_p K, x)^p = (omega_{p-1} / (2 omega_{n+p-2})) sum_k w_k |x . u_k|^p
/// over the L^p surface-area measure. The cosine transform only sees the
/// even part of the measure, which is taken explicitly for non-symmetric
/// polytopes.
pub fn lp_projection_body(polytope: &Polytope, p: f64) -> Result<LpZonoid> {
    let measure = polytope.lp_surface_area_measure(p)?;
    let scale = projection_body_scale(polytope.dim(), p)?;
    let generator = measure.even_part().scaled(scale)?;
    LpZonoid::new(p, generator)
}

/// Exact projection body of an ellipsoid:
/// Pi_p (A B^n) = |det A|^{1/p} A^{-T} B^n.
pub fn ellipsoid_projection_body(ellipsoid: &Ellipsoid, p: f64) -> Result<Ellipsoid> {
    if !(p >= 1.0) {
        return Err(Error::Domain(format!("p must be >= 1, got {p}")));
    }
    let factor = ellipsoid.det().abs().powf(1.0 / p);
    let a_inv_t = ellipsoid.shape().inverse()?.transpose();
    let mut shape = a_inv_t;
    for col in 0..shape.n {
        for x in shape.column_mut(col).iter_mut() {
            *x *= factor;
        }
    }
    Ellipsoid::new(shape)
}

/// Volume of the polar body from support evaluations only, by the polar
/// coordinate formula: |K°| = omega_n * E_u[ h(K, u)^{-n} ] over the
/// uniform sphere measure.
pub fn polar_volume<H: Fn(&[f64]) -> f64>(
    h_eval: H,
    n: usize,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    spec.validate()?;
    let samples = SphereSamples::generate(
        n,
        spec.sphere_samples,
        derive_seed(spec.seed, STREAM_SPHERE),
        MOMENT_BATCHES,
    );
    let exponent = -(n as i32);
    let mut values = Vec::with_capacity(samples.n_pairs());
    let mut neg = vec![0.0; n];
    for k in 0..samples.n_pairs() {
        let u = samples.point(k);
        for (m, &x) in neg.iter_mut().zip(u) {
            *m = -x;
        }
        let mut pair = 0.0;
        for dir in [u, &neg[..]] {
            let h = h_eval(dir);
            if !(h > 0.0) || !h.is_finite() {
                return Err(Error::DegenerateBody {
                    value: h,
                    direction: dir.to_vec(),
                });
            }
            pair += 0.5 * h.powi(exponent);
        }
        values.push(pair);
    }
    let (mean, se) = mean_and_se(&values);
    let omega_n = unit_ball_volume(n as f64)?;
    Ok(Estimate {
        value: omega_n * mean,
        std_error: omega_n * se,
        spec: *spec,
    })
}

/// Petty product |Pi_p° K| |K|^{(n-p)/p}; at most omega_n^{n/p}, with
/// equality exactly for centered ellipsoids.
pub fn petty_product(polytope: &Polytope, p: f64, spec: &QuadratureSpec) -> Result<Estimate> {
    let n = polytope.dim();
    if !(p >= 1.0 && p < n as f64) {
        return Err(Error::Domain(format!(
            "petty product needs 1 <= p < n, got p={p}, n={n}"
        )));
    }
    let body = lp_projection_body(polytope, p)?;
    let polar_vol = polar_volume(|u| body.support(u), n, spec)?;
    let vol_factor = polytope.volume().powf((n as f64 - p) / p);
    Ok(polar_vol.scale(vol_factor))
}

/// Sharp upper bound omega_n^{n/p} of the Petty product.
pub fn petty_bound(n: usize, p: f64) -> Result<f64> {
    Ok(unit_ball_volume(n as f64)?.powf(n as f64 / p))
}

/// Relative residual of the rotational-average identity
/// q_{j,p} ||x|E_j||^p = q_{i,p} int_{SO(j)} ||x|phi E_i||^p dphi,
/// estimated by Monte Carlo over SO(j). Returns (rhs - lhs)/lhs with the
/// Monte Carlo standard error; both sides vanish when x is orthogonal to
/// E_j, in which case the residual is defined as 0.
pub fn rotation_average_residual(
    x: &[f64],
    i: usize,
    j: usize,
    p: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    spec.validate()?;
    let n = x.len();
    if !(1 <= i && i < j && j <= n) {
        return Err(Error::Domain(format!(
            "need 1 <= i < j <= n, got i={i}, j={j}, n={n}"
        )));
    }
    if norm(x) == 0.0 {
        return Err(Error::Domain("x must be nonzero".into()));
    }
    let q_i = q_coefficient(i as u32, p)?;
    let q_j = q_coefficient(j as u32, p)?;
    let xj = &x[..j];
    let proj_j_sq = dot(xj, xj);
    if proj_j_sq == 0.0 {
        return Ok(Estimate::exact(0.0, *spec));
    }
    let lhs = q_j * proj_j_sq.powf(p / 2.0);

    let mut rng = seeded_rng(derive_seed(spec.seed, STREAM_GRASSMANN));
    let count = spec.grassmann_samples;
    let mut values = Vec::with_capacity(count);
    for _ in 0..count {
        // Haar rotation of the E_j block, acting as identity elsewhere
        let rot = sample_rotation(&mut rng, j);
        let mut sq = 0.0;
        for col in 0..i {
            let c = dot(rot.column(col), xj);
            sq += c * c;
        }
        values.push(q_i * sq.powf(p / 2.0));
    }
    let (mean, se) = mean_and_se(&values);
    Ok(Estimate {
        value: (mean - lhs) / lhs,
        std_error: se / lhs,
        spec: *spec,
    })
}

/// Both sides of the Grassmannian comparison
///   int_{Gr_{n,j}} (q_{j,p} int ||u|E||^p dS_p(K,u))^{-n/p} dE
///     <= int_{Gr_{n,i}} (q_{i,p} int ||u|F||^p dS_p(K,u))^{-n/p} dF
/// for i <= j, evaluated with common random numbers: the frames for both
/// sides are prefixes of one shared rotation stream. Returns (left, right)
/// = (side at j, side at i).
pub fn grassmann_comparison_sides(
    polytope: &Polytope,
    i: usize,
    j: usize,
    p: f64,
    spec: &QuadratureSpec,
) -> Result<(Estimate, Estimate)> {
    spec.validate()?;
    let n = polytope.dim();
    if !(1 <= i && i <= j && j <= n) {
        return Err(Error::Domain(format!(
            "need 1 <= i <= j <= n, got i={i}, j={j}, n={n}"
        )));
    }
    let measure = polytope.lp_surface_area_measure(p)?;
    let exponent = -(n as f64) / p;

    let side = |dim: usize| -> Result<Estimate> {
        let q = q_coefficient(dim as u32, p)?;
        if dim == n {
            // Gr(n,n) is a point and every projection is the identity
            let inner = q * measure.total_mass();
            return Ok(Estimate::exact(inner.powf(exponent), *spec));
        }
        let stream = RotationStream::new(derive_seed(spec.seed, STREAM_GRASSMANN), n);
        let mut values = Vec::with_capacity(spec.grassmann_samples);
        for k in 0..spec.grassmann_samples {
            let frame = stream.rotation(k).prefix_frame(dim);
            let mut inner = 0.0;
            for a in 0..measure.len() {
                let len = project_length(measure.dir(a), &frame);
                let contrib = if p == 1.0 {
                    len
                } else if p == 2.0 {
                    len * len
                } else {
                    len.powf(p)
                };
                inner += measure.weight(a) * contrib;
            }
            inner *= q;
            if !(inner > 0.0) {
                return Err(Error::DegenerateInput {
                    context: "non-positive projected surface integral".into(),
                    sample_index: k,
                    value: inner,
                });
            }
            values.push(inner.powf(exponent));
        }
        let (mean, se) = mean_and_se(&values);
        Ok(Estimate {
            value: mean,
            std_error: se,
            spec: *spec,
        })
    };

    Ok((side(j)?, side(i)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::sampling::{sample_unit_vector, seeded_rng};
    use std::f64::consts::PI;

    fn spec(seed: u64) -> QuadratureSpec {
        QuadratureSpec::fast(seed)
    }

    #[test]
    fn projection_body_of_cube_p1() {
        // Pi_1([-1,1]^3) = (4/pi) [-1,1]^3
        let cube = Polytope::cube(3);
        let body = lp_projection_body(&cube, 1.0).unwrap();
        let h = body.support(&[1.0, 0.0, 0.0]);
        assert!((h - 4.0 / PI).abs() < 1e-12, "h = {h}");
        let mut rng = seeded_rng(3);
        for _ in 0..10 {
            let x = sample_unit_vector(&mut rng, 3);
            let expected = (4.0 / PI) * (x[0].abs() + x[1].abs() + x[2].abs());
            assert!((body.support(&x) - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn cauchy_projection_formula_on_cube() {
        // (1/2) sum_k w_k |u . u_k| equals the shadow area vol_2(K|u^perp),
        // checked against a direct 2-D hull-area oracle.
        let cube = Polytope::cube(3);
        let sam = cube.surface_area_measure().unwrap();
        let shadow = |u: &[f64]| 0.5 * sam.cosine_transform(u, 1.0);
        assert!((shadow(&[1.0, 0.0, 0.0]) - 4.0).abs() < 1e-12);

        // oracle: project the vertices onto u^perp and take the hull area
        let mut rng = seeded_rng(17);
        for _ in 0..5 {
            let u = sample_unit_vector(&mut rng, 3);
            // orthonormal basis of u^perp
            let mut a = if u[0].abs() < 0.9 {
                vec![1.0, 0.0, 0.0]
            } else {
                vec![0.0, 1.0, 0.0]
            };
            let d = dot(&a, &u);
            for (ai, ui) in a.iter_mut().zip(&u) {
                *ai -= d * ui;
            }
            crate::linalg::normalize(&mut a);
            let b = vec![
                u[1] * a[2] - u[2] * a[1],
                u[2] * a[0] - u[0] * a[2],
                u[0] * a[1] - u[1] * a[0],
            ];
            let pts: Vec<(f64, f64)> = (0..cube.n_vertices())
                .map(|k| {
                    let v = cube.vertex(k);
                    (dot(v, &a), dot(v, &b))
                })
                .collect();
            let oracle = hull_area(&pts);
            assert!(
                (shadow(&u) - oracle).abs() < 1e-9,
                "shadow {} vs oracle {oracle}",
                shadow(&u)
            );
        }
    }

    /// Andrew monotone chain hull area (test oracle only).
    fn hull_area(points: &[(f64, f64)]) -> f64 {
        let mut pts = points.to_vec();
        pts.sort_by(|p, q| p.partial_cmp(q).unwrap());
        let cross =
            |o: (f64, f64), a: (f64, f64), b: (f64, f64)| -> f64 {
                (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
            };
        let mut hull: Vec<(f64, f64)> = Vec::new();
        for &p in &pts {
            while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        let lower_len = hull.len() + 1;
        for &p in pts.iter().rev().skip(1) {
            while hull.len() >= lower_len
                && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
        let mut area = 0.0;
        for k in 0..hull.len() {
            let (x1, y1) = hull[k];
            let (x2, y2) = hull[(k + 1) % hull.len()];
            area += x1 * y2 - x2 * y1;
        }
        area.abs() / 2.0
    }

    #[test]
    fn projection_body_of_ball_approx_is_near_unit_ball() {
        let ball = Polytope::ball_approx(3);
        let mut rng = seeded_rng(5);
        for p in [1.0, 2.0] {
            let body = lp_projection_body(&ball, p).unwrap();
            for _ in 0..10 {
                let x = sample_unit_vector(&mut rng, 3);
                let h = body.support(&x);
                assert!((h - 1.0).abs() < 0.01, "p={p}: h = {h}");
            }
        }
    }

    #[test]
    fn ellipsoid_projection_body_law() {
        let e = Ellipsoid::new(Matrix::diagonal(&[2.0, 1.0, 1.0])).unwrap();
        let pb = ellipsoid_projection_body(&e, 1.0).unwrap();
        // |det A| = 2, A^{-T} = diag(1/2, 1, 1): expect diag(1, 2, 2)
        for (k, expect) in [1.0, 2.0, 2.0].iter().enumerate() {
            let mut x = vec![0.0; 3];
            x[k] = 1.0;
            assert!((pb.support(&x) - expect).abs() < 1e-12);
        }
        // identity maps to the unit ball
        let id = Ellipsoid::unit_ball(3);
        let pb_id = ellipsoid_projection_body(&id, 2.0).unwrap();
        assert!((pb_id.support(&[0.0, 1.0, 0.0]) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ellipsoid_projection_body_rotation_invariance() {
        let mut rng = seeded_rng(31);
        let rot = sample_rotation(&mut rng, 3);
        let e = Ellipsoid::new(rot.matrix().clone()).unwrap();
        let pb = ellipsoid_projection_body(&e, 1.5).unwrap();
        for _ in 0..5 {
            let x = sample_unit_vector(&mut rng, 3);
            assert!((pb.support(&x) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn polar_volume_of_unit_ball() {
        let est = polar_volume(|_| 1.0, 3, &spec(7)).unwrap();
        assert!((est.value - 4.0 * PI / 3.0).abs() < 1e-12);
        assert_eq!(est.std_error, 0.0);
    }

    #[test]
    fn polar_volume_of_cube_is_cross_polytope() {
        let cube = Polytope::cube(3);
        let mut s = spec(7);
        s.sphere_samples = 400_000;
        let est = polar_volume(|u| cube.support(u), 3, &s).unwrap();
        assert!(
            (est.value - 4.0 / 3.0).abs() < 3.0 * est.std_error,
            "{} +- {}",
            est.value,
            est.std_error
        );
    }

    #[test]
    fn polar_volume_of_ellipsoid() {
        let a = Matrix::from_rows(&[
            vec![1.5, 0.2, 0.0],
            vec![0.0, 0.8, 0.1],
            vec![-0.3, 0.0, 1.1],
        ])
        .unwrap();
        let e = Ellipsoid::new(a.clone()).unwrap();
        let mut s = spec(9);
        s.sphere_samples = 400_000;
        let est = polar_volume(|u| e.support(u), 3, &s).unwrap();
        let expect = 4.0 * PI / 3.0 / a.det().abs();
        assert!(
            (est.value - expect).abs() < 3.0 * est.std_error,
            "{} vs {expect} +- {}",
            est.value,
            est.std_error
        );
    }

    #[test]
    fn polar_volume_rejects_degenerate_support() {
        let err = polar_volume(|u| u[0], 3, &spec(1)).unwrap_err();
        match err {
            Error::DegenerateBody { .. } => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn petty_product_of_cube_p1() {
        // closed form 4 pi^3 / 3, strictly below omega_3^3 = 64 pi^3 / 27
        let cube = Polytope::cube(3);
        let mut s = spec(11);
        s.sphere_samples = 200_000;
        let est = petty_product(&cube, 1.0, &s).unwrap();
        let expect = 4.0 * PI.powi(3) / 3.0;
        assert!(
            (est.value - expect).abs() < 4.0 * est.std_error,
            "{} vs {expect} +- {}",
            est.value,
            est.std_error
        );
        let bound = petty_bound(3, 1.0).unwrap();
        assert!((bound - 64.0 * PI.powi(3) / 27.0).abs() < 1e-9);
        assert!(est.value < bound);
    }

    #[test]
    fn residual_exact_circle_case() {
        // i=1, j=2, p=2, x=e_1: RHS = mean of cos^2 = 1/2 = LHS
        let mut s = spec(13);
        s.grassmann_samples = 50_000;
        let est = rotation_average_residual(&[1.0, 0.0, 0.0], 1, 2, 2.0, &s).unwrap();
        assert!(
            est.value.abs() < 3.0 * est.std_error,
            "residual {} +- {}",
            est.value,
            est.std_error
        );
    }

    #[test]
    fn residual_orthogonal_case_is_exact_zero() {
        let est = rotation_average_residual(&[0.0, 0.0, 1.0], 1, 2, 1.5, &spec(1)).unwrap();
        assert_eq!(est.value, 0.0);
        assert_eq!(est.std_error, 0.0);
    }

    #[test]
    fn residual_self_consistency_random_x() {
        let mut rng = seeded_rng(19);
        let mut s = spec(23);
        s.grassmann_samples = 100_000;
        for &(i, j, p) in &[(1usize, 3usize, 1.0), (2, 3, 2.0), (1, 2, 1.5)] {
            let x = sample_unit_vector(&mut rng, 3);
            let est = rotation_average_residual(&x, i, j, p, &s).unwrap();
            assert!(
                est.value.abs() < 3.0 * est.std_error,
                "(i,j,p)=({i},{j},{p}): {} +- {}",
                est.value,
                est.std_error
            );
        }
    }

    #[test]
    fn residual_rejects_bad_input() {
        assert!(rotation_average_residual(&[0.0, 0.0, 0.0], 1, 2, 1.0, &spec(1)).is_err());
        assert!(rotation_average_residual(&[1.0, 0.0, 0.0], 2, 2, 1.0, &spec(1)).is_err());
    }

    #[test]
    fn comparison_ball_sides_agree() {
        let ball = Polytope::ball_approx(2);
        let mut s = spec(29);
        s.grassmann_samples = 5_000;
        let (left, right) = grassmann_comparison_sides(&ball, 1, 3, 1.0, &s).unwrap();
        let combined = (left.std_error.powi(2) + right.std_error.powi(2)).sqrt();
        assert!(
            (left.value - right.value).abs() <= 3.0 * combined.max(1e-6 * left.value.abs()),
            "left {} right {} combined se {combined}",
            left.value,
            right.value
        );
    }

    #[test]
    fn comparison_cube_strict_direction() {
        let cube = Polytope::cube(3);
        let mut s = spec(31);
        s.grassmann_samples = 20_000;
        let (left, right) = grassmann_comparison_sides(&cube, 1, 3, 1.0, &s).unwrap();
        let combined = (left.std_error.powi(2) + right.std_error.powi(2)).sqrt();
        assert!(
            right.value - left.value > 3.0 * combined,
            "left {} right {} combined {combined}",
            left.value,
            right.value
        );
    }

    #[test]
    fn comparison_equal_indices() {
        let cube = Polytope::cube(3);
        let (left, right) = grassmann_comparison_sides(&cube, 2, 2, 1.0, &spec(37)).unwrap();
        assert_eq!(left.value.to_bits(), right.value.to_bits());
    }
}
