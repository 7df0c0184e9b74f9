//! Numerical integration engines: Gauss-Legendre radial quadrature on the
//! compactified half-line, antithetic Monte Carlo over the sphere, product
//! rules for separable integrands over R^n, and Grassmannian Monte Carlo
//! with deterministic seeded streams.

use serde::{Deserialize, Serialize};

use crate::constants::unit_ball_volume;
use crate::error::{Error, Result};
use crate::linalg::Frame;
use crate::sampling::{derive_seed, seeded_rng, RotationStream, SphereSamples};

/// Mean and standard error of the mean, accumulated relative to the first
/// value so that constant inputs produce exactly zero variance.
pub(crate) fn mean_and_se(values: &[f64]) -> (f64, f64) {
    let m = values.len() as f64;
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let shift = values[0];
    let mut sum_d = 0.0;
    let mut sum_d2 = 0.0;
    for &v in values {
        let d = v - shift;
        sum_d += d;
        sum_d2 += d * d;
    }
    let mean = shift + sum_d / m;
    let var = (sum_d2 / m - (sum_d / m) * (sum_d / m)).max(0.0);
    let se = if values.len() > 1 {
        (var / (m - 1.0)).sqrt()
    } else {
        0.0
    };
    (mean, se)
}

/// Seed sub-streams, so sphere, Grassmannian and R^n sampling never share
/// random numbers even when driven by one spec.
pub(crate) const STREAM_SPHERE: u64 = 1;
pub(crate) const STREAM_GRASSMANN: u64 = 2;
pub(crate) const STREAM_RN: u64 = 3;

/// Batches used for empirical error estimation of shared sphere averages.
pub(crate) const MOMENT_BATCHES: usize = 8;

/// Sampling and refinement parameters for one quadrature run.
///
/// The seed is mandatory; all randomness derives from it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub radial_nodes: usize,
    pub sphere_samples: usize,
    pub grassmann_samples: usize,
    pub seed: u64,
    pub target_rel_error: f64,
}

impl QuadratureSpec {
    pub fn new(
        radial_nodes: usize,
        sphere_samples: usize,
        grassmann_samples: usize,
        seed: u64,
        target_rel_error: f64,
    ) -> Result<Self> {
        let spec = QuadratureSpec {
            radial_nodes,
            sphere_samples,
            grassmann_samples,
            seed,
            target_rel_error,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.radial_nodes < 1 || self.sphere_samples < 1 || self.grassmann_samples < 1 {
            return Err(Error::Config(
                "all quadrature sample counts must be >= 1".into(),
            ));
        }
        if !(self.target_rel_error > 0.0 && self.target_rel_error <= 0.1) {
            return Err(Error::Config(format!(
                "target_rel_error must lie in (0, 0.1], got {}",
                self.target_rel_error
            )));
        }
        Ok(())
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Defaults sized for fast unit-level runs.
    pub fn fast(seed: u64) -> Self {
        QuadratureSpec {
            radial_nodes: 96,
            sphere_samples: 20_000,
            grassmann_samples: 4_000,
            seed,
            target_rel_error: 0.01,
        }
    }
}

/// A numerical value with an attached uncertainty and the spec that
/// produced it. For Monte Carlo results `std_error` is the standard error
/// of the mean; for deterministic rules it stores the refinement delta.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
    pub spec: QuadratureSpec,
}

impl Estimate {
    pub fn exact(value: f64, spec: QuadratureSpec) -> Self {
        Estimate {
            value,
            std_error: 0.0,
            spec,
        }
    }

    pub fn scale(&self, c: f64) -> Self {
        Estimate {
            value: c * self.value,
            std_error: c.abs() * self.std_error,
            ..*self
        }
    }

    /// value^alpha with first-order error propagation (value must be > 0).
    pub fn powf(&self, alpha: f64) -> Self {
        let v = self.value.powf(alpha);
        let se = if self.value > 0.0 {
            (alpha * v / self.value).abs() * self.std_error
        } else {
            f64::NAN
        };
        Estimate {
            value: v,
            std_error: se,
            ..*self
        }
    }

    /// Product of independent estimates.
    pub fn mul_independent(&self, other: &Estimate) -> Self {
        let value = self.value * other.value;
        let se = ((other.value * self.std_error).powi(2)
            + (self.value * other.std_error).powi(2))
        .sqrt();
        Estimate {
            value,
            std_error: se,
            ..*self
        }
    }

    /// Ratio of independent estimates.
    pub fn div_independent(&self, other: &Estimate) -> Self {
        let value = self.value / other.value;
        let rel = ((self.std_error / self.value).powi(2)
            + (other.std_error / other.value).powi(2))
        .sqrt();
        Estimate {
            value,
            std_error: (value * rel).abs(),
            ..*self
        }
    }

    /// Difference with independent errors.
    pub fn sub_independent(&self, other: &Estimate) -> Self {
        Estimate {
            value: self.value - other.value,
            std_error: (self.std_error.powi(2) + other.std_error.powi(2)).sqrt(),
            ..*self
        }
    }

    pub fn rel_error(&self) -> f64 {
        if self.value == 0.0 {
            self.std_error
        } else {
            (self.std_error / self.value).abs()
        }
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(k: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(k >= 1);
    let mut nodes = vec![0.0; k];
    let mut weights = vec![0.0; k];
    let m = k.div_ceil(2);
    for j in 0..m {
        let mut x = (std::f64::consts::PI * (j as f64 + 0.75) / (k as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre P_k(x) and derivative by upward recurrence
            let mut p0 = 1.0;
            let mut p1 = x;
            for deg in 2..=k {
                let d = deg as f64;
                let p2 = ((2.0 * d - 1.0) * x * p1 - (d - 1.0) * p0) / d;
                p0 = p1;
                p1 = p2;
            }
            let p = if k == 1 { x } else { p1 };
            let pm1 = if k == 1 { 1.0 } else { p0 };
            dp = k as f64 * (x * p - pm1) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[j] = -x;
        nodes[k - 1 - j] = x;
        weights[j] = w;
        weights[k - 1 - j] = w;
    }
    (nodes, weights)
}

fn radial_rule_pass<G: Fn(f64) -> f64>(g: &G, n: usize, k: usize) -> Result<f64> {
    let (nodes, weights) = gauss_legendre(k);
    let nm1 = n as i32 - 1;
    let mut sum = 0.0;
    for (x, w) in nodes.iter().zip(&weights) {
        // map [-1,1] -> t in (0,1) -> r = t/(1-t)
        let t = 0.5 * (x + 1.0);
        let one_minus = 1.0 - t;
        let r = t / one_minus;
        let jac = 1.0 / (one_minus * one_minus);
        let gv = g(r);
        if !gv.is_finite() {
            return Err(Error::Integration { node: r, value: gv });
        }
        sum += 0.5 * w * gv * r.powi(nm1) * jac;
    }
    Ok(sum)
}

/// int_0^inf g(r) r^{n-1} dr via Gauss-Legendre on the compactified variable
/// r = t/(1-t). The returned value uses 2k nodes; `std_error` stores the
/// refinement delta |I_k - I_{2k}|.
pub fn integrate_radial<G: Fn(f64) -> f64>(g: G, n: usize, spec: &QuadratureSpec) -> Result<Estimate> {
    spec.validate()?;
    let coarse = radial_rule_pass(&g, n, spec.radial_nodes)?;
    let fine = radial_rule_pass(&g, n, 2 * spec.radial_nodes)?;
    Ok(Estimate {
        value: fine,
        std_error: (coarse - fine).abs(),
        spec: *spec,
    })
}

/// Monte Carlo average of h over the unit sphere S^{n-1} with antithetic
/// pairing (u, -u).
pub fn sphere_average<H: Fn(&[f64]) -> f64>(
    h: H,
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
    let (mean, se) = samples.average(h);
    Ok(Estimate {
        value: mean,
        std_error: se,
        spec: *spec,
    })
}

/// Structure declaration for integrands over R^n.
pub enum RnIntegrand<'a> {
    /// F(x) = radial(||x||) * angular(x / ||x||); evaluated by the product of
    /// the compactified radial rule and the antithetic sphere average.
    Separable {
        radial: &'a dyn Fn(f64) -> f64,
        angular: &'a dyn Fn(&[f64]) -> f64,
    },
    /// General non-negative integrand with a declared radial tail exponent
    /// tau > n such that F(x) <= C (1 + ||x||)^{-tau}.
    General {
        f: &'a dyn Fn(&[f64]) -> f64,
        tail_exponent: Option<f64>,
    },
}

/// Integral of F over R^n.
pub fn integrate_rn(integrand: &RnIntegrand, n: usize, spec: &QuadratureSpec) -> Result<Estimate> {
    spec.validate()?;
    let n_omega_n = n as f64 * unit_ball_volume(n as f64)?;
    match integrand {
        RnIntegrand::Separable { radial, angular } => {
            let radial_part = integrate_radial(radial, n, spec)?;
            let angular_part = sphere_average(angular, n, spec)?;
            Ok(radial_part.mul_independent(&angular_part).scale(n_omega_n))
        }
        RnIntegrand::General { f, tail_exponent } => {
            let tau = tail_exponent.ok_or_else(|| {
                Error::Config("non-separable integrand needs a declared tail exponent".into())
            })?;
            if tau <= n as f64 {
                return Err(Error::Config(format!(
                    "tail exponent {tau} must exceed the dimension {n}"
                )));
            }
            // importance sampling: uniform direction, radius from the
            // heavy-tailed density q(r) = s (1+r)^{-s-1}, s = tau - n,
            // so the weight F(ru) r^{n-1} / q(r) stays bounded.
            let s = tau - n as f64;
            let mut rng = seeded_rng(derive_seed(spec.seed, STREAM_RN));
            let count = spec.sphere_samples.max(2);
            let mut values = Vec::with_capacity(count);
            let mut x = vec![0.0; n];
            for idx in 0..count {
                let u = crate::sampling::sample_unit_vector(&mut rng, n);
                let unif: f64 = rand::Rng::random(&mut rng);
                let r = (1.0 - unif).powf(-1.0 / s) - 1.0;
                let q = s * (1.0 + r).powf(-s - 1.0);
                let mut pair = 0.0;
                for sign in [1.0, -1.0] {
                    for (xi, ui) in x.iter_mut().zip(&u) {
                        *xi = sign * r * ui;
                    }
                    let fv = f(&x);
                    if !fv.is_finite() {
                        return Err(Error::Integration { node: r, value: fv });
                    }
                    pair += 0.5 * fv;
                }
                let v = n_omega_n * pair * r.powi(n as i32 - 1) / q;
                if !v.is_finite() {
                    return Err(Error::DegenerateInput {
                        context: "importance weight overflow".into(),
                        sample_index: idx,
                        value: v,
                    });
                }
                values.push(v);
            }
            let (mean, se) = mean_and_se(&values);
            Ok(Estimate {
                value: mean,
                std_error: se,
                spec: *spec,
            })
        }
    }
}

/// Mean of G(E)^exponent over Haar frames E in Gr(n,i).
///
/// Frames are prefixes of a shared rotation stream derived from the spec
/// seed, so runs with different i but equal seeds are coupled by common
/// random numbers. Gr(n,n) is a single point: one evaluation at the
/// identity frame.
pub fn grassmann_functional<G: FnMut(&Frame) -> f64>(
    mut g: G,
    n: usize,
    i: usize,
    exponent: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    spec.validate()?;
    if i < 1 || i > n {
        return Err(Error::Domain(format!(
            "subspace dimension {i} out of range 1..={n}"
        )));
    }
    let check = |value: f64, sample_index: usize| -> Result<f64> {
        if !(value > 0.0) || !value.is_finite() {
            return Err(Error::DegenerateInput {
                context: "non-positive Grassmannian integrand".into(),
                sample_index,
                value,
            });
        }
        Ok(value.powf(exponent))
    };
    if i == n {
        let frame = Frame::standard(n, n);
        let y = check(g(&frame), 0)?;
        return Ok(Estimate::exact(y, *spec));
    }
    let stream = RotationStream::new(derive_seed(spec.seed, STREAM_GRASSMANN), n);
    let count = spec.grassmann_samples;
    let mut values = Vec::with_capacity(count);
    for k in 0..count {
        let frame = stream.rotation(k).prefix_frame(i);
        values.push(check(g(&frame), k)?);
    }
    let (mean, se) = mean_and_se(&values);
    Ok(Estimate {
        value: mean,
        std_error: se,
        spec: *spec,
    })
}
