//! The projection-averaged Sobolev functionals: directional gradient
//! energies, the family E_{i,p}, its zonoid-norm generalization, the
//! bounded-variation counterparts for characteristic functions, sharpness
//! ratios and the monotone chain report.
//!
//! Radial profiles collapse exactly: the Grassmannian integrand is constant,
//! so every E_{i,p} reduces to the i = n value computed by radial quadrature
//! alone. Anisotropic profiles run through a common-random-numbers engine
//! that shares one rotation stream and one sphere sample set across all
//! subspace dimensions, which makes chain gaps low-noise.

use std::collections::BTreeMap;

use crate::bodies::{ConvexBody, DiscreteSphereMeasure, Polytope};
use crate::constants::{q_coefficient, sharp_constant, unit_ball_volume};
use crate::error::{Error, Result};
use crate::linalg::{dot, Frame, Matrix};
use crate::profiles::{Profile, RadialForm};
use crate::quadrature::{
    grassmann_functional, integrate_radial, mean_and_se, sphere_average, Estimate, QuadratureSpec,
    MOMENT_BATCHES, STREAM_GRASSMANN, STREAM_SPHERE,
};
use crate::sampling::{derive_seed, RotationStream, SphereSamples};

/// Per-dimension values and sharpness ratios of one chain evaluation.
#[derive(Debug, Clone)]
pub struct FunctionalReport {
    pub values: BTreeMap<usize, Estimate>,
    pub ratios: BTreeMap<usize, Estimate>,
    pub gaps: Vec<ChainGap>,
    pub seed: u64,
    pub spec: QuadratureSpec,
}

/// Estimated difference E_{j,p} - E_{i,p} for i < j (non-negative up to
/// statistical noise by the monotone chain).
#[derive(Debug, Clone, Copy)]
pub struct ChainGap {
    pub lower_i: usize,
    pub upper_j: usize,
    pub gap: Estimate,
}

fn check_p_range(n: usize, p: f64) -> Result<()> {
    if !(p >= 1.0 && p < n as f64) {
        return Err(Error::Domain(format!("need 1 <= p < n, got p={p}, n={n}")));
    }
    Ok(())
}

fn require_gradient(profile: &Profile) -> Result<()> {
    if !profile.supports_gradient() {
        return Err(Error::Config(
            "characteristic-function profiles are handled by the BV functionals".into(),
        ));
    }
    Ok(())
}

/// Radial factor int_0^inf |rho'(r)|^p r^{n-1} dr as an estimate: closed
/// form where the profile provides it, compactified Gauss-Legendre
/// otherwise.
fn radial_gradient_factor(
    form: &RadialForm,
    n: usize,
    p: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    let closed = match form {
        RadialForm::Gaussian { .. } => Some(form.grad_energy_radial_closed(n, p)?),
        RadialForm::Power { p: form_p, .. } => {
            if (form_p - p).abs() <= 1e-12 {
                Some(form.grad_energy_radial_closed(n, p)?)
            } else {
                None
            }
        }
    };
    match closed {
        Some(v) => Ok(Estimate::exact(v, *spec)),
        None => integrate_radial(|r| form.grad_abs(r).powf(p), n, spec),
    }
}

/// ||f||_{p*} with p* = np/(n-p): closed form when the variant provides
/// one, radial quadrature otherwise.
pub fn lpstar_norm(profile: &Profile, p: f64, spec: &QuadratureSpec) -> Result<Estimate> {
    let n = profile.dim();
    check_p_range(n, p)?;
    if let Some(v) = profile.lpstar_norm_closed(p)? {
        return Ok(Estimate::exact(v, *spec));
    }
    lpstar_norm_quadrature(profile, p, spec)
}

/// Quadrature route for ||f||_{p*} (radial reduction of the smooth
/// variants); used to cross-check the closed forms.
pub fn lpstar_norm_quadrature(
    profile: &Profile,
    p: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    let n = profile.dim();
    check_p_range(n, p)?;
    let n_f = n as f64;
    let p_star = n_f * p / (n_f - p);
    match profile.smooth_structure() {
        Some((form, _, det_abs)) => {
            let radial = integrate_radial(|r| form.value(r).abs().powf(p_star), n, spec)?;
            let scale = profile.amplitude().abs().powf(p_star) * n_f * unit_ball_volume(n_f)?
                / det_abs;
            Ok(radial.scale(scale).powf(1.0 / p_star))
        }
        None => {
            // characteristic functions: ||f||_{p*} = |amp| |K|^{1/p*}
            profile
                .lpstar_norm_closed(p)?
                .map(|v| Estimate::exact(v, *spec))
                .ok_or_else(|| Error::Config("no norm route for this profile".into()))
        }
    }
}

/// Directional gradient energy int ||grad f(x) | F||^p dx for an explicit
/// frame F, via the separable product: radial quadrature times the
/// antithetic sphere average of the projected angular factor.
pub fn directional_energy(
    profile: &Profile,
    frame: &Frame,
    p: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    require_gradient(profile)?;
    let n = profile.dim();
    if frame.dim_ambient() != n {
        return Err(Error::Domain("frame dimension mismatch".into()));
    }
    let (form, shape, det_abs) = profile.smooth_structure().expect("smooth profile");
    let radial = radial_gradient_factor(&form, n, p, spec)?;
    let angular = sphere_average(
        |u| {
            let w = match shape {
                Some(a) => a.matvec_t(u),
                None => u.to_vec(),
            };
            let len = crate::linalg::project_length(&w, frame);
            if p == 2.0 {
                len * len
            } else {
                len.powf(p)
            }
        },
        n,
        spec,
    )?;
    let scale = profile.amplitude().abs().powf(p) * n as f64 * unit_ball_volume(n as f64)?
        / det_abs;
    Ok(radial.mul_independent(&angular).scale(scale))
}

/// Total gradient energy int ||grad f||^p dx.
pub fn gradient_energy(profile: &Profile, p: f64, spec: &QuadratureSpec) -> Result<Estimate> {
    require_gradient(profile)?;
    if let Some(v) = profile.gradient_energy_closed(p)? {
        return Ok(Estimate::exact(v, *spec));
    }
    let n = profile.dim();
    let full = Frame::standard(n, n);
    directional_energy(profile, &full, p, spec)
}

// ---------------------------------------------------------------------------
// common-random-numbers engine for anisotropic profiles
// ---------------------------------------------------------------------------

fn batch_weights(samples: &SphereSamples) -> Vec<f64> {
    let total = samples.n_pairs() as f64;
    samples
        .batch_ranges()
        .into_iter()
        .map(|r| r.len() as f64 / total)
        .collect()
}

fn quad_form(m: &Matrix, v: &[f64]) -> f64 {
    let mut s = 0.0;
    for j in 0..m.n {
        let col = m.column(j);
        let vj = v[j];
        for i in 0..m.n {
            s += v[i] * col[i] * vj;
        }
    }
    s
}

/// Angular averages per batch for a weighted family of directions:
/// g_b = (1/|batch b|) sum_u sum_m w_m |u . d_m|^p. The p = 2 case
/// collapses onto the batch second-moment matrices.
struct AngularAccumulator<'a> {
    samples: &'a SphereSamples,
    weights: Vec<f64>,
    moments: Option<Vec<Matrix>>,
}

impl<'a> AngularAccumulator<'a> {
    fn new(samples: &'a SphereSamples, p: f64) -> Self {
        let moments = if p == 2.0 {
            Some(samples.second_moment_batches())
        } else {
            None
        };
        AngularAccumulator {
            samples,
            weights: batch_weights(samples),
            moments,
        }
    }

    fn n_batches(&self) -> usize {
        self.weights.len()
    }

    /// Per-batch values of mean_u sum_m w_m |u . d_m|^p (additive over the
    /// direction family; the zonoid-norm integrand has this form for every
    /// p).
    fn per_batch(&self, dirs: &[Vec<f64>], dir_weights: &[f64], p: f64) -> Vec<f64> {
        if let Some(moments) = &self.moments {
            return moments
                .iter()
                .map(|s| {
                    dirs.iter()
                        .zip(dir_weights)
                        .map(|(d, w)| w * quad_form(s, d))
                        .sum()
                })
                .collect();
        }
        let ranges = self.samples.batch_ranges();
        let mut out = Vec::with_capacity(ranges.len());
        for r in ranges {
            let count = r.len().max(1) as f64;
            let mut sum = 0.0;
            for k in r {
                let u = self.samples.point(k);
                for (d, w) in dirs.iter().zip(dir_weights) {
                    sum += w * dot(u, d).abs().powf(p);
                }
            }
            out.push(sum / count);
        }
        out
    }

    /// Per-batch values of mean_u ( sum_{m < cut} (u . d_m)^2 )^{p/2} for
    /// each prefix cut (ascending). This is the projected-length integrand
    /// of a frame spanned by the first `cut` directions; it is additive
    /// over m only when p = 2, where it collapses onto the batch moment
    /// matrices. Returns `out[cut_index][batch]`.
    fn prefix_frame_batches(&self, dirs: &[Vec<f64>], cuts: &[usize], p: f64) -> Vec<Vec<f64>> {
        let n_batches = self.n_batches();
        let mut out = vec![vec![0.0; n_batches]; cuts.len()];
        if cuts.is_empty() {
            return out;
        }
        let max_cut = *cuts.last().unwrap();
        if let Some(moments) = &self.moments {
            for (b, s) in moments.iter().enumerate() {
                let mut acc = 0.0;
                let mut cut_idx = 0;
                for (m, d) in dirs.iter().take(max_cut).enumerate() {
                    acc += quad_form(s, d);
                    while cut_idx < cuts.len() && cuts[cut_idx] == m + 1 {
                        out[cut_idx][b] = acc;
                        cut_idx += 1;
                    }
                }
            }
            return out;
        }
        let half_p = 0.5 * p;
        for (b, r) in self.samples.batch_ranges().into_iter().enumerate() {
            let count = r.len().max(1) as f64;
            let mut sums = vec![0.0; cuts.len()];
            for k in r {
                let u = self.samples.point(k);
                let mut ssq = 0.0;
                let mut cut_idx = 0;
                for (m, d) in dirs.iter().take(max_cut).enumerate() {
                    let c = dot(u, d);
                    ssq += c * c;
                    while cut_idx < cuts.len() && cuts[cut_idx] == m + 1 {
                        sums[cut_idx] += ssq.powf(half_p);
                        cut_idx += 1;
                    }
                }
            }
            for (cut_idx, s) in sums.iter().enumerate() {
                out[cut_idx][b] = s / count;
            }
        }
        out
    }

    fn combine(&self, per_batch: &[f64]) -> f64 {
        per_batch
            .iter()
            .zip(&self.weights)
            .map(|(g, w)| g * w)
            .sum()
    }
}

/// Raw per-i chain data produced by the CRN engine; enough to build value
/// estimates and paired gap estimates.
struct ChainData {
    n: usize,
    /// Y_k = (q_i c0 g_{k,i})^{-n/p} per rotation, one row per i.
    y: Vec<Vec<f64>>,
    /// E computed from each sphere batch alone, one row per i.
    e_batch: Vec<Vec<f64>>,
    /// mean of Y per i.
    m: Vec<f64>,
    /// relative uncertainty of the shared radial factor, divided by p.
    radial_rel: f64,
}

impl ChainData {
    fn estimate(&self, idx: usize, spec: &QuadratureSpec) -> Estimate {
        let n_f = self.n as f64;
        let (m, se_m) = mean_and_se(&self.y[idx]);
        debug_assert!((m - self.m[idx]).abs() <= 1e-12 * m.abs().max(1e-300));
        let value = m.powf(-1.0 / n_f);
        let grass_se = value / n_f * se_m / m;
        let (_, sphere_se) = mean_and_se(&self.e_batch[idx]);
        let radial_se = value * self.radial_rel;
        Estimate {
            value,
            std_error: (grass_se.powi(2) + sphere_se.powi(2) + radial_se.powi(2)).sqrt(),
            spec: *spec,
        }
    }

    /// Paired estimate of E_{j} - E_{i} (indices into i_list, low < high).
    fn gap(&self, idx_low: usize, idx_high: usize, spec: &QuadratureSpec) -> Estimate {
        let n_f = self.n as f64;
        let m_low = self.m[idx_low];
        let m_high = self.m[idx_high];
        let e_low = m_low.powf(-1.0 / n_f);
        let e_high = m_high.powf(-1.0 / n_f);
        let gap = e_high - e_low;
        // delta method on the paired per-rotation samples
        let a_low = e_low / (n_f * m_low);
        let a_high = e_high / (n_f * m_high);
        let d: Vec<f64> = self.y[idx_high]
            .iter()
            .zip(&self.y[idx_low])
            .map(|(yh, yl)| a_low * yl - a_high * yh)
            .collect();
        let (_, grass_se) = mean_and_se(&d);
        // paired sphere-batch differences
        let db: Vec<f64> = self.e_batch[idx_high]
            .iter()
            .zip(&self.e_batch[idx_low])
            .map(|(h, l)| h - l)
            .collect();
        let (_, sphere_se) = mean_and_se(&db);
        let radial_se = gap.abs() * self.radial_rel;
        Estimate {
            value: gap,
            std_error: (grass_se.powi(2) + sphere_se.powi(2) + radial_se.powi(2)).sqrt(),
            spec: *spec,
        }
    }
}

/// CRN evaluation of E_{i,p} for every i in `i_list` on an anisotropic
/// smooth profile. `i = n` rows need no rotations; all other rows share
/// one rotation stream and one sphere sample set.
fn chain_engine(profile: &Profile, p: f64, i_list: &[usize], spec: &QuadratureSpec) -> Result<ChainData> {
    let n = profile.dim();
    let (form, shape, det_abs) = profile.smooth_structure().expect("smooth profile");
    let radial = radial_gradient_factor(&form, n, p, spec)?;
    let c0 = profile.amplitude().abs().powf(p) * n as f64 * unit_ball_volume(n as f64)?
        / det_abs
        * radial.value;
    let radial_rel = if radial.value != 0.0 {
        radial.std_error / radial.value / p
    } else {
        0.0
    };
    let exponent = -(n as f64) / p;

    let samples = SphereSamples::generate(
        n,
        spec.sphere_samples,
        derive_seed(spec.seed, STREAM_SPHERE),
        MOMENT_BATCHES,
    );
    let angular = AngularAccumulator::new(&samples, p);
    let n_batches = angular.n_batches();
    let q: Vec<f64> = i_list
        .iter()
        .map(|&i| q_coefficient(i as u32, p))
        .collect::<Result<_>>()?;

    let count = spec.grassmann_samples;
    let cuts: Vec<usize> = i_list.iter().copied().filter(|&i| i < n).collect();
    let cut_to_idx: Vec<usize> = cuts
        .iter()
        .map(|&i| i_list.iter().position(|&j| j == i).unwrap())
        .collect();
    let rotations = if cuts.is_empty() { 1 } else { count };

    let mut y: Vec<Vec<f64>> = vec![Vec::with_capacity(rotations); i_list.len()];
    // accumulate per-batch means of Y for the batch-restricted estimates
    let mut y_batch_sum: Vec<Vec<f64>> = vec![vec![0.0; n_batches]; i_list.len()];

    let stream = RotationStream::new(derive_seed(spec.seed, STREAM_GRASSMANN), n);
    let max_cut = cuts.last().copied().unwrap_or(0);

    for k in 0..rotations {
        if cuts.is_empty() {
            break;
        }
        let rot = stream.rotation(k);
        // image directions A b_m of the rotation columns (A = id if isotropic)
        let dirs: Vec<Vec<f64>> = (0..max_cut)
            .map(|m| match shape {
                Some(a) => a.matvec(rot.column(m)),
                None => rot.column(m).to_vec(),
            })
            .collect();
        let per_cut = angular.prefix_frame_batches(&dirs, &cuts, p);
        for (cut_idx, per_batch) in per_cut.iter().enumerate() {
            let idx = cut_to_idx[cut_idx];
            let g_full = angular.combine(per_batch);
            let inner = q[idx] * c0 * g_full;
            if !(inner > 0.0) {
                return Err(Error::DegenerateProfile { frame_index: k });
            }
            y[idx].push(inner.powf(exponent));
            for (b, &g_b) in per_batch.iter().enumerate() {
                let inner_b = q[idx] * c0 * g_b;
                if !(inner_b > 0.0) {
                    return Err(Error::DegenerateProfile { frame_index: k });
                }
                y_batch_sum[idx][b] += inner_b.powf(exponent);
            }
        }
    }

    // i = n rows: the projection is the identity regardless of the frame,
    // so the angular factor is mean_u ||A^T u||^p from the same samples
    let full_dirs: Vec<Vec<f64>> = {
        let id = Matrix::identity(n);
        (0..n)
            .map(|m| match shape {
                Some(a) => a.matvec(id.column(m)),
                None => id.column(m).to_vec(),
            })
            .collect()
    };
    let full_batch = angular
        .prefix_frame_batches(&full_dirs, &[n], p)
        .pop()
        .unwrap();

    let n_f = n as f64;
    let mut m_vec = Vec::with_capacity(i_list.len());
    let mut e_batch: Vec<Vec<f64>> = Vec::with_capacity(i_list.len());
    for (idx, &i) in i_list.iter().enumerate() {
        if i == n {
            let g_full = angular.combine(&full_batch);
            let inner = q[idx] * c0 * g_full;
            if !(inner > 0.0) {
                return Err(Error::DegenerateProfile { frame_index: 0 });
            }
            let y_const = inner.powf(exponent);
            y[idx] = vec![y_const; rotations];
            m_vec.push(y_const);
            e_batch.push(
                full_batch
                    .iter()
                    .map(|&g_b| (q[idx] * c0 * g_b).powf(exponent).powf(-1.0 / n_f))
                    .collect(),
            );
        } else {
            let (m, _) = mean_and_se(&y[idx]);
            m_vec.push(m);
            e_batch.push(
                y_batch_sum[idx]
                    .iter()
                    .map(|&s| (s / rotations as f64).powf(-1.0 / n_f))
                    .collect(),
            );
        }
    }

    Ok(ChainData {
        n,
        y,
        e_batch,
        m: m_vec,
        radial_rel,
    })
}

/// Exact collapse for radial profiles: constant Grassmannian integrand,
/// E_{i,p}(f) = (q_{n,p} int ||grad f||^p)^{1/p} for every i.
fn radial_collapse(profile: &Profile, p: f64, spec: &QuadratureSpec) -> Result<Estimate> {
    let n = profile.dim();
    let total = gradient_energy(profile, p, spec)?;
    let q_n = q_coefficient(n as u32, p)?;
    Ok(total.scale(q_n).powf(1.0 / p))
}

/// The projection-averaged Sobolev functional
/// E_{i,p}(f) = ( int_{Gr(n,i)} ( q_{i,p} int ||grad f|E||^p dx )^{-n/p} dE )^{-1/n}.
pub fn e_ip(profile: &Profile, i: usize, p: f64, spec: &QuadratureSpec) -> Result<Estimate> {
    require_gradient(profile)?;
    let n = profile.dim();
    check_p_range(n, p)?;
    if i < 1 || i > n {
        return Err(Error::Domain(format!("need 1 <= i <= n, got i={i}, n={n}")));
    }
    if profile.is_radial() {
        return radial_collapse(profile, p, spec);
    }
    if i == n {
        // Gr(n,n) collapse: q_{n,p}^{1/p} ||grad f||_p, no Grassmannian sampling
        let total = gradient_energy(profile, p, spec)?;
        let q_n = q_coefficient(n as u32, p)?;
        return Ok(total.scale(q_n).powf(1.0 / p));
    }
    let data = chain_engine(profile, p, &[i], spec)?;
    Ok(data.estimate(0, spec))
}

/// Zonoid-norm generalization: the Euclidean projection norm is replaced by
/// the support function of the rotated zonoid generated by mu,
///   E^mu_{i,p}(f) = ( int_{SO(n)} ( int h(phi Z_p^mu, grad f(x))^p dx )^{-n/p} dphi )^{-1/n}.
/// mu must be even and span E_i, 1 <= i <= n-1.
pub fn e_ip_zonoid(
    profile: &Profile,
    i: usize,
    p: f64,
    mu: &DiscreteSphereMeasure,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    require_gradient(profile)?;
    let n = profile.dim();
    check_p_range(n, p)?;
    check_subspace_measure(mu, n, i)?;

    let (form, shape, det_abs) = profile.smooth_structure().expect("smooth profile");
    let radial = radial_gradient_factor(&form, n, p, spec)?;
    let c0 = profile.amplitude().abs().powf(p) * n as f64 * unit_ball_volume(n as f64)?
        / det_abs
        * radial.value;
    let radial_rel = if radial.value != 0.0 {
        radial.std_error / radial.value / p
    } else {
        0.0
    };
    let exponent = -(n as f64) / p;

    let samples = SphereSamples::generate(
        n,
        spec.sphere_samples,
        derive_seed(spec.seed, STREAM_SPHERE),
        MOMENT_BATCHES,
    );
    let angular = AngularAccumulator::new(&samples, p);
    let n_batches = angular.n_batches();

    let stream = RotationStream::new(derive_seed(spec.seed, STREAM_GRASSMANN), n);
    let count = spec.grassmann_samples;
    let atom_weights: Vec<f64> = (0..mu.len()).map(|a| mu.weight(a)).collect();

    let mut y = Vec::with_capacity(count);
    let mut y_batch_sum = vec![0.0; n_batches];
    for k in 0..count {
        let rot = stream.rotation(k);
        // directions A phi u_m for the zonoid atoms
        let dirs: Vec<Vec<f64>> = (0..mu.len())
            .map(|a| {
                let rotated = rot.apply(mu.dir(a));
                match shape {
                    Some(mat) => mat.matvec(&rotated),
                    None => rotated,
                }
            })
            .collect();
        let per_batch = angular.per_batch(&dirs, &atom_weights, p);
        let g_full = angular.combine(&per_batch);
        let inner = c0 * g_full;
        if !(inner > 0.0) {
            return Err(Error::DegenerateProfile { frame_index: k });
        }
        y.push(inner.powf(exponent));
        for (b, &g_b) in per_batch.iter().enumerate() {
            y_batch_sum[b] += (c0 * g_b).powf(exponent);
        }
    }
    let n_f = n as f64;
    let (m, se_m) = mean_and_se(&y);
    let value = m.powf(-1.0 / n_f);
    let grass_se = value / n_f * se_m / m;
    let e_b: Vec<f64> = y_batch_sum
        .iter()
        .map(|&s| (s / count as f64).powf(-1.0 / n_f))
        .collect();
    let (_, sphere_se) = mean_and_se(&e_b);
    let radial_se = value * radial_rel;
    Ok(Estimate {
        value,
        std_error: (grass_se.powi(2) + sphere_se.powi(2) + radial_se.powi(2)).sqrt(),
        spec: *spec,
    })
}

fn check_subspace_measure(mu: &DiscreteSphereMeasure, n: usize, i: usize) -> Result<()> {
    if mu.dim() != n {
        return Err(Error::Config("measure dimension mismatch".into()));
    }
    if i < 1 || i + 1 > n {
        return Err(Error::Domain(format!(
            "zonoid functionals need 1 <= i <= n-1, got i={i}, n={n}"
        )));
    }
    if !mu.is_even() {
        return Err(Error::Config("generator measure must be even".into()));
    }
    // atoms must lie in E_i and span it
    for a in 0..mu.len() {
        let d = mu.dir(a);
        for &coord in &d[i..] {
            if coord.abs() > 1e-12 {
                return Err(Error::Config(format!(
                    "atom {a} leaves the subspace E_{i}"
                )));
            }
        }
    }
    let moment = mu.second_moment();
    let mut restricted = Matrix::zeros(i);
    for r in 0..i {
        for c in 0..i {
            restricted.set(r, c, moment.get(r, c));
        }
    }
    let eig = restricted.symmetric_eigenvalues();
    let max = eig.last().copied().unwrap_or(0.0);
    if !(eig.first().copied().unwrap_or(0.0) > 1e-12 * max.max(1e-300)) {
        return Err(Error::DegenerateNorm(format!(
            "atoms do not span E_{i}"
        )));
    }
    Ok(())
}

fn body_as_polytope(body: &ConvexBody) -> Result<Polytope> {
    match body {
        ConvexBody::Polytope(p) => Ok(p.clone()),
        ConvexBody::Ball(r) => {
            let approx = Polytope::ball_approx(3);
            if !(*r > 0.0) {
                return Err(Error::Domain("ball radius must be positive".into()));
            }
            if (*r - 1.0).abs() < 1e-15 {
                Ok(approx)
            } else {
                approx.scaled(*r)
            }
        }
        ConvexBody::Ellipsoid(e) => {
            if e.dim() != 3 {
                return Err(Error::Config(
                    "bundled ball approximations cover dimension 3 only".into(),
                ));
            }
            Polytope::ball_approx(3).linear_image(e.shape())
        }
        ConvexBody::Zonoid(_) => Err(Error::Config(
            "BV functionals take Ball, Polytope or Ellipsoid bodies".into(),
        )),
    }
}

/// BV functional of a characteristic function, evaluated through the
/// surface-area measure of the body:
///   E_i(1_K) = ( int_{Gr(n,i)} ( q_{i,1} int ||u|E|| dS(K,u) )^{-n} dE )^{-1/n}.
/// Balls and ellipsoids run on fine polytope approximations (dimension 3).
pub fn e_i_bv(body: &ConvexBody, i: usize, spec: &QuadratureSpec) -> Result<Estimate> {
    let polytope = body_as_polytope(body)?;
    let n = polytope.dim();
    if i < 1 || i > n {
        return Err(Error::Domain(format!("need 1 <= i <= n, got i={i}, n={n}")));
    }
    let measure = polytope.surface_area_measure()?;
    let q_i = q_coefficient(i as u32, 1.0)?;
    let inner = grassmann_functional(
        |frame| {
            let mut s = 0.0;
            for a in 0..measure.len() {
                s += measure.weight(a) * crate::linalg::project_length(measure.dir(a), frame);
            }
            q_i * s
        },
        n,
        i,
        -(n as f64),
        spec,
    )?;
    Ok(inner.powf(-1.0 / n as f64))
}

/// Zonoid-norm BV functional: the projected-length integrand is replaced by
/// the support function of the rotated zonoid Z^mu (p = 1).
pub fn e_i_bv_zonoid(
    body: &ConvexBody,
    i: usize,
    mu: &DiscreteSphereMeasure,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    let polytope = body_as_polytope(body)?;
    let n = polytope.dim();
    check_subspace_measure(mu, n, i)?;
    let measure = polytope.surface_area_measure()?;
    let inner = grassmann_functional(
        |frame| {
            // atoms of mu live in E_i, so phi u_m depends only on the frame
            let rotated: Vec<Vec<f64>> = (0..mu.len())
                .map(|m| {
                    let d = mu.dir(m);
                    let mut out = vec![0.0; n];
                    for c in 0..i {
                        let coeff = d[c];
                        if coeff != 0.0 {
                            for (o, b) in out.iter_mut().zip(frame.basis_vector(c)) {
                                *o += coeff * b;
                            }
                        }
                    }
                    out
                })
                .collect();
            let mut s = 0.0;
            for a in 0..measure.len() {
                let u = measure.dir(a);
                let mut h = 0.0;
                for (m, d) in rotated.iter().enumerate() {
                    h += mu.weight(m) * dot(u, d).abs();
                }
                s += measure.weight(a) * h;
            }
            s
        },
        n,
        i,
        -(n as f64),
        spec,
    )?;
    Ok(inner.powf(-1.0 / n as f64))
}

/// Sharp lower bound c_{n,1} ||1_K||_{n/(n-1)} of the BV functionals.
pub fn bv_sharp_bound(body: &ConvexBody, n: usize) -> Result<f64> {
    let profile = Profile::char_of_body(body.clone(), n)?;
    let norm = profile
        .lpstar_norm_closed(1.0)?
        .expect("characteristic functions have closed-form norms");
    Ok(sharp_constant(n as u32, 1.0)? * norm)
}

/// Ratio E_{i,p}(f) / (c_{n,p} ||f||_{p*}); the deficit is ratio - 1 and is
/// zero exactly on the extremizers.
pub fn sobolev_ratio(profile: &Profile, i: usize, p: f64, spec: &QuadratureSpec) -> Result<Estimate> {
    let n = profile.dim();
    let value = e_ip(profile, i, p, spec)?;
    let norm = lpstar_norm(profile, p, spec)?;
    let c = sharp_constant(n as u32, p)?;
    Ok(value.div_independent(&norm.scale(c)))
}

/// E_{i,p}(f) for i = 1..n with common random numbers, plus sharpness
/// ratios and paired gap estimates for every i < j. Errors with a
/// diagnostic report when an adjacent gap is negative beyond 3 combined
/// standard errors.
pub fn chain_report(profile: &Profile, p: f64, spec: &QuadratureSpec) -> Result<FunctionalReport> {
    require_gradient(profile)?;
    let n = profile.dim();
    check_p_range(n, p)?;
    let i_list: Vec<usize> = (1..=n).collect();

    let mut values = BTreeMap::new();
    let mut gaps = Vec::new();

    if profile.is_radial() {
        let e = radial_collapse(profile, p, spec)?;
        for &i in &i_list {
            values.insert(i, e);
        }
        for a in 0..i_list.len() {
            for b in (a + 1)..i_list.len() {
                gaps.push(ChainGap {
                    lower_i: i_list[a],
                    upper_j: i_list[b],
                    gap: Estimate::exact(0.0, *spec),
                });
            }
        }
    } else {
        let data = chain_engine(profile, p, &i_list, spec)?;
        for (idx, &i) in i_list.iter().enumerate() {
            values.insert(i, data.estimate(idx, spec));
        }
        for a in 0..i_list.len() {
            for b in (a + 1)..i_list.len() {
                gaps.push(ChainGap {
                    lower_i: i_list[a],
                    upper_j: i_list[b],
                    gap: data.gap(a, b, spec),
                });
            }
        }
    }

    let norm = lpstar_norm(profile, p, spec)?;
    let c = sharp_constant(n as u32, p)?;
    let denom = norm.scale(c);
    let ratios: BTreeMap<usize, Estimate> = values
        .iter()
        .map(|(&i, est)| (i, est.div_independent(&denom)))
        .collect();

    // monotone chain check on adjacent gaps
    let mut violations = Vec::new();
    for g in &gaps {
        if g.upper_j == g.lower_i + 1 && g.gap.value < -3.0 * g.gap.std_error {
            violations.push(format!(
                "E_{{{},p}} - E_{{{},p}} = {:.6e} +- {:.2e}",
                g.upper_j, g.lower_i, g.gap.value, g.gap.std_error
            ));
        }
    }
    if !violations.is_empty() {
        let mut diagnostics = String::new();
        for (i, est) in &values {
            diagnostics.push_str(&format!(
                "  E_{{{i},{p}}} = {:.9} +- {:.2e}\n",
                est.value, est.std_error
            ));
        }
        diagnostics.push_str(&violations.join("\n"));
        return Err(Error::ChainViolation { diagnostics });
    }

    Ok(FunctionalReport {
        values,
        ratios,
        gaps,
        seed: spec.seed,
        spec: *spec,
    })
}
