//! Seeded Haar sampling on SO(n), the Grassmannian Gr(n,i) and the unit
//! sphere. Everything is driven by explicit `ChaCha8Rng` generators so that
//! identical seeds reproduce identical streams bit for bit.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{dot, normalize, Frame, Matrix, Rotation};

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Child seed for worker/batch `index`: child = hash(parent_seed, index).
///
/// Workers seeded this way draw independent streams while the reduction
/// order stays fixed by index, so concurrency never changes output bits.
pub fn derive_seed(parent: u64, index: u64) -> u64 {
    splitmix64(parent ^ splitmix64(index.wrapping_add(0xA076_1D64_78BD_642F)))
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Haar-distributed rotation, obtained by Gram-Schmidt orthonormalization of
/// an n x n standard normal matrix. The orthonormalization forces a positive
/// diagonal scaling, which makes the factorization unique and the resulting
/// distribution exactly Haar on O(n); if the determinant is -1 the last
/// column is negated, mapping Haar on the reflection component to Haar on
/// SO(n).
pub fn sample_rotation<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Rotation {
    assert!(n >= 1);
    let mut m = Matrix::zeros(n);
    for col in 0..n {
        let c = m.column_mut(col);
        for x in c.iter_mut() {
            *x = rng.sample(StandardNormal);
        }
    }
    // modified Gram-Schmidt, columns in order
    for col in 0..n {
        for prev in 0..col {
            let proj = dot(m.column(prev), m.column(col));
            let prev_col: Vec<f64> = m.column(prev).to_vec();
            let c = m.column_mut(col);
            for (x, p) in c.iter_mut().zip(&prev_col) {
                *x -= proj * p;
            }
        }
        normalize(m.column_mut(col));
    }
    if m.det() < 0.0 {
        for x in m.column_mut(n - 1).iter_mut() {
            *x = -*x;
        }
    }
    Rotation::from_orthonormal(m)
}

/// Haar-distributed frame on Gr(n,i): the first i columns of a Haar rotation.
pub fn sample_frame<R: Rng + ?Sized>(rng: &mut R, n: usize, i: usize) -> Result<Frame> {
    if i < 1 || i > n {
        return Err(Error::Domain(format!(
            "subspace dimension {i} out of range 1..={n}"
        )));
    }
    Ok(sample_rotation(rng, n).prefix_frame(i))
}

/// Uniform point on the unit sphere S^{n-1}.
pub fn sample_unit_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let mut v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        if normalize(&mut v) > 1e-100 {
            return v;
        }
    }
}

/// Random-access stream of Haar rotations: rotation k is drawn from the
/// derived seed hash(seed, k), so the stream is identical no matter how many
/// columns of each rotation a caller consumes. Frames for every subspace
/// dimension i are prefixes of the same rotations (common random numbers).
#[derive(Debug, Clone, Copy)]
pub struct RotationStream {
    pub seed: u64,
    pub n: usize,
}

impl RotationStream {
    pub fn new(seed: u64, n: usize) -> Self {
        RotationStream { seed, n }
    }

    pub fn rotation(&self, k: usize) -> Rotation {
        let mut rng = seeded_rng(derive_seed(self.seed, k as u64));
        sample_rotation(&mut rng, self.n)
    }
}

/// Antithetic sphere sample set: `n_pairs` base points u_k, each standing for
/// the pair (u_k, -u_k). Base points are grouped into contiguous batches for
/// empirical error estimation of statistics shared across frames.
#[derive(Debug, Clone)]
pub struct SphereSamples {
    n: usize,
    n_pairs: usize,
    n_batches: usize,
    points: Vec<f64>,
}

impl SphereSamples {
    /// `requested` counts sphere samples; pairs = ceil(requested / 2).
    pub fn generate(n: usize, requested: usize, seed: u64, n_batches: usize) -> Self {
        let n_pairs = requested.div_ceil(2).max(1);
        let n_batches = n_batches.clamp(1, n_pairs);
        let mut rng = seeded_rng(seed);
        let mut points = Vec::with_capacity(n_pairs * n);
        for _ in 0..n_pairs {
            points.extend_from_slice(&sample_unit_vector(&mut rng, n));
        }
        SphereSamples {
            n,
            n_pairs,
            n_batches,
            points,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn n_pairs(&self) -> usize {
        self.n_pairs
    }

    pub fn n_batches(&self) -> usize {
        self.n_batches
    }

    pub fn point(&self, k: usize) -> &[f64] {
        &self.points[k * self.n..(k + 1) * self.n]
    }

    /// Pair index ranges of the batches (contiguous, deterministic).
    pub fn batch_ranges(&self) -> Vec<std::ops::Range<usize>> {
        let b = self.n_batches;
        let base = self.n_pairs / b;
        let rem = self.n_pairs % b;
        let mut out = Vec::with_capacity(b);
        let mut start = 0;
        for k in 0..b {
            let len = base + usize::from(k < rem);
            out.push(start..start + len);
            start += len;
        }
        out
    }

    /// Antithetic Monte Carlo mean of h over the sphere; returns
    /// (mean, standard error). Both members of each pair are evaluated.
    pub fn average<F: Fn(&[f64]) -> f64>(&self, h: F) -> (f64, f64) {
        let mut neg = vec![0.0; self.n];
        let mut values = Vec::with_capacity(self.n_pairs);
        for k in 0..self.n_pairs {
            let u = self.point(k);
            for (m, &x) in neg.iter_mut().zip(u) {
                *m = -x;
            }
            values.push(0.5 * (h(u) + h(&neg)));
        }
        crate::quadrature::mean_and_se(&values)
    }

    /// Sample second-moment matrix (1/N) sum u u^T, identical for both
    /// members of each pair. Converges to I/n.
    pub fn second_moment(&self) -> Matrix {
        self.moment_over(0..self.n_pairs)
    }

    /// Per-batch second-moment matrices.
    pub fn second_moment_batches(&self) -> Vec<Matrix> {
        self.batch_ranges()
            .into_iter()
            .map(|r| self.moment_over(r))
            .collect()
    }

    fn moment_over(&self, range: std::ops::Range<usize>) -> Matrix {
        let mut m = Matrix::zeros(self.n);
        let count = range.len().max(1) as f64;
        for k in range {
            let u = self.point(k);
            for j in 0..self.n {
                let uj = u[j];
                let col = m.column_mut(j);
                for i in 0..self.n {
                    col[i] += u[i] * uj;
                }
            }
        }
        for j in 0..self.n {
            for x in m.column_mut(j).iter_mut() {
                *x /= count;
            }
        }
        m
    }
}
