//! Even atomic measures on the unit sphere: the carrier for surface-area
//! measures, zonoid generators and discretized uniform measures.

use crate::error::{Error, Result};
use crate::linalg::{dot, Matrix, Rotation};
use crate::sampling::{seeded_rng, SphereSamples};

const UNIT_TOL: f64 = 1e-12;
const PAIR_TOL: f64 = 1e-9;

/// Atomic measure sum_k w_k delta_{u_k} with unit directions u_k and
/// positive weights w_k. The `even` flag asserts that atoms come in
/// (u, -u) pairs of equal weight.
#[derive(Debug, Clone)]
pub struct DiscreteSphereMeasure {
    n: usize,
    dirs: Vec<f64>,
    weights: Vec<f64>,
    even: bool,
}

impl DiscreteSphereMeasure {
    pub fn new(n: usize, atoms: Vec<(Vec<f64>, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::Config("measure needs at least one atom".into()));
        }
        let mut dirs = Vec::with_capacity(atoms.len() * n);
        let mut weights = Vec::with_capacity(atoms.len());
        for (k, (u, w)) in atoms.into_iter().enumerate() {
            if u.len() != n {
                return Err(Error::Config(format!("atom {k} has wrong dimension")));
            }
            let norm = dot(&u, &u).sqrt();
            if (norm - 1.0).abs() > UNIT_TOL {
                return Err(Error::Config(format!(
                    "atom {k} direction has norm {norm}, expected 1"
                )));
            }
            if !(w > 0.0) {
                return Err(Error::Config(format!("atom {k} has non-positive weight {w}")));
            }
            dirs.extend_from_slice(&u);
            weights.push(w);
        }
        let mut measure = DiscreteSphereMeasure {
            n,
            dirs,
            weights,
            even: false,
        };
        measure.even = measure.detect_even();
        Ok(measure)
    }

    /// Build an even measure from (direction, weight) pairs; each pair
    /// contributes atoms at +u and -u with the given weight.
    pub fn new_even(n: usize, pairs: Vec<(Vec<f64>, f64)>) -> Result<Self> {
        let mut atoms = Vec::with_capacity(pairs.len() * 2);
        for (u, w) in pairs {
            let neg: Vec<f64> = u.iter().map(|x| -x).collect();
            atoms.push((u, w));
            atoms.push((neg, w));
        }
        let m = Self::new(n, atoms)?;
        debug_assert!(m.even);
        Ok(m)
    }

    /// `count` antithetic uniform atoms on S^{i-1} subset E_i subset R^n with
    /// total mass 1; the discretization of the normalized spherical measure
    /// sigma_i / (i omega_i).
    pub fn uniform_on_subsphere(n: usize, i: usize, count: usize, seed: u64) -> Result<Self> {
        if i < 1 || i > n {
            return Err(Error::Domain(format!(
                "subsphere dimension {i} out of range 1..={n}"
            )));
        }
        if count < 2 {
            return Err(Error::Config("need at least 2 atoms".into()));
        }
        if i == 1 {
            let mut e1 = vec![0.0; n];
            e1[0] = 1.0;
            return Self::new_even(n, vec![(e1, 0.5)]);
        }
        let n_pairs = count.div_ceil(2);
        let mut rng = seeded_rng(seed);
        let w = 1.0 / (2 * n_pairs) as f64;
        let mut pairs = Vec::with_capacity(n_pairs);
        for _ in 0..n_pairs {
            let low = crate::sampling::sample_unit_vector(&mut rng, i);
            let mut u = vec![0.0; n];
            u[..i].copy_from_slice(&low);
            pairs.push((u, w));
        }
        Self::new_even(n, pairs)
    }

    fn detect_even(&self) -> bool {
        let m = self.len();
        if m % 2 != 0 {
            return false;
        }
        let mut matched = vec![false; m];
        for k in 0..m {
            if matched[k] {
                continue;
            }
            let uk = self.dir(k);
            let wk = self.weight(k);
            let mut found = false;
            for l in (k + 1)..m {
                if matched[l] {
                    continue;
                }
                let ul = self.dir(l);
                let sum_norm: f64 = uk
                    .iter()
                    .zip(ul)
                    .map(|(a, b)| (a + b) * (a + b))
                    .sum::<f64>()
                    .sqrt();
                if sum_norm <= PAIR_TOL && (self.weight(l) - wk).abs() <= PAIR_TOL * wk.max(1.0) {
                    matched[k] = true;
                    matched[l] = true;
                    found = true;
                    break;
                }
            }
            if !found {
                return false;
            }
        }
        true
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    pub fn dir(&self, k: usize) -> &[f64] {
        &self.dirs[k * self.n..(k + 1) * self.n]
    }

    pub fn weight(&self, k: usize) -> f64 {
        self.weights[k]
    }

    pub fn total_mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// sum_k w_k u_k; zero for the surface-area measure of a closed surface.
    pub fn weighted_direction_sum(&self) -> Vec<f64> {
        let mut s = vec![0.0; self.n];
        for k in 0..self.len() {
            let w = self.weight(k);
            for (si, ui) in s.iter_mut().zip(self.dir(k)) {
                *si += w * ui;
            }
        }
        s
    }

    /// The p-cosine transform sum_k w_k |x . u_k|^p.
    pub fn cosine_transform(&self, x: &[f64], p: f64) -> f64 {
        let mut sum = 0.0;
        if p == 1.0 {
            for k in 0..self.len() {
                sum += self.weight(k) * dot(x, self.dir(k)).abs();
            }
        } else if p == 2.0 {
            for k in 0..self.len() {
                let d = dot(x, self.dir(k));
                sum += self.weight(k) * d * d;
            }
        } else {
            for k in 0..self.len() {
                sum += self.weight(k) * dot(x, self.dir(k)).abs().powf(p);
            }
        }
        sum
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0) {
            return Err(Error::Domain(format!("scale factor must be > 0, got {factor}")));
        }
        Ok(DiscreteSphereMeasure {
            weights: self.weights.iter().map(|w| w * factor).collect(),
            ..self.clone()
        })
    }

    /// Pushforward under a rotation (atoms rotated, weights kept).
    pub fn rotated(&self, rot: &Rotation) -> Self {
        let mut dirs = Vec::with_capacity(self.dirs.len());
        for k in 0..self.len() {
            dirs.extend_from_slice(&rot.apply(self.dir(k)));
        }
        DiscreteSphereMeasure {
            dirs,
            ..self.clone()
        }
    }

    /// Even part (1/2)(mu + mu o (-id)); returns self unchanged when the
    /// measure is already even. The p-cosine transform only sees this part.
    pub fn even_part(&self) -> Self {
        if self.even {
            return self.clone();
        }
        let mut dirs = Vec::with_capacity(self.dirs.len() * 2);
        let mut weights = Vec::with_capacity(self.len() * 2);
        for k in 0..self.len() {
            let u = self.dir(k);
            dirs.extend_from_slice(u);
            dirs.extend(u.iter().map(|x| -x));
            weights.push(self.weight(k) * 0.5);
            weights.push(self.weight(k) * 0.5);
        }
        DiscreteSphereMeasure {
            n: self.n,
            dirs,
            weights,
            even: true,
        }
    }

    /// Second-moment matrix sum_k w_k u_k u_k^T; its smallest eigenvalue is
    /// positive exactly when the atoms span R^n.
    pub fn second_moment(&self) -> Matrix {
        let mut m = Matrix::zeros(self.n);
        for k in 0..self.len() {
            let u = self.dir(k);
            let w = self.weight(k);
            for j in 0..self.n {
                let c = w * u[j];
                let col = m.column_mut(j);
                for i in 0..self.n {
                    col[i] += u[i] * c;
                }
            }
        }
        m
    }

    pub fn spans_space(&self) -> bool {
        let eig = self.second_moment().symmetric_eigenvalues();
        let max = eig.last().copied().unwrap_or(0.0);
        eig.first().copied().unwrap_or(0.0) > 1e-12 * max.max(1e-300)
    }

    /// Discretized generator of the unit ball seen as an L^p zonoid:
    /// uniform atoms with total mass 1/q_{n,p}, so that the p-cosine
    /// transform approximates ||x||^p.
    pub fn ball_generator(n: usize, p: f64, count: usize, seed: u64) -> Result<Self> {
        let base = Self::uniform_on_subsphere(n, n, count, seed)?;
        let q = crate::constants::q_coefficient(n as u32, p)?;
        base.scaled(1.0 / q)
    }

    /// Uniform atoms from an explicit sphere sample set (testing hook).
    pub fn from_sphere_samples(samples: &SphereSamples, total_mass: f64) -> Result<Self> {
        let n_pairs = samples.n_pairs();
        let w = total_mass / (2 * n_pairs) as f64;
        let pairs = (0..n_pairs)
            .map(|k| (samples.point(k).to_vec(), w))
            .collect();
        Self::new_even(samples.dim(), pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, k: usize) -> Vec<f64> {
        let mut v = vec![0.0; n];
        v[k] = 1.0;
        v
    }

    #[test]
    fn rejects_bad_atoms() {
        assert!(DiscreteSphereMeasure::new(3, vec![(vec![1.0, 1.0, 0.0], 1.0)]).is_err());
        assert!(DiscreteSphereMeasure::new(3, vec![(e(3, 0), 0.0)]).is_err());
        assert!(DiscreteSphereMeasure::new(3, vec![(e(3, 0), -1.0)]).is_err());
    }

    #[test]
    fn evenness_detection() {
        let even = DiscreteSphereMeasure::new_even(3, vec![(e(3, 0), 0.5)]).unwrap();
        assert!(even.is_even());
        let odd = DiscreteSphereMeasure::new(3, vec![(e(3, 0), 1.0), (e(3, 1), 1.0)]).unwrap();
        assert!(!odd.is_even());
        // pairs with unequal weights are not even
        let neg = e(3, 0).iter().map(|x| -x).collect::<Vec<_>>();
        let lopsided =
            DiscreteSphereMeasure::new(3, vec![(e(3, 0), 1.0), (neg, 2.0)]).unwrap();
        assert!(!lopsided.is_even());
    }

    #[test]
    fn even_part_preserves_cosine_transform() {
        let odd = DiscreteSphereMeasure::new(3, vec![(e(3, 0), 1.0), (e(3, 1), 2.0)]).unwrap();
        let even = odd.even_part();
        assert!(even.is_even());
        assert!((even.total_mass() - odd.total_mass()).abs() < 1e-15);
        for p in [1.0, 1.7, 2.0] {
            let x = [0.3, -0.8, 0.52];
            assert!((even.cosine_transform(&x, p) - odd.cosine_transform(&x, p)).abs() < 1e-14);
        }
    }

    #[test]
    fn subsphere_atoms_have_mass_one_and_span() {
        let m = DiscreteSphereMeasure::uniform_on_subsphere(4, 2, 64, 9).unwrap();
        assert!((m.total_mass() - 1.0).abs() < 1e-12);
        assert!(m.is_even());
        for k in 0..m.len() {
            // atoms stay inside the embedded subspace
            assert_eq!(m.dir(k)[2], 0.0);
            assert_eq!(m.dir(k)[3], 0.0);
        }
        assert!(!m.spans_space());
        let full = DiscreteSphereMeasure::uniform_on_subsphere(3, 3, 32, 9).unwrap();
        assert!(full.spans_space());
    }

    #[test]
    fn segment_generator_is_exact() {
        let m = DiscreteSphereMeasure::uniform_on_subsphere(3, 1, 100, 1).unwrap();
        assert_eq!(m.len(), 2);
        assert!((m.total_mass() - 1.0).abs() < 1e-15);
        // cosine transform gives |x . e_1|^p exactly
        let x = [0.4, 1.0, -2.0];
        for p in [1.0, 1.5, 2.0] {
            assert!((m.cosine_transform(&x, p) - 0.4f64.powf(p)).abs() < 1e-14);
        }
    }

    #[test]
    fn scaling_weights() {
        let m = DiscreteSphereMeasure::new_even(3, vec![(e(3, 0), 0.5)]).unwrap();
        let scaled = m.scaled(3.0).unwrap();
        assert!((scaled.total_mass() - 3.0).abs() < 1e-15);
        assert!(m.scaled(-1.0).is_err());
    }
}
