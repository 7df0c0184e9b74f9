//! Convex bodies with exact support-function evaluation: balls, polytopes,
//! ellipsoids A B^n, and L^p zonoids generated by even sphere measures.

use crate::bodies::measure::DiscreteSphereMeasure;
use crate::bodies::polytope::Polytope;
use crate::error::{Error, Result};
use crate::linalg::{norm, Matrix, Rotation};

/// Ellipsoid A B^n for invertible A.
#[derive(Debug, Clone)]
pub struct Ellipsoid {
    shape: Matrix,
    det: f64,
    condition: f64,
}

impl Ellipsoid {
    pub fn new(shape: Matrix) -> Result<Self> {
        let det = shape.det();
        let condition = shape.condition_number();
        if det == 0.0 || !condition.is_finite() {
            return Err(Error::Domain(
                "ellipsoid shape matrix must be invertible".into(),
            ));
        }
        Ok(Ellipsoid {
            shape,
            det,
            condition,
        })
    }

    pub fn unit_ball(n: usize) -> Self {
        Ellipsoid {
            shape: Matrix::identity(n),
            det: 1.0,
            condition: 1.0,
        }
    }

    pub fn dim(&self) -> usize {
        self.shape.n
    }

    pub fn shape(&self) -> &Matrix {
        &self.shape
    }

    pub fn det(&self) -> f64 {
        self.det
    }

    pub fn condition_number(&self) -> f64 {
        self.condition
    }

    /// h(A B^n, x) = |A^T x|.
    pub fn support(&self, x: &[f64]) -> f64 {
        norm(&self.shape.matvec_t(x))
    }

    pub fn volume(&self) -> Result<f64> {
        Ok(crate::constants::unit_ball_volume(self.dim() as f64)? * self.det.abs())
    }
}

/// L^p zonoid: h(Z, x)^p = sum_k w_k |x . u_k|^p for an even generator.
#[derive(Debug, Clone)]
pub struct LpZonoid {
    p: f64,
    generator: DiscreteSphereMeasure,
}

impl LpZonoid {
    /// Odd generators are rejected, not symmetrized.
    pub fn new(p: f64, generator: DiscreteSphereMeasure) -> Result<Self> {
        if !(p >= 1.0) {
            return Err(Error::Domain(format!("zonoid exponent must be >= 1, got {p}")));
        }
        if !generator.is_even() {
            return Err(Error::Config(
                "zonoid generator must be an even measure".into(),
            ));
        }
        Ok(LpZonoid { p, generator })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.generator.dim()
    }

    pub fn generator(&self) -> &DiscreteSphereMeasure {
        &self.generator
    }

    /// h(Z, x) = (sum_k w_k |x . u_k|^p)^{1/p}.
    pub fn support(&self, x: &[f64]) -> f64 {
        self.generator.cosine_transform(x, self.p).powf(1.0 / self.p)
    }

    /// h(Z, x)^p without the outer root (the natural quantity in the
    /// functional integrands).
    pub fn support_pow_p(&self, x: &[f64]) -> f64 {
        self.generator.cosine_transform(x, self.p)
    }

    /// The Minkowski functional ||x||_{Z°} of the polar body, which equals
    /// the support function h(Z, x). Errors when the generator does not
    /// span the space, since the polar "norm" would then vanish on a
    /// subspace.
    pub fn polar_norm(&self, x: &[f64]) -> Result<f64> {
        if !self.generator.spans_space() {
            return Err(Error::DegenerateNorm(format!(
                "{} atoms in R^{}",
                self.generator.len(),
                self.dim()
            )));
        }
        Ok(self.support(x))
    }

    pub fn rotated(&self, rot: &Rotation) -> LpZonoid {
        LpZonoid {
            p: self.p,
            generator: self.generator.rotated(rot),
        }
    }

    pub fn with_mass_scaled(&self, factor: f64) -> Result<LpZonoid> {
        Ok(LpZonoid {
            p: self.p,
            generator: self.generator.scaled(factor)?,
        })
    }
}

/// The L^p zonoid D^i_p generated by the discretized normalized measure on
/// S^{i-1}: h(D^i_p, x)^p approximates q_{i,p} ||x|E_i||^p. For i = 1 the
/// two-atom generator {+-e_1, mass 1/2} is exact.
pub fn disc_zonoid(n: usize, i: usize, p: f64, atom_count: usize, seed: u64) -> Result<LpZonoid> {
    let generator = DiscreteSphereMeasure::uniform_on_subsphere(n, i, atom_count, seed)?;
    LpZonoid::new(p, generator)
}

/// Tagged union over the supported body variants.
#[derive(Debug, Clone)]
pub enum ConvexBody {
    Ball(f64),
    Polytope(Polytope),
    Ellipsoid(Ellipsoid),
    Zonoid(LpZonoid),
}

impl ConvexBody {
    pub fn support(&self, x: &[f64]) -> f64 {
        match self {
            ConvexBody::Ball(r) => r * norm(x),
            ConvexBody::Polytope(p) => p.support(x),
            ConvexBody::Ellipsoid(e) => e.support(x),
            ConvexBody::Zonoid(z) => z.support(x),
        }
    }

    pub fn dim(&self, fallback: usize) -> usize {
        match self {
            ConvexBody::Ball(_) => fallback,
            ConvexBody::Polytope(p) => p.dim(),
            ConvexBody::Ellipsoid(e) => e.dim(),
            ConvexBody::Zonoid(z) => z.dim(),
        }
    }
}
