//! Analytic test profiles with closed-form gradients: the radial power-law
//! extremizers, their affine images, Gaussians, and characteristic functions
//! of convex bodies (the latter admitted only to the BV functionals).

use crate::bodies::ConvexBody;
use crate::constants::unit_ball_volume;
use crate::error::{Error, Result};
use crate::linalg::{norm, Matrix};

/// int_0^inf r^{s-1} (a + b r^c)^{-m} dr
///   = a^{s/c - m} b^{-s/c} B(s/c, m - s/c) / c,
/// the Beta-integral behind every closed-form radial reduction here.
pub fn beta_radial_integral(s: f64, c: f64, m: f64, a: f64, b: f64) -> Result<f64> {
    let x = s / c;
    if !(x > 0.0 && m - x > 0.0 && a > 0.0 && b > 0.0) {
        return Err(Error::Domain(format!(
            "beta integral needs 0 < s/c < m and a,b > 0 (s={s}, c={c}, m={m})"
        )));
    }
    let log_beta = libm::lgamma(x) + libm::lgamma(m - x) - libm::lgamma(m);
    Ok(((x - m) * a.ln() - x * b.ln() + log_beta).exp() / c)
}

/// Radial dependence of the smooth profile variants.
#[derive(Debug, Clone, Copy)]
pub enum RadialForm {
    /// rho(r) = (a + b r^{p/(p-1)})^{1 - n/p}
    Power { n: usize, p: f64, a: f64, b: f64 },
    /// rho(r) = exp(-scale r^2)
    Gaussian { scale: f64 },
}

impl RadialForm {
    pub fn value(&self, r: f64) -> f64 {
        match *self {
            RadialForm::Power { n, p, a, b } => {
                let q = p / (p - 1.0);
                (a + b * r.powf(q)).powf(1.0 - n as f64 / p)
            }
            RadialForm::Gaussian { scale } => (-scale * r * r).exp(),
        }
    }

    /// |rho'(r)|.
    pub fn grad_abs(&self, r: f64) -> f64 {
        match *self {
            RadialForm::Power { n, p, a, b } => {
                let q = p / (p - 1.0);
                (n as f64 / p - 1.0)
                    * b
                    * q
                    * r.powf(q - 1.0)
                    * (a + b * r.powf(q)).powf(-(n as f64) / p)
            }
            RadialForm::Gaussian { scale } => 2.0 * scale * r * (-scale * r * r).exp(),
        }
    }

    /// int_0^inf |rho'(r)|^p r^{n-1} dr in closed form.
    pub fn grad_energy_radial_closed(&self, n: usize, p: f64) -> Result<f64> {
        let n_f = n as f64;
        match *self {
            RadialForm::Power {
                n: prof_n,
                p: prof_p,
                a,
                b,
            } => {
                debug_assert_eq!(prof_n, n);
                debug_assert_eq!(prof_p, p);
                let q = p / (p - 1.0);
                let coeff = ((n_f / p - 1.0) * b * q).powf(p);
                Ok(coeff * beta_radial_integral(n_f + q, q, n_f, a, b)?)
            }
            RadialForm::Gaussian { scale } => {
                // (2 scale)^p int r^{p+n-1} e^{-p scale r^2} dr
                let coeff = (2.0 * scale).powf(p);
                let half = 0.5 * (n_f + p);
                Ok(coeff * 0.5 * (p * scale).powf(-half) * libm::lgamma(half).exp())
            }
        }
    }

    /// int_0^inf rho(r)^{p*} r^{n-1} dr in closed form, p* = np/(n-p).
    pub fn lpstar_radial_closed(&self, n: usize, p: f64) -> Result<f64> {
        let n_f = n as f64;
        let p_star = n_f * p / (n_f - p);
        match *self {
            RadialForm::Power { a, b, p: prof_p, .. } => {
                // (a + b r^q)^{(1-n/p) p*} = (a + b r^q)^{-n}
                let q = prof_p / (prof_p - 1.0);
                beta_radial_integral(n_f, q, n_f, a, b)
            }
            RadialForm::Gaussian { scale } => {
                let half = 0.5 * n_f;
                Ok(0.5 * (p_star * scale).powf(-half) * libm::lgamma(half).exp())
            }
        }
    }
}

/// Test function over R^n. The smooth variants supply closed-form gradients
/// and radial reductions; `CharOfBody` is the bounded-variation carrier and
/// is the only variant admitted to the BV functionals.
#[derive(Debug, Clone)]
pub enum Profile {
    AubinTalenti {
        n: usize,
        p: f64,
        a: f64,
        b: f64,
        x0: Vec<f64>,
        amplitude: f64,
    },
    AffineExtremizer {
        n: usize,
        p: f64,
        a: f64,
        shape: Matrix,
        x0: Vec<f64>,
        amplitude: f64,
    },
    Gaussian {
        n: usize,
        scale: f64,
        amplitude: f64,
    },
    CharOfBody {
        body: ConvexBody,
        n: usize,
        amplitude: f64,
    },
}

impl Profile {
    pub fn aubin_talenti(n: usize, p: f64, a: f64, b: f64, x0: Vec<f64>) -> Result<Self> {
        check_extremizer_params(n, p, a, &x0)?;
        if !(b > 0.0) {
            return Err(Error::Domain(format!("b must be positive, got {b}")));
        }
        Ok(Profile::AubinTalenti {
            n,
            p,
            a,
            b,
            x0,
            amplitude: 1.0,
        })
    }

    pub fn affine_extremizer(n: usize, p: f64, a: f64, shape: Matrix, x0: Vec<f64>) -> Result<Self> {
        check_extremizer_params(n, p, a, &x0)?;
        if shape.n != n {
            return Err(Error::Domain("shape matrix dimension mismatch".into()));
        }
        if shape.det() == 0.0 {
            return Err(Error::Domain("shape matrix must be invertible".into()));
        }
        Ok(Profile::AffineExtremizer {
            n,
            p,
            a,
            shape,
            x0,
            amplitude: 1.0,
        })
    }

    pub fn gaussian(n: usize, scale: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain("need n >= 2".into()));
        }
        if !(scale > 0.0) {
            return Err(Error::Domain(format!("scale must be positive, got {scale}")));
        }
        Ok(Profile::Gaussian {
            n,
            scale,
            amplitude: 1.0,
        })
    }

    pub fn char_of_body(body: ConvexBody, n: usize) -> Result<Self> {
        if matches!(body, ConvexBody::Zonoid(_)) {
            return Err(Error::Config(
                "characteristic-function profiles take Ball, Polytope or Ellipsoid bodies".into(),
            ));
        }
        Ok(Profile::CharOfBody {
            body,
            n,
            amplitude: 1.0,
        })
    }

    pub fn with_amplitude(mut self, amp: f64) -> Result<Self> {
        if amp == 0.0 || !amp.is_finite() {
            return Err(Error::Domain("amplitude must be nonzero and finite".into()));
        }
        match &mut self {
            Profile::AubinTalenti { amplitude, .. }
            | Profile::AffineExtremizer { amplitude, .. }
            | Profile::Gaussian { amplitude, .. }
            | Profile::CharOfBody { amplitude, .. } => *amplitude = amp,
        }
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        match self {
            Profile::AubinTalenti { n, .. }
            | Profile::AffineExtremizer { n, .. }
            | Profile::Gaussian { n, .. }
            | Profile::CharOfBody { n, .. } => *n,
        }
    }

    pub fn amplitude(&self) -> f64 {
        match self {
            Profile::AubinTalenti { amplitude, .. }
            | Profile::AffineExtremizer { amplitude, .. }
            | Profile::Gaussian { amplitude, .. }
            | Profile::CharOfBody { amplitude, .. } => *amplitude,
        }
    }

    /// The exponent the profile is an extremizer for, when it pins one.
    pub fn intrinsic_p(&self) -> Option<f64> {
        match self {
            Profile::AubinTalenti { p, .. } | Profile::AffineExtremizer { p, .. } => Some(*p),
            _ => None,
        }
    }

    /// Whether the profile is a radial function (about its center).
    pub fn is_radial(&self) -> bool {
        matches!(self, Profile::AubinTalenti { .. } | Profile::Gaussian { .. })
    }

    pub fn supports_gradient(&self) -> bool {
        !matches!(self, Profile::CharOfBody { .. })
    }

    pub fn evaluate(&self, x: &[f64]) -> f64 {
        match self {
            Profile::AubinTalenti {
                n,
                p,
                a,
                b,
                x0,
                amplitude,
            } => {
                let r = shifted_norm(x, x0);
                amplitude
                    * RadialForm::Power {
                        n: *n,
                        p: *p,
                        a: *a,
                        b: *b,
                    }
                    .value(r)
            }
            Profile::AffineExtremizer {
                n,
                p,
                a,
                shape,
                x0,
                amplitude,
            } => {
                let y = shape.matvec(&shifted(x, x0));
                amplitude
                    * RadialForm::Power {
                        n: *n,
                        p: *p,
                        a: *a,
                        b: 1.0,
                    }
                    .value(norm(&y))
            }
            Profile::Gaussian {
                scale, amplitude, ..
            } => {
                let r2: f64 = x.iter().map(|v| v * v).sum();
                amplitude * (-scale * r2).exp()
            }
            Profile::CharOfBody {
                body, amplitude, ..
            } => {
                let inside = match body {
                    ConvexBody::Ball(r) => norm(x) <= *r,
                    // membership via the support criterion is enough for
                    // the bundled fixtures (all contain the origin)
                    _ => {
                        let s = body.support(x);
                        norm(x) * norm(x) <= s
                    }
                };
                if inside {
                    *amplitude
                } else {
                    0.0
                }
            }
        }
    }

    /// Closed-form gradient; errors for characteristic functions, whose
    /// weak gradient is a surface measure, not a function.
    pub fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        match self {
            Profile::AubinTalenti {
                n,
                p,
                a,
                b,
                x0,
                amplitude,
            } => {
                let d = shifted(x, x0);
                let r = norm(&d);
                let form = RadialForm::Power {
                    n: *n,
                    p: *p,
                    a: *a,
                    b: *b,
                };
                if r == 0.0 {
                    return Ok(vec![0.0; *n]);
                }
                // rho' < 0: gradient points inward
                let factor = -amplitude * form.grad_abs(r) / r;
                Ok(d.iter().map(|v| factor * v).collect())
            }
            Profile::AffineExtremizer {
                n,
                p,
                a,
                shape,
                x0,
                amplitude,
            } => {
                let y = shape.matvec(&shifted(x, x0));
                let r = norm(&y);
                if r == 0.0 {
                    return Ok(vec![0.0; *n]);
                }
                let form = RadialForm::Power {
                    n: *n,
                    p: *p,
                    a: *a,
                    b: 1.0,
                };
                let factor = -amplitude * form.grad_abs(r) / r;
                Ok(shape.matvec_t(&y).iter().map(|v| factor * v).collect())
            }
            Profile::Gaussian {
                n,
                scale,
                amplitude,
            } => {
                let r2: f64 = x.iter().map(|v| v * v).sum();
                let factor = -2.0 * scale * amplitude * (-scale * r2).exp();
                let _ = n;
                Ok(x.iter().map(|v| factor * v).collect())
            }
            Profile::CharOfBody { .. } => Err(Error::Config(
                "characteristic functions have no pointwise gradient; use the BV functionals"
                    .into(),
            )),
        }
    }

    /// Radial form, anisotropy matrix (None for isotropic variants) and
    /// |det A| for the smooth profiles:
    /// f(x) = amplitude * rho(||A (x - x0)||).
    pub(crate) fn smooth_structure(&self) -> Option<(RadialForm, Option<&Matrix>, f64)> {
        match self {
            Profile::AubinTalenti { n, p, a, b, .. } => Some((
                RadialForm::Power {
                    n: *n,
                    p: *p,
                    a: *a,
                    b: *b,
                },
                None,
                1.0,
            )),
            Profile::AffineExtremizer {
                n, p, a, shape, ..
            } => Some((
                RadialForm::Power {
                    n: *n,
                    p: *p,
                    a: *a,
                    b: 1.0,
                },
                Some(shape),
                shape.det().abs(),
            )),
            Profile::Gaussian { scale, .. } => {
                Some((RadialForm::Gaussian { scale: *scale }, None, 1.0))
            }
            Profile::CharOfBody { .. } => None,
        }
    }

    /// Exponent tau with |f(x)| <= C (1 + ||x||)^{-tau}.
    pub fn tail_exponent(&self) -> Result<f64> {
        match self {
            Profile::AubinTalenti { n, p, .. } | Profile::AffineExtremizer { n, p, .. } => {
                // (n/p - 1) * p/(p-1) = (n - p)/(p - 1)
                Ok((*n as f64 - p) / (p - 1.0))
            }
            Profile::Gaussian { .. } => Ok(f64::INFINITY),
            Profile::CharOfBody { .. } => Ok(f64::INFINITY),
        }
    }

    /// Closed-form ||f||_{p*} when the variant provides one.
    pub fn lpstar_norm_closed(&self, p: f64) -> Result<Option<f64>> {
        let n = self.dim();
        let n_f = n as f64;
        if !(p >= 1.0 && p < n_f) {
            return Err(Error::Domain(format!("need 1 <= p < n, got p={p}, n={n}")));
        }
        let p_star = n_f * p / (n_f - p);
        let n_omega_n = n_f * unit_ball_volume(n_f)?;
        match self {
            Profile::CharOfBody {
                body, amplitude, ..
            } => {
                let vol = match body {
                    ConvexBody::Ball(r) => unit_ball_volume(n_f)? * r.powf(n_f),
                    ConvexBody::Polytope(poly) => poly.volume(),
                    ConvexBody::Ellipsoid(e) => e.volume()?,
                    ConvexBody::Zonoid(_) => unreachable!("rejected at construction"),
                };
                Ok(Some(amplitude.abs() * vol.powf(1.0 / p_star)))
            }
            _ => {
                let (form, _, det_abs) = self.smooth_structure().expect("smooth variant");
                if let Some(intrinsic) = self.intrinsic_p() {
                    if (intrinsic - p).abs() > 1e-12 {
                        // the power-law radial reduction is tied to its own p
                        return Ok(None);
                    }
                }
                let radial = form.lpstar_radial_closed(n, p)?;
                let integral = self.amplitude().abs().powf(p_star) * n_omega_n * radial / det_abs;
                Ok(Some(integral.powf(1.0 / p_star)))
            }
        }
    }

    /// Closed-form total gradient energy int ||grad f||^p dx when available
    /// (isotropic variants only; the affine variant carries an angular
    /// factor that is not radial).
    pub fn gradient_energy_closed(&self, p: f64) -> Result<Option<f64>> {
        let n = self.dim();
        let n_f = n as f64;
        match self {
            Profile::AubinTalenti { .. } | Profile::Gaussian { .. } => {
                if let Some(intrinsic) = self.intrinsic_p() {
                    if (intrinsic - p).abs() > 1e-12 {
                        return Ok(None);
                    }
                }
                let (form, _, _) = self.smooth_structure().expect("smooth variant");
                let radial = form.grad_energy_radial_closed(n, p)?;
                Ok(Some(
                    self.amplitude().abs().powf(p) * n_f * unit_ball_volume(n_f)? * radial,
                ))
            }
            _ => Ok(None),
        }
    }
}

fn check_extremizer_params(n: usize, p: f64, a: f64, x0: &[f64]) -> Result<()> {
    if n < 2 {
        return Err(Error::Domain("need n >= 2".into()));
    }
    if !(p > 1.0) {
        return Err(Error::Domain(format!(
            "extremizer profiles need p > 1 (exponent p/(p-1)), got {p}"
        )));
    }
    if p >= n as f64 {
        return Err(Error::Domain(format!("need p < n, got p={p}, n={n}")));
    }
    if !(a > 0.0) {
        return Err(Error::Domain(format!("a must be positive, got {a}")));
    }
    if x0.len() != n {
        return Err(Error::Domain("center has wrong dimension".into()));
    }
    Ok(())
}

fn shifted(x: &[f64], x0: &[f64]) -> Vec<f64> {
    x.iter().zip(x0).map(|(a, b)| a - b).collect()
}

fn shifted_norm(x: &[f64], x0: &[f64]) -> f64 {
    x.iter()
        .zip(x0)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn fd_gradient(profile: &Profile, x: &[f64]) -> Vec<f64> {
        let h = 1e-6;
        (0..x.len())
            .map(|k| {
                let mut xp = x.to_vec();
                let mut xm = x.to_vec();
                xp[k] += h;
                xm[k] -= h;
                (profile.evaluate(&xp) - profile.evaluate(&xm)) / (2.0 * h)
            })
            .collect()
    }

    #[test]
    fn aubin_talenti_gradient_matches_finite_differences() {
        let f = Profile::aubin_talenti(3, 2.0, 1.0, 1.0, vec![0.2, -0.1, 0.4]).unwrap();
        for x in [[0.5, 0.3, -0.2], [1.0, 2.0, 0.0], [-0.7, 0.4, 1.3]] {
            let g = f.gradient(&x).unwrap();
            let fd = fd_gradient(&f, &x);
            for (a, b) in g.iter().zip(&fd) {
                assert!((a - b).abs() < 1e-7, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn affine_gradient_matches_finite_differences() {
        let shape = Matrix::from_rows(&[
            vec![2.0, 0.3, 0.0],
            vec![0.0, 1.0, -0.1],
            vec![0.2, 0.0, 0.5],
        ])
        .unwrap();
        let f = Profile::affine_extremizer(3, 2.0, 1.0, shape, vec![0.0, 0.1, 0.0]).unwrap();
        for x in [[0.5, 0.3, -0.2], [1.5, -0.4, 0.8]] {
            let g = f.gradient(&x).unwrap();
            let fd = fd_gradient(&f, &x);
            for (a, b) in g.iter().zip(&fd) {
                assert!((a - b).abs() < 1e-6, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn gaussian_gradient_and_norm() {
        let f = Profile::gaussian(3, 1.0).unwrap();
        let x = [0.3, -0.6, 0.2];
        let g = f.gradient(&x).unwrap();
        let fd = fd_gradient(&f, &x);
        for (a, b) in g.iter().zip(&fd) {
            assert!((a - b).abs() < 1e-8);
        }
        // ||f||_6 = (pi/6)^{1/4} at n=3, p=2
        let norm6 = f.lpstar_norm_closed(2.0).unwrap().unwrap();
        assert!((norm6 - (PI / 6.0).powf(0.25)).abs() < 1e-13);
    }

    #[test]
    fn gaussian_gradient_energy_closed_form() {
        // int 4 ||x||^2 e^{-2||x||^2} dx = 3 (pi/2)^{3/2}
        let f = Profile::gaussian(3, 1.0).unwrap();
        let e = f.gradient_energy_closed(2.0).unwrap().unwrap();
        let expect = 3.0 * (PI / 2.0).powf(1.5);
        assert!((e - expect).abs() < 1e-12, "{e} vs {expect}");
    }

    #[test]
    fn aubin_talenti_closed_forms() {
        // a = b = 1, n = 3, p = 2: ||f||_6^6 = pi^2/4, energy = 3 pi^2/4
        let f = Profile::aubin_talenti(3, 2.0, 1.0, 1.0, vec![0.0; 3]).unwrap();
        let norm6 = f.lpstar_norm_closed(2.0).unwrap().unwrap();
        assert!((norm6.powi(6) - PI * PI / 4.0).abs() < 1e-12);
        let energy = f.gradient_energy_closed(2.0).unwrap().unwrap();
        assert!((energy - 3.0 * PI * PI / 4.0).abs() < 1e-11);
    }

    #[test]
    fn char_of_ball_norm() {
        // p = 1, n = 3: ||1_B||_{3/2} = omega_3^{2/3}
        let f = Profile::char_of_body(ConvexBody::Ball(1.0), 3).unwrap();
        let val = f.lpstar_norm_closed(1.0).unwrap().unwrap();
        let expect = (4.0 * PI / 3.0f64).powf(2.0 / 3.0);
        assert!((val - expect).abs() < 1e-13);
        assert!(f.gradient(&[0.0; 3]).is_err());
    }

    #[test]
    fn amplitude_scales_norms_linearly() {
        let f = Profile::aubin_talenti(3, 2.0, 1.0, 1.0, vec![0.0; 3]).unwrap();
        let f3 = f.clone().with_amplitude(-3.0).unwrap();
        let n1 = f.lpstar_norm_closed(2.0).unwrap().unwrap();
        let n3 = f3.lpstar_norm_closed(2.0).unwrap().unwrap();
        assert!((n3 - 3.0 * n1).abs() < 1e-12);
        let e1 = f.gradient_energy_closed(2.0).unwrap().unwrap();
        let e3 = f3.gradient_energy_closed(2.0).unwrap().unwrap();
        assert!((e3 - 9.0 * e1).abs() < 1e-11);
    }

    #[test]
    fn parameter_validation() {
        assert!(Profile::aubin_talenti(3, 1.0, 1.0, 1.0, vec![0.0; 3]).is_err());
        assert!(Profile::aubin_talenti(3, 3.0, 1.0, 1.0, vec![0.0; 3]).is_err());
        assert!(Profile::aubin_talenti(3, 2.0, -1.0, 1.0, vec![0.0; 3]).is_err());
        assert!(Profile::gaussian(3, 0.0).is_err());
        let singular = Matrix::diagonal(&[1.0, 0.0, 1.0]);
        assert!(Profile::affine_extremizer(3, 2.0, 1.0, singular, vec![0.0; 3]).is_err());
    }

    #[test]
    fn tail_exponents() {
        let f = Profile::aubin_talenti(3, 2.0, 1.0, 1.0, vec![0.0; 3]).unwrap();
        assert!((f.tail_exponent().unwrap() - 1.0).abs() < 1e-14);
        let g = Profile::gaussian(3, 1.0).unwrap();
        assert!(g.tail_exponent().unwrap().is_infinite());
    }

    #[test]
    fn beta_integral_oracle() {
        // int r^2 (1+r^2)^{-3} dr = pi/16 and int r^4 (1+r^2)^{-3} dr = 3pi/16
        assert!((beta_radial_integral(3.0, 2.0, 3.0, 1.0, 1.0).unwrap() - PI / 16.0).abs() < 1e-14);
        assert!(
            (beta_radial_integral(5.0, 2.0, 3.0, 1.0, 1.0).unwrap() - 3.0 * PI / 16.0).abs()
                < 1e-14
        );
    }
}
