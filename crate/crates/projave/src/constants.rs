//! Exact constants: unit-ball volumes, the projection coefficients q_{i,p},
//! and the sharp Sobolev constants c_{n,p} and a_{n,p}.
//!
//! All Gamma evaluation is done in log-space via `libm::lgamma`, which keeps
//! every constant finite and accurate for dimensions up to ~50.

use crate::error::{Error, Result};

/// Ambient dimension for inequality runs. Constructible only for n >= 3;
/// the raw constant functions below remain evaluable down to n = 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Dimension(u32);

impl Dimension {
    pub fn new(n: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!(
                "ambient dimension must be >= 3, got {n}"
            )));
        }
        Ok(Dimension(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn as_usize(self) -> usize {
        self.0 as usize
    }
}

/// Natural log of the volume of the unit ball in dimension `s`:
/// ln(pi^(s/2) / Gamma(1 + s/2)).
pub fn log_unit_ball_volume(s: f64) -> Result<f64> {
    if !(s >= 0.0) {
        return Err(Error::Domain(format!(
            "unit ball volume needs s >= 0, got {s}"
        )));
    }
    Ok(0.5 * s * std::f64::consts::PI.ln() - libm::lgamma(1.0 + 0.5 * s))
}

/// Volume omega_s = pi^(s/2) / Gamma(1 + s/2) of the unit ball in dimension s.
///
/// Defined for all real s >= 0; omega_0 = 1, omega_1 = 2, omega_2 = pi.
pub fn unit_ball_volume(s: f64) -> Result<f64> {
    Ok(log_unit_ball_volume(s)?.exp())
}

fn check_n(n: u32) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain(format!("dimension must be >= 2, got {n}")));
    }
    Ok(f64::from(n))
}

fn check_p(p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::Domain(format!("exponent p must be >= 1, got {p}")));
    }
    Ok(p)
}

/// q_{i,p} = 2 omega_{i+p-2} / (i omega_i omega_{p-1}).
///
/// This is the constant relating the p-th power of an i-dimensional
/// projection length to its rotational average; q_{1,p} = 1 for every p.
pub fn q_coefficient(i: u32, p: f64) -> Result<f64> {
    if i < 1 {
        return Err(Error::Domain(format!("index i must be >= 1, got {i}")));
    }
    let p = check_p(p)?;
    let i_f = f64::from(i);
    let log_q = std::f64::consts::LN_2 + log_unit_ball_volume(i_f + p - 2.0)?
        - i_f.ln()
        - log_unit_ball_volume(i_f)?
        - log_unit_ball_volume(p - 1.0)?;
    Ok(log_q.exp())
}

/// The sharp constant c_{n,p} of the projection-averaged Sobolev inequality,
///
///   c_{n,p} = (2 omega_{n+p-2} / (omega_n omega_{p-1}))^{1/p}
///           * ((n-p)/(p-1))^{1-1/p}
///           * (omega_n Gamma(n/p) Gamma(n+1-n/p) / Gamma(n))^{1/n}.
///
/// The middle factor is defined by continuity at p = 1 (value 1), where the
/// whole expression collapses to 2 omega_{n-1} / omega_n^{1-1/n}.
pub fn sharp_constant(n: u32, p: f64) -> Result<f64> {
    let n_f = check_n(n)?;
    let p = check_p(p)?;
    if p >= n_f {
        return Err(Error::Domain(format!(
            "sharp constant requires 1 <= p < n, got p={p}, n={n}"
        )));
    }

    let log_first = (std::f64::consts::LN_2 + log_unit_ball_volume(n_f + p - 2.0)?
        - log_unit_ball_volume(n_f)?
        - log_unit_ball_volume(p - 1.0)?)
        / p;

    // ((n-p)/(p-1))^(1-1/p) -> 1 as p -> 1+ since the exponent vanishes
    // like (p-1) while the log diverges only like -ln(p-1).
    let log_middle = if p == 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / p) * ((n_f - p) / (p - 1.0)).ln()
    };

    let log_third = (log_unit_ball_volume(n_f)? + libm::lgamma(n_f / p)
        + libm::lgamma(n_f + 1.0 - n_f / p)
        - libm::lgamma(n_f))
        / n_f;

    Ok((log_first + log_middle + log_third).exp())
}

/// The classical sharp Sobolev constant a_{n,p} with
/// ||grad f||_p >= a_{n,p} ||f||_{p*}, recovered as c_{n,p} q_{n,p}^{-1/p}.
pub fn classical_constant(n: u32, p: f64) -> Result<f64> {
    let c = sharp_constant(n, p)?;
    let q = q_coefficient(n, p)?;
    Ok(c * q.powf(-1.0 / p))
}
