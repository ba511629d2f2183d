//! The kinetic equation of state of a Jüttner gas.
//!
//! In terms of the proper number density n and the dimensionless inverse
//! temperature β = m₀c²/(k_Bθ), the equilibrium relations are
//!
//! ```text
//! p = k_B n θ = m₀c² n/β
//! ρ = m₀c² n K₁(β)/K₂(β) + 3p
//! n = 4π e⁴ m₀³c³ h⁻³ · exp(−η/k_B) · K₂(β)/β · exp(β K₁/K₂)
//! ```
//!
//! with p the pressure, ρ the proper energy density and η the entropy per
//! particle. The constant e⁴ is Euler's number to the fourth power, not an
//! elementary charge. The map (n, β) ↦ (η, ρ) is a diffeomorphism of the
//! positive quadrant, so the pressure can be written as a function of (η, ρ)
//! alone; [`invert_map`] realises the inverse numerically and
//! [`sound_speed_squared`] evaluates c_S²/c² = ∂p/∂ρ|_η in closed form, which
//! obeys 0 < c_S < c/√3 for every temperature.
//!
//! Entropies are assembled in log space throughout — the factor
//! exp(β·K₁/K₂)·K₂(β) is never formed directly — so no operation here over-
//! or underflows at extreme β.

use crate::bessel::{self, BesselError};

/// Number of Newton iterations [`invert_map`] may spend before giving up.
pub const MAX_INVERT_ITERATIONS: u32 = 100;

/// Tightest inversion tolerance accepted by [`invert_map`].
pub const MIN_INVERT_TOL: f64 = 1e-13;

/// Default inversion tolerance used by [`f_kinetic`].
pub const DEFAULT_INVERT_TOL: f64 = 1e-12;

/// Errors from equation-of-state evaluation.
#[derive(Debug, Clone, thiserror::Error)]
pub enum EosError {
    /// Inputs outside the domain (non-positive density, β ≤ 0, non-finite
    /// values, out-of-range tolerance, …).
    #[error("domain error: {0}")]
    Domain(String),
    /// A Bessel evaluation underneath failed.
    #[error(transparent)]
    Bessel(#[from] BesselError),
    /// The inversion could not bracket a root; the searched range is
    /// reported. Cannot occur for inputs in the image of [`forward_map`].
    #[error("inversion bracket failure: no sign change for beta in [{beta_lo:.3e}, {beta_hi:.3e}]")]
    BracketFailure { beta_lo: f64, beta_hi: f64 },
    /// The inversion bracketed a root but could not meet the tolerance.
    #[error(
        "inversion did not converge after {iterations} iterations \
         (residual_eta {residual_eta:.3e}, residual_rho {residual_rho:.3e}, tol {tol:.3e})"
    )]
    ConvergenceFailure {
        iterations: u32,
        residual_eta: f64,
        residual_rho: f64,
        tol: f64,
    },
    /// A quantity violated an identity that holds for the exact equation of
    /// state; signals an evaluation failure, not a property of the physics.
    #[error("internal consistency violation: {0}")]
    Internal(String),
}

/// The dimensional constants. The default instance sets all four to one
/// (nondimensional mode), which is what every acceptance test uses;
/// dimensional values enter formulas only through this struct.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Particle rest mass m₀.
    pub m0: f64,
    /// Speed of light c.
    pub c: f64,
    /// Boltzmann constant k_B.
    pub k_b: f64,
    /// Planck constant h.
    pub h: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::nondimensional()
    }
}

impl PhysicalConstants {
    /// All four constants equal to one.
    pub fn nondimensional() -> Self {
        Self {
            m0: 1.0,
            c: 1.0,
            k_b: 1.0,
            h: 1.0,
        }
    }

    /// Constants must be strictly positive and finite.
    pub fn new(m0: f64, c: f64, k_b: f64, h: f64) -> Result<Self, EosError> {
        for (name, v) in [("m0", m0), ("c", c), ("kB", k_b), ("h", h)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(EosError::Domain(format!(
                    "constant {name} must be a positive finite real, got {v}"
                )));
            }
        }
        Ok(Self { m0, c, k_b, h })
    }

    /// Rest energy m₀c².
    pub fn rest_energy(&self) -> f64 {
        self.m0 * self.c * self.c
    }

    /// ln(4π e⁴ m₀³c³h⁻³), the logarithm of the density scale in the entropy
    /// relation. The e⁴ here is Euler's number to the fourth power.
    fn log_density_scale(&self) -> f64 {
        (4.0 * std::f64::consts::PI).ln() + 4.0 + 3.0 * ((self.m0 * self.c).ln() - self.h.ln())
    }
}

/// A full thermodynamic state derived from the primitive pair (n, β).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoState {
    /// Proper number density.
    pub n: f64,
    /// Dimensionless inverse temperature.
    pub beta: f64,
    /// Temperature θ = m₀c²/(k_B β).
    pub theta: f64,
    /// Pressure.
    pub p: f64,
    /// Proper energy density.
    pub rho: f64,
    /// Entropy per particle.
    pub eta: f64,
    /// Dimensionless specific energy ρ/(m₀c²n) = 3/β + K₁/K₂.
    pub psi: f64,
    /// Squared sound speed over c², in (0, 1/3).
    pub cs2: f64,
}

impl ThermoState {
    /// Evaluate every derived quantity at (n, β).
    pub fn new(n: f64, beta: f64, constants: &PhysicalConstants) -> Result<Self, EosError> {
        check_density(n)?;
        check_beta(beta)?;
        let ratio = bessel::ratio_k1_k2(beta)?.ratio;
        let rest = constants.rest_energy();
        let p = rest * n / beta;
        let psi = 3.0 / beta + ratio;
        Ok(Self {
            n,
            beta,
            theta: rest / (constants.k_b * beta),
            p,
            rho: rest * n * psi,
            eta: entropy_per_particle(n, beta, constants)?,
            psi,
            cs2: sound_speed_squared(beta)?,
        })
    }
}

/// Outcome of [`invert_map`]: the recovered primitive pair plus solver
/// diagnostics. `residual_eta` is absolute in units of k_B; `residual_rho`
/// is relative. `bracket_used` reports whether any safeguarded bisection step
/// replaced a Newton step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InversionResult {
    pub n: f64,
    pub beta: f64,
    pub residual_eta: f64,
    pub residual_rho: f64,
    pub iterations: u32,
    pub bracket_used: bool,
}

fn check_beta(beta: f64) -> Result<(), EosError> {
    if !(beta.is_finite() && beta > 0.0) {
        return Err(EosError::Domain(format!(
            "beta must be a positive finite real, got {beta}"
        )));
    }
    Ok(())
}

fn check_density(n: f64) -> Result<(), EosError> {
    if !(n.is_finite() && n > 0.0) {
        return Err(EosError::Domain(format!(
            "number density must be a positive finite real, got {n}"
        )));
    }
    Ok(())
}

/// Pressure p = m₀c²·n/β.
pub fn pressure(n: f64, beta: f64, constants: &PhysicalConstants) -> Result<f64, EosError> {
    check_density(n)?;
    check_beta(beta)?;
    Ok(constants.rest_energy() * n / beta)
}

/// Proper energy density ρ = m₀c²·n·K₁/K₂ + 3p.
pub fn energy_density(n: f64, beta: f64, constants: &PhysicalConstants) -> Result<f64, EosError> {
    check_density(n)?;
    check_beta(beta)?;
    let ratio = bessel::ratio_k1_k2(beta)?.ratio;
    Ok(constants.rest_energy() * n * (ratio + 3.0 / beta))
}

/// Entropy per particle, solved from the density relation and assembled in
/// log space:
///
/// ```text
/// η/k_B = ln(4π e⁴ m₀³c³h⁻³) + ln(e^β K₂(β)) − β(1 − K₁/K₂) − ln β − ln n
/// ```
///
/// The regrouping β(1 − K₁/K₂) stays O(1) as β → ∞, so the composite
/// exp(β K₁/K₂)·K₂(β) never has to be formed.
pub fn entropy_per_particle(
    n: f64,
    beta: f64,
    constants: &PhysicalConstants,
) -> Result<f64, EosError> {
    check_density(n)?;
    check_beta(beta)?;
    let triple = bessel::coherent_triple(beta)?;
    let ratio = triple.ratio();
    let log_k2_scaled = triple.scaled[2].ln();
    Ok(constants.k_b
        * (constants.log_density_scale() + log_k2_scaled - beta * (1.0 - ratio)
            - beta.ln()
            - n.ln()))
}

/// Dimensionless specific energy ψ(β) = 3/β + K₁/K₂ = ρ/(m₀c²n), a strictly
/// decreasing function of β (energy per particle grows with temperature).
pub fn specific_energy(beta: f64) -> Result<f64, EosError> {
    check_beta(beta)?;
    Ok(3.0 / beta + bessel::ratio_k1_k2(beta)?.ratio)
}

/// Forward map (n, β) ↦ (η, ρ).
pub fn forward_map(
    n: f64,
    beta: f64,
    constants: &PhysicalConstants,
) -> Result<(f64, f64), EosError> {
    Ok((
        entropy_per_particle(n, beta, constants)?,
        energy_density(n, beta, constants)?,
    ))
}

/// ln n as a function of β at fixed entropy: the density relation is
/// log-linear in n, so n can be eliminated exactly.
fn log_n_at_fixed_eta(
    beta: f64,
    eta: f64,
    constants: &PhysicalConstants,
) -> Result<f64, EosError> {
    let triple = bessel::coherent_triple(beta)?;
    let ratio = triple.ratio();
    Ok(constants.log_density_scale() + triple.scaled[2].ln() - beta * (1.0 - ratio)
        - beta.ln()
        - eta / constants.k_b)
}

/// Scalar residual of the one-dimensional reduced inversion problem:
/// g(β) = ln ρ(β; η) − ln ρ, where ρ(β; η) = m₀c²·n(β; η)·ψ(β) with n
/// eliminated through the entropy relation. g is strictly decreasing in β,
/// which is what makes the inverse map single-valued.
pub fn log_energy_residual(
    beta: f64,
    eta: f64,
    rho: f64,
    constants: &PhysicalConstants,
) -> Result<f64, EosError> {
    check_beta(beta)?;
    if !(rho.is_finite() && rho > 0.0) {
        return Err(EosError::Domain(format!(
            "energy density must be a positive finite real, got {rho}"
        )));
    }
    if !eta.is_finite() {
        return Err(EosError::Domain(format!("entropy must be finite, got {eta}")));
    }
    Ok(residual_and_slope(beta, eta, rho, constants)?.0)
}

/// (g(β), dg/dx) with x = ln β.
fn residual_and_slope(
    beta: f64,
    eta: f64,
    rho: f64,
    constants: &PhysicalConstants,
) -> Result<(f64, f64), EosError> {
    let triple = bessel::coherent_triple(beta)?;
    let ratio = triple.ratio();
    let psi = 3.0 / beta + ratio;
    let log_n = constants.log_density_scale() + triple.scaled[2].ln() - beta * (1.0 - ratio)
        - beta.ln()
        - eta / constants.k_b;
    let g = constants.rest_energy().ln() + log_n + psi.ln() - rho.ln();
    let ratio_deriv = ratio * ratio + 3.0 * ratio / beta - 1.0;
    let psi_deriv = ratio_deriv - 3.0 / (beta * beta);
    let dg_dbeta = beta * psi_deriv + psi_deriv / psi;
    Ok((g, beta * dg_dbeta))
}

/// Invert (η, ρ) ↦ (n, β).
///
/// n is eliminated analytically through the entropy relation, leaving one
/// scalar equation in β solved by safeguarded Newton on ln β with bisection
/// fallback inside a bracket grown by doubling outward from β = 1. The
/// residual is strictly decreasing in β and crosses zero exactly once for any
/// finite η and positive ρ.
pub fn invert_map(
    eta: f64,
    rho: f64,
    constants: &PhysicalConstants,
    tol: f64,
) -> Result<InversionResult, EosError> {
    if !(rho.is_finite() && rho > 0.0) {
        return Err(EosError::Domain(format!(
            "energy density must be a positive finite real, got {rho}"
        )));
    }
    if !eta.is_finite() {
        return Err(EosError::Domain(format!("entropy must be finite, got {eta}")));
    }
    if !(tol.is_finite() && tol >= MIN_INVERT_TOL) {
        return Err(EosError::Domain(format!(
            "tolerance must be >= {MIN_INVERT_TOL:e}, got {tol:e}"
        )));
    }

    // Bracket the root of the decreasing residual: g(beta_lo) > 0 > g(beta_hi).
    let g1 = residual_and_slope(1.0, eta, rho, constants)?.0;
    let mut beta_lo = 1.0;
    let mut beta_hi = 1.0;
    if g1 > 0.0 {
        loop {
            beta_hi *= 2.0;
            if beta_hi > 1e280 {
                return Err(EosError::BracketFailure { beta_lo, beta_hi });
            }
            if residual_and_slope(beta_hi, eta, rho, constants)?.0 <= 0.0 {
                break;
            }
        }
    } else if g1 < 0.0 {
        loop {
            beta_lo *= 0.5;
            if beta_lo < 1e-280 {
                return Err(EosError::BracketFailure { beta_lo, beta_hi });
            }
            if residual_and_slope(beta_lo, eta, rho, constants)?.0 >= 0.0 {
                break;
            }
        }
    }

    let mut x_lo = beta_lo.ln();
    let mut x_hi = beta_hi.ln();
    let mut x = 0.5 * (x_lo + x_hi);
    let mut bracket_used = false;

    for iteration in 1..=MAX_INVERT_ITERATIONS {
        let beta = x.exp();
        let (g, slope) = residual_and_slope(beta, eta, rho, constants)?;
        if g > 0.0 {
            x_lo = x;
        } else {
            x_hi = x;
        }

        if g.abs() <= 0.5 * tol {
            let n = log_n_at_fixed_eta(beta, eta, constants)?.exp();
            let (eta_back, rho_back) = forward_map(n, beta, constants)?;
            let residual_eta = (eta_back - eta).abs() / constants.k_b;
            let residual_rho = (rho_back - rho).abs() / rho;
            if residual_eta <= tol && residual_rho <= tol {
                return Ok(InversionResult {
                    n,
                    beta,
                    residual_eta,
                    residual_rho,
                    iterations: iteration,
                    bracket_used,
                });
            }
            return Err(EosError::ConvergenceFailure {
                iterations: iteration,
                residual_eta,
                residual_rho,
                tol,
            });
        }

        let newton = x - g / slope;
        if newton.is_finite() && newton > x_lo && newton < x_hi {
            x = newton;
        } else {
            x = 0.5 * (x_lo + x_hi);
            bracket_used = true;
        }
    }

    Err(EosError::ConvergenceFailure {
        iterations: MAX_INVERT_ITERATIONS,
        residual_eta: f64::NAN,
        residual_rho: f64::NAN,
        tol,
    })
}

/// Pressure as a function of entropy per particle and energy density.
pub fn f_kinetic(eta: f64, rho: f64, constants: &PhysicalConstants) -> Result<f64, EosError> {
    let inv = invert_map(eta, rho, constants, DEFAULT_INVERT_TOL)?;
    pressure(inv.n, inv.beta, constants)
}

/// The quantity 3r + βr² − β − 4/β with r = K₁/K₂, strictly negative for
/// every β > 0. Its strict negativity is the inequality behind the global
/// invertibility of (n, β) ↦ (η, ρ), and it is the denominator of the
/// fraction inside [`drho_dp_at_constant_entropy`].
pub fn invertibility_criterion(beta: f64) -> Result<f64, EosError> {
    check_beta(beta)?;
    let r = bessel::ratio_k1_k2(beta)?.ratio;
    Ok(3.0 * r + beta * r * r - beta - 4.0 / beta)
}

/// ∂ρ/∂p at constant entropy:
///
/// ```text
/// M(β) = 3 + β·r + (4r + βr² − β)/(3r + βr² − β − 4/β),    r = K₁/K₂,
/// ```
///
/// finite because the denominator is strictly negative, and > 3 for every
/// β > 0. Its reciprocal is the squared sound speed over c².
pub fn drho_dp_at_constant_entropy(beta: f64) -> Result<f64, EosError> {
    check_beta(beta)?;
    let r = bessel::ratio_k1_k2(beta)?.ratio;
    let denominator = invertibility_criterion(beta)?;
    // NaN must trip the guard as well
    if denominator >= 0.0 || denominator.is_nan() {
        return Err(EosError::Internal(format!(
            "invertibility criterion {denominator} is not negative at beta = {beta}; \
             this signals a Bessel accuracy failure"
        )));
    }
    let numerator = 4.0 * r + beta * r * r - beta;
    let m = 3.0 + beta * r + numerator / denominator;
    if !(m.is_finite() && m > 3.0) {
        return Err(EosError::Internal(format!(
            "compressibility M = {m} at beta = {beta} violates M > 3; \
             this signals a Bessel accuracy failure"
        )));
    }
    Ok(m)
}

/// Squared sound speed over c², computed from the closed form
/// c_S²/c² = 1/M(β). Always in (0, 1/3).
pub fn sound_speed_squared(beta: f64) -> Result<f64, EosError> {
    Ok(1.0 / drho_dp_at_constant_entropy(beta)?)
}

/// Closed-form Jacobian ∂(η, ρ)/∂(n, β):
///
/// ```text
/// ∂η/∂n = −k_B/n                 ∂η/∂β = k_B(β·r′ − 3/β)
/// ∂ρ/∂n = m₀c²·ψ(β)              ∂ρ/∂β = m₀c²·n·(r′ − 3/β²)
/// ```
///
/// using d(ln K₂)/dβ = −K₁/K₂ − 2/β (from the recurrence) and the exact
/// ratio-derivative identity. The determinant −k_B m₀c²·ψ′·(1 + βψ) is
/// strictly positive.
pub fn jacobian(n: f64, beta: f64, constants: &PhysicalConstants) -> Result<[[f64; 2]; 2], EosError> {
    check_density(n)?;
    check_beta(beta)?;
    let rv = bessel::ratio_k1_k2(beta)?;
    let r = rv.ratio;
    let rp = rv.derivative;
    let rest = constants.rest_energy();
    let psi = 3.0 / beta + r;
    Ok([
        [-constants.k_b / n, constants.k_b * (beta * rp - 3.0 / beta)],
        [rest * psi, rest * n * (rp - 3.0 / (beta * beta))],
    ])
}
