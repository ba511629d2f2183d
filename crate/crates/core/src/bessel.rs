//! Modified Bessel functions of the second kind K₀, K₁, K₂.
//!
//! Everything is computed from the integral representation
//!
//! ```text
//! K_j(β) = ∫₀^∞ cosh(jr) · exp(−β cosh r) dr,      β > 0,  j = 0, 1, 2,
//! ```
//!
//! evaluated in exponentially scaled form e^β·K_j(β) so results stay finite
//! for arbitrarily large β. Two independent evaluation routes are provided:
//!
//! * [`reference_triple`] integrates the representation above on a truncated
//!   interval, adaptively, with all three orders sharing the node set. The
//!   recurrence K₂ = (2/β)K₁ + K₀ then holds at rounding level by
//!   construction.
//! * [`gaussian_weight_triple`] uses the substitution z²/(4β) = sinh²(r/2),
//!   which turns K₀ and K₀+K₁ into Gaussian-weight integrals of
//!   (1 + z²/4β)^∓½; K₁ and K₂ follow by subtraction and the recurrence.
//!
//! The fast path [`bessel_k`] memoizes one coherent (K₀, K₁, K₂) triple per
//! argument at a fixed 1e-13 relative target; sweeps over the same grid hit
//! the cache. For β beyond roughly 745 the plain value underflows to zero and
//! the scaled and logarithmic forms are the canonical representations.
//!
//! The module also carries the closed-form two-sided bounds used by the
//! verification layer: the rational sandwich for K₁/K₂ valid for β ≥ 1/2, the
//! asymptotic envelopes for K₀ and K₀+K₁, and the Taylor sandwiches for
//! (1+x²)^±½ they are derived from.

use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

use crate::quad::{self, Rule};

/// 40·ln 10: the scaled integrand is truncated where it has decayed by forty
/// decades relative to its peak scale, making the discarded tail negligible
/// against any supported accuracy target.
const TAIL_DECADES_LN: f64 = 40.0 * std::f64::consts::LN_10;

/// Relative accuracy target of the memoized fast path.
pub const FAST_PATH_TARGET: f64 = 1e-13;

/// Loosest accuracy target accepted by [`reference_bessel_k`].
pub const MIN_TARGET_REL_ERR: f64 = 1e-15;

const MAX_PANELS: usize = 4096;

/// Errors from Bessel evaluation.
#[derive(Debug, Clone, thiserror::Error)]
pub enum BesselError {
    /// Inputs outside the domain (β ≤ 0, order > 2, non-finite values, …).
    #[error("domain error: {0}")]
    Domain(String),
    /// The adaptive quadrature could not certify the requested target within
    /// its subdivision budget.
    #[error(
        "quadrature accuracy failure: reached relative error {achieved:.3e} \
         (target {target:.3e}) after {panels} panels"
    )]
    Accuracy {
        target: f64,
        achieved: f64,
        panels: usize,
    },
    /// A computed result violated an identity that holds for the exact
    /// functions; this signals an evaluation failure, not a property of the
    /// mathematics.
    #[error("internal consistency violation: {0}")]
    Inconsistent(String),
}

/// One evaluation of K_j(β), carried in plain, exponentially scaled and
/// logarithmic form. `value` may under- or overflow at extreme β; the scaled
/// and log forms are always finite on the supported domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselValue {
    /// Order j ∈ {0, 1, 2}.
    pub order: u8,
    /// Argument β > 0.
    pub argument: f64,
    /// K_j(β).
    pub value: f64,
    /// e^β · K_j(β).
    pub scaled_value: f64,
    /// ln K_j(β).
    pub log_value: f64,
}

/// The ratio K₁/K₂ and its derivative with respect to β.
///
/// The derivative is filled from the exact identity
/// (K₁/K₂)′ = (K₁/K₂)² + (3/β)·K₁/K₂ − 1, so it is consistent with the ratio
/// by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioValue {
    pub argument: f64,
    /// K₁(β)/K₂(β), always in (0, min(1, β/2)).
    pub ratio: f64,
    /// d/dβ of the ratio.
    pub derivative: f64,
}

/// Lower and upper bound pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Envelope {
    pub lower: f64,
    pub upper: f64,
}

/// Polynomial lower bound, exact middle value, polynomial upper bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sandwich {
    pub lower: f64,
    pub mid: f64,
    pub upper: f64,
}

/// A coherent (K₀, K₁, K₂) evaluation at one argument, stored in scaled form.
///
/// All three orders come from the same quadrature nodes, so the recurrence
/// residual is at rounding level and the ratio K₁/K₂ carries strongly
/// correlated errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselTriple {
    pub argument: f64,
    /// e^β·K₀, e^β·K₁, e^β·K₂.
    pub scaled: [f64; 3],
}

impl BesselTriple {
    /// View one order of the triple as a [`BesselValue`].
    pub fn bessel_value(&self, order: u8) -> BesselValue {
        let scaled = self.scaled[order as usize];
        BesselValue {
            order,
            argument: self.argument,
            value: scaled * (-self.argument).exp(),
            scaled_value: scaled,
            log_value: scaled.ln() - self.argument,
        }
    }

    /// K₁/K₂, formed from the scaled pair so it never over- or underflows.
    pub fn ratio(&self) -> f64 {
        self.scaled[1] / self.scaled[2]
    }

    /// Relative residual of K₂ − (2/β)K₁ − K₀, measured against K₂.
    pub fn recurrence_residual(&self) -> f64 {
        let [k0, k1, k2] = self.scaled;
        (k2 - 2.0 * k1 / self.argument - k0).abs() / k2
    }
}

fn check_beta(beta: f64) -> Result<(), BesselError> {
    if !(beta.is_finite() && beta > 0.0) {
        return Err(BesselError::Domain(format!(
            "argument must be a positive finite real, got {beta}"
        )));
    }
    Ok(())
}

fn check_order(order: u8) -> Result<(), BesselError> {
    if order > 2 {
        return Err(BesselError::Domain(format!(
            "order must be 0, 1 or 2, got {order}"
        )));
    }
    Ok(())
}

fn accuracy_error(f: quad::QuadFailure) -> BesselError {
    BesselError::Accuracy {
        target: f.target_rel,
        achieved: f.achieved_rel,
        panels: f.panels,
    }
}

/// Positivity and the ordering K₀ < K₁ < K₂ hold for the exact functions; a
/// violation means the quadrature result cannot be trusted. The ordering is
/// admitted non-strictly: beyond β ≈ 1e13 the relative gaps 1/(8β) and 2/β
/// shrink under the spacing of doubles, so neighboring orders legitimately
/// round to the same value.
fn validate_triple(triple: &BesselTriple) -> Result<(), BesselError> {
    let [k0, k1, k2] = triple.scaled;
    if !(k0.is_finite() && k1.is_finite() && k2.is_finite() && k0 > 0.0) {
        return Err(BesselError::Inconsistent(format!(
            "non-finite or non-positive triple at beta = {}: {:?}",
            triple.argument, triple.scaled
        )));
    }
    if !(k0 <= k1 && k1 <= k2) {
        return Err(BesselError::Inconsistent(format!(
            "order violation K0 <= K1 <= K2 at beta = {}: {:?}",
            triple.argument, triple.scaled
        )));
    }
    Ok(())
}

/// Truncation radius for the direct route: the smallest r with
/// β(cosh r − 1) − 2r ≥ 40·ln 10, beyond which the scaled integrand of every
/// order is below 1e-40 of its peak scale.
fn truncation_radius(beta: f64) -> f64 {
    let g = |r: f64| {
        let s = (0.5 * r).sinh();
        2.0 * beta * s * s - 2.0 * r - TAIL_DECADES_LN
    };
    let mut hi = 1.0f64;
    while g(hi) < 0.0 {
        hi *= 2.0;
    }
    let mut lo = 0.0f64;
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// Direct route: adaptive quadrature of cosh(jr)·e^{−β(cosh r − 1)} on
/// [0, r_max], all three orders on shared nodes.
pub fn reference_triple(beta: f64, target_rel_err: f64) -> Result<BesselTriple, BesselError> {
    check_beta(beta)?;
    if !(target_rel_err.is_finite() && target_rel_err >= MIN_TARGET_REL_ERR) {
        return Err(BesselError::Domain(format!(
            "target relative error must be >= {MIN_TARGET_REL_ERR:e}, got {target_rel_err:e}"
        )));
    }
    let r_max = truncation_radius(beta);
    let f = |r: f64| {
        let s = (0.5 * r).sinh();
        let chm1 = 2.0 * s * s; // cosh r − 1 without cancellation
        let ch = 1.0 + chm1;
        let w = (-beta * chm1).exp();
        [w, w * ch, w * (2.0 * ch * ch - 1.0)]
    };
    let out = quad::integrate(&f, 0.0, r_max, target_rel_err, Rule::GaussKronrod21, MAX_PANELS)
        .map_err(accuracy_error)?;
    let triple = BesselTriple {
        argument: beta,
        scaled: out.value,
    };
    validate_triple(&triple)?;
    Ok(triple)
}

/// Truncation point for the Gaussian-weight route: z beyond which
/// e^{−z²/2}·(1 + z²/4β)^{1/2} is below 1e-40.
fn gaussian_truncation(beta: f64) -> f64 {
    let mut z = (2.0 * TAIL_DECADES_LN).sqrt();
    for _ in 0..8 {
        z = (2.0 * (TAIL_DECADES_LN + 0.5 * (0.25 * z * z / beta).ln_1p())).sqrt();
    }
    z
}

/// Independent route used for cross-checking: the substitution
/// z²/(4β) = sinh²(r/2) gives
///
/// ```text
/// K₀(β)        =   e^{−β}/√β · ∫₀^∞ (1 + z²/4β)^{−1/2} e^{−z²/2} dz
/// K₀(β)+K₁(β)  = 2·e^{−β}/√β · ∫₀^∞ (1 + z²/4β)^{+1/2} e^{−z²/2} dz
/// ```
///
/// K₁ follows by subtraction and K₂ from the recurrence. A different Kronrod
/// rule is used than in [`reference_triple`], so the two routes share neither
/// the representation, the variable, nor the nodes.
pub fn gaussian_weight_triple(beta: f64, target_rel_err: f64) -> Result<BesselTriple, BesselError> {
    check_beta(beta)?;
    if !(target_rel_err.is_finite() && target_rel_err >= MIN_TARGET_REL_ERR) {
        return Err(BesselError::Domain(format!(
            "target relative error must be >= {MIN_TARGET_REL_ERR:e}, got {target_rel_err:e}"
        )));
    }
    let z_max = gaussian_truncation(beta);
    let g = |z: f64| {
        let q = 0.25 * z * z / beta;
        let e = (-0.5 * z * z).exp();
        let root = (1.0 + q).sqrt();
        [e / root, e * root]
    };
    let out = quad::integrate(&g, 0.0, z_max, target_rel_err, Rule::GaussKronrod15, MAX_PANELS)
        .map_err(accuracy_error)?;
    let sqrt_beta = beta.sqrt();
    let k0 = out.value[0] / sqrt_beta;
    let k0_plus_k1 = 2.0 * out.value[1] / sqrt_beta;
    let k1 = k0_plus_k1 - k0;
    let k2 = 2.0 * k1 / beta + k0;
    let triple = BesselTriple {
        argument: beta,
        scaled: [k0, k1, k2],
    };
    validate_triple(&triple)?;
    Ok(triple)
}

/// Slow, configurable-accuracy evaluation of a single order via the direct
/// route. The whole coherent triple is computed; see [`reference_triple`].
pub fn reference_bessel_k(
    order: u8,
    beta: f64,
    target_rel_err: f64,
) -> Result<BesselValue, BesselError> {
    check_order(order)?;
    Ok(reference_triple(beta, target_rel_err)?.bessel_value(order))
}

static TRIPLE_CACHE: LazyLock<RwLock<HashMap<u64, BesselTriple>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// Memoized coherent triple at the fixed fast-path target, keyed on the bit
/// pattern of β. Safe to call from any number of threads.
pub fn coherent_triple(beta: f64) -> Result<BesselTriple, BesselError> {
    check_beta(beta)?;
    let key = beta.to_bits();
    if let Some(t) = TRIPLE_CACHE.read().expect("bessel cache poisoned").get(&key) {
        return Ok(*t);
    }
    let triple = reference_triple(beta, FAST_PATH_TARGET)?;
    TRIPLE_CACHE
        .write()
        .expect("bessel cache poisoned")
        .insert(key, triple);
    Ok(triple)
}

/// Fast path: memoized K_j(β) at a fixed 1e-13 relative target.
pub fn bessel_k(order: u8, beta: f64) -> Result<BesselValue, BesselError> {
    check_order(order)?;
    Ok(coherent_triple(beta)?.bessel_value(order))
}

/// K₁/K₂ from the coherent triple, with the derivative filled from the exact
/// identity (K₁/K₂)′ = (K₁/K₂)² + (3/β)·K₁/K₂ − 1.
pub fn ratio_k1_k2(beta: f64) -> Result<RatioValue, BesselError> {
    let triple = coherent_triple(beta)?;
    let ratio = triple.ratio();
    if !(ratio > 0.0 && ratio < 1.0 && ratio < 0.5 * beta) {
        return Err(BesselError::Inconsistent(format!(
            "ratio K1/K2 = {ratio} outside (0, min(1, beta/2)) at beta = {beta}"
        )));
    }
    Ok(RatioValue {
        argument: beta,
        ratio,
        derivative: ratio * ratio + 3.0 * ratio / beta - 1.0,
    })
}

/// Two-sided rational bounds on K₁/K₂, valid for β ≥ 1/2:
///
/// ```text
/// (128β³ + 48β² − 15β)/(128β³ + 240β² + 105β − 30)  ≤  K₁/K₂  ≤  (4β² + 3β/2)/(4β² + 15β/2 + 3)
/// ```
///
/// Below β = 1/2 the denominator of the lower bound changes sign, so the
/// domain is restricted.
pub fn ratio_bounds(beta: f64) -> Result<(f64, f64), BesselError> {
    check_beta(beta)?;
    if beta < 0.5 {
        return Err(BesselError::Domain(format!(
            "ratio bounds require beta >= 1/2, got {beta}"
        )));
    }
    let lower = (((128.0 * beta + 48.0) * beta - 15.0) * beta)
        / ((((128.0 * beta + 240.0) * beta) + 105.0) * beta - 30.0);
    let upper = (4.0 * beta * beta + 1.5 * beta) / (4.0 * beta * beta + 7.5 * beta + 3.0);
    Ok((lower, upper))
}

fn envelope_prefactor_scaled(beta: f64) -> f64 {
    (std::f64::consts::PI / 2.0).sqrt() / beta.sqrt()
}

/// Asymptotic envelope for K₀ in scaled form (the e^{−β} factor removed):
///
/// ```text
/// √(π/2)/√β · (1 − 1/8β)  ≤  e^β·K₀(β)  ≤  √(π/2)/√β · (1 − 1/8β + 9/128β²)
/// ```
///
/// valid for every β > 0 (the lower bound is only positive for β ≥ 1/8, but
/// containment holds everywhere).
pub fn envelope_k0_scaled(beta: f64) -> Result<Envelope, BesselError> {
    check_beta(beta)?;
    let pre = envelope_prefactor_scaled(beta);
    let inv8 = 1.0 / (8.0 * beta);
    Ok(Envelope {
        lower: pre * (1.0 - inv8),
        upper: pre * (1.0 - inv8 + 9.0 / (128.0 * beta * beta)),
    })
}

/// [`envelope_k0_scaled`] with the e^{−β} factor restored.
pub fn envelope_k0(beta: f64) -> Result<Envelope, BesselError> {
    let s = envelope_k0_scaled(beta)?;
    let damp = (-beta).exp();
    Ok(Envelope {
        lower: s.lower * damp,
        upper: s.upper * damp,
    })
}

/// Asymptotic envelope for K₀+K₁ in scaled form:
///
/// ```text
/// 2√(π/2)/√β · (1 + 1/8β − 3/128β²)  ≤  e^β·(K₀+K₁)(β)  ≤  2√(π/2)/√β · (1 + 1/8β)
/// ```
pub fn envelope_k0_plus_k1_scaled(beta: f64) -> Result<Envelope, BesselError> {
    check_beta(beta)?;
    let pre = 2.0 * envelope_prefactor_scaled(beta);
    let inv8 = 1.0 / (8.0 * beta);
    Ok(Envelope {
        lower: pre * (1.0 + inv8 - 3.0 / (128.0 * beta * beta)),
        upper: pre * (1.0 + inv8),
    })
}

/// [`envelope_k0_plus_k1_scaled`] with the e^{−β} factor restored.
pub fn envelope_k0_plus_k1(beta: f64) -> Result<Envelope, BesselError> {
    let s = envelope_k0_plus_k1_scaled(beta)?;
    let damp = (-beta).exp();
    Ok(Envelope {
        lower: s.lower * damp,
        upper: s.upper * damp,
    })
}

fn check_sandwich_arg(x: f64) -> Result<(), BesselError> {
    if !(x.is_finite() && x > 0.0) {
        return Err(BesselError::Domain(format!(
            "sandwich argument must be a positive finite real, got {x}"
        )));
    }
    Ok(())
}

/// Taylor sandwich 1 − x²/2 ≤ (1+x²)^{−1/2} ≤ 1 − x²/2 + 3x⁴/8, valid for all
/// x > 0. These are the truncations of the binomial series whose remainder
/// carries the sign of the first discarded term.
pub fn taylor_sandwich_inv_sqrt(x: f64) -> Result<Sandwich, BesselError> {
    check_sandwich_arg(x)?;
    let x2 = x * x;
    Ok(Sandwich {
        lower: 1.0 - 0.5 * x2,
        mid: 1.0 / (1.0 + x2).sqrt(),
        upper: 1.0 - 0.5 * x2 + 0.375 * x2 * x2,
    })
}

/// Taylor sandwich 1 + x²/2 − x⁴/8 ≤ (1+x²)^{1/2} ≤ 1 + x²/2 for all x > 0.
pub fn taylor_sandwich_sqrt(x: f64) -> Result<Sandwich, BesselError> {
    check_sandwich_arg(x)?;
    let x2 = x * x;
    Ok(Sandwich {
        lower: 1.0 + 0.5 * x2 - 0.125 * x2 * x2,
        mid: (1.0 + x2).sqrt(),
        upper: 1.0 + 0.5 * x2,
    })
}
