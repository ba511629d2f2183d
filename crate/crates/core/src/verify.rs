//! Numerical certification of the inequalities behind the equation of state.
//!
//! Each check evaluates one proven inequality at one grid point and records
//! the quantity it constrains together with a signed margin: positive margin
//! means the inequality is satisfied, measured in the inequality's natural
//! units with no normalization, so near-cancellation regimes show up honestly
//! in the raw slack. [`sweep`] runs a set of checks over a log-spaced β grid
//! (concurrently; aggregation is order-independent) and reports the worst
//! margin per check.
//!
//! For large β the causality and invertibility checks subtract O(1)
//! quantities; a first-order error budget is propagated from the accuracy of
//! the Bessel ratio, and a record whose margin is smaller than ten times that
//! budget is flagged inconclusive-at-precision rather than trusted — the flag
//! is carried separately from pass/fail, which always means exactly
//! margin > 0.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::bessel;
use crate::eos::{self, EosError};

/// Assumed relative accuracy of the memoized Bessel ratio, used for the
/// error budgets. Ten times the fast-path quadrature target, so the budgets
/// stay conservative.
const RATIO_REL_ERR: f64 = 10.0 * bessel::FAST_PATH_TARGET;

/// A record's margin must clear ten times its evaluation-error budget to be
/// considered conclusive.
const INCONCLUSIVE_FACTOR: f64 = 10.0;

/// Exact integer coefficients of the sextic whose positivity for β ≥ 1/2
/// closes the causality proof, highest degree first.
const POSITIVITY_POLY: [f64; 7] = [3072.0, 20992.0, 36936.0, 25107.0, 6150.0, -540.0, -360.0];

/// The inequalities that can be certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckKind {
    /// 3r + βr² − β − 4/β < 0 (global invertibility of the state map).
    Conjecture1,
    /// M(β) finite and > 3 (hyperbolicity and the c/√3 sound-speed bound).
    Conjecture2,
    /// r² < 1 − 3/(4 + βr), the algebraic reformulation of Conjecture 2.
    Reformulation,
    /// (K₁/K₂)′ < 3/β² (specific energy increases with temperature).
    Kunik,
    /// The rational two-sided bounds on K₁/K₂ for β ≥ 1/2.
    RatioSandwich,
    /// The asymptotic envelopes containing K₀ and K₀+K₁.
    Envelopes,
    /// Positivity of the closing sextic and of its last three terms, β ≥ 1/2.
    PolynomialPositivity,
    /// The Taylor sandwiches for (1+x²)^±½.
    Taylor,
}

impl CheckKind {
    /// Every check, in report order.
    pub const ALL: [CheckKind; 8] = [
        CheckKind::Conjecture1,
        CheckKind::Conjecture2,
        CheckKind::Reformulation,
        CheckKind::Kunik,
        CheckKind::RatioSandwich,
        CheckKind::Envelopes,
        CheckKind::PolynomialPositivity,
        CheckKind::Taylor,
    ];

    /// Stable identifier used in reports and on the command line.
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Conjecture1 => "conjecture1",
            CheckKind::Conjecture2 => "conjecture2",
            CheckKind::Reformulation => "reformulation",
            CheckKind::Kunik => "kunik",
            CheckKind::RatioSandwich => "ratio-sandwich",
            CheckKind::Envelopes => "envelopes",
            CheckKind::PolynomialPositivity => "polynomial",
            CheckKind::Taylor => "taylor",
        }
    }

    /// Parse a report identifier.
    pub fn parse(name: &str) -> Option<CheckKind> {
        CheckKind::ALL.into_iter().find(|c| c.name() == name)
    }

    /// Smallest β the check is defined for; grid points below it are skipped
    /// by [`sweep`].
    pub fn domain_min(self) -> f64 {
        match self {
            CheckKind::RatioSandwich | CheckKind::PolynomialPositivity => 0.5,
            _ => 0.0,
        }
    }
}

impl std::fmt::Display for CheckKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One inequality evaluated at one grid point. `pass` is exactly
/// `margin > 0`; `inconclusive` flags a margin smaller than its evaluation
/// error budget and is reported separately from failure.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckRecord {
    pub beta: f64,
    pub check: CheckKind,
    /// The quantity the inequality bounds.
    pub value: f64,
    /// Signed slack: positive means the inequality holds.
    pub margin: f64,
    pub pass: bool,
    pub inconclusive: bool,
    /// Diagnostic for records produced from evaluation errors.
    pub note: Option<String>,
}

impl CheckRecord {
    fn conclusive(beta: f64, check: CheckKind, value: f64, margin: f64) -> Self {
        CheckRecord {
            beta,
            check,
            value,
            margin,
            pass: margin > 0.0,
            inconclusive: false,
            note: None,
        }
    }

    fn budgeted(beta: f64, check: CheckKind, value: f64, margin: f64, budget: f64) -> Self {
        CheckRecord {
            beta,
            check,
            value,
            margin,
            pass: margin > 0.0,
            inconclusive: margin.abs() < INCONCLUSIVE_FACTOR * budget,
            note: None,
        }
    }
}

/// Log-spaced evaluation grid. A single-point grid evaluates at `beta_min`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub beta_min: f64,
    pub beta_max: f64,
    pub points: usize,
}

/// Grid validation failure.
#[derive(Debug, Clone, thiserror::Error)]
#[error("invalid grid: {0}")]
pub struct InvalidGrid(String);

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            beta_min: 1e-3,
            beta_max: 1e3,
            points: 10_000,
        }
    }
}

impl GridSpec {
    pub fn new(beta_min: f64, beta_max: f64, points: usize) -> Result<Self, InvalidGrid> {
        if !(beta_min.is_finite() && beta_min > 0.0) {
            return Err(InvalidGrid(format!(
                "beta_min must be a positive finite real, got {beta_min}"
            )));
        }
        if !(beta_max.is_finite() && beta_max >= beta_min) {
            return Err(InvalidGrid(format!(
                "beta_max must be finite and >= beta_min, got {beta_max}"
            )));
        }
        if points == 0 {
            return Err(InvalidGrid("points must be at least 1".into()));
        }
        Ok(GridSpec {
            beta_min,
            beta_max,
            points,
        })
    }

    /// The grid points, endpoints exact.
    pub fn betas(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.beta_min];
        }
        let log_min = self.beta_min.ln();
        let log_max = self.beta_max.ln();
        let step = (log_max - log_min) / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i == 0 {
                    self.beta_min
                } else if i == self.points - 1 {
                    self.beta_max
                } else {
                    (log_min + step * i as f64).exp()
                }
            })
            .collect()
    }
}

/// Worst (smallest) margin over a grid, with the β where it occurred.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorstMargin {
    pub beta: f64,
    pub margin: f64,
}

/// Outcome of a [`sweep`]: all records in grid order, the worst margin per
/// check, and the aggregate pass flag.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityReport {
    pub grid: Vec<f64>,
    pub records: Vec<CheckRecord>,
    pub worst_margin_per_check: BTreeMap<&'static str, WorstMargin>,
    pub all_pass: bool,
}

impl InequalityReport {
    /// Records that failed outright (not merely inconclusive).
    pub fn hard_failures(&self) -> usize {
        self.records.iter().filter(|r| !r.pass && !r.inconclusive).count()
    }

    /// Records whose margin was below the evaluation error budget.
    pub fn inconclusive_count(&self) -> usize {
        self.records.iter().filter(|r| r.inconclusive).count()
    }
}

/// Invertibility: the value 3r + βr² − β − 4/β must be strictly negative.
/// The margin is its negative. The very same expression is the denominator
/// of the compressibility, so this check and the finiteness of M(β) agree by
/// construction.
pub fn check_conjecture1(beta: f64) -> Result<CheckRecord, EosError> {
    let r = bessel::ratio_k1_k2(beta)?.ratio;
    let value = eos::invertibility_criterion(beta)?;
    let abs_terms = 3.0 * r + beta * r * r + beta + 4.0 / beta;
    let budget = (3.0 + 2.0 * beta * r) * RATIO_REL_ERR * r + 8.0 * f64::EPSILON * abs_terms;
    Ok(CheckRecord::budgeted(
        beta,
        CheckKind::Conjecture1,
        value,
        -value,
        budget,
    ))
}

/// Hyperbolicity and causality: M(β) = ∂ρ/∂p|_η must be finite and exceed 3.
/// The margin is M − 3.
pub fn check_conjecture2(beta: f64) -> Result<CheckRecord, EosError> {
    let r = bessel::ratio_k1_k2(beta)?.ratio;
    match eos::drho_dp_at_constant_entropy(beta) {
        Ok(m) => {
            let numerator = 4.0 * r + beta * r * r - beta;
            let denominator = eos::invertibility_criterion(beta)?;
            let dm_dr = beta
                + ((4.0 + 2.0 * beta * r) * denominator - numerator * (3.0 + 2.0 * beta * r))
                    / (denominator * denominator);
            let budget = dm_dr.abs() * RATIO_REL_ERR * r
                + 8.0 * f64::EPSILON * (3.0 + beta * r + (numerator / denominator).abs());
            Ok(CheckRecord::budgeted(
                beta,
                CheckKind::Conjecture2,
                m,
                m - 3.0,
                budget,
            ))
        }
        // a non-negative denominator makes M undefined: record as failure
        Err(EosError::Internal(msg)) => Ok(CheckRecord {
            beta,
            check: CheckKind::Conjecture2,
            value: f64::NAN,
            margin: f64::NEG_INFINITY,
            pass: false,
            inconclusive: false,
            note: Some(msg),
        }),
        Err(e) => Err(e),
    }
}

/// The reformulated causality inequality r² < 1 − 3/(4 + βr); the value and
/// margin are the right-hand side minus the left-hand side.
pub fn check_reformulation(beta: f64) -> Result<CheckRecord, EosError> {
    let r = bessel::ratio_k1_k2(beta)?.ratio;
    let shifted = 4.0 + beta * r;
    let value = (1.0 - 3.0 / shifted) - r * r;
    let budget = (3.0 * beta / (shifted * shifted) + 2.0 * r) * RATIO_REL_ERR * r
        + 8.0 * f64::EPSILON * (1.0 + 3.0 / shifted + r * r);
    Ok(CheckRecord::budgeted(
        beta,
        CheckKind::Reformulation,
        value,
        value,
        budget,
    ))
}

/// The ratio-derivative bound (K₁/K₂)′ < 3/β²; margin is the gap.
pub fn check_kunik(beta: f64) -> Result<CheckRecord, EosError> {
    let rv = bessel::ratio_k1_k2(beta)?;
    let r = rv.ratio;
    let value = 3.0 / (beta * beta) - rv.derivative;
    let budget = (2.0 * r + 3.0 / beta) * RATIO_REL_ERR * r
        + 8.0 * f64::EPSILON * (3.0 / (beta * beta) + rv.derivative.abs());
    Ok(CheckRecord::budgeted(
        beta,
        CheckKind::Kunik,
        value,
        value,
        budget,
    ))
}

/// The rational sandwich lower ≤ K₁/K₂ ≤ upper for β ≥ 1/2; the value is the
/// ratio, the margin the smaller of the two gaps. The gaps close like β⁻²
/// and β⁻⁴, so far beyond the default grid they eventually sink into the
/// certified ratio accuracy and the record goes inconclusive.
pub fn check_ratio_sandwich(beta: f64) -> Result<CheckRecord, EosError> {
    let r = bessel::ratio_k1_k2(beta)?.ratio;
    let (lower, upper) = bessel::ratio_bounds(beta)?;
    let margin = (r - lower).min(upper - r);
    let budget = 2.0 * bessel::FAST_PATH_TARGET * r + 8.0 * f64::EPSILON;
    Ok(CheckRecord::budgeted(
        beta,
        CheckKind::RatioSandwich,
        r,
        margin,
        budget,
    ))
}

/// Containment of K₀ and K₀+K₁ in their asymptotic envelopes, compared in
/// scaled form at every β; the value is e^β·K₀, the margin the smallest of
/// the four gaps (in scaled units).
pub fn check_envelopes(beta: f64) -> Result<CheckRecord, EosError> {
    let triple = bessel::coherent_triple(beta)?;
    let k0 = triple.scaled[0];
    let sum = triple.scaled[0] + triple.scaled[1];
    let e0 = bessel::envelope_k0_scaled(beta)?;
    let e01 = bessel::envelope_k0_plus_k1_scaled(beta)?;
    let margin = (k0 - e0.lower)
        .min(e0.upper - k0)
        .min(sum - e01.lower)
        .min(e01.upper - sum);
    // the gaps close like beta^{-7/2}; the budget is the certified accuracy
    // of the scaled values
    let budget = bessel::FAST_PATH_TARGET * (k0 + sum) + 8.0 * f64::EPSILON * sum;
    Ok(CheckRecord::budgeted(
        beta,
        CheckKind::Envelopes,
        k0,
        margin,
        budget,
    ))
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, c| acc * x + c)
}

/// Positivity of (3/4)·P(β) for the exact-coefficient sextic P, together
/// with positivity of its last three terms alone (which already suffices for
/// β ≥ 1/2); the margin is the smaller of the two.
pub fn check_polynomial_positivity(beta: f64) -> Result<CheckRecord, EosError> {
    if !(beta.is_finite() && beta >= 0.5) {
        return Err(EosError::Domain(format!(
            "polynomial positivity is asserted for beta >= 1/2, got {beta}"
        )));
    }
    let value = 0.75 * horner(&POSITIVITY_POLY, beta);
    let last_three = (6150.0 * beta - 540.0) * beta - 360.0;
    Ok(CheckRecord::conclusive(
        beta,
        CheckKind::PolynomialPositivity,
        value,
        value.min(last_three),
    ))
}

/// Both Taylor sandwiches at x; the value is (1+x²)^{−1/2}, the margin the
/// smallest of the four slacks.
///
/// The slacks shrink like x⁶ as x → 0, far below the spacing of doubles near
/// one, so they are assembled from expm1/log1p forms of (1+x²)^±½ − 1 rather
/// than by subtracting the sandwich endpoints directly; that keeps them
/// resolved down to x ≈ 1e-3 and beyond.
pub fn check_taylor(x: f64) -> Result<CheckRecord, EosError> {
    bessel::taylor_sandwich_inv_sqrt(x)?; // domain validation
    let u = x * x;
    // (1+u)^{-1/2} − 1 and (1+u)^{1/2} − 1 to full relative precision
    let w = (-0.5 * u.ln_1p()).exp_m1();
    let v = (0.5 * u.ln_1p()).exp_m1();
    let inv_lower_gap = w + 0.5 * u;
    let inv_upper_gap = 0.375 * u * u - inv_lower_gap;
    let sqrt_upper_gap = 0.5 * u - v;
    let sqrt_lower_gap = 0.125 * u * u - sqrt_upper_gap;
    let margin = inv_lower_gap
        .min(inv_upper_gap)
        .min(sqrt_lower_gap)
        .min(sqrt_upper_gap);
    // the gap evaluations are exact up to a few ulps of u
    let budget = 2.0 * f64::EPSILON * u;
    Ok(CheckRecord::budgeted(
        x,
        CheckKind::Taylor,
        1.0 + w,
        margin,
        budget,
    ))
}

fn run_check(check: CheckKind, beta: f64) -> CheckRecord {
    let outcome = match check {
        CheckKind::Conjecture1 => check_conjecture1(beta),
        CheckKind::Conjecture2 => check_conjecture2(beta),
        CheckKind::Reformulation => check_reformulation(beta),
        CheckKind::Kunik => check_kunik(beta),
        CheckKind::RatioSandwich => check_ratio_sandwich(beta),
        CheckKind::Envelopes => check_envelopes(beta),
        CheckKind::PolynomialPositivity => check_polynomial_positivity(beta),
        CheckKind::Taylor => check_taylor(beta),
    };
    // evaluation errors become failing records, never a crash
    outcome.unwrap_or_else(|e| CheckRecord {
        beta,
        check,
        value: f64::NAN,
        margin: f64::NEG_INFINITY,
        pass: false,
        inconclusive: false,
        note: Some(e.to_string()),
    })
}

/// Run the named checks at every applicable grid point. Grid points below a
/// check's domain are skipped; everything else, including evaluation errors,
/// produces a record. Records are ordered by grid point, then by the order
/// of `checks`.
pub fn sweep(grid: &GridSpec, checks: &[CheckKind]) -> InequalityReport {
    let betas = grid.betas();
    let per_point: Vec<Vec<CheckRecord>> = betas
        .par_iter()
        .map(|&beta| {
            checks
                .iter()
                .filter(|c| beta >= c.domain_min())
                .map(|&c| run_check(c, beta))
                .collect()
        })
        .collect();

    let records: Vec<CheckRecord> = per_point.into_iter().flatten().collect();

    let mut worst: BTreeMap<&'static str, WorstMargin> = BTreeMap::new();
    for r in &records {
        let entry = worst.entry(r.check.name());
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(WorstMargin {
                    beta: r.beta,
                    margin: r.margin,
                });
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                if r.margin < o.get().margin {
                    o.insert(WorstMargin {
                        beta: r.beta,
                        margin: r.margin,
                    });
                }
            }
        }
    }

    let all_pass = records.iter().all(|r| r.pass);
    InequalityReport {
        grid: betas,
        records,
        worst_margin_per_check: worst,
        all_pass,
    }
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn conjecture1_at_spec_points() {
        let r = check_conjecture1(1.0).unwrap();
        assert!(r.pass && !r.inconclusive);
        assert_relative_eq!(r.value, -3.751_449_812_243_441_497_4, max_relative = 1e-11);

        // at small beta the −4/β term dominates
        let r = check_conjecture1(1e-3).unwrap();
        assert!(r.pass);
        assert!(r.margin > 3999.0 && r.margin < 4001.0);

        // near-cancellation regime, still conclusive at the fast-path accuracy
        let r = check_conjecture1(1e3).unwrap();
        assert!(r.pass && !r.inconclusive);
        assert_relative_eq!(r.value, -2.503_744_379_225_737_89e-3, max_relative = 1e-9);
    }

    #[test]
    fn conjecture2_at_spec_points() {
        for beta in [0.01, 1.0, 100.0] {
            let r = check_conjecture2(beta).unwrap();
            assert!(r.pass && !r.inconclusive, "beta {beta}: {r:?}");
        }
        let r = check_conjecture2(0.01).unwrap();
        assert_relative_eq!(r.value, 3.000_024_999_063_136_489, max_relative = 1e-11);
        let r = check_conjecture2(100.0).unwrap();
        assert_relative_eq!(r.value, 62.108_269_496_633_774, max_relative = 1e-11);
        // M ≈ 3β/5 in the classical regime
        assert!((r.value - 60.0).abs() < 3.0);
    }

    #[test]
    fn conjecture1_value_is_bitwise_the_compressibility_denominator() {
        for beta in [0.01, 0.7, 1.0, 42.0, 900.0] {
            let record = check_conjecture1(beta).unwrap();
            let denominator = eos::invertibility_criterion(beta).unwrap();
            assert_eq!(record.value, denominator);
        }
    }

    #[test]
    fn reformulation_at_spec_points() {
        for beta in [0.5, 50.0] {
            let r = check_reformulation(beta).unwrap();
            assert!(r.pass, "beta {beta}: {r:?}");
        }
        // small beta: margin stays close to 1/4 = 1 − 3/4 minus an O(β²) term
        let r = check_reformulation(0.1).unwrap();
        assert!(r.margin > 0.2 && r.margin < 0.25);
    }

    #[test]
    fn kunik_at_spec_points() {
        for beta in [0.01, 1.0, 100.0] {
            let r = check_kunik(beta).unwrap();
            assert!(r.pass, "beta {beta}: {r:?}");
        }
        // large-beta gap decays like 3/(2β²)
        let r = check_kunik(100.0).unwrap();
        assert_relative_eq!(r.margin, 1.5e-4, max_relative = 0.05);
    }

    #[test]
    fn ratio_sandwich_at_spec_points() {
        for beta in [0.5, 1.0, 10.0] {
            let r = check_ratio_sandwich(beta).unwrap();
            assert!(r.pass, "beta {beta}: {r:?}");
            assert!(r.margin > 0.0);
        }
        assert!(check_ratio_sandwich(0.4).is_err());
    }

    #[test]
    fn envelopes_at_spec_points() {
        for beta in [0.1, 1.0, 500.0] {
            let r = check_envelopes(beta).unwrap();
            assert!(r.pass, "beta {beta}: {r:?}");
        }
    }

    #[test]
    fn polynomial_positivity_exact_values() {
        let r = check_polynomial_positivity(0.5).unwrap();
        assert!(r.pass);
        // exact dyadic evaluation at β = 1/2
        assert_eq!(r.value, 0.75 * 7058.375);
        // last three terms alone: 6150/4 − 270 − 360
        assert_eq!(r.margin, 907.5);

        let r = check_polynomial_positivity(1.0).unwrap();
        assert_eq!(
            r.value,
            0.75 * (3072.0 + 20992.0 + 36936.0 + 25107.0 + 6150.0 - 540.0 - 360.0)
        );
        assert_eq!(r.value, 68517.75);

        assert!(check_polynomial_positivity(0.49).is_err());
    }

    #[test]
    fn taylor_at_spec_points() {
        for x in [0.1, 1.0, 10.0] {
            let r = check_taylor(x).unwrap();
            assert!(r.pass, "x {x}: {r:?}");
        }
    }

    #[test]
    fn sweep_default_checks_on_a_coarse_grid() {
        let grid = GridSpec::new(1e-3, 1e3, 61).unwrap();
        let report = sweep(&grid, &CheckKind::ALL);
        assert!(report.all_pass);
        assert_eq!(report.inconclusive_count(), 0);
        assert_eq!(report.hard_failures(), 0);
        // checks with restricted domain only run from 1/2 up
        let sandwich_records = report
            .records
            .iter()
            .filter(|r| r.check == CheckKind::RatioSandwich)
            .count();
        assert!(sandwich_records < report.grid.len());
        assert!(report.records.iter().all(|r| r.pass == (r.margin > 0.0)));
    }

    #[test]
    fn sweep_single_point_grid() {
        let grid = GridSpec::new(1.0, 1.0, 1).unwrap();
        let report = sweep(&grid, &CheckKind::ALL);
        assert_eq!(report.grid, vec![1.0]);
        assert_eq!(report.records.len(), CheckKind::ALL.len());
        assert!(report.all_pass);
    }

    #[test]
    fn sweep_empty_check_list_is_vacuously_true() {
        let grid = GridSpec::new(0.1, 10.0, 5).unwrap();
        let report = sweep(&grid, &[]);
        assert!(report.records.is_empty());
        assert!(report.all_pass);
        assert!(report.worst_margin_per_check.is_empty());
    }

    #[test]
    fn sweep_is_deterministic() {
        let grid = GridSpec::new(0.01, 100.0, 37).unwrap();
        let a = sweep(&grid, &CheckKind::ALL);
        let b = sweep(&grid, &CheckKind::ALL);
        assert_eq!(a, b);
    }

    #[test]
    fn reformulation_and_conjecture2_co_pass() {
        let grid = GridSpec::new(1e-3, 1e3, 101).unwrap();
        for &beta in &grid.betas() {
            let a = check_reformulation(beta).unwrap();
            let b = check_conjecture2(beta).unwrap();
            assert_eq!(a.pass, b.pass, "beta {beta}");
        }
    }

    #[test]
    fn grid_spec_validation_and_spacing() {
        assert!(GridSpec::new(0.0, 1.0, 3).is_err());
        assert!(GridSpec::new(-1.0, 1.0, 3).is_err());
        assert!(GridSpec::new(2.0, 1.0, 3).is_err());
        assert!(GridSpec::new(1.0, 2.0, 0).is_err());
        assert!(GridSpec::new(1.0, f64::INFINITY, 3).is_err());

        let g = GridSpec::new(1e-2, 1e2, 5).unwrap().betas();
        assert_eq!(g.len(), 5);
        assert_eq!(g[0], 1e-2);
        assert_eq!(g[4], 1e2);
        assert_relative_eq!(g[2], 1.0, max_relative = 1e-14);

        assert_eq!(GridSpec::new(3.0, 7.0, 1).unwrap().betas(), vec![3.0]);
    }

    #[test]
    fn check_name_round_trip() {
        for c in CheckKind::ALL {
            assert_eq!(CheckKind::parse(c.name()), Some(c));
        }
        assert_eq!(CheckKind::parse("nonsense"), None);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn pass_flag_always_equals_margin_sign(exp in -3.0f64..3.0) {
            let beta = 10f64.powf(exp);
            for check in CheckKind::ALL {
                if beta < check.domain_min() { continue; }
                let r = run_check(check, beta);
                prop_assert_eq!(r.pass, r.margin > 0.0);
            }
        }
    }
}
