//! Certified minimization of bound formulas over the curvature scale
//! `c ∈ [0, 1]`.
//!
//! The minimized objectives are smooth with at most one interior local
//! minimum, so a dense scan followed by golden-section refinement of the
//! best bracket is reliable.  The reported minimum is always a value the
//! objective actually attained at an evaluated point (minus an optional
//! slack), never an extrapolation, so re-running with the same
//! configuration reproduces it bitwise.

use num_traits::Float;

use crate::bounds::{pointwise_value, BoundKind, BoundResult};
use crate::constants::sphere_yamabe;
use crate::error::{Error, Result};
use crate::model_space::{CurvedModelSpace, ModelSpaceParams};
use crate::Real;

/// Controls for [`minimize_on_unit_interval`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimizationConfig {
    /// Number of uniform grid cells in the initial scan (the grid has
    /// `grid_points + 1` nodes including both endpoints).
    pub grid_points: usize,
    /// Golden-section refinement stops once the bracket is narrower than
    /// this.
    pub refine_tolerance: Real,
    /// Subtracted from the attained minimum, to report a strict lower
    /// bound in the presence of objective evaluation error.  Zero by
    /// default: the formulas here are exact to rounding.
    pub value_slack: Real,
}

impl Default for MinimizationConfig {
    fn default() -> Self {
        MinimizationConfig {
            grid_points: 2000,
            refine_tolerance: 1e-10,
            value_slack: 0.0,
        }
    }
}

/// Outcome of a certified scan-and-refine minimization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimizationResult {
    /// Least value attained at any evaluated point, minus the configured
    /// slack.
    pub min_value: Real,
    /// Evaluation point attaining the minimum.
    pub argmin_c: Real,
    /// Total number of objective evaluations.
    pub evaluations: usize,
    /// Width of the final bracket around `argmin_c`.
    pub bracket_width: Real,
}

/// Minimizes `f` over `[0, 1]`: dense scan on a uniform grid, then
/// golden-section refinement of the cell pair around the best node.
///
/// # Errors
///
/// [`Error::Domain`] if the configuration is unusable, and
/// [`Error::Numerical`] if `f` returns a non-finite value (the offending
/// `c` is reported).
pub fn minimize_on_unit_interval(
    f: impl Fn(Real) -> Real,
    config: &MinimizationConfig,
) -> Result<MinimizationResult> {
    if config.grid_points < 2 {
        return Err(Error::Domain(format!(
            "grid_points must be at least 2, got {}",
            config.grid_points
        )));
    }
    if config.refine_tolerance <= 0.0 || !config.refine_tolerance.is_finite() {
        return Err(Error::Domain(format!(
            "refine_tolerance must be a positive finite number, got {}",
            config.refine_tolerance
        )));
    }
    if !config.value_slack.is_finite() || config.value_slack < 0.0 {
        return Err(Error::Domain(format!(
            "value_slack must be non-negative and finite, got {}",
            config.value_slack
        )));
    }

    let mut evaluations = 0usize;
    let mut eval = |c: Real| -> Result<Real> {
        evaluations += 1;
        let value = f(c);
        if !value.is_finite() {
            return Err(Error::Numerical(format!(
                "objective returned a non-finite value ({value}) at c = {c}"
            )));
        }
        Ok(value)
    };

    let g = config.grid_points;
    let mut best_index = 0usize;
    let mut best_c = 0.0;
    let mut best_value = eval(0.0)?;
    for index in 1..=g {
        let c = if index == g {
            1.0
        } else {
            index as Real / g as Real
        };
        let value = eval(c)?;
        if value < best_value {
            best_value = value;
            best_c = c;
            best_index = index;
        }
    }

    // Bracket one cell on each side of the best node (clamped at the
    // endpoints), which must contain the minimum of a unimodal objective.
    let mut lo = if best_index == 0 {
        0.0
    } else {
        (best_index - 1) as Real / g as Real
    };
    let mut hi = if best_index == g {
        1.0
    } else {
        (best_index + 1) as Real / g as Real
    };

    // Golden-section search keeps a shrinking bracket [lo, hi]; every probe
    // updates the attained best.
    let invphi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c1 = hi - invphi * (hi - lo);
    let mut c2 = lo + invphi * (hi - lo);
    let mut f1 = eval(c1)?;
    let mut f2 = eval(c2)?;
    while hi - lo > config.refine_tolerance {
        if f1 <= f2 {
            hi = c2;
            c2 = c1;
            f2 = f1;
            c1 = hi - invphi * (hi - lo);
            f1 = eval(c1)?;
        } else {
            lo = c1;
            c1 = c2;
            f1 = f2;
            c2 = lo + invphi * (hi - lo);
            f2 = eval(c2)?;
        }
        let (probe_c, probe_value) = if f1 <= f2 { (c1, f1) } else { (c2, f2) };
        if probe_value < best_value {
            best_value = probe_value;
            best_c = probe_c;
        }
    }

    Ok(MinimizationResult {
        min_value: best_value - config.value_slack,
        argmin_c: best_c,
        evaluations,
        bracket_width: hi - lo,
    })
}

/// Minimizes the chosen bound formula over `c ∈ [0, 1]` and packages the
/// result with its μ-ratio.
///
/// The curvature-comparison formula is only defined where `s_c > 0`; for
/// minimization it is extended by `+∞` (the scan skips those points), so
/// the reported minimum is the infimum over its domain of validity.  The
/// closed-form kinds are answered exactly without scanning.
///
/// # Errors
///
/// [`Error::Domain`] for out-of-range `γ` or a formula/parameter mismatch,
/// [`Error::Numerical`] if an objective evaluation fails.
pub fn minimize_bound(
    params: ModelSpaceParams,
    gamma: Real,
    which: BoundKind,
    config: &MinimizationConfig,
) -> Result<BoundResult> {
    if !gamma.is_finite() || !(gamma > 0.0 && gamma <= 1.0) {
        return Err(Error::Domain(format!(
            "ratio bound gamma must lie in (0, 1], got {gamma}"
        )));
    }
    let mu1: Real = sphere_yamabe(params.n())?;

    match which {
        BoundKind::SqrtClosedForm => return crate::bounds::sqrt_closed_form_bound(params, gamma),
        BoundKind::CubicClosedForm => return crate::bounds::cubic_closed_form_bound(params, gamma),
        BoundKind::GeneralRefined if params.v() <= params.w() => {
            return Err(Error::Domain(format!(
                "the refined bound requires v > w, got (v,w) = ({},{})",
                params.v(),
                params.w()
            )));
        }
        BoundKind::CurvatureComparison if params.v() >= params.w() => {
            // s_c = W − c²V with W ≤ V stays non-positive near c = 1 and
            // the infimum over the positivity region is the degenerate
            // γ μ₁; reject rather than report a vacuous minimum.
            return Err(Error::Domain(format!(
                "curvature-comparison minimization needs w > v so that s_c > 0 \
                 on all of [0, 1]; got (v,w) = ({},{})",
                params.v(),
                params.w()
            )));
        }
        _ => {}
    }

    let objective = |c: Real| -> Real {
        let space = match CurvedModelSpace::new(params, c) {
            Ok(space) => space,
            Err(_) => return Real::nan(),
        };
        match pointwise_value(which, &space, gamma) {
            Ok(value) => value,
            // Inside the scan a Domain error means "formula not applicable
            // at this c" (only curvature comparison); treat as +∞.
            Err(Error::Domain(_)) => Real::infinity(),
            Err(_) => Real::nan(),
        }
    };

    // `minimize_on_unit_interval` rejects non-finite objective values, so
    // mask the +∞ extension through a large finite sentinel instead.
    let sentinel = 16.0 * mu1;
    let masked = |c: Real| -> Real {
        let value = objective(c);
        if value == Real::infinity() {
            sentinel
        } else {
            value
        }
    };
    let result = minimize_on_unit_interval(masked, config)?;
    if result.min_value + config.value_slack >= sentinel {
        return Err(Error::Numerical(format!(
            "the {which} bound was not applicable anywhere on the scan grid"
        )));
    }

    Ok(BoundResult {
        value: result.min_value,
        minimizer_c: result.argmin_c,
        formula: which,
        ratio: result.min_value / mu1,
        tolerance: result.bracket_width.max(config.refine_tolerance),
    })
}
