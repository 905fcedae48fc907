//! Pointwise lower-bound formulas for the conformal Yamabe constant `μ_c`
//! of `H^v_c × S^w`, and the closed-form infima of the two analytically
//! minimizable families.
//!
//! Writing `γ ≤ μ₀/μ₁` for a certified ratio bound, `μ₁ = μ(S^n)`,
//! `V = v(v−1)`, `W = w(w−1)` and `Q(c) = c²V/((1−c²)W + c²V)`, the bounds
//! are (all in absolute units of `μ`):
//!
//! - homothety:              `μ_c ≥ c^{2w/n} μ₁`
//! - curvature comparison:   `μ_c ≥ (s_c/s₀) γ μ₁` (requires `s_c > 0`)
//! - general interpolation:  `μ_c ≥ (γ − Q(c)(γ − c^{2w/n})) μ₁`
//! - relaxed interpolation:  `μ_c ≥ (1 − (1−c²) Q(c)) γ μ₁`
//!   (from the general bound via `c^{2w/n} ≥ c²` and `γ ≤ 1`; its exact
//!   infimum over `c` is the square-root closed form)
//! - refined relaxation (`v > w` only): `μ_c ≥ (1 − (1−c) Q(c)) γ μ₁`
//!   (sharpens `(1−c²)` to `(1−c)` using `c^{2w/n} ≥ c`, valid when
//!   `2w ≤ n`, i.e. `v ≥ w`)
//!
//! The general bound is a convex combination of `γμ₁` and `c^{2w/n}μ₁` with
//! weight `Q(c) = λ₀(c)`, so its comparison with the homothety bound flips
//! exactly at the crossover `c* = γ^{n/(2w)}`.

use std::fmt;
use std::str::FromStr;

use num_traits::Float;

use crate::constants::{cast, sphere_yamabe};
use crate::error::{Error, Result};
use crate::model_space::{CurvedModelSpace, ModelSpaceParams};
use crate::Real;

/// Identifies which lower-bound formula produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// `c^{2w/n} μ₁`, from rescaling the hyperbolic factor to curvature −1.
    Homothety,
    /// `(s_c/s₀) μ₀`, valid while the scalar curvature `s_c` is positive.
    CurvatureComparison,
    /// The general interpolation bound `(γ − Q(c)(γ − c^{2w/n})) μ₁`.
    General,
    /// The `(1 − (1−c) Q(c)) γ μ₁` refinement, applicable for `v > w`.
    GeneralRefined,
    /// Closed-form infimum of the relaxed interpolation bound:
    /// `(1 − V/(√V + √W)²) γ μ₁`.
    SqrtClosedForm,
    /// Closed-form infimum for `v = w`: `(γ − 4γ³/27) μ₁`.
    CubicClosedForm,
    /// Pointwise maximum of every applicable formula.
    Combined,
}

impl BoundKind {
    /// All kinds, in a stable order.
    pub const ALL: [BoundKind; 7] = [
        BoundKind::Homothety,
        BoundKind::CurvatureComparison,
        BoundKind::General,
        BoundKind::GeneralRefined,
        BoundKind::SqrtClosedForm,
        BoundKind::CubicClosedForm,
        BoundKind::Combined,
    ];

    /// Stable kebab-case name (used by the CLI and serialized output).
    pub fn name(&self) -> &'static str {
        match self {
            BoundKind::Homothety => "homothety",
            BoundKind::CurvatureComparison => "curvature-comparison",
            BoundKind::General => "general",
            BoundKind::GeneralRefined => "general-refined",
            BoundKind::SqrtClosedForm => "sqrt-closed-form",
            BoundKind::CubicClosedForm => "cubic-closed-form",
            BoundKind::Combined => "combined",
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundKind::ALL
            .iter()
            .copied()
            .find(|kind| kind.name() == s)
            .ok_or_else(|| {
                Error::Domain(format!(
                    "unknown bound formula {s:?}; expected one of: {}",
                    BoundKind::ALL.map(|k| k.name()).join(", ")
                ))
            })
    }
}

/// A certified lower bound for `inf_c μ_c` (or for a single `μ_c` when it
/// comes from a pointwise evaluation).
#[derive(Debug, Clone, PartialEq)]
pub struct BoundResult {
    /// The certified lower bound, in absolute units of `μ`.
    pub value: Real,
    /// The curvature scale at which the minimized formula attains `value`
    /// (for closed forms, the exact minimizer).
    pub minimizer_c: Real,
    /// Which formula produced the bound.
    pub formula: BoundKind,
    /// `value / μ(S^n)`.
    pub ratio: Real,
    /// Width of the final minimizer bracket (0 for closed forms).
    pub tolerance: Real,
}

/// `v(v−1)` and `w(w−1)` as floats.
fn dimension_products<F: Float>(params: ModelSpaceParams) -> (F, F) {
    let v = f64::from(params.v());
    let w = f64::from(params.w());
    (cast::<F>(v * (v - 1.0)), cast::<F>(w * (w - 1.0)))
}

/// The interpolation weight `Q(c) = c²V/((1−c²)W + c²V)`; equals the
/// optimal homothety weight `λ₀(c)`.
fn q_weight<F: Float>(vv: F, ww: F, c: F) -> F {
    let c2 = c * c;
    let denominator = (F::one() - c2) * ww + c2 * vv;
    if denominator == F::zero() {
        return F::zero();
    }
    c2 * vv / denominator
}

/// Ratio form of the homothety bound: `c^{2w/n}`.
pub fn homothety_ratio<F: Float>(params: ModelSpaceParams, c: F) -> F {
    let exponent = cast::<F>(2.0 * f64::from(params.w()) / f64::from(params.n()));
    c.powf(exponent)
}

/// Ratio form (vs `μ₁`) of the general interpolation bound:
/// `γ − Q(c)(γ − c^{2w/n})`.
pub fn general_ratio<F: Float>(params: ModelSpaceParams, c: F, gamma: F) -> F {
    let (vv, ww) = dimension_products::<F>(params);
    gamma - q_weight(vv, ww, c) * (gamma - homothety_ratio(params, c))
}

/// Ratio form (vs `μ₁`) of the relaxed interpolation bound
/// `(1 − (1−c²) Q(c)) γ`, whose exact infimum over `c ∈ [0,1]` is
/// [`sqrt_closed_form_bound`].
pub fn relaxed_general_ratio<F: Float>(params: ModelSpaceParams, c: F, gamma: F) -> F {
    let (vv, ww) = dimension_products::<F>(params);
    let c2 = c * c;
    gamma * (F::one() - (F::one() - c2) * q_weight(vv, ww, c))
}

/// Ratio form (vs `μ₁`) of the refined relaxation `(1 − (1−c) Q(c)) γ`,
/// valid for `v > w`.
pub fn general_refined_ratio<F: Float>(params: ModelSpaceParams, c: F, gamma: F) -> F {
    let (vv, ww) = dimension_products::<F>(params);
    gamma * (F::one() - (F::one() - c) * q_weight(vv, ww, c))
}

/// Validates a ratio argument `γ ∈ (0, 1]`.
fn check_gamma(gamma: Real) -> Result<()> {
    if !gamma.is_finite() || !(gamma > 0.0 && gamma <= 1.0) {
        return Err(Error::Domain(format!(
            "ratio bound gamma must lie in (0, 1], got {gamma}"
        )));
    }
    Ok(())
}

/// The homothety bound `c^{2w/n} μ(S^n)`.
pub fn homothety_bound(space: &CurvedModelSpace) -> Real {
    let mu1: Real = sphere_yamabe(space.params().n()).expect("n = v + w >= 3");
    homothety_ratio(space.params(), space.c()) * mu1
}

/// The positive-curvature comparison bound `(s_c/s₀) γ μ(S^n)`.
///
/// # Errors
///
/// [`Error::Domain`] if `s_c ≤ 0` (the comparison needs positive scalar
/// curvature, which fails for `c` close to 1 when `v > w`) or if `γ` is out
/// of range.
pub fn curvature_comparison_bound(space: &CurvedModelSpace, gamma: Real) -> Result<Real> {
    check_gamma(gamma)?;
    let s_c = space.scalar_curvature();
    if s_c <= 0.0 {
        return Err(Error::Domain(format!(
            "curvature comparison requires s_c > 0; s_c = {s_c} at c = {}",
            space.c()
        )));
    }
    let w = f64::from(space.params().w());
    let s_0 = w * (w - 1.0);
    let mu1: Real = sphere_yamabe(space.params().n()).expect("n = v + w >= 3");
    Ok(s_c / s_0 * gamma * mu1)
}

/// The general interpolation bound `(γ − Q(c)(γ − c^{2w/n})) μ(S^n)`.
///
/// At `c = 0` this degenerates to `γ μ₁` (the `μ₀` bound itself) and at
/// `c = 1` to `μ₁`; both are correct lower bounds, so the formula is used
/// on the closed interval.
pub fn general_bound(space: &CurvedModelSpace, gamma: Real) -> Result<Real> {
    check_gamma(gamma)?;
    let mu1: Real = sphere_yamabe(space.params().n()).expect("n = v + w >= 3");
    Ok(general_ratio(space.params(), space.c(), gamma) * mu1)
}

/// The relaxed interpolation bound `(1 − (1−c²) Q(c)) γ μ(S^n)`.
pub fn relaxed_general_bound(space: &CurvedModelSpace, gamma: Real) -> Result<Real> {
    check_gamma(gamma)?;
    let mu1: Real = sphere_yamabe(space.params().n()).expect("n = v + w >= 3");
    Ok(relaxed_general_ratio(space.params(), space.c(), gamma) * mu1)
}

/// The refined relaxation `(1 − (1−c) Q(c)) γ μ(S^n)`, applicable only for
/// `v > w`.
///
/// # Errors
///
/// [`Error::Domain`] if `v ≤ w` or `γ` is out of range.
pub fn general_bound_refined(space: &CurvedModelSpace, gamma: Real) -> Result<Real> {
    check_gamma(gamma)?;
    let params = space.params();
    if params.v() <= params.w() {
        return Err(Error::Domain(format!(
            "the refined bound requires v > w, got (v,w) = ({},{})",
            params.v(),
            params.w()
        )));
    }
    let mu1: Real = sphere_yamabe(params.n()).expect("n = v + w >= 3");
    Ok(general_refined_ratio(params, space.c(), gamma) * mu1)
}

/// Pointwise maximum of every formula applicable at this `(v, w, c)`: the
/// general interpolation bound, the homothety bound, and (for `v > w`) the
/// refined relaxation.
pub fn combined_pointwise_bound(space: &CurvedModelSpace, gamma: Real) -> Result<Real> {
    check_gamma(gamma)?;
    let mut best = general_bound(space, gamma)?.max(homothety_bound(space));
    if space.params().v() > space.params().w() {
        best = best.max(general_bound_refined(space, gamma)?);
    }
    Ok(best)
}

/// Closed-form infimum of the relaxed interpolation bound:
///
/// ```text
/// inf_c (1 − (1−c²) Q(c)) γ μ₁ = (1 − V/(√V + √W)²) γ μ₁,
/// ```
///
/// attained at `c² = √W/(√V + √W)`.
///
/// # Errors
///
/// [`Error::Domain`] if `v < 2`, `w < 2`, or `γ` out of range (`V = 0`
/// would make the relaxation vacuous).
pub fn sqrt_closed_form_bound(params: ModelSpaceParams, gamma: Real) -> Result<BoundResult> {
    check_gamma(gamma)?;
    if params.v() < 2 || params.w() < 2 {
        return Err(Error::Domain(format!(
            "the closed-form infimum requires v >= 2 and w >= 2, got ({},{})",
            params.v(),
            params.w()
        )));
    }
    let (vv, ww) = dimension_products::<Real>(params);
    let sqrt_v = vv.sqrt();
    let sqrt_w = ww.sqrt();
    let ratio_vs_mu0 = 1.0 - vv / ((sqrt_v + sqrt_w) * (sqrt_v + sqrt_w));
    let minimizer_c = (sqrt_w / (sqrt_v + sqrt_w)).sqrt();
    let mu1: Real = sphere_yamabe(params.n())?;
    let ratio = ratio_vs_mu0 * gamma;
    Ok(BoundResult {
        value: ratio * mu1,
        minimizer_c,
        formula: BoundKind::SqrtClosedForm,
        ratio,
        tolerance: 0.0,
    })
}

/// Closed-form infimum of the general interpolation bound for `v = w`,
/// where it reduces to the cubic `(c³ − γc² + γ) μ₁`:
///
/// ```text
/// inf_c (c³ − γc² + γ) μ₁ = (γ − 4γ³/27) μ₁,   attained at c = 2γ/3.
/// ```
///
/// # Errors
///
/// [`Error::Domain`] if `v ≠ w` or `γ` out of range.
pub fn cubic_closed_form_bound(params: ModelSpaceParams, gamma: Real) -> Result<BoundResult> {
    check_gamma(gamma)?;
    if params.v() != params.w() {
        return Err(Error::Domain(format!(
            "the cubic closed form requires v = w, got ({},{})",
            params.v(),
            params.w()
        )));
    }
    let mu1: Real = sphere_yamabe(params.n())?;
    let ratio = gamma - 4.0 / 27.0 * gamma * gamma * gamma;
    Ok(BoundResult {
        value: ratio * mu1,
        minimizer_c: 2.0 * gamma / 3.0,
        formula: BoundKind::CubicClosedForm,
        ratio,
        tolerance: 0.0,
    })
}

/// The exact minimizer of the refined relaxation for `(v, w) = (4, 2)`.
///
/// Differentiating `(1 − c) c² · 12 / (2 + 10c²)` and clearing denominators
/// reduces the stationarity condition to `5c³ + 3c − 2 = 0`.  The depressed
/// cubic has the single real (Cardano) root
///
/// ```text
/// c = t/5 − 1/t,   t = ∛(25 + 5√30),
/// ```
///
/// ≈ 0.48109.
pub fn refined_minimizer_v4w2<F: Float>() -> F {
    let t = (cast::<F>(25.0) + cast::<F>(5.0) * cast::<F>(30.0).sqrt()).cbrt();
    t / cast::<F>(5.0) - t.recip()
}

/// The bound value together with the μ-ratio, for a pointwise formula.
pub(crate) fn pointwise_value(
    kind: BoundKind,
    space: &CurvedModelSpace,
    gamma: Real,
) -> Result<Real> {
    match kind {
        BoundKind::Homothety => Ok(homothety_bound(space)),
        BoundKind::CurvatureComparison => curvature_comparison_bound(space, gamma),
        BoundKind::General => general_bound(space, gamma),
        BoundKind::GeneralRefined => general_bound_refined(space, gamma),
        BoundKind::SqrtClosedForm => relaxed_general_bound(space, gamma),
        BoundKind::CubicClosedForm => {
            check_gamma(gamma)?;
            if space.params().v() != space.params().w() {
                return Err(Error::Domain(format!(
                    "the cubic objective requires v = w, got ({},{})",
                    space.params().v(),
                    space.params().w()
                )));
            }
            let mu1: Real = sphere_yamabe(space.params().n())?;
            let c = space.c();
            Ok((c * c * c - gamma * c * c + gamma) * mu1)
        }
        BoundKind::Combined => combined_pointwise_bound(space, gamma),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(v: u32, w: u32, c: Real) -> CurvedModelSpace {
        CurvedModelSpace::new(ModelSpaceParams::new(v, w).unwrap(), c).unwrap()
    }

    #[test]
    fn bound_kind_names_round_trip() {
        for kind in BoundKind::ALL {
            assert_eq!(kind.name().parse::<BoundKind>().unwrap(), kind);
        }
        assert!("no-such-formula".parse::<BoundKind>().is_err());
    }

    #[test]
    fn homothety_endpoints() {
        let mu5: Real = sphere_yamabe(5).unwrap();
        assert!((homothety_bound(&space(2, 3, 1.0)) - mu5).abs() < 1e-12);
        assert_eq!(homothety_bound(&space(2, 3, 0.0)), 0.0);
        // (v,w) = (2,2): exponent 2w/n = 1.
        let mu4: Real = sphere_yamabe(4).unwrap();
        assert!((homothety_bound(&space(2, 2, 0.5)) - 0.5 * mu4).abs() < 1e-12);
    }

    #[test]
    fn curvature_comparison_cases() {
        let mu4: Real = sphere_yamabe(4).unwrap();
        // c = 0: the bound is γ μ₁ itself.
        let at_zero = curvature_comparison_bound(&space(2, 2, 0.0), 0.68).unwrap();
        assert!((at_zero - 0.68 * mu4).abs() < 1e-12);
        // (3,2) at c = 1 has s₁ = −4 < 0.
        assert!(matches!(
            curvature_comparison_bound(&space(3, 2, 1.0), 0.63),
            Err(Error::Domain(_))
        ));
        // (2,3) at c = 1: (s₁/s₀) γ μ₁ = (4/6) γ μ₁.
        let mu5: Real = sphere_yamabe(5).unwrap();
        let at_one = curvature_comparison_bound(&space(2, 3, 1.0), 0.75).unwrap();
        assert!((at_one - 4.0 / 6.0 * 0.75 * mu5).abs() < 1e-12);
    }

    #[test]
    fn general_bound_endpoints() {
        let mu5: Real = sphere_yamabe(5).unwrap();
        let at_zero = general_bound(&space(2, 3, 0.0), 0.75).unwrap();
        assert!((at_zero - 0.75 * mu5).abs() < 1e-12);
        let at_one = general_bound(&space(2, 3, 1.0), 0.75).unwrap();
        assert!((at_one - mu5).abs() < 1e-12);
    }

    #[test]
    fn general_bound_worked_value() {
        // (2,2), γ = 0.68, c = 0.5: Q = 1/3·... V = W = 2 so Q = c² = 0.25,
        // c^{2w/n} = c; ratio = 0.68 − 0.25·(0.68 − 0.5) = 0.635.
        let mu4: Real = sphere_yamabe(4).unwrap();
        let bound = general_bound(&space(2, 2, 0.5), 0.68).unwrap();
        assert!((bound - 0.635 * mu4).abs() < 1e-12);
    }

    #[test]
    fn refined_bound_requires_v_greater_than_w() {
        assert!(general_bound_refined(&space(2, 3, 0.5), 0.75).is_err());
        assert!(general_bound_refined(&space(4, 2, 0.5), 0.56885).is_ok());
        // Both endpoints give γ μ₁.
        let mu6: Real = sphere_yamabe(6).unwrap();
        for c in [0.0, 1.0] {
            let value = general_bound_refined(&space(4, 2, c), 0.56885).unwrap();
            assert!((value - 0.56885 * mu6).abs() < 1e-12);
        }
    }

    #[test]
    fn gamma_is_validated() {
        assert!(general_bound(&space(2, 2, 0.5), 0.0).is_err());
        assert!(general_bound(&space(2, 2, 0.5), 1.2).is_err());
        assert!(general_bound(&space(2, 2, 0.5), f64::NAN).is_err());
    }

    #[test]
    fn sqrt_closed_form_worked_values() {
        // (2,3): 1 − 2/(√2+√6)² = √3/2.
        let result = sqrt_closed_form_bound(ModelSpaceParams::new(2, 3).unwrap(), 0.75).unwrap();
        let expected_vs_mu0 = 3.0f64.sqrt() / 2.0;
        assert!((result.ratio - expected_vs_mu0 * 0.75).abs() < 1e-14);
        assert!(result.value >= 51.2);
        // Minimizer: c² = √6/(√2+√6).
        let c2 = 6.0f64.sqrt() / (2.0f64.sqrt() + 6.0f64.sqrt());
        assert!((result.minimizer_c - c2.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn cubic_closed_form_worked_values() {
        let result = cubic_closed_form_bound(ModelSpaceParams::new(2, 2).unwrap(), 0.68).unwrap();
        assert!((result.minimizer_c - 2.0 * 0.68 / 3.0).abs() < 1e-15);
        assert!(result.value >= 38.9);
        // γ = 1 gives 23/27 of μ₁.
        let at_one = cubic_closed_form_bound(ModelSpaceParams::new(2, 2).unwrap(), 1.0).unwrap();
        assert!((at_one.ratio - 23.0 / 27.0).abs() < 1e-14);
        assert!(cubic_closed_form_bound(ModelSpaceParams::new(2, 3).unwrap(), 0.5).is_err());
    }

    #[test]
    fn cardano_root_satisfies_the_cubic() {
        let c: Real = refined_minimizer_v4w2();
        assert!((5.0 * c * c * c + 3.0 * c - 2.0).abs() < 1e-12);
        assert!((c - 0.48108).abs() < 5e-5);
    }

    #[test]
    fn combined_takes_the_best_branch() {
        let params = ModelSpaceParams::new(2, 3).unwrap();
        let gamma = 0.75;
        let crossover = crate::model_space::crossover_c(params, gamma).unwrap();
        let below = CurvedModelSpace::new(params, crossover - 0.05).unwrap();
        let above = CurvedModelSpace::new(params, crossover + 0.05).unwrap();
        assert_eq!(
            combined_pointwise_bound(&below, gamma).unwrap(),
            general_bound(&below, gamma).unwrap()
        );
        assert_eq!(
            combined_pointwise_bound(&above, gamma).unwrap(),
            homothety_bound(&above)
        );
    }
}
