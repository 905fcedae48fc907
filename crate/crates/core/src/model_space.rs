//! Parameters and derived scalars of the model space `M_c = H^v_c × S^w`:
//! the `(v,w) ↔ (n,k)` translation, the scalar curvature `s_c`, the optimal
//! interpolation weights `(λ₀, τ₀)`, and the crossover curvature at which
//! the general interpolation bound and the homothety bound trade places.

use num_traits::Float;

use crate::constants::cast;
use crate::error::{Error, Result};
use crate::Real;

/// The dimension pair `(v, w)` of the model space `H^v_c × S^w`, with the
/// derived surgery data `n = v + w` and `k = v − 1`.
///
/// Surgery-constant use requires `w ≥ 2` (equivalently `k ≤ n − 3`); the
/// constructor enforces this together with `v ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct ModelSpaceParams {
    v: u32,
    w: u32,
}

impl ModelSpaceParams {
    /// Builds the parameter pair, enforcing `v ≥ 1` and `w ≥ 2`.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] if the dimensions are out of range.
    pub fn new(v: u32, w: u32) -> Result<Self> {
        if v < 1 {
            return Err(Error::Domain(format!(
                "model space requires hyperbolic dimension v >= 1, got {v}"
            )));
        }
        if w < 2 {
            return Err(Error::Domain(format!(
                "model space requires sphere dimension w >= 2 (codimension >= 3), got {w}"
            )));
        }
        Ok(Self { v, w })
    }

    /// Translates surgery data `(n, k)` into the model-space pair
    /// `v = k + 1`, `w = n − k − 1`.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] unless `n ≥ 3` and `0 ≤ k ≤ n − 3`.
    pub fn from_surgery(n: u32, k: u32) -> Result<Self> {
        if n < 3 || k + 3 > n {
            return Err(Error::Domain(format!(
                "surgery data requires n >= 3 and 0 <= k <= n - 3, got (n,k) = ({n},{k})"
            )));
        }
        Self::new(k + 1, n - k - 1)
    }

    /// Hyperbolic factor dimension `v`.
    pub fn v(&self) -> u32 {
        self.v
    }

    /// Sphere factor dimension `w`.
    pub fn w(&self) -> u32 {
        self.w
    }

    /// Total dimension `n = v + w`.
    pub fn n(&self) -> u32 {
        self.v + self.w
    }

    /// Surgery dimension `k = v − 1`.
    pub fn k(&self) -> u32 {
        self.v - 1
    }
}

/// A model space together with its curvature scale `c ∈ [0,1]`: the
/// hyperbolic factor `H^v_c` has sectional curvature `−c²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvedModelSpace {
    params: ModelSpaceParams,
    c: Real,
}

impl CurvedModelSpace {
    /// Builds the curved model space, enforcing `0 ≤ c ≤ 1`.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] if `c` is outside `[0,1]` or not finite.
    pub fn new(params: ModelSpaceParams, c: Real) -> Result<Self> {
        if !c.is_finite() || !(0.0..=1.0).contains(&c) {
            return Err(Error::Domain(format!(
                "curvature scale must satisfy 0 <= c <= 1, got {c}"
            )));
        }
        Ok(Self { params, c })
    }

    /// The dimension pair.
    pub fn params(&self) -> ModelSpaceParams {
        self.params
    }

    /// The curvature scale `c`.
    pub fn c(&self) -> Real {
        self.c
    }

    /// Scalar curvature `s_c = w(w−1) − c² v(v−1)` of the product metric;
    /// may be negative.
    pub fn scalar_curvature(&self) -> Real {
        scalar_curvature_kernel(self.params.v, self.params.w, self.c)
    }

    /// The optimal interpolation weights `(λ₀, τ₀ = 1 − λ₀)` for combining
    /// the homothety comparison (weight `λ`) with the squeezing comparison
    /// (weight `τ`).  See [`interpolation_weights_kernel`] for the closed
    /// form and the boundary convention.
    pub fn interpolation_weights(&self) -> InterpolationWeights {
        let lambda0 = interpolation_weights_kernel(self.params.v, self.params.w, self.c);
        InterpolationWeights {
            lambda0,
            tau0: 1.0 - lambda0,
        }
    }

    /// Whether the weight pair `(λ, τ)` is admissible for this space:
    ///
    /// 1. `λ + τ ≤ 1`, and
    /// 2. `λ c² s₁ + τ s₀ ≤ s_c`,
    ///
    /// each within an absolute residual of `1e−12 · max(1, |s_c|)`
    /// (floating-point equality on the boundary lines is meaningless, so a
    /// residual tolerance is the testable surrogate).  Negative weights are
    /// inadmissible.
    pub fn weights_satisfy_constraints(&self, lambda: Real, tau: Real) -> bool {
        if lambda.is_nan() || tau.is_nan() || lambda < 0.0 || tau < 0.0 {
            return false;
        }
        let v = self.params.v;
        let w = self.params.w;
        let s_c = self.scalar_curvature();
        let s_0 = scalar_curvature_kernel(v, w, 0.0);
        let s_1 = scalar_curvature_kernel(v, w, 1.0);
        let tolerance = 1e-12 * s_c.abs().max(1.0);
        let sum_residual = lambda + tau - 1.0;
        let curvature_residual = lambda * self.c * self.c * s_1 + tau * s_0 - s_c;
        sum_residual <= tolerance && curvature_residual <= tolerance
    }
}

/// The optimal weight pair: `λ₀ ∈ [0,1]` on the homothety comparison and
/// `τ₀ = 1 − λ₀` on the squeezing comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterpolationWeights {
    /// Weight on the homothety comparison.
    pub lambda0: Real,
    /// Weight on the squeezing comparison; always exactly `1 − lambda0`.
    pub tau0: Real,
}

/// Scalar curvature `s_c = w(w−1) − c² v(v−1)` as a generic kernel.
pub fn scalar_curvature_kernel<F: Float>(v: u32, w: u32, c: F) -> F {
    let vv = cast::<F>(f64::from(v) * f64::from(v - 1).max(0.0));
    let ww = cast::<F>(f64::from(w) * f64::from(w - 1).max(0.0));
    ww - c * c * vv
}

/// The optimal homothety weight
///
/// ```text
/// λ₀ = v(v−1) / ((c^{−2}−1) w(w−1) + v(v−1))
///    = c² v(v−1) / ((1−c²) w(w−1) + c² v(v−1)),
/// ```
///
/// evaluated in the second (singularity-free) form so the closed interval
/// is covered: `λ₀(0) = 0` and `λ₀(1) = 1` are the continuous limits of the
/// open-interval formula.  `λ₀` is exactly the smallest admissible `λ` on
/// the segment `λ + τ = 1`, which is where the combined comparison is
/// sharpest.
pub fn interpolation_weights_kernel<F: Float>(v: u32, w: u32, c: F) -> F {
    let vv = cast::<F>(f64::from(v) * f64::from(v.saturating_sub(1)));
    let ww = cast::<F>(f64::from(w) * f64::from(w.saturating_sub(1)));
    let c2 = c * c;
    let numerator = c2 * vv;
    let denominator = (F::one() - c2) * ww + c2 * vv;
    if denominator == F::zero() {
        // Only possible for v = 1 (vv = 0) with c = 1; the homothety
        // comparison carries no weight there.
        return F::zero();
    }
    numerator / denominator
}

/// The crossover curvature `c* = γ^{n/(2w)}`, the unique `c ∈ [0,1]` with
/// `c^{2w/n} = γ`.  Below `c*` the general interpolation bound is the
/// stronger of the two basic bounds; above it the homothety bound wins.
///
/// # Errors
///
/// [`Error::Domain`] if `γ ∉ (0, 1]`.
pub fn crossover_c(params: ModelSpaceParams, gamma: Real) -> Result<Real> {
    if !gamma.is_finite() || !(gamma > 0.0 && gamma <= 1.0) {
        return Err(Error::Domain(format!(
            "crossover requires a ratio gamma in (0, 1], got {gamma}"
        )));
    }
    let exponent = f64::from(params.n()) / (2.0 * f64::from(params.w()));
    Ok(gamma.powf(exponent))
}
