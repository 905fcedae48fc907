//! Certified lower bounds for the conformal Yamabe constants `μ_c` of the
//! model spaces `H^v_c × S^w` and for the surgery constants `Λ_{n,k}`.
//!
//! The model space `M_c = H^v_c × S^w` is the Riemannian product of rescaled
//! hyperbolic space (sectional curvature `−c²`, `c ∈ [0,1]`) and the round
//! unit sphere.  Its conformal Yamabe constant `μ_c := μ(M_c)` interpolates
//! between `μ_0 = μ(R^v × S^w)` and `μ_1 ≤ μ(S^n)` with `n = v + w`, and the
//! surgery constant is the infimum `Λ_{n,k} = inf_{c∈[0,1]} μ_c` where
//! `v = k + 1` and `w = n − k − 1`.  Lower bounds for `Λ_{n,k}` feed directly
//! into lower bounds for the smooth Yamabe invariant `σ(M)` of manifolds
//! built by surgery.
//!
//! The crate provides:
//!
//! - [`constants`]: sphere volumes `ω_n`, sphere Yamabe constants
//!   `μ(S^n) = n(n−1)ω_n^{2/n}`, the dimensional constants `a_n`, `p_n`, and
//!   the special closed-form constants (Wu manifold, `S³×S³`, normalized
//!   quaternionic projective volumes).
//! - [`model_space`]: the `(v,w) ↔ (n,k)` translation, the scalar curvature
//!   `s_c = w(w−1) − c²v(v−1)`, the optimal interpolation weights
//!   `(λ₀, τ₀)`, and the crossover curvature between the two basic bounds.
//! - [`mu_zero`]: a provenance-tagged registry of published lower bounds
//!   `γ ≤ μ₀/μ₁` together with the explicit product-formula bound for
//!   `w = 2`.
//! - [`bounds`]: all pointwise lower-bound formulas for `μ_c` and the
//!   closed-form infima.
//! - [`optimizer`]: derivative-free certified minimization over `c ∈ [0,1]`
//!   (dense grid scan plus golden-section refinement).
//! - [`squeeze`]: the radial squeezing diffeomorphism `R^v → H^v_c`
//!   realized numerically (`sh_c`, the volume radius `φ_c` by adaptive
//!   quadrature, its inverse `f_c` by bracketed root-finding, and the
//!   derivative identity `f_c′(r) = (r / sh_c(f_c(r)))^{v−1}`).
//! - [`tables`]: assembly of the published summary tables: the `Λ_{n,k}`
//!   table (analytic and numeric columns), the σ-invariant lower bounds in
//!   dimensions 5, 6, 9 and 10, and the `t_n` table for 2-connected
//!   manifolds.
//!
//! Numeric kernels are generic over the scalar type through
//! [`num_traits::Float`]; the concrete front-end APIs use the [`Real`]
//! alias (`f64`).

pub mod bounds;
pub mod constants;
pub mod error;
pub mod model_space;
pub mod mu_zero;
pub mod optimizer;
pub mod squeeze;
pub mod tables;

/// Scalar type used by all concrete (non-generic) APIs in this crate.
pub type Real = f64;

pub use error::{Error, Result};
