//! The radial squeezing diffeomorphism from flat `R^v` to hyperbolic
//! `H^v_c` (rescaled to curvature `−c²`).
//!
//! With `sh_c(t) = sinh(ct)/c`, the hyperbolic volume of a ball of radius
//! `t` grows like `ω_{v−1} ∫₀^t sh_c^{v−1}`, so
//!
//! ```text
//! φ_c(r) = (v ∫₀^r sh_c(t)^{v−1} dt)^{1/v}
//! ```
//!
//! is the flat radius whose ball has the same volume as the hyperbolic
//! radius-`r` ball.  Its inverse `f_c = φ_c^{−1}` defines the squeezing
//! map: radially mapping flat radius `r` to hyperbolic radius `f_c(r)`
//! preserves the radial volume element, and differentiating the identity
//! `(1/v) r^v = ∫₀^{f_c(r)} sh_c^{v−1}` gives
//!
//! ```text
//! f_c′(r) = (r / sh_c(f_c(r)))^{v−1} ∈ (0, 1],
//! ```
//!
//! a contraction because `sh_c(t) ≥ t ≥ φ_c^{−1}`-images.
//!
//! `φ_c` is evaluated by adaptive Simpson quadrature and inverted by
//! Brent's method on the bracket `[0, r]`, valid since `φ_c(t) ≥ t`.

use num_traits::Float;

use crate::constants::cast;
use crate::error::{Error, Result};
use crate::Real;

/// `sh_c(t) = sinh(ct)/c`, computed stably for small `ct` (Taylor form
/// `t(1 + x²/6(1 + x²/20))`, `x = ct`, for `|x| < 1e−4`); continuous limit
/// `t` at `c = 0`.
pub fn sh<F: Float>(c: F, t: F) -> F {
    let x = c * t;
    if x.abs() < cast::<F>(1e-4) {
        let x2 = x * x;
        t * (F::one() + x2 / cast::<F>(6.0) * (F::one() + x2 / cast::<F>(20.0)))
    } else {
        x.sinh() / c
    }
}

/// One point evaluation of the squeezing map and its derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeEvaluation {
    /// The flat radius evaluated at.
    pub r: Real,
    /// The squeezed (hyperbolic) radius `f_c(r) ≤ r`.
    pub f_of_r: Real,
    /// The radial derivative `f_c′(r) ∈ (0, 1]`.
    pub f_prime: Real,
    /// Accumulated quadrature error estimate behind `f_of_r`.
    pub quad_error: Real,
}

/// The squeezing map for one `(v, c)`, with its quadrature control.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeMap {
    v: u32,
    c: Real,
    quadrature_tolerance: Real,
}

/// Maximum bisection depth of the adaptive quadrature; with the
/// machine-precision acceptance floor this is never reached for the smooth
/// monotone integrands used here.
const MAX_QUADRATURE_DEPTH: u32 = 64;

impl SqueezeMap {
    /// A squeezing map for hyperbolic dimension `v ≥ 2` and curvature
    /// scale `c ∈ (0, 1]` (the flat case `c = 0` is the identity map and
    /// needs no machinery).
    pub fn new(v: u32, c: Real) -> Result<SqueezeMap> {
        if v < 2 {
            return Err(Error::Domain(format!(
                "squeezing map needs hyperbolic dimension v >= 2, got {v}"
            )));
        }
        if !c.is_finite() || !(c > 0.0 && c <= 1.0) {
            return Err(Error::Domain(format!(
                "curvature scale c must lie in (0, 1], got {c}"
            )));
        }
        Ok(SqueezeMap {
            v,
            c,
            quadrature_tolerance: 1e-12,
        })
    }

    /// Replaces the absolute quadrature tolerance (default `1e−12`).
    pub fn with_quadrature_tolerance(mut self, tolerance: Real) -> Result<SqueezeMap> {
        if !tolerance.is_finite() || tolerance <= 0.0 {
            return Err(Error::Domain(format!(
                "quadrature tolerance must be positive and finite, got {tolerance}"
            )));
        }
        self.quadrature_tolerance = tolerance;
        Ok(self)
    }

    pub fn v(&self) -> u32 {
        self.v
    }

    pub fn c(&self) -> Real {
        self.c
    }

    pub fn quadrature_tolerance(&self) -> Real {
        self.quadrature_tolerance
    }

    /// The radial volume integrand `sh_c(t)^{v−1}`.
    fn integrand(&self, t: Real) -> Real {
        sh(self.c, t).powi(self.v as i32 - 1)
    }

    /// `∫₀^upper sh_c(t)^{v−1} dt` with an error estimate.
    pub fn radial_volume_integral(&self, upper: Real) -> Result<(Real, Real)> {
        if !upper.is_finite() || upper < 0.0 {
            return Err(Error::Domain(format!(
                "integration limit must be non-negative and finite, got {upper}"
            )));
        }
        adaptive_simpson(
            &|t| self.integrand(t),
            0.0,
            upper,
            self.quadrature_tolerance,
        )
    }

    /// The volume-matching flat radius `φ_c(r)`, with the quadrature error
    /// estimate of the underlying integral.
    pub fn phi_with_error(&self, r: Real) -> Result<(Real, Real)> {
        if !r.is_finite() || r < 0.0 {
            return Err(Error::Domain(format!(
                "radius must be non-negative and finite, got {r}"
            )));
        }
        if r == 0.0 {
            return Ok((0.0, 0.0));
        }
        let (integral, error) = self.radial_volume_integral(r)?;
        let vf = Real::from(self.v);
        Ok(((vf * integral).powf(1.0 / vf), error))
    }

    /// The volume-matching flat radius `φ_c(r) ≥ r`.
    pub fn phi(&self, r: Real) -> Result<Real> {
        Ok(self.phi_with_error(r)?.0)
    }

    /// The squeezed radius `f_c(r) = φ_c^{−1}(r)`, found by Brent's method
    /// on `[0, r]` (a valid bracket because `φ_c(t) ≥ t`).
    pub fn f(&self, r: Real) -> Result<Real> {
        Ok(self.f_with_error(r)?.0)
    }

    fn f_with_error(&self, r: Real) -> Result<(Real, Real)> {
        if !r.is_finite() || r < 0.0 {
            return Err(Error::Domain(format!(
                "radius must be non-negative and finite, got {r}"
            )));
        }
        if r == 0.0 {
            return Ok((0.0, 0.0));
        }
        let mut quad_error = 0.0f64;
        let mut residual_of = |t: Real| -> Result<Real> {
            let (phi, error) = self.phi_with_error(t)?;
            quad_error = quad_error.max(error);
            Ok(phi - r)
        };
        // Root-find to machine precision; the inverse must be accurate
        // enough that finite-difference derivative checks see quadrature
        // noise only.
        let root = brent_root(&mut residual_of, 0.0, r, 1e-15)?;
        let achieved = (self.phi(root)? - r).abs();
        if achieved > 1e-10 * (1.0 + r) {
            return Err(Error::Numerical(format!(
                "squeeze inversion stalled: |phi(t) - r| = {achieved} at r = {r} \
                 (v = {}, c = {})",
                self.v, self.c
            )));
        }
        Ok((root, quad_error))
    }

    /// The radial derivative `f_c′(r) = (r / sh_c(f_c(r)))^{v−1}` for
    /// `r > 0`.
    pub fn f_prime(&self, r: Real) -> Result<Real> {
        if r <= 0.0 || !r.is_finite() {
            return Err(Error::Domain(format!(
                "the derivative formula needs r > 0, got {r} (f_c'(0) = 1 by the flat limit)"
            )));
        }
        let f_of_r = self.f(r)?;
        Ok((r / sh(self.c, f_of_r)).powi(self.v as i32 - 1))
    }

    /// Full evaluation at `r ≥ 0`, with the contraction and
    /// radius-comparison guarantees checked (`r = 0` returns the exact
    /// limits `f = 0`, `f′ = 1`).
    pub fn evaluate(&self, r: Real) -> Result<SqueezeEvaluation> {
        if r == 0.0 {
            return Ok(SqueezeEvaluation {
                r,
                f_of_r: 0.0,
                f_prime: 1.0,
                quad_error: 0.0,
            });
        }
        let (f_of_r, quad_error) = self.f_with_error(r)?;
        let f_prime = (r / sh(self.c, f_of_r)).powi(self.v as i32 - 1);
        if f_prime > 1.0 + 1e-10 {
            return Err(Error::Numerical(format!(
                "contraction violated: f'({r}) = {f_prime} > 1 (v = {}, c = {})",
                self.v, self.c
            )));
        }
        if r > sh(self.c, f_of_r) + 1e-10 * (1.0 + r) {
            return Err(Error::Numerical(format!(
                "radius comparison violated: r = {r} exceeds sh_c(f(r)) = {} (v = {}, c = {})",
                sh(self.c, f_of_r),
                self.v,
                self.c
            )));
        }
        Ok(SqueezeEvaluation {
            r,
            f_of_r,
            f_prime,
            quad_error,
        })
    }
}

/// Composite Simpson estimate over `[a, b]` from endpoint and midpoint
/// values.
fn simpson_estimate(fa: Real, fm: Real, fb: Real, width: Real) -> Real {
    width / 6.0 * (fa + 4.0 * fm + fb)
}

/// Adaptive Simpson integration of `f` over `[a, b]` to absolute tolerance
/// `tolerance`, returning `(value, error_estimate)`.
///
/// Each split must reduce the local Richardson error below its share of
/// the tolerance, or below a floor of a few ulps of the global estimate
/// (so an unattainably small absolute tolerance degrades gracefully to
/// machine precision instead of recursing forever).
fn adaptive_simpson(
    f: &impl Fn(Real) -> Real,
    a: Real,
    b: Real,
    tolerance: Real,
) -> Result<(Real, Real)> {
    let eval = |t: Real| -> Result<Real> {
        let value = f(t);
        if !value.is_finite() {
            return Err(Error::Numerical(format!(
                "integrand returned a non-finite value ({value}) at t = {t}"
            )));
        }
        Ok(value)
    };
    if a == b {
        return Ok((0.0, 0.0));
    }
    let fa = eval(a)?;
    let fb = eval(b)?;
    let m = 0.5 * (a + b);
    let fm = eval(m)?;
    let whole = simpson_estimate(fa, fm, fb, b - a);
    if !whole.is_finite() {
        return Err(Error::Numerical(format!(
            "quadrature overflow on [{a}, {b}]: initial estimate {whole}"
        )));
    }
    let floor = 4.0 * Real::EPSILON * whole.abs().max(1.0);
    simpson_recurse(
        &eval,
        Panel {
            a,
            fa,
            m,
            fm,
            b,
            fb,
            estimate: whole,
        },
        tolerance,
        floor,
        MAX_QUADRATURE_DEPTH,
    )
}

/// One interval of the adaptive subdivision with its cached evaluations.
struct Panel {
    a: Real,
    fa: Real,
    m: Real,
    fm: Real,
    b: Real,
    fb: Real,
    estimate: Real,
}

fn simpson_recurse(
    eval: &impl Fn(Real) -> Result<Real>,
    panel: Panel,
    tolerance: Real,
    floor: Real,
    depth: u32,
) -> Result<(Real, Real)> {
    let lm = 0.5 * (panel.a + panel.m);
    let rm = 0.5 * (panel.m + panel.b);
    let flm = eval(lm)?;
    let frm = eval(rm)?;
    let left = simpson_estimate(panel.fa, flm, panel.fm, panel.m - panel.a);
    let right = simpson_estimate(panel.fm, frm, panel.fb, panel.b - panel.m);
    let delta = left + right - panel.estimate;
    // Standard Richardson factor for Simpson's rule: the refined estimate
    // has error ≈ delta/15.
    if delta.abs() <= 15.0 * tolerance.max(floor) {
        return Ok((left + right + delta / 15.0, delta.abs() / 15.0));
    }
    if depth == 0 {
        return Err(Error::Numerical(format!(
            "adaptive quadrature failed to converge on [{}, {}]: residual {delta} \
             at maximum depth",
            panel.a, panel.b
        )));
    }
    let half_tolerance = 0.5 * tolerance;
    let (left_value, left_error) = simpson_recurse(
        eval,
        Panel {
            a: panel.a,
            fa: panel.fa,
            m: lm,
            fm: flm,
            b: panel.m,
            fb: panel.fm,
            estimate: left,
        },
        half_tolerance,
        floor,
        depth - 1,
    )?;
    let (right_value, right_error) = simpson_recurse(
        eval,
        Panel {
            a: panel.m,
            fa: panel.fm,
            m: rm,
            fm: frm,
            b: panel.b,
            fb: panel.fb,
            estimate: right,
        },
        half_tolerance,
        floor,
        depth - 1,
    )?;
    Ok((left_value + right_value, left_error + right_error))
}

/// Brent's method for a root of `g` on the bracket `[a, b]`, to an
/// absolute abscissa tolerance near machine precision.
fn brent_root(
    g: &mut impl FnMut(Real) -> Result<Real>,
    a: Real,
    b: Real,
    abscissa_tolerance: Real,
) -> Result<Real> {
    let mut a = a;
    let mut b = b;
    let mut fa = g(a)?;
    let mut fb = g(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Numerical(format!(
            "root not bracketed on [{a}, {b}]: g = {fa}, {fb}"
        )));
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * Real::EPSILON * b.abs() + 0.5 * abscissa_tolerance;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            // Attempt inverse quadratic interpolation (secant when a == c).
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * xm * s, 1.0 - s)
            } else {
                let q = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0)),
                    (q - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            if 2.0 * p < (3.0 * xm * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol {
            d
        } else if xm > 0.0 {
            tol
        } else {
            -tol
        };
        fb = g(b)?;
    }
    Err(Error::Numerical(format!(
        "root refinement did not converge near {b}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Closed form of `∫₀^r sh_c dt` (v = 2).
    fn integral_v2(c: Real, r: Real) -> Real {
        ((c * r).cosh() - 1.0) / (c * c)
    }

    /// Closed form of `∫₀^r sh_c² dt` (v = 3).
    fn integral_v3(c: Real, r: Real) -> Real {
        let x = c * r;
        (x.sinh() * x.cosh() - x) / (2.0 * c * c * c)
    }

    #[test]
    fn sh_reference_values() {
        assert_eq!(sh(0.5, 0.0), 0.0);
        assert!((sh(1.0, 1.0) - 1.0f64.sinh()).abs() < 1e-15);
        // Small-argument stability: compare against the flat limit.
        for t in [1e-6, 1e-3, 0.1] {
            let value = sh(1e-9, t);
            assert!(((value - t) / t).abs() < 1e-15, "t = {t}");
        }
        // The two branches agree at the Taylor/libm switch point ct = 1e−4:
        // the truncated series error there is ~x⁷/5040 ≈ 2e−32.
        let t = 1e-4;
        let x2: Real = t * t;
        let taylor = t * (1.0 + x2 / 6.0 * (1.0 + x2 / 20.0));
        let libm = t.sinh();
        assert!((taylor - libm).abs() <= 1e-18);
    }

    #[test]
    fn construction_is_validated() {
        assert!(SqueezeMap::new(1, 0.5).is_err());
        assert!(SqueezeMap::new(2, 0.0).is_err());
        assert!(SqueezeMap::new(2, 1.5).is_err());
        assert!(SqueezeMap::new(2, f64::NAN).is_err());
        assert!(SqueezeMap::new(2, 1.0)
            .unwrap()
            .with_quadrature_tolerance(0.0)
            .is_err());
    }

    #[test]
    fn quadrature_matches_closed_forms() {
        for c in [0.1, 0.5, 1.0] {
            for r in [0.1, 1.0, 5.0, 10.0] {
                let map2 = SqueezeMap::new(2, c).unwrap();
                let (value, error) = map2.radial_volume_integral(r).unwrap();
                let exact = integral_v2(c, r);
                assert!(
                    (value - exact).abs() <= 1e-10 * (1.0 + exact),
                    "v=2 c={c} r={r}: {value} vs {exact}"
                );
                assert!(error >= 0.0);
                let map3 = SqueezeMap::new(3, c).unwrap();
                let (value, _) = map3.radial_volume_integral(r).unwrap();
                let exact = integral_v3(c, r);
                assert!(
                    (value - exact).abs() <= 1e-10 * (1.0 + exact),
                    "v=3 c={c} r={r}: {value} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn phi_reference_values() {
        let map = SqueezeMap::new(2, 1.0).unwrap();
        assert_eq!(map.phi(0.0).unwrap(), 0.0);
        // v=2, c=1: φ(r) = √(2(cosh r − 1)).
        for r in [0.5, 1.0, 2.0] {
            let exact = (2.0 * (r.cosh() - 1.0)).sqrt();
            assert!((map.phi(r).unwrap() - exact).abs() < 1e-10, "r = {r}");
        }
        assert!((map.phi(1.0).unwrap() - 1.042190610987495).abs() < 1e-12);
        // Small radius: φ(r) = r + O(r³).
        for r in [1e-3, 5e-3, 1e-2] {
            assert!((map.phi(r).unwrap() - r).abs() <= r * r * r, "r = {r}");
        }
    }

    #[test]
    fn inverse_round_trip() {
        let map = SqueezeMap::new(2, 1.0).unwrap();
        let r = map.phi(1.0).unwrap();
        assert!((map.f(r).unwrap() - 1.0).abs() < 1e-12);
        // And the opposite composition.
        let t = map.f(2.0).unwrap();
        assert!((map.phi(t).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn squeeze_reference_values() {
        // Frozen from high-precision evaluation of the defining integrals.
        let cases: [(Real, u32, Real, Real, Real); 6] = [
            (1.0, 2, 1.0, 0.962423650119207, 0.894427190999916),
            (
                1.0,
                2,
                2.0,
                1.762747174039086,
                std::f64::consts::FRAC_1_SQRT_2,
            ),
            (0.5, 2, 1.0, 0.989865846189054, 0.970142500145332),
            (1.0, 3, 1.0, 0.942725891136367, 0.843687631512904),
            (0.5, 3, 2.0, 1.885451782272734, 0.843687631512904),
            (0.25, 4, 1.5, 1.482927740716962, 0.966505151283003),
        ];
        for (c, v, r, f_expected, fp_expected) in cases {
            let map = SqueezeMap::new(v, c).unwrap();
            let evaluation = map.evaluate(r).unwrap();
            assert!(
                (evaluation.f_of_r - f_expected).abs() < 1e-11,
                "f mismatch at v={v} c={c} r={r}: {}",
                evaluation.f_of_r
            );
            assert!(
                (evaluation.f_prime - fp_expected).abs() < 1e-11,
                "f' mismatch at v={v} c={c} r={r}: {}",
                evaluation.f_prime
            );
            assert!(evaluation.f_of_r <= r);
            assert!(evaluation.f_prime <= 1.0 + 1e-10);
        }
    }

    #[test]
    fn evaluate_at_zero_is_the_identity_limit() {
        let map = SqueezeMap::new(3, 0.7).unwrap();
        let evaluation = map.evaluate(0.0).unwrap();
        assert_eq!(evaluation.f_of_r, 0.0);
        assert_eq!(evaluation.f_prime, 1.0);
        assert_eq!(evaluation.quad_error, 0.0);
        assert!(map.f_prime(0.0).is_err());
    }

    #[test]
    fn flat_limit_is_near_identity() {
        let map = SqueezeMap::new(2, 1e-6).unwrap();
        for r in [0.5, 1.0, 10.0] {
            let f = map.f(r).unwrap();
            assert!((f - r).abs() <= 1e-6 * r, "r = {r}: f = {f}");
        }
    }

    #[test]
    fn overflow_is_a_numerical_error() {
        let map = SqueezeMap::new(2, 1.0).unwrap();
        // sinh(800) overflows f64 (sinh(700) ≈ 5e303 still fits).
        assert!(matches!(map.phi(800.0), Err(Error::Numerical(_))));
        assert!(matches!(map.f(800.0), Err(Error::Numerical(_))));
    }

    #[test]
    fn volume_identity_holds() {
        for v in [2u32, 3, 4] {
            for c in [0.1, 0.5, 1.0] {
                let map = SqueezeMap::new(v, c).unwrap();
                for r in [0.1, 0.5, 1.0, 2.0, 5.0, 10.0] {
                    let f = map.f(r).unwrap();
                    let (integral, _) = map.radial_volume_integral(f).unwrap();
                    let flat = r.powi(v as i32) / Real::from(v);
                    assert!(
                        (flat - integral).abs() <= 1e-8 * (1.0 + flat),
                        "identity residual at v={v} c={c} r={r}"
                    );
                }
            }
        }
    }
}
