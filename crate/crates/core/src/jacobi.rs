//! Jacobi polynomials: evaluation, roots, and weighted absolute integrals.
//!
//! The central quantity of the crate is the one-dimensional integral
//!
//! ```text
//! int_{-1}^{1} (1-s)^a (1+s)^b |P_d^{(alpha,beta)}(s)| ds ,
//! ```
//!
//! which [`JacobiParams::weighted_abs_l1`] computes by splitting the interval
//! at the `d` real roots of the polynomial (the absolute value is smooth on
//! each piece) and applying an adaptive Gauss-Legendre rule per piece.
//! Half-integer weight exponents are handled exactly by the substitutions
//! `1 + s = 2u^2` and `1 - s = 2v^2`, which turn the algebraic endpoint
//! singularity into a polynomial factor.
//!
//! [`JacobiParams::eval_rodrigues`] provides an arithmetic oracle that is
//! independent of the three-term recurrence: it expands the Rodrigues product
//! formula symbolically in exact rational arithmetic and evaluates the
//! resulting polynomial.

use crate::error::{CoreError, Result};
use crate::gl;
use crate::quad::QuadResult;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

/// Largest degree accepted by [`JacobiParams::new`].
pub const MAX_JACOBI_DEGREE: u32 = 20_000;

/// Largest degree supported by the exact Rodrigues expansion.
pub const MAX_RODRIGUES_DEGREE: u32 = 12;

/// Absolute accuracy to which roots are isolated.
const ROOT_TOL: f64 = 1e-13;

/// Relative accuracy target of [`JacobiParams::weighted_abs_l1`].
const ABS_L1_REL_TOL: f64 = 1e-12;

/// A Jacobi polynomial `P_d^{(alpha, beta)}` with `alpha, beta > -1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JacobiParams {
    /// Exponent parameter attached to the `(1 - s)` factor.
    pub alpha: f64,
    /// Exponent parameter attached to the `(1 + s)` factor.
    pub beta: f64,
    /// Polynomial degree.
    pub degree: u32,
}

/// Roots of a Jacobi polynomial together with the sign of the polynomial on
/// each of the `d + 1` open subintervals of `(-1, 1)` they delimit.
#[derive(Clone, Debug)]
pub struct SignedSegments {
    /// The `d` simple roots, strictly increasing, all inside `(-1, 1)`.
    pub roots: Vec<f64>,
    /// Signs (`+1` / `-1`) on the segments; the last entry is always `+1`
    /// because `P_d^{(alpha,beta)}(1) > 0`, and consecutive entries alternate
    /// since every root is simple.
    pub segment_signs: Vec<i8>,
}

impl JacobiParams {
    /// Validates the parameter triple.
    ///
    /// Requires `alpha, beta > -1` (integrability of the orthogonality
    /// weight) and `degree <= MAX_JACOBI_DEGREE`.
    pub fn new(alpha: f64, beta: f64, degree: u32) -> Result<Self> {
        if !(alpha > -1.0) || !alpha.is_finite() {
            return Err(CoreError::Domain(format!(
                "jacobi parameter alpha must be finite and > -1, got {alpha}"
            )));
        }
        if !(beta > -1.0) || !beta.is_finite() {
            return Err(CoreError::Domain(format!(
                "jacobi parameter beta must be finite and > -1, got {beta}"
            )));
        }
        if degree > MAX_JACOBI_DEGREE {
            return Err(CoreError::DegreeCap {
                got: degree,
                max: MAX_JACOBI_DEGREE,
            });
        }
        Ok(JacobiParams {
            alpha,
            beta,
            degree,
        })
    }

    /// Evaluates the polynomial at `t` by the standard three-term recurrence.
    ///
    /// One-off evaluation; repeated evaluation at many points (root isolation,
    /// quadrature) goes through a cached [`Evaluator`].
    pub fn eval(&self, t: f64) -> f64 {
        self.evaluator().eval(t)
    }

    /// Builds the recurrence-coefficient cache for repeated evaluation.
    pub fn evaluator(&self) -> Evaluator {
        Evaluator::new(self)
    }

    /// Exact-arithmetic oracle: evaluates via the Rodrigues formula.
    ///
    /// The product `(1-t)^(alpha+d) (1+t)^(beta+d)` is expanded with integer
    /// coefficients, differentiated `d` times symbolically, divided exactly by
    /// `(1-t)^alpha (1+t)^beta`, and scaled by `(-1)^d / (2^d d!)`; the
    /// resulting polynomial is evaluated in rational arithmetic with `t`
    /// converted to its exact binary value.  Supports non-negative integer
    /// `alpha`, `beta` and degrees up to [`MAX_RODRIGUES_DEGREE`]; all other
    /// parameters yield [`CoreError::Unsupported`].
    pub fn eval_rodrigues(&self, t: f64) -> Result<f64> {
        let coeffs = self.rodrigues_coefficients()?;
        let t_exact = BigRational::from_float(t)
            .ok_or_else(|| CoreError::Domain(format!("cannot evaluate at t = {t}")))?;
        let mut acc = BigRational::zero();
        for c in coeffs.iter().rev() {
            acc = acc * &t_exact + c;
        }
        acc.to_f64()
            .ok_or_else(|| CoreError::Overflow("rodrigues value exceeds f64 range".into()))
    }

    /// Exact coefficients (ascending powers of `t`) of the Rodrigues
    /// expansion.  Same parameter restrictions as [`Self::eval_rodrigues`].
    pub fn rodrigues_coefficients(&self) -> Result<Vec<BigRational>> {
        let to_int = |x: f64, name: &str| -> Result<u32> {
            if x.fract() == 0.0 && (0.0..=1000.0).contains(&x) {
                Ok(x as u32)
            } else {
                Err(CoreError::Unsupported(format!(
                    "rodrigues expansion needs non-negative integer {name}, got {x}"
                )))
            }
        };
        let ai = to_int(self.alpha, "alpha")?;
        let bi = to_int(self.beta, "beta")?;
        if self.degree > MAX_RODRIGUES_DEGREE {
            return Err(CoreError::Unsupported(format!(
                "rodrigues expansion supports degree <= {MAX_RODRIGUES_DEGREE}, got {}",
                self.degree
            )));
        }
        let d = self.degree;
        // (1 - t)^(alpha + d) * (1 + t)^(beta + d)
        let mut poly = poly_mul(&binomial_expansion(-1, ai + d), &binomial_expansion(1, bi + d));
        for _ in 0..d {
            poly = poly_diff(&poly);
        }
        // Divide exactly by (1 - t)^alpha (1 + t)^beta.
        for _ in 0..ai {
            poly = div_one_minus_t(&poly)?;
        }
        for _ in 0..bi {
            poly = div_one_plus_t(&poly)?;
        }
        // Scale by (-1)^d / (2^d d!).
        let mut denom = BigInt::one();
        for k in 1..=i64::from(d) {
            denom *= k;
        }
        denom <<= d as usize;
        let sign = if d % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        let scale = BigRational::new(sign, denom);
        Ok(poly.into_iter().map(|c| c * &scale).collect())
    }

    /// Isolates all `degree` roots and the segment sign pattern.
    ///
    /// Sign changes are bracketed on a cosine-spaced grid of `8 * (degree+1)`
    /// points (matching the asymptotic root distribution) and refined to
    /// [`ROOT_TOL`] by an Illinois-safeguarded secant iteration.  Finding
    /// fewer than `degree` sign changes is reported as a convergence failure.
    pub fn roots(&self) -> Result<SignedSegments> {
        let d = self.degree as usize;
        if d == 0 {
            return Ok(SignedSegments {
                roots: Vec::new(),
                segment_signs: vec![1],
            });
        }
        let ev = self.evaluator();
        let m = 8 * (d + 1);
        let mut roots = Vec::with_capacity(d);
        let mut prev_x = -1.0f64;
        let mut prev_f = ev.eval(prev_x);
        for j in 1..=m {
            // Cosine spacing clusters grid points near the endpoints exactly
            // where Jacobi roots accumulate.
            let x = if j == m {
                1.0
            } else {
                -(std::f64::consts::PI * j as f64 / m as f64).cos()
            };
            let fx = ev.eval(x);
            if fx == 0.0 {
                roots.push(x);
            } else if prev_f != 0.0 && (prev_f < 0.0) != (fx < 0.0) {
                roots.push(refine_root(&ev, prev_x, x, prev_f, fx)?);
            }
            prev_x = x;
            prev_f = fx;
        }
        if roots.len() != d {
            return Err(CoreError::Convergence(format!(
                "isolated {} sign changes for a degree-{} polynomial (alpha={}, beta={})",
                roots.len(),
                d,
                self.alpha,
                self.beta
            )));
        }
        // P(1) = binom(d + alpha, d) > 0, and simple roots alternate the sign.
        let mut segment_signs = vec![1i8; d + 1];
        for i in (0..d).rev() {
            segment_signs[i] = -segment_signs[i + 1];
        }
        Ok(SignedSegments {
            roots,
            segment_signs,
        })
    }

    /// `int_{-1}^{1} (1-s)^a (1+s)^b |P_d^{(alpha,beta)}(s)| ds`.
    ///
    /// Computed from the unit-interval form (see
    /// [`Self::weighted_abs_l1_unit`]) scaled by `2^(a+b+1)`; returns
    /// [`CoreError::Overflow`] when that scale factor pushes the value outside
    /// the `f64` range, which happens for weight exponents of a few hundred.
    pub fn weighted_abs_l1(&self, a: f64, b: f64) -> Result<QuadResult> {
        let unit = self.weighted_abs_l1_unit(a, b)?;
        // 2^(a+b+1), split into an exact power of two and a fractional part.
        let e = a + b + 1.0;
        let k = e.floor();
        let factor = 2.0f64.powf(e - k) * 2.0f64.powi(k as i32);
        let value = unit.value * factor;
        if !value.is_finite() {
            return Err(CoreError::Overflow(format!(
                "weighted L1 integral with exponents a={a}, b={b} exceeds the f64 range; \
                 use weighted_abs_l1_unit for the rescaled value"
            )));
        }
        Ok(QuadResult {
            value,
            abs_error_estimate: unit.abs_error_estimate * factor,
            ..unit
        })
    }

    /// `int_0^1 (1-t)^a t^b |P_d^{(alpha,beta)}(2t - 1)| dt`.
    ///
    /// This is the substitution `s = 2t - 1` of [`Self::weighted_abs_l1`]
    /// without the `2^(a+b+1)` scale, and stays representable for arbitrarily
    /// large exponents `b` (the weight `t^b` never exceeds one).  The interval
    /// splits at the roots; on each piece the integrand keeps one sign, so the
    /// sum of the absolute piece integrals equals the integral of the absolute
    /// value.
    pub fn weighted_abs_l1_unit(&self, a: f64, b: f64) -> Result<QuadResult> {
        if !(a > -1.0) || !a.is_finite() || !(b > -1.0) || !b.is_finite() {
            return Err(CoreError::Domain(format!(
                "weight exponents must be finite and > -1, got a={a}, b={b}"
            )));
        }
        let ev = self.evaluator();
        let segments = self.roots()?;
        let mut breaks = Vec::with_capacity(segments.roots.len() + 2);
        breaks.push(0.0);
        breaks.extend(segments.roots.iter().map(|s| 0.5 * (1.0 + s)));
        breaks.push(1.0);

        // Substitutions removing the endpoint singularity of half-integer
        // weight exponents: t = u^2 at the left end, 1 - t = v^2 at the right.
        let sub_left = is_half_integer(b);
        let sub_right = is_half_integer(a);
        let mut pieces: Vec<(f64, f64, SegMap)> = Vec::with_capacity(breaks.len());
        for (i, pair) in breaks.windows(2).enumerate() {
            let (lo, hi) = (pair[0], pair[1]);
            let first = i == 0;
            let last = i + 2 == breaks.len();
            match (first && sub_left, last && sub_right) {
                (true, true) => {
                    // Single segment with singular weights at both ends.
                    let mid = 0.5 * (lo + hi);
                    pieces.push((lo, mid, SegMap::SqrtLeft));
                    pieces.push((mid, hi, SegMap::SqrtRight));
                }
                (true, false) => pieces.push((lo, hi, SegMap::SqrtLeft)),
                (false, true) => pieces.push((lo, hi, SegMap::SqrtRight)),
                (false, false) => pieces.push((lo, hi, SegMap::Identity)),
            }
        }

        // First pass: fixed-order estimates set the error budget per piece.
        let mut estimates = Vec::with_capacity(pieces.len());
        let mut evaluations = 0u64;
        for &(lo, hi, map) in &pieces {
            let (lo_m, hi_m) = map.mapped_bounds(lo, hi);
            let mut f = |x: f64| map.integrand(x, a, b, &ev);
            estimates.push(gl::gauss40(&mut f, lo_m, hi_m));
            evaluations += 40;
        }
        let scale: f64 = estimates.iter().map(|v| v.abs()).sum::<f64>().max(f64::MIN_POSITIVE);

        let mut value = 0.0;
        let mut abs_error = 0.0;
        let mut reliable = true;
        let per_piece = scale / pieces.len() as f64;
        // A degree-d recurrence evaluation carries rounding of order d*eps,
        // so per-piece error estimates cannot be driven below that fraction
        // of the piece magnitude no matter how finely the rule subdivides;
        // the budget floors there to keep high degrees convergent.
        let eval_noise = 8.0 * f64::EPSILON * f64::from(self.degree.max(1));
        let rel_tol = ABS_L1_REL_TOL.max(eval_noise);
        for (&(lo, hi, map), est) in pieces.iter().zip(&estimates) {
            let budget = rel_tol * (est.abs() + per_piece);
            let (lo_m, hi_m) = map.mapped_bounds(lo, hi);
            let mut f = |x: f64| map.integrand(x, a, b, &ev);
            let seg = gl::integrate_adaptive(&mut f, lo_m, hi_m, budget);
            value += seg.value.abs();
            abs_error += seg.abs_error;
            evaluations += seg.evaluations;
            reliable &= seg.converged;
        }
        // Per-piece budgets derive from a cheap fixed-order first pass that
        // can badly undershoot sharply peaked integrands, making a budget
        // unreachably strict.  What the caller needs is relative accuracy of
        // the assembled total, so a run that achieved it is reliable even if
        // an individual piece missed its provisional budget.
        if !reliable && abs_error <= rel_tol * value {
            reliable = true;
        }
        // The integrand is |polynomial| times a weight that is positive on
        // the open interval, so the true integral is strictly positive; an
        // exact zero means the weight underflowed at every node and nothing
        // of the value is representable.
        if value == 0.0 {
            reliable = false;
        }
        Ok(QuadResult {
            value,
            abs_error_estimate: abs_error,
            evaluations,
            reliable,
        })
    }
}

/// Per-piece change of variables used by the weighted integrator.
#[derive(Clone, Copy, Debug)]
enum SegMap {
    /// Integrate in `t` directly.
    Identity,
    /// `t = u^2`: maps `t^b dt` to `2 u^(2b+1) du` with `2b + 1` integral.
    SqrtLeft,
    /// `1 - t = v^2`: maps `(1-t)^a dt` to `2 v^(2a+1) dv`.
    SqrtRight,
}

impl SegMap {
    fn mapped_bounds(self, lo: f64, hi: f64) -> (f64, f64) {
        match self {
            SegMap::Identity => (lo, hi),
            SegMap::SqrtLeft => (lo.sqrt(), hi.sqrt()),
            // Orientation flips; integrate v over the positive range instead.
            SegMap::SqrtRight => ((1.0 - hi).max(0.0).sqrt(), (1.0 - lo).max(0.0).sqrt()),
        }
    }

    fn integrand(self, x: f64, a: f64, b: f64, ev: &Evaluator) -> f64 {
        match self {
            SegMap::Identity => {
                let t = x;
                wpow(1.0 - t, a) * wpow(t, b) * ev.eval(2.0 * t - 1.0)
            }
            SegMap::SqrtLeft => {
                let t = x * x;
                2.0 * wpow(x, 2.0 * b + 1.0) * wpow(1.0 - t, a) * ev.eval(2.0 * t - 1.0)
            }
            SegMap::SqrtRight => {
                let t = 1.0 - x * x;
                2.0 * wpow(x, 2.0 * a + 1.0) * wpow(t, b) * ev.eval(2.0 * t - 1.0)
            }
        }
    }
}

/// `x^e` with the conventions needed for integration weights: an exponent of
/// exactly zero yields one (even at `x = 0`), integer exponents use the exact
/// integer power path, and deep underflow flushes to zero instead of `NaN`.
fn wpow(x: f64, e: f64) -> f64 {
    if e == 0.0 {
        1.0
    } else if e.fract() == 0.0 && e.abs() < 2_147_483_647.0 {
        x.powi(e as i32)
    } else {
        x.powf(e)
    }
}

fn is_half_integer(x: f64) -> bool {
    x.fract() != 0.0 && (2.0 * x).fract() == 0.0
}

/// Cached three-term recurrence for repeated evaluation of one polynomial.
///
/// `P_m = (A_m t + B_m) P_{m-1} - C_m P_{m-2}` with coefficients precomputed
/// per degree; a full evaluation costs about four flops per degree.
#[derive(Clone, Debug)]
pub struct Evaluator {
    degree: u32,
    /// `P_1` as `p1_t * t + p1_c`.
    p1_t: f64,
    p1_c: f64,
    coef: Vec<(f64, f64, f64)>,
}

impl Evaluator {
    fn new(params: &JacobiParams) -> Self {
        let (alpha, beta) = (params.alpha, params.beta);
        let ab = alpha + beta;
        let mut coef = Vec::new();
        if params.degree >= 2 {
            coef.reserve(params.degree as usize - 1);
            for m in 2..=params.degree as u64 {
                let m = m as f64;
                let denom = 2.0 * m * (m + ab) * (2.0 * m + ab - 2.0);
                let common = 2.0 * m + ab - 1.0;
                let a_m = common * (2.0 * m + ab) * (2.0 * m + ab - 2.0) / denom;
                let b_m = common * (alpha * alpha - beta * beta) / denom;
                let c_m = 2.0 * (m + alpha - 1.0) * (m + beta - 1.0) * (2.0 * m + ab) / denom;
                coef.push((a_m, b_m, c_m));
            }
        }
        Evaluator {
            degree: params.degree,
            p1_t: 0.5 * (ab + 2.0),
            p1_c: 0.5 * (alpha - beta),
            coef,
        }
    }

    /// Evaluates the cached polynomial at `t`.
    pub fn eval(&self, t: f64) -> f64 {
        if self.degree == 0 {
            return 1.0;
        }
        let mut prev = 1.0;
        let mut cur = self.p1_t * t + self.p1_c;
        for &(a_m, b_m, c_m) in &self.coef {
            let next = (a_m * t + b_m) * cur - c_m * prev;
            prev = cur;
            cur = next;
        }
        cur
    }
}

/// Illinois-safeguarded secant refinement of a bracketed simple root.
fn refine_root(ev: &Evaluator, mut lo: f64, mut hi: f64, mut flo: f64, mut fhi: f64) -> Result<f64> {
    let mut side = 0i8;
    for _ in 0..200 {
        if hi - lo <= ROOT_TOL {
            return Ok(0.5 * (lo + hi));
        }
        let mut x = (lo * fhi - hi * flo) / (fhi - flo);
        if !x.is_finite() || x <= lo || x >= hi {
            x = 0.5 * (lo + hi);
        }
        let fx = ev.eval(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if (flo < 0.0) != (fx < 0.0) {
            hi = x;
            fhi = fx;
            if side == -1 {
                // Same endpoint retained twice: damp it (Illinois rule).
                flo *= 0.5;
            }
            side = -1;
        } else {
            lo = x;
            flo = fx;
            if side == 1 {
                fhi *= 0.5;
            }
            side = 1;
        }
    }
    Err(CoreError::Convergence(format!(
        "root refinement stalled on [{lo}, {hi}]"
    )))
}

// ---- exact rational polynomial helpers (Rodrigues expansion) ----

type Poly = Vec<BigRational>;

/// `(1 + sign * t)^k` with exact integer coefficients.
fn binomial_expansion(sign: i64, k: u32) -> Poly {
    let mut coeffs = Vec::with_capacity(k as usize + 1);
    let mut c = BigInt::one();
    for j in 0..=i64::from(k) {
        let signed = if sign < 0 && j % 2 == 1 { -&c } else { c.clone() };
        coeffs.push(BigRational::from_integer(signed));
        // binom(k, j+1) = binom(k, j) * (k - j) / (j + 1), exactly.
        c = c * (i64::from(k) - j) / (j + 1);
    }
    coeffs
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

fn poly_diff(a: &Poly) -> Poly {
    if a.len() <= 1 {
        return vec![BigRational::zero()];
    }
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect()
}

/// Exact division by `(t - c)`; fails if the remainder is nonzero.
fn div_linear(p: &Poly, c: &BigRational) -> Result<Poly> {
    let n = p.len() - 1;
    if n == 0 {
        return Err(CoreError::Unsupported(
            "cannot divide a constant polynomial by a linear factor".into(),
        ));
    }
    let mut q = vec![BigRational::zero(); n];
    q[n - 1] = p[n].clone();
    for i in (0..n - 1).rev() {
        q[i] = &p[i + 1] + c * &q[i + 1];
    }
    let rem = &p[0] + c * &q[0];
    if !rem.is_zero() {
        return Err(CoreError::Unsupported(
            "rodrigues division left a nonzero remainder".into(),
        ));
    }
    Ok(q)
}

/// Exact division by `(1 - t) = -(t - 1)`.
fn div_one_minus_t(p: &Poly) -> Result<Poly> {
    let q = div_linear(p, &BigRational::one())?;
    Ok(q.into_iter().map(|c| -c).collect())
}

/// Exact division by `(1 + t) = (t - (-1))`.
fn div_one_plus_t(p: &Poly) -> Result<Poly> {
    div_linear(p, &(-BigRational::one()))
}
