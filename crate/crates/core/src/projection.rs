//! Projection constants: integral formulas, closed forms, bounds,
//! asymptotics, and flat-function certificates.
//!
//! The central entry points are [`lambda_harmonic`] and [`lambda_bihom`],
//! which evaluate the projection constant of a bidegree-`(p, q)` space on the
//! sphere of `C^n` as a weighted absolute integral of a Jacobi polynomial:
//!
//! ```text
//! lambda(H_{p,q}) = c_H * int_0^1 (1-t)^(n-2) t^(|p-q|/2)
//!                       |P_m^(n-2, |p-q|)(2t - 1)| dt ,
//! ```
//!
//! with `m = min(p, q)`, `c_H = (n+p+q-1) Gamma(n-1+max(p,q)) /
//! (Gamma(n-1) Gamma(1+max(p,q)))`, and the analogous bihomogeneous formula
//! with first Jacobi parameter `n-1` and prefactor `Gamma(n+max(p,q)) /
//! (Gamma(n-1) Gamma(1+max(p,q)))`.  Prefactors are assembled in log space
//! and the integral is evaluated on the unit interval, so degrees in the
//! thousands stay well inside the `f64` range.
//!
//! Independent cross-checks of the same constants live in
//! [`lambda_kernel_quadrature`] (two-dimensional disk reduction of the kernel
//! modulus), [`lambda_gram_quadrature`] (same, with the kernel built from
//! exact rational Gram data), and [`lambda_monte_carlo`] (uniform sphere
//! sampling).

use crate::error::{CoreError, Result};
use crate::gamma::ln_gamma;
use crate::gram::{orthonormal_basis, GramKernel};
use crate::jacobi::JacobiParams;
use crate::quad::{self, McConfig, McEstimate, QuadResult};
use crate::spaces::{SpaceId, SpaceKind};
use crate::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::fmt;

/// Dimension cap for the flatness search.
const MAX_FLATNESS_DIM: u64 = 64;

/// How a [`LambdaResult`] was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Segmented quadrature of the one-dimensional Jacobi integral formula.
    JacobiIntegral,
    /// A closed-form expression.
    ClosedForm,
    /// Monte Carlo sphere sampling.
    MonteCarlo,
    /// Disk quadrature over the exact-rational Gram kernel.
    GramOracle,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::JacobiIntegral => "jacobi_integral",
            Method::ClosedForm => "closed_form",
            Method::MonteCarlo => "monte_carlo",
            Method::GramOracle => "gram_oracle",
        };
        f.write_str(s)
    }
}

/// A computed projection constant.
#[derive(Clone, Copy, Debug)]
pub struct LambdaResult {
    pub space: SpaceId,
    /// The projection constant; always `>= 1` and `<= sqrt(dim)`.
    pub value: f64,
    pub method: Method,
    /// Bound on the numerical error of `value` (not a statistical error).
    pub abs_error_estimate: f64,
}

/// `lambda(H_{p,q}(S_n))` via the Jacobi integral formula.
pub fn lambda_harmonic(n: u32, p: u32, q: u32) -> Result<LambdaResult> {
    lambda(SpaceId::new(SpaceKind::Harmonic, n, p, q)?)
}

/// `lambda(P_{p,q}(S_n))` via the Jacobi integral formula.
pub fn lambda_bihom(n: u32, p: u32, q: u32) -> Result<LambdaResult> {
    lambda(SpaceId::new(SpaceKind::Bihomogeneous, n, p, q)?)
}

/// Projection constant of a space via the Jacobi integral formula.
pub fn lambda(space: SpaceId) -> Result<LambdaResult> {
    let (n, p, q) = (f64::from(space.n), space.p, space.q);
    let lo = f64::from(p.min(q));
    let hi = f64::from(p.max(q));
    let gap = f64::from(p.abs_diff(q));
    let (alpha, ln_prefactor) = match space.kind {
        SpaceKind::Harmonic => (
            n - 2.0,
            (n + f64::from(p) + f64::from(q) - 1.0).ln() + ln_gamma(n - 1.0 + hi)
                - ln_gamma(n - 1.0)
                - ln_gamma(1.0 + hi),
        ),
        SpaceKind::Bihomogeneous => (
            n - 1.0,
            ln_gamma(n + hi) - ln_gamma(n - 1.0) - ln_gamma(1.0 + hi),
        ),
    };
    let params = JacobiParams::new(alpha, gap, lo as u32)?;
    let integral = params.weighted_abs_l1_unit(n - 2.0, 0.5 * gap)?;
    if !integral.reliable {
        return Err(CoreError::Convergence(format!(
            "quadrature for {space} did not reach its accuracy budget"
        )));
    }
    let value = (ln_prefactor + integral.value.ln()).exp();
    Ok(LambdaResult {
        space,
        value,
        method: Method::JacobiIntegral,
        abs_error_estimate: value * (integral.abs_error_estimate / integral.value),
    })
}

/// The closed-form cases.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedForm {
    /// Homogeneous holomorphic polynomials: `lambda(H_{p,0}(S_n))`.
    Homogeneous { n: u32, p: u32 },
    /// `lambda(H_{1,1}(S_n)) = 2(n+1)(1 - 1/n)^n`.
    HarmonicOneOne { n: u32 },
    /// `lambda(P_{1,1}(S_n)) = 2(n+1)(1 - 1/(n+1))^n - 1`.
    BihomOneOne { n: u32 },
    /// `lambda(H_{p,1}(S_2))` for `p >= 2`.
    HarmonicP1Dim2 { p: u32 },
    /// `lambda(P_{p,1}(S_2))` for `p >= 2`.
    BihomP1Dim2 { p: u32 },
    /// The sequence-space constant `sqrt(pi)/2 * n! / Gamma(n + 1/2)`.
    Rutovitz { n: u32 },
}

/// Evaluates a closed form; errors on out-of-range parameters.
pub fn lambda_closed(case: ClosedForm) -> Result<f64> {
    let need = |ok: bool, what: &str| -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(CoreError::Domain(what.to_string()))
        }
    };
    match case {
        ClosedForm::Homogeneous { n, p } => {
            need(n >= 2, "homogeneous closed form needs n >= 2")?;
            let (n, p) = (f64::from(n), f64::from(p));
            Ok((ln_gamma(n + p) + ln_gamma(1.0 + 0.5 * p)
                - ln_gamma(1.0 + p)
                - ln_gamma(n + 0.5 * p))
                .exp())
        }
        ClosedForm::HarmonicOneOne { n } => {
            need(n >= 2, "(1,1) closed form needs n >= 2")?;
            let n = f64::from(n);
            Ok(2.0 * (n + 1.0) * (1.0 - 1.0 / n).powf(n))
        }
        ClosedForm::BihomOneOne { n } => {
            need(n >= 2, "(1,1) closed form needs n >= 2")?;
            let n = f64::from(n);
            Ok(2.0 * (n + 1.0) * (1.0 - 1.0 / (n + 1.0)).powf(n) - 1.0)
        }
        ClosedForm::HarmonicP1Dim2 { p } => {
            need(p >= 2, "(p,1) closed form needs p >= 2")?;
            let p = f64::from(p);
            Ok((p + 2.0)
                * (8.0 / (p + 3.0) * (p / (p + 1.0)).powf(0.5 * (p + 3.0)) + 2.0 / (p + 1.0)
                    - 4.0 / (p + 3.0)))
        }
        ClosedForm::BihomP1Dim2 { p } => {
            need(p >= 2, "(p,1) closed form needs p >= 2")?;
            let p = f64::from(p);
            Ok((p + 1.0)
                * (8.0 * (p + 2.0) / ((p + 1.0) * (p + 3.0))
                    * (p / (p + 2.0)).powf(0.5 * (p + 3.0))
                    + 4.0 / (p + 1.0)
                    - 4.0 * (p + 2.0) / ((p + 1.0) * (p + 3.0))))
        }
        ClosedForm::Rutovitz { n } => {
            need(n >= 1, "sequence-space constant needs n >= 1")?;
            let n = f64::from(n);
            Ok((0.5 * std::f64::consts::PI.ln() - 2f64.ln() + ln_gamma(n + 1.0)
                - ln_gamma(n + 0.5))
                .exp())
        }
    }
}

/// Finite Gamma-ratio upper bound for the projection constant.
///
/// Obtained by bounding `|P_m(2t-1)|` through the explicit binomial expansion
/// of the Jacobi polynomial and integrating term by term; each term is a Beta
/// integral.  The result is a sum of `min(p, q) + 1` positive terms, exact up
/// to rounding.  For `q = 0` the sum collapses to the closed form itself, so
/// the bound is tight there.
pub fn upper_bound(kind: SpaceKind, n: u32, p: u32, q: u32) -> Result<f64> {
    if n < 2 {
        return Err(CoreError::Domain(format!(
            "sphere parameter n must be >= 2, got {n}"
        )));
    }
    // Swapping the bidegrees is an isometry; normalize to p >= q.
    let (p, q) = (p.max(q), p.min(q));
    let nf = f64::from(n);
    let pf = f64::from(p);
    let qf = f64::from(q);
    let half_gap = 0.5 * (pf - qf);
    let (ln_prefactor, term): (f64, Box<dyn Fn(f64) -> f64>) = match kind {
        SpaceKind::Bihomogeneous => (
            ln_gamma(nf + qf) - ln_gamma(nf - 1.0) - ln_gamma(1.0 + qf),
            Box::new(move |m: f64| {
                ln_gamma(nf + m - 1.0) - ln_gamma(nf + m) + ln_gamma(nf + m + pf)
                    - ln_gamma(1.0 + pf)
                    + ln_gamma(half_gap + 1.0)
                    - ln_gamma(nf + m + half_gap)
            }),
        ),
        SpaceKind::Harmonic => (
            ln_gamma(nf - 1.0 + qf) - ln_gamma(nf - 1.0) - ln_gamma(1.0 + qf),
            Box::new(move |m: f64| {
                (nf + pf + qf - 1.0).ln() + ln_gamma(nf - 1.0 + m + pf) - ln_gamma(1.0 + pf)
                    + ln_gamma(half_gap + 1.0)
                    - ln_gamma(nf + m + half_gap)
            }),
        ),
    };
    // ln binom(q, m) accumulated incrementally; sum via max-shift for
    // stability.
    let mut ln_terms = Vec::with_capacity(q as usize + 1);
    let mut ln_binom = 0.0f64;
    for m in 0..=q {
        if m > 0 {
            ln_binom += (qf - f64::from(m) + 1.0).ln() - f64::from(m).ln();
        }
        ln_terms.push(ln_binom + term(f64::from(m)));
    }
    let peak = ln_terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = ln_terms.iter().map(|&t| (t - peak).exp()).sum();
    Ok((ln_prefactor + peak + sum.ln()).exp())
}

/// The limit of `lambda(X_{p, p+d}(S_n)) / p^(n - 3/2)` as `p -> infinity`
/// (independent of the offset `d`).
///
/// Validated empirically: the quadrature ratios at degrees up to several
/// thousand converge to these values (see the asymptotic acceptance check).
pub fn asymptotic_constant(kind: SpaceKind, n: u32) -> Result<f64> {
    if n < 2 {
        return Err(CoreError::Domain(format!(
            "sphere parameter n must be >= 2, got {n}"
        )));
    }
    let nf = f64::from(n);
    let ln_pi = std::f64::consts::PI.ln();
    let ln = match kind {
        SpaceKind::Harmonic => {
            2.0 * 2f64.ln() + ln_gamma(0.25 * (2.0 * nf - 1.0)) + ln_gamma(0.75)
                - 1.5 * ln_pi
                - ln_gamma(nf - 1.0)
                - ln_gamma(0.5 * (nf + 1.0))
        }
        SpaceKind::Bihomogeneous => {
            2f64.ln() + ln_gamma(0.25 * (2.0 * nf - 3.0)) + ln_gamma(0.75)
                - 1.5 * ln_pi
                - ln_gamma(nf - 1.0)
                - ln_gamma(0.5 * nf)
        }
    };
    Ok(ln.exp())
}

/// One row of an asymptotic study.
#[derive(Clone, Copy, Debug)]
pub struct StudyRow {
    pub p: u32,
    pub lambda: f64,
    /// `lambda / p^(n - 3/2)`.
    pub ratio: f64,
}

/// Computes `lambda(X_{p, p+d})` and the normalized ratio for each listed
/// `p`; rows are evaluated concurrently but returned in input order.
pub fn asymptotic_study(
    kind: SpaceKind,
    n: u32,
    d: i32,
    p_values: &[u32],
) -> Result<Vec<StudyRow>> {
    for &p in p_values {
        if p == 0 {
            return Err(CoreError::Domain(
                "asymptotic ratios need p >= 1".into(),
            ));
        }
        if i64::from(p) + i64::from(d) < 0 {
            return Err(CoreError::Domain(format!(
                "offset d = {d} makes the bidegree negative at p = {p}"
            )));
        }
    }
    let exponent = f64::from(n) - 1.5;
    p_values
        .par_iter()
        .map(|&p| {
            let q = (i64::from(p) + i64::from(d)) as u32;
            let lam = lambda(SpaceId::new(kind, n, p, q)?)?;
            Ok(StudyRow {
                p,
                lambda: lam.value,
                ratio: lam.value / f64::from(p).powf(exponent),
            })
        })
        .collect()
}

/// The asymptotic enclosure for `lambda(X_{p,1}(S_n))` at large `p`.
///
/// Harmonic: `[(n-1) 2^(n-1), 3(n-1) 2^(n-1)]`; bihomogeneous:
/// `[(n-2) 2^(n-1), (3n-2) 2^(n-1)]`.
pub fn q1_band(kind: SpaceKind, n: u32) -> Result<(f64, f64)> {
    if n < 2 {
        return Err(CoreError::Domain(format!(
            "sphere parameter n must be >= 2, got {n}"
        )));
    }
    let scale = 2f64.powi(n as i32 - 1);
    let nf = f64::from(n);
    Ok(match kind {
        SpaceKind::Harmonic => ((nf - 1.0) * scale, 3.0 * (nf - 1.0) * scale),
        SpaceKind::Bihomogeneous => ((nf - 2.0) * scale, (3.0 * nf - 2.0) * scale),
    })
}

/// Result of one `q = 1` band evaluation.
#[derive(Clone, Copy, Debug)]
pub struct BandCheck {
    pub p: u32,
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
    pub inside: bool,
}

/// Evaluates `lambda(X_{p,1}(S_n))` at the listed `p` and reports whether
/// each value lies inside the asymptotic band (with a small tolerance).
pub fn q1_band_check(kind: SpaceKind, n: u32, p_values: &[u32]) -> Result<Vec<BandCheck>> {
    const TOL: f64 = 1e-9;
    let (lower, upper) = q1_band(kind, n)?;
    p_values
        .par_iter()
        .map(|&p| {
            let lam = lambda(SpaceId::new(kind, n, p, 1)?)?;
            Ok(BandCheck {
                p,
                value: lam.value,
                lower,
                upper,
                inside: lam.value >= lower - TOL && lam.value <= upper + TOL,
            })
        })
        .collect()
}

/// Disk quadrature of the analytic kernel modulus: an independent
/// two-dimensional route to the same projection constant.
pub fn lambda_kernel_quadrature(space: SpaceId) -> Result<QuadResult> {
    let kernel = space.kernel()?;
    quad::disk_reduce(space.n, move |w| kernel.eval(w).norm())
}

/// Disk quadrature of the exact-rational Gram kernel modulus.
pub fn lambda_gram_quadrature(space: SpaceId) -> Result<QuadResult> {
    let kernel = GramKernel::new(space)?;
    quad::disk_reduce(space.n, move |w| kernel.eval(w).norm())
}

/// Monte Carlo estimate of the projection constant by uniform sphere
/// sampling of the kernel modulus.
pub fn lambda_monte_carlo(space: SpaceId, cfg: &McConfig) -> Result<McEstimate> {
    let kernel = space.kernel()?;
    quad::mc_first_coordinate(space.n, cfg, move |w| kernel.eval(w).norm())
}

/// A certified (or inconclusive) flat function in a space.
///
/// A flat function has sup norm one but L2 norm bounded away from zero by
/// `sqrt(pi) / (2 lambda(S))`; its existence follows from averaging over
/// random sign combinations, and this certificate exhibits one concretely.
#[derive(Clone, Debug)]
pub struct FlatCertificate {
    pub space: SpaceId,
    /// Coefficients in the internal L2-orthonormal basis of the space (the
    /// deterministic basis produced by the exact Gram construction), scaled
    /// so the sup norm is one.
    pub coefficients: Vec<Complex64>,
    /// Estimated sup norm of the returned function (one by construction).
    pub sup_norm: f64,
    /// L2 norm of the returned function.
    pub l2_norm: f64,
    /// The target `sqrt(pi) / (2 lambda(S))`.
    pub bound: f64,
    /// True when `l2_norm >= bound`; false means the search was
    /// inconclusive, not that no flat function exists.
    pub certified: bool,
    /// Largest `sup / L2` ratio observed among all functions tested during
    /// the search; always at most `sqrt(dim)`.
    pub max_ratio_sup_to_l2: f64,
}

/// Searches for a flat function by random restarts plus coordinate-wise
/// pattern descent of the sampled sup norm; deterministic for a fixed seed.
///
/// The space dimension is capped at 64.  `sphere_samples` quasi-uniform
/// sample points estimate sup norms (the kernel's zonal structure does not
/// apply to a general member of the space, so full sphere sampling is
/// required); the final sup estimate is sharpened by a local search around
/// the maximizing sample.
pub fn flatness_certificate(
    space: SpaceId,
    sphere_samples: usize,
    restarts: u32,
    seed: u64,
) -> Result<FlatCertificate> {
    let dim = space.dim()?;
    if dim > MAX_FLATNESS_DIM {
        return Err(CoreError::Unsupported(format!(
            "flatness search is capped at dimension {MAX_FLATNESS_DIM}, {space} has {dim}"
        )));
    }
    if sphere_samples < 100 {
        return Err(CoreError::Domain(
            "flatness search needs at least 100 sphere samples".into(),
        ));
    }
    if restarts == 0 {
        return Err(CoreError::Domain("flatness search needs restarts >= 1".into()));
    }
    let basis = orthonormal_basis(space)?;
    let k = basis.len();
    let bound = std::f64::consts::PI.sqrt() / (2.0 * lambda(space)?.value);

    // Precompute basis values at every sample point: row s holds
    // phi_1(eta_s), ..., phi_k(eta_s).
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = space.n as usize;
    let mut point = vec![Complex64::new(0.0, 0.0); n];
    let mut samples: Vec<Complex64> = Vec::with_capacity(sphere_samples * k);
    let mut sample_points: Vec<Vec<Complex64>> = Vec::with_capacity(sphere_samples);
    for _ in 0..sphere_samples {
        quad::sample_sphere_point(&mut rng, &mut point);
        samples.extend(basis.eval(&point)?);
        sample_points.push(point.clone());
    }
    let sampled_sup = |c: &[Complex64]| -> (f64, usize) {
        let mut best = 0.0f64;
        let mut arg = 0usize;
        for (s, row) in samples.chunks_exact(k).enumerate() {
            let v: Complex64 = row.iter().zip(c).map(|(&phi, &ci)| phi * ci).sum();
            let a = v.norm_sqr();
            if a > best {
                best = a;
                arg = s;
            }
        }
        (best.sqrt(), arg)
    };

    let normalize = |c: &mut [Complex64]| {
        let norm = c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in c.iter_mut() {
            *z /= norm;
        }
    };

    let mut best_c: Vec<Complex64> = Vec::new();
    let mut best_sup = f64::INFINITY;
    let mut max_ratio: f64 = 0.0;
    for _ in 0..restarts {
        // Random unit start; every tested function has unit L2 norm, so the
        // sup/L2 ratio is just the sampled sup.
        let mut c: Vec<Complex64> = (0..k)
            .map(|_| {
                Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
            })
            .collect();
        normalize(&mut c);
        let (mut sup, _) = sampled_sup(&c);
        max_ratio = max_ratio.max(sup);
        // Pattern descent over real and imaginary parts of each coefficient.
        let mut step = 0.5f64;
        while step > 1e-4 {
            let mut improved = false;
            for i in 0..k {
                for delta in [
                    Complex64::new(step, 0.0),
                    Complex64::new(-step, 0.0),
                    Complex64::new(0.0, step),
                    Complex64::new(0.0, -step),
                ] {
                    let mut trial = c.clone();
                    trial[i] += delta;
                    normalize(&mut trial);
                    let (trial_sup, _) = sampled_sup(&trial);
                    max_ratio = max_ratio.max(trial_sup);
                    if trial_sup < sup - 1e-12 {
                        c = trial;
                        sup = trial_sup;
                        improved = true;
                    }
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
        if sup < best_sup {
            best_sup = sup;
            best_c = c;
        }
    }

    // Sharpen the sup estimate: local random search around the maximizing
    // sample point (the sampled grid may clip the true peak).
    let (sampled, argmax) = sampled_sup(&best_c);
    let mut sup_hat = sampled;
    let mut center = sample_points[argmax].clone();
    let eval_modulus = |pt: &[Complex64], c: &[Complex64]| -> Result<f64> {
        let vals = basis.eval(pt)?;
        Ok(vals
            .iter()
            .zip(c)
            .map(|(&phi, &ci)| phi * ci)
            .sum::<Complex64>()
            .norm())
    };
    for &radius in &[0.1, 0.03, 0.01, 3e-3, 1e-3] {
        for _ in 0..200 {
            let mut trial = center.clone();
            for z in trial.iter_mut() {
                *z += Complex64::new(
                    radius * (rng.gen::<f64>() - 0.5),
                    radius * (rng.gen::<f64>() - 0.5),
                );
            }
            let norm = trial.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            for z in trial.iter_mut() {
                *z /= norm;
            }
            let value = eval_modulus(&trial, &best_c)?;
            if value > sup_hat {
                sup_hat = value;
                center = trial;
            }
        }
    }

    // Scale to sup norm one; the L2 norm of the scaled function is 1/sup
    // because the coefficients are in an orthonormal basis.
    let coefficients: Vec<Complex64> = best_c.iter().map(|&z| z / sup_hat).collect();
    let l2_norm = 1.0 / sup_hat;
    Ok(FlatCertificate {
        space,
        coefficients,
        sup_norm: 1.0,
        l2_norm,
        bound,
        certified: l2_norm >= bound,
        max_ratio_sup_to_l2: max_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn harm(n: u32, p: u32, q: u32) -> f64 {
        lambda_harmonic(n, p, q).unwrap().value
    }

    fn bihom(n: u32, p: u32, q: u32) -> f64 {
        lambda_bihom(n, p, q).unwrap().value
    }

    #[test]
    fn one_one_spot_values() {
        assert_relative_eq!(harm(2, 1, 1), 1.5, max_relative = 1e-11);
        assert_relative_eq!(harm(3, 1, 1), 64.0 / 27.0, max_relative = 1e-11);
        assert_relative_eq!(bihom(2, 1, 1), 5.0 / 3.0, max_relative = 1e-11);
    }

    #[test]
    fn constants_space_has_trivial_constant() {
        assert_relative_eq!(harm(2, 0, 0), 1.0, max_relative = 1e-12);
        assert_relative_eq!(bihom(5, 0, 0), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn homogeneous_line_matches_closed_form() {
        assert_relative_eq!(harm(2, 1, 0), 4.0 / 3.0, max_relative = 1e-10);
        assert_relative_eq!(harm(2, 2, 0), 1.5, max_relative = 1e-10);
        for (n, p) in [(3u32, 4u32), (4, 7), (5, 2)] {
            let closed = lambda_closed(ClosedForm::Homogeneous { n, p }).unwrap();
            assert_relative_eq!(harm(n, p, 0), closed, max_relative = 1e-10);
            // One-sided bidegrees: both kinds are the same space.
            assert_relative_eq!(harm(n, p, 0), bihom(n, p, 0), max_relative = 1e-12);
        }
    }

    #[test]
    fn swap_symmetry() {
        for (n, p, q) in [(2, 3, 1), (3, 2, 4), (4, 1, 3)] {
            assert_relative_eq!(harm(n, p, q), harm(n, q, p), max_relative = 1e-11);
            assert_relative_eq!(bihom(n, p, q), bihom(n, q, p), max_relative = 1e-11);
        }
    }

    #[test]
    fn q1_closed_forms_match_integral() {
        // Also pins the frozen arbitrary-precision value at p = 2.
        let h2 = lambda_closed(ClosedForm::HarmonicP1Dim2 { p: 2 }).unwrap();
        assert_relative_eq!(h2, 1.789_145_830_194_420_7, max_relative = 1e-13);
        for p in [2u32, 5, 17, 60, 200] {
            let h = lambda_closed(ClosedForm::HarmonicP1Dim2 { p }).unwrap();
            let b = lambda_closed(ClosedForm::BihomP1Dim2 { p }).unwrap();
            assert_relative_eq!(harm(2, p, 1), h, max_relative = 1e-9);
            assert_relative_eq!(bihom(2, p, 1), b, max_relative = 1e-9);
        }
    }

    #[test]
    fn rutovitz_constant_is_a_rational_multiple() {
        // sqrt(pi)/2 * n!/Gamma(n+1/2) = 4^n (n!)^2 / (2 (2n)!).
        let fact = |k: u32| (1..=u64::from(k)).map(|x| x as f64).product::<f64>().max(1.0);
        for n in 1..=8u32 {
            let want = 4f64.powi(n as i32) * fact(n) * fact(n) / (2.0 * fact(2 * n));
            let got = lambda_closed(ClosedForm::Rutovitz { n }).unwrap();
            assert_relative_eq!(got, want, max_relative = 1e-12);
        }
        assert_relative_eq!(
            lambda_closed(ClosedForm::Rutovitz { n: 1 }).unwrap(),
            1.0,
            max_relative = 1e-13
        );
    }

    #[test]
    fn closed_forms_validate_parameters() {
        assert!(lambda_closed(ClosedForm::Homogeneous { n: 1, p: 3 }).is_err());
        assert!(lambda_closed(ClosedForm::HarmonicP1Dim2 { p: 1 }).is_err());
        assert!(lambda_closed(ClosedForm::Rutovitz { n: 0 }).is_err());
    }

    #[test]
    fn upper_bound_is_tight_on_the_homogeneous_line() {
        // q = 0 collapses the sum to the exact closed form.
        for (n, p) in [(2u32, 3u32), (3, 5), (4, 10)] {
            let bound = upper_bound(SpaceKind::Bihomogeneous, n, p, 0).unwrap();
            let exact = lambda_closed(ClosedForm::Homogeneous { n, p }).unwrap();
            assert_relative_eq!(bound, exact, max_relative = 1e-11);
        }
    }

    #[test]
    fn upper_bound_dominates_lambda() {
        for n in 2..=3u32 {
            for p in 0..=4u32 {
                for q in 0..=4u32 {
                    let bh = upper_bound(SpaceKind::Harmonic, n, p, q).unwrap();
                    let bb = upper_bound(SpaceKind::Bihomogeneous, n, p, q).unwrap();
                    assert!(
                        bh >= harm(n, p, q) - 1e-10,
                        "harmonic n={n} p={p} q={q}: {bh}"
                    );
                    assert!(
                        bb >= bihom(n, p, q) - 1e-10,
                        "bihom n={n} p={p} q={q}: {bb}"
                    );
                }
            }
        }
    }

    #[test]
    fn upper_bound_large_p_limits() {
        // As p grows with q fixed the bihomogeneous bound approaches
        // 2^(n-1)/Gamma(n-1) * Gamma(n+q)/Gamma(1+q) * sum_m C(q,m) 2^m/(n+m-1)
        // (8 at n=2, q=1), itself below the cruder envelope
        // 2^(n-1) 3^q binom(n-1+q, q) (12 there); the harmonic bound
        // approaches 2^(n-1) 3^q binom(n-2+q, q) exactly (6 there).
        let b = upper_bound(SpaceKind::Bihomogeneous, 2, 200_000, 1).unwrap();
        assert_relative_eq!(b, 8.0, max_relative = 1e-4);
        assert!(b <= 12.0);
        let h = upper_bound(SpaceKind::Harmonic, 2, 200_000, 1).unwrap();
        assert_relative_eq!(h, 6.0, max_relative = 1e-4);
    }

    #[test]
    fn asymptotic_constants_frozen_values() {
        // Frozen from 30-digit arithmetic; the n = 2 bihomogeneous value is
        // 2 sqrt(2/pi) * 2 / ... = 2*sqrt(2)/sqrt(pi), and harmonic n = 3 is
        // sqrt(2/pi).
        let cases = [
            (SpaceKind::Harmonic, 2, 1.217_188_477_799_483_3),
            (SpaceKind::Bihomogeneous, 2, 1.595_769_121_605_730_7),
            (SpaceKind::Harmonic, 3, 0.797_884_560_802_865_36),
            (SpaceKind::Bihomogeneous, 3, 0.608_594_238_899_741_66),
            (SpaceKind::Harmonic, 4, 0.304_297_119_449_870_83),
            (SpaceKind::Bihomogeneous, 4, 0.199_471_140_200_716_34),
        ];
        for (kind, n, want) in cases {
            assert_relative_eq!(
                asymptotic_constant(kind, n).unwrap(),
                want,
                max_relative = 1e-12
            );
        }
        assert_relative_eq!(
            asymptotic_constant(SpaceKind::Bihomogeneous, 2).unwrap(),
            2.0 * 2f64.sqrt() / std::f64::consts::PI.sqrt(),
            max_relative = 1e-13
        );
        assert_relative_eq!(
            asymptotic_constant(SpaceKind::Harmonic, 3).unwrap(),
            (2.0 / std::f64::consts::PI).sqrt(),
            max_relative = 1e-13
        );
    }

    #[test]
    fn study_first_row_matches_the_one_one_value() {
        let rows = asymptotic_study(SpaceKind::Harmonic, 2, 0, &[1, 2]).unwrap();
        assert_eq!(rows.len(), 2);
        assert_relative_eq!(rows[0].lambda, 1.5, max_relative = 1e-10);
        assert_relative_eq!(rows[0].ratio, 1.5, max_relative = 1e-10);
        assert!(rows[1].p == 2 && rows[1].lambda > 0.0);
    }

    #[test]
    fn study_rejects_bad_offsets() {
        assert!(asymptotic_study(SpaceKind::Harmonic, 2, -3, &[2]).is_err());
        assert!(asymptotic_study(SpaceKind::Harmonic, 2, 0, &[0]).is_err());
    }

    #[test]
    fn band_check_at_moderate_p() {
        for (kind, lo, hi) in [
            (SpaceKind::Harmonic, 2.0, 6.0),
            (SpaceKind::Bihomogeneous, 0.0, 8.0),
        ] {
            let checks = q1_band_check(kind, 2, &[300]).unwrap();
            assert_eq!(checks.len(), 1);
            let c = &checks[0];
            assert_relative_eq!(c.lower, lo, epsilon = 1e-12);
            assert_relative_eq!(c.upper, hi, epsilon = 1e-12);
            assert!(c.inside, "{kind} value {} outside [{lo}, {hi}]", c.value);
        }
    }

    #[test]
    fn kernel_quadrature_agrees_with_formula() {
        for (kind, n, p, q) in [
            (SpaceKind::Harmonic, 2, 1, 1),
            (SpaceKind::Bihomogeneous, 2, 1, 1),
            (SpaceKind::Harmonic, 3, 2, 1),
        ] {
            let s = SpaceId::new(kind, n, p, q).unwrap();
            let direct = lambda(s).unwrap().value;
            let disk = lambda_kernel_quadrature(s).unwrap();
            assert!(disk.reliable);
            assert_relative_eq!(disk.value, direct, max_relative = 1e-9);
            let gram = lambda_gram_quadrature(s).unwrap();
            assert_relative_eq!(gram.value, direct, max_relative = 1e-9);
        }
    }

    #[test]
    fn monte_carlo_smoke_test() {
        let s = SpaceId::new(SpaceKind::Harmonic, 2, 1, 1).unwrap();
        let cfg = McConfig {
            samples: 100_000,
            seed: 11,
        };
        let mc = lambda_monte_carlo(s, &cfg).unwrap();
        let direct = lambda(s).unwrap().value;
        assert!(
            (mc.mean - direct).abs() <= 4.0 * mc.std_error,
            "MC {} +- {} vs {}",
            mc.mean,
            mc.std_error,
            direct
        );
    }

    #[test]
    fn kadets_snobar_and_lower_bound() {
        for kind in [SpaceKind::Harmonic, SpaceKind::Bihomogeneous] {
            for n in 2..=4u32 {
                for p in 0..=4u32 {
                    for q in 0..=4u32 {
                        let s = SpaceId::new(kind, n, p, q).unwrap();
                        let v = lambda(s).unwrap().value;
                        let dim = s.dim().unwrap() as f64;
                        assert!(v >= 1.0 - 1e-12, "{s}: {v}");
                        assert!(v <= dim.sqrt() * (1.0 + 1e-10), "{s}: {v} vs sqrt {dim}");
                    }
                }
            }
        }
    }

    #[test]
    fn flatness_certificate_for_the_coordinate_space() {
        // H_{1,0}(S_2) is spanned by the coordinates; z_1 itself has sup
        // norm 1 and L2 norm sqrt(1/2), beating the target bound
        // sqrt(pi)/(2 * 4/3) ~ 0.6647.
        let s = SpaceId::new(SpaceKind::Harmonic, 2, 1, 0).unwrap();
        let cert = flatness_certificate(s, 20_000, 4, 7).unwrap();
        assert!(cert.certified, "l2 {} vs bound {}", cert.l2_norm, cert.bound);
        assert_relative_eq!(cert.bound, 0.664_670_194_752_154_9, max_relative = 1e-9);
        assert!(cert.l2_norm <= 1.0 + 1e-9);
        assert!(cert.l2_norm >= 0.66);
        assert_eq!(cert.sup_norm, 1.0);
        // Every tested function respected sup <= sqrt(dim) * L2.
        assert!(cert.max_ratio_sup_to_l2 <= 2f64.sqrt() + 1e-6);
    }

    #[test]
    fn flatness_rejects_oversized_spaces() {
        let s = SpaceId::new(SpaceKind::Bihomogeneous, 5, 2, 2).unwrap();
        assert!(matches!(
            flatness_certificate(s, 1_000, 1, 0),
            Err(CoreError::Unsupported(_))
        ));
    }
}
