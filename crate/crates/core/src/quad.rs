//! Sphere integration: disk reduction and Monte Carlo sampling.
//!
//! For a function `f` of the first coordinate only, the normalized surface
//! integral over the unit sphere of `C^n` reduces to a two-dimensional
//! integral over the closed unit disk:
//!
//! ```text
//! int f(<eta, e1>) dsigma = (n-1)/pi * int_0^1 int_{-pi}^{pi}
//!     (1 - r^2)^(n-2) f(r e^{i theta}) r dtheta dr .
//! ```
//!
//! [`disk_reduce`] evaluates the right-hand side with a trapezoid rule in the
//! angle (spectrally accurate for trigonometric polynomials) tensored with an
//! adaptive Gauss-Legendre rule in `t = r^2`.  [`disk_reduce_radial`] is the
//! fast path for integrands that do not depend on the angle.
//! [`mc_first_coordinate`] estimates the same integral by uniform sampling of
//! the sphere and is the statistically independent cross-check of the
//! deterministic routes.

use crate::error::{CoreError, Result};
use crate::gl;
use crate::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Result of a deterministic quadrature.
#[derive(Clone, Copy, Debug)]
pub struct QuadResult {
    /// Estimate of the integral.
    pub value: f64,
    /// Estimated absolute error (sum of local rule differences).
    pub abs_error_estimate: f64,
    /// Total number of integrand evaluations.
    pub evaluations: u64,
    /// False when some subinterval exhausted its refinement budget or an
    /// angular grid failed to stabilize.
    pub reliable: bool,
}

/// Configuration of the Monte Carlo estimator.
#[derive(Clone, Copy, Debug)]
pub struct McConfig {
    /// Number of sphere samples to draw.
    pub samples: u64,
    /// Seed of the deterministic sample stream.
    pub seed: u64,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig {
            samples: 1_000_000,
            seed: 0,
        }
    }
}

/// Monte Carlo estimate with its standard error.
#[derive(Clone, Copy, Debug)]
pub struct McEstimate {
    /// Sample mean of the integrand.
    pub mean: f64,
    /// Standard error of the mean (sample standard deviation / sqrt(N)).
    pub std_error: f64,
    /// Number of samples actually drawn.
    pub samples: u64,
}

/// Relative stabilization target for the automatic angular grid.
const THETA_REL_TOL: f64 = 1e-11;

/// Starting and maximal sizes of the automatic angular grid.
const THETA_MIN_POINTS: usize = 16;
const THETA_MAX_POINTS: usize = 8192;

/// Absolute error budget, relative to the first-pass magnitude, of the radial
/// adaptive rule.
const RADIAL_REL_TOL: f64 = 1e-11;

fn check_n(n: u32) -> Result<()> {
    if n < 2 {
        return Err(CoreError::Domain(format!(
            "sphere dimension n must be at least 2, got {n}"
        )));
    }
    Ok(())
}

/// Reduced sphere integral of `f(<eta, e1>)` over the unit sphere of `C^n`.
///
/// `f` is evaluated on the closed unit disk.  The angular grid is doubled
/// until the result stabilizes to [`THETA_REL_TOL`]; integrands that are
/// trigonometric polynomials of degree `< m` in the angle are integrated
/// exactly by an `m`-point grid, so `4(p+q) + 8` points cover every kernel
/// product arising from spaces of bidegree `(p, q)`.
///
/// # Examples
///
/// ```
/// let r = projcon_core::quad::disk_reduce(2, |w| w.norm_sqr()).unwrap();
/// assert!((r.value - 0.5).abs() < 1e-10);
/// ```
pub fn disk_reduce<F>(n: u32, f: F) -> Result<QuadResult>
where
    F: Fn(Complex64) -> f64,
{
    check_n(n)?;
    let mut m = THETA_MIN_POINTS;
    let mut prev: Option<QuadResult> = None;
    loop {
        let cur = disk_reduce_with(n, m, &f)?;
        if let Some(p) = prev {
            let diff = (cur.value - p.value).abs();
            if diff <= THETA_REL_TOL * cur.value.abs().max(1e-3) {
                return Ok(QuadResult {
                    evaluations: cur.evaluations + p.evaluations,
                    abs_error_estimate: cur.abs_error_estimate + diff,
                    ..cur
                });
            }
        }
        if m >= THETA_MAX_POINTS {
            let p = prev.expect("at least one pass completed");
            return Ok(QuadResult {
                reliable: false,
                abs_error_estimate: cur.abs_error_estimate + (cur.value - p.value).abs(),
                evaluations: cur.evaluations + p.evaluations,
                ..cur
            });
        }
        prev = Some(cur);
        m *= 2;
    }
}

/// Disk reduction with a fixed number of angular grid points.
///
/// Exposed for callers that know the angular bandwidth of their integrand;
/// [`disk_reduce`] doubles the grid automatically instead.
pub fn disk_reduce_with<F>(n: u32, theta_points: usize, f: F) -> Result<QuadResult>
where
    F: Fn(Complex64) -> f64,
{
    check_n(n)?;
    if theta_points == 0 {
        return Err(CoreError::Domain(
            "angular grid needs at least one point".into(),
        ));
    }
    let m = theta_points;
    let two_pi = 2.0 * std::f64::consts::PI;
    // Average of f over the circle of radius r (trapezoid = uniform grid on
    // the periodic interval).
    let angular_mean = |r: f64| {
        let mut acc = 0.0;
        for j in 0..m {
            let theta = -std::f64::consts::PI + two_pi * j as f64 / m as f64;
            acc += f(Complex64::from_polar(r, theta));
        }
        acc / m as f64
    };
    let nf = f64::from(n);
    let mut g = |t: f64| (1.0 - t).powi(n as i32 - 2) * angular_mean(t.max(0.0).sqrt());
    // First pass fixes the error budget, second pass refines adaptively.
    let scale = gl::gauss40(&mut g, 0.0, 1.0).abs().max(1e-6);
    let seg = gl::integrate_adaptive(&mut g, 0.0, 1.0, RADIAL_REL_TOL * scale);
    Ok(QuadResult {
        value: (nf - 1.0) * seg.value,
        abs_error_estimate: (nf - 1.0) * seg.abs_error,
        evaluations: (seg.evaluations + 40) * m as u64,
        reliable: seg.converged,
    })
}

/// Fast path of [`disk_reduce`] for angle-independent integrands `g(r)`.
pub fn disk_reduce_radial<F>(n: u32, g: F) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    check_n(n)?;
    let nf = f64::from(n);
    let mut h = |t: f64| (1.0 - t).powi(n as i32 - 2) * g(t.max(0.0).sqrt());
    let scale = gl::gauss40(&mut h, 0.0, 1.0).abs().max(1e-6);
    let seg = gl::integrate_adaptive(&mut h, 0.0, 1.0, RADIAL_REL_TOL * scale);
    Ok(QuadResult {
        value: (nf - 1.0) * seg.value,
        abs_error_estimate: (nf - 1.0) * seg.abs_error,
        evaluations: seg.evaluations + 40,
        reliable: seg.converged,
    })
}

/// Number of samples each independent sub-stream contributes.
///
/// Results are summed in chunk order, so the estimate is bit-for-bit
/// reproducible regardless of how many worker threads participate.
const MC_CHUNK: u64 = 1 << 16;

/// Fills `out` with a uniform random point of the unit sphere of `C^n`
/// (`n = out.len()`), by normalizing a standard complex Gaussian vector.
pub(crate) fn sample_sphere_point(rng: &mut ChaCha8Rng, out: &mut [Complex64]) {
    let mut norm_sq = 0.0;
    for slot in out.iter_mut() {
        let u1: f64 = 1.0 - rng.gen::<f64>(); // (0, 1]
        let u2: f64 = rng.gen();
        let radius = (-2.0 * u1.ln()).sqrt();
        let angle = 2.0 * std::f64::consts::PI * u2;
        *slot = Complex64::new(radius * angle.cos(), radius * angle.sin());
        norm_sq += slot.norm_sqr();
    }
    let inv = 1.0 / norm_sq.sqrt();
    for slot in out.iter_mut() {
        *slot *= inv;
    }
}

/// Monte Carlo estimate of `int g(eta_1) dsigma` over the unit sphere of
/// `C^n`.
///
/// Each sample point is obtained by normalizing a vector of `2n` independent
/// standard Gaussians interpreted as `n` complex coordinates; only the first
/// coordinate is passed to `g`.  Sampling is deterministic for a fixed
/// [`McConfig`]: chunk `i` draws from an independent, seeded stream, and the
/// per-chunk partial sums are combined in index order.
///
/// # Examples
///
/// ```
/// use projcon_core::quad::{mc_first_coordinate, McConfig};
/// let cfg = McConfig { samples: 200_000, seed: 7 };
/// let est = mc_first_coordinate(3, &cfg, |w| w.norm_sqr()).unwrap();
/// assert!((est.mean - 1.0 / 3.0).abs() < 5.0 * est.std_error);
/// ```
pub fn mc_first_coordinate<F>(n: u32, cfg: &McConfig, g: F) -> Result<McEstimate>
where
    F: Fn(Complex64) -> f64 + Sync,
{
    check_n(n)?;
    if cfg.samples == 0 {
        return Err(CoreError::Domain("sample count must be positive".into()));
    }
    let chunks = cfg.samples.div_ceil(MC_CHUNK);
    let partials: Vec<(f64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(chunk + 1);
            let count = MC_CHUNK.min(cfg.samples - chunk * MC_CHUNK);
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            let mut gauss = [0.0f64; 2];
            for _ in 0..count {
                // 2n standard normals via Box-Muller; the first two form the
                // complex first coordinate before normalization.
                let mut norm_sq = 0.0;
                let mut first = Complex64::new(0.0, 0.0);
                for pair in 0..n {
                    let u1: f64 = 1.0 - rng.gen::<f64>(); // (0, 1]
                    let u2: f64 = rng.gen();
                    let radius = (-2.0 * u1.ln()).sqrt();
                    let angle = 2.0 * std::f64::consts::PI * u2;
                    gauss[0] = radius * angle.cos();
                    gauss[1] = radius * angle.sin();
                    norm_sq += gauss[0] * gauss[0] + gauss[1] * gauss[1];
                    if pair == 0 {
                        first = Complex64::new(gauss[0], gauss[1]);
                    }
                }
                let value = g(first / norm_sq.sqrt());
                sum += value;
                sum_sq += value * value;
            }
            (sum, sum_sq)
        })
        .collect();
    let (sum, sum_sq) = partials
        .iter()
        .fold((0.0, 0.0), |(s, q), (ps, pq)| (s + ps, q + pq));
    let nf = cfg.samples as f64;
    let mean = sum / nf;
    let variance = ((sum_sq - nf * mean * mean) / (nf - 1.0).max(1.0)).max(0.0);
    Ok(McEstimate {
        mean,
        std_error: (variance / nf).sqrt(),
        samples: cfg.samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn constant_integrates_to_one() {
        for n in [2, 3, 5] {
            let r = disk_reduce(n, |_| 1.0).unwrap();
            assert!(r.reliable);
            assert_relative_eq!(r.value, 1.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn first_coordinate_second_moment() {
        // int |eta_1|^2 dsigma = 1/n.
        for n in [2, 3, 4, 7] {
            let r = disk_reduce(n, |w| w.norm_sqr()).unwrap();
            assert_relative_eq!(r.value, 1.0 / f64::from(n), max_relative = 1e-11);
            let rr = disk_reduce_radial(n, |r| r * r).unwrap();
            assert_relative_eq!(rr.value, 1.0 / f64::from(n), max_relative = 1e-11);
        }
    }

    #[test]
    fn angular_phases_integrate_to_zero() {
        // int eta_1 dsigma = 0: test the real part of a pure phase integrand.
        let r = disk_reduce(3, |w| w.re).unwrap();
        assert!(r.value.abs() < 1e-12);
    }

    #[test]
    fn radial_and_general_paths_agree() {
        let f = |w: Complex64| (1.0 - w.norm_sqr()).powi(3) * (3.0 * w.norm()).cos();
        let g = |r: f64| (1.0 - r * r).powi(3) * (3.0 * r).cos();
        let a = disk_reduce(4, f).unwrap();
        let b = disk_reduce_radial(4, g).unwrap();
        assert_relative_eq!(a.value, b.value, max_relative = 1e-10);
    }

    #[test]
    fn rejects_degenerate_dimension() {
        assert!(disk_reduce(1, |_| 1.0).is_err());
        assert!(mc_first_coordinate(0, &McConfig::default(), |_| 1.0).is_err());
    }

    #[test]
    fn mc_matches_known_moment() {
        let cfg = McConfig {
            samples: 400_000,
            seed: 42,
        };
        for n in [2, 3] {
            let est = mc_first_coordinate(n, &cfg, |w| w.norm_sqr()).unwrap();
            let want = 1.0 / f64::from(n);
            assert!(
                (est.mean - want).abs() < 4.0 * est.std_error,
                "mean {} want {} stderr {}",
                est.mean,
                want,
                est.std_error
            );
        }
    }

    #[test]
    fn mc_is_deterministic_for_fixed_seed() {
        let cfg = McConfig {
            samples: 150_000,
            seed: 9999,
        };
        let a = mc_first_coordinate(2, &cfg, |w| w.re.abs()).unwrap();
        let b = mc_first_coordinate(2, &cfg, |w| w.re.abs()).unwrap();
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        assert_eq!(a.std_error.to_bits(), b.std_error.to_bits());
    }

    #[test]
    fn mc_seed_changes_the_stream() {
        let a = mc_first_coordinate(
            2,
            &McConfig {
                samples: 50_000,
                seed: 1,
            },
            |w| w.re.abs(),
        )
        .unwrap();
        let b = mc_first_coordinate(
            2,
            &McConfig {
                samples: 50_000,
                seed: 2,
            },
            |w| w.re.abs(),
        )
        .unwrap();
        assert_ne!(a.mean.to_bits(), b.mean.to_bits());
    }
}
