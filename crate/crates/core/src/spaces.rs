//! Function spaces on the complex unit sphere: identifiers, dimensions, and
//! reproducing kernels.
//!
//! A space is a pair of bidegrees `(p, q)` on the unit sphere of `C^n`:
//! either the full bihomogeneous polynomial space (spanned by monomials of
//! holomorphic degree `p` and antiholomorphic degree `q`) or its harmonic
//! subspace (the kernel of the complex Laplacian).  Both carry a unitarily
//! invariant reproducing kernel that depends only on the Hermitian inner
//! product of its arguments, so the kernel against the first basis vector
//! `e_1` is a function of the first coordinate alone — a polynomial in `z`
//! and `conj(z)` on the closed unit disk ([`RadialKernel`]).
//!
//! Two independent expressions for the harmonic kernel profile are provided:
//! a hypergeometric-style coefficient expansion ([`LegendreCoeffs`]) and a
//! scaled Jacobi polynomial ([`RadialKernel`]); agreement of the two is part
//! of the verification suite.

use crate::error::{CoreError, Result};
use crate::gamma::ln_gamma;
use crate::jacobi::{Evaluator, JacobiParams};
use crate::Complex64;
use num::bigint::BigUint;
use num::rational::BigRational;
use num::{BigInt, One, ToPrimitive};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// Which of the two space families a [`SpaceId`] refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    /// Harmonic bihomogeneous polynomials (kernel of the complex Laplacian).
    Harmonic,
    /// All bihomogeneous polynomials of the given bidegree.
    Bihomogeneous,
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceKind::Harmonic => write!(f, "harmonic"),
            SpaceKind::Bihomogeneous => write!(f, "bihom"),
        }
    }
}

impl FromStr for SpaceKind {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "harmonic" | "harm" | "h" => Ok(SpaceKind::Harmonic),
            "bihom" | "bihomogeneous" | "b" => Ok(SpaceKind::Bihomogeneous),
            other => Err(CoreError::Domain(format!(
                "unknown space kind '{other}' (expected 'harmonic' or 'bihom')"
            ))),
        }
    }
}

/// A concrete space: kind, sphere dimension parameter `n >= 2`, bidegrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpaceId {
    pub kind: SpaceKind,
    /// Complex dimension of the ambient space; the sphere is `S_n c C^n`.
    pub n: u32,
    /// Holomorphic degree.
    pub p: u32,
    /// Antiholomorphic degree.
    pub q: u32,
}

impl fmt::Display for SpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.kind {
            SpaceKind::Harmonic => "H",
            SpaceKind::Bihomogeneous => "P",
        };
        write!(f, "{}_{{{},{}}}(S_{})", tag, self.p, self.q, self.n)
    }
}

impl SpaceId {
    /// Validates the identifier; requires `n >= 2`.
    pub fn new(kind: SpaceKind, n: u32, p: u32, q: u32) -> Result<Self> {
        if n < 2 {
            return Err(CoreError::Domain(format!(
                "sphere parameter n must be >= 2, got {n}"
            )));
        }
        Ok(SpaceId { kind, n, p, q })
    }

    /// Exact dimension as an arbitrary-precision integer.
    pub fn dim_exact(&self) -> BigUint {
        match self.kind {
            SpaceKind::Harmonic => dim_harmonic(self.n, self.p, self.q),
            SpaceKind::Bihomogeneous => dim_bihom(self.n, self.p, self.q),
        }
    }

    /// Dimension as `u64`, or [`CoreError::Overflow`] when it does not fit.
    pub fn dim(&self) -> Result<u64> {
        self.dim_exact().to_u64().ok_or_else(|| {
            CoreError::Overflow(format!("dimension of {self} exceeds u64 range"))
        })
    }

    /// Natural logarithm of the dimension; finite for every valid space.
    pub fn ln_dim(&self) -> f64 {
        match self.kind {
            SpaceKind::Bihomogeneous => {
                ln_binomial(self.n, self.p) + ln_binomial(self.n, self.q)
            }
            SpaceKind::Harmonic => {
                if self.p == 0 || self.q == 0 {
                    ln_binomial(self.n, self.p) + ln_binomial(self.n, self.q)
                } else {
                    // ln(A - B) with A, B the bihomogeneous dimensions at
                    // (p, q) and (p-1, q-1).
                    let ln_a = ln_binomial(self.n, self.p) + ln_binomial(self.n, self.q);
                    let ln_b =
                        ln_binomial(self.n, self.p - 1) + ln_binomial(self.n, self.q - 1);
                    ln_a + (-((ln_b - ln_a).exp())).ln_1p()
                }
            }
        }
    }

    /// The reproducing kernel against `e_1` as a function on the unit disk.
    pub fn kernel(&self) -> Result<RadialKernel> {
        RadialKernel::new(*self)
    }
}

/// `dim P_{p,q}(S_n) = binom(n+p-1, p) * binom(n+q-1, q)`, exactly.
pub fn dim_bihom(n: u32, p: u32, q: u32) -> BigUint {
    binomial_big(u64::from(n) + u64::from(p) - 1, u64::from(p))
        * binomial_big(u64::from(n) + u64::from(q) - 1, u64::from(q))
}

/// `dim H_{p,q}(S_n)`, exactly: the bihomogeneous dimension at `(p, q)` minus
/// the one at `(p-1, q-1)` (the trace of the Laplacian is onto).
pub fn dim_harmonic(n: u32, p: u32, q: u32) -> BigUint {
    let full = dim_bihom(n, p, q);
    if p == 0 || q == 0 {
        full
    } else {
        full - dim_bihom(n, p - 1, q - 1)
    }
}

fn binomial_big(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for j in 0..k {
        acc = acc * BigUint::from(n - j) / BigUint::from(j + 1);
    }
    acc
}

/// `ln binom(n + d - 1, d)` — log-dimension of one homogeneous factor.
fn ln_binomial(n: u32, d: u32) -> f64 {
    let (n, d) = (f64::from(n), f64::from(d));
    ln_gamma(n + d) - ln_gamma(d + 1.0) - ln_gamma(n)
}

/// Coefficient expansion of the harmonic kernel profile.
///
/// The unnormalized profile on the disk is
///
/// ```text
/// L(z) = e^(i (p-q) theta) * sum_j c_j r^(p+q-2j) (1 - r^2)^j ,
/// ```
///
/// with `c_0 = 1` and the ratio recurrence
/// `c_(j+1) = -(p-j)(q-j) / ((j+1)(j+n-1)) * c_j`, terminating after
/// `min(p, q)` steps.  `L(1) = 1`.
#[derive(Clone, Debug)]
pub struct LegendreCoeffs {
    n: u32,
    p: u32,
    q: u32,
    coeffs: Vec<f64>,
}

impl LegendreCoeffs {
    /// Builds the coefficient list; requires `n >= 2`.
    pub fn new(n: u32, p: u32, q: u32) -> Result<Self> {
        if n < 2 {
            return Err(CoreError::Domain(format!(
                "sphere parameter n must be >= 2, got {n}"
            )));
        }
        let m = p.min(q) as usize;
        let mut coeffs = Vec::with_capacity(m + 1);
        let mut c = 1.0f64;
        coeffs.push(c);
        for j in 0..m {
            let j = j as f64;
            c *= -((f64::from(p) - j) * (f64::from(q) - j))
                / ((j + 1.0) * (j + f64::from(n) - 1.0));
            coeffs.push(c);
        }
        Ok(LegendreCoeffs { n, p, q, coeffs })
    }

    /// The coefficients `c_0, ..., c_(min(p,q))`.
    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    /// Radial profile `sum_j c_j r^(p+q-2j) (1 - r^2)^j` for `0 <= r <= 1`.
    pub fn eval_radial(&self, r: f64) -> f64 {
        // (1 - r)(1 + r) keeps full precision near r = 1, where the plain
        // difference 1 - r*r loses half the significand.
        let w = (1.0 - r) * (1.0 + r);
        let mut total = 0.0;
        for (j, &c) in self.coeffs.iter().enumerate() {
            let j = j as u32;
            total += c * pow_u32(r, self.p + self.q - 2 * j) * pow_u32(w, j);
        }
        total
    }

    /// Full profile with the phase factor, `z` in the closed unit disk.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let radial = self.eval_radial(z.norm());
        match self.p.cmp(&self.q) {
            Ordering::Equal => Complex64::new(radial, 0.0),
            Ordering::Greater => phase_power(z, self.p - self.q) * radial,
            Ordering::Less => phase_power(z.conj(), self.q - self.p) * radial,
        }
    }

    /// The ambient dimension parameter.
    pub fn n(&self) -> u32 {
        self.n
    }
}

/// `e^(i k theta)` for `z = r e^(i theta)`, robust at `z = 0` (returns 1).
fn phase_power(z: Complex64, k: u32) -> Complex64 {
    let r = z.norm();
    if r == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    (z / r).powu(k)
}

fn pow_u32(x: f64, e: u32) -> f64 {
    if e == 0 {
        1.0
    } else {
        x.powi(e as i32)
    }
}

/// Reproducing kernel against `e_1`, reduced to the unit disk.
///
/// For `eta` on the sphere with first coordinate `z`, the kernel value
/// `k(e_1, eta)` equals
///
/// ```text
/// prefactor * z^(p-q) * P_m^(alpha, |p-q|)(2 |z|^2 - 1)      (p >= q)
/// ```
///
/// (with `conj(z)^(q-p)` instead when `q > p`), where `m = min(p, q)`,
/// `alpha = n - 2` for the harmonic space and `n - 1` for the bihomogeneous
/// space, and the prefactor is fixed by `k(e_1, e_1) = dim`.
#[derive(Clone, Debug)]
pub struct RadialKernel {
    space: SpaceId,
    prefactor: f64,
    evaluator: Evaluator,
}

impl RadialKernel {
    /// Builds the kernel; fails when the prefactor leaves the `f64` range or
    /// the Jacobi degree `min(p, q)` exceeds the supported cap.
    pub fn new(space: SpaceId) -> Result<Self> {
        let (p, q, n) = (space.p, space.q, space.n);
        let m = p.min(q);
        let alpha = match space.kind {
            SpaceKind::Harmonic => f64::from(n) - 2.0,
            SpaceKind::Bihomogeneous => f64::from(n) - 1.0,
        };
        let params = JacobiParams::new(alpha, f64::from(p.abs_diff(q)), m)?;
        // Exact prefactor = dim / P(1) with P(1) = binom(m + alpha, m).
        let p_at_one = binomial_big(u64::from(m) + alpha as u64, u64::from(m));
        let ratio = BigRational::new(
            BigInt::from(space.dim_exact()),
            BigInt::from(p_at_one),
        );
        let prefactor = ratio.to_f64().unwrap_or(f64::INFINITY);
        if !prefactor.is_finite() {
            return Err(CoreError::Overflow(format!(
                "kernel prefactor for {space} exceeds f64 range"
            )));
        }
        Ok(RadialKernel {
            space,
            prefactor,
            evaluator: params.evaluator(),
        })
    }

    /// The space this kernel reproduces.
    pub fn space(&self) -> SpaceId {
        self.space
    }

    /// Kernel value at first coordinate `z`, `|z| <= 1`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let radial = self.prefactor * self.evaluator.eval(2.0 * z.norm_sqr() - 1.0);
        match self.space.p.cmp(&self.space.q) {
            Ordering::Equal => Complex64::new(radial, 0.0),
            Ordering::Greater => z.powu(self.space.p - self.space.q) * radial,
            Ordering::Less => z.conj().powu(self.space.q - self.space.p) * radial,
        }
    }

    /// Signed profile along the positive real axis, `k(e_1, r e_1)`.
    pub fn eval_radial(&self, r: f64) -> f64 {
        self.prefactor
            * pow_u32(r, self.space.p.abs_diff(self.space.q))
            * self.evaluator.eval(2.0 * r * r - 1.0)
    }

    /// `|k(e_1, eta)|` as a function of `r = |eta_1|` alone.
    pub fn abs_radial(&self, r: f64) -> f64 {
        self.eval_radial(r).abs()
    }
}
