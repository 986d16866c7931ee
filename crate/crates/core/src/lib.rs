//! Numerical core for projection constants of bihomogeneous function spaces
//! on complex unit spheres.
//!
//! The library computes the projection constant `lambda(S)` of two families of
//! finite-dimensional function spaces on the unit sphere of `C^n`:
//!
//! * bihomogeneous polynomial spaces (holomorphic degree `p`, antiholomorphic
//!   degree `q`), and
//! * their harmonic subspaces,
//!
//! via one-dimensional Jacobi-polynomial integral formulas.  Every value can be
//! cross-checked along three independent routes:
//!
//! 1. the segmented Gauss-Legendre quadrature of the Jacobi integral
//!    ([`projection::lambda_harmonic`], [`projection::lambda_bihom`]),
//! 2. a reduction of the sphere integral of the reproducing-kernel modulus to
//!    the unit disk ([`quad::disk_reduce`]) or plain Monte Carlo sampling of
//!    the sphere ([`quad::mc_first_coordinate`]), and
//! 3. an exact-rational reproducing kernel assembled from sphere moments
//!    ([`gram::GramKernel`]).
//!
//! Closed forms (homogeneous spaces, the `(1,1)` and `(p,1)` families, the
//! sequence-space constant) and upper bounds are available in [`projection`],
//! and [`verify`] bundles the whole invariant suite behind a single call.
//!
//! All randomized computations are deterministic for a fixed seed and
//! independent of thread count.

pub mod error;
pub mod gamma;
pub mod gram;
mod gl;
pub mod jacobi;
pub mod projection;
pub mod quad;
pub mod spaces;
pub mod verify;

pub use error::{CoreError, Result};
pub use gamma::LogValue;
pub use gram::{GramKernel, MultiIndexPair, RationalMatrix};
pub use jacobi::{JacobiParams, SignedSegments};
pub use projection::{
    BandCheck, ClosedForm, FlatCertificate, LambdaResult, Method, StudyRow,
};
pub use quad::{McConfig, McEstimate, QuadResult};
pub use spaces::{LegendreCoeffs, RadialKernel, SpaceId, SpaceKind};
pub use verify::{CheckResult, CheckStatus, VerifyReport};

/// Complex double-precision scalar used throughout the crate.
pub type Complex64 = num::complex::Complex<f64>;
