//! Exact-arithmetic reproducing kernels from monomial Gram matrices.
//!
//! Everything here works from first principles: the only analytic input is
//! the sphere moment identity
//!
//! ```text
//! int_{S_n} z^alpha conj(z)^beta dsigma = 0                     (alpha != beta)
//!                                       = (n-1)! alpha! / (n-1+|alpha|)!
//! ```
//!
//! evaluated in exact rational arithmetic.  From the moments we assemble the
//! Gram matrix of the monomial basis `z^alpha conj(z)^beta`, invert the block
//! containing the distinguished monomial `z_1^p conj(z_1)^q`, and obtain the
//! reproducing kernel slice `k(e_1, .)` with exact rational weights — an
//! oracle completely independent of the Jacobi-polynomial route in
//! [`crate::spaces`].
//!
//! Two monomial pairs have a nonzero moment against each other exactly when
//! their difference vectors `alpha - beta` coincide, so the Gram matrix is
//! block diagonal under that grading (it is *not* diagonal: within a block
//! every cross moment is strictly positive).  Only the block of
//! `z_1^p conj(z_1)^q` contributes at `e_1`, which keeps the exact solve
//! small.

use crate::error::{CoreError, Result};
use crate::spaces::{dim_bihom, SpaceId, SpaceKind};
use crate::Complex64;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use std::collections::HashMap;

/// Ambient-dimension cap for the exact kernel construction.
const MAX_KERNEL_DIM: u64 = 400;

/// Ambient-dimension cap for the exact orthonormal basis construction.
const MAX_BASIS_DIM: u64 = 64;

/// A monomial `z^alpha conj(z)^beta` on `C^n`, given by its exponent pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndexPair {
    /// Exponents of the holomorphic coordinates.
    pub alpha: Vec<u32>,
    /// Exponents of the conjugated coordinates.
    pub beta: Vec<u32>,
}

impl MultiIndexPair {
    /// Holomorphic degree `|alpha|`.
    pub fn degree_p(&self) -> u32 {
        self.alpha.iter().sum()
    }

    /// Antiholomorphic degree `|beta|`.
    pub fn degree_q(&self) -> u32 {
        self.beta.iter().sum()
    }

    /// Evaluates the monomial at a point of `C^n`.
    pub fn eval(&self, point: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for ((&a, &b), &z) in self.alpha.iter().zip(&self.beta).zip(point) {
            if a > 0 {
                acc *= z.powu(a);
            }
            if b > 0 {
                acc *= z.conj().powu(b);
            }
        }
        acc
    }

    /// True when the monomial is supported on the first coordinate alone, so
    /// it does not vanish at `e_1`.
    fn lives_on_first_coordinate(&self) -> bool {
        self.alpha[1..].iter().all(|&a| a == 0) && self.beta[1..].iter().all(|&b| b == 0)
    }
}

/// `int_{S_n} z^alpha conj(z)^beta dsigma_n` as an exact rational.
///
/// Zero unless `alpha == beta`; otherwise `(n-1)! alpha! / (n-1+|alpha|)!`.
/// Both exponent slices must have length `n`.
pub fn monomial_moment(n: u32, alpha: &[u32], beta: &[u32]) -> BigRational {
    assert_eq!(alpha.len(), n as usize, "alpha must have length n");
    assert_eq!(beta.len(), n as usize, "beta must have length n");
    if alpha != beta {
        return BigRational::zero();
    }
    moment_of_matched(n, alpha)
}

/// The moment for the matched case, taking the common exponent vector.
fn moment_of_matched(n: u32, gamma: &[u32]) -> BigRational {
    let total: u32 = gamma.iter().sum();
    let mut num = factorial(u64::from(n) - 1);
    for &g in gamma {
        num *= factorial(u64::from(g));
    }
    BigRational::new(num, factorial(u64::from(n) - 1 + u64::from(total)))
}

fn factorial(k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for j in 2..=k {
        acc *= j;
    }
    acc
}

/// All length-`parts` vectors of nonnegative integers summing to `total`,
/// enumerated with the first coordinate descending (so `(total, 0, ..., 0)`
/// comes first).
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn rec(total: u32, idx: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if idx + 1 == cur.len() {
            cur[idx] = total;
            out.push(cur.clone());
            return;
        }
        for v in (0..=total).rev() {
            cur[idx] = v;
            rec(total - v, idx + 1, cur, out);
        }
    }
    assert!(parts >= 1);
    let mut out = Vec::new();
    let mut cur = vec![0u32; parts];
    rec(total, 0, &mut cur, &mut out);
    out
}

/// Dense matrix of exact rationals with the small amount of linear algebra
/// the kernel construction needs: solving and nullspaces, both exact.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    /// Builds a matrix from rows; all rows must have equal nonzero length.
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if nrows == 0 || ncols == 0 {
            return Err(CoreError::Domain("matrix must be nonempty".into()));
        }
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(CoreError::Domain("matrix rows have unequal lengths".into()));
        }
        Ok(RationalMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    fn get_mut(&mut self, i: usize, j: usize) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }

    /// True for square matrices equal to their transpose.
    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Exact solution of `A x = rhs` for square `A` by Gaussian elimination.
    pub fn solve(&self, rhs: &[BigRational]) -> Result<Vec<BigRational>> {
        if self.rows != self.cols {
            return Err(CoreError::Domain("solve requires a square matrix".into()));
        }
        if rhs.len() != self.rows {
            return Err(CoreError::Domain(
                "right-hand side length does not match the matrix".into(),
            ));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut b = rhs.to_vec();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or_else(|| CoreError::Domain("matrix is singular".into()))?;
            if pivot != col {
                for j in 0..n {
                    let tmp = a.get(pivot, j).clone();
                    *a.get_mut(pivot, j) = a.get(col, j).clone();
                    *a.get_mut(col, j) = tmp;
                }
                b.swap(pivot, col);
            }
            let inv = a.get(col, col).clone();
            for r in (col + 1)..n {
                if a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col) / &inv;
                for j in col..n {
                    let sub = &factor * a.get(col, j);
                    *a.get_mut(r, j) -= sub;
                }
                let sub = &factor * &b[col];
                b[r] -= sub;
            }
        }
        // Back substitution.
        let mut x = vec![BigRational::zero(); n];
        for row in (0..n).rev() {
            let mut acc = b[row].clone();
            for j in (row + 1)..n {
                acc -= a.get(row, j) * &x[j];
            }
            x[row] = acc / a.get(row, row);
        }
        Ok(x)
    }

    /// Exact basis of the nullspace `{x : A x = 0}` via reduced row echelon
    /// form; returns one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let (m, n) = (self.rows, self.cols);
        let mut a = self.clone();
        let mut pivot_of_row: Vec<usize> = Vec::new();
        let mut row = 0usize;
        for col in 0..n {
            let pivot = (row..m).find(|&r| !a.get(r, col).is_zero());
            let Some(pivot) = pivot else { continue };
            if pivot != row {
                for j in 0..n {
                    let tmp = a.get(pivot, j).clone();
                    *a.get_mut(pivot, j) = a.get(row, j).clone();
                    *a.get_mut(row, j) = tmp;
                }
            }
            let inv = a.get(row, col).clone();
            for j in 0..n {
                *a.get_mut(row, j) /= inv.clone();
            }
            for r in 0..m {
                if r != row && !a.get(r, col).is_zero() {
                    let factor = a.get(r, col).clone();
                    for j in 0..n {
                        let sub = &factor * a.get(row, j);
                        *a.get_mut(r, j) -= sub;
                    }
                }
            }
            pivot_of_row.push(col);
            row += 1;
            if row == m {
                break;
            }
        }
        let pivot_cols: Vec<usize> = pivot_of_row;
        let mut basis = Vec::new();
        for free in (0..n).filter(|c| !pivot_cols.contains(c)) {
            let mut v = vec![BigRational::zero(); n];
            v[free] = BigRational::one();
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -a.get(r, free).clone();
            }
            basis.push(v);
        }
        basis
    }
}

/// One weighted monomial of a kernel expansion.
#[derive(Clone, Debug)]
struct KernelTerm {
    weight_exact: BigRational,
    weight: f64,
    pair: MultiIndexPair,
}

/// The reproducing kernel slice `k(e_1, .)` built from exact Gram data.
///
/// The kernel of the space is expanded over the monomials whose difference
/// vector matches `z_1^p conj(z_1)^q`; the weights solve the block Gram
/// system exactly.  Harmonic kernels are the difference of two bihomogeneous
/// ones (the orthogonal decomposition of the full bidegree space), which
/// avoids constructing an explicit harmonic basis.
#[derive(Clone, Debug)]
pub struct GramKernel {
    space: SpaceId,
    terms: Vec<KernelTerm>,
}

impl GramKernel {
    /// Builds the kernel; ambient bihomogeneous dimension is capped at 400.
    pub fn new(space: SpaceId) -> Result<Self> {
        let ambient = dim_bihom(space.n, space.p, space.q);
        match ambient.to_u64() {
            Some(d) if d <= MAX_KERNEL_DIM => {}
            _ => {
                return Err(CoreError::Unsupported(format!(
                    "exact kernel construction is capped at ambient dimension {MAX_KERNEL_DIM}, \
                     space {space} has {ambient}"
                )))
            }
        }
        let mut terms = block_kernel_terms(space.n, space.p, space.q, false)?;
        if space.kind == SpaceKind::Harmonic && space.p > 0 && space.q > 0 {
            terms.extend(block_kernel_terms(space.n, space.p - 1, space.q - 1, true)?);
        }
        Ok(GramKernel { space, terms })
    }

    /// The space whose kernel this is.
    pub fn space(&self) -> SpaceId {
        self.space
    }

    /// Kernel value as a function of the first coordinate `w`, `|w| <= 1`.
    ///
    /// The remaining mass is placed on the second coordinate; by unitary
    /// invariance the value depends on `w` alone.
    pub fn eval(&self, w: Complex64) -> Complex64 {
        let rest = (1.0 - w.norm_sqr()).max(0.0).sqrt();
        let mut point = vec![Complex64::new(0.0, 0.0); self.space.n as usize];
        point[0] = w;
        point[1] = Complex64::new(rest, 0.0);
        self.eval_at(&point).expect("point has the right length")
    }

    /// Kernel value at a full point of `C^n` (intended: a sphere point).
    pub fn eval_at(&self, eta: &[Complex64]) -> Result<Complex64> {
        if eta.len() != self.space.n as usize {
            return Err(CoreError::Domain(format!(
                "point has {} coordinates, space lives on C^{}",
                eta.len(),
                self.space.n
            )));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for term in &self.terms {
            acc += term.pair.eval(eta) * term.weight;
        }
        Ok(acc)
    }

    /// `k(e_1, e_1)` in exact rational arithmetic; equals the dimension.
    pub fn value_at_basepoint_exact(&self) -> BigRational {
        self.terms
            .iter()
            .filter(|t| t.pair.lives_on_first_coordinate())
            .map(|t| t.weight_exact.clone())
            .sum()
    }
}

/// Kernel terms of the bihomogeneous `(p, q)` block, negated when `negate`
/// (used for the harmonic difference).
fn block_kernel_terms(n: u32, p: u32, q: u32, negate: bool) -> Result<Vec<KernelTerm>> {
    let nn = n as usize;
    // Pairs (alpha, beta) with alpha - beta = (p - q) e_1: parametrized by
    // beta, with alpha = beta + (p - q) e_1 where admissible.
    let mut pairs = Vec::new();
    for beta in compositions(q, nn) {
        let a0 = i64::from(beta[0]) + i64::from(p) - i64::from(q);
        if a0 < 0 {
            continue;
        }
        let mut alpha = beta.clone();
        alpha[0] = a0 as u32;
        pairs.push(MultiIndexPair { alpha, beta });
    }
    // The descending enumeration puts beta = (q, 0, ..., 0) first, i.e. the
    // monomial z_1^p conj(z_1)^q that survives at e_1.
    debug_assert!(pairs[0].lives_on_first_coordinate());
    let k = pairs.len();
    let mut rows = Vec::with_capacity(k);
    for i in 0..k {
        let mut row = Vec::with_capacity(k);
        for j in 0..k {
            // <m_i, m_j> = int z^(alpha_i + beta_j) conj(z)^(beta_i + alpha_j);
            // within the block the two exponents agree automatically.
            let gamma: Vec<u32> = pairs[i]
                .alpha
                .iter()
                .zip(&pairs[j].beta)
                .map(|(&a, &b)| a + b)
                .collect();
            row.push(moment_of_matched(n, &gamma));
        }
        rows.push(row);
    }
    let gram = RationalMatrix::from_rows(rows)?;
    let mut rhs = vec![BigRational::zero(); k];
    rhs[0] = BigRational::one();
    let weights = gram.solve(&rhs)?;
    Ok(weights
        .into_iter()
        .zip(pairs)
        .map(|(w, pair)| {
            let w = if negate { -w } else { w };
            let weight = w.to_f64().unwrap_or(f64::NAN);
            KernelTerm {
                weight_exact: w,
                weight,
                pair,
            }
        })
        .collect())
}

/// An L2-orthonormal basis of a space, expanded over sphere monomials.
///
/// Produced by [`orthonormal_basis`]; the coefficient vectors are real (the
/// Gram matrix is real symmetric) and orthonormalized in exact arithmetic,
/// with a single square root taken at the final conversion to `f64`.
#[derive(Clone, Debug)]
pub struct SphereBasis {
    space: SpaceId,
    monomials: Vec<MultiIndexPair>,
    coeffs: Vec<Vec<f64>>,
}

impl SphereBasis {
    /// The space spanned by the basis.
    pub fn space(&self) -> SpaceId {
        self.space
    }

    /// Number of basis functions (= dimension of the space).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Values of all basis functions at a point of the sphere.
    pub fn eval(&self, eta: &[Complex64]) -> Result<Vec<Complex64>> {
        if eta.len() != self.space.n as usize {
            return Err(CoreError::Domain(format!(
                "point has {} coordinates, space lives on C^{}",
                eta.len(),
                self.space.n
            )));
        }
        let values: Vec<Complex64> = self.monomials.iter().map(|m| m.eval(eta)).collect();
        Ok(self
            .coeffs
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&values)
                    .map(|(&c, &v)| v * c)
                    .sum::<Complex64>()
            })
            .collect())
    }
}

/// Builds an exact L2-orthonormal basis of the space.
///
/// Bihomogeneous spaces orthonormalize the full monomial basis; harmonic
/// spaces first carve out the orthogonal complement of the embedded
/// `(p-1, q-1)` space (multiplication by `|z|^2` is the identity on the
/// sphere) as an exact rational nullspace.  Ambient dimension is capped at
/// 64, which covers every space the flatness search accepts.
pub fn orthonormal_basis(space: SpaceId) -> Result<SphereBasis> {
    let ambient = dim_bihom(space.n, space.p, space.q);
    match ambient.to_u64() {
        Some(d) if d <= MAX_BASIS_DIM => {}
        _ => {
            return Err(CoreError::Unsupported(format!(
                "orthonormal basis construction is capped at ambient dimension \
                 {MAX_BASIS_DIM}, space {space} has {ambient}"
            )))
        }
    }
    let nn = space.n as usize;
    let mut monomials = Vec::new();
    for alpha in compositions(space.p, nn) {
        for beta in compositions(space.q, nn) {
            monomials.push(MultiIndexPair {
                alpha: alpha.clone(),
                beta,
            });
        }
    }
    let d = monomials.len();
    let index: HashMap<&MultiIndexPair, usize> =
        monomials.iter().zip(0..).collect();

    // Full Gram matrix of the monomial basis.
    let mut gram_rows = Vec::with_capacity(d);
    for i in 0..d {
        let mut row = Vec::with_capacity(d);
        for j in 0..d {
            let lhs: Vec<u32> = monomials[i]
                .alpha
                .iter()
                .zip(&monomials[j].beta)
                .map(|(&a, &b)| a + b)
                .collect();
            let rhs: Vec<u32> = monomials[i]
                .beta
                .iter()
                .zip(&monomials[j].alpha)
                .map(|(&a, &b)| a + b)
                .collect();
            row.push(if lhs == rhs {
                moment_of_matched(space.n, &lhs)
            } else {
                BigRational::zero()
            });
        }
        gram_rows.push(row);
    }
    let gram = RationalMatrix::from_rows(gram_rows)?;

    // Candidate spanning vectors in monomial coordinates.
    let candidates: Vec<Vec<BigRational>> = if space.kind == SpaceKind::Bihomogeneous
        || space.p == 0
        || space.q == 0
    {
        (0..d)
            .map(|i| {
                let mut v = vec![BigRational::zero(); d];
                v[i] = BigRational::one();
                v
            })
            .collect()
    } else {
        // Rows of B: the lower space embedded by multiplication with
        // |z_1|^2 + ... + |z_n|^2 (= 1 on the sphere).
        let mut b_rows = Vec::new();
        for alpha in compositions(space.p - 1, nn) {
            for beta in compositions(space.q - 1, nn) {
                let mut row = vec![BigRational::zero(); d];
                for l in 0..nn {
                    let mut a = alpha.clone();
                    let mut b = beta.clone();
                    a[l] += 1;
                    b[l] += 1;
                    let key = MultiIndexPair { alpha: a, beta: b };
                    row[index[&key]] += BigRational::one();
                }
                b_rows.push(row);
            }
        }
        // x is harmonic iff <x, embedded y> = 0 for every y iff (B G) x = 0.
        let mut m_rows = Vec::with_capacity(b_rows.len());
        for row in &b_rows {
            let mut out = vec![BigRational::zero(); d];
            for (j, out_j) in out.iter_mut().enumerate() {
                for (i, ri) in row.iter().enumerate() {
                    if !ri.is_zero() {
                        *out_j += ri * gram.get(i, j);
                    }
                }
            }
            m_rows.push(out);
        }
        RationalMatrix::from_rows(m_rows)?.nullspace()
    };

    // Gram-Schmidt under the moment inner product, exactly.  Cache G * u for
    // each accepted vector so projections cost O(d) instead of O(d^2).
    let mut basis_exact: Vec<Vec<BigRational>> = Vec::new();
    let mut gu: Vec<Vec<BigRational>> = Vec::new();
    let mut norms: Vec<BigRational> = Vec::new();
    for mut v in candidates {
        for ((u, w), nrm) in basis_exact.iter().zip(&gu).zip(&norms) {
            let proj: BigRational = v
                .iter()
                .zip(w)
                .map(|(vi, wi)| vi * wi)
                .sum::<BigRational>()
                / nrm;
            if proj.is_zero() {
                continue;
            }
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= &proj * ui;
            }
        }
        let w: Vec<BigRational> = (0..d)
            .map(|j| {
                v.iter()
                    .enumerate()
                    .filter(|(_, vi)| !vi.is_zero())
                    .map(|(i, vi)| vi * gram.get(i, j))
                    .sum()
            })
            .collect();
        let norm2: BigRational = v.iter().zip(&w).map(|(vi, wi)| vi * wi).sum();
        if norm2.is_zero() {
            continue; // linearly dependent candidate
        }
        debug_assert!(norm2.is_positive());
        basis_exact.push(v);
        gu.push(w);
        norms.push(norm2);
    }

    let expected = space.dim()?;
    if basis_exact.len() as u64 != expected {
        return Err(CoreError::Convergence(format!(
            "orthonormalization produced {} functions for {space} (dimension {expected})",
            basis_exact.len()
        )));
    }
    let coeffs = basis_exact
        .into_iter()
        .zip(&norms)
        .map(|(v, n2)| {
            let scale = 1.0 / n2.to_f64().unwrap_or(f64::NAN).sqrt();
            v.into_iter()
                .map(|c| c.to_f64().unwrap_or(f64::NAN) * scale)
                .collect()
        })
        .collect();
    Ok(SphereBasis {
        space,
        monomials,
        coeffs,
    })
}
