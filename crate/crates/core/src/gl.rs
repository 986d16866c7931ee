//! Internal fixed-order Gauss-Legendre rules and an adaptive driver.
//!
//! The integrators in [`crate::jacobi`] and [`crate::quad`] share this module.
//! Each interval is estimated with the order-20 and order-40 rules; the
//! difference of the two serves as the local error estimate.  Intervals whose
//! estimate exceeds the local budget are bisected recursively up to
//! [`MAX_DEPTH`] levels.  Smooth integrands never trigger a split, while
//! integrands with an `|...|`-type kink or a sharply peaked weight are refined
//! only where needed.

/// Maximum bisection depth of the adaptive driver.
///
/// Depth 40 resolves features down to widths of order `2^-40` of the original
/// interval, enough for weight functions like `t^b` with `b ~ 5e3` whose mass
/// concentrates in a region of width `1/b`.
pub(crate) const MAX_DEPTH: u32 = 40;

/// Relative rounding-noise floor of the paired Gauss rules.
///
/// A 20- or 40-term weighted sum carries accumulated rounding of a few tens
/// of ulps, so the `|G40 - G20|` estimate of an interval cannot drop
/// meaningfully below this multiple of the magnitude of the two sums;
/// intervals at that level are accepted as converged, since further
/// subdivision only redistributes rounding error.
const NOISE_REL: f64 = 2e-14;

/// Nodes of the 20-point Gauss-Legendre rule on `[-1, 1]`.
pub(crate) const GL20_NODES: [f64; 20] = [
    -0.9931285991850949,
    -0.9639719272779138,
    -0.9122344282513258,
    -0.8391169718222188,
    -0.7463319064601508,
    -0.636053680726515,
    -0.5108670019508271,
    -0.37370608871541955,
    -0.2277858511416451,
    -0.07652652113349734,
    0.07652652113349734,
    0.2277858511416451,
    0.37370608871541955,
    0.5108670019508271,
    0.636053680726515,
    0.7463319064601508,
    0.8391169718222188,
    0.9122344282513258,
    0.9639719272779138,
    0.9931285991850949,
];

/// Weights of the 20-point Gauss-Legendre rule on `[-1, 1]`.
pub(crate) const GL20_WEIGHTS: [f64; 20] = [
    0.017614007139153273,
    0.04060142980038622,
    0.06267204833410944,
    0.08327674157670467,
    0.10193011981724026,
    0.11819453196151825,
    0.13168863844917653,
    0.14209610931838187,
    0.14917298647260366,
    0.15275338713072578,
    0.15275338713072578,
    0.14917298647260366,
    0.14209610931838187,
    0.13168863844917653,
    0.11819453196151825,
    0.10193011981724026,
    0.08327674157670467,
    0.06267204833410944,
    0.04060142980038622,
    0.017614007139153273,
];

/// Nodes of the 40-point Gauss-Legendre rule on `[-1, 1]`.
pub(crate) const GL40_NODES: [f64; 40] = [
    -0.9982377097105593,
    -0.9907262386994571,
    -0.9772599499837743,
    -0.9579168192137917,
    -0.9328128082786765,
    -0.9020988069688743,
    -0.8659595032122596,
    -0.8246122308333117,
    -0.7783056514265194,
    -0.7273182551899271,
    -0.6719566846141796,
    -0.6125538896679803,
    -0.5494671250951282,
    -0.4830758016861787,
    -0.413779204371605,
    -0.3419940908257585,
    -0.2681521850072537,
    -0.1926975807013711,
    -0.11608407067525521,
    -0.038772417506050816,
    0.038772417506050816,
    0.11608407067525521,
    0.1926975807013711,
    0.2681521850072537,
    0.3419940908257585,
    0.413779204371605,
    0.4830758016861787,
    0.5494671250951282,
    0.6125538896679803,
    0.6719566846141796,
    0.7273182551899271,
    0.7783056514265194,
    0.8246122308333117,
    0.8659595032122596,
    0.9020988069688743,
    0.9328128082786765,
    0.9579168192137917,
    0.9772599499837743,
    0.9907262386994571,
    0.9982377097105593,
];

/// Weights of the 40-point Gauss-Legendre rule on `[-1, 1]`.
pub(crate) const GL40_WEIGHTS: [f64; 40] = [
    0.004521277098530018,
    0.010498284531151609,
    0.016421058381907345,
    0.022245849194166653,
    0.027937006980023528,
    0.03346019528254768,
    0.03878216797447238,
    0.043870908185673324,
    0.048695807635072405,
    0.053227846983937115,
    0.05743976909939189,
    0.06130624249292932,
    0.06480401345660149,
    0.0679120458152344,
    0.07061164739128717,
    0.07288658239580448,
    0.07472316905796868,
    0.07611036190062674,
    0.07703981816424839,
    0.07750594797842533,
    0.07750594797842533,
    0.07703981816424839,
    0.07611036190062674,
    0.07472316905796868,
    0.07288658239580448,
    0.07061164739128717,
    0.0679120458152344,
    0.06480401345660149,
    0.06130624249292932,
    0.05743976909939189,
    0.053227846983937115,
    0.048695807635072405,
    0.043870908185673324,
    0.03878216797447238,
    0.03346019528254768,
    0.027937006980023528,
    0.022245849194166653,
    0.016421058381907345,
    0.010498284531151609,
    0.004521277098530018,
];

/// Outcome of integrating one (possibly subdivided) interval.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct SegmentQuad {
    /// Integral estimate (order-40 value summed over accepted leaves).
    pub value: f64,
    /// Sum of the local `|G40 - G20|` error estimates.
    pub abs_error: f64,
    /// Number of integrand evaluations performed.
    pub evaluations: u64,
    /// False if any leaf hit [`MAX_DEPTH`] while still above its budget.
    pub converged: bool,
}

/// Order-40 estimate of `int_lo^hi f`.
pub(crate) fn gauss40<F: FnMut(f64) -> f64>(f: &mut F, lo: f64, hi: f64) -> f64 {
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let mut acc = 0.0;
    for (x, w) in GL40_NODES.iter().zip(GL40_WEIGHTS.iter()) {
        acc += w * f(mid + half * x);
    }
    acc * half
}

/// Order-20 and order-40 estimates of `int_lo^hi f` in one pass.
fn gauss_pair<F: FnMut(f64) -> f64>(f: &mut F, lo: f64, hi: f64) -> (f64, f64) {
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let mut g20 = 0.0;
    for (x, w) in GL20_NODES.iter().zip(GL20_WEIGHTS.iter()) {
        g20 += w * f(mid + half * x);
    }
    let mut g40 = 0.0;
    for (x, w) in GL40_NODES.iter().zip(GL40_WEIGHTS.iter()) {
        g40 += w * f(mid + half * x);
    }
    (g20 * half, g40 * half)
}

/// One interval of the worst-first refinement queue, ordered by local error.
struct Leaf {
    err: f64,
    lo: f64,
    hi: f64,
    g40: f64,
    depth: u32,
    splittable: bool,
}

impl Leaf {
    fn new<F: FnMut(f64) -> f64>(f: &mut F, lo: f64, hi: f64, depth: u32) -> Leaf {
        let (g20, g40) = gauss_pair(f, lo, hi);
        // A |G40 - G20| below the rule's own rounding noise, a depth-capped
        // interval, or one too narrow to bisect in floating point cannot be
        // improved by splitting.
        let err = (g40 - g20).abs();
        let mid = 0.5 * (lo + hi);
        let splittable = err > NOISE_REL * (g20.abs() + g40.abs())
            && depth < MAX_DEPTH
            && lo < mid
            && mid < hi
            && err.is_finite();
        Leaf {
            err,
            lo,
            hi,
            g40,
            depth,
            splittable,
        }
    }

    /// Sort key: splittable leaves first, then by descending error, with the
    /// left endpoint breaking exact ties deterministically.
    fn key(&self) -> (bool, f64, f64) {
        (self.splittable, self.err, -self.lo)
    }
}

impl PartialEq for Leaf {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}
impl Eq for Leaf {}
impl PartialOrd for Leaf {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Leaf {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let (s, e, l) = self.key();
        let (os, oe, ol) = other.key();
        s.cmp(&os)
            .then(e.total_cmp(&oe))
            .then(l.total_cmp(&ol))
    }
}

/// Hard cap on refinement steps; each step evaluates two subintervals.
const MAX_SPLITS: u64 = 10_000;

/// Adaptively integrates `f` over `[lo, hi]` to an absolute error budget.
///
/// Worst-first global refinement: all current subintervals are kept in a
/// priority queue and the one with the largest `|G40 - G20|` estimate is
/// bisected until the estimates sum to at most `abs_tol`.  The result is
/// flagged unconverged when the budget is still unmet once every remaining
/// interval is at the rounding-noise floor, at maximal depth, or the split
/// cap is reached.
pub(crate) fn integrate_adaptive<F: FnMut(f64) -> f64>(
    f: &mut F,
    lo: f64,
    hi: f64,
    abs_tol: f64,
) -> SegmentQuad {
    let mut out = SegmentQuad {
        converged: true,
        ..SegmentQuad::default()
    };
    if lo >= hi {
        return out;
    }
    let abs_tol = abs_tol.max(f64::MIN_POSITIVE);
    let mut heap = std::collections::BinaryHeap::new();
    heap.push(Leaf::new(f, lo, hi, 0));
    out.evaluations += 60;
    let mut err_sum = heap.peek().map_or(0.0, |l| l.err);
    let mut splits = 0u64;
    while err_sum > abs_tol {
        let worst = match heap.peek() {
            Some(l) if l.splittable && splits < MAX_SPLITS => heap.pop().expect("peeked"),
            _ => {
                out.converged = false;
                break;
            }
        };
        splits += 1;
        let mid = 0.5 * (worst.lo + worst.hi);
        let left = Leaf::new(f, worst.lo, mid, worst.depth + 1);
        let right = Leaf::new(f, mid, worst.hi, worst.depth + 1);
        out.evaluations += 120;
        err_sum += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
    }
    for leaf in heap {
        out.value += leaf.g40;
        out.abs_error += leaf.err;
    }
    if !out.value.is_finite() || !out.abs_error.is_finite() {
        out.converged = false;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn polynomials_integrate_exactly() {
        // Order 40 is exact through degree 79.
        let mut f = |x: f64| x.powi(12) - 3.0 * x.powi(5) + 1.0;
        let got = gauss40(&mut f, -1.0, 1.0);
        assert_relative_eq!(got, 2.0 / 13.0 + 2.0, max_relative = 1e-14);
    }

    #[test]
    fn adaptive_resolves_kink() {
        // int_{-1}^{1} |x| dx = 1; the kink forces subdivision.
        let mut f = |x: f64| x.abs();
        let r = integrate_adaptive(&mut f, -1.0, 1.0, 1e-12);
        assert!(r.converged);
        assert_relative_eq!(r.value, 1.0, max_relative = 1e-11);
    }

    #[test]
    fn adaptive_resolves_peaked_weight() {
        // int_0^1 t^b dt = 1/(b+1) with mass concentrated near t = 1.
        let b = 4999.0;
        let mut f = |t: f64| t.powf(b);
        let r = integrate_adaptive(&mut f, 0.0, 1.0, 1e-15);
        assert!(r.converged);
        assert_relative_eq!(r.value, 1.0 / (b + 1.0), max_relative = 1e-11);
    }

    #[test]
    fn empty_interval_is_zero() {
        let mut f = |_| 1.0;
        let r = integrate_adaptive(&mut f, 0.5, 0.5, 1e-12);
        assert_eq!(r.value, 0.0);
        assert_eq!(r.evaluations, 0);
    }
}
