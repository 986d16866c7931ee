//! Acceptance suite: one test per acceptance criterion, each printing a
//! single `criterion N (...): PASS/FAIL [elapsed]` line (visible with
//! `cargo test --test acceptance -- --nocapture`).
//!
//! Tolerances are pinned in the constants below.  A criterion fails honestly
//! — with every violated comparison listed — rather than being weakened.

use projcon_core::projection::{
    asymptotic_constant, asymptotic_study, flatness_certificate, lambda, lambda_bihom,
    lambda_closed, lambda_harmonic, lambda_kernel_quadrature, lambda_monte_carlo, q1_band_check,
    upper_bound, ClosedForm,
};
use projcon_core::quad::{disk_reduce_radial, McConfig};
use projcon_core::verify::{run_verification, CheckStatus};
use projcon_core::{Complex64, GramKernel, SpaceId, SpaceKind};
use std::time::Instant;

const REL_CLOSED_FORM: f64 = 1e-9;
const ABS_LIMIT_10K: f64 = 1e-3;
const ASYMPTOTIC_MARGINS: [(u32, f64); 4] =
    [(100, 0.10), (400, 0.05), (1600, 0.025), (6400, 0.015)];
const REL_ORACLE_PAIR: f64 = 1e-7;
const MC_SIGMA: f64 = 4.0;
const MC_SAMPLES: u64 = 1_000_000;
const ABS_KERNEL_POINTWISE: f64 = 1e-10;
const REL_KERNEL_NORM: f64 = 1e-8;
const BOUND_MARGIN: f64 = -1e-8;
const FLATNESS_SAMPLES: usize = 100_000;

/// Collects failures for one criterion and prints its summary line.
struct Criterion {
    id: u32,
    name: &'static str,
    budget_secs: f64,
    started: Instant,
    failures: Vec<String>,
}

impl Criterion {
    fn start(id: u32, name: &'static str, budget_secs: f64) -> Self {
        Criterion {
            id,
            name,
            budget_secs,
            started: Instant::now(),
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(msg());
        }
    }

    fn finish(mut self) {
        let elapsed = self.started.elapsed().as_secs_f64();
        if elapsed > self.budget_secs {
            self.failures.push(format!(
                "runtime {elapsed:.1} s exceeded the {:.0} s budget",
                self.budget_secs
            ));
        }
        let verdict = if self.failures.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        println!(
            "criterion {} ({}): {verdict} [{elapsed:.2} s]",
            self.id, self.name
        );
        assert!(
            self.failures.is_empty(),
            "criterion {} ({}) failed:\n  {}",
            self.id,
            self.name,
            self.failures.join("\n  ")
        );
    }
}

fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(f64::MIN_POSITIVE)
}

#[test]
fn criterion_1_exact_one_one_values() {
    let mut c = Criterion::start(1, "exact (1,1) values for n = 2..8", 1.0);
    for n in 2..=8u32 {
        let nf = f64::from(n);
        let want_h = 2.0 * (nf + 1.0) * (1.0 - 1.0 / nf).powf(nf);
        let want_b = 2.0 * (nf + 1.0) * (1.0 - 1.0 / (nf + 1.0)).powf(nf) - 1.0;
        let got_h = lambda_harmonic(n, 1, 1).unwrap().value;
        let got_b = lambda_bihom(n, 1, 1).unwrap().value;
        c.check(rel_err(got_h, want_h) <= REL_CLOSED_FORM, || {
            format!("harmonic n={n}: {got_h} vs {want_h}")
        });
        c.check(rel_err(got_b, want_b) <= REL_CLOSED_FORM, || {
            format!("bihom n={n}: {got_b} vs {want_b}")
        });
    }
    c.finish();
}

#[test]
fn criterion_2_homogeneous_line() {
    let mut c = Criterion::start(2, "homogeneous-line closed form, n <= 5, p <= 50", 5.0);
    for n in 2..=5u32 {
        for p in 0..=50u32 {
            let want = lambda_closed(ClosedForm::Homogeneous { n, p }).unwrap();
            let got = lambda_harmonic(n, p, 0).unwrap().value;
            c.check(rel_err(got, want) <= REL_CLOSED_FORM, || {
                format!("n={n} p={p}: {got} vs {want}")
            });
        }
    }
    let spot1 = lambda_harmonic(2, 1, 0).unwrap().value;
    let spot2 = lambda_harmonic(2, 2, 0).unwrap().value;
    c.check(rel_err(spot1, 4.0 / 3.0) <= REL_CLOSED_FORM, || {
        format!("spot (2,1): {spot1} vs 4/3")
    });
    c.check(rel_err(spot2, 1.5) <= REL_CLOSED_FORM, || {
        format!("spot (2,2): {spot2} vs 3/2")
    });
    c.finish();
}

#[test]
fn criterion_3_q1_closed_forms_and_limits() {
    let mut c = Criterion::start(3, "(p,1) closed forms on S_2 and their limits", 30.0);
    for p in 2..=200u32 {
        let want_h = lambda_closed(ClosedForm::HarmonicP1Dim2 { p }).unwrap();
        let want_b = lambda_closed(ClosedForm::BihomP1Dim2 { p }).unwrap();
        let got_h = lambda_harmonic(2, p, 1).unwrap().value;
        let got_b = lambda_bihom(2, p, 1).unwrap().value;
        c.check(rel_err(got_h, want_h) <= REL_CLOSED_FORM, || {
            format!("harmonic p={p}: {got_h} vs {want_h}")
        });
        c.check(rel_err(got_b, want_b) <= REL_CLOSED_FORM, || {
            format!("bihom p={p}: {got_b} vs {want_b}")
        });
    }
    let limit_h = 8.0 / std::f64::consts::E.sqrt() - 2.0;
    let limit_b = 8.0 / std::f64::consts::E;
    let at_10k_h = lambda_harmonic(2, 10_000, 1).unwrap().value;
    let at_10k_b = lambda_bihom(2, 10_000, 1).unwrap().value;
    c.check((at_10k_h - limit_h).abs() <= ABS_LIMIT_10K, || {
        format!("harmonic p=1e4: {at_10k_h} vs limit {limit_h}")
    });
    c.check((at_10k_b - limit_b).abs() <= ABS_LIMIT_10K, || {
        format!("bihom p=1e4: {at_10k_b} vs limit {limit_b}")
    });
    c.finish();
}

#[test]
fn criterion_4_asymptotic_constants() {
    let mut c = Criterion::start(4, "diagonal asymptotics at p up to 6400", 600.0);
    let p_values: Vec<u32> = ASYMPTOTIC_MARGINS.iter().map(|&(p, _)| p).collect();
    let mut bihom_top_ratio = std::collections::HashMap::new();
    for kind in [SpaceKind::Harmonic, SpaceKind::Bihomogeneous] {
        for n in [2u32, 3] {
            let limit = asymptotic_constant(kind, n).unwrap();
            for d in [0i32, 3] {
                let rows = asymptotic_study(kind, n, d, &p_values).unwrap();
                for (row, &(p, margin)) in rows.iter().zip(ASYMPTOTIC_MARGINS.iter()) {
                    c.check(rel_err(row.ratio, limit) <= margin, || {
                        format!(
                            "{kind} n={n} d={d} p={p}: ratio {} vs limit {limit} \
                             (margin {margin})",
                            row.ratio
                        )
                    });
                }
                if kind == SpaceKind::Bihomogeneous {
                    bihom_top_ratio.insert((n, d), rows.last().unwrap().ratio);
                }
            }
        }
    }
    // The bihomogeneous limit does not depend on the bidegree offset.
    for n in [2u32, 3] {
        let limit = asymptotic_constant(SpaceKind::Bihomogeneous, n).unwrap();
        let r0 = bihom_top_ratio[&(n, 0)];
        let r3 = bihom_top_ratio[&(n, 3)];
        c.check((r0 - r3).abs() <= 0.015 * limit, || {
            format!("bihom n={n}: d=0 ratio {r0} vs d=3 ratio {r3}")
        });
    }
    c.finish();
}

fn small_grid() -> Vec<SpaceId> {
    let mut spaces = Vec::new();
    for kind in [SpaceKind::Harmonic, SpaceKind::Bihomogeneous] {
        for n in 2..=3u32 {
            for p in 0..=3u32 {
                for q in 0..=3u32 {
                    spaces.push(SpaceId::new(kind, n, p, q).unwrap());
                }
            }
        }
    }
    spaces
}

#[test]
fn criterion_5_oracle_triangle() {
    let mut c = Criterion::start(5, "three-way oracle agreement on the small grid", 300.0);
    let cfg = McConfig {
        samples: MC_SAMPLES,
        seed: 424_242,
    };
    for s in small_grid() {
        let direct = lambda(s).unwrap().value;
        let disk = lambda_kernel_quadrature(s).unwrap();
        c.check(disk.reliable, || format!("{s}: disk quadrature unreliable"));
        c.check(rel_err(disk.value, direct) <= REL_ORACLE_PAIR, || {
            format!("{s}: disk {} vs formula {direct}", disk.value)
        });
        let mc = lambda_monte_carlo(s, &cfg).unwrap();
        // Statistical window plus a small deterministic allowance for the
        // exact spaces where the sample variance is zero.
        let window = MC_SIGMA * mc.std_error + 1e-9 * direct.abs();
        c.check((mc.mean - direct).abs() <= window, || {
            format!(
                "{s}: MC {} +- {} vs formula {direct}",
                mc.mean, mc.std_error
            )
        });
    }
    c.finish();
}

#[test]
fn criterion_6_gram_kernel_validation() {
    let mut c = Criterion::start(6, "exact Gram kernel vs analytic kernel", 120.0);
    // 15 deterministic points spread over the closed unit disk.
    let points: Vec<Complex64> = (1..=15)
        .map(|j| {
            let r = f64::from(j) / 16.0;
            let theta = 2.0 * std::f64::consts::PI * f64::from(j) / 15.0;
            Complex64::from_polar(r, theta)
        })
        .collect();
    for s in small_grid() {
        let gram = GramKernel::new(s).unwrap();
        let analytic = s.kernel().unwrap();
        for &w in &points {
            let diff = (gram.eval(w) - analytic.eval(w)).norm();
            c.check(diff <= ABS_KERNEL_POINTWISE, || {
                format!("{s} at {w}: |gram - analytic| = {diff:.3e}")
            });
        }
        // Reproducing-kernel normalization: the sphere integral of |k|^2
        // equals k(e1, e1) = dim.
        let dim = s.dim().unwrap() as f64;
        let norm = disk_reduce_radial(s.n, |r| {
            analytic.eval(Complex64::new(r, 0.0)).norm_sqr()
        })
        .unwrap();
        c.check(norm.reliable, || format!("{s}: norm quadrature unreliable"));
        c.check(rel_err(norm.value, dim) <= REL_KERNEL_NORM, || {
            format!("{s}: int |k|^2 = {} vs dim {dim}", norm.value)
        });
    }
    c.finish();
}

#[test]
fn criterion_7_bound_suite() {
    let mut c = Criterion::start(7, "Kadets-Snobar and Gamma-ratio bounds", 120.0);
    for kind in [SpaceKind::Harmonic, SpaceKind::Bihomogeneous] {
        for n in 2..=4u32 {
            for p in 0..=8u32 {
                for q in 0..=8u32 {
                    let s = SpaceId::new(kind, n, p, q).unwrap();
                    let v = lambda(s).unwrap().value;
                    let ks = (s.dim().unwrap() as f64).sqrt();
                    let ub = upper_bound(kind, n, p, q).unwrap();
                    c.check(ks - v >= BOUND_MARGIN, || {
                        format!("{s}: lambda {v} above sqrt(dim) {ks}")
                    });
                    c.check(ub - v >= BOUND_MARGIN, || {
                        format!("{s}: lambda {v} above upper bound {ub}")
                    });
                }
            }
        }
        for n in 2..=4u32 {
            for check in q1_band_check(kind, n, &[1000]).unwrap() {
                c.check(check.inside, || {
                    format!(
                        "{kind} n={n} p=1000: {} outside [{}, {}]",
                        check.value, check.lower, check.upper
                    )
                });
            }
        }
    }
    c.finish();
}

#[test]
fn criterion_8_flatness_certificates() {
    let mut c = Criterion::start(8, "flat-function certificates", 120.0);
    let targets = [
        SpaceId::new(SpaceKind::Harmonic, 2, 1, 0).unwrap(),
        SpaceId::new(SpaceKind::Harmonic, 2, 1, 1).unwrap(),
        SpaceId::new(SpaceKind::Bihomogeneous, 2, 1, 1).unwrap(),
    ];
    for s in targets {
        let cert = flatness_certificate(s, FLATNESS_SAMPLES, 6, 2_024).unwrap();
        c.check(cert.sup_norm == 1.0, || {
            format!("{s}: sup norm {} after scaling", cert.sup_norm)
        });
        c.check(cert.certified && cert.l2_norm >= cert.bound, || {
            format!("{s}: l2 {} below bound {}", cert.l2_norm, cert.bound)
        });
        // Every function tested during the search satisfied the dimension
        // inequality sup <= sqrt(dim) * l2.
        let root_dim = (s.dim().unwrap() as f64).sqrt();
        c.check(cert.max_ratio_sup_to_l2 <= root_dim * (1.0 + 1e-6), || {
            format!(
                "{s}: observed sup/l2 ratio {} above sqrt(dim) {root_dim}",
                cert.max_ratio_sup_to_l2
            )
        });
    }
    c.finish();
}

#[test]
fn criterion_9_property_suite() {
    let mut c = Criterion::start(9, "special-function property suite", 60.0);
    let report = run_verification(false, 20_240_823, 200_000);
    for name in [
        "jacobi_orthogonality",
        "jacobi_endpoint_values",
        "jacobi_reflection",
        "jacobi_recurrence_vs_exact",
        "jacobi_index_raising_sum",
    ] {
        let found = report.checks.iter().find(|chk| chk.name == name);
        c.check(
            found.map_or(false, |chk| chk.status == CheckStatus::Pass),
            || format!("property check {name} missing or failing"),
        );
    }
    c.check(report.passed(), || {
        format!(
            "verification failures: {:?}",
            report
                .failures()
                .iter()
                .map(|chk| (chk.name, chk.measured, chk.expected, chk.tolerance))
                .collect::<Vec<_>>()
        )
    });
    c.finish();
}
