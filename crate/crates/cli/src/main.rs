//! `projcon` — projection constants of polynomial spaces on complex spheres.
//!
//! Subcommands:
//! * `compute`    — one constant for a single space,
//! * `table`      — a (p, q) grid as CSV/JSON/text,
//! * `asymptotic` — the normalized ratio λ / p^(n - 3/2) along a diagonal,
//! * `flatness`   — a certified near-flat function witnessing the norm floor,
//! * `verify`     — the library's self-check suite as a machine-readable report.
//!
//! Exit codes: 0 success, 1 verification/certification failure, 2 argument
//! error, 3 numerical failure.

mod output;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use output::{aligned, g17, json_num, json_str};
use projcon_core::projection::{
    asymptotic_constant, asymptotic_study, flatness_certificate, lambda, upper_bound,
};
use projcon_core::verify::run_verification;
use projcon_core::{CoreError, SpaceId, SpaceKind};
use rayon::prelude::*;
use std::process::ExitCode;

const DEFAULT_MAX_DEGREE: u32 = 10_000;

#[derive(Parser)]
#[command(
    name = "projcon",
    version,
    about = "Projection constants of harmonic and bihomogeneous spaces on complex spheres"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum KindArg {
    /// Bihomogeneous harmonic spaces H_{p,q}(S_n).
    Harmonic,
    /// Full bihomogeneous polynomial spaces P_{p,q}(S_n).
    Bihom,
}

impl KindArg {
    fn kind(self) -> SpaceKind {
        match self {
            KindArg::Harmonic => SpaceKind::Harmonic,
            KindArg::Bihom => SpaceKind::Bihomogeneous,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Text,
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected A:B, got {s:?}"))?;
    let lo: u32 = a
        .trim()
        .parse()
        .map_err(|_| format!("invalid range start {a:?}"))?;
    let hi: u32 = b
        .trim()
        .parse()
        .map_err(|_| format!("invalid range end {b:?}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}:{hi}"));
    }
    Ok((lo, hi))
}

#[derive(Subcommand)]
enum Command {
    /// Compute the projection constant of a single space.
    Compute {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Complex dimension of the ambient space C^n (sphere S_n), n >= 2.
        #[arg(long)]
        n: u32,
        /// Holomorphic degree.
        #[arg(long, default_value_t = 0)]
        p: u32,
        /// Antiholomorphic degree.
        #[arg(long, default_value_t = 0)]
        q: u32,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
        /// Largest degree accepted without error (guards against huge runs).
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: u32,
    },
    /// Tabulate constants over a (p, q) grid.
    Table {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: u32,
        /// Inclusive holomorphic-degree range A:B.
        #[arg(long, value_parser = parse_range, default_value = "0:3")]
        p_range: (u32, u32),
        /// Inclusive antiholomorphic-degree range A:B.
        #[arg(long, value_parser = parse_range, default_value = "0:3")]
        q_range: (u32, u32),
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: u32,
    },
    /// Study lambda / p^(n - 3/2) along the diagonal q = p + d.
    Asymptotic {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: u32,
        /// Diagonal offset: q = p + d.
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        d: i32,
        /// Inclusive p range A:B, sampled by doubling from A.
        #[arg(long, value_parser = parse_range, default_value = "100:1600")]
        p_range: (u32, u32),
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: u32,
    },
    /// Search for a unit-sup function whose L2 norm meets the lower bound
    /// sqrt(pi) / (2 lambda), and certify the result.
    Flatness {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        p: u32,
        #[arg(long, default_value_t = 0)]
        q: u32,
        /// Sphere samples used for the sup-norm search.
        #[arg(long, default_value_t = 20_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: u32,
    },
    /// Run the self-check suite and report every check.
    Verify {
        /// Skip the slow Monte Carlo and search-based checks.
        #[arg(long)]
        quick: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Monte Carlo sample count for the statistical checks.
        #[arg(long, default_value_t = 200_000)]
        samples: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
}

/// A failed run: the exit code plus a message for stderr.
struct Failure {
    code: u8,
    message: String,
}

fn arg_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn numerical_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 3,
        message: message.into(),
    }
}

fn check_failure(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

fn core_failure(err: CoreError) -> Failure {
    match err {
        CoreError::Domain(_) | CoreError::Unsupported(_) | CoreError::DegreeCap { .. } => {
            arg_error(err.to_string())
        }
        CoreError::Overflow(_) | CoreError::Convergence(_) => numerical_error(err.to_string()),
    }
}

fn enforce_cap(cap: u32, degrees: &[(&str, u32)]) -> Result<(), Failure> {
    for &(name, value) in degrees {
        if value > cap {
            return Err(arg_error(format!(
                "{name} = {value} exceeds the degree cap {cap}; raise --max-degree to allow it"
            )));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            if !failure.message.is_empty() {
                eprintln!("error: {}", failure.message);
            }
            ExitCode::from(failure.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Compute {
            kind,
            n,
            p,
            q,
            format,
            max_degree,
        } => cmd_compute(kind.kind(), n, p, q, format, max_degree),
        Command::Table {
            kind,
            n,
            p_range,
            q_range,
            format,
            max_degree,
        } => cmd_table(kind.kind(), n, p_range, q_range, format, max_degree),
        Command::Asymptotic {
            kind,
            n,
            d,
            p_range,
            format,
            max_degree,
        } => cmd_asymptotic(kind.kind(), n, d, p_range, format, max_degree),
        Command::Flatness {
            kind,
            n,
            p,
            q,
            samples,
            seed,
            format,
            max_degree,
        } => cmd_flatness(kind.kind(), n, p, q, samples, seed, format, max_degree),
        Command::Verify {
            quick,
            seed,
            samples,
            format,
        } => cmd_verify(quick, seed, samples, format),
    }
}

fn cmd_compute(
    kind: SpaceKind,
    n: u32,
    p: u32,
    q: u32,
    format: FormatArg,
    max_degree: u32,
) -> Result<(), Failure> {
    enforce_cap(max_degree, &[("p", p), ("q", q)])?;
    let space = SpaceId::new(kind, n, p, q).map_err(core_failure)?;
    let result = lambda(space).map_err(core_failure)?;
    if !result.value.is_finite() {
        return Err(numerical_error(format!(
            "lambda for {space} overflows the floating-point range"
        )));
    }
    match format {
        FormatArg::Text => {
            println!("n = {n}");
            println!("p = {p}");
            println!("q = {q}");
            println!("kind = {kind}");
            println!("lambda = {}", g17(result.value));
            println!("method = {}", result.method);
            println!("abs_error_estimate = {}", g17(result.abs_error_estimate));
        }
        FormatArg::Csv => {
            println!("n,p,q,kind,lambda,method,abs_error_estimate");
            println!(
                "{n},{p},{q},{kind},{},{},{}",
                g17(result.value),
                result.method,
                g17(result.abs_error_estimate)
            );
        }
        FormatArg::Json => {
            println!(
                "{{\"schema\":1,\"n\":{n},\"p\":{p},\"q\":{q},\"kind\":{},\"lambda\":{},\
                 \"method\":{},\"abs_error_estimate\":{}}}",
                json_str(&kind.to_string()),
                g17(result.value),
                json_str(&result.method.to_string()),
                json_num(result.abs_error_estimate)
            );
        }
    }
    Ok(())
}

/// One table cell; `None` marks a value that could not be computed.
struct TableRow {
    p: u32,
    q: u32,
    dim: Option<String>,
    lambda: Option<f64>,
    kadets_snobar: Option<f64>,
    upper: Option<f64>,
}

fn cmd_table(
    kind: SpaceKind,
    n: u32,
    p_range: (u32, u32),
    q_range: (u32, u32),
    format: FormatArg,
    max_degree: u32,
) -> Result<(), Failure> {
    enforce_cap(
        max_degree,
        &[("p range end", p_range.1), ("q range end", q_range.1)],
    )?;
    // Surface domain errors (for example n < 2) before spawning the grid.
    SpaceId::new(kind, n, p_range.0, q_range.0).map_err(core_failure)?;

    let cells: Vec<(u32, u32)> = (p_range.0..=p_range.1)
        .flat_map(|p| (q_range.0..=q_range.1).map(move |q| (p, q)))
        .collect();
    let rows: Vec<TableRow> = cells
        .par_iter()
        .map(|&(p, q)| {
            let space = match SpaceId::new(kind, n, p, q) {
                Ok(space) => space,
                Err(_) => {
                    return TableRow {
                        p,
                        q,
                        dim: None,
                        lambda: None,
                        kadets_snobar: None,
                        upper: None,
                    }
                }
            };
            let finite = |x: f64| x.is_finite().then_some(x);
            // Exact-integer square root when the dimension fits; the
            // log-space fallback covers dimensions beyond u64.
            let ks = match space.dim() {
                Ok(d) => (d as f64).sqrt(),
                Err(_) => (0.5 * space.ln_dim()).exp(),
            };
            TableRow {
                p,
                q,
                dim: Some(space.dim_exact().to_string()),
                lambda: lambda(space).ok().and_then(|r| finite(r.value)),
                kadets_snobar: finite(ks),
                upper: upper_bound(kind, n, p, q).ok().and_then(finite),
            }
        })
        .collect();

    let float_cell = |x: Option<f64>| x.map_or_else(|| "NA".to_string(), g17);
    let int_cell = |d: &Option<String>| d.clone().unwrap_or_else(|| "NA".to_string());
    match format {
        FormatArg::Csv => {
            println!("n,p,q,kind,dim,lambda,kadets_snobar_bound,upper_bound");
            for row in &rows {
                println!(
                    "{n},{},{},{kind},{},{},{},{}",
                    row.p,
                    row.q,
                    int_cell(&row.dim),
                    float_cell(row.lambda),
                    float_cell(row.kadets_snobar),
                    float_cell(row.upper)
                );
            }
        }
        FormatArg::Json => {
            let body: Vec<String> = rows
                .iter()
                .map(|row| {
                    format!(
                        "{{\"p\":{},\"q\":{},\"dim\":{},\"lambda\":{},\
                         \"kadets_snobar_bound\":{},\"upper_bound\":{}}}",
                        row.p,
                        row.q,
                        row.dim.as_deref().unwrap_or("null"),
                        row.lambda.map_or_else(|| "null".into(), g17),
                        row.kadets_snobar.map_or_else(|| "null".into(), g17),
                        row.upper.map_or_else(|| "null".into(), g17)
                    )
                })
                .collect();
            println!(
                "{{\"schema\":1,\"kind\":{},\"n\":{n},\"rows\":[{}]}}",
                json_str(&kind.to_string()),
                body.join(",")
            );
        }
        FormatArg::Text => {
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|row| {
                    vec![
                        row.p.to_string(),
                        row.q.to_string(),
                        int_cell(&row.dim),
                        float_cell(row.lambda),
                        float_cell(row.kadets_snobar),
                        float_cell(row.upper),
                    ]
                })
                .collect();
            print!(
                "{}",
                aligned(
                    &["p", "q", "dim", "lambda", "kadets_snobar_bound", "upper_bound"],
                    &body
                )
            );
        }
    }

    let failed = rows
        .iter()
        .filter(|r| {
            r.dim.is_none() || r.lambda.is_none() || r.kadets_snobar.is_none() || r.upper.is_none()
        })
        .count();
    if failed > 0 {
        return Err(numerical_error(format!(
            "{failed} of {} cells could not be computed and are marked NA",
            rows.len()
        )));
    }
    Ok(())
}

fn cmd_asymptotic(
    kind: SpaceKind,
    n: u32,
    d: i32,
    p_range: (u32, u32),
    format: FormatArg,
    max_degree: u32,
) -> Result<(), Failure> {
    let (lo, hi) = p_range;
    if lo == 0 {
        return Err(arg_error("the p range must start at 1 or higher"));
    }
    let top_q = i64::from(hi) + i64::from(d);
    if top_q > i64::from(max_degree) {
        return Err(arg_error(format!(
            "q = p + d reaches {top_q}, above the degree cap {max_degree}"
        )));
    }
    enforce_cap(max_degree, &[("p range end", hi)])?;

    let mut p_values = Vec::new();
    let mut p = lo;
    while p <= hi {
        p_values.push(p);
        match p.checked_mul(2) {
            Some(next) => p = next,
            None => break,
        }
    }
    let limit = asymptotic_constant(kind, n).map_err(core_failure)?;
    let rows = asymptotic_study(kind, n, d, &p_values).map_err(core_failure)?;

    match format {
        FormatArg::Csv => {
            println!("p,lambda,ratio,limit");
            for row in &rows {
                println!(
                    "{},{},{},{}",
                    row.p,
                    g17(row.lambda),
                    g17(row.ratio),
                    g17(limit)
                );
            }
        }
        FormatArg::Json => {
            let body: Vec<String> = rows
                .iter()
                .map(|row| {
                    format!(
                        "{{\"p\":{},\"lambda\":{},\"ratio\":{}}}",
                        row.p,
                        g17(row.lambda),
                        g17(row.ratio)
                    )
                })
                .collect();
            println!(
                "{{\"schema\":1,\"kind\":{},\"n\":{n},\"d\":{d},\"limit\":{},\"rows\":[{}]}}",
                json_str(&kind.to_string()),
                g17(limit),
                body.join(",")
            );
        }
        FormatArg::Text => {
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|row| vec![row.p.to_string(), g17(row.lambda), g17(row.ratio)])
                .collect();
            print!("{}", aligned(&["p", "lambda", "ratio"], &body));
            println!("limit = {}", g17(limit));
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_flatness(
    kind: SpaceKind,
    n: u32,
    p: u32,
    q: u32,
    samples: u64,
    seed: u64,
    format: FormatArg,
    max_degree: u32,
) -> Result<(), Failure> {
    enforce_cap(max_degree, &[("p", p), ("q", q)])?;
    let space = SpaceId::new(kind, n, p, q).map_err(core_failure)?;
    let samples = usize::try_from(samples).map_err(|_| arg_error("--samples is too large"))?;
    let cert = flatness_certificate(space, samples, 4, seed).map_err(core_failure)?;
    let dim = space.dim().map_err(core_failure)?;
    let lam = lambda(space).map_err(core_failure)?.value;

    match format {
        FormatArg::Text => {
            println!("space = {space}");
            println!("dim = {dim}");
            println!("lambda = {}", g17(lam));
            println!("bound = {}", g17(cert.bound));
            println!("l2_norm = {}", g17(cert.l2_norm));
            println!("sup_norm = {}", g17(cert.sup_norm));
            println!("max_ratio_sup_to_l2 = {}", g17(cert.max_ratio_sup_to_l2));
            println!("certified = {}", cert.certified);
            for (j, c) in cert.coefficients.iter().enumerate() {
                println!("coefficient[{j}] = {} {}", g17(c.re), g17(c.im));
            }
        }
        FormatArg::Csv => {
            println!("n,p,q,kind,dim,lambda,bound,l2_norm,sup_norm,certified");
            println!(
                "{n},{p},{q},{kind},{dim},{},{},{},{},{}",
                g17(lam),
                g17(cert.bound),
                g17(cert.l2_norm),
                g17(cert.sup_norm),
                cert.certified
            );
        }
        FormatArg::Json => {
            let coeffs: Vec<String> = cert
                .coefficients
                .iter()
                .map(|c| format!("[{},{}]", g17(c.re), g17(c.im)))
                .collect();
            println!(
                "{{\"schema\":1,\"kind\":{},\"n\":{n},\"p\":{p},\"q\":{q},\"dim\":{dim},\
                 \"lambda\":{},\"bound\":{},\"l2_norm\":{},\"sup_norm\":{},\
                 \"max_ratio_sup_to_l2\":{},\"certified\":{},\"coefficients\":[{}]}}",
                json_str(&kind.to_string()),
                g17(lam),
                g17(cert.bound),
                g17(cert.l2_norm),
                g17(cert.sup_norm),
                g17(cert.max_ratio_sup_to_l2),
                cert.certified,
                coeffs.join(",")
            );
        }
    }
    if !cert.certified {
        return Err(check_failure(format!(
            "flatness search for {space} did not reach the L2 bound {}",
            g17(cert.bound)
        )));
    }
    Ok(())
}

fn cmd_verify(quick: bool, seed: u64, samples: u64, format: FormatArg) -> Result<(), Failure> {
    let report = run_verification(quick, seed, samples);
    match format {
        FormatArg::Json => {
            let body: Vec<String> = report
                .checks
                .iter()
                .map(|check| {
                    format!(
                        "{{\"name\":{},\"status\":{},\"measured\":{},\"expected\":{},\
                         \"tolerance\":{},\"detail\":{}}}",
                        json_str(check.name),
                        json_str(&check.status.to_string()),
                        json_num(check.measured),
                        json_num(check.expected),
                        json_num(check.tolerance),
                        json_str(&check.detail)
                    )
                })
                .collect();
            println!(
                "{{\"schema\":1,\"quick\":{quick},\"seed\":{seed},\"samples\":{samples},\
                 \"overall\":{},\"checks\":[{}]}}",
                json_str(if report.passed() { "pass" } else { "fail" }),
                body.join(",")
            );
        }
        FormatArg::Text => {
            for check in &report.checks {
                println!(
                    "{}: {} (measured = {}, expected = {}, tolerance = {})",
                    check.name,
                    check.status,
                    g17(check.measured),
                    g17(check.expected),
                    g17(check.tolerance)
                );
            }
            println!("overall: {}", if report.passed() { "pass" } else { "fail" });
        }
        FormatArg::Csv => {
            println!("name,status,measured,expected,tolerance");
            for check in &report.checks {
                println!(
                    "{},{},{},{},{}",
                    check.name,
                    check.status,
                    g17(check.measured),
                    g17(check.expected),
                    g17(check.tolerance)
                );
            }
        }
    }
    if report.passed() {
        Ok(())
    } else {
        let names: Vec<&str> = report.failures().iter().map(|c| c.name).collect();
        Err(check_failure(format!(
            "verification failed: {}",
            names.join(", ")
        )))
    }
}
