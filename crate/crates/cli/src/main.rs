//! Command-line driver: dimension tables, verification suites, scaling
//! scans and multiplier kernels. Outputs are deterministic for a fixed
//! (config, seed): Monte Carlo reductions are batch-ordered and floats are
//! printed with 17 significant digits.
//!
//! Exit codes: 0 success, 1 assertion/verification failure, 2 usage error.

use clap::{Parser, Subcommand, ValueEnum};
use quatsphere_core::harmonic::dims_table;
use quatsphere_core::multiplier::{
    ball_volume_mc, fit_loglog_weighted, plancherel_ratio, resolvent_diag_sum, weight_integral_mc,
    MultiplierFn,
};
use quatsphere_core::report::{
    ball_volume_csv, dims_csv, fmt_f64, plancherel_csv, resolvent_csv, weight_integral_csv,
    write_atomic, ResolventPoint, RunManifest,
};
use quatsphere_core::verify::{run_suite, SUITES};
use quatsphere_core::zonal::{zonal_eval_st, zonal_st_table_f64, StTable};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "quatsphere",
    about = "Quaternionic spherical harmonics: verification suites, spectral scans and kernels",
    version
)]
struct Cli {
    /// Quaternionic dimension n (the sphere is S^{4n-1})
    #[arg(long, default_value_t = 2, env = "QS_N", global = true)]
    n: usize,

    /// Maximum homogeneity degree for tables and suites
    #[arg(long = "h-max", default_value_t = 4, env = "QS_H_MAX", global = true)]
    h_max: u32,

    /// Comma-separated weight exponents alpha
    #[arg(long, default_value = "0,1,2", env = "QS_ALPHA", global = true, value_delimiter = ',')]
    alpha: Vec<f64>,

    /// Comma-separated multiplier scales N
    #[arg(
        long = "N-list",
        default_value = "2,4,8,16,32,64",
        env = "QS_N_LIST",
        global = true,
        value_delimiter = ','
    )]
    n_list: Vec<u32>,

    /// Comma-separated radii for geometry scans
    #[arg(
        long = "r-grid",
        default_value = "0.25,0.3,0.35,0.4,0.45,0.5",
        env = "QS_R_GRID",
        global = true,
        value_delimiter = ','
    )]
    r_grid: Vec<f64>,

    /// Monte Carlo sample count
    #[arg(long, default_value_t = 1_000_000, env = "QS_SAMPLES", global = true)]
    samples: u64,

    /// RNG seed (recorded in every output manifest)
    #[arg(long, default_value_t = 42, env = "QS_SEED", global = true)]
    seed: u64,

    /// Output directory for scan files
    #[arg(long, default_value = ".", env = "QS_OUT", global = true)]
    out: PathBuf,

    /// Output format for tables and reports
    #[arg(long, value_enum, default_value_t = Format::Csv, env = "QS_FORMAT", global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the (h, m, dim, eigenvalue) table for the spectral grid
    Dims,
    /// Run a named verification suite
    Verify {
        /// One of: algebra, decomposition, zonal, recurrence, plancherel, geometry, all
        suite: String,
    },
    /// Run a scaling scan and write a CSV plus a JSON run manifest
    Scan {
        /// One of: plancherel, ball-volume, resolvent, weight-integral
        kind: String,
        /// Multiplier family for the plancherel scan
        #[arg(long, default_value = "mihlin")]
        family: String,
        /// Resolvent order (defaults to n+1)
        #[arg(long)]
        ell: Option<u32>,
    },
    /// Emit the coefficients of a spectral-multiplier kernel
    Kernel {
        /// Multiplier spec, e.g. "band:0,4", "heat:t=0.5",
        /// "riesz:delta=2,t=0.1", "mihlin:scale=8", "tab:0:0,0.5:1,1:0"
        spec: String,
        /// Eigenvalue cutoff for lambda_L; implies acknowledging truncation
        /// for multipliers with unbounded support
        #[arg(long)]
        cutoff: Option<u64>,
        /// Also evaluate the kernel at this many sampled point pairs
        #[arg(long, default_value_t = 0)]
        eval: usize,
    },
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn parse_multiplier(spec: &str) -> Result<MultiplierFn, String> {
    let (kind, rest) = spec.split_once(':').ok_or("multiplier spec needs the form kind:args")?;
    let kv = |s: &str, key: &str| -> Result<f64, String> {
        for part in s.split(',') {
            if let Some((k, v)) = part.split_once('=') {
                if k == key {
                    return v.parse().map_err(|_| format!("bad number {v:?} for {key}"));
                }
            }
        }
        Err(format!("missing {key} in {s:?}"))
    };
    match kind {
        "band" => {
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() != 2 {
                return Err("band:LO,HI".into());
            }
            let lo: f64 = parts[0].parse().map_err(|_| "bad band lower endpoint")?;
            let hi: f64 = parts[1].parse().map_err(|_| "bad band upper endpoint")?;
            if !(lo >= 0.0 && hi > lo) {
                return Err("band needs 0 <= lo < hi".into());
            }
            Ok(MultiplierFn::BandIndicator { lo, hi })
        }
        "heat" => {
            let t = kv(rest, "t").or_else(|_| rest.parse().map_err(|_| "heat:t=T".to_string()))?;
            if t <= 0.0 {
                return Err("heat needs t > 0".into());
            }
            Ok(MultiplierFn::Heat { t })
        }
        "riesz" => {
            let delta = kv(rest, "delta")?;
            let t = kv(rest, "t")?;
            if delta < 0.0 || t <= 0.0 {
                return Err("riesz needs delta >= 0 and t > 0".into());
            }
            Ok(MultiplierFn::BochnerRiesz { delta, t })
        }
        "mihlin" => {
            let scale =
                kv(rest, "scale").or_else(|_| rest.parse().map_err(|_| "mihlin:scale=S".to_string()))?;
            if scale <= 0.0 {
                return Err("mihlin needs scale > 0".into());
            }
            Ok(MultiplierFn::MihlinBump { scale })
        }
        "tab" | "tabulated" => {
            let mut grid = Vec::new();
            let mut values = Vec::new();
            for pair in rest.split(',') {
                let (x, y) = pair.split_once(':').ok_or("tab:x1:y1,x2:y2,...")?;
                grid.push(x.parse::<f64>().map_err(|_| "bad grid point")?);
                values.push(y.parse::<f64>().map_err(|_| "bad value")?);
            }
            if grid.len() < 2 || grid.windows(2).any(|w| w[0] >= w[1]) {
                return Err("tabulated grid must be strictly increasing with >= 2 points".into());
            }
            Ok(MultiplierFn::Tabulated { grid, values })
        }
        other => Err(format!("unknown multiplier kind {other:?}")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(threads) = std::env::var("QS_THREADS") {
        if let Ok(t) = threads.parse::<usize>() {
            rayon::ThreadPoolBuilder::new().num_threads(t).build_global().ok();
        }
    }
    if cli.n < 2 {
        return usage_error("the quaternionic dimension n must be at least 2");
    }
    match &cli.command {
        Command::Dims => cmd_dims(&cli),
        Command::Verify { suite } => cmd_verify(&cli, suite),
        Command::Scan { kind, family, ell } => cmd_scan(&cli, kind, family, *ell),
        Command::Kernel { spec, cutoff, eval } => cmd_kernel(&cli, spec, *cutoff, *eval),
    }
}

fn cmd_dims(cli: &Cli) -> ExitCode {
    let rows = dims_table(cli.n, cli.h_max);
    if rows.is_empty() {
        return usage_error("empty spectral grid");
    }
    match cli.format {
        Format::Csv => print!("{}", dims_csv(&rows)),
        Format::Json => println!("{}", serde_json::to_string_pretty(&rows).unwrap()),
    }
    ExitCode::SUCCESS
}

fn cmd_verify(cli: &Cli, suite: &str) -> ExitCode {
    let Some(report) = run_suite(suite, cli.seed) else {
        return usage_error(&format!("unknown suite {suite:?}; available: {}", SUITES.join(", ")));
    };
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).unwrap()),
        Format::Csv => {
            for c in &report.checks {
                println!(
                    "{},{},{}",
                    if c.passed { "pass" } else { "FAIL" },
                    c.name,
                    c.detail.replace(',', ";")
                );
            }
            println!("suite {}: {}", report.suite, if report.passed { "pass" } else { "FAIL" });
        }
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_scan(cli: &Cli, kind: &str, family: &str, ell: Option<u32>) -> ExitCode {
    let manifest = RunManifest::new(cli.n, cli.seed, cli.samples, cli.r_grid.clone());
    let (csv, name) = match kind {
        "plancherel" => {
            let mut rows = Vec::new();
            for &alpha in &cli.alpha {
                for &nsc in &cli.n_list {
                    let f = match family {
                        "mihlin" => MultiplierFn::MihlinBump { scale: nsc as f64 },
                        "band" => MultiplierFn::BandIndicator { lo: 0.0, hi: nsc as f64 },
                        other => return usage_error(&format!("unknown family {other:?}")),
                    };
                    match plancherel_ratio(&f, cli.n, alpha, nsc, false) {
                        Ok(p) => rows.push(p),
                        Err(e) => return usage_error(&e.to_string()),
                    }
                }
            }
            (plancherel_csv(&rows), "plancherel")
        }
        "ball-volume" => {
            let pts = ball_volume_mc(cli.n, &cli.r_grid, cli.samples, cli.seed);
            let fit: Vec<(f64, f64, f64)> = pts
                .iter()
                .filter(|p| p.hits >= 10)
                .map(|p| (p.r, p.estimate, p.hits as f64))
                .collect();
            if fit.len() >= 3 {
                let (slope, _) = fit_loglog_weighted(&fit);
                eprintln!(
                    "ball-volume log-log slope over populated bins: {} (local dimension 4n+2 = {})",
                    fmt_f64(slope),
                    4 * cli.n + 2
                );
            }
            (ball_volume_csv(&pts), "ball_volume")
        }
        "resolvent" => {
            let ell = ell.unwrap_or(cli.n as u32 + 1);
            if (ell as usize) < cli.n + 1 {
                return usage_error("resolvent order ell must be at least n+1");
            }
            let mut rows = Vec::new();
            for &r in &cli.r_grid {
                match resolvent_diag_sum(cli.n, r, ell, 1e-10, 1) {
                    Ok(sum) => rows.push(ResolventPoint { r, ell, sum }),
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(1);
                    }
                }
            }
            (resolvent_csv(&rows), "resolvent")
        }
        "weight-integral" => {
            let mut rows = Vec::new();
            for &alpha in &cli.alpha {
                if !(0.0..3.0).contains(&alpha) {
                    return usage_error("weight-integral needs 0 <= alpha < 3");
                }
                rows.extend(weight_integral_mc(cli.n, &cli.r_grid, alpha, cli.samples, cli.seed));
            }
            (weight_integral_csv(&rows), "weight_integral")
        }
        other => return usage_error(&format!("unknown scan kind {other:?}")),
    };
    let csv_path = cli.out.join(format!("{name}.csv"));
    let manifest_path = cli.out.join(format!("{name}_manifest.json"));
    if let Err(e) = write_atomic(&csv_path, &csv)
        .and_then(|_| write_atomic(&manifest_path, &manifest.to_json()))
    {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    eprintln!("wrote {} and {}", csv_path.display(), manifest_path.display());
    ExitCode::SUCCESS
}

fn cmd_kernel(cli: &Cli, spec: &str, cutoff: Option<u64>, eval: usize) -> ExitCode {
    let f = match parse_multiplier(spec) {
        Ok(f) => f,
        Err(e) => return usage_error(&format!("malformed multiplier spec: {e}")),
    };
    let (lambda_cutoff, acknowledge) = match (cutoff, f.support_upper()) {
        (Some(c), _) => (c, true),
        (None, Some(upper)) => ((upper * upper).ceil() as u64, false),
        (None, None) => {
            return usage_error("this multiplier has unbounded support; pass --cutoff");
        }
    };
    let kp = match quatsphere_core::multiplier::multiplier_kernel(&f, cli.n, lambda_cutoff, acknowledge)
    {
        Ok(kp) => kp,
        Err(e) => return usage_error(&e.to_string()),
    };
    let coeffs: Vec<serde_json::Value> = kp
        .support()
        .map(|(idx, c)| {
            serde_json::json!({ "h": idx.h, "m": idx.m, "re": c.re, "im": c.im })
        })
        .collect();
    let mut out = serde_json::json!({
        "n": cli.n,
        "multiplier": spec,
        "lambda_cutoff": lambda_cutoff,
        "coeffs": coeffs,
    });
    if eval > 0 {
        // evaluate K(x, y) = sum a_{h,m} Z_{h,m}(x, y) at sampled pairs; the
        // zonal kernels depend only on s = Re<x,y> and t = |<x,y>|^2
        use quatsphere_core::quat::{hermitian_inner, sample_sphere};
        use rand::SeedableRng;
        let tables: Vec<(f64, StTable)> = kp
            .support()
            .map(|(idx, c)| (c.re, zonal_st_table_f64(cli.n, idx.h, idx.m)))
            .collect();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cli.seed);
        let mut evals = Vec::new();
        for _ in 0..eval {
            let x = sample_sphere(&mut rng, cli.n);
            let y = sample_sphere(&mut rng, cli.n);
            let inner = hermitian_inner(x.point(), y.point()).unwrap();
            let s = inner.a;
            let t = inner.norm_sq();
            let value: f64 = tables.iter().map(|(a, tab)| a * zonal_eval_st(tab, s, t)).sum();
            evals.push(serde_json::json!({
                "s": s, "t": t, "value": value,
            }));
        }
        out["evaluations"] = serde_json::Value::Array(evals);
    }
    println!("{}", serde_json::to_string_pretty(&out).unwrap());
    ExitCode::SUCCESS
}
