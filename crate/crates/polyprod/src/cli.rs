//! Command-line front end: argument parsing, experiment dispatch, and
//! report emission.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::dynamics::{image_stats, missing_average};
use crate::error::{Error, Result};
use crate::experiments::{
    binomial_shift_check, chebotarev_census, exceptional_prime_census, find_power_solutions,
    random_permutation_model, s_d_census, square_sieve, weil_ratio,
};
use crate::parse::parse_polynomial;
use crate::poly::IntPoly;
use crate::report::{to_csv, ExperimentReport};

pub const THREADS_ENV: &str = "POLYPROD_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(
    name = "polyprod",
    version,
    about = "Arithmetic of polynomial products F_P(n) = P(1)...P(n): image statistics mod p, squarefree kernels, perfect powers, and sieve experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads (default: machine parallelism, or POLYPROD_THREADS).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Image size G_P(p) and missing residues of F_P(1..p) mod p.
    Image {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        p: u64,
    },
    /// Both sides of the averaged missing-value inequality up to x.
    MissingAvg {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        x: u64,
        /// Largest shift length n for the root sums.
        #[arg(long = "N")]
        n: u64,
    },
    /// Square-sieve pipeline for S_d over the window (M, M+N].
    Sieve {
        #[arg(long)]
        poly: String,
        /// Squarefree kernel d (decimal, possibly negative or large).
        #[arg(long)]
        d: String,
        #[arg(long = "M", default_value_t = 0)]
        m: u64,
        #[arg(long = "N")]
        n: u64,
        /// Gap parameter (default N^(1/8) / (log N)^(1/4)).
        #[arg(long = "H")]
        h: Option<u64>,
        /// Sieve primes are drawn from [z, 2z] (default sqrt(N)).
        #[arg(long)]
        z: Option<u64>,
    },
    /// Kernel census: group (M, M+N] by squarefree kernel, count fields.
    Fields {
        #[arg(long)]
        poly: String,
        #[arg(long = "M", default_value_t = 0)]
        m: u64,
        #[arg(long = "N")]
        n: u64,
    },
    /// Solutions of F_P(n) = m^k with n <= N.
    Powers {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        k: u32,
        #[arg(long = "N")]
        n: u64,
    },
    /// Character sum of (P(n)/lp) over a window against the Weil bound.
    Weil {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        l: u64,
        #[arg(long)]
        p: u64,
        #[arg(long = "M", default_value_t = 0)]
        m: u64,
        #[arg(long = "N")]
        n: u64,
    },
    /// Density of rootless primes in [z, 2z].
    Chebotarev {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        z: u64,
    },
    /// Primes p <= x where some F_h (h <= H) is a square mod p.
    Exceptional {
        #[arg(long)]
        poly: String,
        #[arg(long = "H")]
        h: u64,
        #[arg(long)]
        x: u64,
    },
    /// Distinct partial products of a random permutation of units mod p.
    RandomModel {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        trials: u64,
        /// Required: randomized commands never draw OS entropy.
        #[arg(long)]
        seed: u64,
    },
    /// Discriminant shift checks for P = x^d - a.
    BinomialCheck {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        a: i64,
        /// Shift multipliers k, comma separated.
        #[arg(long = "k", value_delimiter = ',', required = true)]
        k: Vec<u64>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Image { .. } => "image",
            Command::MissingAvg { .. } => "missing-avg",
            Command::Sieve { .. } => "sieve",
            Command::Fields { .. } => "fields",
            Command::Powers { .. } => "powers",
            Command::Weil { .. } => "weil",
            Command::Chebotarev { .. } => "chebotarev",
            Command::Exceptional { .. } => "exceptional",
            Command::RandomModel { .. } => "random-model",
            Command::BinomialCheck { .. } => "binomial-check",
        }
    }
}

/// Image statistics in report form.
#[derive(Clone, Debug, Serialize)]
struct ImageReport {
    poly: String,
    p: u64,
    good: bool,
    n0: Option<u64>,
    image_size: u64,
    missing_count: u64,
    lower_bound: f64,
    bound_ok: bool,
    missing: Vec<u64>,
}

/// Result payload plus its tabular form.
pub struct CommandOutput {
    pub command: &'static str,
    pub parameters: Value,
    pub results: Value,
    pub warnings: Vec<String>,
    csv_header: Vec<&'static str>,
    csv_rows: Vec<Vec<String>>,
}

impl CommandOutput {
    pub fn into_report(self) -> ExperimentReport {
        ExperimentReport::new(self.command, self.parameters, self.results, self.warnings)
    }

    pub fn csv(&self) -> String {
        to_csv(&self.csv_header, &self.csv_rows)
    }
}

fn poly_arg(text: &str) -> Result<IntPoly> {
    let poly = parse_polynomial(text)?;
    if poly.degree() == Some(0) {
        return Err(Error::precondition(
            "constant polynomials generate constant products; degree >= 1 required",
        ));
    }
    Ok(poly)
}

fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

fn fmt_opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

fn run_command(command: &Command) -> Result<CommandOutput> {
    match command {
        Command::Image { poly, p } => {
            let f = poly_arg(poly)?;
            let stats = image_stats(&f, *p)?;
            let mut warnings = Vec::new();
            if *p <= f.degree().unwrap_or(0) as u64 {
                warnings.push(format!(
                    "p = {p} does not exceed deg P = {}; the square-root lower bound assumes p >= deg P",
                    f.degree().unwrap_or(0)
                ));
            }
            let report = ImageReport {
                poly: f.to_string(),
                p: *p,
                good: stats.is_good(),
                n0: stats.n0(),
                image_size: stats.image_size(),
                missing_count: stats.missing_count(),
                lower_bound: stats.lower_bound(),
                bound_ok: stats.bound_ok(),
                missing: stats.missing_residues(),
            };
            Ok(CommandOutput {
                command: "image",
                parameters: json!({"poly": poly, "p": p}),
                results: serde_json::to_value(&report).expect("serializable"),
                warnings,
                csv_header: vec![
                    "p",
                    "good",
                    "n0",
                    "image_size",
                    "missing_count",
                    "lower_bound",
                    "bound_ok",
                    "missing",
                ],
                csv_rows: vec![vec![
                    report.p.to_string(),
                    report.good.to_string(),
                    fmt_opt(&report.n0),
                    report.image_size.to_string(),
                    report.missing_count.to_string(),
                    fmt_f64(report.lower_bound),
                    report.bound_ok.to_string(),
                    report
                        .missing
                        .iter()
                        .map(u64::to_string)
                        .collect::<Vec<_>>()
                        .join(";"),
                ]],
            })
        }
        Command::MissingAvg { poly, x, n } => {
            let f = poly_arg(poly)?;
            let r = missing_average(&f, *x, *n)?;
            let rows = r
                .rhs_per_n
                .iter()
                .map(|c| {
                    vec![
                        c.n.to_string(),
                        c.root_total.to_string(),
                        fmt_f64(c.normalized),
                    ]
                })
                .collect();
            Ok(CommandOutput {
                command: "missing-avg",
                parameters: json!({"poly": poly, "x": x, "N": n}),
                results: serde_json::to_value(&r).expect("serializable"),
                warnings: if r.violated {
                    vec!["finite-x violation: lhs < rhs".to_string()]
                } else {
                    Vec::new()
                },
                csv_header: vec!["n", "root_total", "normalized"],
                csv_rows: rows,
            })
        }
        Command::Sieve { poly, d, m, n, h, z } => {
            let f = poly_arg(poly)?;
            let d = BigInt::from_str(d)
                .map_err(|_| Error::precondition(format!("invalid kernel d: '{d}'")))?;
            let r = square_sieve(&f, &d, *m, *n, *h, *z)?;
            let row = vec![
                r.s1_count.to_string(),
                r.s2_count.to_string(),
                r.curly_l_size.to_string(),
                r.curly_p_size.to_string(),
                r.solutions
                    .iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join(";"),
                r.s2_full_sum_verified.to_string(),
                fmt_f64(r.bound_value),
            ];
            Ok(CommandOutput {
                command: "sieve",
                parameters: json!({"poly": poly, "d": d.to_string(), "M": m, "N": n, "H": h, "z": z}),
                results: serde_json::to_value(&r).expect("serializable"),
                warnings: Vec::new(),
                csv_header: vec![
                    "s1_count",
                    "s2_count",
                    "curly_l_size",
                    "curly_p_size",
                    "solutions",
                    "s2_full_sum_verified",
                    "bound_value",
                ],
                csv_rows: vec![row],
            })
        }
        Command::Fields { poly, m, n } => {
            let f = poly_arg(poly)?;
            let r = s_d_census(&f, *m, *n)?;
            let rows = r
                .classes
                .iter()
                .map(|c| {
                    vec![
                        match &c.d {
                            Value::String(s) => s.clone(),
                            v => v.to_string(),
                        },
                        c.members.len().to_string(),
                        c.members
                            .iter()
                            .map(u64::to_string)
                            .collect::<Vec<_>>()
                            .join(";"),
                    ]
                })
                .collect();
            Ok(CommandOutput {
                command: "fields",
                parameters: json!({"poly": poly, "M": m, "N": n}),
                results: serde_json::to_value(&r).expect("serializable"),
                warnings: Vec::new(),
                csv_header: vec!["d", "size", "members"],
                csv_rows: rows,
            })
        }
        Command::Powers { poly, k, n } => {
            let f = poly_arg(poly)?;
            let r = find_power_solutions(&f, *k, *n)?;
            let rows = r
                .solutions
                .iter()
                .map(|s| vec![s.n.to_string(), s.m_factored.clone()])
                .collect();
            Ok(CommandOutput {
                command: "powers",
                parameters: json!({"poly": poly, "k": k, "N": n}),
                results: serde_json::to_value(&r).expect("serializable"),
                warnings: Vec::new(),
                csv_header: vec!["n", "m_factored"],
                csv_rows: rows,
            })
        }
        Command::Weil { poly, l, p, m, n } => {
            let f = poly_arg(poly)?;
            let r = weil_ratio(&f, *l, *p, *m, *n)?;
            let warnings = if r.ratio > 1.0 {
                vec![format!("ratio {} exceeds 1; the implied constant 1 was too small here", r.ratio)]
            } else {
                Vec::new()
            };
            Ok(CommandOutput {
                command: "weil",
                parameters: json!({"poly": poly, "l": l, "p": p, "M": m, "N": n}),
                results: serde_json::to_value(&r).expect("serializable"),
                warnings,
                csv_header: vec!["l", "p", "M", "N", "sum", "bound", "ratio"],
                csv_rows: vec![vec![
                    r.l.to_string(),
                    r.p.to_string(),
                    r.m.to_string(),
                    r.n.to_string(),
                    r.sum.to_string(),
                    fmt_f64(r.bound),
                    fmt_f64(r.ratio),
                ]],
            })
        }
        Command::Chebotarev { poly, z } => {
            let f = poly_arg(poly)?;
            if *z < 10 {
                return Err(Error::precondition("z must be at least 10"));
            }
            let r = chebotarev_census(&f, *z)?;
            Ok(CommandOutput {
                command: "chebotarev",
                parameters: json!({"poly": poly, "z": z}),
                results: serde_json::to_value(&r).expect("serializable"),
                warnings: Vec::new(),
                csv_header: vec![
                    "z",
                    "primes_total",
                    "rootless",
                    "rootless_fraction",
                    "kappa_hat",
                    "kappa_bound",
                ],
                csv_rows: vec![vec![
                    r.z.to_string(),
                    r.primes_total.to_string(),
                    r.rootless.to_string(),
                    fmt_f64(r.rootless_fraction),
                    fmt_opt(&r.kappa_hat.map(fmt_f64)),
                    fmt_opt(&r.kappa_bound.map(fmt_f64)),
                ]],
            })
        }
        Command::Exceptional { poly, h, x } => {
            let f = poly_arg(poly)?;
            let r = exceptional_prime_census(&f, *h, *x)?;
            let rows = r
                .pairs
                .iter()
                .map(|&(p, h)| vec![p.to_string(), h.to_string()])
                .collect();
            Ok(CommandOutput {
                command: "exceptional",
                parameters: json!({"poly": poly, "H": h, "x": x}),
                results: serde_json::to_value(&r).expect("serializable"),
                warnings: Vec::new(),
                csv_header: vec!["p", "h"],
                csv_rows: rows,
            })
        }
        Command::RandomModel { p, trials, seed } => {
            let r = random_permutation_model(*p, *trials, *seed)?;
            Ok(CommandOutput {
                command: "random-model",
                parameters: json!({"p": p, "trials": trials, "seed": seed}),
                results: serde_json::to_value(&r).expect("serializable"),
                warnings: Vec::new(),
                csv_header: vec!["p", "trials", "seed", "mean_image_fraction", "stddev"],
                csv_rows: vec![vec![
                    r.p.to_string(),
                    r.trials.to_string(),
                    r.seed.to_string(),
                    fmt_f64(r.mean_image_fraction),
                    fmt_f64(r.stddev),
                ]],
            })
        }
        Command::BinomialCheck { d, a, k } => {
            let r = binomial_shift_check(*d, *a, k)?;
            let rows = r
                .checks
                .iter()
                .map(|c| {
                    vec![
                        c.k.to_string(),
                        fmt_opt(&c.rejected),
                        fmt_opt(&c.kq),
                        fmt_opt(&c.resultant_mod_q),
                        fmt_opt(&c.disc_mod_q),
                        fmt_opt(&c.nonzero),
                    ]
                })
                .collect();
            Ok(CommandOutput {
                command: "binomial-check",
                parameters: json!({"d": d, "a": a, "k": k}),
                results: serde_json::to_value(&r).expect("serializable"),
                warnings: Vec::new(),
                csv_header: vec!["k", "rejected", "kq", "resultant_mod_q", "disc_mod_q", "nonzero"],
                csv_rows: rows,
            })
        }
    }
}

fn resolve_threads(cli: &Cli) -> Option<usize> {
    cli.threads.or_else(|| {
        std::env::var(THREADS_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
    })
}

/// Dispatch a parsed invocation, honoring the thread-count setting.
pub fn run(cli: &Cli) -> Result<CommandOutput> {
    match resolve_threads(cli) {
        Some(n) if n > 0 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::precondition(format!("thread pool: {e}")))?;
            pool.install(|| run_command(&cli.command))
        }
        _ => run_command(&cli.command),
    }
}

/// Render a finished run in the requested format.
pub fn emit(outcome: CommandOutput, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => outcome.into_report().to_json_pretty(),
        OutputFormat::Csv => outcome.csv(),
    }
}

/// Machine-readable error payload for nonzero exits.
pub fn error_payload(command: &str, err: &Error) -> String {
    let v = json!({
        "command": command,
        "error": err.to_string(),
    });
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn verify_cli_definition() {
        Cli::command().debug_assert();
    }

    #[test]
    fn image_dispatch() {
        let cli = Cli::parse_from(["polyprod", "image", "--poly", "x^2+1", "--p", "7"]);
        let out = run(&cli).unwrap();
        assert_eq!(out.results["image_size"], json!(4));
        assert_eq!(out.results["missing"], json!([0, 1, 5]));
        let report = out.into_report();
        assert_eq!(report.command, "image");
        assert_eq!(report.parameters["p"], json!(7));
    }

    #[test]
    fn powers_dispatch() {
        let cli = Cli::parse_from(["polyprod", "powers", "--poly", "x^2+1", "--k", "2", "--N", "100"]);
        let out = run(&cli).unwrap();
        assert_eq!(out.results["solutions"][0]["n"], json!(3));
    }

    #[test]
    fn csv_output_has_header_and_rows() {
        let cli = Cli::parse_from([
            "polyprod", "fields", "--poly", "x^2+1", "--N", "5", "--format", "csv",
        ]);
        let out = run(&cli).unwrap();
        let csv = emit(out, OutputFormat::Csv);
        let lines: Vec<&str> = csv.trim_end().split("\r\n").collect();
        assert_eq!(lines[0], "d,size,members");
        assert_eq!(lines.len(), 6); // header + 5 kernel classes
    }

    #[test]
    fn seed_is_required() {
        let parsed = Cli::try_parse_from(["polyprod", "random-model", "--p", "2003", "--trials", "5"]);
        assert!(parsed.is_err());
    }

    #[test]
    fn threads_flag_accepted() {
        let cli = Cli::parse_from([
            "polyprod", "image", "--poly", "x^2+1", "--p", "7", "--threads", "2",
        ]);
        let out = run(&cli).unwrap();
        assert_eq!(out.results["image_size"], json!(4));
    }

    #[test]
    fn deterministic_payloads() {
        let run_once = || {
            let cli = Cli::parse_from([
                "polyprod",
                "random-model",
                "--p",
                "101",
                "--trials",
                "10",
                "--seed",
                "9",
            ]);
            let mut report = run(&cli).unwrap().into_report();
            report.unix_time = 0; // timestamps excluded from determinism
            report.to_json_pretty()
        };
        assert_eq!(run_once(), run_once());
    }
}
