//! Command-line interface for the derlog engine.
//!
//! Exit codes: 0 all checks/expectations met, 1 verdict mismatch or failed
//! golden check, 2 input error, 3 internal inconsistency.

use clap::{Parser, Subcommand, ValueEnum};
use derlog::catalog::{load_catalog, run_catalog, CatalogEntry};
use derlog::golden::verify_surface_example;
use derlog::parse::{parse_poly, var_names};
use derlog::pipeline::{run_single, OrderChoice, RunConfig};
use derlog::report::{emit_structured, emit_text};
use derlog::EngineError;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "derlog",
    version,
    about = "Exact checks for logarithmic derivations of a divisor and the associated differential-operator ideals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Grevlex,
    Lex,
}

impl From<OrderArg> for OrderChoice {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Grevlex => OrderChoice::Grevlex,
            OrderArg::Lex => OrderChoice::Lex,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a single divisor.
    Run {
        /// Divisor expression, e.g. "x^2 - y^3".
        #[arg(long)]
        f: String,
        /// Comma-separated variable names.
        #[arg(long, default_value = "x,y")]
        vars: String,
        #[arg(long, value_enum, default_value = "grevlex")]
        order: OrderArg,
        /// Jet probe depth.
        #[arg(long, default_value_t = 10)]
        kmax: u32,
        /// Degree bound for the basis-search fallback.
        #[arg(long, default_value_t = 2)]
        saito_bound: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        /// Name used for the divisor in the text report.
        #[arg(long, default_value = "f")]
        symbol: String,
    },
    /// Process a catalog file of divisors with expected verdicts.
    Catalog {
        #[arg(long)]
        path: PathBuf,
        /// Worker pool size (1 = sequential, 0 = all cores).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Directory for cached reports (written atomically).
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "grevlex")]
        order: OrderArg,
        #[arg(long, default_value_t = 10)]
        kmax: u32,
    },
    /// Run the built-in golden suite: the surface example plus the curve
    /// catalog with expected verdicts.
    VerifyPaper {
        #[arg(long, default_value_t = 10)]
        kmax: u32,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

fn exit_for(e: &EngineError) -> u8 {
    if e.is_internal() {
        3
    } else {
        2
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { f, vars, order, kmax, saito_bound, format, symbol } => {
            let vars = var_names(&vars);
            let poly = match parse_poly(&f, &vars) {
                Ok(p) => p,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let config = RunConfig {
                order: order.into(),
                kmax,
                saito_degree_bound: saito_bound,
            };
            match run_single(&poly, &vars, &symbol, &config) {
                Ok(report) => {
                    match format {
                        FormatArg::Text => print!("{}", emit_text(&report)),
                        FormatArg::Structured => println!("{}", emit_structured(&report)),
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(exit_for(&e))
                }
            }
        }
        Command::Catalog { path, jobs, cache, order, kmax } => {
            let entries: Vec<CatalogEntry> = match load_catalog(&path) {
                Ok(entries) => entries,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let config = RunConfig { order: order.into(), kmax, saito_degree_bound: 2 };
            let summary = run_catalog(&entries, &config, jobs, cache.as_deref());
            print!("{}", summary.render_table());
            ExitCode::from(summary.exit_code() as u8)
        }
        Command::VerifyPaper { kmax, jobs } => {
            let checks = match verify_surface_example() {
                Ok(checks) => checks,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(exit_for(&e));
                }
            };
            let mut failed = false;
            println!("surface example:");
            for c in &checks {
                println!(
                    "  {:<40} {} ({})",
                    c.name,
                    if c.pass { "pass" } else { "FAIL" },
                    c.detail
                );
                failed |= !c.pass;
            }
            let config = RunConfig {
                order: OrderChoice::Grevlex,
                kmax,
                saito_degree_bound: 2,
            };
            let summary = run_catalog(&derlog::catalog::builtin_catalog(), &config, jobs, None);
            println!("\nbuilt-in catalog:");
            print!("{}", summary.render_table());
            let code = summary.exit_code();
            if code != 0 {
                ExitCode::from(code as u8)
            } else if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
    }
}
