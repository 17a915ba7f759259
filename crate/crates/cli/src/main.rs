use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use modpk::report::{self, Document, Format, Style};
use modpk::scan::{run_scan, ScanOptions};
use modpk::{CliError, Result};

/// Structure of the units group mod p^k, FLT roots, cubic roots of unity and triplets.
#[derive(Parser)]
#[command(name = "modpk", version)]
struct Cli {
    #[command(flatten)]
    output: OutputArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Also render residues in (-m/2, m/2].
    #[arg(long, global = true)]
    signed: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for one modulus p^k.
    Analyze {
        p: u64,
        #[arg(default_value_t = 2)]
        k: u32,
    },
    /// Normalized FLT roots a^p + b^p = -1 mod p^2, carried to p^k when k > 2.
    Roots {
        p: u64,
        #[arg(default_value_t = 2)]
        k: u32,
    },
    /// Scan primes in [p_min, p_max] for proper core triplets.
    Scan {
        p_min: u64,
        p_max: u64,
        #[arg(default_value_t = 2)]
        k: u32,
        /// Worker threads (defaults to available parallelism).
        #[arg(long)]
        jobs: Option<usize>,
        /// Append-only JSON Lines cache of per-prime results.
        #[arg(long, env = "MODPK_CACHE")]
        cache: Option<PathBuf>,
        /// Recompute primes already present in the cache.
        #[arg(long)]
        force: bool,
    },
    /// Check that every core subgroup larger than {1} sums to 0.
    CoreTheorem {
        p: u64,
        #[arg(default_value_t = 2)]
        k: u32,
    },
    /// Hensel-lift the cubic roots of 1 from p^from_k to p^to_k.
    Lift { p: u64, from_k: u32, to_k: u32 },
}

fn run(cli: Cli) -> Result<String> {
    let style = Style {
        signed: cli.output.signed,
    };
    let format = cli.output.format;
    let out = match cli.command {
        Command::Analyze { p, k } => {
            let params = json!({ "p": p, "k": k, "signed": style.signed });
            Document::new("analyze", params, report::analyze(p, k, style)?).render(format)
        }
        Command::Roots { p, k } => {
            let params = json!({ "p": p, "k": k, "signed": style.signed });
            Document::new("roots", params, report::roots(p, k, style)?).render(format)
        }
        Command::CoreTheorem { p, k } => {
            let params = json!({ "p": p, "k": k, "signed": style.signed });
            Document::new("core-theorem", params, report::core_theorem(p, k, style)?).render(format)
        }
        Command::Lift { p, from_k, to_k } => {
            let params = json!({ "p": p, "from_k": from_k, "to_k": to_k, "signed": style.signed });
            Document::new("lift", params, report::lift(p, from_k, to_k, style)?).render(format)
        }
        Command::Scan {
            p_min,
            p_max,
            k,
            jobs,
            cache,
            force,
        } => {
            let jobs = jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            if jobs == 0 {
                return Err(CliError::Usage("--jobs must be at least 1".into()));
            }
            let opts = ScanOptions { jobs, cache, force };
            let started = std::time::Instant::now();
            let (summary, stats) = run_scan(p_min, p_max, k, &opts, style)?;
            eprintln!(
                "computed {} primes, {} from cache, {:.3} s",
                stats.computed,
                stats.from_cache,
                started.elapsed().as_secs_f64()
            );
            let params = json!({ "p_min": p_min, "p_max": p_max, "k": k, "signed": style.signed });
            Document::new("scan", params, summary).render(format)
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(4);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("modpk: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
