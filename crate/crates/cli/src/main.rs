use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use padic_lab::building::GroupType;
use padic_lab::suites::{describe_suite, export_roots, list_suites, run_suite, SuiteConfig};
use padic_lab::{Error, ExtensionKind};

const EXIT_CONFIG: u8 = 3;
const SEED_ENV: &str = "PADIC_LAB_SEED";

/// Verification suites for p-adic Cayley transforms, Moy-Prasad filtrations
/// and twisted conjugacy.
///
/// Exit status: 0 pass, 1 counterexample found, 2 precision exhausted,
/// 3 configuration error.
#[derive(Parser)]
#[command(name = "padic-lab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one suite and print a summary (or the JSON report).
    Run(RunArgs),
    /// List the suites in their fixed order.
    List,
    /// Print the simple affine roots of a group.
    Roots {
        /// Group spec: gl:N, sp:2n, so:N, u:N, u-ram:N, u-unram:N.
        #[arg(long)]
        group: String,
        /// Extension for gl and u groups.
        #[arg(long, default_value = "trivial")]
        ext: String,
        /// Print JSON instead of one root per line.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Flat `key = value` file with the same keys as the flags; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Suite name (see `list`).
    #[arg(long)]
    suite: Option<String>,
    /// Residue characteristic, an odd prime [default: 5].
    #[arg(long)]
    p: Option<u64>,
    /// Extension E/F: trivial, unram or ram [default: trivial].
    #[arg(long)]
    ext: Option<String>,
    /// Group spec such as gl:3 or u-ram:2 [default: depends on the suite].
    #[arg(long)]
    group: Option<String>,
    /// Precision in uniformizer digits [default: 12].
    #[arg(long)]
    prec: Option<u32>,
    /// Random trials per sampled check [default: 100].
    #[arg(long)]
    samples: Option<usize>,
    /// RNG seed [default: $PADIC_LAB_SEED, else 0].
    #[arg(long)]
    seed: Option<u64>,
    /// Largest quotient that may be enumerated [default: 1048576].
    #[arg(long)]
    cap: Option<u64>,
    /// Filtration level for quotient suites, e.g. 1/2 [default: 1/2].
    #[arg(long)]
    r: Option<String>,
    /// Target depth for the descent suite [default: 4].
    #[arg(long)]
    target: Option<String>,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the JSON report instead of the summary.
    #[arg(long)]
    json: bool,
}

fn build_config(args: &RunArgs) -> Result<SuiteConfig, Error> {
    let mut cfg = SuiteConfig::new("");
    if let Ok(seed) = std::env::var(SEED_ENV) {
        cfg.set("seed", &seed)?;
    }
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        cfg.apply_file_contents(&text)?;
    }
    let flags: [(&str, Option<String>); 10] = [
        ("suite", args.suite.clone()),
        ("p", args.p.map(|v| v.to_string())),
        ("ext", args.ext.clone()),
        ("group", args.group.clone()),
        ("prec", args.prec.map(|v| v.to_string())),
        ("samples", args.samples.map(|v| v.to_string())),
        ("seed", args.seed.map(|v| v.to_string())),
        ("cap", args.cap.map(|v| v.to_string())),
        ("r", args.r.clone()),
        ("target", args.target.clone()),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            cfg.set(key, &v)?;
        }
    }
    if let Some(out) = &args.out {
        cfg.out = Some(out.clone());
    }
    if cfg.suite.is_empty() {
        return Err(Error::Config("no suite given (use --suite or a config file)".into()));
    }
    Ok(cfg)
}

fn run(args: RunArgs) -> ExitCode {
    let cfg = match build_config(&args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    match run_suite(&cfg) {
        Ok(report) => {
            if args.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.summary());
            }
            ExitCode::from(report.verdict.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run(args) => run(args),
        Command::List => {
            for name in list_suites() {
                println!("{name:<14} {}", describe_suite(name).unwrap_or(""));
            }
            ExitCode::SUCCESS
        }
        Command::Roots { group, ext, json } => {
            let roots = ExtensionKind::parse(&ext)
                .ok_or_else(|| Error::Config(format!("unknown extension `{ext}`")))
                .and_then(|e| GroupType::parse(&group, e))
                .and_then(|g| export_roots(&g));
            match roots {
                Ok(v) if json => {
                    println!("{}", serde_json::to_string_pretty(&v).expect("JSON value"));
                    ExitCode::SUCCESS
                }
                Ok(v) => {
                    println!("{}", v["group"].as_str().unwrap_or_default());
                    for root in v["roots"].as_array().into_iter().flatten() {
                        println!("  {}", root["label"].as_str().unwrap_or_default());
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(EXIT_CONFIG)
                }
            }
        }
    }
}
