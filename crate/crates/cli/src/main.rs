use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use redcx::format::{load_complex, load_construction, load_module, write_module, write_ring};
use redcx::report::{construct_report, depth_formula_report, depth_report, period_report, reduce_report, resolve_report, tor_report};
use redcx::{DepthFormulaOptions, Error, ReductionStrategy, Report};

#[derive(Parser)]
#[command(name = "redcx", version, about = "Graded homological algebra over truncated quotient rings")]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct RunConfig {
    /// homological window
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    window: Option<u64>,
    /// override the degree bound of every ring read
    #[arg(long, global = true)]
    degree_bound: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// emit `key = value` records
    #[arg(long, global = true)]
    machine: bool,
}

impl RunConfig {
    fn window_or(&self, default: usize) -> usize {
        self.window.map_or(default, |w| w as usize)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Betti numbers and complexity of a module
    Resolve { module: PathBuf },
    Depth { module: PathBuf },
    /// graded dimensions of Tor_i(M, N)
    Tor { m: PathBuf, n: PathBuf },
    /// compare depth M + depth N with depth A + depth Tor_q(M, N) - q
    DepthFormula { m: PathBuf, n: PathBuf },
    /// search for a reducing sequence
    Reduce {
        module: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
    /// run the tensor-and-cone construction on the factors of a config
    Construct {
        config: PathBuf,
        /// write `<out>.ring` and `<out>.mod` for the resulting module
        #[arg(long, default_value = "corollary")]
        out: PathBuf,
    },
    /// certify the minimal period of a complex
    Period {
        complex: PathBuf,
        #[arg(long)]
        max_period: Option<usize>,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::NotHomogeneous(_) | Error::InvalidCharacteristic(_) | Error::ConstantGenerator => 2,
        Error::DegreeBoundExceeded { .. } => 3,
        Error::WindowExceeded { .. } => 4,
        _ => 1,
    }
}

fn emit(report: &Report, machine: bool) {
    if machine {
        print!("{}", report.machine());
    } else {
        print!("{}", report.pretty());
    }
}

fn write_file(path: &Path, text: &str) -> redcx::Result<()> {
    fs::write(path, text).map_err(|e| Error::Invariant(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli) -> redcx::Result<Report> {
    let cfg = cli.run;
    let bound = cfg.degree_bound;
    match &cli.command {
        Command::Resolve { module } => resolve_report(&load_module(module, bound)?, cfg.window_or(10), cfg.seed),
        Command::Depth { module } => depth_report(&load_module(module, bound)?),
        Command::Tor { m, n } => tor_report(&load_module(m, bound)?, &load_module(n, bound)?, cfg.window_or(10), cfg.seed),
        Command::DepthFormula { m, n } => {
            let defaults = DepthFormulaOptions::default();
            let opts = DepthFormulaOptions {
                window: cfg.window_or(defaults.window),
                seed: cfg.seed,
                reducibility: defaults.reducibility.map(|s| ReductionStrategy { seed: cfg.seed, ..s }),
            };
            let report = depth_formula_report(&load_module(m, bound)?, &load_module(n, bound)?, &opts)?;
            if let Some(why) = report.get("refusal") {
                eprintln!("verdict refused: {why}");
            }
            Ok(report)
        }
        Command::Reduce { module, max_degree } => {
            let s = ReductionStrategy {
                max_degree: *max_degree,
                window: cfg.window_or(ReductionStrategy::default().window),
                seed: cfg.seed,
                ..ReductionStrategy::default()
            };
            reduce_report(&load_module(module, bound)?, &s)
        }
        Command::Construct { config, out } => {
            let factors = load_construction(config, bound)?;
            let (mut report, res, cor) = construct_report(&factors, cfg.seed, Some(ReductionStrategy { seed: cfg.seed, ..ReductionStrategy::default() }))?;
            let ring_path = out.with_extension("ring");
            let module_path = out.with_extension("mod");
            let ring_name = ring_path.file_name().and_then(|s| s.to_str()).unwrap_or("corollary.ring");
            write_file(&ring_path, &write_ring(&res.ring))?;
            write_file(&module_path, &write_module(&cor.module, ring_name))?;
            report.push("module.file", module_path.display());
            Ok(report)
        }
        Command::Period { complex, max_period } => {
            let cf = load_complex(complex, bound)?;
            let c = match cfg.window {
                Some(w) => cf.complex.window(w as usize),
                None => cf.complex,
            };
            let max = max_period.unwrap_or(c.len() / 2).max(1);
            Ok(period_report(&c, max, cfg.seed))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            emit(&report, cli.run.machine);
            ExitCode::SUCCESS
        }
        Err(Error::Refused(why)) => {
            println!("refused: {why}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
