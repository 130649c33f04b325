use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sos_cli::commands::{self, Outcome};
use sos_cli::config::{parse_config, Method, OutputFormat};
use sos_core::EquationKind;

#[derive(Parser)]
#[command(
    name = "sos",
    version,
    about = "Elliptic SOS partition function with domain-wall boundaries"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum EquationArg {
    A,
    D,
    #[value(name = "AD", alias = "ad")]
    Ad,
}

#[derive(Subcommand)]
enum Command {
    /// Partition function for one configuration file
    Compute {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum)]
        method: Option<Method>,
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
    },
    /// Recompute a published table
    Tables {
        #[arg(long)]
        set: u8,
        #[arg(long, default_value_t = 5)]
        lmax: usize,
    },
    /// Residuals of a functional equation at random auxiliary points
    Funceq {
        #[arg(long = "type", value_enum, ignore_case = true)]
        kind: EquationArg,
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Number of height configurations
    Count {
        #[arg(long = "L")]
        l: usize,
    },
    /// Timing of both routes
    Bench {
        #[arg(long, default_value_t = 20)]
        lmax: usize,
    },
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Compute { config, method, format } => match parse_config(&config) {
            Ok(mut cfg) => {
                if let Some(m) = method {
                    cfg.method = m;
                }
                if let Some(f) = format {
                    cfg.output_format = f;
                }
                commands::compute(&cfg)
            }
            Err(e) => e.into(),
        },
        Command::Tables { set, lmax } => commands::tables(set, lmax),
        Command::Funceq {
            kind,
            config,
            trials,
            seed,
        } => {
            let kind = match kind {
                EquationArg::A => EquationKind::A,
                EquationArg::D => EquationKind::D,
                EquationArg::Ad => EquationKind::AD,
            };
            match parse_config(&config) {
                Ok(cfg) => commands::funceq(kind, &cfg, trials, seed),
                Err(e) => e.into(),
            }
        }
        Command::Count { l } => commands::count(l),
        Command::Bench { lmax } => commands::bench(lmax),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let outcome = run(cli);
    print!("{}", outcome.report);
    if let Some(msg) = &outcome.error {
        eprintln!("error: {msg}");
    }
    ExitCode::from(outcome.status.code() as u8)
}
