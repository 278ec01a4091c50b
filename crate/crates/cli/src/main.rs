use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ndds_core::oracle::Theorem;
use ndds_lab::{paper_examples, run, theorems, Bounds, ExperimentConfig, Format};

#[derive(Parser)]
#[command(
    name = "ndds-lab",
    version,
    about = "Exact transitivity laboratory for non-autonomous systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand)]
enum Command {
    /// Execute the queries of an experiment config.
    Run { config: PathBuf },
    /// Check the built-in fixtures against their pinned verdicts.
    PaperExamples,
    /// Sweep the corpus for counterexamples to the implication checks.
    Theorems {
        /// Run a single sweep (T3.1, T3.2, T4.1, T4.2, R2.1, R2.2, T3.4).
        #[arg(long)]
        theorem: Option<Theorem>,
    },
}

#[derive(Args)]
struct Flags {
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    resolution: Option<u32>,
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    p_max: Option<u64>,
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    a_max: Option<u64>,
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    n_max: Option<u64>,
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    horizon: Option<u64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Largest space size of the sweep corpus.
    #[arg(long = "N", global = true, value_parser = clap::value_parser!(u64).range(1..=5))]
    points: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Records)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Human,
    Records,
}

impl Flags {
    fn bounds(&self) -> Bounds {
        Bounds {
            resolution: self.resolution,
            p_max: self.p_max.map(|v| v as usize),
            a_max: self.a_max,
            n_max: self.n_max,
            horizon: self.horizon.map(|v| v as usize),
            samples: self.samples,
            seed: self.seed,
            points: self.points.map(|v| v as usize),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.flags.format {
        FormatArg::Human => Format::Human,
        FormatArg::Records => Format::Records,
    };
    let bounds = cli.flags.bounds();
    let report = match &cli.command {
        Command::Run { config } => {
            let src = match std::fs::read_to_string(config) {
                Ok(src) => src,
                Err(e) => {
                    eprintln!("{}: {e}", config.display());
                    return ExitCode::from(1);
                }
            };
            match ExperimentConfig::parse(&src) {
                Ok(cfg) => run(&cfg, &bounds),
                Err(e) => {
                    eprintln!("{}:{e}", config.display());
                    return ExitCode::from(1);
                }
            }
        }
        Command::PaperExamples => paper_examples(),
        Command::Theorems { theorem } => theorems(&bounds, *theorem),
    };
    print!("{}", report.render(format));
    ExitCode::from(report.exit_code() as u8)
}
