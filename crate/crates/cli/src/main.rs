use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use platjones_cli::{
    cmd_eval, cmd_oracle, cmd_prob, cmd_verify, parse_flips, parse_window, Failure, RunConfig, VerifySource,
    DEFAULT_MAX_CROSSINGS,
};

/// Jones polynomials of plat-closed braids.
#[derive(Parser)]
#[command(name = "platjones", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reconstruct the Jones polynomial from plat matrix elements.
    Eval {
        file: PathBuf,
        #[command(flatten)]
        opts: Opts,
    },
    /// Replay the word as a circuit and report P_K at θ = 2π/r.
    Prob {
        file: PathBuf,
        #[command(flatten)]
        opts: Opts,
    },
    /// Exact Jones polynomial from the Kauffman bracket.
    Oracle {
        file: PathBuf,
        #[command(flatten)]
        opts: Opts,
    },
    /// Cross-check evaluator, oracle and simulator on a corpus or random words.
    Verify {
        /// Directory of `.braid` files.
        corpus: Option<PathBuf>,
        /// Check N seeded random words instead of a corpus.
        #[arg(long, value_name = "N", conflicts_with = "corpus")]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Clone)]
struct Flips(Vec<bool>);

#[derive(Args)]
struct Opts {
    /// Deformation phase, q = e^{iθ}.
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<f64>,
    /// Sets θ = 2π/r.
    #[arg(long, value_name = "R")]
    root_order: Option<u32>,
    /// Sample grid size for the fit (default max(64, 2·window width + 16)).
    #[arg(long)]
    samples: Option<usize>,
    /// Fit window in x = q^{1/2} exponents, MIN,MAX.
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    window: Option<(i32, i32)>,
    /// Cup flips, one bit per cup; overrides the file.
    #[arg(long, value_name = "BITS", value_parser = |s: &str| parse_flips(s).map(Flips))]
    flips: Option<Flips>,
    #[arg(long, default_value_t = platjones::qnum::DEFAULT_FIT_TOLERANCE)]
    tolerance: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_CROSSINGS)]
    max_crossings: usize,
    #[arg(long)]
    json: bool,
}

impl Opts {
    fn config(&self) -> RunConfig {
        RunConfig {
            tolerance: self.tolerance,
            samples: self.samples,
            root_order: self.root_order,
            theta: self.theta,
            window: self.window,
            flips: self.flips.as_ref().map(|f| f.0.clone()),
            max_crossings: self.max_crossings,
            json: self.json,
        }
    }
}

fn run(cli: Cli) -> Result<(String, bool), Failure> {
    match cli.command {
        Command::Eval { file, opts } => cmd_eval(&file, &opts.config()).map(|s| (s, true)),
        Command::Prob { file, opts } => cmd_prob(&file, &opts.config()).map(|s| (s, true)),
        Command::Oracle { file, opts } => cmd_oracle(&file, &opts.config()).map(|s| (s, true)),
        Command::Verify {
            corpus,
            random,
            seed,
            opts,
        } => {
            let source = match (corpus, random) {
                (_, Some(count)) => VerifySource::Random { count, seed },
                (Some(dir), None) => VerifySource::Corpus(dir),
                (None, None) => return Err(Failure { code: 2, message: "give a corpus directory or --random N".into() }),
            };
            cmd_verify(&source, &opts.config())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code as u8)
        }
    }
}
