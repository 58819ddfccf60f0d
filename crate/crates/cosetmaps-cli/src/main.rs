use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cosetmaps::engine::{DEFAULT_BUDGET, DEFAULT_THRESHOLD};
use cosetmaps_cli::{cmd_field, cmd_oracle, cmd_power, cmd_sweep, cmd_word, FieldCommand, Format, Mode, RunConfig};

/// Decide multiplicity-bounding properties of words through coset word maps
/// over PSL2(q) and Suzuki groups.
#[derive(Parser)]
#[command(name = "cosetmaps", version)]
struct Cli {
    /// Seed for field choices and witness sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random points tried per coset assignment before giving up.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET as u64, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    /// Largest domain size checked exhaustively for constancy.
    #[arg(long, global = true, default_value_t = DEFAULT_THRESHOLD)]
    threshold: u64,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether the power word x^e is multiplicity bounding.
    Power {
        #[arg(allow_negative_numbers = true)]
        e: i64,
    },
    /// Decide a word, e.g. "abAB" or "a^2 b^-3".
    Word {
        #[arg(allow_hyphen_values = true)]
        text: String,
        #[arg(long, value_enum, default_value_t = Mode::Vsmb)]
        mode: Mode,
    },
    /// Certify all words up to the given length (at most 8).
    Sweep {
        l: usize,
        /// Earlier JSON-lines report whose word verdicts are reused.
        #[arg(long)]
        resume: Option<PathBuf>,
    },
    /// Run brute-force verification suites ("all" for every suite).
    Oracle { name: String },
    /// Find or verify defining polynomials of finite fields.
    Field {
        #[command(subcommand)]
        sub: FieldCmd,
    },
}

#[derive(Subcommand)]
enum FieldCmd {
    /// Seeded random monic irreducible polynomial.
    FindIrreducible { p: u64, k: usize },
    /// Seeded random primitive polynomial (p^k must fit in 64 bits).
    FindPrimitive { p: u64, k: usize },
    /// Check a polynomial given as comma-separated coefficients, constant term first.
    Verify { p: u64, k: usize, coeffs: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = RunConfig {
        seed: cli.seed,
        budget: cli.budget as usize,
        threshold: cli.threshold,
        jobs: cli.jobs as usize,
        format: if cli.json { Format::Json } else { Format::Text },
    };
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    let code = match &cli.cmd {
        Cmd::Power { e } => cmd_power(*e, &cfg, &mut out, &mut err),
        Cmd::Word { text, mode } => cmd_word(text, *mode, &cfg, &mut out, &mut err),
        Cmd::Sweep { l, resume } => cmd_sweep(*l, resume.as_deref(), &cfg, &mut out, &mut err),
        Cmd::Oracle { name } => cmd_oracle(name, &cfg, &mut out, &mut err),
        Cmd::Field { sub } => {
            let sub = match sub {
                FieldCmd::FindIrreducible { p, k } => FieldCommand::FindIrreducible { p: *p, k: *k },
                FieldCmd::FindPrimitive { p, k } => FieldCommand::FindPrimitive { p: *p, k: *k },
                FieldCmd::Verify { p, k, coeffs } => FieldCommand::Verify { p: *p, k: *k, coeffs: coeffs.clone() },
            };
            cmd_field(&sub, &cfg, &mut out, &mut err)
        }
    };
    ExitCode::from(code as u8)
}
