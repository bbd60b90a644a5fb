use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use wsne_core::io::GameKind;
use wsne_core::rational::parse_rational;
use wsne_core::ws::DEFAULT_PAIR_BUDGET;
use wsne_core::Rational;

mod commands;

/// Exact solvers and verifiers for well-supported Nash equilibria.
#[derive(Parser, Debug)]
#[command(name = "wsne", version)]
struct Cli {
    /// Append decimal approximations to exact rational output.
    #[arg(long, global = true)]
    decimal: bool,

    #[command(subcommand)]
    command: Command,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s)
}

#[derive(Subcommand, Debug)]
pub(crate) enum Command {
    /// Print the support size ceil(2 ln(1/delta) / delta^2).
    Kappa {
        #[arg(long, value_parser = rational)]
        delta: Rational,
    },
    /// Compute a (1/2 + delta)-WSNE of a symmetric game.
    Solve {
        game: PathBuf,
        #[arg(long, value_parser = rational)]
        delta: Rational,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Maximum number of multiset pairs the WS search may cover.
        #[arg(long, default_value_t = DEFAULT_PAIR_BUDGET)]
        budget: u64,
    },
    /// Report the regrets of a profile; exit 0 iff epsilon_wsne <= EPSILON.
    Verify {
        game: PathBuf,
        #[arg(long)]
        profile: PathBuf,
        #[arg(long, value_parser = rational, default_value = "1")]
        epsilon: Rational,
    },
    /// Decide whether some profile prevents exceeding the given payoffs.
    Pe {
        game: PathBuf,
        #[arg(long, value_parser = rational)]
        u: Rational,
        /// Solve the two-sided system over (x, y) instead of the symmetric one.
        #[arg(long, requires = "v")]
        two_sided: bool,
        #[arg(long, value_parser = rational, requires = "two_sided")]
        v: Option<Rational>,
    },
    /// Exhaustive search for multisets that well support (v - delta, u - delta).
    WsSearch {
        game: PathBuf,
        #[arg(long, value_parser = rational)]
        v: Rational,
        #[arg(long, value_parser = rational)]
        u: Rational,
        #[arg(long, value_parser = rational)]
        delta: Rational,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = DEFAULT_PAIR_BUDGET)]
        budget: u64,
    },
    /// Sample small-support profiles around an exact equilibrium.
    Sample {
        game: PathBuf,
        #[arg(long, value_parser = rational)]
        delta: Rational,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = wsne_core::oracle::DEFAULT_MAX_N)]
        max_n: usize,
    },
    /// List exact Nash equilibria found by support enumeration.
    Oracle {
        game: PathBuf,
        #[arg(long, default_value_t = wsne_core::oracle::DEFAULT_MAX_N)]
        max_n: usize,
    },
    /// Emit a seeded random game file.
    Gen {
        #[arg(long)]
        kind: GameKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        symmetric: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { commands::EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut out = String::new();
    let code = commands::run(cli.command, cli.decimal, &mut out);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
    let _ = stdout.flush();
    ExitCode::from(code)
}
