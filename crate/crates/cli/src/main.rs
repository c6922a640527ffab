mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use acp_core::multipliers::{EngineConfig, DEFAULT_DEPTH, DEFAULT_WINDOW};
use acp_core::Exponent;
use clap::{Parser, ValueEnum};

use commands::{Run, UsageError};
use output::Format;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Command {
    /// |||f||| = ||f'||_p with membership report and dominant order
    Norm,
    /// Membership of f in AC_p, with a table over common exponents
    Membership,
    /// Decide whether g -> mg maps AC_r into AC_p
    Verdict,
    /// Dyadic block norms of m', weighted terms and partial sums
    Profile,
    /// Approximate identity defects for alpha = 2^-1 .. 2^-20
    Aid,
    /// Rerun a canonical experiment: ex1, ex2, aid or hardy
    Reproduce,
    /// Test m g in AC_p for one witness g' in L^r
    DirectCheck,
}

/// Norms, membership and multiplier verdicts for the algebras AC_p of
/// absolutely continuous functions on [0, 1].
///
/// Expressions are sums of terms `c*t^a*L^b` with `L = 1 - ln t`, plus
/// `ealpha(x)` and `piece [0, x]: ...; [x, 1]: ...`. Several words are joined
/// with spaces.
///
/// Exit codes: 0 success or Multiplier, 1 reproduce mismatch, 2 usage or
/// parse error (no report), 3 not a member, 10 NotMultiplier or NotMember,
/// 11 Inconclusive.
#[derive(Debug, Parser)]
#[command(name = "acp", version)]
struct Cli {
    command: Command,

    /// Target exponent p (`inf` allowed)
    #[arg(long, default_value = "2", value_parser = parse_exponent)]
    p: Exponent,

    /// Domain exponent r (`inf` allowed)
    #[arg(long, value_parser = parse_exponent)]
    r: Option<Exponent>,

    /// Read the expression as f' instead of f
    #[arg(long)]
    deriv: bool,

    /// Number of dyadic blocks
    #[arg(long, default_value_t = DEFAULT_DEPTH)]
    depth: usize,

    /// Smallest j of the growth fit window eps = 2^-j
    #[arg(long, default_value_t = DEFAULT_WINDOW.0)]
    window_min: u32,

    /// Largest j of the growth fit window
    #[arg(long, default_value_t = DEFAULT_WINDOW.1)]
    window_max: u32,

    /// Witness g' for direct-check (default t^(-1/r) L^(-2/r))
    #[arg(long)]
    witness: Option<String>,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the report here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,

    /// Expression; put it after `--` when it starts with a minus sign
    #[arg(required = true, num_args = 1..)]
    expr: Vec<String>,
}

fn parse_exponent(s: &str) -> Result<Exponent, String> {
    s.parse::<Exponent>().map_err(|e| e.to_string())
}

fn run(cli: &Cli) -> Result<commands::Emitted, UsageError> {
    if cli.depth < 4 {
        return Err(UsageError(format!("--depth must be at least 4, got {}", cli.depth)));
    }
    if cli.window_min == 0 || cli.window_min >= cli.window_max {
        return Err(UsageError(format!(
            "fit window needs 1 <= min < max, got {}..{}",
            cli.window_min, cli.window_max
        )));
    }
    let engine = EngineConfig {
        depth: cli.depth,
        window: (cli.window_min, cli.window_max),
    };
    engine.validate()?;
    let run = Run {
        p: cli.p,
        r: cli.r,
        deriv: cli.deriv,
        engine,
        format: cli.format,
        expr: cli.expr.join(" "),
        witness: cli.witness.clone(),
    };
    match cli.command {
        Command::Norm => commands::norm(&run),
        Command::Membership => commands::membership_cmd(&run),
        Command::Verdict => commands::verdict(&run),
        Command::Profile => commands::profile(&run),
        Command::Aid => commands::aid(&run),
        Command::Reproduce => commands::reproduce(&run),
        Command::DirectCheck => commands::direct(&run),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let emitted = match run(&cli) {
        Ok(e) => e,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &emitted.body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", emitted.body),
    }
    ExitCode::from(emitted.code as u8)
}
