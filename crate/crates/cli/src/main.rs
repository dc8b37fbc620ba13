use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{ArgGroup, Args, Parser, Subcommand};

mod commands;
mod config;

use config::Settings;

/// Build coding permutations and semilinear maps, decode them, and run the
/// acceptance and property suites.
#[derive(Parser, Debug)]
#[command(name = "symcode", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Args, Debug)]
struct Flags {
    /// Expression in the permutation language.
    #[arg(long, global = true)]
    expr: Option<String>,
    /// Window size N, covering the points 0..N.
    #[arg(long, global = true, value_name = "N")]
    window: Option<u64>,
    /// Enumeration horizon for c.e. sets.
    #[arg(long, global = true, value_name = "N")]
    horizon: Option<u64>,
    /// Number of construction stages for Pi-0-2 predicates.
    #[arg(long, global = true, value_name = "N")]
    stages: Option<u64>,
    /// Two-cycle count taken as evidence of infinitely many.
    #[arg(long, global = true, value_name = "N")]
    threshold: Option<u64>,
    /// Decode the columns n < N.
    #[arg(long, global = true, value_name = "N")]
    n: Option<u64>,
    /// c.e. set: evens, empty, primes25, or @file of `t n` lines.
    #[arg(long, global = true, value_name = "NAME|@file")]
    set: Option<String>,
    /// Predicate: always, never, lt, even, or @file of `n t 0|1` lines.
    #[arg(long, global = true, value_name = "NAME|@file")]
    pred: Option<String>,
    /// Field: Q, GF<p> for a prime p up to 97, or GF4.
    #[arg(long, global = true, value_name = "NAME")]
    field: Option<String>,
    /// Lift target for `pipeline`: gsl or ba.
    #[arg(long, global = true, value_name = "gsl|ba")]
    target: Option<String>,
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// One `key=value` record per line.
    #[arg(long, global = true)]
    machine: bool,
    /// File of `key=value` defaults; flags take precedence.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate, tabulate, profile or classify a permutation expression.
    #[command(group(ArgGroup::new("action").required(true)))]
    Perm {
        #[arg(long, group = "action", value_name = "X")]
        eval: Option<u64>,
        #[arg(long, group = "action", value_name = "N")]
        image: Option<u64>,
        #[arg(long, group = "action", value_name = "N")]
        profile: Option<u64>,
        #[arg(long, group = "action", value_name = "N")]
        classify: Option<u64>,
    },
    /// Decode membership in a c.e. set from commutators in Sym(ω).
    Code2,
    /// Decode a Pi-0-2 predicate from the two-cycles of b·b^{p_n}.
    Code3,
    /// Lift a permutation into GSL and check property (D).
    Gsl,
    /// Lift a permutation into Aut(B_η) and check the supremum test.
    Ba,
    /// Decode a c.e. set through GSL or B_η only.
    Pipeline,
    /// Run a built-in suite: acceptance or properties.
    Suite { name: String },
}

fn settings(flags: Flags) -> Result<Settings> {
    let cli = Settings {
        window: flags.window,
        horizon: flags.horizon,
        stages: flags.stages,
        threshold: flags.threshold,
        n: flags.n,
        set: flags.set,
        pred: flags.pred,
        field: flags.field,
        target: flags.target,
        expr: flags.expr,
        seed: flags.seed,
        out: flags.out,
        machine: flags.machine,
    };
    let file = match &flags.config {
        Some(p) => Settings::load(p)?,
        None => Settings::default(),
    };
    let s = cli.over(file);
    s.check_bounds()?;
    Ok(s)
}

fn run(cli: Cli) -> Result<bool> {
    let s = settings(cli.flags)?;
    let report = match cli.command {
        Command::Perm {
            eval,
            image,
            profile,
            classify,
        } => {
            let action = match (eval, image, profile, classify) {
                (Some(x), ..) => commands::PermAction::Eval(x),
                (_, Some(n), ..) => commands::PermAction::Image(n),
                (_, _, Some(n), _) => commands::PermAction::Profile(n),
                (.., Some(n)) => commands::PermAction::Classify(n),
                _ => unreachable!("clap requires one action"),
            };
            commands::perm(&s, action)?
        }
        Command::Code2 => commands::code2(&s)?,
        Command::Code3 => commands::code3(&s)?,
        Command::Gsl => commands::gsl(&s)?,
        Command::Ba => commands::ba(&s)?,
        Command::Pipeline => commands::pipeline(&s)?,
        Command::Suite { name } => commands::suite(&s, &name)?,
    };
    let text = if s.machine {
        report.render_machine()
    } else {
        report.render_text()
    };
    match &s.out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(report.all_passed())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
