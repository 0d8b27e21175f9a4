//! `pinned`: ring inspection, verification suites and sweeps over finite chain rings.

mod commands;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pinned_core::Error;
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "pinned",
    version,
    about = "Pinned distances over finite chain rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print q, r, order, uniformizer and unit count of a ring.
    RingInfo {
        #[arg(long)]
        ring: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check max_u |Δ_u(E)| >= |E|^3 / N(E) for E = A×A or random E ⊂ R^2.
    VerifyLemma(SubsetArgs),
    /// Build the point/plane configuration of A and check the incidence bound.
    VerifyIncidence(SubsetArgs),
    /// Measure max_u |Δ_u(A×A)| against min(q^r, |A|^3 / q^(2r-1)).
    VerifyTheorem(SubsetArgs),
    /// Run the pinned-distance measurement over many subsets.
    Sweep(SweepArgs),
    /// Run the built-in invariant suite on the desk-scale ring list.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args, Debug)]
struct SubsetArgs {
    #[arg(long)]
    ring: String,
    /// Comma-separated elements (bracket multi-component ones) or `all`.
    #[arg(long, conflicts_with = "size")]
    set: Option<String>,
    /// Size of each random sample.
    #[arg(long, required_unless_present = "set", requires = "seed")]
    size: Option<usize>,
    #[arg(long, requires = "size")]
    trials: Option<usize>,
    #[arg(long, requires = "size")]
    seed: Option<u64>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, required = true)]
    ring: Vec<String>,
    /// Subset sizes to visit (default: all sizes).
    #[arg(long)]
    size: Vec<usize>,
    /// Trials per (ring, size); selects sampled mode.
    #[arg(long, requires = "seed")]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Largest ring order allowed in exhaustive mode.
    #[arg(long)]
    exhaustive_cap: Option<u64>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Cap on worker threads (output does not depend on it).
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Human,
}

/// What was asked for, minus the knobs that must not change the output.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Invocation {
    pub command: &'static str,
    pub rings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub set: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sizes: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exhaustive_cap: Option<u64>,
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Capacity(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (inv, out) = invocation(&cli.command);

    let pool = match out.workers {
        Some(0) => {
            eprintln!("error: cannot parse `0`: --workers must be at least 1");
            return ExitCode::from(2);
        }
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    };
    let pool = match pool {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(2);
        }
    };

    let outcome = match pool.install(|| commands::run(&inv)) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };

    let text = render::render(out.format, &inv, &outcome);
    let written = match &out.out {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    for f in &outcome.failures {
        eprintln!("FAIL {}: {}", f.check, f.counterexample);
        eprintln!("  reproduce: {}", f.reproduce);
    }
    if outcome.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn invocation(cmd: &Command) -> (Invocation, &OutputArgs) {
    let subset = |name: &'static str, a: &SubsetArgs| Invocation {
        command: name,
        rings: vec![a.ring.clone()],
        set: a.set.clone(),
        sizes: a.size.into_iter().collect(),
        trials: a.size.map(|_| a.trials.unwrap_or(1)),
        seed: a.seed,
        exhaustive_cap: None,
    };
    match cmd {
        Command::RingInfo { ring, out } => (
            Invocation {
                command: "ring-info",
                rings: vec![ring.clone()],
                ..Default::default()
            },
            out,
        ),
        Command::VerifyLemma(a) => (subset("verify-lemma", a), &a.out),
        Command::VerifyIncidence(a) => (subset("verify-incidence", a), &a.out),
        Command::VerifyTheorem(a) => (subset("verify-theorem", a), &a.out),
        Command::Sweep(a) => (
            Invocation {
                command: "sweep",
                rings: a.ring.clone(),
                set: None,
                sizes: a.size.clone(),
                trials: a.trials,
                seed: a.seed,
                exhaustive_cap: a.exhaustive_cap,
            },
            &a.out,
        ),
        Command::Selftest { seed, out } => (
            Invocation {
                command: "selftest",
                seed: Some(*seed),
                ..Default::default()
            },
            out,
        ),
    }
}
