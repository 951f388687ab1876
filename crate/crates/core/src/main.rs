use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kloosha::cli::{parse_gammas, parse_levels, run, Command, Fault, Format, RunConfig};

#[derive(Parser)]
#[command(name = "kloosha", version, about = "Checks for the curves y^2 = x^3 + (t^(q^a) - t) x^2 + gamma x over F_q(t)")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Discriminant, j-invariant, bad reduction, torsion and heights.
    Invariants(Opts),
    /// Closed-form L-polynomial, functional equation, slopes and roots.
    Lpoly(Opts),
    /// Closed form against both brute-force oracles.
    Verify(Opts),
    /// Central value and the order of the Tate-Shafarevich group.
    Sha(Opts),
    /// Kloosterman angle statistics.
    Angles(Opts),
    /// Sha, angles and L-polynomial checks over the whole grid.
    Sweep(Opts),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    CorruptCoefficient,
}

#[derive(Args)]
struct Opts {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    f: u32,
    /// Coefficients of a monic degree-f modulus, lowest first, comma separated.
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
    /// `all`, or a comma list of packed indices or c0:c1:... coefficient vectors.
    #[arg(long, default_value = "all")]
    gamma: String,
    /// A level, a range such as 1..8, or a comma list.
    #[arg(long, default_value = "1")]
    a: String,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long, default_value_t = kloosha::DEFAULT_BUDGET)]
    budget: f64,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, hide = true)]
    inject_fault: Option<FaultArg>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, o) = match cli.command {
        Sub::Invariants(o) => (Command::Invariants, o),
        Sub::Lpoly(o) => (Command::Lpoly, o),
        Sub::Verify(o) => (Command::Verify, o),
        Sub::Sha(o) => (Command::Sha, o),
        Sub::Angles(o) => (Command::Angles, o),
        Sub::Sweep(o) => (Command::Sweep, o),
    };
    let parsed = parse_gammas(&o.gamma).and_then(|g| parse_levels(&o.a).map(|a| (g, a)));
    let (gammas, a_list) = match parsed {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cfg = RunConfig {
        p: o.p,
        f: o.f,
        modulus: o.modulus,
        gammas,
        a_list,
        n_max: o.n_max,
        budget: o.budget,
        command,
        format: match o.format {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        },
        out: o.out,
        workers: o.workers,
        fault: o.inject_fault.map(|FaultArg::CorruptCoefficient| Fault::CorruptCoefficient),
    };
    let outcome = run(&cfg);
    match (&cfg.out, outcome.exit_code) {
        (Some(path), 0 | 1) => {
            if let Err(e) = std::fs::write(path, &outcome.output) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        (_, 2) => eprint!("{}", outcome.output),
        _ => print!("{}", outcome.output),
    }
    ExitCode::from(outcome.exit_code as u8)
}
