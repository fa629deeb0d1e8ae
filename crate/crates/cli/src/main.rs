//! `stablecat` command-line front end.

mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use report::{CliError, Format};

#[derive(Parser, Debug)]
#[command(name = "stablecat", version, about = "Homological algebra over finite-dimensional algebras over F_p")]
struct Cli {
    /// Output format; `tsv` is available for degree-indexed dimension tables.
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum DirectionArg {
    Proj,
    Inj,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(clap::Args, Debug, Clone)]
pub struct WindowArgs {
    /// Prime for built-in counterexamples.
    #[arg(long, default_value_t = 2)]
    pub p: u64,
    /// Window height for built-in counterexamples.
    #[arg(long, default_value_t = 4)]
    pub depth: usize,
    /// Top-rank multiplier for built-in counterexamples.
    #[arg(long, default_value_t = 1)]
    pub base: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimal projective or injective resolution of a module.
    Resolve {
        ring: String,
        /// `builtin:NAME`, a bare builtin name (k, R, J, m) or a module JSON file.
        module: String,
        #[arg(long, default_value_t = 3)]
        length: usize,
        #[arg(long, value_enum, default_value = "proj")]
        direction: DirectionArg,
        #[arg(long, value_enum, default_value = "left")]
        side: SideArg,
    },
    /// Dimensions of Ext^n(M, N) for left modules.
    Ext {
        ring: String,
        m: String,
        n: String,
        /// Inclusive range `a..b`.
        #[arg(long, default_value = "0..3", allow_hyphen_values = true)]
        degrees: String,
    },
    /// Dimensions of Tor_n(M, N) for a right module M and a left module N.
    Tor {
        ring: String,
        m: String,
        n: String,
        #[arg(long, default_value = "0..3", allow_hyphen_values = true)]
        degrees: String,
    },
    /// Stable hom-set modulo maps factoring through projectives or injectives.
    StableHom {
        ring: String,
        m: String,
        n: String,
        #[arg(long, value_enum, default_value = "proj")]
        variant: DirectionArg,
    },
    /// Tate cohomology of Z/p^e with F_p coefficients.
    Tate {
        p: u64,
        e: u32,
        #[arg(long, default_value = "-4..4", allow_hyphen_values = true)]
        range: String,
    },
    /// Builds and classifies one of the four explicit complexes.
    Counterexample {
        /// inj-exact-not-total, inj-acyclic-not-exact, proj-exact-not-firm or proj-firm-not-exact
        name: String,
        #[command(flatten)]
        window: WindowArgs,
        /// Include the complex itself in the report.
        #[arg(long)]
        emit_complex: bool,
    },
    /// Classifies a complex of injectives or projectives read from a JSON file.
    Classify { complex: String },
    /// Compares exactness of M (x) C with Hom(C, dual M) over the builtin modules.
    DualityCheck {
        /// Counterexample name or complex JSON file.
        complex: String,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Generator counts of the first two syzygies of k over local_sq_zero(n, p).
    FpProbe {
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value = "1..4")]
        n_range: String,
    },
    /// Filtration of a complex of projectives by subcomplexes with exact A (x) -.
    Filtration {
        /// Counterexample name or tagged complex JSON file.
        complex: String,
        /// Right module A: builtin name or module JSON file.
        #[arg(long = "A", default_value = "J")]
        a: String,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Runs the standard reproduction checks and reports them together.
    Suite {
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
}

fn run(cli: Cli) -> Result<report::Report, CliError> {
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let echo = echo.join(" ");
    match cli.command {
        Command::Resolve {
            ring,
            module,
            length,
            direction,
            side,
        } => commands::resolve(echo, &ring, &module, length, direction, side),
        Command::Ext { ring, m, n, degrees } => commands::ext(echo, &ring, &m, &n, &degrees),
        Command::Tor { ring, m, n, degrees } => commands::tor(echo, &ring, &m, &n, &degrees),
        Command::StableHom { ring, m, n, variant } => commands::stable_hom(echo, &ring, &m, &n, variant),
        Command::Tate { p, e, range } => commands::tate(echo, p, e, &range),
        Command::Counterexample {
            name,
            window,
            emit_complex,
        } => commands::counterexample(echo, &name, &window, emit_complex),
        Command::Classify { complex } => commands::classify(echo, &complex),
        Command::DualityCheck { complex, window } => commands::duality_check(echo, &complex, &window),
        Command::FpProbe { p, n_range } => commands::fp_probe(echo, p, &n_range),
        Command::Filtration { complex, a, window } => commands::filtration(echo, &complex, &a, &window),
        Command::Suite { p, depth } => commands::suite(echo, p, depth),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli).and_then(|r| Ok((r.render(format)?, r.inconsistency))) {
        Ok((text, inconsistency)) => {
            // A closed pipe downstream is not an error of ours.
            let _ = writeln!(std::io::stdout(), "{text}");
            match inconsistency {
                Some(msg) => {
                    eprintln!("error: internal inconsistency: {msg}");
                    ExitCode::from(4)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
