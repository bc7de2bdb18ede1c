use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(
    name = "permcong",
    version,
    about = "Congruences of the weak order, quotient Hopf algebras and quotient fans"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for parallel scans (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Seed for sampled checks.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    H,
    Tr,
}

/// How to name a family: a registered name or an explicit generator list.
#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    /// Named family: tamari, descent, twisted-baxter, "snk K", "pnk K", trivial, full.
    #[arg(long, global = true, conflicts_with = "generators")]
    family: Option<String>,

    /// Comma separated untranslated join-irreducibles, e.g. 2413,3412.
    #[arg(long, global = true)]
    generators: Option<String>,

    /// Family type for --generators.
    #[arg(long, global = true, value_enum, default_value_t = Kind::H)]
    kind: Kind,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count class bottoms for each n in a range.
    Count {
        #[command(flatten)]
        family: FamilyArgs,
        /// Family name, as an alternative to --family.
        #[arg(value_name = "FAMILY", conflicts_with_all = ["family", "generators"])]
        name: Option<String>,
        /// Inclusive range such as 1..8, or a single n.
        #[arg(long, value_name = "A..B", conflicts_with = "n")]
        range: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        /// Range given positionally.
        #[arg(value_name = "RANGE", conflicts_with_all = ["range", "n"])]
        positional_range: Option<String>,
    },
    /// List the class bottoms of S_n.
    Bottoms {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n: usize,
    },
    /// Print the quotient poset on class bottoms.
    Quotient {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n: usize,
    },
    /// Hopf operations in the Malvenuto-Reutenauer algebra or, with a
    /// family, in its quotient on class bottoms.
    Hopf {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(subcommand)]
        op: HopfOp,
    },
    /// Quotient fan export or verification.
    Fan {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n: usize,
        #[arg(value_enum)]
        what: FanWhat,
    },
    /// Run the acceptance suite; exits nonzero on any failure.
    Accept {
        #[arg(value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
}

#[derive(Subcommand, Debug)]
pub enum HopfOp {
    Product {
        u: String,
        v: String,
    },
    Coproduct {
        x: String,
    },
    Antipode {
        x: String,
    },
    /// Check the Hopf axioms (and, for a quotient, the embedding) up to a degree.
    Check {
        #[arg(long, default_value_t = 4)]
        degree: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FanWhat {
    Export,
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    All,
    Lattice,
    Hopf,
    Fan,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let ctx = commands::Context {
        format: cli.format,
        seed: cli.seed,
    };
    let result = match cli.command {
        Command::Count {
            family,
            name,
            range,
            n,
            positional_range,
        } => {
            let family = match name {
                Some(name) => FamilyArgs {
                    family: Some(name),
                    ..family
                },
                None => family,
            };
            commands::count(&ctx, &family, range.or(positional_range).as_deref(), n)
        }
        Command::Bottoms { family, n } => commands::bottoms(&ctx, &family, n),
        Command::Quotient { family, n } => commands::quotient(&ctx, &family, n),
        Command::Hopf { family, op } => commands::hopf(&ctx, &family, &op),
        Command::Fan { family, n, what } => commands::fan(&ctx, &family, n, what),
        Command::Accept { suite } => commands::accept(&ctx, suite),
    };
    match result {
        Ok(out) => {
            let text = if out.text.ends_with('\n') {
                out.text
            } else {
                out.text + "\n"
            };
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &text).map_err(anyhow::Error::from),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
