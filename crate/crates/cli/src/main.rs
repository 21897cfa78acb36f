mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use commands::Output;

/// Exact p-deficiency computations for finitely presented groups.
#[derive(Parser, Debug)]
#[command(name = "pdef", version)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Also write the JSON result to this file.
    #[arg(short = 'o', long = "output", global = true, value_name = "FILE")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct PrimeArg {
    /// The prime p.
    #[arg(short = 'p', long = "prime", default_value_t = 2)]
    prime: u64,
}

#[derive(Args, Debug, Clone)]
struct QuotientArgs {
    /// Generator images in cycle notation, e.g. "x:(1 2),y:(1 2 3 4 5)".
    #[arg(long, conflicts_with = "hom_cyclic")]
    quotient: Option<String>,

    /// Map to C_q: the order q followed by comma-separated exponents.
    #[arg(long, num_args = 2, value_names = ["Q", "EXPONENTS"])]
    hom_cyclic: Option<Vec<String>>,

    /// Largest image group accepted when closing the generator images.
    #[arg(long, default_value_t = 5040)]
    max_image: usize,
}

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    /// Largest catalog group order searched.
    #[arg(long, default_value_t = 24)]
    max_order: usize,

    /// Cap on generator-image assignments examined.
    #[arg(long, default_value_t = 1_000_000)]
    max_assignments: u64,

    /// Catalog manifest replacing the built-in groups.
    #[arg(long, value_name = "FILE")]
    catalog: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// p-deficiency of a presentation with the abelian upper bound.
    Def {
        presentation: String,
        #[command(flatten)]
        p: PrimeArg,
    },
    /// Abelian invariants, abelian p-deficiency and d_p.
    Abdef {
        presentation: String,
        #[command(flatten)]
        p: PrimeArg,
    },
    /// Kernel presentation of a finite quotient and the supermultiplicity check.
    Subgroup {
        presentation: String,
        #[command(flatten)]
        quotient: QuotientArgs,
        #[command(flatten)]
        p: PrimeArg,
    },
    /// Relator-by-relator p-size bound for a kernel.
    Psize {
        presentation: String,
        #[command(flatten)]
        quotient: QuotientArgs,
        #[command(flatten)]
        p: PrimeArg,
    },
    /// Volume, deficiency bounds and case of a Fuchsian signature such as "(0; 6,12,12)".
    Fuchsian {
        signature: String,
        #[command(flatten)]
        p: PrimeArg,
    },
    /// Signature of a finite-index subgroup, from a case construction or explicit permutations.
    Singerman {
        signature: String,
        /// Use the standard construction for this case (a, b, c or d).
        #[arg(long, conflicts_with = "perms")]
        case: Option<char>,
        /// Degree of the permutation action given by --perm.
        #[arg(long, requires = "perms")]
        degree: Option<usize>,
        /// One permutation per standard generator, in order x1.., u1, v1, ...
        #[arg(long = "perm", value_name = "PERM")]
        perms: Vec<String>,
        #[command(flatten)]
        p: PrimeArg,
    },
    /// Lower bound for -chi_p from kernels of catalog quotients.
    Chi {
        presentation: String,
        #[command(flatten)]
        p: PrimeArg,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// d_p(kernel)/index over the kernels examined.
    Gradient {
        presentation: String,
        #[command(flatten)]
        p: PrimeArg,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Search for a kernel of positive p-deficiency certified by a surviving relator root.
    Witness {
        presentation: String,
        #[command(flatten)]
        p: PrimeArg,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Run the reference checks and report one line per criterion.
    Verify {
        /// Run only the criterion with this id (repeatable).
        #[arg(long = "only", value_name = "ID")]
        only: Vec<String>,
    },
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Def { presentation, p } => commands::def(presentation, p.prime),
        Command::Abdef { presentation, p } => commands::abdef(presentation, p.prime),
        Command::Subgroup { presentation, quotient, p } => {
            let (pres, q) = commands::presentation_and_quotient(presentation, quotient)?;
            commands::subgroup(&pres, &q, p.prime)
        }
        Command::Psize { presentation, quotient, p } => {
            let (pres, q) = commands::presentation_and_quotient(presentation, quotient)?;
            commands::psize(&pres, &q, p.prime)
        }
        Command::Fuchsian { signature, p } => commands::fuchsian(signature, p.prime),
        Command::Singerman { signature, case, degree, perms, p } => {
            commands::singerman(signature, *case, *degree, perms, p.prime)
        }
        Command::Chi { presentation, p, search } => commands::chi(presentation, p.prime, search),
        Command::Gradient { presentation, p, search } => {
            commands::gradient(presentation, p.prime, search)
        }
        Command::Witness { presentation, p, search } => {
            commands::witness(presentation, p.prime, search)
        }
        Command::Verify { only } => commands::verify(only),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|out| emit(&cli, out)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, out: Output) -> Result<bool> {
    let json = serde_json::to_string_pretty(&out.json)?;
    let shown = if cli.json { format!("{json}\n") } else { out.text };
    let mut stdout = std::io::stdout().lock();
    match stdout.write_all(shown.as_bytes()).and_then(|()| stdout.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
        _ => {}
    }
    if let Some(path) = &cli.output {
        std::fs::write(path, format!("{json}\n"))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(out.ok)
}
