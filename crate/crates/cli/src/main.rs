//! `cmlab`: command-line front end for cm-type-lab.
//!
//! Exit status is 0 on success, 1 on a mathematical negative (a failed
//! verification, a decomposable module, a tuple that does not extend, ...)
//! and 2 on usage or input errors.

mod commands;
mod corpus;
mod inputs;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{CatalogOptions, EndmOptions, Globals};
use report::{Report, UsageError, EXIT_USAGE};

/// Rings of bounded Cohen-Macaulay type: invariants, classification,
/// module catalog and descent calculus.
///
/// Rings are written `QQ[[x,y]]/(x*y^2)` (or `GF(p)[[...]]/(...)`); `T` and
/// `E` abbreviate k[[x,y]]/(xy^2) and k[[x,y,z]]/(xy, yz, z^2). Modules over
/// `T` may be catalog descriptions such as `gamma:2+x+free:1`; otherwise a
/// module is a presentation matrix with rows separated by `;`, e.g. `x, y; 0, x`.
#[derive(Debug, Parser)]
#[command(name = "cmlab", version)]
struct Cli {
    /// Truncation precision N: computations take place modulo m^N.
    #[arg(long, global = true, default_value_t = 12)]
    precision: u32,
    /// Coefficient field for `T`, `E` and presentations without a field.
    #[arg(long, global = true, default_value = "QQ")]
    field: String,
    /// Write the JSON report to this path (`-` for standard output).
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Search bound: the largest group order for Davenport searches, or the
    /// coefficient bound for the structure search of `invariants --structure`.
    #[arg(long, global = true)]
    search_bound: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide finite / bounded / unbounded CM type, with a rule trace.
    Classify { ring: String },
    /// Hilbert function, multiplicity, embedding dimension, CM type.
    Invariants {
        ring: String,
        /// Also compute the nilradical structure of a ring with e = nu = 3.
        #[arg(long)]
        structure: bool,
    },
    /// End(m) as a ring R[z] for a Gorenstein ring R.
    Endm {
        ring: String,
        /// Check a change of variables from End(m) onto this ring.
        #[arg(long, requires = "images")]
        target: Option<String>,
        /// Images of the End(m) variables in the target, comma separated.
        #[arg(long, requires = "target")]
        images: Option<String>,
        /// Check that the maximal minors of this matrix generate the
        /// defining ideal of End(m).
        #[arg(long)]
        hilbert_burch: Option<String>,
    },
    /// Indecomposable MCM modules over T.
    Catalog {
        #[arg(long, default_value = "T")]
        ring: String,
        /// x, ysq, y, xy, alpha, beta, gamma or delta (all if omitted).
        #[arg(long)]
        label: Option<String>,
        /// Parameter of the families alpha..delta.
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Print the rank at the two minimal primes.
        #[arg(long)]
        ranks: bool,
        /// Check that a fraction such as `y^2/(x+y)` acts on each module.
        #[arg(long)]
        act: Option<String>,
    },
    /// Rank profile at the minimal primes.
    Rank {
        #[arg(long, default_value = "T")]
        ring: String,
        module: String,
        /// Compare localizations at every minimal prime with this module.
        #[arg(long)]
        compare: Option<String>,
    },
    /// Dimension of Hom at precision, and its stability.
    Hom {
        #[arg(long, default_value = "T")]
        ring: String,
        source: String,
        target: String,
        /// Extra precision used for the stability check.
        #[arg(long, default_value_t = 4)]
        extra: u32,
    },
    /// Indecomposability through the radical of the endomorphism algebra.
    Indecomposable {
        #[arg(long, default_value = "T")]
        ring: String,
        module: String,
    },
    /// Whether a decomposition tuple (a,b,c,d,e,f) is extended.
    Extend {
        #[arg(long)]
        case: String,
        #[arg(long)]
        tuple: String,
    },
    /// Minimal extended tuples by exhaustive search.
    MinimalTuples {
        #[arg(long)]
        case: String,
        /// Side of the search box [0, B]^6.
        #[arg(long = "box", default_value_t = 4)]
        bound: u32,
    },
    /// Davenport constant of Z_d1 + ... + Z_dr, e.g. `2,4`.
    Davenport { factors: String },
    /// Find a zero-sum subsequence, e.g. `zerosum 2,2 "(1,0),(0,1),(1,1)"`.
    Zerosum { factors: String, seq: String },
    /// The rank bound n * D(G) for descent along a class-group cokernel G
    /// (valid for two-dimensional normal domains; not checked).
    Bound { n: u64, factors: String },
    /// Re-run the golden corpus and diff against it.
    VerifyCorpus {
        /// Corpus directory (defaults to the shipped corpus).
        path: Option<PathBuf>,
    },
}

/// Runs one argument vector (without the program name).
fn run(argv: Vec<String>) -> Result<(Report, Option<PathBuf>), UsageError> {
    let cli = Cli::try_parse_from(std::iter::once("cmlab".to_string()).chain(argv.iter().cloned()))
        .map_err(|e| UsageError(e.to_string()))?;
    let g = Globals {
        precision: cli.precision,
        field: inputs::parse_field(&cli.field)?,
        search_bound: cli.search_bound,
    };
    let report = match &cli.command {
        Command::Classify { ring } => commands::classify(argv, &g, ring),
        Command::Invariants { ring, structure } => commands::invariants(argv, &g, ring, *structure),
        Command::Endm { ring, target, images, hilbert_burch } => commands::endm(
            argv,
            &g,
            ring,
            EndmOptions {
                target: target.as_deref(),
                images: images.as_deref(),
                hilbert_burch: hilbert_burch.as_deref(),
            },
        ),
        Command::Catalog { ring, label, k, ranks, act } => commands::catalog(
            argv,
            &g,
            CatalogOptions {
                ring,
                label: label.as_deref(),
                k: *k,
                ranks: *ranks,
                act: act.as_deref(),
            },
        ),
        Command::Rank { ring, module, compare } => commands::rank(argv, &g, ring, module, compare.as_deref()),
        Command::Hom { ring, source, target, extra } => commands::hom(argv, &g, ring, source, target, *extra),
        Command::Indecomposable { ring, module } => commands::indecomposable(argv, &g, ring, module),
        Command::Extend { case, tuple } => commands::extend(argv, case, tuple),
        Command::MinimalTuples { case, bound } => commands::minimal_tuples(argv, case, *bound),
        Command::Davenport { factors } => commands::davenport(argv, &g, factors),
        Command::Zerosum { factors, seq } => commands::zerosum(argv, factors, seq),
        Command::Bound { n, factors } => commands::bound(argv, *n, factors),
        Command::VerifyCorpus { path } => {
            let dir = path.clone().unwrap_or_else(|| commands::default_corpus().to_path_buf());
            corpus::verify(argv, &dir, |a| run(a).map(|(r, _)| r))
        }
    }?;
    Ok((report, cli.json))
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    // let clap print help and version itself
    if let Err(e) = Cli::try_parse_from(std::iter::once("cmlab".to_string()).chain(argv.iter().cloned())) {
        let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
        let _ = e.print();
        return ExitCode::from(code as u8);
    }
    match run(argv) {
        Ok((report, json)) => {
            match json.as_deref() {
                Some(p) if p.as_os_str() == "-" => print!("{}", report.to_json()),
                Some(p) => {
                    for l in &report.text {
                        println!("{l}");
                    }
                    if let Err(e) = std::fs::write(p, report.to_json()) {
                        eprintln!("error: cannot write {}: {e}", p.display());
                        return ExitCode::from(EXIT_USAGE as u8);
                    }
                }
                None => {
                    for l in &report.text {
                        println!("{l}");
                    }
                }
            }
            ExitCode::from(report.exit_status as u8)
        }
        Err(e) => {
            eprintln!("error: {}", e.0);
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
