//! `ptangle`: command-line front end for persistent-tangle certification.
//!
//! Exit codes: 0 when the requested object was found, 1 when it was not,
//! 2 on any error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "ptangle",
    version,
    about = "Colorings, tangles and persistence certificates"
)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ClosureArg {
    N,
    D,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count Fox or quandle colorings of a diagram.
    Color {
        file: PathBuf,
        #[arg(long = "mod", conflicts_with = "quandle")]
        modulus: Option<u32>,
        /// Quandle table file (`Q n` header, then n rows).
        #[arg(long)]
        quandle: Option<PathBuf>,
        /// List up to this many colorings.
        #[arg(long)]
        enumerate: Option<u64>,
    },
    /// Determinant of a knot or link diagram.
    Det { file: PathBuf },
    /// Search for a boundary-monochromatic certificate of a tangle.
    Certify {
        file: PathBuf,
        /// Fox moduli to try, comma separated; defaults come from the Krebes gcd.
        #[arg(long, value_delimiter = ',')]
        mods: Option<Vec<u32>>,
        /// Quandle table files to try after the Fox moduli.
        #[arg(long = "quandle")]
        quandles: Vec<PathBuf>,
        /// Check the certificate against this many random hosts.
        #[arg(long, default_value_t = 0)]
        verify: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Cut a colored knot diagram into a certified tangle.
    Cut {
        file: PathBuf,
        #[arg(long)]
        arc: u32,
        /// Second arc; without it `arc` is cut twice.
        #[arg(long)]
        arc2: Option<u32>,
        #[arg(long = "mod")]
        modulus: u32,
        /// Write `<out>.pd` and `<out>.cert.json` instead of printing.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build rational tangles, their closures, or T + T*.
    Build {
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            conflicts_with = "t_plus_tstar",
            required_unless_present = "t_plus_tstar"
        )]
        rational: Option<Vec<i64>>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        t_plus_tstar: Option<Vec<i64>>,
        #[arg(long, value_enum, requires = "rational")]
        closure: Option<ClosureArg>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Numerator or denominator closure of a tangle.
    Closure {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: ClosureArg,
    },
    /// Closure determinants and their gcd.
    Krebes { file: PathBuf },
    /// Irreducibility evidence for a tangle file or a twist vector.
    Report {
        #[arg(required_unless_present = "twists")]
        file: Option<PathBuf>,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            conflicts_with = "file"
        )]
        twists: Option<Vec<i64>>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(out) => {
            if cli.json {
                let mut v = out.json;
                v["schema"] = serde_json::json!(1);
                println!(
                    "{}",
                    serde_json::to_string_pretty(&v).expect("serializable")
                );
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(if out.found { 0 } else { 1 })
        }
        Err(e) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({ "schema": 1, "error": format!("{e:#}") })
                );
            }
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
