//! `lipfree`: exact reports on representations of free-space elements over
//! finite pointed metric spaces.
//!
//! Machine-readable JSON goes to stdout, a short human summary to stderr.
//! Exit codes: 0 success (and mathematical "true" for predicates), 1 for
//! mathematical "false", 2 for malformed input, 64 for usage errors, 66 for
//! unreadable files.

use std::path::PathBuf;
use std::process;

use clap::{Parser, Subcommand};

mod commands;
mod demo;
mod docs;

#[derive(Parser)]
#[command(name = "lipfree", version, about = "Exact order theory of free spaces over finite metric spaces")]
pub struct Cli {
    /// Also print decimal approximations rounded to K places next to exact
    /// values. Convenience only: the rational strings stay authoritative.
    #[arg(long, global = true, value_name = "K")]
    pub decimal: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Check that a space document describes a finite pointed metric space
    CheckMetric {
        /// Space document (JSON)
        space: PathBuf,
    },
    /// Norm of an element of the free space, with an optimal function witness
    FreeNorm {
        /// Space document (JSON)
        space: PathBuf,
        /// Element: inline JSON object {"point": "coeff"}, @FILE, or mol:FROM,TO
        #[arg(long, value_name = "SPEC")]
        vector: String,
    },
    /// Mass-minimal representation of an element, optionally descended to a minimal one
    Represent {
        /// Space document (JSON)
        space: PathBuf,
        /// Element: inline JSON object {"point": "coeff"}, @FILE, or mol:FROM,TO
        #[arg(long, value_name = "SPEC")]
        vector: String,
        /// Also descend to the minimal measure below the mass-minimal one
        #[arg(long)]
        minimal: bool,
    },
    /// Whether no measure strictly precedes the given one (predicate)
    IsMinimal {
        /// Space document (JSON)
        space: PathBuf,
        /// Measure document (JSON array of {from, to, mass})
        #[arg(long, value_name = "FILE")]
        measure: PathBuf,
    },
    /// Whether the measure's mass equals the norm of the element it represents (predicate)
    IsOptimal {
        /// Space document (JSON)
        space: PathBuf,
        /// Measure document (JSON array of {from, to, mass})
        #[arg(long, value_name = "FILE")]
        measure: PathBuf,
    },
    /// Whether the left measure comes before the right one in the representation order (predicate)
    Precedes {
        /// Space document (JSON)
        space: PathBuf,
        /// Left measure document
        #[arg(long, value_name = "FILE")]
        left: PathBuf,
        /// Right measure document
        #[arg(long, value_name = "FILE")]
        right: PathBuf,
    },
    /// Classify every molecule of the space as extreme or not
    Extreme {
        /// Space document (JSON)
        space: PathBuf,
    },
    /// Uniform concavity modulus of the space
    Gamma {
        /// Space document (JSON)
        space: PathBuf,
    },
    /// Run a bundled example end to end
    Demo {
        /// Which example to run
        name: demo::DemoName,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = err.print();
            process::exit(code);
        }
    };
    process::exit(commands::run(cli));
}
