//! `semidense`: densities on finite semigroups from the command line.
//!
//! Exit codes: 0 on success (including hunt discoveries), 2 on bad input or
//! usage, 3 when a computed result contradicts a theorem the tool checks.

mod commands;
mod output;

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "semidense", version, about = "Exact densities on finite semigroups")]
pub struct Cli {
    /// Worker threads for enumeration and campaigns.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Seed for every sampled quantity.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
    /// Largest order for which definition-level oracles run.
    #[arg(long, global = true, default_value_t = semidense::densities::ORACLE_BOUND)]
    pub oracle_bound: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Pretty,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Structure, SFC and amenability verdicts, and densities of given subsets.
    Analyze {
        table: PathBuf,
        /// Subset as "0,2,5" or "@25"; repeatable.
        #[arg(long = "subset", short = 's')]
        subsets: Vec<String>,
    },
    /// Run a named campaign and report violations.
    Campaign {
        name: String,
        #[arg(long, default_value_t = 1)]
        order_min: usize,
        #[arg(long, default_value_t = 3)]
        order_max: usize,
        /// Subsets (or instances) per semigroup when exhaustive coverage is out of reach.
        #[arg(long, default_value_t = 512)]
        samples: usize,
        /// Semigroups drawn per order above 5.
        #[arg(long, default_value_t = 32)]
        semigroup_samples: usize,
        /// none, iso, or iso+anti.
        #[arg(long, default_value = "iso")]
        dedup: String,
        /// Where violation and discovery records are written.
        #[arg(long, default_value = "semidense-artifacts")]
        artifacts: PathBuf,
    },
    /// Direct product of two tables, with the product law for `A × B`.
    Product {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, short = 'a')]
        a: Option<String>,
        #[arg(long, short = 'b')]
        b: Option<String>,
        /// Write the product table here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Collapse quotient `a ~ b ⟺ ∃x: ax = bx`, with density preservation for target subsets.
    Quotient {
        table: PathBuf,
        #[arg(long = "subset", short = 's')]
        subsets: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Finite reproductions of the union-semilattice and free-semigroup examples.
    Example {
        #[command(subcommand)]
        which: ExampleKind,
    },
    /// Density profile along a Følner sequence in a built-in semigroup.
    Net {
        #[arg(long, value_enum)]
        fg: FgName,
        #[arg(long, value_enum)]
        subset: Predicate,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        /// Shifts are drawn from products of at most this many generators.
        #[arg(long, default_value_t = 6)]
        shift_len: usize,
    },
    /// Print the LP over left invariant means in dump format.
    LpDump {
        table: PathBuf,
        #[arg(long, short = 's')]
        subset: Option<String>,
    },
    /// Re-evaluate a campaign record file.
    Recheck { record: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum ExampleKind {
    Pfn {
        #[arg(long, default_value_t = 8)]
        n_max: u32,
    },
    Free {
        #[arg(long, default_value_t = 5)]
        len: usize,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FgName {
    Nat,
    Free,
    Pfn,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Predicate {
    Evens,
    Odds,
    StartsA,
    StartsB,
    NoOne,
    HasOne,
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    commands::run(cli)
}
