mod commands;
mod render;
mod vectors;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use freelat_core::Error;

/// Exact factorization, good closures and thick-subcategory membership in free graded algebras.
#[derive(Debug, Parser)]
#[command(name = "freelat", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Number of degree-one generators.
    #[arg(long, global = true, default_value_t = 2)]
    pub gens: usize,
    /// Coefficient field: `q` or `p:<prime>`.
    #[arg(long, global = true, default_value = "q")]
    pub field: String,
    /// Largest degree any computation may reach.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include closure traces and membership paths.
    #[arg(long, global = true)]
    pub trace: bool,
    /// Highest shift scanned by Hom and Hilbert tables.
    #[arg(long, global = true, default_value_t = 8)]
    pub window: usize,
}

/// A generator family, inline or from a file.
#[derive(Debug, Args, Clone)]
pub struct SetArg {
    /// Comma-separated expressions.
    #[arg(long, allow_hyphen_values = true)]
    pub set: Option<String>,
    /// File with one expression per line; `#` starts a comment.
    #[arg(long)]
    pub set_file: Option<String>,
}

#[derive(Debug, Args, Clone)]
pub struct PairOfSets {
    #[arg(long, allow_hyphen_values = true)]
    pub left: Option<String>,
    #[arg(long)]
    pub left_file: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub right: Option<String>,
    #[arg(long)]
    pub right_file: Option<String>,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
pub enum Predicate {
    NotMember,
    Intersection,
    RankMismatch,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Prime factorization.
    Factor {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Primality, with a split certificate when composite.
    Prime {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Degrees at which the element splits.
    SplitPoints {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Goodness of a set, with an overlap witness when it fails.
    Good(SetArg),
    /// Write a non-good element as y·z·y.
    Yzy {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Good closure of a set.
    Closure(SetArg),
    /// Membership of A/xA in the subcategory generated by the set.
    Member {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[command(flatten)]
        set: SetArg,
    },
    /// Invertibility of x after inverting the set.
    Invertible {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[command(flatten)]
        set: SetArg,
    },
    /// Filtration of A/xA by shifted quotients from the set.
    Filtration {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[command(flatten)]
        set: SetArg,
    },
    /// Equality of generated subcategories.
    SubcatEq(PairOfSets),
    /// Inclusion of the left subcategory in the right one.
    SubcatLeq(PairOfSets),
    /// Certificate that two subcategories intersect trivially.
    Intersect(PairOfSets),
    /// Hom spaces between A/xA and shifts of A/yA.
    Hom {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        /// A single shift instead of the whole window.
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<i64>,
    },
    /// Hilbert function of A/xA.
    Hilbert {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<i64>,
    },
    /// Truncation of a shifted free module.
    Tau {
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
    },
    /// Image in the commutative polynomial ring.
    Abelianize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Support of M_x.
    Support {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Support-based certificates.
    SupportCompare {
        #[arg(long, value_enum)]
        predicate: Predicate,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long)]
        rank0: Option<usize>,
        #[arg(long)]
        rank1: Option<usize>,
    },
    /// Presentation of the universal localization.
    Localize {
        /// A matrix such as "[x y]" or "[x, y; x^2, xy]"; repeatable.
        #[arg(long)]
        matrix: Vec<String>,
        #[command(flatten)]
        set: SetArg,
    },
    /// The descending chain of subcategories.
    Chain {
        /// Print the pair at this level.
        #[arg(long, conflicts_with = "verify")]
        level: Option<usize>,
        /// Verify strict descent up to this level.
        #[arg(long)]
        verify: Option<usize>,
    },
    /// The descending binary tree of subcategories.
    Tree {
        /// Print the pair at this path, e.g. "+-".
        #[arg(long, conflicts_with = "verify", allow_hyphen_values = true)]
        path: Option<String>,
        /// Verify the tree down to this depth.
        #[arg(long)]
        verify: Option<usize>,
    },
    /// Run the built-in reference vectors.
    VerifyPaper {
        /// Only vectors whose id or group contains this text.
        #[arg(long)]
        filter: Option<String>,
    },
}

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_UNKNOWN: u8 = 2;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_PARSE: u8 = 65;
pub const EXIT_RESOURCE: u8 = 69;
pub const EXIT_SOFTWARE: u8 = 70;

pub fn exit_code_for(e: &Error) -> u8 {
    match e {
        _ if e.is_parse() => EXIT_PARSE,
        _ if e.is_resource() => EXIT_RESOURCE,
        Error::ZeroElement | Error::UnitElement | Error::DegreeMismatch { .. } | Error::IllGraded(_) => EXIT_PARSE,
        Error::Verification(_) => EXIT_SOFTWARE,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(report) => {
            print!("{}", render::render(&cli, &report));
            ExitCode::from(report.exit)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
