//! `arcsplit`: indecomposability of cyclic words and one-endedness of graphs
//! of groups from the command line.
//!
//! Exit status is 0 whenever a verdict was computed (negative verdicts
//! included), 1 on parse or validation errors and 2 when a tree computation
//! would exceed the vertex cap.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "arcsplit",
    version,
    about = "Whitehead graphs, Cayley-tree arc systems and one-ended graphs of groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Reject words that are not cyclically reduced instead of reducing them.
    #[arg(long, global = true)]
    pub strict: bool,

    /// Largest number of tree vertices a command may materialise.
    #[arg(long, global = true, default_value_t = 2_000_000)]
    pub cap: u128,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Dot,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Report {
    Ball,
    Axes,
    Counts,
    Certificate,
    Profile,
}

#[derive(Args, Debug)]
pub struct WordArgs {
    /// Rank of the free group; defaults to the largest generator used.
    #[arg(long)]
    pub rank: Option<u32>,

    /// Words in letter form (`abAB`) or numeric form (`"1 2 -1 -2"`).
    #[arg(required = true)]
    pub words: Vec<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Whitehead graph of a family of cyclic words.
    Graph(WordArgs),
    /// Greedy Whitehead minimisation with its trace.
    Minimize(WordArgs),
    /// Decide whether the family is indecomposable.
    Indecomposable(WordArgs),
    /// Decide whether the words represent a free basis up to conjugacy.
    Basis(WordArgs),
    /// Ball, axes, edge counts, star-graph certificate or class profile.
    Tree {
        #[command(flatten)]
        words: WordArgs,
        #[arg(long, value_enum, default_value_t = Report::Counts)]
        report: Report,
        #[arg(long, default_value_t = 2)]
        radius: u32,
        /// Largest ball radius for `--report profile`.
        #[arg(long, default_value_t = 3)]
        max_radius: u32,
    },
    /// Decide one-endedness of a graph of groups read from a file.
    OneEnded { file: PathBuf },
    /// Write the double of the free group along the family as a graph-of-groups file.
    Double(WordArgs),
    /// Presentation of the fundamental group of a graph of groups read from a file.
    Present { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
