//! The `vminor` command line: argument parsing, dispatch and exit codes.

mod commands;

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use vminor_core::solvers::{SearchConfig, DEFAULT_BUDGET};

/// Exit statuses.
pub mod exit {
    pub const YES: i32 = 0;
    pub const NO: i32 = 1;
    /// A budget or limit ran out before an answer was found.
    pub const UNKNOWN: i32 = 2;
    pub const USAGE: i32 = 64;
    /// Input parsed but is malformed or fails validation.
    pub const DATA: i32 = 65;
    pub const NO_INPUT: i32 = 66;
    /// A solver produced a result that failed its own check.
    pub const SOFTWARE: i32 = 70;
    pub const IO: i32 = 74;
}

#[derive(Parser, Debug)]
#[command(name = "vminor", version, about = "Vertex-minor, semi-ordered tour and Hamiltonicity toolkit")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub(crate) struct GlobalOpts {
    /// Search nodes allowed per solver call.
    #[arg(long, global = true, env = "VMINOR_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Return the least witness in search order, independent of --workers.
    #[arg(long, global = true)]
    deterministic: bool,
    /// Cap on enumerated objects (orbit members, tour classes).
    #[arg(long, global = true, default_value_t = 1_000_000)]
    limit: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for the parallel searches.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
}

impl GlobalOpts {
    pub(crate) fn config(&self) -> SearchConfig {
        SearchConfig {
            budget: self.budget,
            node_cap: self.limit,
            workers: self.workers,
            deterministic: self.deterministic,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub(crate) enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub(crate) enum Command {
    /// Print the triangle expansion of a cubic graph.
    Expand { graph: PathBuf },
    /// Print an Eulerian tour of a multigraph and, if 4-regular, its word.
    Euler { graph: PathBuf },
    /// Print the alternance graph of a double-occurrence word.
    Alternance { word: PathBuf },
    /// Search for a tour semi-ordered on some k vertices.
    SoetSolve {
        graph: PathBuf,
        k: usize,
        /// Directory for the certificate (tour.txt).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that a tour (or word) is semi-ordered on a vertex set.
    SoetVerify {
        graph: PathBuf,
        tour: PathBuf,
        /// Comma-separated vertices; read from a `# subset:` line of the
        /// tour file when omitted.
        subset: Option<String>,
    },
    /// Decide whether the target is a vertex-minor of the graph, up to
    /// isomorphism.
    VmSolve {
        graph: PathBuf,
        target: PathBuf,
        /// Directory for the certificate (witness.txt).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether a star on k vertices is a vertex-minor of the graph.
    VmSolveStar {
        graph: PathBuf,
        k: usize,
        /// Directory for the certificate (target.txt, witness.txt).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay a vertex-minor witness.
    VmVerify {
        graph: PathBuf,
        target: PathBuf,
        witness: PathBuf,
    },
    /// Decide Hamiltonicity of a cubic graph.
    Ham {
        graph: PathBuf,
        /// Directory for the certificate (cycle.txt).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a Hamiltonian cycle of a cubic graph.
    HamVerify { graph: PathBuf, cycle: PathBuf },
    /// Build the reduction chain from a cubic graph, solve it and check
    /// every certificate.
    Pipeline {
        graph: PathBuf,
        /// Directory for the bundles, instances and certificates.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the local-complementation orbit of a graph.
    Orbit { graph: PathBuf },
}

/// Runs the command line `args` (program name first) and returns the exit
/// status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::YES };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match commands::dispatch(&cli.command, &cli.global) {
        Ok(outcome) => {
            let body = match cli.global.format {
                Format::Text => outcome.text,
                Format::Json => format!("{}\n", outcome.json),
            };
            if let Err(e) = stdout.write_all(body.as_bytes()) {
                let _ = writeln!(stderr, "error: writing output: {e}");
                return exit::IO;
            }
            outcome.code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

/// Runs with the process arguments and standard streams.
pub fn main_with_env() -> i32 {
    let out = io::stdout();
    let err = io::stderr();
    run(std::env::args_os(), &mut out.lock(), &mut err.lock())
}
