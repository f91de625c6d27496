use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "minrank",
    version,
    about = "Exact computations on partial GF(2) matrices"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Largest n for the exact maximum-solution search.
    #[arg(long, global = true, default_value_t = 16)]
    pub limit_n: usize,
    /// Worker threads (0 picks the number of cores).
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write results here instead of stdout; logs are appended.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Abort with exit code 3 after this many milliseconds.
    #[arg(long, global = true)]
    pub timeout_ms: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Every statistic of a .pmx matrix as one JSON object.
    Report { file: PathBuf },
    /// Min-rank and a minimum-rank completion.
    Minrank { file: PathBuf },
    /// Largest solution size and a witness.
    Opt { file: PathBuf },
    /// Largest linear solution size.
    Lin { file: PathBuf },
    /// The forbidden set K_A.
    Ka { file: PathBuf },
    /// Evaluate many matrices of one shape and log one record per matrix.
    Search(SearchArgs),
    /// Inspect or linearize depth-2 circuits.
    #[command(subcommand)]
    Circuit(CircuitCommand),
    /// Matrices whose solutions are the codes of a given distance.
    #[command(subcommand)]
    Codes(CodesCommand),
}

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    /// Matrix shape as MxN.
    #[arg(long, value_parser = parse_shape)]
    pub shape: (usize, usize),
    #[arg(long, value_enum, default_value_t = SearchMode::Random)]
    pub mode: SearchMode,
    /// Number of random matrices.
    #[arg(long, default_value_t = 1000)]
    pub count: u64,
    /// Records with epsilon below this are flagged.
    #[arg(long, default_value_t = 0.5)]
    pub alarm: f64,
    /// Add wall-clock time to every record (makes logs non-reproducible).
    #[arg(long)]
    pub timing: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Random,
}

#[derive(Subcommand, Debug)]
pub enum CircuitCommand {
    /// Width, degree, matching and the partial matrix of a .ckt circuit.
    Check { file: PathBuf },
    /// An equivalent circuit with linear gates.
    Linearize {
        file: PathBuf,
        /// Only replace the middle layer (outputs must be parities).
        #[arg(long)]
        middle: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum CodesCommand {
    /// The (n, r) code matrix as .pmx.
    Gen(CodeArgs),
    /// Hamming and Gilbert-Varshamov bounds.
    Bounds(CodeArgs),
    /// Check that K_A is the punctured ball and compare lin with the bounds.
    Verify {
        #[command(flatten)]
        code: CodeArgs,
        /// Also compute opt and the distance of its witness.
        #[arg(long)]
        opt: bool,
    },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct CodeArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: usize,
}

fn parse_shape(s: &str) -> Result<(usize, usize), String> {
    let (m, n) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected MxN, got {s:?}"))?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    let (m, n) = (parse(m)?, parse(n)?);
    if m == 0 || n == 0 {
        return Err("shape sides must be positive".into());
    }
    Ok((m, n))
}
