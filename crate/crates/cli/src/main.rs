//! `kterm`: command-line front end for the k-term recurrence toolkit.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Exit statuses. Argument errors exit with 2 through clap.
pub mod status {
    pub const VALIDATION: u8 = 3;
    pub const DECODE: u8 = 4;
    pub const UNCORRECTABLE: u8 = 5;
    pub const CHECKSUM: u8 = 6;
}

#[derive(Parser, Debug)]
#[command(name = "kterm", version, about = "k-term linear recurrences, a block cipher, and a matrix block code")]
pub struct Cli {
    /// Print `key=value` lines instead of prose.
    #[arg(long, global = true)]
    pub machine: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct SpecArgs {
    /// Degree; checked against the coefficient list when both are given.
    #[arg(short = 'k')]
    pub k: Option<usize>,
    /// Coefficients a_1..a_k, comma separated.
    #[arg(short = 'a', value_name = "LIST", allow_hyphen_values = true)]
    pub coeffs: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print d_0..d_m, one per line.
    Seq {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(short = 'm')]
        m: usize,
    },
    /// Check the determinant, matrix, and Cassini-type identities at one index.
    Identities {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(short = 'n', default_value_t = 10)]
        n: u32,
        /// Relative tolerance for the dominant root.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Encrypt a message; `s` is derived from the largest block.
    Encrypt {
        #[command(flatten)]
        spec: SpecArgs,
        /// Plaintext block length.
        #[arg(short = 'L', default_value_t = 4)]
        block_len: usize,
        /// Read the spec, block length, and alphabet from a key file.
        #[arg(long, conflicts_with_all = ["coeffs", "alphabet"])]
        key: Option<PathBuf>,
        /// Alphabet symbols in label order; the last one pads.
        #[arg(long)]
        alphabet: Option<String>,
        /// Write the derived key file here.
        #[arg(long)]
        key_out: Option<PathBuf>,
        plaintext: String,
    },
    /// Decrypt a message; pad symbols stay in the output.
    Decrypt {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(short = 's')]
        s: Option<usize>,
        #[arg(short = 'L', default_value_t = 4)]
        block_len: usize,
        #[arg(long, conflicts_with_all = ["coeffs", "s", "alphabet"])]
        key: Option<PathBuf>,
        #[arg(long)]
        alphabet: Option<String>,
        ciphertext: String,
    },
    /// Encode a matrix file as a code message.
    Encode {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(short = 'n')]
        n: u32,
        /// Message matrix: `rows cols` then one row per line.
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Checksum and decode a code message.
    Decode {
        #[arg(long)]
        msg: PathBuf,
        /// Decode even when the checksum fails.
        #[arg(long)]
        force: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Corrupt entries of a code message.
    Inject {
        #[arg(long)]
        msg: PathBuf,
        /// Explicit corruption `ROW,COL,DELTA` (1-based); repeatable.
        #[arg(long = "at", value_name = "ROW,COL,DELTA", allow_hyphen_values = true)]
        at: Vec<String>,
        #[arg(long, default_value_t = 1)]
        weight: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        delta_min: u32,
        #[arg(long, default_value_t = 50)]
        delta_max: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Detect and repair corrupted entries.
    Correct {
        #[arg(long)]
        msg: PathBuf,
        #[arg(long, default_value_t = kterm_core::blockcode::DEFAULT_WINDOW)]
        window: u32,
        /// Largest error weight to search; 1 runs the single-error pass only.
        #[arg(long, default_value_t = 2)]
        max_weight: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run encode, corrupt, correct trials and report the rates.
    Channel {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(short = 'n', default_value_t = 8)]
        n: u32,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        weight: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        delta_min: u32,
        #[arg(long, default_value_t = 50)]
        delta_max: u32,
        #[arg(long, default_value_t = kterm_core::blockcode::DEFAULT_WINDOW)]
        window: u32,
        #[arg(long, default_value_t = 2)]
        max_weight: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("kterm: {failure}");
            ExitCode::from(failure.code())
        }
    }
}
