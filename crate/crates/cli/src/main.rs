//! `pqies`: key generation, SPDU encryption and decryption, size table and
//! benchmark runs from the command line.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

mod commands;
mod error;

use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "pqies", version, about = "Integrated encryption with classical, post-quantum and hybrid key establishment")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a recipient key pair; hybrid suites write `.ecc.*` and `.kem.*` pairs.
    Keygen {
        #[arg(long, value_parser = parse_suite)]
        suite: u8,
        /// Output prefix; writes `<prefix>.pub` and `<prefix>.priv`.
        #[arg(long = "out", value_name = "PREFIX")]
        prefix: PathBuf,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Encrypt a file to an encoded SPDU.
    Encrypt {
        #[arg(long, value_parser = parse_suite)]
        suite: u8,
        /// Recipient public key file; give twice for hybrid suites.
        #[arg(long = "pub", value_name = "PATH", required = true)]
        public: Vec<PathBuf>,
        #[command(flatten)]
        info: InfoArg,
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
        #[arg(long = "out", value_name = "PATH")]
        output: PathBuf,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Decrypt an encoded SPDU; nothing is written unless every check passes.
    Decrypt {
        /// Expected suite; defaults to the one named in the SPDU.
        #[arg(long, value_parser = parse_suite)]
        suite: Option<u8>,
        /// Recipient private key file; give twice for hybrid suites.
        #[arg(long = "priv", value_name = "PATH", required = true)]
        private: Vec<PathBuf>,
        #[command(flatten)]
        info: InfoArg,
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
        #[arg(long = "out", value_name = "PATH")]
        output: PathBuf,
    },
    /// Describe a key file or encoded SPDU without revealing secrets.
    Inspect {
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
    },
    /// Print the EncryptedDataEncryptionKey size table.
    Sizes,
    /// Time the benchmark phases and emit CSV.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
struct SeedArg {
    /// Hex seed for a deterministic randomness stream (test vectors only).
    #[arg(long, value_parser = parse_hex)]
    seed: Option<HexBytes>,
}

impl SeedArg {
    fn bytes(&self) -> Option<&[u8]> {
        self.seed.as_ref().map(|h| h.0.as_slice())
    }
}

#[derive(Args, Debug)]
struct InfoArg {
    /// Shared information p, hex.
    #[arg(long, value_parser = parse_hex, default_value = "")]
    info: HexBytes,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Comma-separated suite ids; default all registered suites.
    #[arg(long, value_delimiter = ',', value_parser = parse_suite)]
    suites: Vec<u8>,
    /// Comma-separated phases; default all seven.
    #[arg(long, value_delimiter = ',', value_parser = str::parse::<pqies::bench::Phase>)]
    phases: Vec<pqies::bench::Phase>,
    #[arg(long, default_value_t = 100, value_parser = parse_iterations)]
    iterations: usize,
    #[arg(long, default_value_t = pqies::bench::DEFAULT_PAYLOAD_LEN)]
    payload_len: usize,
    /// Write CSV here and print a table and findings to stdout instead.
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
    #[command(flatten)]
    seed: SeedArg,
}

fn parse_suite(s: &str) -> Result<u8, String> {
    let id = pqies::primitives::parse_suite_id(s)?;
    pqies::suite(id).map_err(|e| e.to_string())?;
    Ok(id)
}

/// Hex-decoded flag value; a bare `Vec<u8>` would make clap expect a list.
#[derive(Clone, Debug)]
struct HexBytes(Vec<u8>);

fn parse_hex(s: &str) -> Result<HexBytes, String> {
    hex::decode(s.strip_prefix("0x").unwrap_or(s))
        .map(HexBytes)
        .map_err(|e| format!("invalid hex: {e}"))
}

fn parse_iterations(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Keygen { suite, prefix, seed } => commands::keygen(suite, &prefix, seed.bytes()),
        Command::Encrypt {
            suite,
            public,
            info,
            input,
            output,
            seed,
        } => commands::encrypt(suite, &public, &info.info.0, &input, &output, seed.bytes()),
        Command::Decrypt {
            suite,
            private,
            info,
            input,
            output,
        } => commands::decrypt(suite, &private, &info.info.0, &input, &output),
        Command::Inspect { input } => commands::inspect(&input),
        Command::Sizes => {
            print!("{}", commands::sizes());
            Ok(())
        }
        Command::Bench(args) => commands::bench(&args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            // Keep clap's first line only: failures are one line each.
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or_default();
            eprintln!("E_USAGE: {}", first.trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}: {e}", e.code());
            ExitCode::from(e.exit_code())
        }
    }
}
