//! Command-line front end: keygen, encode, decode, rank, unrank,
//! indices, stats.
//!
//! Exit codes: 0 success, 2 usage error, 3 input-format error,
//! 4 constraint violation, 5 decode failure. Diagnostics go to stderr;
//! payloads go to files or stdout. File arguments accept "-" for
//! stdin/stdout, and output files are written to a temporary and
//! renamed so failures never leave a partial file behind.

use std::io::{Read, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};

use crate::codec;
use crate::error::Error;
use crate::matrix::{Matrix, Width};
use crate::matrix_io::{self, Format};
use crate::passkey::{self, Passkey, PrngState};
use crate::perm_rank::{self, OrderingMode, RankIndex, SortedMultiset};
use crate::stats;

#[derive(Parser)]
#[command(
    name = "permidx",
    version,
    about = "Reversible matrix obfuscation via hidden permutation ranks (obfuscation, not encryption)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Create a key file
    #[command(group(ArgGroup::new("source").required(true).args(["secret", "random"])))]
    Keygen {
        /// Derive the key from this passphrase
        #[arg(long)]
        secret: Option<String>,
        /// Draw the seeds randomly instead
        #[arg(long)]
        random: bool,
        /// Make --random reproducible
        #[arg(long, conflicts_with = "secret")]
        seed: Option<u64>,
        /// Column constant: elements ranked and shuffled together (2-9)
        #[arg(long)]
        cc: usize,
        /// Element width in bits (8, 16, or 32)
        #[arg(long, default_value_t = 8)]
        width: u32,
        /// Arrangement listing order
        #[arg(long, value_parser = parse_ordering, default_value = "reverse-lex")]
        ordering: OrderingMode,
        /// Value for unused index-region slots
        #[arg(long, default_value_t = 0)]
        filler: u32,
        /// Key file to write ("-" for stdout)
        #[arg(short = 'o')]
        output: String,
        /// Print the derived seeds
        #[arg(long)]
        verbose: bool,
    },
    /// Encode a matrix into its compound form
    Encode {
        /// Key file
        #[arg(short = 'k')]
        key: String,
        /// Input matrix ("-" for stdin)
        #[arg(short = 'i')]
        input: String,
        /// Output file ("-" for stdout); same format as the input
        #[arg(short = 'o')]
        output: String,
        /// Force the input format instead of detecting it
        #[arg(long, value_parser = parse_format)]
        format: Option<Format>,
    },
    /// Decode a compound back to the original matrix
    Decode {
        /// Key file
        #[arg(short = 'k')]
        key: String,
        /// Compound input ("-" for stdin)
        #[arg(short = 'i')]
        input: String,
        /// Output file ("-" for stdout); same format as the input
        #[arg(short = 'o')]
        output: String,
    },
    /// Print the permutation rank of one row of values
    Rank {
        /// Comma-separated values, e.g. "4,9,2"
        #[arg(long)]
        row: String,
        #[arg(long, value_parser = parse_ordering, default_value = "reverse-lex")]
        ordering: OrderingMode,
    },
    /// Print the arrangement at a given rank of a multiset
    Unrank {
        /// Comma-separated values; order does not matter
        #[arg(long)]
        multiset: String,
        /// 1-based rank
        #[arg(long)]
        index: u64,
        #[arg(long, value_parser = parse_ordering, default_value = "reverse-lex")]
        ordering: OrderingMode,
    },
    /// Emit per-chunk permutation ranks as CSV lines "chunk,rank"
    Indices {
        /// Input matrix ("-" for stdin)
        #[arg(short = 'i')]
        input: String,
        /// Column constant
        #[arg(long)]
        cc: usize,
        #[arg(long, value_parser = parse_ordering, default_value = "reverse-lex")]
        ordering: OrderingMode,
        /// Output CSV (defaults to stdout)
        #[arg(short = 'o')]
        output: Option<String>,
    },
    /// Report guessing probability and size overhead for a matrix
    Stats {
        /// Input matrix ("-" for stdin)
        #[arg(short = 'i')]
        input: String,
        /// Column constant
        #[arg(long)]
        cc: usize,
        /// Element width for the layout report (defaults to the matrix's)
        #[arg(long)]
        width: Option<u32>,
    },
}

fn parse_ordering(s: &str) -> Result<OrderingMode, String> {
    match s {
        "reverse-lex" => Ok(OrderingMode::ReverseLex),
        "lex" => Ok(OrderingMode::Lex),
        other => Err(format!("unknown ordering {other:?} (expected reverse-lex or lex)")),
    }
}

fn parse_format(s: &str) -> Result<Format, String> {
    Format::from_name(s).map_err(|e| e.to_string())
}

enum CliError {
    Lib(Error),
    Io { path: String, source: std::io::Error },
    Usage(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Lib(err) => match err {
                Error::KeyFormat(_) | Error::MatrixFormat { .. } => 3,
                Error::RowInference { .. } | Error::Corrupt(_) => 5,
                Error::EmptySecret => 2,
                _ => 4,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(err) => write!(f, "{err}"),
            CliError::Io { path, source } => write!(f, "{path}: {source}"),
            CliError::Usage(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        CliError::Lib(err)
    }
}

fn read_input(path: &str) -> Result<Vec<u8>, CliError> {
    if path == "-" {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|source| CliError::Io { path: "<stdin>".into(), source })?;
        Ok(buf)
    } else {
        std::fs::read(path).map_err(|source| CliError::Io { path: path.into(), source })
    }
}

/// Writes to stdout for "-", otherwise to a temporary file in the
/// target directory that is renamed into place on success.
fn write_output(path: &str, bytes: &[u8]) -> Result<(), CliError> {
    if path == "-" {
        let mut stdout = std::io::stdout().lock();
        stdout
            .write_all(bytes)
            .and_then(|_| stdout.flush())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source })
    } else {
        let io_err = |source: std::io::Error| CliError::Io { path: path.into(), source };
        let dir = Path::new(path).parent().filter(|p| !p.as_os_str().is_empty());
        let mut tmp = tempfile::NamedTempFile::new_in(dir.unwrap_or_else(|| Path::new(".")))
            .map_err(io_err)?;
        tmp.write_all(bytes).map_err(io_err)?;
        tmp.persist(path).map_err(|e| io_err(e.error))?;
        Ok(())
    }
}

fn load_key(path: &str) -> Result<Passkey, CliError> {
    Ok(passkey::parse_passkey(&read_input(path)?)?)
}

fn parse_value_list(text: &str, what: &str) -> Result<Vec<u32>, CliError> {
    text.split(',')
        .map(|token| {
            token
                .trim()
                .parse::<u32>()
                .map_err(|_| CliError::Usage(format!("{what}: bad value {:?}", token.trim())))
        })
        .collect()
}

fn run_command(command: Command) -> Result<(), CliError> {
    match command {
        Command::Keygen { secret, random, seed, cc, width, ordering, filler, output, verbose } => {
            let width = Width::from_bits(width)?;
            let key = if let Some(secret) = secret {
                passkey::derive_passkey(&secret, cc, width, ordering, filler)?
            } else {
                debug_assert!(random);
                let (placement_seed, shuffle_seed) = match seed {
                    Some(seed) => {
                        let mut stream = PrngState::new(seed);
                        (stream.next_u64(), stream.next_u64())
                    }
                    None => (rand::random(), rand::random()),
                };
                Passkey::new(ordering, cc, width, filler, placement_seed, shuffle_seed)?
            };
            write_output(&output, &passkey::serialize_passkey(&key))?;
            if verbose {
                println!("placement_seed = {:#018x}", key.placement_seed);
                println!("shuffle_seed   = {:#018x}", key.shuffle_seed);
            }
            Ok(())
        }
        Command::Encode { key, input, output, format } => {
            let key = load_key(&key)?;
            let bytes = read_input(&input)?;
            let (matrix, format) = matrix_io::read_matrix(&bytes, format, Some(key.width))?;
            let compound = codec::encode(&matrix, &key)?;
            write_output(&output, &matrix_io::write_matrix(&compound, format)?)
        }
        Command::Decode { key, input, output } => {
            let key = load_key(&key)?;
            let bytes = read_input(&input)?;
            let (compound, format) = matrix_io::read_matrix(&bytes, None, Some(key.width))?;
            let matrix = codec::decode(&compound, &key)?;
            write_output(&output, &matrix_io::write_matrix(&matrix, format)?)
        }
        Command::Rank { row, ordering } => {
            let values = parse_value_list(&row, "--row")?;
            println!("{}", perm_rank::rank(&values, ordering)?);
            Ok(())
        }
        Command::Unrank { multiset, index, ordering } => {
            let values = parse_value_list(&multiset, "--multiset")?;
            let multiset = SortedMultiset::new(values);
            let arrangement = perm_rank::unrank(&multiset, RankIndex::new(index)?, ordering)?;
            let joined: Vec<String> = arrangement.iter().map(u32::to_string).collect();
            println!("{}", joined.join(","));
            Ok(())
        }
        Command::Indices { input, cc, ordering, output } => {
            let bytes = read_input(&input)?;
            let (matrix, _) = matrix_io::read_matrix(&bytes, None, None)?;
            let ranks = codec::permutation_indices(&matrix, cc, ordering)?;
            let mut out = String::new();
            for (chunk, rank) in ranks.iter().enumerate() {
                // 1-based chunk numbers, matching 1-based ranks.
                out.push_str(&format!("{},{}\n", chunk + 1, rank));
            }
            write_output(output.as_deref().unwrap_or("-"), out.as_bytes())
        }
        Command::Stats { input, cc, width } => {
            let bytes = read_input(&input)?;
            let (matrix, _) = matrix_io::read_matrix(&bytes, None, None)?;
            let width = match width {
                Some(bits) => Width::from_bits(bits)?,
                None => matrix.width(),
            };
            print_stats(&matrix, cc, width)
        }
    }
}

fn print_stats(matrix: &Matrix, chunk_len: usize, width: Width) -> Result<(), CliError> {
    let guess = stats::guess_probability(matrix, chunk_len)?;
    let expansion = stats::expansion_report(matrix.rows(), matrix.cols(), chunk_len, width)?;
    let geom = &expansion.geometry;

    println!("matrix: {} x {}, {}-bit elements", matrix.rows(), matrix.cols(), width);
    println!("chunks: {} (column constant {})", geom.chunk_count, chunk_len);
    match guess.uniform_chunk_probability() {
        Some(p) => println!("per-chunk guess probability: {p:.6}"),
        None => {
            let min = guess.chunk_counts.iter().min().unwrap();
            let max = guess.chunk_counts.iter().max().unwrap();
            println!("per-chunk guess probability: varies (arrangement counts {min}..={max})");
        }
    }
    match guess.probability {
        Some(p) => println!(
            "total guess probability: {p:.4e} (log10 = {:.4})",
            guess.log10_probability
        ),
        None => println!(
            "total guess probability: underflow, log10 = {:.4}",
            guess.log10_probability
        ),
    }
    println!(
        "index region: {} indices, {} cell(s) each, {} appended row(s), {} slot(s), {} filler slot(s)",
        geom.chunk_count,
        geom.cells_per_index,
        geom.appended_rows,
        geom.appended_cells,
        geom.appended_cells - geom.rank_cells(),
    );
    println!("size ratio: {:.3}", expansion.ratio);
    Ok(())
}

/// Parses arguments and runs; returns the process exit code.
pub fn run() -> ExitCode {
    let cli = Cli::parse();
    match run_command(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("permidx: {err}");
            ExitCode::from(err.code())
        }
    }
}
