//! Command-line front end: compression, verification, extraction, corpus
//! generation and the overhead benchmark.

pub mod gen;
pub mod report;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use batlz_core::{Algo, CompressedFile, Space, Text, Workspace, UNBOUNDED};
use clap::{Parser, Subcommand, ValueEnum};

use crate::gen::GenParams;
use crate::report::{fmt_c, BenchConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Param(String),
    #[error("{0}")]
    Verify(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Param(_) | CliError::Verify(_) => 1,
            CliError::Io(_) => 2,
        }
    }
}

impl From<batlz_core::Error> for CliError {
    fn from(e: batlz_core::Error) -> Self {
        match e {
            batlz_core::Error::Io(e) => CliError::Io(e.to_string()),
            other => CliError::Verify(other.to_string()),
        }
    }
}

fn io_err(path: &Path, e: io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| io_err(path, e))
}

fn write(path: &Path, data: &[u8]) -> Result<(), CliError> {
    fs::write(path, data).map_err(|e| io_err(path, e))
}

fn load(path: &Path) -> Result<CompressedFile, CliError> {
    Ok(CompressedFile::from_bytes(&read(path)?)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    Lz,
    Batlz1,
    Batlz2,
    Greedy,
    Minmax,
    Greedier,
}

impl From<AlgoArg> for Algo {
    fn from(a: AlgoArg) -> Algo {
        match a {
            AlgoArg::Lz => Algo::Lz,
            AlgoArg::Batlz1 => Algo::BatLz1,
            AlgoArg::Batlz2 => Algo::BatLz2,
            AlgoArg::Greedy => Algo::Greedy,
            AlgoArg::Minmax => Algo::Minmax,
            AlgoArg::Greedier => Algo::Greedier,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpaceArg {
    Linear,
    Fast,
}

impl From<SpaceArg> for Space {
    fn from(s: SpaceArg) -> Space {
        match s {
            SpaceArg::Linear => Space::Linear,
            SpaceArg::Fast => Space::Fast,
        }
    }
}

/// A chain bound: a positive integer, or `inf`.
fn parse_c(s: &str) -> Result<u32, String> {
    if s == "inf" {
        return Ok(UNBOUNDED);
    }
    match s.parse::<u32>() {
        Ok(0) => Err("c must be at least 1".into()),
        Ok(c) => Ok(c),
        Err(e) => Err(format!("{s:?}: {e}")),
    }
}

#[derive(Debug, Parser)]
#[command(name = "batlz", version, about = "Bounded access time Lempel-Ziv compression")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compress a file.
    Compress {
        input: PathBuf,
        output: PathBuf,
        #[arg(long, value_enum, default_value = "greedier")]
        algo: AlgoArg,
        /// Chain bound (integer >= 1 or `inf`); required except for lz.
        #[arg(long, value_parser = parse_c)]
        c: Option<u32>,
        #[arg(long, value_enum, default_value = "linear")]
        space: SpaceArg,
        /// LZ phrase count of the input, to report the overhead factor.
        #[arg(long)]
        baseline_z: Option<usize>,
    },
    /// Decompress a file.
    Decompress { input: PathBuf, output: PathBuf },
    /// Print `len` bytes from 1-based position `pos` to stdout.
    Extract {
        input: PathBuf,
        #[arg(long)]
        pos: usize,
        #[arg(long, default_value_t = 1)]
        len: usize,
    },
    /// Print phrase and chain statistics of a compressed file.
    Stats {
        input: PathBuf,
        /// Write the chain-length histogram as CSV.
        #[arg(long)]
        hist: Option<PathBuf>,
    },
    /// Check a compressed file against the original.
    Verify { compressed: PathBuf, original: PathBuf },
    /// Run every (file, algorithm, c) cell over a corpus directory.
    Bench {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "lz,batlz1,batlz2,greedy,minmax,greedier")]
        algos: Vec<AlgoArg>,
        #[arg(long = "c", value_delimiter = ',', value_parser = parse_c, default_value = "4,8,16,24,32")]
        cs: Vec<u32>,
        #[arg(long)]
        csv: PathBuf,
        /// Directory for histogram files; defaults to the CSV's directory.
        #[arg(long)]
        hist_dir: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "linear")]
        space: SpaceArg,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write 0 in the seconds column so runs are byte-identical.
        #[arg(long)]
        no_timing: bool,
    },
    /// Generate a synthetic repetitive file.
    Gen {
        #[arg(long)]
        seed_size: usize,
        #[arg(long)]
        copies: usize,
        /// Per-symbol mutation probability.
        #[arg(long, default_value_t = 0.0)]
        rate: f64,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
        #[arg(long)]
        output: PathBuf,
    },
}

/// Runs a command, writing its report to `out`.
pub fn execute(cmd: Command, out: &mut dyn Write) -> Result<(), CliError> {
    let emit = |out: &mut dyn Write, line: String| -> Result<(), CliError> {
        writeln!(out, "{line}").map_err(|e| CliError::Io(e.to_string()))
    };
    match cmd {
        Command::Compress {
            input,
            output,
            algo,
            c,
            space,
            baseline_z,
        } => {
            let algo = Algo::from(algo);
            let c = match (algo, c) {
                (Algo::Lz, _) => UNBOUNDED,
                (_, Some(c)) => c,
                (_, None) => return Err(CliError::Param(format!("--c is required for {algo}"))),
            };
            let text = Text::ingest(&read(&input)?)?;
            let parse = Workspace::new(&text).run(algo, c, space.into());
            let ledger = parse.validate(&text)?;
            let file = CompressedFile::new(&parse, &text);
            write(&output, &file.to_bytes())?;
            let mut line = format!(
                "algo={algo} n={} c={} zprime={} max_chain={} mean_chain={:.6}",
                text.len(),
                fmt_c(c),
                parse.z(),
                ledger.max_chain(),
                ledger.mean_chain()
            );
            if let Some(z) = baseline_z.filter(|&z| z > 0) {
                line.push_str(&format!(" overhead={:.6}", parse.z() as f64 / z as f64));
            }
            emit(out, line)
        }
        Command::Decompress { input, output } => write(&output, &load(&input)?.decompress()),
        Command::Extract { input, pos, len } => {
            let file = load(&input)?;
            let x = file.extract(pos, len).map_err(|e| CliError::Param(e.to_string()))?;
            out.write_all(&x.bytes).map_err(|e| CliError::Io(e.to_string()))?;
            let max = x.hops.iter().copied().max().unwrap_or(0);
            eprintln!("hops max={max} total={}", x.hops.iter().map(|&h| h as u64).sum::<u64>());
            Ok(())
        }
        Command::Stats { input, hist } => {
            let file = load(&input)?;
            let ledger = file.to_parse(Algo::Lz).replay();
            emit(
                out,
                format!(
                    "n={} c={} zprime={} sigma={} max_chain={} mean_chain={:.6}",
                    file.n(),
                    fmt_c(file.c()),
                    file.z(),
                    file.sigma(),
                    ledger.max_chain(),
                    ledger.mean_chain()
                ),
            )?;
            if let Some(path) = hist {
                let f = fs::File::create(&path).map_err(|e| io_err(&path, e))?;
                ledger
                    .write_histogram(io::BufWriter::new(f))
                    .map_err(|e| io_err(&path, e))?;
            }
            Ok(())
        }
        Command::Verify { compressed, original } => {
            let expected = read(&original)?;
            let file = load(&compressed)?;
            verify(&file, &expected)?;
            emit(out, format!("ok n={} zprime={}", file.n(), file.z()))
        }
        Command::Bench {
            corpus,
            algos,
            cs,
            csv,
            hist_dir,
            space,
            jobs,
            no_timing,
        } => {
            let files = report::read_corpus(&corpus).map_err(|e| io_err(&corpus, e))?;
            let hist_dir = hist_dir.unwrap_or_else(|| csv.parent().map(Path::to_path_buf).unwrap_or_default());
            let cfg = BenchConfig {
                algos: algos.into_iter().map(Algo::from).collect(),
                cs,
                space: space.into(),
                jobs,
                hist_dir: Some(hist_dir),
            };
            let rep = report::run_bench(&files, &cfg);
            write(&csv, rep.to_csv(!no_timing).as_bytes())?;
            let failed = rep.rows.iter().filter(|r| r.error.is_some()).count();
            emit(out, format!("rows={} failed={failed}", rep.rows.len()))
        }
        Command::Gen {
            seed_size,
            copies,
            rate,
            rng_seed,
            output,
        } => {
            let p = GenParams {
                seed_size,
                copies,
                mutation_rate: rate,
                rng_seed,
            };
            p.validate().map_err(CliError::Param)?;
            write(&output, &gen::generate(&p))
        }
    }
}

/// Full decompression, per-position extraction and the hop bound, in that
/// order. Mismatches report the 0-based byte offset.
pub fn verify(file: &CompressedFile, expected: &[u8]) -> Result<(), CliError> {
    let first_diff = |got: &[u8]| {
        got.iter()
            .zip(expected)
            .position(|(a, b)| a != b)
            .or_else(|| (got.len() != expected.len()).then(|| got.len().min(expected.len())))
    };
    if let Some(off) = first_diff(&file.decompress()) {
        return Err(CliError::Verify(format!("decompressed output differs at offset {off}")));
    }
    let x = file.extract(1, file.n() - 1)?;
    if let Some(off) = first_diff(&x.bytes) {
        return Err(CliError::Verify(format!("extraction differs at offset {off}")));
    }
    if file.c() != UNBOUNDED {
        if let Some(off) = x.hops.iter().position(|&h| h > file.c()) {
            return Err(CliError::Verify(format!(
                "offset {off} needs {} hops, bound is {}",
                x.hops[off],
                file.c()
            )));
        }
    }
    Ok(())
}

/// Parses `args` and runs the command. Returns the process exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
