//! Benchmark runs over a corpus: one row per (file, algorithm, c) cell.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use batlz_core::{Algo, Space, Text, Workspace, UNBOUNDED};

pub const CSV_HEADER: &str = "file,n,algo,c,zprime,overhead,max_chain,mean_chain,seconds";

/// `c` as printed in reports and file names.
pub fn fmt_c(c: u32) -> String {
    if c == UNBOUNDED {
        "inf".into()
    } else {
        c.to_string()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub file: String,
    pub n: usize,
    pub algo: Algo,
    pub c: u32,
    pub zprime: usize,
    /// `zprime` over the LZ phrase count of the same file.
    pub overhead: f64,
    pub max_chain: u32,
    pub mean_chain: f64,
    pub seconds: f64,
    /// Set when the cell failed; the numeric fields are then meaningless.
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn to_csv(&self, timing: bool) -> String {
        let mut out = String::new();
        out.push_str(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let c = fmt_c(r.c);
            if r.error.is_some() {
                let _ = writeln!(out, "{},{},{},{},NA,NA,NA,NA,NA", r.file, r.n, r.algo, c);
                continue;
            }
            let secs = if timing { format!("{:.3}", r.seconds) } else { "0".into() };
            let _ = writeln!(
                out,
                "{},{},{},{},{},{:.6},{},{:.6},{}",
                r.file, r.n, r.algo, c, r.zprime, r.overhead, r.max_chain, r.mean_chain, secs
            );
        }
        out
    }

    pub fn find(&self, file: &str, algo: Algo, c: u32) -> Option<&BenchRow> {
        self.rows
            .iter()
            .find(|r| r.file == file && r.algo == algo && r.c == c)
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub algos: Vec<Algo>,
    pub cs: Vec<u32>,
    pub space: Space,
    pub jobs: usize,
    /// Directory for `hist_<file>_<algo>_<c>.csv`; no histograms if `None`.
    pub hist_dir: Option<PathBuf>,
}

struct Cell {
    file: usize,
    algo: Algo,
    c: u32,
}

fn run_cell(name: &str, bytes: &[u8], algo: Algo, c: u32, cfg: &BenchConfig) -> Result<BenchRow, String> {
    let start = Instant::now();
    let text = Text::ingest(bytes).map_err(|e| e.to_string())?;
    let parse = Workspace::new(&text).run(algo, c, cfg.space);
    let seconds = start.elapsed().as_secs_f64();
    let ledger = parse.validate(&text).map_err(|e| e.to_string())?;
    if let Some(dir) = &cfg.hist_dir {
        let path = dir.join(format!("hist_{name}_{algo}_{}.csv", fmt_c(c)));
        let f = fs::File::create(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        ledger
            .write_histogram(io::BufWriter::new(f))
            .map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(BenchRow {
        file: name.to_string(),
        n: text.len(),
        algo,
        c,
        zprime: parse.z(),
        overhead: 0.0,
        max_chain: ledger.max_chain(),
        mean_chain: ledger.mean_chain(),
        seconds,
        error: None,
    })
}

/// Runs every cell. LZ runs once per file (unbounded) and is the overhead
/// denominator. Rows are sorted by file, algorithm and `c`.
pub fn run_bench(files: &[(String, Vec<u8>)], cfg: &BenchConfig) -> BenchReport {
    let mut cells = Vec::new();
    for f in 0..files.len() {
        cells.push(Cell {
            file: f,
            algo: Algo::Lz,
            c: UNBOUNDED,
        });
        for &algo in cfg.algos.iter().filter(|&&a| a != Algo::Lz) {
            for &c in &cfg.cs {
                cells.push(Cell { file: f, algo, c });
            }
        }
    }
    let next = AtomicUsize::new(0);
    let rows = Mutex::new(Vec::with_capacity(cells.len()));
    let worker = || loop {
        let k = next.fetch_add(1, Ordering::Relaxed);
        let Some(cell) = cells.get(k) else { break };
        let (name, bytes) = &files[cell.file];
        let outcome = panic::catch_unwind(AssertUnwindSafe(|| run_cell(name, bytes, cell.algo, cell.c, cfg)))
            .unwrap_or_else(|_| Err("parser panicked".into()));
        let row = outcome.unwrap_or_else(|e| {
            eprintln!("{name} {} c={}: {e}", cell.algo, fmt_c(cell.c));
            BenchRow {
                file: name.clone(),
                n: bytes.len() + 1,
                algo: cell.algo,
                c: cell.c,
                zprime: 0,
                overhead: 0.0,
                max_chain: 0,
                mean_chain: 0.0,
                seconds: 0.0,
                error: Some(e),
            }
        });
        rows.lock().unwrap().push(row);
    };
    std::thread::scope(|s| {
        for _ in 1..cfg.jobs.max(1) {
            s.spawn(worker);
        }
        worker();
    });
    let mut rows = rows.into_inner().unwrap();
    rows.sort_by(|a, b| (&a.file, a.algo, a.c).cmp(&(&b.file, b.algo, b.c)));
    for f in files.iter().map(|(name, _)| name) {
        let base = rows
            .iter()
            .find(|r| &r.file == f && r.algo == Algo::Lz && r.error.is_none())
            .map(|r| r.zprime);
        for r in rows.iter_mut().filter(|r| &r.file == f) {
            match base {
                Some(z) if r.error.is_none() => r.overhead = r.zprime as f64 / z as f64,
                _ => {}
            }
        }
    }
    BenchReport { rows }
}

/// Reads the regular files of `dir` in name order.
pub fn read_corpus(dir: &Path) -> io::Result<Vec<(String, Vec<u8>)>> {
    let mut files = Vec::new();
    for entry in fs::read_dir(dir)? {
        let entry = entry?;
        if entry.file_type()?.is_file() {
            let name = entry.file_name().to_string_lossy().into_owned();
            files.push((name, fs::read(entry.path())?));
        }
    }
    files.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(files)
}
