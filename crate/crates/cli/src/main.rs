//! `holz`: compress, decompress, corpus statistics and benchmarks.
//!
//! Exit codes: 0 success, 1 runtime failure (I/O, corrupt input, failed
//! round trip), 2 usage error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use holz::bitio::Code;
use holz::container::{compress_detailed, decompress, escape_zeros, Method};
use holz::stats::{dataset_stats, StatsReport};
use holz::text::Text;
use rayon::prelude::*;

#[derive(Parser)]
#[command(name = "holz", version, about = "LZ compression with textual or co-lexicographic offsets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compress a file into the .holz container.
    Compress {
        #[arg(long, value_enum, default_value_t = MethodArg::Holz)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = CodeArg::Delta)]
        code: CodeArg,
        /// Replace 0x00 by 254 1 (and 254 by 254 254) before parsing.
        #[arg(long)]
        escape_zero: bool,
        #[arg(short, long)]
        output: PathBuf,
        input: PathBuf,
    },
    /// Restore the original bytes of a .holz file.
    Decompress {
        #[arg(short, long)]
        output: PathBuf,
        input: PathBuf,
    },
    /// Print n, sigma, z, r and H_0..H_k as CSV; a directory gives one row per file.
    Stats {
        #[arg(long, default_value_t = 4)]
        max_k: usize,
        #[arg(long)]
        escape_zero: bool,
        input: PathBuf,
    },
    /// Compress every dataset with every method and code, verify, and write CSV.
    Bench {
        /// Comma-separated methods.
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = MethodArg::all())]
        methods: Vec<MethodArg>,
        /// Comma-separated codes.
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [CodeArg::Gamma, CodeArg::Delta])]
        codes: Vec<CodeArg>,
        /// Trim every dataset to its first N bytes.
        #[arg(long)]
        prefix_bytes: Option<usize>,
        #[arg(long)]
        escape_zero: bool,
        #[arg(short, long)]
        output: PathBuf,
        /// Files or directories of files.
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Holz,
    HolzOpt,
    LzRightmost,
    LzNsvpsv,
    LzOpt,
}

impl MethodArg {
    fn all() -> [MethodArg; 5] {
        [MethodArg::LzNsvpsv, MethodArg::LzRightmost, MethodArg::LzOpt, MethodArg::Holz, MethodArg::HolzOpt]
    }

    fn method(self) -> Method {
        match self {
            MethodArg::Holz => Method::Holz,
            MethodArg::HolzOpt => Method::HolzOpt,
            MethodArg::LzRightmost => Method::LzRightmost,
            MethodArg::LzNsvpsv => Method::LzNsvpsv,
            MethodArg::LzOpt => Method::LzOpt,
        }
    }
}

impl std::fmt::Display for MethodArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.method().name())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CodeArg {
    Gamma,
    Delta,
}

impl CodeArg {
    fn code(self) -> Code {
        match self {
            CodeArg::Gamma => Code::Gamma,
            CodeArg::Delta => Code::Delta,
        }
    }
}

impl std::fmt::Display for CodeArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.code().name())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("holz: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Compress { method, code, escape_zero, output, input } => {
            let raw = read(&input)?;
            let c = compress_detailed(&raw, method.method(), code.code(), escape_zero)?;
            write_atomic(&output, &c.bytes)?;
            eprintln!(
                "z={} output_bytes={} ratio={:.6}",
                c.header.z,
                c.bytes.len(),
                c.bytes.len() as f64 / raw.len() as f64
            );
            Ok(())
        }
        Command::Decompress { output, input } => {
            let file = read(&input)?;
            let raw = decompress(&file).with_context(|| format!("decompressing {}", input.display()))?;
            write_atomic(&output, &raw)
        }
        Command::Stats { max_k, escape_zero, input } => {
            let files = dataset_files(&input)?;
            let rows: Vec<String> = files
                .par_iter()
                .map(|f| {
                    let raw = read(f)?;
                    let raw = if escape_zero { escape_zeros(&raw) } else { raw };
                    Ok(dataset_stats(&file_name(f), &Text::from_bytes(&raw), max_k).csv_row())
                })
                .collect::<Result<_>>()?;
            let mut out = std::io::stdout().lock();
            writeln!(out, "{}", StatsReport::csv_header(max_k))?;
            rows.iter().try_for_each(|r| writeln!(out, "{r}"))?;
            Ok(())
        }
        Command::Bench { methods, codes, prefix_bytes, escape_zero, output, inputs } => {
            let mut files = Vec::new();
            for i in &inputs {
                files.extend(dataset_files(i)?);
            }
            let rows: Vec<Vec<BenchRow>> = files
                .par_iter()
                .map(|f| bench_file(f, &methods, &codes, prefix_bytes, escape_zero))
                .collect::<Result<_>>()?;
            let mut csv = String::from(BenchRow::HEADER);
            csv.push('\n');
            for r in rows.iter().flatten() {
                csv.push_str(&r.csv());
                csv.push('\n');
            }
            write_atomic(&output, csv.as_bytes())
        }
    }
}

/// One verified measurement.
struct BenchRow {
    dataset: String,
    method: Method,
    code: Code,
    input_bytes: usize,
    output_bytes: usize,
    offset_bits: u64,
    length_bits: u64,
    wall_time_s: f64,
}

impl BenchRow {
    const HEADER: &'static str = "dataset,method,code,input_bytes,output_bytes,ratio,offset_bits,length_bits,wall_time_s";

    fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{:.6},{},{},{:.3}",
            self.dataset,
            self.method.name(),
            self.code.name(),
            self.input_bytes,
            self.output_bytes,
            self.output_bytes as f64 / self.input_bytes as f64,
            self.offset_bits,
            self.length_bits,
            self.wall_time_s
        )
    }
}

/// Runs sequentially over methods and codes so timings are not perturbed by
/// sibling jobs of the same file.
fn bench_file(path: &Path, methods: &[MethodArg], codes: &[CodeArg], prefix: Option<usize>, escape: bool) -> Result<Vec<BenchRow>> {
    let mut raw = read(path)?;
    if let Some(p) = prefix {
        raw.truncate(p);
    }
    let dataset = file_name(path);
    let mut rows = Vec::new();
    for &m in methods {
        for &c in codes {
            let (method, code) = (m.method(), c.code());
            let start = Instant::now();
            let out = compress_detailed(&raw, method, code, escape)?;
            let wall_time_s = start.elapsed().as_secs_f64();
            match decompress(&out.bytes) {
                Ok(back) if back == raw => {}
                Ok(_) => bail!("round trip mismatch: {dataset} {method} {}", code.name()),
                Err(e) => bail!("round trip failed: {dataset} {method} {}: {e}", code.name()),
            }
            rows.push(BenchRow {
                dataset: dataset.clone(),
                method,
                code,
                input_bytes: raw.len(),
                output_bytes: out.bytes.len(),
                offset_bits: out.bits.offset,
                length_bits: out.bits.length,
                wall_time_s,
            });
        }
    }
    Ok(rows)
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("reading {}", path.display()))
}

fn file_name(path: &Path) -> String {
    path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned())
}

/// A file, or the regular files of a directory sorted by name.
fn dataset_files(path: &Path) -> Result<Vec<PathBuf>> {
    let meta = fs::metadata(path).with_context(|| format!("reading {}", path.display()))?;
    if !meta.is_dir() {
        return Ok(vec![path.to_path_buf()]);
    }
    let mut files = Vec::new();
    for entry in fs::read_dir(path).with_context(|| format!("listing {}", path.display()))? {
        let p = entry?.path();
        if p.is_file() {
            files.push(p);
        }
    }
    files.sort();
    Ok(files)
}

/// Writes through a temporary file in the target directory, so a failure
/// never leaves a partial output behind.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("creating a file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
