//! Command-line front end: `ri-buildfasta` builds an index from FASTA and
//! `ri-align` counts or locates FASTQ reads against it.

use std::ffi::OsStr;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use flate2::read::MultiGzDecoder;
use rayon::prelude::*;
use rindex::align_out::{format_count_record, resolve, sam_header, sam_records};
use rindex::format::{catalog_path, index_path};
use rindex::{
    build_corpus, build_index, deserialize_index, open_fasta, serialize_index, Algorithm,
    FastqReader, Index, SequenceRecord,
};

/// Reads are handed to the worker pool in batches of this size.
const BATCH: usize = 4096;

const FASTA_EXTENSIONS: &[&str] = &["gz", "fa", "fasta", "fna", "fas", "ffn", "seq"];

#[derive(Debug, Clone, Args)]
pub struct BuildArgs {
    /// Construction algorithm (only `sais` is supported)
    #[arg(short = 'b', long = "algorithm", default_value = "sais")]
    pub algorithm: String,

    /// Output prefix; writes <prefix>.ri and <prefix>.1.ri
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,

    /// FASTA file, optionally gzipped
    pub input: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Count,
    Locate,
}

#[derive(Debug, Clone, Args)]
pub struct AlignArgs {
    /// Report at most this many occurrences per read
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_hits: Option<u64>,

    /// Only report reads occurring at most this many times
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_range: Option<u64>,

    /// Worker threads used to process reads
    #[arg(short = 't', long, global = true, default_value_t = 1,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: u64,

    #[command(subcommand)]
    pub mode: AlignMode,
}

#[derive(Debug, Clone, Subcommand)]
pub enum AlignMode {
    /// Length of the longest matching suffix of each read and its count
    Count(AlignInputs),
    /// SAM records for reads that match in full
    Locate(AlignInputs),
}

#[derive(Debug, Clone, Args)]
pub struct AlignInputs {
    /// Index prefix, without the .ri extension
    pub index: PathBuf,
    /// FASTQ reads, optionally gzipped
    pub reads: PathBuf,
}

impl AlignArgs {
    pub fn mode(&self) -> Mode {
        match self.mode {
            AlignMode::Count(_) => Mode::Count,
            AlignMode::Locate(_) => Mode::Locate,
        }
    }

    pub fn inputs(&self) -> &AlignInputs {
        match &self.mode {
            AlignMode::Count(i) | AlignMode::Locate(i) => i,
        }
    }
}

/// `ri-buildfasta`
#[derive(Debug, Parser)]
#[command(
    name = "ri-buildfasta",
    version,
    about = "Build an r-index from a FASTA file"
)]
pub struct BuildCli {
    #[command(flatten)]
    pub args: BuildArgs,
}

/// `ri-align`
#[derive(Debug, Parser)]
#[command(
    name = "ri-align",
    version,
    about = "Count or locate FASTQ reads in an r-index"
)]
pub struct AlignCli {
    #[command(flatten)]
    pub args: AlignArgs,
}

/// `ri`, with both tools as subcommands.
#[derive(Debug, Parser)]
#[command(
    name = "ri",
    version,
    about = "Run-length compressed full-text index for genomic collections"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build an index from a FASTA file
    Build(BuildArgs),
    /// Count or locate FASTQ reads
    Align(AlignArgs),
}

/// Prefix used when `-o` is not given: the input file name with FASTA and
/// gzip extensions removed, in the current directory.
pub fn default_prefix(input: &Path) -> PathBuf {
    let mut name = input
        .file_name()
        .unwrap_or_else(|| OsStr::new("index"))
        .to_string_lossy()
        .into_owned();
    while let Some((stem, ext)) = name.rsplit_once('.') {
        if stem.is_empty() || !FASTA_EXTENSIONS.contains(&ext.to_ascii_lowercase().as_str()) {
            break;
        }
        name = stem.to_string();
    }
    PathBuf::from(name)
}

pub fn cmd_build(args: &BuildArgs) -> Result<()> {
    // Rejects anything but sais, including bigbwt.
    args.algorithm.parse::<Algorithm>()?;
    let start = Instant::now();
    let prefix = args
        .output
        .clone()
        .unwrap_or_else(|| default_prefix(&args.input));

    let records = open_fasta(&args.input)?;
    if records.is_empty() {
        bail!("{}: no sequences found", args.input.display());
    }
    let (corpus, catalog) = build_corpus(&records)?;
    drop(records);
    let index = build_index(&corpus, catalog)?;
    serialize_index(&index, &prefix)?;

    eprintln!(
        "indexed {} sequences: n = {}, r = {}, n/r = {:.2}, {:.2} s; wrote {} and {}",
        index.catalog().len(),
        index.n(),
        index.r(),
        index.n() as f64 / index.r() as f64,
        start.elapsed().as_secs_f64(),
        index_path(&prefix).display(),
        catalog_path(&prefix).display()
    );
    Ok(())
}

fn open_reads(path: &Path) -> Result<Box<dyn BufRead>> {
    let file = File::open(path).with_context(|| format!("cannot open reads {}", path.display()))?;
    let mut reader = BufReader::new(file);
    let gzipped = reader.fill_buf()?.starts_with(&[0x1f, 0x8b]);
    Ok(if gzipped {
        Box::new(BufReader::new(MultiGzDecoder::new(reader)))
    } else {
        Box::new(reader)
    })
}

/// Output for one read: a count line, or its SAM records.
pub fn render_read(
    index: &Index,
    read: &SequenceRecord,
    mode: Mode,
    max_hits: Option<usize>,
    max_range: Option<usize>,
) -> Result<String> {
    match mode {
        Mode::Count => {
            let result = index.count_longest_suffix(&read.bases)?;
            Ok(format_count_record(&read.name, &result))
        }
        Mode::Locate => {
            let (result, hits) = index.locate(&read.bases, max_hits, max_range)?;
            let resolved = hits
                .iter()
                .map(|h| resolve(index.catalog(), h.global_offset, read.bases.len()))
                .collect::<rindex::Result<Vec<_>>>()?;
            let mut out = String::new();
            for rec in sam_records(read, &result, &resolved) {
                out.push_str(&rec.to_string());
                out.push('\n');
            }
            Ok(out)
        }
    }
}

/// Streams reads through the index and writes results in input order.
pub fn cmd_align<W: Write>(args: &AlignArgs, out: &mut W) -> Result<()> {
    let inputs = args.inputs();
    let mode = args.mode();
    let max_hits = args.max_hits.map(|k| k as usize);
    let max_range = args.max_range.map(|k| k as usize);

    let index = deserialize_index(&inputs.index)
        .with_context(|| format!("cannot load index {}", inputs.index.display()))?;
    let reads = FastqReader::new(open_reads(&inputs.reads)?);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads as usize)
        .build()?;

    if mode == Mode::Locate {
        out.write_all(sam_header(index.catalog()).as_bytes())?;
    }
    let render = |read: &SequenceRecord| render_read(&index, read, mode, max_hits, max_range);
    let mut batch = Vec::with_capacity(BATCH);
    let mut reads = reads.peekable();
    while reads.peek().is_some() {
        batch.clear();
        for read in reads.by_ref().take(BATCH) {
            batch.push(read.with_context(|| format!("in {}", inputs.reads.display()))?);
        }
        let rendered: Vec<String> = if args.threads > 1 {
            pool.install(|| batch.par_iter().map(render).collect::<Result<_>>())?
        } else {
            batch.iter().map(render).collect::<Result<_>>()?
        };
        for chunk in rendered {
            out.write_all(chunk.as_bytes())?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Runs a command, printing any error to standard error.
pub fn report(result: Result<()>) -> std::process::ExitCode {
    match result {
        Ok(()) => std::process::ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::ExitCode::FAILURE
        }
    }
}

pub fn run_align(args: &AlignArgs) -> Result<()> {
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    cmd_align(args, &mut out)
}
