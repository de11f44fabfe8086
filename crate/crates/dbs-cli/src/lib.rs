//! The `dbs` command line: index building and inspection, searching with
//! selectable engines, random data generation and the benchmark harness.
//!
//! Exit codes: 0 on success (including zero matches), 1 on usage errors,
//! 2 on I/O or data format errors.

pub mod bench;

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use bench::Engine;
use dbs_core::{
    bndm_degenerate, find_occurrences, generate, naive_match, read_fasta, write_fasta, BwtIndex,
    DegenerateString, FastaRecord, GenSpec, Symbol,
};

/// Marks errors caused by how the tool was invoked rather than by the data;
/// they exit with code 1 instead of 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage<T>(message: impl Into<String>) -> Result<T> {
    Err(anyhow!(UsageError(message.into())))
}

#[derive(Parser)]
#[command(
    name = "dbs",
    version,
    about = "Pattern matching in degenerate (IUPAC) strings via BWT backward search",
    long_about = "Indexes degenerate texts with a Burrows-Wheeler transform and searches \
                  degenerate patterns by backward search over row-interval sets. Patterns and \
                  texts use IUPAC codes (or [ACG] bracket sets); reported positions are 1-based \
                  match starts unless --zero-based is given."
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build or inspect binary index files
    #[command(subcommand)]
    Index(IndexCommand),
    /// Search patterns in an index or FASTA file
    Search(SearchArgs),
    /// Generate random sequences as FASTA
    Gen(GenArgs),
    /// Run a benchmark scenario and emit CSV
    Bench(BenchArgs),
}

#[derive(Subcommand)]
enum IndexCommand {
    /// Index a FASTA record into a .dbsi file
    Build(IndexBuildArgs),
    /// Print summary information about an index file
    Inspect { index: PathBuf },
}

#[derive(clap::Args)]
struct IndexBuildArgs {
    /// Input FASTA file
    input: PathBuf,
    /// Output index file
    #[arg(short, long)]
    output: PathBuf,
    /// Record to index when the FASTA has several
    #[arg(long)]
    record: Option<String>,
    /// Suffix-array sample rate (locate cost is at most this many LF-steps
    /// per occurrence)
    #[arg(long, default_value_t = dbs_core::DEFAULT_SAMPLE_RATE)]
    sample_rate: u32,
}

#[derive(clap::Args)]
struct SearchArgs {
    /// Index file (.dbsi) or FASTA file; FASTA input is indexed on the fly
    /// when the dbs engine runs
    input: PathBuf,
    /// Pattern in IUPAC or bracket notation; repeatable
    #[arg(short, long = "pattern", required = true)]
    patterns: Vec<String>,
    /// Matching engine
    #[arg(long, value_enum, default_value_t = Engine::Dbs)]
    engine: Engine,
    /// Print only the number of occurrences per pattern
    #[arg(long)]
    count_only: bool,
    /// Emit one JSON object per pattern
    #[arg(long)]
    json: bool,
    /// Report 0-based offsets instead of 1-based positions
    #[arg(long)]
    zero_based: bool,
    /// Record to search when the input FASTA has several
    #[arg(long)]
    record: Option<String>,
    /// Sample rate for on-the-fly indexing of FASTA input
    #[arg(long, default_value_t = dbs_core::DEFAULT_SAMPLE_RATE)]
    sample_rate: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenKindArg {
    Solid,
    Degenerate,
    Conservative,
}

#[derive(clap::Args)]
struct GenArgs {
    /// Kind of text to generate
    #[arg(long, value_enum)]
    kind: GenKindArg,
    /// Sequence length
    #[arg(short = 'n', long)]
    length: usize,
    /// Number of degenerate letters (conservative kind)
    #[arg(long)]
    q: Option<usize>,
    /// Probability of a degenerate letter per position (degenerate kind)
    #[arg(long)]
    fraction: Option<f64>,
    /// RNG seed; the output is a pure function of the flags
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// FASTA record name
    #[arg(long)]
    name: Option<String>,
    /// Output file (stdout when omitted)
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScenarioArg {
    A,
    B,
}

#[derive(clap::Args)]
struct BenchArgs {
    /// Scenario: a sweeps the pattern count on a solid text, b sweeps the
    /// text length with a fixed degenerate pattern
    #[arg(long, value_enum)]
    scenario: ScenarioArg,
    /// Engines to compare
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Engine::Dbs, Engine::Bndm])]
    engines: Vec<Engine>,
    /// Repetitions per cell; the median is reported
    #[arg(long, default_value_t = 1)]
    repetitions: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Scenario a: text length
    #[arg(long)]
    text_len: Option<usize>,
    /// Scenario a: comma-separated pattern counts to sweep
    #[arg(long, value_delimiter = ',')]
    pattern_counts: Option<Vec<usize>>,
    /// Pattern length (scenario a generates patterns of this length)
    #[arg(long, default_value_t = 8)]
    pattern_len: usize,
    /// Scenario b: comma-separated text lengths to sweep
    #[arg(long, value_delimiter = ',')]
    text_lens: Option<Vec<usize>>,
    /// Scenario b: the fixed pattern (IUPAC or bracket notation)
    #[arg(long)]
    pattern: Option<String>,
    /// Scenario b: fraction of degenerate letters in the text
    #[arg(long, default_value_t = 0.10)]
    degenerate_fraction: f64,
    /// Suffix-array sample rate for the scenario indexes; 1 keeps the full
    /// suffix array
    #[arg(long, default_value_t = 1)]
    sample_rate: u32,
    /// Write the CSV here instead of stdout
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Also write gnuplot-ready .dat files into this directory
    #[arg(long)]
    gnuplot: Option<PathBuf>,
}

/// Parses the command line and runs it, returning the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        // a consumer such as `head` closing the pipe is not an error
        Err(e) if is_broken_pipe(&e) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                1
            } else {
                2
            }
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|cause| {
        cause
            .downcast_ref::<std::io::Error>()
            .is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
    })
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Index(IndexCommand::Build(args)) => cmd_index_build(args),
        Command::Index(IndexCommand::Inspect { index }) => cmd_index_inspect(&index),
        Command::Search(args) => cmd_search(args),
        Command::Gen(args) => cmd_gen(args),
        Command::Bench(args) => cmd_bench(args),
    }
}

fn pick_record(records: Vec<FastaRecord>, wanted: Option<&str>, path: &Path) -> Result<FastaRecord> {
    if records.is_empty() {
        return Err(anyhow!("{}: no FASTA records found", path.display()));
    }
    match wanted {
        None if records.len() == 1 => Ok(records.into_iter().next().unwrap()),
        None => usage(format!(
            "{} has {} records; pick one with --record ({})",
            path.display(),
            records.len(),
            records
                .iter()
                .map(|r| r.name.as_str())
                .collect::<Vec<_>>()
                .join(", ")
        )),
        Some(name) => records
            .into_iter()
            .find(|r| r.name == name)
            .ok_or_else(|| anyhow!("{}: no record named '{name}'", path.display())),
    }
}

fn cmd_index_build(args: IndexBuildArgs) -> Result<()> {
    let records = read_fasta(&args.input).with_context(|| args.input.display().to_string())?;
    let record = pick_record(records, args.record.as_deref(), &args.input)?;
    let index = BwtIndex::build_with_rate(&record.sequence, args.sample_rate)?;
    let file = File::create(&args.output)
        .with_context(|| format!("create {}", args.output.display()))?;
    index.write_to(BufWriter::new(file))?;
    let bytes = std::fs::metadata(&args.output)?.len();
    let stdout = std::io::stdout();
    writeln!(
        stdout.lock(),
        "indexed record '{}': n={}, degenerate letters={}, sample rate={}, {} bytes -> {}",
        record.name,
        index.n(),
        record.sequence.degenerate_letter_count(),
        index.sample_rate(),
        bytes,
        args.output.display()
    )?;
    Ok(())
}

fn cmd_index_inspect(path: &Path) -> Result<()> {
    let index = load_index(path)?;
    let sigma = index.alphabet().sigma();
    let stdout = std::io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    writeln!(out, "index file      {}", path.display())?;
    writeln!(out, "format version  1")?;
    writeln!(out, "sigma           {sigma}")?;
    writeln!(out, "n               {}", index.n())?;
    writeln!(out, "rows            {}", index.rows())?;
    writeln!(out, "h               {}", index.h())?;
    writeln!(out, "sample rate     {}", index.sample_rate())?;
    let degenerate: u64 = index
        .occurring_symbols()
        .iter()
        .filter(|&&m| m.count_ones() != 1)
        .map(|&m| index.symbol_count(Symbol::from_mask_unchecked(m)))
        .sum();
    writeln!(out, "degenerate letters {degenerate}")?;
    writeln!(out, "symbol counts:")?;
    for &mask in index.occurring_symbols() {
        let sym = Symbol::from_mask_unchecked(mask);
        let label = if sigma == 4 {
            dbs_core::decode_iupac(sym).unwrap_or('?').to_string()
        } else {
            format!("{mask:#04x}")
        };
        writeln!(out, "  {label:<4} (mask {mask:2})  {}", index.symbol_count(sym))?;
    }
    out.flush()?;
    Ok(())
}

fn load_index(path: &Path) -> Result<BwtIndex> {
    let mut file = File::open(path).with_context(|| format!("open {}", path.display()))?;
    let mut bytes = Vec::new();
    file.read_to_end(&mut bytes)?;
    Ok(BwtIndex::from_bytes(&bytes)?)
}

enum SearchInput {
    Index(BwtIndex),
    Fasta(FastaRecord),
}

fn load_search_input(args: &SearchArgs) -> Result<SearchInput> {
    let mut file = File::open(&args.input).with_context(|| format!("open {}", args.input.display()))?;
    let mut magic = [0u8; 4];
    let got = file.read(&mut magic)?;
    drop(file);
    if got == 4 && &magic == b"DBSI" {
        return Ok(SearchInput::Index(load_index(&args.input)?));
    }
    let records = read_fasta(&args.input).with_context(|| args.input.display().to_string())?;
    Ok(SearchInput::Fasta(pick_record(
        records,
        args.record.as_deref(),
        &args.input,
    )?))
}

#[derive(Serialize)]
struct SearchRecord<'a> {
    pattern: &'a str,
    count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    positions: Option<Vec<usize>>,
}

fn cmd_search(args: SearchArgs) -> Result<()> {
    let input = load_search_input(&args)?;

    // dbs needs the index, the scanners need the text; either input form
    // yields both (the text comes back out of an index by inverting the
    // transform).
    let (index, text) = match (&input, args.engine) {
        (SearchInput::Index(idx), Engine::Dbs) => (Some(idx.clone()), None),
        (SearchInput::Index(idx), _) => (None, Some(idx.text())),
        (SearchInput::Fasta(rec), Engine::Dbs) => (
            Some(BwtIndex::build_with_rate(&rec.sequence, args.sample_rate)?),
            None,
        ),
        (SearchInput::Fasta(rec), _) => (None, Some(rec.sequence.clone())),
    };
    let alphabet = match (&index, &text) {
        (Some(idx), _) => idx.alphabet(),
        (_, Some(t)) => t.alphabet(),
        _ => unreachable!(),
    };

    let patterns: Vec<DegenerateString> = args
        .patterns
        .iter()
        .map(|p| {
            DegenerateString::parse(p, alphabet)
                .map_err(|e| anyhow!(UsageError(format!("pattern '{p}': {e}"))))
        })
        .collect::<Result<_>>()?;

    // Patterns run concurrently against the shared input; output order
    // stays the invocation order.
    let results: Vec<Result<(usize, Option<Vec<usize>>)>> = patterns
        .par_iter()
        .map(|p| -> Result<(usize, Option<Vec<usize>>)> {
            match (args.engine, &index, &text) {
                (Engine::Dbs, Some(idx), _) => {
                    if args.count_only {
                        let h = dbs_core::degenerate_backward_search(p, idx)?;
                        Ok((h.covered_rows(), None))
                    } else {
                        let positions = find_occurrences(p, idx)?;
                        Ok((positions.len(), Some(positions)))
                    }
                }
                (Engine::Naive, _, Some(t)) => {
                    let positions = naive_match(p, t)?;
                    Ok((positions.len(), (!args.count_only).then_some(positions)))
                }
                (Engine::Bndm, _, Some(t)) => {
                    let positions = bndm_degenerate(p, t).map_err(|e| match e {
                        e @ dbs_core::Error::PatternTooLong(_) => anyhow!(UsageError(e.to_string())),
                        e => e.into(),
                    })?;
                    Ok((positions.len(), (!args.count_only).then_some(positions)))
                }
                _ => unreachable!(),
            }
        })
        .collect();

    let stdout = std::io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    for (raw, result) in args.patterns.iter().zip(results) {
        let (count, positions) = result.with_context(|| format!("pattern '{raw}'"))?;
        let positions = positions.map(|mut ps| {
            if args.zero_based {
                for p in &mut ps {
                    *p -= 1;
                }
            }
            ps
        });
        if args.json {
            let record = SearchRecord {
                pattern: raw,
                count,
                positions,
            };
            serde_json::to_writer(&mut out, &record)?;
            out.write_all(b"\n")?;
        } else if args.count_only {
            writeln!(out, "{raw}\t{count}")?;
        } else {
            for p in positions.unwrap_or_default() {
                writeln!(out, "{raw}\t{p}")?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn cmd_gen(args: GenArgs) -> Result<()> {
    let kind_name = match args.kind {
        GenKindArg::Solid => "solid",
        GenKindArg::Degenerate => "degenerate",
        GenKindArg::Conservative => "conservative",
    };
    let spec = match args.kind {
        GenKindArg::Solid => {
            if args.q.is_some() || args.fraction.is_some() {
                return usage("--q and --fraction do not apply to the solid kind");
            }
            GenSpec::solid(args.length, args.seed)
        }
        GenKindArg::Degenerate => {
            if args.q.is_some() {
                return usage("--q applies to the conservative kind; use --fraction");
            }
            let Some(fraction) = args.fraction else {
                return usage("the degenerate kind needs --fraction");
            };
            GenSpec::degenerate(args.length, fraction, args.seed)
        }
        GenKindArg::Conservative => {
            if args.fraction.is_some() {
                return usage("--fraction applies to the degenerate kind; use --q");
            }
            let Some(q) = args.q else {
                return usage("the conservative kind needs --q");
            };
            GenSpec::conservative(args.length, q, args.seed)
        }
    };
    let sequence = generate(&spec)?;
    let name = args
        .name
        .unwrap_or_else(|| format!("{kind_name}_n{}_s{}", args.length, args.seed));
    let record = FastaRecord { name, sequence };
    match args.output {
        Some(path) => {
            let file = File::create(&path).with_context(|| format!("create {}", path.display()))?;
            write_fasta(BufWriter::new(file), std::slice::from_ref(&record))?;
        }
        None => {
            let stdout = std::io::stdout();
            write_fasta(stdout.lock(), std::slice::from_ref(&record))?;
        }
    }
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> Result<()> {
    let rows = match args.scenario {
        ScenarioArg::A => {
            if args.text_lens.is_some() || args.pattern.is_some() {
                return usage("--text-lens and --pattern belong to scenario b");
            }
            let defaults = bench::ScenarioA::default();
            let cfg = bench::ScenarioA {
                engines: args.engines,
                repetitions: args.repetitions,
                seed: args.seed,
                pattern_len: args.pattern_len,
                sample_rate: args.sample_rate,
                text_len: args.text_len.unwrap_or(defaults.text_len),
                pattern_counts: args.pattern_counts.unwrap_or(defaults.pattern_counts),
            };
            bench::run_scenario_a(&cfg)?
        }
        ScenarioArg::B => {
            if args.text_len.is_some() || args.pattern_counts.is_some() {
                return usage("--text-len and --pattern-counts belong to scenario a");
            }
            let defaults = bench::ScenarioB::default();
            let pattern = match args.pattern {
                Some(text) => DegenerateString::parse(&text, dbs_core::BaseAlphabet::DNA)
                    .map_err(|e| anyhow!(UsageError(format!("pattern '{text}': {e}"))))?,
                None => defaults.pattern,
            };
            let cfg = bench::ScenarioB {
                engines: args.engines,
                repetitions: args.repetitions.max(1),
                seed: args.seed,
                degenerate_fraction: args.degenerate_fraction,
                sample_rate: args.sample_rate,
                text_lens: args.text_lens.unwrap_or(defaults.text_lens),
                pattern,
            };
            bench::run_scenario_b(&cfg)?
        }
    };

    let csv = bench::rows_to_csv(&rows);
    match args.output {
        Some(path) => std::fs::write(&path, csv).with_context(|| format!("write {}", path.display()))?,
        None => {
            let stdout = std::io::stdout();
            stdout.lock().write_all(csv.as_bytes())?;
        }
    }
    if let Some(dir) = args.gnuplot {
        bench::write_gnuplot_data(&rows, &dir)?;
    }
    Ok(())
}
