//! Benchmark scenarios comparing the BWT search against the baseline
//! scanners, with CSV output.
//!
//! Two built-in scenarios:
//!
//! * **a** — a fixed solid text; sweep the number of degenerate patterns of
//!   a fixed length. Shows where batching queries against one index pays
//!   off.
//! * **b** — a fixed degenerate pattern; sweep the text length over
//!   conservative texts with a fixed fraction of degenerate letters.
//!
//! Query times never include index construction; that cost is reported in
//! its own column. Locating occurrences is part of the query time, and the
//! scenario indexes default to a suffix-array sample at every row so that
//! reporting goes through a plain suffix-array lookup.

use std::fmt;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use dbs_core::{
    bndm_degenerate, find_occurrences, generate, naive_match, random_light_pattern, BwtIndex,
    DegenerateString, GenSpec,
};

/// Which matcher answers a query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    /// Backward search on the BWT index, occurrences located via the
    /// sampled suffix array.
    Dbs,
    /// Positionwise scan of every alignment.
    Naive,
    /// Bit-parallel BNDM window shifting.
    Bndm,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Dbs => "dbs",
            Engine::Naive => "naive",
            Engine::Bndm => "bndm",
        })
    }
}

/// One benchmark cell.
#[derive(Debug, Clone)]
pub struct BenchRow {
    pub scenario: char,
    pub engine: Engine,
    pub n: usize,
    pub m: usize,
    pub pattern_count: usize,
    pub q: usize,
    pub build_ms: f64,
    pub query_ms: f64,
    pub occurrences: u64,
    /// Largest interval-set size across the cell's queries, measured in an
    /// untimed pass. Index engine only; not part of the CSV schema.
    pub max_intervals: usize,
}

pub const CSV_HEADER: &str = "scenario,engine,n,m,pattern_count,q,build_ms,query_ms,occurrences";

impl BenchRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{:.3},{:.3},{}",
            self.scenario,
            self.engine,
            self.n,
            self.m,
            self.pattern_count,
            self.q,
            self.build_ms,
            self.query_ms,
            self.occurrences
        )
    }
}

pub fn rows_to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv());
        out.push('\n');
    }
    out
}

/// Scenario a: solid text, sweep the pattern count. Patterns mix solid and
/// double-base letters.
#[derive(Debug, Clone)]
pub struct ScenarioA {
    pub text_len: usize,
    pub pattern_len: usize,
    pub pattern_counts: Vec<usize>,
    pub engines: Vec<Engine>,
    pub repetitions: usize,
    pub seed: u64,
    pub sample_rate: u32,
}

impl Default for ScenarioA {
    fn default() -> Self {
        ScenarioA {
            text_len: 5_000_000,
            pattern_len: 8,
            pattern_counts: vec![1, 2, 4, 8, 16, 32],
            engines: vec![Engine::Dbs, Engine::Bndm],
            repetitions: 1,
            seed: 42,
            sample_rate: 1,
        }
    }
}

/// Scenario b: fixed degenerate pattern, sweep the text length over
/// conservative texts.
#[derive(Debug, Clone)]
pub struct ScenarioB {
    pub text_lens: Vec<usize>,
    pub pattern: DegenerateString,
    /// Fraction of text positions made degenerate (placed exactly).
    pub degenerate_fraction: f64,
    pub engines: Vec<Engine>,
    pub repetitions: usize,
    pub seed: u64,
    pub sample_rate: u32,
}

impl Default for ScenarioB {
    fn default() -> Self {
        ScenarioB {
            text_lens: vec![100_000, 300_000, 1_000_000, 3_000_000],
            pattern: default_scenario_b_pattern(),
            degenerate_fraction: 0.10,
            engines: vec![Engine::Dbs, Engine::Bndm],
            repetitions: 3,
            seed: 42,
            sample_rate: 1,
        }
    }
}

/// Length-8 pattern with two degenerate letters (K = {G,T}, R = {A,G}).
pub fn default_scenario_b_pattern() -> DegenerateString {
    DegenerateString::from_iupac("ACKACRTA").expect("valid IUPAC literal")
}

fn run_query(engine: Engine, p: &DegenerateString, idx: &BwtIndex, t: &DegenerateString) -> Result<u64> {
    let count = match engine {
        Engine::Dbs => find_occurrences(p, idx)?.len(),
        Engine::Naive => naive_match(p, t)?.len(),
        Engine::Bndm => bndm_degenerate(p, t)?.len(),
    };
    Ok(count as u64)
}

/// Largest |H| over all steps of all patterns; only the index engine has
/// interval bookkeeping to report.
fn max_intervals(engine: Engine, patterns: &[DegenerateString], idx: &BwtIndex) -> Result<usize> {
    if engine != Engine::Dbs {
        return Ok(0);
    }
    let mut max = 0;
    for p in patterns {
        let (_, steps) = dbs_core::degenerate_backward_search_traced(p, idx, true)?;
        max = max.max(steps.iter().map(|s| s.state.len()).max().unwrap_or(0));
    }
    Ok(max)
}

fn median(samples: &mut [f64]) -> f64 {
    samples.sort_by(|a, b| a.total_cmp(b));
    samples[samples.len() / 2]
}

/// Times `repetitions` runs of the batch and returns the median wall time
/// in milliseconds along with the per-pattern occurrence counts.
fn time_batch(
    engine: Engine,
    patterns: &[DegenerateString],
    idx: &BwtIndex,
    t: &DegenerateString,
    repetitions: usize,
) -> Result<(f64, Vec<u64>)> {
    let mut samples = Vec::with_capacity(repetitions);
    let mut counts = Vec::new();
    for _ in 0..repetitions.max(1) {
        counts.clear();
        let start = Instant::now();
        for p in patterns {
            counts.push(run_query(engine, p, idx, t)?);
        }
        samples.push(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok((median(&mut samples), counts))
}

fn check_engines_agree(engines: &[Engine], per_engine_counts: &[Vec<u64>]) -> Result<()> {
    for w in per_engine_counts.windows(2) {
        if w[0] != w[1] {
            bail!("engines disagree on occurrence counts: {engines:?} {per_engine_counts:?}");
        }
    }
    Ok(())
}

pub fn run_scenario_a(cfg: &ScenarioA) -> Result<Vec<BenchRow>> {
    if cfg.engines.is_empty() || cfg.pattern_counts.is_empty() {
        bail!("scenario a needs at least one engine and one pattern count");
    }
    let text = generate(&GenSpec::solid(cfg.text_len, cfg.seed)).context("generate text")?;
    let build_start = Instant::now();
    let idx = BwtIndex::build_with_rate(&text, cfg.sample_rate)?;
    let build_ms = build_start.elapsed().as_secs_f64() * 1e3;

    let max_count = *cfg.pattern_counts.iter().max().unwrap();
    let patterns: Vec<DegenerateString> = (0..max_count)
        .map(|i| {
            random_light_pattern(
                cfg.pattern_len,
                cfg.seed ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
            )
        })
        .collect();

    let mut rows = Vec::new();
    let mut full_batch_counts: Vec<Vec<u64>> = Vec::new();
    for &engine in &cfg.engines {
        for &count in &cfg.pattern_counts {
            let (query_ms, counts) =
                time_batch(engine, &patterns[..count], &idx, &text, cfg.repetitions)?;
            if count == max_count {
                full_batch_counts.push(counts.clone());
            }
            rows.push(BenchRow {
                scenario: 'a',
                engine,
                n: cfg.text_len,
                m: cfg.pattern_len,
                pattern_count: count,
                q: 0,
                build_ms: if engine == Engine::Dbs { build_ms } else { 0.0 },
                query_ms,
                occurrences: counts.iter().sum(),
                max_intervals: max_intervals(engine, &patterns[..count], &idx)?,
            });
        }
    }
    check_engines_agree(&cfg.engines, &full_batch_counts)?;
    Ok(rows)
}

pub fn run_scenario_b(cfg: &ScenarioB) -> Result<Vec<BenchRow>> {
    if cfg.engines.is_empty() || cfg.text_lens.is_empty() {
        bail!("scenario b needs at least one engine and one text length");
    }
    if !(0.0..=1.0).contains(&cfg.degenerate_fraction) {
        bail!("degenerate fraction must lie in [0, 1]");
    }
    let m = cfg.pattern.len();
    let mut rows = Vec::new();
    for &n in &cfg.text_lens {
        let q = (n as f64 * cfg.degenerate_fraction).round() as usize;
        let text = generate(&GenSpec::conservative(n, q, cfg.seed)).context("generate text")?;
        let build_start = Instant::now();
        let idx = BwtIndex::build_with_rate(&text, cfg.sample_rate)?;
        let build_ms = build_start.elapsed().as_secs_f64() * 1e3;

        let pattern = std::slice::from_ref(&cfg.pattern);
        let mut counts_per_engine = Vec::new();
        for &engine in &cfg.engines {
            let (query_ms, counts) = time_batch(engine, pattern, &idx, &text, cfg.repetitions)?;
            counts_per_engine.push(counts.clone());
            rows.push(BenchRow {
                scenario: 'b',
                engine,
                n,
                m,
                pattern_count: 1,
                q,
                build_ms: if engine == Engine::Dbs { build_ms } else { 0.0 },
                query_ms,
                occurrences: counts.iter().sum(),
                max_intervals: max_intervals(engine, pattern, &idx)?,
            });
        }
        check_engines_agree(&cfg.engines, &counts_per_engine)?;
    }
    Ok(rows)
}

/// Writes one gnuplot-ready data file per scenario present in `rows`:
/// `scenario_a.dat` keyed by pattern count, `scenario_b.dat` keyed by text
/// length, one query-time column per engine.
pub fn write_gnuplot_data(rows: &[BenchRow], dir: &std::path::Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for (scenario, key_name) in [('a', "pattern_count"), ('b', "n")] {
        let scoped: Vec<&BenchRow> = rows.iter().filter(|r| r.scenario == scenario).collect();
        if scoped.is_empty() {
            continue;
        }
        let mut engines: Vec<Engine> = Vec::new();
        for r in &scoped {
            if !engines.contains(&r.engine) {
                engines.push(r.engine);
            }
        }
        let mut keys: Vec<usize> = scoped
            .iter()
            .map(|r| if scenario == 'a' { r.pattern_count } else { r.n })
            .collect();
        keys.sort_unstable();
        keys.dedup();

        let mut out = format!(
            "# {key_name} {}\n",
            engines
                .iter()
                .map(|e| format!("{e}_query_ms"))
                .collect::<Vec<_>>()
                .join(" ")
        );
        for key in keys {
            out.push_str(&key.to_string());
            for &engine in &engines {
                let cell = scoped.iter().find(|r| {
                    r.engine == engine
                        && (if scenario == 'a' { r.pattern_count } else { r.n }) == key
                });
                match cell {
                    Some(r) => out.push_str(&format!(" {:.3}", r.query_ms)),
                    None => out.push_str(" nan"),
                }
            }
            out.push('\n');
        }
        std::fs::write(dir.join(format!("scenario_{scenario}.dat")), out)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_scenario_a_emits_counts_times_engines_rows() {
        let cfg = ScenarioA {
            text_len: 2_000,
            pattern_len: 4,
            pattern_counts: vec![1, 2, 3],
            engines: vec![Engine::Dbs, Engine::Bndm],
            repetitions: 1,
            seed: 7,
            sample_rate: 1,
        };
        let rows = run_scenario_a(&cfg).unwrap();
        assert_eq!(rows.len(), 6);
        let csv = rows_to_csv(&rows);
        assert!(csv.starts_with(CSV_HEADER));
        assert_eq!(csv.lines().count(), 7);
        // interval statistics are tracked for the index engine only
        assert!(rows
            .iter()
            .all(|r| (r.engine == Engine::Dbs) == (r.max_intervals > 0)));
    }

    #[test]
    fn engines_report_identical_occurrences_per_cell() {
        let cfg = ScenarioA {
            text_len: 3_000,
            pattern_len: 6,
            pattern_counts: vec![4],
            engines: vec![Engine::Dbs, Engine::Naive, Engine::Bndm],
            repetitions: 1,
            seed: 3,
            sample_rate: 1,
        };
        let rows = run_scenario_a(&cfg).unwrap();
        let occ: Vec<u64> = rows.iter().map(|r| r.occurrences).collect();
        assert!(occ.windows(2).all(|w| w[0] == w[1]), "{occ:?}");
    }

    #[test]
    fn scenario_b_places_ten_percent_degenerate_letters() {
        let cfg = ScenarioB {
            text_lens: vec![1_000, 2_000],
            repetitions: 1,
            engines: vec![Engine::Dbs, Engine::Naive],
            ..Default::default()
        };
        let rows = run_scenario_b(&cfg).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(|r| r.q == r.n / 10));
        assert!(rows.iter().all(|r| r.m == 8));
    }

    #[test]
    fn build_time_stays_out_of_query_cells() {
        let cfg = ScenarioA {
            text_len: 2_000,
            pattern_len: 4,
            pattern_counts: vec![2],
            engines: vec![Engine::Bndm],
            repetitions: 1,
            seed: 1,
            sample_rate: 1,
        };
        let rows = run_scenario_a(&cfg).unwrap();
        // engines without an index build report zero build time
        assert_eq!(rows[0].build_ms, 0.0);
    }

    #[test]
    fn gnuplot_files_cover_each_scenario() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = ScenarioA {
            text_len: 1_000,
            pattern_len: 4,
            pattern_counts: vec![1, 2],
            engines: vec![Engine::Dbs],
            repetitions: 1,
            seed: 5,
            sample_rate: 1,
        };
        let rows = run_scenario_a(&cfg).unwrap();
        write_gnuplot_data(&rows, dir.path()).unwrap();
        let data = std::fs::read_to_string(dir.path().join("scenario_a.dat")).unwrap();
        assert!(data.starts_with("# pattern_count dbs_query_ms"));
        assert_eq!(data.lines().count(), 3);
    }
}
