//! Sweep engine: evaluates every enabled bound on a `(q, n, d)` grid,
//! picks the winners per cell and aggregates win/draw statistics.

use log::warn;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use crate::classical::{
    elias_bassalygo_bound, griesmer_max_k, hamming_bound, johnson_bound, k_form, plotkin_bound,
    singleton_bound,
};
use crate::error::BoundError;
use crate::exact::CodeParams;
use crate::litsyn::{bound_b_max_k, DeltaMode};
use crate::oracle::{KnownValuesTable, OracleGrid};

/// Alphabet sizes of the reference experiments.
pub const REFERENCE_Q_VALUES: [u32; 16] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29];

/// A bound taking part in the comparison. Ordering matches the CSV columns.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(rename_all = "camelCase")]
pub enum Competitor {
    BoundB,
    Johnson,
    Hamming,
    Griesmer,
    Elias,
    Singleton,
    Plotkin,
}

impl Competitor {
    pub const ALL: [Competitor; 7] = [
        Competitor::BoundB,
        Competitor::Johnson,
        Competitor::Hamming,
        Competitor::Griesmer,
        Competitor::Elias,
        Competitor::Singleton,
        Competitor::Plotkin,
    ];

    /// The comparison set of the published win tables (no Plotkin).
    pub const TABLE: [Competitor; 6] = [
        Competitor::BoundB,
        Competitor::Johnson,
        Competitor::Hamming,
        Competitor::Griesmer,
        Competitor::Elias,
        Competitor::Singleton,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Competitor::BoundB => "boundB",
            Competitor::Johnson => "johnson",
            Competitor::Hamming => "hamming",
            Competitor::Griesmer => "griesmer",
            Competitor::Elias => "elias",
            Competitor::Singleton => "singleton",
            Competitor::Plotkin => "plotkin",
        }
    }
}

impl FromStr for Competitor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Competitor::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown bound '{s}'"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum KnownValuesSource {
    /// The table bundled with the crate.
    #[default]
    Builtin,
    /// Computed bounds only.
    Disabled,
    Path(PathBuf),
}

impl KnownValuesSource {
    /// Loads the table. A missing file only warns and yields an empty table;
    /// a malformed one is an error.
    pub fn load(&self) -> Result<KnownValuesTable, BoundError> {
        match self {
            KnownValuesSource::Builtin => Ok(KnownValuesTable::builtin()),
            KnownValuesSource::Disabled => Ok(KnownValuesTable::empty()),
            KnownValuesSource::Path(path) if !path.exists() => {
                warn!(
                    "known-values file {} not found; using computed bounds only",
                    path.display()
                );
                Ok(KnownValuesTable::empty())
            }
            KnownValuesSource::Path(path) => KnownValuesTable::load(path),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format '{other}' (expected csv or json)")),
        }
    }
}

/// Sweep over `q in q_list`, `n_min <= n <= n_max`, `3 <= d <= n - 1`.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub q_list: Vec<u32>,
    pub n_min: u32,
    pub n_max: u32,
    pub enabled: Vec<Competitor>,
    pub delta_mode: DeltaMode,
    pub known_values: KnownValuesSource,
    pub format: OutputFormat,
    /// Zero means one worker per available core.
    pub workers: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            q_list: REFERENCE_Q_VALUES.to_vec(),
            n_min: 3,
            n_max: 100,
            enabled: Competitor::TABLE.to_vec(),
            delta_mode: DeltaMode::Floor,
            known_values: KnownValuesSource::Builtin,
            format: OutputFormat::Csv,
            workers: 0,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.n_min < 3 {
            return Err("n_min must be at least 3".into());
        }
        if self.n_max < self.n_min {
            return Err("n_max must not be below n_min".into());
        }
        if self.enabled.is_empty() {
            return Err("at least one bound must be enabled".into());
        }
        if let Some(q) = self.q_list.iter().find(|&&q| q < 2) {
            return Err(format!("alphabet size {q} is below 2"));
        }
        if self.q_list.is_empty() {
            return Err("q list is empty".into());
        }
        Ok(())
    }

    fn enabled_sorted(&self) -> Vec<Competitor> {
        let mut e = self.enabled.clone();
        e.sort();
        e.dedup();
        e
    }
}

/// One grid cell of the comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub q: u32,
    pub n: u32,
    pub d: u32,
    /// Dimension-form value per enabled bound; missing when inapplicable.
    pub k: BTreeMap<Competitor, u32>,
    pub best_k: u32,
    pub winners: Vec<Competitor>,
    pub delta_zero: bool,
    pub plotkin_used_inner: bool,
}

impl ComparisonRow {
    pub fn is_strict_win(&self, c: Competitor) -> bool {
        self.winners == [c]
    }
}

/// Evaluates one cell against a prebuilt oracle for its alphabet.
pub fn compare_cell(
    p: CodeParams,
    enabled: &[Competitor],
    oracle: &OracleGrid,
    delta_mode: DeltaMode,
) -> ComparisonRow {
    let q = p.q();
    let mut k = BTreeMap::new();
    let mut delta_zero = false;
    let mut plotkin_used_inner = false;
    for &c in enabled {
        let value = match c {
            Competitor::BoundB => {
                let w = bound_b_max_k(p, oracle, delta_mode);
                delta_zero = w.delta_zero();
                plotkin_used_inner = w.plotkin_binding();
                Some(w.k)
            }
            Competitor::Johnson => Some(k_form(&johnson_bound(p), q)),
            Competitor::Hamming => Some(k_form(&hamming_bound(p), q)),
            Competitor::Griesmer => Some(griesmer_max_k(p)),
            Competitor::Elias => Some(k_form(&elias_bassalygo_bound(p), q)),
            Competitor::Singleton => Some(k_form(&singleton_bound(p), q)),
            Competitor::Plotkin => plotkin_bound(p).map(|v| k_form(&v, q)),
        };
        if let Some(v) = value {
            k.insert(c, v);
        }
    }
    let best_k = k.values().copied().min().unwrap_or(0);
    let winners = k
        .iter()
        .filter(|(_, &v)| v == best_k)
        .map(|(&c, _)| c)
        .collect();
    ComparisonRow {
        q,
        n: p.n(),
        d: p.d(),
        k,
        best_k,
        winners,
        delta_zero,
        plotkin_used_inner,
    }
}

/// Runs the sweep. Rows come back in `(q, n, d)` order whatever the worker
/// count.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<ComparisonRow>, BoundError> {
    cfg.validate().map_err(|reason| BoundError::InvalidSweep(reason))?;
    let table = cfg.known_values.load()?;
    let enabled = cfg.enabled_sorted();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .expect("thread pool");
    let mut q_list = cfg.q_list.clone();
    q_list.sort_unstable();
    q_list.dedup();
    let rows = pool.install(|| {
        let mut rows = Vec::new();
        for &q in &q_list {
            let oracle = OracleGrid::build(q, cfg.n_max, &table);
            let cells: Vec<CodeParams> = (cfg.n_min..=cfg.n_max)
                .flat_map(|n| (3..n).map(move |d| (n, d)))
                .map(|(n, d)| CodeParams::new(q, n, d).expect("grid params"))
                .collect();
            let computed: Vec<ComparisonRow> = cells
                .par_iter()
                .map(|&p| compare_cell(p, &enabled, &oracle, cfg.delta_mode))
                .collect();
            rows.extend(computed);
        }
        rows
    });
    Ok(rows)
}

pub const CSV_HEADER: &str = "q,n,d,boundB_k,johnson_k,hamming_k,griesmer_k,elias_k,singleton_k,plotkin_k,best_k,winners,delta_zero,plotkin_used_inner";

pub fn rows_to_csv(rows: &[ComparisonRow]) -> String {
    let mut out = String::with_capacity(rows.len() * 64);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        write!(out, "{},{},{}", row.q, row.n, row.d).unwrap();
        for c in Competitor::ALL {
            match row.k.get(&c) {
                Some(v) => write!(out, ",{v}").unwrap(),
                None => out.push(','),
            }
        }
        let winners: Vec<&str> = row.winners.iter().map(|c| c.name()).collect();
        writeln!(
            out,
            ",{},{},{},{}",
            row.best_k,
            winners.join("|"),
            row.delta_zero,
            row.plotkin_used_inner
        )
        .unwrap();
    }
    out
}

pub fn rows_to_json(rows: &[ComparisonRow]) -> String {
    serde_json::to_string_pretty(rows).expect("rows serialise") + "\n"
}

/// Aggregates for one alphabet. Counts are kept as integers; percentages are
/// derived from them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QStats {
    pub q: u32,
    /// Grid size, the denominator of every "best" percentage.
    pub cells: usize,
    /// Cells where the bound attains the best value (wins and draws).
    pub best_counts: BTreeMap<Competitor, usize>,
    pub boundb_draws: usize,
    pub boundb_wins: usize,
    /// Among Bound B draws and wins, cells whose binding check had zero
    /// correction.
    pub delta_zero: usize,
    /// Among Bound B draws and wins, cells whose binding check used Plotkin.
    pub plotkin_use: usize,
    /// Largest `d/n` over Bound B strict wins, as `(d, n)`.
    pub max_win_ratio: Option<(u32, u32)>,
}

fn pct(count: usize, total: usize) -> f64 {
    if total == 0 {
        0.0
    } else {
        100.0 * count as f64 / total as f64
    }
}

impl QStats {
    pub fn best_pct(&self, c: Competitor) -> f64 {
        pct(self.best_counts.get(&c).copied().unwrap_or(0), self.cells)
    }

    pub fn draw_pct(&self) -> f64 {
        pct(self.boundb_draws, self.cells)
    }

    pub fn win_pct(&self) -> f64 {
        pct(self.boundb_wins, self.cells)
    }

    pub fn delta_zero_pct(&self) -> f64 {
        pct(self.delta_zero, self.boundb_draws + self.boundb_wins)
    }

    pub fn plotkin_use_pct(&self) -> f64 {
        pct(self.plotkin_use, self.boundb_draws + self.boundb_wins)
    }

    pub fn max_win_dn(&self) -> Option<f64> {
        self.max_win_ratio.map(|(d, n)| d as f64 / n as f64)
    }

    /// `1 - 1/q`: Plotkin applies when `d/n` exceeds it.
    pub fn plotkin_frontier(&self) -> f64 {
        1.0 - 1.0 / self.q as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsSummary {
    pub enabled: Vec<Competitor>,
    pub per_q: Vec<QStats>,
}

impl StatsSummary {
    pub fn for_q(&self, q: u32) -> Option<&QStats> {
        self.per_q.iter().find(|s| s.q == q)
    }
}

pub fn compute_stats(rows: &[ComparisonRow]) -> StatsSummary {
    let mut enabled: Vec<Competitor> = rows
        .iter()
        .flat_map(|r| r.k.keys().copied())
        .collect();
    enabled.sort();
    enabled.dedup();
    let mut per_q: BTreeMap<u32, QStats> = BTreeMap::new();
    for row in rows {
        let s = per_q.entry(row.q).or_insert_with(|| QStats {
            q: row.q,
            cells: 0,
            best_counts: BTreeMap::new(),
            boundb_draws: 0,
            boundb_wins: 0,
            delta_zero: 0,
            plotkin_use: 0,
            max_win_ratio: None,
        });
        s.cells += 1;
        for &c in &row.winners {
            *s.best_counts.entry(c).or_default() += 1;
        }
        if row.winners.contains(&Competitor::BoundB) {
            if row.winners.len() == 1 {
                s.boundb_wins += 1;
                let better = match s.max_win_ratio {
                    None => true,
                    Some((d, n)) => (row.d as u64) * (n as u64) > (d as u64) * (row.n as u64),
                };
                if better {
                    s.max_win_ratio = Some((row.d, row.n));
                }
            } else {
                s.boundb_draws += 1;
            }
            if row.delta_zero {
                s.delta_zero += 1;
            }
            if row.plotkin_used_inner {
                s.plotkin_use += 1;
            }
        }
    }
    StatsSummary {
        enabled,
        per_q: per_q.into_values().collect(),
    }
}

pub fn stats_to_csv(stats: &StatsSummary) -> String {
    let mut out = String::from("q,cells");
    for c in &stats.enabled {
        write!(out, ",{}_best_pct", c.name()).unwrap();
    }
    out.push_str(
        ",boundB_draws_pct,boundB_wins_pct,delta_zero_pct,plotkin_use_pct,max_dn_wins,plotkin_range\n",
    );
    for s in &stats.per_q {
        write!(out, "{},{}", s.q, s.cells).unwrap();
        for &c in &stats.enabled {
            write!(out, ",{:.2}", s.best_pct(c)).unwrap();
        }
        let max_dn = s.max_win_dn().map(|v| format!("{v:.3}")).unwrap_or_default();
        writeln!(
            out,
            ",{:.2},{:.2},{:.2},{:.2},{},{:.2}",
            s.draw_pct(),
            s.win_pct(),
            s.delta_zero_pct(),
            s.plotkin_use_pct(),
            max_dn,
            s.plotkin_frontier()
        )
        .unwrap();
    }
    out
}

pub fn stats_to_json(stats: &StatsSummary) -> String {
    #[derive(Serialize)]
    struct Entry<'a> {
        q: u32,
        cells: usize,
        best_pct: BTreeMap<&'a str, String>,
        boundb_draws_pct: String,
        boundb_wins_pct: String,
        delta_zero_pct: String,
        plotkin_use_pct: String,
        max_dn_wins: Option<String>,
        plotkin_range: String,
        counts: &'a QStats,
    }
    let entries: Vec<Entry> = stats
        .per_q
        .iter()
        .map(|s| Entry {
            q: s.q,
            cells: s.cells,
            best_pct: stats
                .enabled
                .iter()
                .map(|&c| (c.name(), format!("{:.2}", s.best_pct(c))))
                .collect(),
            boundb_draws_pct: format!("{:.2}", s.draw_pct()),
            boundb_wins_pct: format!("{:.2}", s.win_pct()),
            delta_zero_pct: format!("{:.2}", s.delta_zero_pct()),
            plotkin_use_pct: format!("{:.2}", s.plotkin_use_pct()),
            max_dn_wins: s.max_win_dn().map(|v| format!("{v:.3}")),
            plotkin_range: format!("{:.2}", s.plotkin_frontier()),
            counts: s,
        })
        .collect();
    serde_json::to_string_pretty(&entries).expect("stats serialise") + "\n"
}
