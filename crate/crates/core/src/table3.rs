//! Reference cells where Bound B beats every other bound, and the diff of
//! recomputed values against them.
//!
//! Columns B, H, G and S must match exactly. J and E may differ by one, since
//! the exact Johnson and Elias variants behind the reference numbers are not
//! pinned down; any difference is still itemised. L is the Levenshtein bound,
//! which is not computed here and is carried as reference text.

use serde::Serialize;
use std::fmt::Write as _;

use crate::classical::{elias_bassalygo_bound, griesmer_max_k, hamming_bound, johnson_bound, k_form, singleton_bound};
use crate::exact::CodeParams;
use crate::litsyn::{bound_b_max_k, DeltaMode};
use crate::oracle::{BoundOracle, KnownValuesTable};

pub const TABLE3_FIXTURE: &str = include_str!("../data/table3.csv");

/// Computed columns in fixture order.
pub const COLUMNS: [&str; 6] = ["B", "J", "H", "G", "E", "S"];

/// Allowed absolute difference per computed column.
pub const TOLERANCE: [u32; 6] = [0, 1, 0, 0, 1, 0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Table3Fixture {
    pub q: u32,
    pub n: u32,
    pub d: u32,
    /// B, J, H, G, E, S
    pub expected: [u32; 6],
    pub levenshtein: u32,
}

pub fn fixtures() -> Vec<Table3Fixture> {
    TABLE3_FIXTURE
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with('q') && !l.trim().is_empty())
        .map(|l| {
            let v: Vec<u32> = l.split(',').map(|x| x.trim().parse().expect("fixture integer")).collect();
            Table3Fixture {
                q: v[0],
                n: v[1],
                d: v[2],
                expected: [v[3], v[4], v[5], v[6], v[7], v[8]],
                levenshtein: v[9],
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColumnDiff {
    pub column: &'static str,
    pub expected: u32,
    pub computed: u32,
    pub within_tolerance: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table3Row {
    pub fixture: Table3Fixture,
    pub computed: [u32; 6],
    pub diffs: Vec<ColumnDiff>,
}

impl Table3Row {
    pub fn passes(&self) -> bool {
        self.diffs.iter().all(|d| d.within_tolerance)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table3Report {
    pub rows: Vec<Table3Row>,
}

impl Table3Report {
    pub fn passes(&self) -> bool {
        self.rows.iter().all(Table3Row::passes)
    }

    /// Whether a column matches exactly on every row.
    pub fn column_exact(&self, column: &str) -> bool {
        self.rows
            .iter()
            .all(|r| r.diffs.iter().all(|d| d.column != column))
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "  q   n   d |   B   J   H   G   E   S |  L (ref) | status").unwrap();
        for row in &self.rows {
            let f = &row.fixture;
            write!(out, "{:>3} {:>3} {:>3} |", f.q, f.n, f.d).unwrap();
            for v in row.computed {
                write!(out, " {v:>3}").unwrap();
            }
            write!(out, " | {:>8} | ", f.levenshtein).unwrap();
            if row.diffs.is_empty() {
                out.push_str("match");
            } else {
                let items: Vec<String> = row
                    .diffs
                    .iter()
                    .map(|d| {
                        format!(
                            "{} expected {} got {}{}",
                            d.column,
                            d.expected,
                            d.computed,
                            if d.within_tolerance { " (within tolerance)" } else { " (MISMATCH)" }
                        )
                    })
                    .collect();
                out.push_str(&items.join("; "));
            }
            out.push('\n');
        }
        out
    }
}

pub fn compute_row(f: &Table3Fixture, table: &KnownValuesTable, mode: DeltaMode) -> Table3Row {
    let p = CodeParams::new(f.q, f.n, f.d).expect("fixture params");
    let oracle = BoundOracle::new(table);
    let computed = [
        bound_b_max_k(p, &oracle, mode).k,
        k_form(&johnson_bound(p), f.q),
        k_form(&hamming_bound(p), f.q),
        griesmer_max_k(p),
        k_form(&elias_bassalygo_bound(p), f.q),
        k_form(&singleton_bound(p), f.q),
    ];
    let diffs = (0..6)
        .filter(|&i| computed[i] != f.expected[i])
        .map(|i| ColumnDiff {
            column: COLUMNS[i],
            expected: f.expected[i],
            computed: computed[i],
            within_tolerance: computed[i].abs_diff(f.expected[i]) <= TOLERANCE[i],
        })
        .collect();
    Table3Row {
        fixture: *f,
        computed,
        diffs,
    }
}

pub fn table3_report(table: &KnownValuesTable, mode: DeltaMode) -> Table3Report {
    use rayon::prelude::*;
    let rows = fixtures()
        .par_iter()
        .map(|f| compute_row(f, table, mode))
        .collect();
    Table3Report { rows }
}
