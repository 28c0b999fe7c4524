//! Values of `A_q(n, d)` for use inside the composite bounds.
//!
//! [`aq_upper`] returns a tabulated exact value when one is known and
//! otherwise the smallest of the Hamming, Singleton, Johnson and Elias
//! bounds, plus Plotkin where it applies. The brute-force searches at the
//! bottom of the module are exact but only usable for tiny spaces; they exist
//! to validate everything else.

use num_traits::One;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use crate::classical::{
    elias_bassalygo_bound, hamming_bound, johnson_bound, plotkin_bound, singleton_bound,
    BoundSource,
};
use crate::error::BoundError;
use crate::exact::{floor_log_q, pow, CodeParams, Nat};

/// Binary exact values shipped with the crate.
pub const BUILTIN_KNOWN_VALUES: &str = include_str!("../data/known_binary.csv");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnownEntry {
    pub value: Nat,
    pub source: String,
}

/// Exact `A_q(n, d)` values keyed by `(q, n, d)`. Immutable once loaded.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KnownValuesTable {
    entries: BTreeMap<(u32, u32, u32), KnownEntry>,
}

impl KnownValuesTable {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn builtin() -> Self {
        Self::parse(BUILTIN_KNOWN_VALUES).expect("bundled known-values table is well formed")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, BoundError> {
        let text = fs::read_to_string(path)?;
        Self::parse(&text)
    }

    /// Parses CSV with header `q,n,d,A` and an optional trailing `source`
    /// column. Blank lines and `#` comments are skipped; row numbers in
    /// errors are 1-based file lines.
    pub fn parse(text: &str) -> Result<Self, BoundError> {
        let mut entries = BTreeMap::new();
        let mut seen_header = false;
        for (idx, raw) in text.lines().enumerate() {
            let row = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.splitn(5, ',').map(str::trim).collect();
            if !seen_header {
                seen_header = true;
                if fields.len() >= 4
                    && fields[0].eq_ignore_ascii_case("q")
                    && fields[1].eq_ignore_ascii_case("n")
                {
                    continue;
                }
            }
            let bad = |message: String| BoundError::KnownValuesRow { row, message };
            if fields.len() < 4 {
                return Err(bad(format!("expected at least 4 fields, found {}", fields.len())));
            }
            let small = |s: &str, what: &str| {
                s.parse::<u32>()
                    .map_err(|_| bad(format!("{what} '{s}' is not a non-negative integer")))
            };
            let q = small(fields[0], "q")?;
            let n = small(fields[1], "n")?;
            let d = small(fields[2], "d")?;
            let params = CodeParams::new(q, n, d).map_err(|e| bad(e.to_string()))?;
            let value: Nat = fields[3]
                .parse()
                .map_err(|_| bad(format!("A '{}' is not a non-negative integer", fields[3])))?;
            if value < Nat::one() || value > params.space_size() {
                return Err(bad(format!("A = {value} is outside [1, {q}^{n}]")));
            }
            let source = fields.get(4).map(|s| s.to_string()).unwrap_or_default();
            if entries
                .insert((q, n, d), KnownEntry { value, source })
                .is_some()
            {
                return Err(bad(format!("duplicate entry for (q={q}, n={n}, d={d})")));
            }
        }
        Ok(KnownValuesTable { entries })
    }

    pub fn get(&self, p: CodeParams) -> Option<&KnownEntry> {
        self.entries.get(&(p.q(), p.n(), p.d()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (CodeParams, &KnownEntry)> {
        self.entries
            .iter()
            .map(|(&(q, n, d), e)| (CodeParams::new(q, n, d).expect("validated on load"), e))
    }
}

/// Best available upper bound on `A_q(n, d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AqEstimate {
    pub value: Nat,
    pub source: BoundSource,
    /// Plotkin applied and attained the minimum.
    pub plotkin_used: bool,
}

/// Anything that can answer `A_q(n, d) <= ?`.
pub trait AqOracle: Sync {
    fn estimate(&self, p: CodeParams) -> AqEstimate;
}

impl<F> AqOracle for F
where
    F: Fn(CodeParams) -> AqEstimate + Sync,
{
    fn estimate(&self, p: CodeParams) -> AqEstimate {
        self(p)
    }
}

pub fn aq_upper(p: CodeParams, table: &KnownValuesTable) -> AqEstimate {
    if let Some(entry) = table.get(p) {
        return AqEstimate {
            value: entry.value.clone(),
            source: BoundSource::Known,
            plotkin_used: false,
        };
    }
    let trivial = |value| AqEstimate {
        value,
        source: BoundSource::Trivial,
        plotkin_used: false,
    };
    match p.d() {
        1 => return trivial(p.space_size()),
        // a parity symbol meets Singleton
        2 => return trivial(pow(p.q(), p.n() - 1)),
        _ => {}
    }
    // ties resolve to the earlier entry
    let mut best = (hamming_bound(p), BoundSource::Hamming);
    for (value, source) in [
        (singleton_bound(p), BoundSource::Singleton),
        (johnson_bound(p), BoundSource::Johnson),
        (elias_bassalygo_bound(p), BoundSource::Elias),
    ] {
        if value < best.0 {
            best = (value, source);
        }
    }
    let mut plotkin_used = false;
    if let Some(value) = plotkin_bound(p) {
        if value <= best.0 {
            best = (value, BoundSource::Plotkin);
            plotkin_used = true;
        }
    }
    AqEstimate {
        value: best.0,
        source: best.1,
        plotkin_used,
    }
}

/// Oracle that evaluates [`aq_upper`] on every call.
#[derive(Debug, Clone)]
pub struct BoundOracle<'a> {
    table: &'a KnownValuesTable,
}

impl<'a> BoundOracle<'a> {
    pub fn new(table: &'a KnownValuesTable) -> Self {
        BoundOracle { table }
    }
}

impl AqOracle for BoundOracle<'_> {
    fn estimate(&self, p: CodeParams) -> AqEstimate {
        aq_upper(p, self.table)
    }
}

/// [`aq_upper`] precomputed for one alphabet and every `1 <= d <= n <= max_len`.
/// Lookups outside the grid fall through to direct evaluation.
#[derive(Debug, Clone)]
pub struct OracleGrid {
    q: u32,
    max_len: u32,
    cells: Vec<Vec<AqEstimate>>,
    table: KnownValuesTable,
}

impl OracleGrid {
    pub fn build(q: u32, max_len: u32, table: &KnownValuesTable) -> Self {
        use rayon::prelude::*;
        let cells = (1..=max_len)
            .into_par_iter()
            .map(|n| {
                (1..=n)
                    .map(|d| aq_upper(CodeParams::new(q, n, d).expect("grid params"), table))
                    .collect()
            })
            .collect();
        OracleGrid {
            q,
            max_len,
            cells,
            table: table.clone(),
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }
}

impl AqOracle for OracleGrid {
    fn estimate(&self, p: CodeParams) -> AqEstimate {
        if p.q() == self.q && p.n() <= self.max_len {
            self.cells[p.n() as usize - 1][p.d() as usize - 1].clone()
        } else {
            aq_upper(p, &self.table)
        }
    }
}

/// Number of q-ary words and radix helpers for the brute-force searches.
fn words(q: u32, n: u32) -> Vec<Vec<u8>> {
    let total = (q as usize).pow(n);
    (0..total)
        .map(|mut idx| {
            let mut w = vec![0u8; n as usize];
            for slot in w.iter_mut().rev() {
                *slot = (idx % q as usize) as u8;
                idx /= q as usize;
            }
            w
        })
        .collect()
}

fn distance(a: &[u8], b: &[u8]) -> u32 {
    a.iter().zip(b).filter(|(x, y)| x != y).count() as u32
}

fn guard(p: CodeParams, limit_bits: u32) -> Result<(), BoundError> {
    if p.space_size() > pow(2, limit_bits) {
        Err(BoundError::SearchTooLarge {
            q: p.q(),
            n: p.n(),
            limit_bits,
        })
    } else {
        Ok(())
    }
}

/// Fixed-width bitset over vertex indices.
#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }
    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .position(|&w| w != 0)
            .map(|i| i * 64 + self.0[i].trailing_zeros() as usize)
    }
    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
}

struct CliqueSearch {
    adj: Vec<Bits>,
    best: usize,
}

impl CliqueSearch {
    /// Greedy colouring of `cand`; returns vertices with their colour bound.
    fn colour_order(&self, cand: &Bits) -> Vec<(usize, usize)> {
        let mut uncoloured = cand.clone();
        let mut order = Vec::with_capacity(cand.count());
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut avail = uncoloured.clone();
            while let Some(v) = avail.first() {
                avail.clear(v);
                uncoloured.clear(v);
                // vertices adjacent to v cannot share its colour
                for (a, b) in avail.0.iter_mut().zip(&self.adj[v].0) {
                    *a &= !b;
                }
                order.push((v, colour));
            }
        }
        order
    }

    fn expand(&mut self, size: usize, cand: Bits) {
        let order = self.colour_order(&cand);
        let mut cand = cand;
        for &(v, colour) in order.iter().rev() {
            if size + colour <= self.best {
                return;
            }
            let next = cand.and(&self.adj[v]);
            if next.is_empty() {
                if size + 1 > self.best {
                    self.best = size + 1;
                }
            } else {
                self.expand(size + 1, next);
            }
            cand.clear(v);
        }
    }
}

/// Exact `A_q(n, d)` by maximum clique search. Limited to `q^n <= 2^20`.
///
/// The zero word is fixed in the code and, after relabelling symbols and
/// permuting coordinates, so is a minimum-weight codeword `1..10..0`; every
/// weight `w >= d` for it is tried. Binary searches run over even-weight
/// words, using `A_2(n, d) = A_2(n + 1, d + 1)` for odd `d`.
pub fn aq_exact_bruteforce(p: CodeParams) -> Result<Nat, BoundError> {
    guard(p, 20)?;
    let (q, n, d) = (p.q(), p.n(), p.d());
    if d == 1 {
        return Ok(p.space_size());
    }
    let size = match (q, d % 2) {
        (2, 1) => clique_code_size(2, n + 1, d + 1, true),
        (2, _) => clique_code_size(2, n, d, true),
        _ => clique_code_size(q, n, d, false),
    };
    Ok(Nat::from(size))
}

fn clique_code_size(q: u32, n: u32, d: u32, even_only: bool) -> usize {
    let weight = |w: &[u8]| w.iter().filter(|&&x| x != 0).count() as u32;
    let all: Vec<Vec<u8>> = words(q, n)
        .into_iter()
        .filter(|w| !even_only || weight(w) % 2 == 0)
        .collect();
    let mut best: usize = 1;
    for w in (d..=n).rev() {
        if even_only && w % 2 == 1 {
            continue;
        }
        let second: Vec<u8> = (0..n).map(|i| u8::from(i < w)).collect();
        let verts: Vec<&Vec<u8>> = all
            .iter()
            .filter(|x| weight(x) >= w && distance(x, &second) >= d)
            .collect();
        best = best.max(2 + max_clique(&verts, d, best.saturating_sub(2)));
    }
    best
}

/// Size of the largest set of `verts` with pairwise distance at least `d`,
/// or `floor` if none is larger.
fn max_clique(verts: &[&Vec<u8>], d: u32, floor: usize) -> usize {
    // colouring in order of decreasing degree gives tighter colour bounds
    let degree = |x: &Vec<u8>| verts.iter().filter(|y| distance(x, y) >= d).count();
    let mut verts = verts.to_vec();
    verts.sort_by_key(|x| std::cmp::Reverse(degree(x)));
    let mut adj = vec![Bits::new(verts.len()); verts.len()];
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            if distance(verts[i], verts[j]) >= d {
                adj[i].set(j);
                adj[j].set(i);
            }
        }
    }
    // greedy lexicode as the starting lower bound
    let mut greedy: Vec<usize> = Vec::new();
    for v in 0..verts.len() {
        if greedy.iter().all(|&u| adj[u].0[v / 64] >> (v % 64) & 1 == 1) {
            greedy.push(v);
        }
    }
    let mut search = CliqueSearch {
        adj,
        best: greedy.len().max(floor),
    };
    let mut cand = Bits::new(verts.len());
    (0..verts.len()).for_each(|v| cand.set(v));
    search.expand(0, cand);
    search.best
}

/// Largest `k` for which a systematic `(n, k)` code over `q` symbols with
/// distance at least `d` exists. Backtracks over the redundancy assigned to
/// each message. Limited to `q^n <= 2^16`.
pub fn max_systematic_k_bruteforce(p: CodeParams) -> Result<u32, BoundError> {
    guard(p, 16)?;
    let (q, n, d) = (p.q(), p.n(), p.d());
    // q^k codewords never exceed A_q(n, d)
    let ceiling = floor_log_q(&aq_exact_bruteforce(p)?, q)?;
    for k in (1..=ceiling.min(n - d + 1)).rev() {
        if systematic_code_exists(q, n, k, d) {
            return Ok(k);
        }
    }
    Ok(0)
}

fn systematic_code_exists(q: u32, n: u32, k: u32, d: u32) -> bool {
    let messages = words(q, k);
    let redundancies = words(q, n - k);
    let m = messages.len();
    let msg_dist: Vec<Vec<u32>> = messages
        .iter()
        .map(|a| messages.iter().map(|b| distance(a, b)).collect())
        .collect();
    let red_dist: Vec<Vec<u32>> = redundancies
        .iter()
        .map(|a| redundancies.iter().map(|b| distance(a, b)).collect())
        .collect();
    // Translating redundancy coordinates, permuting them and relabelling
    // their symbols all preserve distances, so message 0 gets the zero
    // redundancy and message 1 a word of the form 1..10..0.
    let canonical_second: Vec<usize> = (0..redundancies.len())
        .filter(|&i| {
            let w = &redundancies[i];
            let ones = w.iter().take_while(|&&x| x == 1).count();
            w[ones..].iter().all(|&x| x == 0)
        })
        .collect();
    let mut assign = vec![usize::MAX; m];
    assign[0] = 0;
    if m == 1 {
        return true;
    }

    fn place(
        idx: usize,
        assign: &mut Vec<usize>,
        msg_dist: &[Vec<u32>],
        red_dist: &[Vec<u32>],
        canonical_second: &[usize],
        d: u32,
    ) -> bool {
        if idx == assign.len() {
            return true;
        }
        let choices: Vec<usize> = if idx == 1 {
            canonical_second.to_vec()
        } else {
            (0..red_dist.len()).collect()
        };
        for r in choices {
            let ok = (0..idx).all(|j| msg_dist[idx][j] + red_dist[r][assign[j]] >= d);
            if ok {
                assign[idx] = r;
                if place(idx + 1, assign, msg_dist, red_dist, canonical_second, d) {
                    return true;
                }
            }
        }
        assign[idx] = usize::MAX;
        false
    }

    place(1, &mut assign, &msg_dist, &red_dist, &canonical_second, d)
}
