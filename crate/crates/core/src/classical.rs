//! Classical upper bounds on `A_q(n, d)`.
//!
//! Every bound returns an exact integer bound on the number of codewords.
//! Use [`k_form`] to turn a size bound into the dimension-comparable value
//! `floor(log_q(bound))`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::exact::{ball_size, binomial, floor_div, floor_log_q, pow, CodeParams, Nat};

/// Where a size bound came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BoundSource {
    Singleton,
    Hamming,
    Plotkin,
    Griesmer,
    Johnson,
    Elias,
    Known,
    Trivial,
    BoundA,
    BoundB,
    LitsynLaihonen,
}

impl BoundSource {
    pub fn name(self) -> &'static str {
        match self {
            BoundSource::Singleton => "singleton",
            BoundSource::Hamming => "hamming",
            BoundSource::Plotkin => "plotkin",
            BoundSource::Griesmer => "griesmer",
            BoundSource::Johnson => "johnson",
            BoundSource::Elias => "elias",
            BoundSource::Known => "known",
            BoundSource::Trivial => "trivial",
            BoundSource::BoundA => "boundA",
            BoundSource::BoundB => "boundB",
            BoundSource::LitsynLaihonen => "litsynLaihonen",
        }
    }
}

impl fmt::Display for BoundSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundSource {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let all = [
            BoundSource::Singleton,
            BoundSource::Hamming,
            BoundSource::Plotkin,
            BoundSource::Griesmer,
            BoundSource::Johnson,
            BoundSource::Elias,
            BoundSource::Known,
            BoundSource::Trivial,
            BoundSource::BoundA,
            BoundSource::BoundB,
            BoundSource::LitsynLaihonen,
        ];
        all.into_iter()
            .find(|b| b.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown bound '{s}'"))
    }
}

/// An upper bound on the size of a code, tagged with its origin.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundValue {
    pub size_bound: Nat,
    pub source: BoundSource,
}

impl BoundValue {
    pub fn new(size_bound: Nat, source: BoundSource) -> Self {
        BoundValue { size_bound, source }
    }

    pub fn k_form(&self, q: u32) -> u32 {
        k_form(&self.size_bound, q)
    }
}

/// `floor(log_q(size))`, with a zero size mapped to zero.
pub fn k_form(size: &Nat, q: u32) -> u32 {
    if size.is_zero() {
        0
    } else {
        floor_log_q(size, q).expect("q >= 2 in validated params")
    }
}

/// `q^(n-d+1)`.
pub fn singleton_bound(p: CodeParams) -> Nat {
    pow(p.q(), p.n() - p.d() + 1)
}

/// Sphere packing: `floor(q^n / |B(floor((d-1)/2), n)|)`.
pub fn hamming_bound(p: CodeParams) -> Nat {
    let radius = (p.d() - 1) / 2;
    floor_div(&p.space_size(), &ball_size(radius, p.n(), p.q()))
}

/// Plain q-ary Plotkin bound, `floor(qd / (qd - (q-1)n))`. Applies only when
/// `qd > (q-1)n`.
pub fn plotkin_bound(p: CodeParams) -> Option<Nat> {
    let qd = p.q() as u64 * p.d() as u64;
    let spread = (p.q() - 1) as u64 * p.n() as u64;
    if qd > spread {
        Some(Nat::from(qd / (qd - spread)))
    } else {
        None
    }
}

/// Largest `k` with `sum_{i<k} ceil(d / q^i) <= n`.
pub fn griesmer_max_k(p: CodeParams) -> u32 {
    let d = p.d() as u64;
    let q = p.q() as u64;
    let mut used = 0u64;
    let mut k = 0u32;
    // once q^i >= d every further term is 1
    let mut power = Some(1u64);
    loop {
        let term = match power {
            Some(pw) => d.div_ceil(pw),
            None => 1,
        };
        if used + term > p.n() as u64 {
            return k;
        }
        used += term;
        k += 1;
        power = power.and_then(|pw| if pw >= d { None } else { pw.checked_mul(q) });
    }
}

/// Griesmer as a size bound, `q^k`.
pub fn griesmer_bound(p: CodeParams) -> Nat {
    pow(p.q(), griesmer_max_k(p))
}

/// Upper bound on `A_q(n, d, w)`, the largest code of constant weight `w`.
///
/// Combines the restricted Johnson bound
/// `floor(nd(q-1) / (qw^2 - 2(q-1)nw + nd(q-1)))` with the recursion
/// `A(n, d, w) <= floor((q-1)n / w * A(n-1, d, w-1))`. When `2w = d` the
/// supports must be disjoint, so the value is exactly `floor(n / w)`.
pub fn constant_weight_bound(q: u32, n: u32, d: u32, w: u32) -> Nat {
    if w > n {
        return Nat::zero();
    }
    if w == 0 || 2 * w < d {
        return Nat::one();
    }
    if 2 * w == d {
        return Nat::from(n / w);
    }
    let (q64, n64, d64, w64) = (q as i128, n as i128, d as i128, w as i128);
    let den = q64 * w64 * w64 - 2 * (q64 - 1) * n64 * w64 + n64 * d64 * (q64 - 1);
    let restricted = if den > 0 {
        let v = (n64 * d64 * (q64 - 1)) / den;
        Some(Nat::from(v.max(1) as u128))
    } else {
        None
    };
    let inner = constant_weight_bound(q, n - 1, d, w - 1);
    let recursive = (inner * ((q - 1) as u64 * n as u64) / w).max(Nat::one());
    match restricted {
        Some(r) if r < recursive => r,
        _ => recursive,
    }
}

/// q-ary Johnson bound in its textbook form. For `d = 2t + 1`:
/// `q^n / (|B(t,n)| + (C(n,t+1)(q-1)^(t+1) - C(d,t) A(n,d,d)) / A(n,d,t+1))`,
/// and for `d = 2t`:
/// `q^n / (|B(t-1,n)| + C(n,t)(q-1)^t / A(n,d,t))`, with the constant-weight
/// terms from [`constant_weight_bound`]. Never exceeds [`hamming_bound`].
pub fn johnson_bound(p: CodeParams) -> Nat {
    let (q, n, d) = (p.q(), p.n(), p.d());
    let hamming = hamming_bound(p);
    if d <= 1 {
        return hamming;
    }
    let space = p.space_size();
    let candidate = if d % 2 == 1 {
        let t = (d - 1) / 2;
        let shell = binomial(n, t + 1) * pow(q - 1, t + 1);
        let overlap = binomial(d, t) * constant_weight_bound(q, n, d, d);
        if shell <= overlap {
            return hamming;
        }
        let a = constant_weight_bound(q, n, d, t + 1);
        // q^n / (V + (shell - overlap)/a) = q^n a / (V a + shell - overlap)
        let den = ball_size(t, n, q) * &a + shell - overlap;
        floor_div(&(space * a), &den)
    } else {
        let t = d / 2;
        let a = constant_weight_bound(q, n, d, t);
        let shell = binomial(n, t) * pow(q - 1, t);
        let den = ball_size(t - 1, n, q) * &a + shell;
        floor_div(&(space * a), &den)
    };
    candidate.min(hamming)
}

/// Elias-Bassalygo bound. With `theta = 1 - 1/q` this is the minimum over
/// integers `1 <= w <= theta n` with `w^2 - 2 theta n w + theta n d > 0` of
/// `theta n d / (w^2 - 2 theta n w + theta n d) * q^n / |B(w, n)|`.
/// Returns `q^n` when no `w` is admissible.
pub fn elias_bassalygo_bound(p: CodeParams) -> Nat {
    let (q, n, d) = (p.q() as i128, p.n() as i128, p.d() as i128);
    let space = p.space_size();
    let numerator_scale = Nat::from(((q - 1) * n * d) as u128) * &space;
    let mut best = space.clone();
    let mut w: i128 = 1;
    // multiplying through by q keeps everything integral
    while q * w <= (q - 1) * n {
        let den = q * w * w - 2 * (q - 1) * n * w + (q - 1) * n * d;
        if den > 0 {
            let total = Nat::from(den as u128) * ball_size(w as u32, p.n(), p.q());
            let value = floor_div(&numerator_scale, &total);
            if value < best {
                best = value;
            }
        }
        w += 1;
    }
    best
}

/// Dispatch by name for the classical bounds that yield a size.
pub fn classical_size_bound(p: CodeParams, source: BoundSource) -> Option<Nat> {
    match source {
        BoundSource::Singleton => Some(singleton_bound(p)),
        BoundSource::Hamming => Some(hamming_bound(p)),
        BoundSource::Plotkin => plotkin_bound(p),
        BoundSource::Griesmer => Some(griesmer_bound(p)),
        BoundSource::Johnson => Some(johnson_bound(p)),
        BoundSource::Elias => Some(elias_bassalygo_bound(p)),
        _ => None,
    }
}
