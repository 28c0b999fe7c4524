//! Exact integer and rational arithmetic shared by every bound.
//!
//! Values reach magnitudes around `29^100`, so everything is carried in
//! arbitrary-precision integers. There is no floating point on any path that
//! produces a bound.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::BoundError;

/// Arbitrary-precision non-negative integer.
pub type Nat = BigUint;

/// Exact non-negative rational, always kept in lowest terms.
pub type Ratio = num_rational::Ratio<BigUint>;

/// A validated `(q, n, d)` triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CodeParams {
    q: u32,
    n: u32,
    d: u32,
}

impl CodeParams {
    pub fn new(q: u32, n: u32, d: u32) -> Result<Self, BoundError> {
        if q < 2 {
            return Err(BoundError::InvalidParams {
                q,
                n,
                d,
                reason: "alphabet size must be at least 2",
            });
        }
        if n < 1 {
            return Err(BoundError::InvalidParams {
                q,
                n,
                d,
                reason: "length must be at least 1",
            });
        }
        if d < 1 || d > n {
            return Err(BoundError::InvalidParams {
                q,
                n,
                d,
                reason: "distance must satisfy 1 <= d <= n",
            });
        }
        Ok(CodeParams { q, n, d })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// Size of the whole space, `q^n`.
    pub fn space_size(&self) -> Nat {
        pow(self.q, self.n)
    }
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(q={}, n={}, d={})", self.q, self.n, self.d)
    }
}

pub fn pow(base: u32, exp: u32) -> Nat {
    num_traits::pow(Nat::from(base), exp as usize)
}

/// `C(m, j)`, zero when `j > m`.
pub fn binomial(m: u32, j: u32) -> Nat {
    if j > m {
        return Nat::zero();
    }
    let j = j.min(m - j);
    let mut acc = Nat::one();
    // acc * (m - i) is always divisible by (i + 1) after the multiply.
    for i in 0..j {
        acc *= m - i;
        acc /= i + 1;
    }
    acc
}

/// Number of words of `F_q^m` with weight at most `l`. A radius beyond the
/// length is clamped to the length.
pub fn ball_size(l: u32, m: u32, q: u32) -> Nat {
    let l = l.min(m);
    let mut total = Nat::zero();
    let mut term = Nat::one();
    for j in 0..=l {
        if j > 0 {
            // C(m, j)(q-1)^j from C(m, j-1)(q-1)^(j-1)
            term *= (m - j + 1) as u64 * (q - 1) as u64;
            term /= j;
        }
        total += &term;
    }
    total
}

/// Largest `s` with `q^s <= x`.
pub fn floor_log_q(x: &Nat, q: u32) -> Result<u32, BoundError> {
    if x.is_zero() {
        return Err(BoundError::LogOfZero);
    }
    if q < 2 {
        return Err(BoundError::InvalidAlphabet(q));
    }
    let mut s = 0;
    let mut power = Nat::from(q);
    while &power <= x {
        s += 1;
        power *= q;
    }
    Ok(s)
}

/// `floor(a / b)` for a rational.
pub fn floor_ratio(r: &Ratio) -> Nat {
    r.numer() / r.denom()
}

/// `floor(num / den)`; `den` must be positive.
pub fn floor_div(num: &Nat, den: &Nat) -> Nat {
    num.div_floor(den)
}

/// Exact comparison of a rational against an integer.
pub fn ratio_cmp_nat(r: &Ratio, x: &Nat) -> std::cmp::Ordering {
    r.numer().cmp(&(x * r.denom()))
}

/// Precomputed ball sizes `|B(l, m)|` for one alphabet and every
/// `l <= m <= max_len`. Cheap lookups for sweeps that hit the same sizes
/// many times.
#[derive(Debug, Clone)]
pub struct BallTable {
    q: u32,
    rows: Vec<Vec<Nat>>,
}

impl BallTable {
    pub fn new(q: u32, max_len: u32) -> Self {
        let rows = (0..=max_len)
            .map(|m| {
                let mut row = Vec::with_capacity(m as usize + 1);
                let mut total = Nat::zero();
                let mut term = Nat::one();
                for j in 0..=m {
                    if j > 0 {
                        term *= (m - j + 1) as u64 * (q - 1) as u64;
                        term /= j;
                    }
                    total += &term;
                    row.push(total.clone());
                }
                row
            })
            .collect();
        BallTable { q, rows }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// `|B(l, m)|`, computing directly when `m` is outside the table.
    pub fn get(&self, l: u32, m: u32) -> Nat {
        match self.rows.get(m as usize) {
            Some(row) => row[l.min(m) as usize].clone(),
            None => ball_size(l, m, self.q),
        }
    }
}
