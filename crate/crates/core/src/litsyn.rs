//! Puncturing bounds: the weight-restricted code bound, the Litsyn-Laihonen
//! bound, its improvement for systematic-embedding codes (Bound A) and the
//! dimension search for systematic codes (Bound B).
//!
//! All of them take an [`AqOracle`] for the inner `A_q(n', d')` values, so
//! any valid upper bound on those can be plugged in.

use log::{debug, warn};
use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::str::FromStr;

use crate::classical::BoundSource;
use crate::error::BoundError;
use crate::exact::{ball_size, floor_div, pow, CodeParams, Nat, Ratio};
use crate::oracle::AqOracle;

/// How the ball-ratio correction term is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum DeltaMode {
    /// Integer floor of the ratio. Zero whenever the numerator ball is the
    /// smaller one.
    #[default]
    Floor,
    /// The exact rational ratio. Never admits more than `Floor`.
    Exact,
}

impl FromStr for DeltaMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "floor" => Ok(DeltaMode::Floor),
            "exact" => Ok(DeltaMode::Exact),
            other => Err(format!("unknown delta mode '{other}' (expected floor or exact)")),
        }
    }
}

/// Puncture `t` coordinates and keep words within radius `r` of the centre.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PuncturingParams {
    t: u32,
    r: u32,
}

impl PuncturingParams {
    pub fn new(p: CodeParams, t: u32, r: u32) -> Result<Self, BoundError> {
        let fail = |reason| Err(BoundError::InvalidPuncturing { t, r, reason });
        let (n, d) = (p.n(), p.d());
        if t > n - d {
            return fail("need t <= n - d");
        }
        if r > t {
            return fail("need r <= t");
        }
        if 2 * r > d {
            return fail("need 2r <= d");
        }
        if d - 2 * r > n - t {
            return fail("need d - 2r <= n - t");
        }
        Ok(PuncturingParams { t, r })
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn r(&self) -> u32 {
        self.r
    }
}

/// The ball ratio `|B(r, m)| / |B(d' - 1, m)|`.
fn ball_ratio(r: u32, inner_d: u32, m: u32, q: u32) -> Ratio {
    Ratio::new(ball_size(r, m, q), ball_size(inner_d - 1, m, q))
}

/// Upper bound on an `(n, d)` code whose words all have weight at least
/// `d + epsilon`: `floor(A_q(n, d) - |B(epsilon, n)| / |B(d - 1, n)|)`.
pub fn restricted_code_bound(
    p: CodeParams,
    epsilon: u32,
    aq: &dyn AqOracle,
) -> Result<Nat, BoundError> {
    if epsilon < 1 || p.d() + epsilon > p.n() {
        return Err(BoundError::InvalidEpsilon {
            epsilon,
            n: p.n(),
            d: p.d(),
        });
    }
    let a = aq.estimate(p).value;
    let ratio = ball_ratio(epsilon, p.d(), p.n(), p.q());
    // floor(a - num/den) = floor((a den - num) / den), clamped at zero
    let scaled = &a * ratio.denom();
    if &scaled < ratio.numer() {
        return Ok(Nat::zero());
    }
    Ok(floor_div(&(scaled - ratio.numer()), ratio.denom()))
}

fn inner_params(p: CodeParams, pp: PuncturingParams) -> CodeParams {
    // A_q(m, 0) = A_q(m, 1) = q^m
    let inner_d = (p.d() - 2 * pp.r()).max(1);
    CodeParams::new(p.q(), p.n() - pp.t(), inner_d).expect("puncturing params validated")
}

/// Litsyn-Laihonen: `A_q(n, d) <= q^t / |B(r, t)| * A_q(n - t, d - 2r)`.
pub fn litsyn_laihonen(p: CodeParams, pp: PuncturingParams, aq: &dyn AqOracle) -> Nat {
    let inner = aq.estimate(inner_params(p, pp)).value;
    floor_div(&(pow(p.q(), pp.t()) * inner), &ball_size(pp.r(), pp.t(), p.q()))
}

/// Bound A:
/// `q^t / |B(r,t)| * (A_q(n-t, d-2r) - |B(r,n-t)| / |B(d-2r-1,n-t)| + 1)`.
///
/// Holds for an optimal code that is systematic-embedding with `t` at most
/// its dimension `floor(log_q |C|)`. That hypothesis cannot be checked from
/// `(q, n, d)` and is left to the caller. Requires `d - 2r >= 1`.
pub fn bound_a(
    p: CodeParams,
    pp: PuncturingParams,
    aq: &dyn AqOracle,
    mode: DeltaMode,
) -> Result<Nat, BoundError> {
    if 2 * pp.r() >= p.d() {
        return Err(BoundError::InvalidPuncturing {
            t: pp.t(),
            r: pp.r(),
            reason: "Bound A needs d - 2r >= 1",
        });
    }
    let inner = inner_params(p, pp);
    let a = aq.estimate(inner).value;
    let ratio = ball_ratio(pp.r(), inner.d(), inner.n(), p.q());
    let scale = pow(p.q(), pp.t());
    let ball = ball_size(pp.r(), pp.t(), p.q());
    let a_plus_one = a + 1u32;
    match mode {
        DeltaMode::Floor => {
            let delta = floor_div(ratio.numer(), ratio.denom());
            if delta > a_plus_one {
                warn!("bound A correction exceeds A_q{inner} + 1 for {p}; clamped to 0");
                return Ok(Nat::zero());
            }
            Ok(floor_div(&(scale * (a_plus_one - delta)), &ball))
        }
        DeltaMode::Exact => {
            let scaled = a_plus_one * ratio.denom();
            if &scaled < ratio.numer() {
                warn!("bound A correction exceeds A_q{inner} + 1 for {p}; clamped to 0");
                return Ok(Nat::zero());
            }
            let num = scale * (scaled - ratio.numer());
            Ok(floor_div(&num, &(ball * ratio.denom())))
        }
    }
}

/// One per-radius check of the Bound B inequality
/// `|B(r,k)| <= A_q(n-k, d-2r) - delta + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadiusCheck {
    pub r: u32,
    pub lhs: Nat,
    /// `floor(A - delta + 1)`, saturating at zero. Equivalent to the
    /// rational right-hand side for comparison with the integer `lhs`.
    pub rhs: Nat,
    /// `floor(delta)`.
    pub delta: Nat,
    pub inner_source: BoundSource,
    pub inner_plotkin: bool,
}

impl RadiusCheck {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs
    }
}

/// Result of the Bound B search with its audit trail.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundBWitness {
    pub k: u32,
    /// Every admissible radius at the returned `k`; all of them hold.
    pub checks: Vec<RadiusCheck>,
    /// The first failing check at `k + 1`, when the scan had to descend.
    pub binding: Option<RadiusCheck>,
}

impl BoundBWitness {
    /// Whether the check that ruled out `k + 1` had a zero correction term.
    /// True when nothing had to be ruled out.
    pub fn delta_zero(&self) -> bool {
        self.binding.as_ref().map_or(true, |c| c.delta.is_zero())
    }

    /// Whether the check that ruled out `k + 1` bounded its inner value by
    /// Plotkin.
    pub fn plotkin_binding(&self) -> bool {
        self.binding.as_ref().is_some_and(|c| c.inner_plotkin)
    }
}

/// Which correction the Bound B inequality carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Correction {
    Delta(DeltaMode),
    /// `|B(r,k)| <= A_q(n-k, d-2r) + 1`
    None,
}

fn radius_check(
    p: CodeParams,
    k: u32,
    r: u32,
    aq: &dyn AqOracle,
    correction: Correction,
) -> RadiusCheck {
    let (q, n, d) = (p.q(), p.n(), p.d());
    let m = n - k;
    let inner_d = d - 2 * r;
    let inner = CodeParams::new(q, m, inner_d).expect("admissible radius");
    let est = aq.estimate(inner);
    let lhs = ball_size(r, k, q);
    let a_plus_one = &est.value + 1u32;
    let (rhs, delta) = match correction {
        Correction::None => (a_plus_one, Nat::zero()),
        Correction::Delta(mode) => {
            let ratio = ball_ratio(r, inner_d, m, q);
            let delta = floor_div(ratio.numer(), ratio.denom());
            let rhs = match mode {
                DeltaMode::Floor => {
                    if delta > a_plus_one {
                        Nat::zero()
                    } else {
                        &a_plus_one - &delta
                    }
                }
                DeltaMode::Exact => {
                    let scaled = a_plus_one * ratio.denom();
                    if &scaled < ratio.numer() {
                        Nat::zero()
                    } else {
                        floor_div(&(scaled - ratio.numer()), ratio.denom())
                    }
                }
            };
            (rhs, delta)
        }
    };
    RadiusCheck {
        r,
        lhs,
        rhs,
        delta,
        inner_source: est.source,
        inner_plotkin: est.plotkin_used,
    }
}

/// Radii for which the corollary applies at dimension `k`.
fn admissible_radii(n: u32, d: u32, k: u32) -> impl Iterator<Item = u32> {
    let top = ((d - 1) / 2).min(k);
    (0..=top).filter(move |&r| d - 2 * r <= n - k)
}

/// Checks dimension `k`: `Ok(checks)` when every admissible radius holds,
/// `Err(first failing check)` otherwise.
fn check_dimension(
    p: CodeParams,
    k: u32,
    aq: &dyn AqOracle,
    correction: Correction,
) -> Result<Vec<RadiusCheck>, RadiusCheck> {
    let mut checks = Vec::new();
    for r in admissible_radii(p.n(), p.d(), k) {
        let check = radius_check(p, k, r, aq, correction);
        if !check.holds() {
            return Err(check);
        }
        checks.push(check);
    }
    Ok(checks)
}

fn scan(p: CodeParams, aq: &dyn AqOracle, correction: Correction) -> BoundBWitness {
    let (n, d) = (p.n(), p.d());
    let top = n - d + 1;
    if d < 2 || n <= d {
        return BoundBWitness {
            k: top,
            checks: Vec::new(),
            binding: None,
        };
    }
    let mut binding = None;
    for k in (1..=top).rev() {
        match check_dimension(p, k, aq, correction) {
            Ok(checks) => {
                return BoundBWitness {
                    k,
                    checks,
                    binding,
                }
            }
            Err(failed) => binding = Some(failed),
        }
    }
    BoundBWitness {
        k: 0,
        checks: Vec::new(),
        binding,
    }
}

/// Bound B: the largest `k` in `[1, n-d+1]` such that for every admissible
/// `r` (`0 <= r <= min(floor((d-1)/2), k)` and `d - 2r <= n - k`)
/// `|B(r,k)| <= A_q(n-k, d-2r) - |B(r,n-k)| / |B(d-2r-1,n-k)| + 1`.
///
/// Scans downward from `n - d + 1` and returns the first dimension where all
/// radii hold, or `k = 0` if none does. This bounds the dimension of
/// systematic (and so linear) codes.
pub fn bound_b_max_k(p: CodeParams, aq: &dyn AqOracle, mode: DeltaMode) -> BoundBWitness {
    scan(p, aq, Correction::Delta(mode))
}

/// The same search with the correction term dropped.
pub fn weak_bound_b_max_k(p: CodeParams, aq: &dyn AqOracle) -> u32 {
    scan(p, aq, Correction::None).k
}

/// Whether `k` itself passes every admissible radius, independent of the
/// scan order.
pub fn bound_b_admits(p: CodeParams, k: u32, aq: &dyn AqOracle, mode: DeltaMode) -> bool {
    k >= 1 && k <= p.n() + 1 - p.d() && check_dimension(p, k, aq, Correction::Delta(mode)).is_ok()
}

/// Lists the dimensions below the Bound B answer that fail the inequality.
/// The scan assumes none do; any hit is logged.
pub fn bound_b_monotonicity_gaps(p: CodeParams, aq: &dyn AqOracle, mode: DeltaMode) -> Vec<u32> {
    let k = bound_b_max_k(p, aq, mode).k;
    let gaps: Vec<u32> = (1..k).filter(|&j| !bound_b_admits(p, j, aq, mode)).collect();
    if !gaps.is_empty() {
        debug!("bound B for {p} admits k={k} but rejects smaller k {gaps:?}");
    }
    gaps
}

/// Closed form of Bound B at `d = 3`: the largest `k` with
/// `q^(n-k) >= (q-1)n + 1`, or 0 if there is none.
pub fn d3_closed_form(q: u32, n: u32) -> u32 {
    let target = BigUint::from((q as u64 - 1) * n as u64 + 1);
    let mut s = 0u32;
    let mut power = BigUint::from(1u32);
    while power < target {
        power *= q;
        s += 1;
    }
    n.saturating_sub(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{hamming_bound, k_form};
    use crate::oracle::{aq_upper, AqEstimate, BoundOracle, KnownValuesTable};
    use std::collections::HashMap;

    fn p(q: u32, n: u32, d: u32) -> CodeParams {
        CodeParams::new(q, n, d).unwrap()
    }

    fn nat(v: u64) -> Nat {
        Nat::from(v)
    }

    /// Oracle with a few pinned values, falling back to computed bounds.
    fn pinned(values: &[((u32, u32, u32), u64)]) -> impl AqOracle {
        let map: HashMap<_, _> = values.iter().copied().collect();
        move |params: CodeParams| match map.get(&(params.q(), params.n(), params.d())) {
            Some(&v) => AqEstimate {
                value: nat(v),
                source: BoundSource::Known,
                plotkin_used: false,
            },
            None => aq_upper(params, &KnownValuesTable::empty()),
        }
    }

    #[test]
    fn restricted_code_examples() {
        let aq = pinned(&[((2, 7, 3), 16), ((2, 10, 3), 93)]);
        // 16 - 8/29
        assert_eq!(restricted_code_bound(p(2, 7, 3), 1, &aq).unwrap(), nat(15));
        // 93 - |B(2,10)| / |B(2,10)| = 93 - 1
        assert_eq!(restricted_code_bound(p(2, 10, 3), 2, &aq).unwrap(), nat(92));
        // 93 - |B(1,10)| / |B(2,10)| = 93 - 11/56
        assert_eq!(restricted_code_bound(p(2, 10, 3), 1, &aq).unwrap(), nat(92));
        assert!(restricted_code_bound(p(2, 7, 3), 0, &aq).is_err());
        assert!(restricted_code_bound(p(2, 7, 3), 5, &aq).is_err());
    }

    #[test]
    fn restricted_code_always_below_aq() {
        let table = KnownValuesTable::empty();
        let aq = BoundOracle::new(&table);
        for n in 3..=20 {
            for d in 1..n {
                for eps in 1..=n - d {
                    let params = p(3, n, d);
                    let b = restricted_code_bound(params, eps, &aq).unwrap();
                    assert!(b < aq_upper(params, &table).value);
                }
            }
        }
    }

    #[test]
    fn litsyn_laihonen_examples() {
        let aq = pinned(&[((2, 6, 3), 8), ((2, 6, 2), 32)]);
        let params = p(2, 7, 3);
        let pp = PuncturingParams::new(params, 1, 0).unwrap();
        assert_eq!(litsyn_laihonen(params, pp, &aq), nat(16));
        let params = p(2, 8, 4);
        let pp = PuncturingParams::new(params, 2, 1).unwrap();
        assert_eq!(litsyn_laihonen(params, pp, &aq), nat(42));
        // r = 0 is shortening
        let params = p(3, 9, 4);
        let pp = PuncturingParams::new(params, 3, 0).unwrap();
        let inner = aq.estimate(p(3, 6, 4)).value;
        assert_eq!(litsyn_laihonen(params, pp, &aq), pow(3, 3) * inner);
    }

    #[test]
    fn puncturing_validation() {
        let params = p(2, 10, 6);
        assert!(PuncturingParams::new(params, 5, 0).is_err());
        assert!(PuncturingParams::new(params, 2, 3).is_err());
        assert!(PuncturingParams::new(params, 4, 4).is_err());
        assert!(PuncturingParams::new(params, 4, 3).is_ok());
        let params = p(2, 10, 3);
        assert!(PuncturingParams::new(params, 1, 2).is_err());
    }

    #[test]
    fn bound_a_examples() {
        let aq = pinned(&[((2, 6, 1), 64)]);
        let params = p(2, 7, 3);
        let pp = PuncturingParams::new(params, 1, 1).unwrap();
        assert_eq!(bound_a(params, pp, &aq, DeltaMode::Floor).unwrap(), nat(58));
        // r = 0: floor(1 / |B(d-1, n-t)|) = 0, so q^t (A + 1)
        let aq = pinned(&[((2, 6, 3), 8)]);
        let pp = PuncturingParams::new(params, 1, 0).unwrap();
        assert_eq!(bound_a(params, pp, &aq, DeltaMode::Floor).unwrap(), nat(18));
        // exact mode subtracts 1/22 before flooring
        assert_eq!(bound_a(params, pp, &aq, DeltaMode::Exact).unwrap(), nat(17));
        let params = p(2, 8, 4);
        let pp = PuncturingParams::new(params, 2, 2).unwrap();
        assert!(bound_a(params, pp, &aq, DeltaMode::Floor).is_err());
    }

    #[test]
    fn bound_a_clamps_negative_parenthesis() {
        let aq = pinned(&[((2, 6, 1), 1)]);
        let params = p(2, 7, 3);
        let pp = PuncturingParams::new(params, 1, 1).unwrap();
        assert_eq!(bound_a(params, pp, &aq, DeltaMode::Floor).unwrap(), nat(0));
        assert_eq!(bound_a(params, pp, &aq, DeltaMode::Exact).unwrap(), nat(0));
    }

    #[test]
    fn bound_b_examples() {
        let table = KnownValuesTable::builtin();
        let aq = BoundOracle::new(&table);
        assert_eq!(bound_b_max_k(p(7, 45, 21), &aq, DeltaMode::Floor).k, 22);
        assert_eq!(bound_b_max_k(p(9, 17, 7), &aq, DeltaMode::Floor).k, 10);
        assert_eq!(bound_b_max_k(p(2, 7, 3), &aq, DeltaMode::Floor).k, 4);
        assert_eq!(weak_bound_b_max_k(p(2, 7, 3), &aq), 4);
        assert_eq!(weak_bound_b_max_k(p(9, 17, 7), &aq), 10);
    }

    #[test]
    fn bound_b_degenerate() {
        let table = KnownValuesTable::empty();
        let aq = BoundOracle::new(&table);
        let w = bound_b_max_k(p(3, 5, 5), &aq, DeltaMode::Floor);
        assert_eq!(w.k, 1);
        assert!(w.checks.is_empty());
        assert_eq!(bound_b_max_k(p(3, 5, 1), &aq, DeltaMode::Floor).k, 5);
    }

    #[test]
    fn witness_records_only_holding_admissible_checks() {
        let table = KnownValuesTable::empty();
        let aq = BoundOracle::new(&table);
        for q in [2, 3, 5] {
            for n in 4..=25 {
                for d in 2..n {
                    let params = p(q, n, d);
                    for mode in [DeltaMode::Floor, DeltaMode::Exact] {
                        let w = bound_b_max_k(params, &aq, mode);
                        assert!(w.k <= n - d + 1);
                        for c in &w.checks {
                            assert!(c.lhs <= c.rhs);
                            assert!(2 * c.r < d && c.r <= w.k && d - 2 * c.r <= n - w.k);
                        }
                        if let Some(b) = &w.binding {
                            assert!(b.lhs > b.rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn d3_examples() {
        assert_eq!(d3_closed_form(2, 7), 4);
        assert_eq!(d3_closed_form(2, 10), 6);
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29] {
            for n in 4..=100 {
                let h = hamming_bound(p(q, n, 3));
                assert_eq!(d3_closed_form(q, n), k_form(&h, q), "q={q} n={n}");
            }
        }
    }

    #[test]
    fn d3_dominates_litsyn_laihonen_form() {
        // q^(n-k) - (q-1)n - 1 >= 0 implies q^(n-k) - (q-1)k - 1 >= 0
        for q in 2..=6u32 {
            for n in 3..=40u32 {
                for k in 1..=n {
                    let lhs = pow(q, n - k);
                    let ours = lhs >= nat((q as u64 - 1) * n as u64 + 1);
                    let theirs = lhs >= nat((q as u64 - 1) * k as u64 + 1);
                    assert!(!ours || theirs);
                }
            }
        }
    }

    #[test]
    fn delta_mode_parses() {
        assert_eq!("floor".parse::<DeltaMode>().unwrap(), DeltaMode::Floor);
        assert_eq!("EXACT".parse::<DeltaMode>().unwrap(), DeltaMode::Exact);
        assert!("round".parse::<DeltaMode>().is_err());
    }
}
