//! Exact upper bounds on the size of error-correcting codes.
//!
//! The crate computes the classical bounds on `A_q(n, d)` (Singleton,
//! Hamming, Plotkin, Griesmer, Johnson, Elias-Bassalygo), the puncturing
//! bounds built on top of an `A_q` oracle (Litsyn-Laihonen, Bound A and the
//! systematic-code dimension search Bound B) and a sweep harness that
//! compares them across parameter grids. All bound arithmetic is exact.
//!
//! ```
//! use codebounds::{bound_b_max_k, BoundOracle, CodeParams, DeltaMode, KnownValuesTable};
//!
//! let table = KnownValuesTable::builtin();
//! let oracle = BoundOracle::new(&table);
//! let p = CodeParams::new(9, 17, 7).unwrap();
//! assert_eq!(bound_b_max_k(p, &oracle, DeltaMode::Floor).k, 10);
//! ```

pub mod classical;
pub mod error;
pub mod exact;
pub mod harness;
pub mod litsyn;
pub mod oracle;
pub mod table3;

pub use classical::{
    constant_weight_bound, elias_bassalygo_bound, griesmer_bound, griesmer_max_k, hamming_bound,
    johnson_bound, k_form, plotkin_bound, singleton_bound, BoundSource, BoundValue,
};
pub use error::BoundError;
pub use exact::{ball_size, binomial, floor_log_q, pow, BallTable, CodeParams, Nat, Ratio};
pub use harness::{
    compute_stats, run_sweep, ComparisonRow, Competitor, KnownValuesSource, OutputFormat,
    StatsSummary, SweepConfig,
};
pub use litsyn::{
    bound_a, bound_b_max_k, d3_closed_form, litsyn_laihonen, restricted_code_bound,
    weak_bound_b_max_k, BoundBWitness, DeltaMode, PuncturingParams, RadiusCheck,
};
pub use oracle::{
    aq_exact_bruteforce, aq_upper, max_systematic_k_bruteforce, AqEstimate, AqOracle, BoundOracle,
    KnownValuesTable, OracleGrid,
};
