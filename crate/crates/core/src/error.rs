use thiserror::Error;

#[derive(Debug, Error)]
pub enum BoundError {
    #[error("invalid parameters q={q}, n={n}, d={d}: {reason}")]
    InvalidParams {
        q: u32,
        n: u32,
        d: u32,
        reason: &'static str,
    },
    #[error("alphabet size {0} is below 2")]
    InvalidAlphabet(u32),
    #[error("logarithm of zero")]
    LogOfZero,
    #[error("epsilon={epsilon} is invalid for n={n}, d={d} (need epsilon >= 1 and d + epsilon <= n)")]
    InvalidEpsilon { epsilon: u32, n: u32, d: u32 },
    #[error("puncturing parameters t={t}, r={r} violate: {reason}")]
    InvalidPuncturing { t: u32, r: u32, reason: &'static str },
    #[error("search space q^n = {q}^{n} exceeds the brute-force limit of 2^{limit_bits}")]
    SearchTooLarge { q: u32, n: u32, limit_bits: u32 },
    #[error("known-values row {row}: {message}")]
    KnownValuesRow { row: usize, message: String },
    #[error("invalid sweep configuration: {0}")]
    InvalidSweep(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
