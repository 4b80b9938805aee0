//! Exact dissimilarity indices over binary feature rows.
//!
//! Every index is stored as an exact rational so that ties compare equal
//! without any epsilon. Euclidean distance keeps its *squared* value (an
//! integer on binary rows); ordering squared values is the same as ordering
//! the distances themselves.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};

/// Exact comparison key.
pub type Key = Ratio<u64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Metric {
    /// Square root of the summed squared attribute differences.
    #[default]
    Euclidean,
    /// Summed absolute attribute differences.
    Manhattan,
    /// Share of attributes that differ, `(b + c) / t`.
    SimpleMatching,
    /// Mismatches over positions where either row is set, `(b + c) / (a + b + c)`.
    Jaccard,
}

impl Metric {
    pub const ALL: [Metric; 4] = [
        Metric::Euclidean,
        Metric::Manhattan,
        Metric::SimpleMatching,
        Metric::Jaccard,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Euclidean => "euclidean",
            Metric::Manhattan => "manhattan",
            Metric::SimpleMatching => "smc",
            Metric::Jaccard => "jaccard",
        }
    }

    pub fn dissimilarity(self, a: &[bool], b: &[bool]) -> Result<ExactDissimilarity> {
        match self {
            Metric::Euclidean => euclidean(a, b),
            Metric::Manhattan => manhattan(a, b),
            Metric::SimpleMatching => simple_matching(a, b),
            Metric::Jaccard => jaccard(a, b),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Metric::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownMetric(s.to_owned()))
    }
}

/// A dissimilarity value tagged with the metric that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExactDissimilarity {
    key: Key,
    metric: Metric,
}

impl ExactDissimilarity {
    pub fn new(metric: Metric, key: Key) -> Self {
        ExactDissimilarity { key, metric }
    }

    pub fn zero(metric: Metric) -> Self {
        Self::new(metric, Key::from_integer(0))
    }

    pub fn key(&self) -> Key {
        self.key
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn is_zero(&self) -> bool {
        *self.key.numer() == 0
    }

    /// The dissimilarity proper: `sqrt(key)` for Euclidean, `key` otherwise.
    pub fn value(&self) -> f64 {
        let k = *self.key.numer() as f64 / *self.key.denom() as f64;
        match self.metric {
            Metric::Euclidean => k.sqrt(),
            _ => k,
        }
    }

    /// [`value`](Self::value) in hundredths, rounded half-up, computed
    /// without floating point.
    pub fn hundredths(&self) -> u64 {
        match self.metric {
            Metric::Euclidean => {
                let (n, d) = (u128::from(*self.key.numer()), u128::from(*self.key.denom()));
                // round(100 * sqrt(n/d)) = floor((floor(200 * sqrt(n/d)) + 1) / 2)
                (40_000 * n / d).isqrt().div_ceil(2) as u64
            }
            _ => ratio_hundredths(self.key),
        }
    }

    /// Two-decimal display form, e.g. `1.41`.
    pub fn display(&self) -> String {
        format_hundredths(self.hundredths())
    }
}

impl Ord for ExactDissimilarity {
    fn cmp(&self, other: &Self) -> Ordering {
        // Ratio compares by exact cross-multiplication.
        self.key
            .cmp(&other.key)
            .then_with(|| (self.metric as u8).cmp(&(other.metric as u8)))
    }
}

impl PartialOrd for ExactDissimilarity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExactDissimilarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

/// `key` in hundredths, rounded half-up.
pub fn ratio_hundredths(key: Key) -> u64 {
    let (n, d) = (u128::from(*key.numer()), u128::from(*key.denom()));
    ((200 * n + d) / (2 * d)) as u64
}

/// Two-decimal form of a ratio, rounded half-up.
pub fn format_ratio(key: Key) -> String {
    format_hundredths(ratio_hundredths(key))
}

fn format_hundredths(h: u64) -> String {
    format!("{}.{:02}", h / 100, h % 100)
}

fn check_lengths(a: &[bool], b: &[bool]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(())
}

/// Number of positions where the rows differ.
pub fn hamming(a: &[bool], b: &[bool]) -> Result<u64> {
    check_lengths(a, b)?;
    Ok(a.iter().zip(b).filter(|(x, y)| x != y).count() as u64)
}

pub fn euclidean(a: &[bool], b: &[bool]) -> Result<ExactDissimilarity> {
    // (x - y)^2 is 1 exactly where binary attributes differ.
    let squared = hamming(a, b)?;
    Ok(ExactDissimilarity::new(Metric::Euclidean, Key::from_integer(squared)))
}

pub fn manhattan(a: &[bool], b: &[bool]) -> Result<ExactDissimilarity> {
    let l1 = hamming(a, b)?;
    Ok(ExactDissimilarity::new(Metric::Manhattan, Key::from_integer(l1)))
}

pub fn simple_matching(a: &[bool], b: &[bool]) -> Result<ExactDissimilarity> {
    let mismatches = hamming(a, b)?;
    if a.is_empty() {
        return Err(Error::EmptyRows);
    }
    Ok(ExactDissimilarity::new(
        Metric::SimpleMatching,
        Key::new(mismatches, a.len() as u64),
    ))
}

/// Two all-zero rows are at dissimilarity 0.
pub fn jaccard(a: &[bool], b: &[bool]) -> Result<ExactDissimilarity> {
    let mismatches = hamming(a, b)?;
    let both = a.iter().zip(b).filter(|&(&x, &y)| x && y).count() as u64;
    let key = if both + mismatches == 0 {
        Key::from_integer(0)
    } else {
        Key::new(mismatches, both + mismatches)
    };
    Ok(ExactDissimilarity::new(Metric::Jaccard, key))
}
