//! Exact nonnegative rationals for expansion ratios.
//!
//! Certification compares ratios `|N(S)| / (d|S|)` across millions of subsets;
//! doing this in floating point risks ties being broken by rounding. Values
//! here are small (numerator and denominator fit comfortably in `u64`), so
//! cross-multiplication in `u128` gives exact ordering.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// An exact nonnegative rational with a nonzero denominator.
///
/// Stored unreduced; comparison and equality are value-based via
/// cross-multiplication.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0, "ratio denominator must be nonzero");
        Ratio { num, den }
    }

    pub const ONE: Ratio = Ratio { num: 1, den: 1 };

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Reduced form (for canonical serialization).
    pub fn reduced(&self) -> Ratio {
        let g = gcd(self.num, self.den);
        Ratio {
            num: self.num / g,
            den: self.den / g,
        }
    }

    /// Exact comparison against a float threshold: `self >= threshold`?
    ///
    /// The threshold is a user-supplied f64 (e.g. `1 - eps`); the comparison
    /// multiplies through by the denominator, which is exact in f64 for the
    /// magnitudes that occur here.
    pub fn at_least(&self, threshold: f64) -> bool {
        self.num as f64 >= threshold * self.den as f64
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

impl PartialEq for Ratio {
    fn eq(&self, other: &Self) -> bool {
        (self.num as u128) * (other.den as u128) == (other.num as u128) * (self.den as u128)
    }
}

impl Eq for Ratio {}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        ((self.num as u128) * (other.den as u128)).cmp(&((other.num as u128) * (self.den as u128)))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}
