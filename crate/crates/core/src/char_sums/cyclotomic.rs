use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::CharSumError;

/// An element `Σ counts[k]·ω^k` of Z[ω], ω = e^{2πi/p}, p prime.
///
/// The only integer relation among 1, ω, .., ω^{p-1} is the all-ones vector,
/// so after shifting every entry down to `min(counts) = 0` two values are equal
/// exactly when their count vectors are equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<i64>", try_from = "Vec<i64>")]
pub struct CyclotomicInteger {
    counts: Vec<i64>,
}

impl CyclotomicInteger {
    /// Canonicalizes an arbitrary count vector. Its length is the prime p.
    pub fn new(mut counts: Vec<i64>) -> Self {
        assert!(counts.len() >= 2, "count vector needs length p >= 2");
        let min = *counts.iter().min().unwrap();
        if min != 0 {
            counts.iter_mut().for_each(|c| *c -= min);
        }
        CyclotomicInteger { counts }
    }

    pub fn zero(p: u32) -> Self {
        CyclotomicInteger {
            counts: vec![0; p as usize],
        }
    }

    /// The rational integer v.
    pub fn from_int(p: u32, v: i64) -> Self {
        let mut counts = vec![0; p as usize];
        counts[0] = v;
        Self::new(counts)
    }

    /// ω^k.
    pub fn root_power(p: u32, k: u64) -> Self {
        let mut counts = vec![0; p as usize];
        counts[(k % p as u64) as usize] = 1;
        CyclotomicInteger { counts }
    }

    /// Σ ω^{e} over a multiset of exponents.
    pub fn from_exponents<I: IntoIterator<Item = u32>>(p: u32, exponents: I) -> Self {
        let mut counts = vec![0i64; p as usize];
        for e in exponents {
            counts[(e % p) as usize] += 1;
        }
        Self::new(counts)
    }

    pub fn p(&self) -> u32 {
        self.counts.len() as u32
    }

    pub fn counts(&self) -> &[i64] {
        &self.counts
    }

    pub fn is_zero(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self) -> Result<Self, CharSumError> {
        self.same_modulus(other)?;
        Ok(Self::new(
            self.counts
                .iter()
                .zip(&other.counts)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CharSumError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.counts.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::new(self.counts.iter().map(|c| c * k).collect())
    }

    /// Multiplication by ω^k.
    pub fn rotate(&self, k: u64) -> Self {
        let p = self.counts.len();
        let shift = (k % p as u64) as usize;
        let mut counts = vec![0; p];
        for (i, &c) in self.counts.iter().enumerate() {
            counts[(i + shift) % p] = c;
        }
        CyclotomicInteger { counts }
    }

    /// Complex conjugate: ω^k -> ω^{-k}.
    pub fn conj(&self) -> Self {
        let p = self.counts.len();
        let counts = (0..p).map(|k| self.counts[(p - k) % p]).collect();
        CyclotomicInteger { counts }
    }

    /// Exact division by 2, when the value lies in 2·Z[ω].
    pub fn halve(&self) -> Option<Self> {
        let parity = self.counts[0].rem_euclid(2);
        if self.counts.iter().any(|c| c.rem_euclid(2) != parity) {
            return None;
        }
        Some(Self::new(
            self.counts.iter().map(|c| (c - parity) / 2).collect(),
        ))
    }

    /// The value as a rational integer, when it is one.
    pub fn as_integer(&self) -> Option<i64> {
        if self.counts[1..].iter().all(|&c| c == self.counts[1]) {
            Some(self.counts[0] - self.counts[1])
        } else {
            None
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        let p = self.counts.len() as f64;
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| Complex64::from_polar(c as f64, TAU * k as f64 / p))
            .sum()
    }

    pub fn magnitude(&self) -> f64 {
        self.to_complex().norm()
    }

    fn same_modulus(&self, other: &Self) -> Result<(), CharSumError> {
        if self.counts.len() == other.counts.len() {
            Ok(())
        } else {
            Err(CharSumError::MixedModulus {
                left: self.p(),
                right: other.p(),
            })
        }
    }
}

impl fmt::Debug for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc{:?}", self.counts)
    }
}

impl From<CyclotomicInteger> for Vec<i64> {
    fn from(c: CyclotomicInteger) -> Self {
        c.counts
    }
}

impl TryFrom<Vec<i64>> for CyclotomicInteger {
    type Error = String;

    fn try_from(counts: Vec<i64>) -> Result<Self, String> {
        if counts.len() < 2 {
            return Err("count vector needs length p >= 2".into());
        }
        Ok(Self::new(counts))
    }
}
