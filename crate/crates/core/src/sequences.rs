//! m-sequences, decimation, and the family
//! S = { m(2t+i) + m(d(t+l)+j) : i, j ∈ {0,1}, 0 ≤ l < N } of 4N sequences.

use std::collections::HashSet;
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::field::{gcd, FieldCtx, FieldElement, FieldError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("the m-sequence coefficient beta must be nonzero")]
    ZeroBeta,
    #[error("decimation by {d} is not well defined with period {new_period} on a sequence of period {period}")]
    BadPeriod {
        d: u64,
        period: usize,
        new_period: usize,
    },
    #[error("family index {0} is out of range")]
    IndexOutOfRange(FamilyIndex),
    #[error("gcd(q-1, {d}) must be 2, got {gcd}")]
    UnsupportedDecimation { d: u64, gcd: u64 },
    #[error("symbol {symbol} is not a residue mod {p}")]
    BadSymbol { symbol: u32, p: u32 },
    #[error("sequences have different periods ({0} vs {1})")]
    PeriodMismatch(usize, usize),
    #[error(transparent)]
    Field(#[from] FieldError),
}

pub type Result<T> = std::result::Result<T, SequenceError>;

/// A periodic sequence over Z_p, stored as one full period.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PSequence {
    p: u32,
    symbols: Vec<u32>,
}

impl PSequence {
    pub fn new(p: u32, symbols: Vec<u32>) -> Result<Self> {
        if let Some(&symbol) = symbols.iter().find(|&&s| s >= p) {
            return Err(SequenceError::BadSymbol { symbol, p });
        }
        if symbols.is_empty() {
            return Err(SequenceError::BadPeriod {
                d: 1,
                period: 0,
                new_period: 0,
            });
        }
        Ok(PSequence { p, symbols })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn period(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    /// s(t) with t taken mod the period.
    pub fn at(&self, t: i64) -> u32 {
        self.symbols[t.rem_euclid(self.period() as i64) as usize]
    }

    /// Smallest T > 0 with s(t + T) = s(t) for all t.
    pub fn minimal_period(&self) -> usize {
        let n = self.period();
        (1..=n)
            .filter(|t| n.is_multiple_of(*t))
            .find(|&t| (0..n).all(|i| self.symbols[i] == self.symbols[(i + t) % n]))
            .unwrap_or(n)
    }

    /// Histogram of symbol occurrences over one period.
    pub fn histogram(&self) -> Vec<usize> {
        let mut h = vec![0; self.p as usize];
        for &s in &self.symbols {
            h[s as usize] += 1;
        }
        h
    }

    /// The lexicographically least cyclic rotation (two-pointer minimum
    /// expression, linear time).
    pub fn least_rotation(&self) -> Vec<u32> {
        let s = &self.symbols;
        let n = s.len();
        let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
        while i < n && j < n && k < n {
            let a = s[(i + k) % n];
            let b = s[(j + k) % n];
            if a == b {
                k += 1;
                continue;
            }
            if a > b {
                i += k + 1;
            } else {
                j += k + 1;
            }
            if i == j {
                j += 1;
            }
            k = 0;
        }
        let start = i.min(j);
        (0..n).map(|t| s[(start + t) % n]).collect()
    }
}

/// m(t) = Tr(β·α^t), t ∈ [0, q-2].
pub fn m_sequence(ctx: &FieldCtx, beta: FieldElement) -> Result<PSequence> {
    let log_beta = ctx.dlog(beta).map_err(|e| match e {
        FieldError::LogOfZero => SequenceError::ZeroBeta,
        other => other.into(),
    })?;
    let base = ctx.trace_by_log();
    let len = base.len();
    let symbols = (0..len)
        .map(|t| base[(t + log_beta as usize) % len])
        .collect();
    Ok(PSequence {
        p: ctx.p(),
        symbols,
    })
}

/// out(t) = seq((d·t) mod period) for t ∈ [0, new_period).
pub fn decimate(seq: &PSequence, d: u64, new_period: usize) -> Result<PSequence> {
    let period = seq.period();
    if new_period == 0 || !(d as u128 * new_period as u128).is_multiple_of(period as u128) {
        return Err(SequenceError::BadPeriod {
            d,
            period,
            new_period,
        });
    }
    let symbols = (0..new_period as u64)
        .map(|t| seq.symbols[((d as u128 * t as u128) % period as u128) as usize])
        .collect();
    Ok(PSequence { p: seq.p, symbols })
}

/// Selector (i, j, l) of one member of the family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FamilyIndex {
    pub i: u8,
    pub j: u8,
    pub l: u32,
}

impl FamilyIndex {
    pub fn new(i: u8, j: u8, l: u32) -> Self {
        FamilyIndex { i, j, l }
    }

    pub fn is_valid(&self, half_period: u32) -> bool {
        self.i <= 1 && self.j <= 1 && self.l < half_period
    }

    /// All 4N indices in lexicographic (i, j, l) order.
    pub fn all(half_period: u32) -> impl Iterator<Item = FamilyIndex> + Clone {
        (0..2u8).flat_map(move |i| {
            (0..2u8).flat_map(move |j| (0..half_period).map(move |l| FamilyIndex { i, j, l }))
        })
    }
}

impl fmt::Display for FamilyIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.i, self.j, self.l)
    }
}

/// The two admissible second decimations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Decimation {
    /// d = 4
    Four,
    /// d = N + 1 = (q + 1) / 2
    HalfPlusOne,
}

impl Decimation {
    pub const ALL: [Decimation; 2] = [Decimation::Four, Decimation::HalfPlusOne];

    pub fn value(self, half_period: u32) -> u64 {
        match self {
            Decimation::Four => 4,
            Decimation::HalfPlusOne => half_period as u64 + 1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Decimation::Four => "4",
            Decimation::HalfPlusOne => "N+1",
        }
    }
}

impl fmt::Display for Decimation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Decimation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "4" | "four" => Ok(Decimation::Four),
            "n+1" | "half-plus-one" | "half_plus_one" => Ok(Decimation::HalfPlusOne),
            other => Err(format!("unsupported decimation {other:?}; use 4 or N+1")),
        }
    }
}

/// Field, second decimation, and m-sequence coefficient β defining one family.
#[derive(Debug, Clone)]
pub struct FamilySpec {
    ctx: Arc<FieldCtx>,
    decimation: Decimation,
    beta: FieldElement,
    mseq: PSequence,
}

impl FamilySpec {
    pub fn new(ctx: Arc<FieldCtx>, decimation: Decimation, beta: FieldElement) -> Result<Self> {
        ctx.check(beta)?;
        let order = ctx.group_order() as u64;
        for d in [2, decimation.value(ctx.half_order())] {
            let g = gcd(order, d);
            if g != 2 {
                return Err(SequenceError::UnsupportedDecimation { d, gcd: g });
            }
        }
        let mseq = m_sequence(&ctx, beta)?;
        Ok(FamilySpec {
            ctx,
            decimation,
            beta,
            mseq,
        })
    }

    /// β = 1.
    pub fn standard(ctx: Arc<FieldCtx>, decimation: Decimation) -> Result<Self> {
        let one = ctx.one();
        Self::new(ctx, decimation, one)
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn ctx_arc(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn decimation(&self) -> Decimation {
        self.decimation
    }

    pub fn d(&self) -> u64 {
        self.decimation.value(self.half_period())
    }

    pub fn beta(&self) -> FieldElement {
        self.beta
    }

    pub fn half_period(&self) -> u32 {
        self.ctx.half_order()
    }

    pub fn family_size(&self) -> usize {
        4 * self.half_period() as usize
    }

    pub fn m_sequence(&self) -> &PSequence {
        &self.mseq
    }
}

/// out(t) = m(2t + i) + m(d(t + l) + j) mod p, t ∈ [0, N).
pub fn family_member(spec: &FamilySpec, idx: FamilyIndex) -> Result<PSequence> {
    let n = spec.half_period();
    if !idx.is_valid(n) {
        return Err(SequenceError::IndexOutOfRange(idx));
    }
    let m = &spec.mseq;
    let big = m.period() as u64;
    let d = spec.d();
    let p = spec.ctx.p();
    let symbols = (0..n as u64)
        .map(|t| {
            let first = m.symbols[((2 * t + idx.i as u64) % big) as usize];
            let second =
                m.symbols[((d * ((t + idx.l as u64) % big) + idx.j as u64) % big) as usize];
            (first + second) % p
        })
        .collect();
    Ok(PSequence { p, symbols })
}

/// All 4N members in lexicographic (i, j, l) order.
pub fn family_enumerate(spec: &FamilySpec) -> impl Iterator<Item = (FamilyIndex, PSequence)> + '_ {
    FamilyIndex::all(spec.half_period())
        .map(move |idx| (idx, family_member(spec, idx).expect("index is in range")))
}

/// True iff no two of the given sequences are cyclic shifts of each other.
pub fn sequences_cyclically_distinct(seqs: &[PSequence]) -> bool {
    let mut seen = HashSet::with_capacity(seqs.len());
    seqs.iter().all(|s| seen.insert(s.least_rotation()))
}

/// True iff the 4N members of the family are pairwise cyclically inequivalent.
pub fn cyclic_inequivalence_check(spec: &FamilySpec) -> bool {
    let members: Vec<PSequence> = family_enumerate(spec).map(|(_, s)| s).collect();
    members.len() == spec.family_size() && sequences_cyclically_distinct(&members)
}

#[derive(Serialize)]
struct DumpHeader {
    p: u32,
    n: u32,
    d: u64,
    beta: Vec<u32>,
    modulus: Vec<u32>,
}

/// JSON header line, then one `i,j,l:s0 s1 .. s_{N-1}` line per member.
pub fn write_family_dump<W: Write>(spec: &FamilySpec, mut out: W) -> io::Result<()> {
    let ctx = spec.ctx();
    let header = DumpHeader {
        p: ctx.p(),
        n: ctx.n(),
        d: spec.d(),
        beta: ctx.coeffs(spec.beta).expect("beta belongs to ctx"),
        modulus: ctx.modulus().to_vec(),
    };
    serde_json::to_writer(&mut out, &header)?;
    writeln!(out)?;
    for (idx, seq) in family_enumerate(spec) {
        write!(out, "{idx}:")?;
        for (t, s) in seq.symbols().iter().enumerate() {
            if t > 0 {
                write!(out, " ")?;
            }
            write!(out, "{s}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}
