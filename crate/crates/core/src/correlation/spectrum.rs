use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::reachable::reachable_params;
use super::{
    bound_value, kernel_counts, linear_case_bound, reduce_codes, CorrelationError, Result,
    BOUND_TOLERANCE,
};
use crate::char_sums::CyclotomicInteger;
use crate::field::{FieldCtx, FieldDescriptor};
use crate::sequences::{family_enumerate, Decimation, FamilyIndex, FamilySpec};

/// Largest field order accepted by [`family_spectrum`].
pub const SPECTRUM_MAX_Q: u32 = 1_000_000;
/// Fields up to this order get the exhaustive naive cross-check under `Auto`.
pub const FULL_NAIVE_MAX_Q: u32 = 343;
/// Fields up to this order get a sampled naive cross-check under `Auto`.
pub const SAMPLED_NAIVE_MAX_Q: u32 = 2187;
const AUTO_SAMPLED_PAIRS: usize = 48;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NaiveCheck {
    /// Full sweep for q ≤ 343, sampled member pairs for q ≤ 2187, none above.
    Auto,
    Off,
    /// All ordered member pairs and all shifts.
    Full,
    /// `pairs` seeded random ordered member pairs, all shifts each.
    Sampled {
        pairs: usize,
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpectrumOptions {
    pub threads: Option<usize>,
    pub naive_check: NaiveCheck,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions {
            threads: None,
            naive_check: NaiveCheck::Auto,
        }
    }
}

impl SpectrumOptions {
    pub fn without_naive_check(mut self) -> Self {
        self.naive_check = NaiveCheck::Off;
        self
    }
}

/// The exact set of nontrivial correlation values of one family.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SpectrumValues {
    pub values: BTreeSet<CyclotomicInteger>,
    /// Values whose kernel has no quadratic term (b = 0 for d = 4, a = 0 for d = N + 1).
    pub linear_case: BTreeSet<CyclotomicInteger>,
    pub representatives: usize,
}

impl SpectrumValues {
    pub fn c_max(&self) -> f64 {
        max_magnitude(&self.values)
    }

    pub fn linear_case_max(&self) -> f64 {
        max_magnitude(&self.linear_case)
    }

    pub fn union(&self, other: &SpectrumValues) -> SpectrumValues {
        SpectrumValues {
            values: self.values.union(&other.values).cloned().collect(),
            linear_case: self
                .linear_case
                .union(&other.linear_case)
                .cloned()
                .collect(),
            representatives: self.representatives + other.representatives,
        }
    }
}

fn max_magnitude(values: &BTreeSet<CyclotomicInteger>) -> f64 {
    values.iter().map(|v| v.magnitude()).fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NaiveCheckSummary {
    pub mode: &'static str,
    pub member_pairs: u64,
    pub correlations: u64,
    pub mismatches: u64,
    /// Full mode only: whether the naive value set equals the reduced spectrum.
    pub value_sets_equal: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub p: u32,
    pub n: u32,
    /// `d=4`, `d=N+1`, or `merged`.
    pub interpretation: String,
    /// Second decimation, absent for the merged spectrum.
    pub d: Option<u64>,
    #[serde(rename = "N")]
    pub half_period: u32,
    pub c_max: f64,
    pub c_max_over_sqrt_n: f64,
    pub c_max_over_sqrt_n_4dp: String,
    pub distinct_count: usize,
    pub bound: f64,
    pub pass: bool,
    pub linear_case_max: f64,
    pub linear_case_bound: f64,
    pub linear_case_pass: bool,
    pub representatives: usize,
    pub naive_check: Option<NaiveCheckSummary>,
    pub field: FieldDescriptor,
    pub beta: Vec<u32>,
}

/// Rounds half-up to 4 decimals and formats with exactly 4 digits.
pub fn round_half_up_4dp(x: f64) -> String {
    // the epsilon absorbs binary representation error at exact ties
    let scaled = (x * 1e4 + 0.5 + 1e-7).floor();
    format!("{:.4}", scaled / 1e4)
}

fn in_pool<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match threads {
        Some(k) if k > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .expect("thread pool")
            .install(f),
        _ => f(),
    }
}

/// Evaluates the family kernel on every reachable class representative.
pub fn spectrum_values(spec: &FamilySpec, threads: Option<usize>) -> Result<SpectrumValues> {
    let ctx = spec.ctx();
    if ctx.q() > SPECTRUM_MAX_Q {
        return Err(CorrelationError::ScaleTooLarge(ctx.q()));
    }
    let reach = reachable_params(spec)?;
    let decimation = spec.decimation();
    let evaluated: Vec<(CyclotomicInteger, bool)> = in_pool(threads, || {
        reach
            .classes
            .par_iter()
            .map(|class| {
                let (a, b) = (class.rep.a.code(), class.rep.b.code());
                match decimation {
                    Decimation::Four => (kernel_counts(ctx, a, b), b == 0),
                    Decimation::HalfPlusOne => (kernel_counts(ctx, b, a), a == 0),
                }
            })
            .collect()
    });
    let mut out = SpectrumValues {
        representatives: reach.classes.len(),
        ..Default::default()
    };
    for (value, linear) in evaluated {
        if linear {
            out.linear_case.insert(value.clone());
        }
        out.values.insert(value);
    }
    Ok(out)
}

fn resolve_mode(mode: NaiveCheck, q: u32) -> NaiveCheck {
    match mode {
        NaiveCheck::Auto if q <= FULL_NAIVE_MAX_Q => NaiveCheck::Full,
        NaiveCheck::Auto if q <= SAMPLED_NAIVE_MAX_Q => NaiveCheck::Sampled {
            pairs: AUTO_SAMPLED_PAIRS,
            seed: 0,
        },
        NaiveCheck::Auto => NaiveCheck::Off,
        other => other,
    }
}

/// Recomputes correlations directly from the member sequences and compares
/// each one with the kernel value of its reduced (a, b).
pub fn naive_check(
    spec: &FamilySpec,
    mode: NaiveCheck,
    expected: &SpectrumValues,
    threads: Option<usize>,
) -> Result<Option<NaiveCheckSummary>> {
    let ctx = spec.ctx();
    let mode = resolve_mode(mode, ctx.q());
    let (first_members, full) = match mode {
        NaiveCheck::Off | NaiveCheck::Auto => return Ok(None),
        NaiveCheck::Full => (None, true),
        NaiveCheck::Sampled { pairs, seed } => (Some((pairs, seed)), false),
    };

    let p = ctx.p();
    let half = spec.half_period() as usize;
    // Each member is stored as its symbols followed by the negated symbols
    // repeated twice, so s1(t) - s2(t + τ) + p indexes a 2p-bucket histogram.
    let members: Vec<(FamilyIndex, Vec<u32>, Vec<u32>)> = family_enumerate(spec)
        .map(|(idx, s)| {
            let negated: Vec<u32> = s.symbols().iter().map(|&y| p - y).collect();
            (
                idx,
                s.symbols().to_vec(),
                [negated.clone(), negated].concat(),
            )
        })
        .collect();
    let pairs: Vec<(usize, usize)> = match first_members {
        None => (0..members.len())
            .flat_map(|i| (0..members.len()).map(move |j| (i, j)))
            .collect(),
        Some((count, seed)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| {
                    (
                        rng.gen_range(0..members.len()),
                        rng.gen_range(0..members.len()),
                    )
                })
                .collect()
        }
    };

    let q = ctx.q() as usize;
    let decimation = spec.decimation();
    // Full mode memoizes T over all q² pairs as ids into the distinct values;
    // sampled mode evaluates on demand.
    let memo: Option<Memo> = full.then(|| Memo::build(ctx, threads));
    let slot = |a: u32, b: u32| -> (u32, u32) {
        match decimation {
            Decimation::Four => (a, b),
            Decimation::HalfPlusOne => (b, a),
        }
    };

    let d = spec.d();
    let beta = spec.beta().code();
    let counter = DifferenceCounter::new(p, half);
    let tally = |mut acc: Tally, &(i, j): &(usize, usize)| {
        let (idx1, s1, _) = &members[i];
        let (idx2, _, neg2) = &members[j];
        let mut buckets = vec![0i64; 2 * p as usize];
        let mut counts = vec![0i64; p as usize];
        for tau in 0..half {
            if tau == 0 && i == j {
                continue;
            }
            counter.count(s1, &neg2[tau..tau + half], &mut buckets, &mut counts);
            let min = *counts.iter().min().expect("p >= 2");
            counts.iter_mut().for_each(|c| *c -= min);
            let (a, b) = reduce_codes(ctx, d, beta, *idx1, *idx2, tau as u32);
            let (x, y) = slot(a, b);
            let agrees = match &memo {
                Some(m) => {
                    let id = m.ids[x as usize * q + y as usize] as usize;
                    acc.hit[id] = true;
                    m.values[id].counts() == counts.as_slice()
                }
                None => kernel_counts(ctx, x, y).counts() == counts.as_slice(),
            };
            if !agrees {
                acc.mismatches += 1;
            }
            acc.correlations += 1;
        }
        acc
    };
    let hit_len = memo.as_ref().map_or(0, |m| m.values.len());
    let total = in_pool(threads, || {
        pairs
            .par_iter()
            .fold(|| Tally::new(hit_len), tally)
            .reduce(|| Tally::new(hit_len), Tally::merge)
    });
    let (mismatches, correlations) = (total.mismatches, total.correlations);
    let naive_values: BTreeSet<CyclotomicInteger> = match &memo {
        Some(m) => m
            .values
            .iter()
            .zip(&total.hit)
            .filter(|(_, &hit)| hit)
            .map(|(v, _)| v.clone())
            .collect(),
        None => BTreeSet::new(),
    };

    let value_sets_equal = full.then(|| naive_values == expected.values);
    let summary = NaiveCheckSummary {
        mode: if full { "full" } else { "sampled" },
        member_pairs: pairs.len() as u64,
        correlations,
        mismatches,
        value_sets_equal,
    };
    if mismatches > 0 || value_sets_equal == Some(false) {
        return Err(CorrelationError::OracleMismatch(mismatches.max(1)));
    }
    Ok(Some(summary))
}

/// Histogram of s1(t) - s2(t + τ) mod p, given s1 and p - s2.
enum DifferenceCounter {
    /// One 16-bit lane per residue in a u128; avoids the store-forwarding
    /// stall of a tiny memory histogram.
    Packed {
        lanes: Vec<u128>,
    },
    Buckets,
}

impl DifferenceCounter {
    fn new(p: u32, len: usize) -> Self {
        if p <= 8 && len < 1 << 16 {
            let lanes = (0..2 * p).map(|k| 1u128 << (16 * (k % p))).collect();
            DifferenceCounter::Packed { lanes }
        } else {
            DifferenceCounter::Buckets
        }
    }

    fn count(&self, s1: &[u32], neg2: &[u32], buckets: &mut [i64], counts: &mut [i64]) {
        match self {
            DifferenceCounter::Packed { lanes } => {
                let acc: u128 = s1
                    .iter()
                    .zip(neg2)
                    .map(|(&x, &y)| lanes[(x + y) as usize])
                    .sum();
                for (e, c) in counts.iter_mut().enumerate() {
                    *c = ((acc >> (16 * e)) & 0xffff) as i64;
                }
            }
            DifferenceCounter::Buckets => {
                buckets.iter_mut().for_each(|c| *c = 0);
                for (&x, &y) in s1.iter().zip(neg2) {
                    buckets[(x + y) as usize] += 1;
                }
                let (low, high) = buckets.split_at(counts.len());
                for ((c, l), h) in counts.iter_mut().zip(low).zip(high) {
                    *c = l + h;
                }
            }
        }
    }
}

/// T(x, y) for every (x, y) ∈ F_q², interned.
struct Memo {
    /// Index x·q + y into `values`.
    ids: Vec<u32>,
    values: Vec<CyclotomicInteger>,
}

impl Memo {
    fn build(ctx: &FieldCtx, threads: Option<usize>) -> Memo {
        let q = ctx.q() as usize;
        let all: Vec<CyclotomicInteger> = in_pool(threads, || {
            (0..q * q)
                .into_par_iter()
                .map(|xy| kernel_counts(ctx, (xy / q) as u32, (xy % q) as u32))
                .collect()
        });
        let mut index: HashMap<CyclotomicInteger, u32> = HashMap::new();
        let mut values = Vec::new();
        let ids = all
            .into_iter()
            .map(|v| {
                *index.entry(v).or_insert_with_key(|v| {
                    values.push(v.clone());
                    values.len() as u32 - 1
                })
            })
            .collect();
        Memo { ids, values }
    }
}

struct Tally {
    mismatches: u64,
    correlations: u64,
    /// Memo value ids reached by some member pair and shift.
    hit: Vec<bool>,
}

impl Tally {
    fn new(slots: usize) -> Self {
        Tally {
            mismatches: 0,
            correlations: 0,
            hit: vec![false; slots],
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.mismatches += other.mismatches;
        self.correlations += other.correlations;
        for (h, o) in self.hit.iter_mut().zip(other.hit) {
            *h |= o;
        }
        self
    }
}

fn build_report(
    spec: &FamilySpec,
    interpretation: String,
    d: Option<u64>,
    values: &SpectrumValues,
    naive: Option<NaiveCheckSummary>,
) -> SpectrumReport {
    let ctx = spec.ctx();
    let half = ctx.half_order();
    let c_max = values.c_max();
    let ratio = c_max / (half as f64).sqrt();
    let bound = bound_value(half);
    let linear_case_max = values.linear_case_max();
    let linear_bound = linear_case_bound(ctx.q());
    SpectrumReport {
        p: ctx.p(),
        n: ctx.n(),
        interpretation,
        d,
        half_period: half,
        c_max,
        c_max_over_sqrt_n: ratio,
        c_max_over_sqrt_n_4dp: round_half_up_4dp(ratio),
        distinct_count: values.values.len(),
        bound,
        pass: c_max <= bound + BOUND_TOLERANCE,
        linear_case_max,
        linear_case_bound: linear_bound,
        linear_case_pass: linear_case_max <= linear_bound + BOUND_TOLERANCE,
        representatives: values.representatives,
        naive_check: naive,
        field: ctx.descriptor(),
        beta: ctx.coeffs(spec.beta()).expect("beta belongs to ctx"),
    }
}

/// Exact spectrum of one family, optionally cross-checked by a naive sweep.
pub fn family_spectrum(spec: &FamilySpec, opts: &SpectrumOptions) -> Result<SpectrumReport> {
    let values = spectrum_values(spec, opts.threads)?;
    let naive = naive_check(spec, opts.naive_check, &values, opts.threads)?;
    Ok(build_report(
        spec,
        format!("d={}", spec.decimation()),
        Some(spec.d()),
        &values,
        naive,
    ))
}

/// Union of the spectra of the d = 4 and d = N + 1 families over one field.
pub fn merged_spectrum(
    four: &FamilySpec,
    half_plus_one: &FamilySpec,
    opts: &SpectrumOptions,
) -> Result<SpectrumReport> {
    let a = spectrum_values(four, opts.threads)?;
    let b = spectrum_values(half_plus_one, opts.threads)?;
    Ok(build_report(
        four,
        "merged".into(),
        None,
        &a.union(&b),
        None,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_is_half_up() {
        assert_eq!(round_half_up_4dp(2.16505), "2.1651");
        assert_eq!(round_half_up_4dp(2.166173513896727), "2.1662");
        assert_eq!(round_half_up_4dp(2.00015), "2.0002");
        assert_eq!(round_half_up_4dp(2.0001499), "2.0001");
        assert_eq!(round_half_up_4dp(1.0), "1.0000");
    }
}
