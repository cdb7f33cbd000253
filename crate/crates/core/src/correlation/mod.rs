//! Periodic correlation of family members and its reduction to the kernel
//! sum T(a, b) = Σ_{x∈QR} ω^{Tr(ax + bx²)}.
//!
//! For members (i1, j1, l1) and (i2, j2, l2) at shift τ the correlation is
//! Σ_t ω^{Tr(a·α^{2t} + b·α^{dt})} with
//!
//! ```text
//! a = β(α^{i1} - α^{2τ+i2}),    b = β(α^{d·l1+j1} - α^{dτ+d·l2+j2}).
//! ```
//!
//! Putting x = α^{2t} gives T(a, b) for d = 4; for d = N + 1 the map
//! t ↦ α^{(N+1)t} is a bijection onto QR whose square is α^{2t}, giving T(b, a).

mod reachable;
mod spectrum;

pub use reachable::{canonical_pair, reachable_params, ParamClass, ReachableParams};
pub use spectrum::{
    family_spectrum, merged_spectrum, naive_check, round_half_up_4dp, spectrum_values, NaiveCheck,
    NaiveCheckSummary, SpectrumOptions, SpectrumReport, SpectrumValues,
};

use serde::Serialize;
use thiserror::Error;

use crate::char_sums::CyclotomicInteger;
use crate::field::{FieldCtx, FieldElement, FieldError};
use crate::sequences::{Decimation, FamilyIndex, FamilySpec, PSequence, SequenceError};

/// Tolerance used when comparing a magnitude against a bound.
pub const BOUND_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorrelationError {
    #[error("sequences have different periods ({0} vs {1})")]
    PeriodMismatch(usize, usize),
    #[error("shift {tau} is outside [0, {period})")]
    ShiftOutOfRange { tau: usize, period: usize },
    #[error("the trivial in-phase autocorrelation is excluded")]
    TrivialCase,
    #[error("(a, b) = (0, 0) only arises from the trivial autocorrelation")]
    TrivialPair,
    #[error("field order {0} is above the spectrum limit")]
    ScaleTooLarge(u32),
    #[error("naive sweep disagrees with the kernel path in {0} case(s)")]
    OracleMismatch(u64),
    #[error("the d-decimation phases do not cover the multiplicative group")]
    PhaseCoverage,
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

pub type Result<T> = std::result::Result<T, CorrelationError>;

/// The coefficient pair (a, b) of the reduced correlation sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParamPair {
    pub a: FieldElement,
    pub b: FieldElement,
}

impl ParamPair {
    pub fn new(a: FieldElement, b: FieldElement) -> Self {
        ParamPair { a, b }
    }

    pub fn is_trivial(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParamPairCoeffs {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
}

impl ParamPair {
    pub fn coeffs(&self, ctx: &FieldCtx) -> Result<ParamPairCoeffs> {
        Ok(ParamPairCoeffs {
            a: ctx.coeffs(self.a)?,
            b: ctx.coeffs(self.b)?,
        })
    }
}

/// C(τ) = Σ_{t<N} ω^{s1(t) - s2(t+τ)} as an exact count vector.
pub fn naive_correlation(s1: &PSequence, s2: &PSequence, tau: usize) -> Result<CyclotomicInteger> {
    let n = s1.period();
    if s2.period() != n || s1.p() != s2.p() {
        return Err(CorrelationError::PeriodMismatch(n, s2.period()));
    }
    if tau >= n {
        return Err(CorrelationError::ShiftOutOfRange { tau, period: n });
    }
    let p = s1.p();
    let (a, b) = (s1.symbols(), s2.symbols());
    let mut counts = vec![0i64; p as usize];
    for t in 0..n {
        let u = (t + tau) % n;
        counts[((a[t] + p - b[u]) % p) as usize] += 1;
    }
    Ok(CyclotomicInteger::new(counts))
}

/// Maps (member1, member2, τ) to the kernel coefficients (a, b).
pub fn param_reduce(
    first: FamilyIndex,
    second: FamilyIndex,
    tau: u32,
    spec: &FamilySpec,
) -> Result<ParamPair> {
    let n = spec.half_period();
    for idx in [first, second] {
        if !idx.is_valid(n) {
            return Err(SequenceError::IndexOutOfRange(idx).into());
        }
    }
    if tau >= n {
        return Err(CorrelationError::ShiftOutOfRange {
            tau: tau as usize,
            period: n as usize,
        });
    }
    if tau == 0 && first == second {
        return Err(CorrelationError::TrivialCase);
    }
    let ctx = spec.ctx();
    let (a, b) = reduce_codes(ctx, spec.d(), spec.beta().code(), first, second, tau);
    Ok(ParamPair::new(ctx.wrap(a), ctx.wrap(b)))
}

pub(crate) fn reduce_codes(
    ctx: &FieldCtx,
    d: u64,
    beta: u32,
    first: FamilyIndex,
    second: FamilyIndex,
    tau: u32,
) -> (u32, u32) {
    let order = ctx.group_order();
    let diff = |e1: u32, e2: u32| ctx.mul_codes(beta, ctx.sub_powers_code(e1, e2));
    let mut shifted_i = 2 * tau + second.i as u32;
    while shifted_i >= order {
        shifted_i -= order;
    }
    let a = diff(first.i as u32, shifted_i);
    let phase = |l: u64, j: u8| ((d * l + j as u64) % order as u64) as u32;
    let b = diff(
        phase(first.l as u64, first.j),
        phase(tau as u64 + second.l as u64, second.j),
    );
    (a, b)
}

/// T(a, b) = Σ_{x∈QR} ω^{Tr(ax + bx²)}, N terms.
pub fn kernel_eval(pair: ParamPair, ctx: &FieldCtx) -> Result<CyclotomicInteger> {
    ctx.check(pair.a)?;
    ctx.check(pair.b)?;
    if pair.is_trivial() {
        return Err(CorrelationError::TrivialPair);
    }
    Ok(kernel_counts(ctx, pair.a.code(), pair.b.code()))
}

/// With x = α^{2k}: Tr(ax) = Tr(α^{log a + 2k}) and Tr(bx²) = Tr(α^{log b + 4k}).
pub(crate) fn kernel_counts(ctx: &FieldCtx, a: u32, b: u32) -> CyclotomicInteger {
    let table = ctx.trace_by_log();
    let order = table.len();
    let half = order / 2;
    let p = ctx.p() as usize;
    let mut counts = vec![0i64; p];
    match (ctx.log_code(a), ctx.log_code(b)) {
        (Some(la), Some(lb)) => {
            let (mut i, mut j) = (la as usize, lb as usize);
            for _ in 0..half {
                counts[(table[i] + table[j]) as usize % p] += 1;
                i += 2;
                if i >= order {
                    i -= order;
                }
                j += 4;
                if j >= order {
                    j -= order;
                }
            }
        }
        (Some(l), None) | (None, Some(l)) => {
            let step = if ctx.log_code(a).is_some() { 2 } else { 4 };
            let mut i = l as usize;
            for _ in 0..half {
                counts[table[i] as usize] += 1;
                i = (i + step) % order;
            }
        }
        (None, None) => counts[0] = half as i64,
    }
    CyclotomicInteger::new(counts)
}

/// The correlation value for a family with the given second decimation:
/// T(a, b) for d = 4, T(b, a) for d = N + 1.
pub fn kernel_for_family(
    pair: ParamPair,
    decimation: Decimation,
    ctx: &FieldCtx,
) -> Result<CyclotomicInteger> {
    match decimation {
        Decimation::Four => kernel_eval(pair, ctx),
        Decimation::HalfPlusOne => kernel_eval(ParamPair::new(pair.b, pair.a), ctx),
    }
}

/// (3/√2)·√(N + 1/2) + 1/2.
pub fn bound_value(half_period: u32) -> f64 {
    3.0 / 2f64.sqrt() * (half_period as f64 + 0.5).sqrt() + 0.5
}

/// (√q + 1)/2, the bound for the sub-case without a quadratic term.
pub fn linear_case_bound(q: u32) -> f64 {
    ((q as f64).sqrt() + 1.0) / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::build_field;
    use crate::sequences::family_member;
    use std::sync::Arc;

    fn spec(p: u64, n: u32, d: Decimation) -> FamilySpec {
        FamilySpec::standard(Arc::new(build_field(p, n, None).unwrap()), d).unwrap()
    }

    #[test]
    fn bound_values() {
        assert_eq!(format!("{:.4}", bound_value(13)), "8.2942");
        assert_eq!(format!("{:.4}", bound_value(121)), "23.8827");
        assert!(2.1650 * 13f64.sqrt() <= bound_value(13));
    }

    #[test]
    fn in_phase_autocorrelation_is_n() {
        let s = spec(3, 3, Decimation::Four);
        let m = family_member(&s, FamilyIndex::new(1, 0, 4)).unwrap();
        let c = naive_correlation(&m, &m, 0).unwrap();
        assert_eq!(c.counts(), &[13, 0, 0]);
        let zero = PSequence::new(3, vec![0; 13]).unwrap();
        for tau in 0..13 {
            assert_eq!(
                naive_correlation(&zero, &zero, tau).unwrap().as_integer(),
                Some(13)
            );
        }
        let short = PSequence::new(3, vec![0; 12]).unwrap();
        assert!(matches!(
            naive_correlation(&zero, &short, 0),
            Err(CorrelationError::PeriodMismatch(13, 12))
        ));
    }

    #[test]
    fn reduction_zero_patterns() {
        let s = spec(3, 3, Decimation::Four);
        let ctx = s.ctx();
        let p = param_reduce(FamilyIndex::new(0, 0, 1), FamilyIndex::new(0, 0, 2), 0, &s).unwrap();
        assert!(p.a.is_zero());
        assert!(!p.b.is_zero());
        let p = param_reduce(FamilyIndex::new(0, 1, 1), FamilyIndex::new(0, 0, 2), 3, &s).unwrap();
        let expect = ctx.sub(ctx.one(), ctx.alpha_pow(6)).unwrap();
        assert_eq!(p.a, expect);
        assert!(!p.a.is_zero());
        assert_eq!(
            param_reduce(FamilyIndex::new(1, 1, 5), FamilyIndex::new(1, 1, 5), 0, &s).unwrap_err(),
            CorrelationError::TrivialCase
        );
    }

    #[test]
    fn kernel_rejects_zero_pair() {
        let ctx = build_field(3, 3, None).unwrap();
        assert_eq!(
            kernel_eval(ParamPair::new(ctx.zero(), ctx.zero()), &ctx).unwrap_err(),
            CorrelationError::TrivialPair
        );
    }

    #[test]
    fn kernel_matches_direct_field_evaluation() {
        let ctx = build_field(3, 3, None).unwrap();
        for a in ctx.elements() {
            for b in ctx.elements() {
                if a.is_zero() && b.is_zero() {
                    continue;
                }
                let direct = CyclotomicInteger::from_exponents(
                    3,
                    ctx.quadratic_residues().map(|x| {
                        let v = ctx
                            .add(
                                ctx.mul(a, x).unwrap(),
                                ctx.mul(b, ctx.mul(x, x).unwrap()).unwrap(),
                            )
                            .unwrap();
                        ctx.trace(v).unwrap()
                    }),
                );
                assert_eq!(kernel_eval(ParamPair::new(a, b), &ctx).unwrap(), direct);
            }
        }
    }

    #[test]
    fn small_naive_equals_kernel() {
        for d in Decimation::ALL {
            let s = spec(3, 3, d);
            let m1 = FamilyIndex::new(0, 1, 3);
            let m2 = FamilyIndex::new(1, 0, 7);
            let s1 = family_member(&s, m1).unwrap();
            let s2 = family_member(&s, m2).unwrap();
            for tau in 0..13 {
                let pair = param_reduce(m1, m2, tau, &s).unwrap();
                assert_eq!(
                    naive_correlation(&s1, &s2, tau as usize).unwrap(),
                    kernel_for_family(pair, d, s.ctx()).unwrap()
                );
            }
        }
    }
}
