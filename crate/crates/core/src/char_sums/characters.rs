use std::f64::consts::TAU;

use num_complex::Complex64;

use super::CyclotomicInteger;
use crate::field::{FieldCtx, FieldElement, Result};

/// ψ_β(x) = ω^{Tr(βx)}; β = 0 is the trivial character ψ_0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdditiveCharacter {
    pub beta: FieldElement,
}

impl AdditiveCharacter {
    pub fn new(beta: FieldElement) -> Self {
        AdditiveCharacter { beta }
    }

    pub fn trivial(ctx: &FieldCtx) -> Self {
        AdditiveCharacter { beta: ctx.zero() }
    }

    /// The canonical nontrivial character ψ_1.
    pub fn canonical(ctx: &FieldCtx) -> Self {
        AdditiveCharacter { beta: ctx.one() }
    }

    pub fn is_trivial(&self) -> bool {
        self.beta.is_zero()
    }

    /// The exponent Tr(βx) in Z_p, so that ψ(x) = ω^{exponent}.
    pub fn exponent(&self, ctx: &FieldCtx, x: FieldElement) -> Result<u32> {
        ctx.trace(ctx.mul(self.beta, x)?)
    }
}

/// χ_j(α^k) = e^{2πi·jk/(q-1)}, χ_j(0) = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultiplicativeCharacter {
    pub index: u32,
}

impl MultiplicativeCharacter {
    pub fn new(index: u32) -> Self {
        MultiplicativeCharacter { index }
    }

    pub fn trivial() -> Self {
        MultiplicativeCharacter { index: 0 }
    }

    /// The quadratic character η, index (q-1)/2.
    pub fn quadratic(ctx: &FieldCtx) -> Self {
        MultiplicativeCharacter {
            index: ctx.half_order(),
        }
    }

    pub fn is_trivial(&self, ctx: &FieldCtx) -> bool {
        self.index.is_multiple_of(ctx.group_order())
    }

    pub fn is_quadratic(&self, ctx: &FieldCtx) -> bool {
        self.index % ctx.group_order() == ctx.half_order()
    }

    /// Order M of the character in the character group.
    pub fn order(&self, ctx: &FieldCtx) -> u32 {
        let m = ctx.group_order() as u64;
        (m / crate::field::gcd(self.index as u64 % m, m)) as u32
    }

    /// Exponent of χ(x) as a power of e^{2πi/(q-1)}; None at x = 0.
    pub fn exponent(&self, ctx: &FieldCtx, x: FieldElement) -> Result<Option<u32>> {
        if x.is_zero() {
            ctx.check(x)?;
            return Ok(None);
        }
        let k = ctx.dlog(x)? as u64;
        let m = ctx.group_order() as u64;
        Ok(Some((k * (self.index as u64 % m) % m) as u32))
    }

    /// χ(x) as an exact ±1/0 value when χ has order dividing 2.
    pub fn sign(&self, ctx: &FieldCtx, x: FieldElement) -> Result<Option<i8>> {
        if self.is_trivial(ctx) {
            ctx.check(x)?;
            Ok(Some(if x.is_zero() { 0 } else { 1 }))
        } else if self.is_quadratic(ctx) {
            Ok(Some(ctx.eta(x)?))
        } else {
            Ok(None)
        }
    }
}

/// Value of a complete character sum. `exact` is present whenever every
/// multiplicative factor was ±1/0, i.e. the sum lies in Z[ω_p].
#[derive(Debug, Clone, PartialEq)]
pub struct CharSum {
    pub exact: Option<CyclotomicInteger>,
    pub value: Complex64,
}

impl CharSum {
    pub fn magnitude(&self) -> f64 {
        match &self.exact {
            Some(c) => c.magnitude(),
            None => self.value.norm(),
        }
    }

    pub(crate) fn from_exact(c: CyclotomicInteger) -> Self {
        let value = c.to_complex();
        CharSum {
            exact: Some(c),
            value,
        }
    }
}

/// Σ_x ψ(x)·χ(g(x))-style accumulator shared by the Gauss and hybrid sums.
/// Each term is ω_p^{a} · χ-factor, with the χ-factor either ±1/0 (exact
/// route) or a power of ω_{q-1} (float route).
pub(crate) struct SumAccumulator {
    p: u32,
    group_order: u32,
    counts: Vec<i64>,
    exact: bool,
    value: Complex64,
}

impl SumAccumulator {
    pub(crate) fn new(ctx: &FieldCtx, exact: bool) -> Self {
        SumAccumulator {
            p: ctx.p(),
            group_order: ctx.group_order(),
            counts: vec![0; ctx.p() as usize],
            exact,
            value: Complex64::new(0.0, 0.0),
        }
    }

    pub(crate) fn push_signed(&mut self, additive_exp: u32, sign: i8) {
        self.counts[additive_exp as usize] += sign as i64;
    }

    // The phase Tr/p + e/(q-1) is reduced as one rational before leaving the
    // integers, which keeps the per-term error at a few ulps.
    pub(crate) fn push_phase(&mut self, additive_exp: u32, mult_exp: u32) {
        let p = self.p as u64;
        let m = self.group_order as u64;
        let denom = p * m;
        let num = (additive_exp as u64 * m + mult_exp as u64 * p) % denom;
        self.value += Complex64::from_polar(1.0, TAU * num as f64 / denom as f64);
    }

    pub(crate) fn finish(self) -> CharSum {
        if self.exact {
            CharSum::from_exact(CyclotomicInteger::new(self.counts))
        } else {
            CharSum {
                exact: None,
                value: self.value,
            }
        }
    }
}

/// Gauss sum G(ψ, χ) = Σ_{x∈F_q} ψ(x)χ(x) with χ(0) = 0.
///
/// Exact for χ ∈ {χ_0, η}; otherwise evaluated in floating point, with an
/// error of order q·10^{-16}.
pub fn gauss_sum(
    psi: AdditiveCharacter,
    chi: MultiplicativeCharacter,
    ctx: &FieldCtx,
) -> Result<CharSum> {
    ctx.check(psi.beta)?;
    let exact = chi.is_trivial(ctx) || chi.is_quadratic(ctx);
    let mut acc = SumAccumulator::new(ctx, exact);
    for x in ctx.elements().skip(1) {
        let a = psi.exponent(ctx, x)?;
        if exact {
            acc.push_signed(a, chi.sign(ctx, x)?.expect("order divides 2"));
        } else {
            acc.push_phase(a, chi.exponent(ctx, x)?.expect("x is nonzero"));
        }
    }
    Ok(acc.finish())
}
