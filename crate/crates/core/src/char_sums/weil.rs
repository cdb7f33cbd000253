//! Empirical checks of the hybrid and additive Weil bounds.
//!
//! These routines only ever *measure* a complete character sum by direct
//! evaluation and compare it with the bound; nothing here assumes the bound.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::characters::{AdditiveCharacter, CharSum, MultiplicativeCharacter, SumAccumulator};
use super::{CharSumError, FieldPoly};
use crate::field::FieldCtx;

pub const WEIL_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeilCheck {
    pub magnitude: f64,
    pub bound: f64,
    pub pass: bool,
}

impl WeilCheck {
    fn new(magnitude: f64, bound: f64) -> Self {
        WeilCheck {
            magnitude,
            bound,
            pass: magnitude <= bound + WEIL_TOLERANCE,
        }
    }
}

/// Σ_{x∈F_q} χ(g(x))·ψ(f(x)) by direct evaluation, with χ(0) = 0.
pub fn hybrid_sum(
    g: &FieldPoly,
    f: &FieldPoly,
    chi: MultiplicativeCharacter,
    psi: AdditiveCharacter,
    ctx: &FieldCtx,
) -> Result<CharSum, CharSumError> {
    ctx.check(psi.beta)?;
    let exact = chi.is_trivial(ctx) || chi.is_quadratic(ctx);
    let mut acc = SumAccumulator::new(ctx, exact);
    for x in 0..ctx.q() {
        let gx = g.eval_code(ctx, x);
        if gx == 0 {
            continue;
        }
        let fx = f.eval_code(ctx, x);
        let a = ctx.trace_code(ctx.mul_codes(psi.beta.code(), fx));
        if exact {
            let sign = if chi.is_trivial(ctx) {
                1
            } else {
                ctx.eta_code(gx)
            };
            acc.push_signed(a, sign);
        } else {
            let k = ctx.log_code(gx).expect("nonzero") as u64;
            let m = ctx.group_order() as u64;
            acc.push_phase(a, (k * chi.index as u64 % m) as u32);
        }
    }
    Ok(acc.finish())
}

/// Σ_{x∈F_q} ψ_1(f(x)).
pub fn additive_sum(f: &FieldPoly, ctx: &FieldCtx) -> CharSum {
    let counts = (0..ctx.q()).map(|x| ctx.trace_code(f.eval_code(ctx, x)));
    CharSum::from_exact(super::CyclotomicInteger::from_exponents(ctx.p(), counts))
}

/// Checks |Σ χ(g(x))ψ_1(f(x))| ≤ (deg f + s - 1)·√q.
///
/// The hypothesis "g is not c·h^M" is certified only for nonconstant
/// squarefree g (then s = deg g); anything else is rejected.
pub fn check_hybrid_weil(
    g: &FieldPoly,
    f: &FieldPoly,
    chi: MultiplicativeCharacter,
    ctx: &FieldCtx,
) -> Result<WeilCheck, CharSumError> {
    if chi.is_trivial(ctx) {
        return Err(CharSumError::TrivialCharacter);
    }
    let s = match g.degree() {
        Some(d) if d >= 1 && g.is_squarefree(ctx) => d,
        _ => return Err(CharSumError::DegenerateG),
    };
    let e = f.degree().unwrap_or(0);
    let sum = hybrid_sum(g, f, chi, AdditiveCharacter::canonical(ctx), ctx)?;
    let bound = (e + s) as f64 - 1.0;
    Ok(WeilCheck::new(
        sum.magnitude(),
        bound * (ctx.q() as f64).sqrt(),
    ))
}

fn additive_degree(f: &FieldPoly, ctx: &FieldCtx) -> Result<usize, CharSumError> {
    match f.degree() {
        None | Some(0) => Err(CharSumError::ConstantPolynomial),
        Some(d) if d % ctx.p() as usize == 0 => Err(CharSumError::DegreeDivisibleByP {
            degree: d,
            p: ctx.p(),
        }),
        Some(d) => Ok(d),
    }
}

/// Checks |Σ_{x∈F_q} ψ_1(f(x))| ≤ (deg f - 1)·√q for deg f ≥ 1, p ∤ deg f.
pub fn check_additive_weil(f: &FieldPoly, ctx: &FieldCtx) -> Result<WeilCheck, CharSumError> {
    let d = additive_degree(f, ctx)?;
    let bound = (d as f64 - 1.0) * (ctx.q() as f64).sqrt();
    Ok(WeilCheck::new(additive_sum(f, ctx).magnitude(), bound))
}

/// The same sum restricted to F_q^*: dropping the x = 0 term costs at most 1.
pub fn check_additive_weil_nonzero(
    f: &FieldPoly,
    ctx: &FieldCtx,
) -> Result<WeilCheck, CharSumError> {
    let d = additive_degree(f, ctx)?;
    let full = additive_sum(f, ctx).exact.expect("additive sums are exact");
    let at_zero =
        super::CyclotomicInteger::root_power(ctx.p(), ctx.trace_code(f.eval_code(ctx, 0)) as u64);
    let punctured = full.sub(&at_zero)?;
    let bound = (d as f64 - 1.0) * (ctx.q() as f64).sqrt() + 1.0;
    Ok(WeilCheck::new(punctured.magnitude(), bound))
}

/// One line of a Weil sweep report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeilSweepRecord {
    pub p: u32,
    pub n: u32,
    pub kind: SumKind,
    pub f_coeffs: Vec<Vec<u32>>,
    pub g_coeffs: Vec<Vec<u32>>,
    pub chi_index: Option<u32>,
    pub magnitude: f64,
    pub bound: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SumKind {
    Hybrid,
    Additive,
}

fn poly_coeffs(ctx: &FieldCtx, f: &FieldPoly) -> Vec<Vec<u32>> {
    f.coeffs()
        .iter()
        .map(|&c| ctx.coeffs(c).expect("coefficient belongs to ctx"))
        .collect()
}

/// Seeded random sweep: each trial draws f of degree ≤ `max_degree` and runs
/// the hybrid check with g(x) = x, χ = η, plus the additive check whenever f
/// is admissible for it. Returns the records in trial order.
pub fn random_weil_sweep(
    ctx: &FieldCtx,
    trials: usize,
    max_degree: usize,
    seed: u64,
) -> Vec<(usize, WeilSweepRecord)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = FieldPoly::x(ctx);
    let eta = MultiplicativeCharacter::quadratic(ctx);
    let mut out = Vec::new();
    for trial in 0..trials {
        let deg = rng.gen_range(0..=max_degree);
        let mut coeffs: Vec<_> = (0..=deg)
            .map(|_| ctx.wrap(rng.gen_range(0..ctx.q())))
            .collect();
        coeffs[deg] = ctx.wrap(rng.gen_range(1..ctx.q()));
        let f = FieldPoly::new(ctx, coeffs).expect("coefficients drawn from ctx");

        let hybrid = check_hybrid_weil(&g, &f, eta, ctx).expect("g(x) = x is certified");
        out.push((
            trial,
            WeilSweepRecord {
                p: ctx.p(),
                n: ctx.n(),
                kind: SumKind::Hybrid,
                f_coeffs: poly_coeffs(ctx, &f),
                g_coeffs: poly_coeffs(ctx, &g),
                chi_index: Some(eta.index),
                magnitude: hybrid.magnitude,
                bound: hybrid.bound,
                pass: hybrid.pass,
            },
        ));
        if let Ok(additive) = check_additive_weil(&f, ctx) {
            out.push((
                trial,
                WeilSweepRecord {
                    p: ctx.p(),
                    n: ctx.n(),
                    kind: SumKind::Additive,
                    f_coeffs: poly_coeffs(ctx, &f),
                    g_coeffs: Vec::new(),
                    chi_index: None,
                    magnitude: additive.magnitude,
                    bound: additive.bound,
                    pass: additive.pass,
                },
            ));
        }
    }
    out
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ExhaustiveSummary {
    pub hybrid_checked: u64,
    pub hybrid_violations: u64,
    pub additive_checked: u64,
    pub additive_violations: u64,
    /// Largest magnitude/√q seen, per degree of f (index = degree).
    pub worst_hybrid_ratio: [f64; 8],
    pub worst_additive_ratio: [f64; 8],
}

/// Every f ∈ F_q[x] of degree ≤ `max_degree` (including constants and 0):
/// hybrid check with g(x) = x, χ = η, and the additive check for admissible f.
///
/// Uses Tr(f(x)) = Σ_i Tr(c_i·x^i) so that a polynomial costs q additions;
/// [`check_hybrid_weil`] on sampled polynomials is the reference.
pub fn exhaustive_weil_sweep(ctx: &FieldCtx, max_degree: usize) -> ExhaustiveSummary {
    assert!(max_degree < 8, "max_degree must be below 8");
    let q = ctx.q() as usize;
    let p = ctx.p();
    // term[i][c][x] = Tr(c · x^i)
    let term: Vec<Vec<Vec<u32>>> = (0..=max_degree)
        .map(|i| {
            (0..q as u32)
                .map(|c| {
                    (0..q as u32)
                        .map(|x| ctx.trace_code(ctx.mul_codes(c, ctx.pow_code(x, i as u64))))
                        .collect()
                })
                .collect()
        })
        .collect();
    let eta: Vec<i8> = (0..q as u32).map(|x| ctx.eta_code(x)).collect();
    let roots: Vec<(f64, f64)> = (0..p)
        .map(|k| {
            let t = TAU * k as f64 / p as f64;
            (t.cos(), t.sin())
        })
        .collect();
    let magnitude = |counts: &[i64]| {
        let (re, im) = counts
            .iter()
            .zip(&roots)
            .fold((0.0, 0.0), |(re, im), (&c, &(cs, sn))| {
                (re + c as f64 * cs, im + c as f64 * sn)
            });
        (re * re + im * im).sqrt()
    };
    let sqrt_q = (q as f64).sqrt();

    let mut summary = ExhaustiveSummary::default();
    let mut partial = vec![vec![0u32; q]; max_degree + 2];
    let mut coeffs = vec![0u32; max_degree + 1];
    let mut hybrid_counts = vec![0i64; p as usize];
    let mut additive_counts = vec![0i64; p as usize];

    // Odometer over (c_max_degree, .., c_0); partial[i] holds the exponent
    // vector of the terms of degree ≥ i.
    fn refill(
        partial: &mut [Vec<u32>],
        term: &[Vec<Vec<u32>>],
        coeffs: &[u32],
        from: usize,
        p: u32,
    ) {
        for i in (0..=from).rev() {
            let (lo, hi) = partial.split_at_mut(i + 1);
            let above = &hi[0];
            let t = &term[i][coeffs[i] as usize];
            for ((dst, &a), &b) in lo[i].iter_mut().zip(above).zip(t) {
                *dst = (a + b) % p;
            }
        }
    }
    refill(&mut partial, &term, &coeffs, max_degree, p);
    loop {
        hybrid_counts.iter_mut().for_each(|c| *c = 0);
        additive_counts.iter_mut().for_each(|c| *c = 0);
        for (x, &e) in partial[0].iter().enumerate() {
            hybrid_counts[e as usize] += eta[x] as i64;
            additive_counts[e as usize] += 1;
        }
        let deg = coeffs.iter().rposition(|&c| c != 0);
        let e = deg.unwrap_or(0);

        let hm = magnitude(&hybrid_counts);
        summary.hybrid_checked += 1;
        if hm > e as f64 * sqrt_q + WEIL_TOLERANCE {
            summary.hybrid_violations += 1;
        }
        let r = &mut summary.worst_hybrid_ratio[e];
        *r = r.max(hm / sqrt_q);

        if let Some(d) = deg.filter(|&d| d >= 1 && d % p as usize != 0) {
            let am = magnitude(&additive_counts);
            summary.additive_checked += 1;
            if am > (d as f64 - 1.0) * sqrt_q + WEIL_TOLERANCE {
                summary.additive_violations += 1;
            }
            let r = &mut summary.worst_additive_ratio[d];
            *r = r.max(am / sqrt_q);
        }

        // advance the odometer (c_0 fastest)
        let mut i = 0;
        loop {
            if i > max_degree {
                return summary;
            }
            coeffs[i] += 1;
            if coeffs[i] < q as u32 {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
        refill(&mut partial, &term, &coeffs, i, p);
    }
}
