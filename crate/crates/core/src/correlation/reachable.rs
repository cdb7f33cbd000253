//! The set of (a, b) pairs that actual member pairs and shifts produce, reduced
//! to one representative per scaling class.
//!
//! a ranges over A = {β(α^{i1} - α^{2τ+i2})}; b ranges over all of F_q because
//! the phases α^{d·l+j} cover F_q^* (checked, not assumed). Only (0, 0) is
//! excluded.
//!
//! Scaling by c = α^{2k} ∈ QR permutes QR and leaves the kernel unchanged:
//! T(a, b) = T(ac, bc²) for d = 4, and T(b, a) = T(bc, ac²) for d = N + 1.
//! Each class therefore has a representative (1, b), (α, b), (0, 1) or (0, α).

use super::{CorrelationError, ParamPair, Result};
use crate::field::FieldCtx;
use crate::sequences::{Decimation, FamilySpec};

/// One scaling class of reachable pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParamClass {
    pub rep: ParamPair,
    /// Number of reachable pairs in the class.
    pub members: u64,
    /// A reachable member (smallest a-code in the class).
    pub witness: ParamPair,
}

#[derive(Debug, Clone)]
pub struct ReachableParams {
    pub decimation: Decimation,
    pub classes: Vec<ParamClass>,
    /// Codes of the distinct a values, ascending.
    pub a_values: Vec<u32>,
    /// Number of reachable (a, b) pairs before reduction.
    pub total_pairs: u64,
}

#[derive(Debug, Clone, Copy)]
struct Scaling {
    a: u64,
    b: u64,
}

// Exponent multipliers of c on (a, b).
fn scaling(decimation: Decimation) -> Scaling {
    match decimation {
        Decimation::Four => Scaling { a: 1, b: 2 },
        Decimation::HalfPlusOne => Scaling { a: 2, b: 1 },
    }
}

/// k in [0, N) with e·k ≡ s (mod N), for e ∈ {1, 2} and odd N.
fn solve(e: u64, s: u64, half: u64) -> u64 {
    let inv = if e == 1 { 1 } else { half.div_ceil(2) };
    (s % half) * inv % half
}

fn scale_pair(ctx: &FieldCtx, pair: (u32, u32), sc: Scaling, k: u64) -> (u32, u32) {
    let order = ctx.group_order() as u64;
    let mul = |x: u32, e: u64| match ctx.log_code(x) {
        None => 0,
        Some(l) => ctx.antilog_code((l as u64 + e * 2 * k) % order),
    };
    (mul(pair.0, sc.a), mul(pair.1, sc.b))
}

/// The class representative of `pair` under the scaling that fixes the
/// kernel of the given family.
pub fn canonical_pair(pair: ParamPair, decimation: Decimation, ctx: &FieldCtx) -> ParamPair {
    let (a, b) = canonical_codes(ctx, decimation, pair.a.code(), pair.b.code());
    ParamPair::new(ctx.wrap(a), ctx.wrap(b))
}

pub(crate) fn canonical_codes(
    ctx: &FieldCtx,
    decimation: Decimation,
    a: u32,
    b: u32,
) -> (u32, u32) {
    let sc = scaling(decimation);
    let half = ctx.half_order() as u64;
    // choose c = α^{2k} with e·2k ≡ -(l - l mod 2) (mod 2N)
    let normalize = |l: u32, e: u64| {
        let even = (l - l % 2) as u64 / 2;
        solve(e, (half - even % half) % half, half)
    };
    match (ctx.log_code(a), ctx.log_code(b)) {
        (Some(la), _) => scale_pair(ctx, (a, b), sc, normalize(la, sc.a)),
        (None, Some(lb)) => scale_pair(ctx, (a, b), sc, normalize(lb, sc.b)),
        (None, None) => (0, 0),
    }
}

/// Enumerates the reachable pairs of a family up to kernel-preserving scaling.
pub fn reachable_params(spec: &FamilySpec) -> Result<ReachableParams> {
    let ctx = spec.ctx();
    let order = ctx.group_order() as u64;
    let half = ctx.half_order();
    let d = spec.d();

    let mut covered = vec![false; order as usize];
    for l in 0..half as u64 {
        for j in 0..2 {
            covered[((d * l + j) % order) as usize] = true;
        }
    }
    if covered.iter().any(|&c| !c) {
        return Err(CorrelationError::PhaseCoverage);
    }

    let beta = spec.beta().code();
    let mut in_a = vec![false; ctx.q() as usize];
    for i1 in 0..2u64 {
        for i2 in 0..2u64 {
            for tau in 0..half as u64 {
                let x = ctx.antilog_code(i1);
                let y = ctx.antilog_code((2 * tau + i2) % order);
                let a = ctx.mul_codes(beta, ctx.add_codes(x, ctx.neg_code(y)));
                in_a[a as usize] = true;
            }
        }
    }
    let a_values: Vec<u32> = (0..ctx.q()).filter(|&c| in_a[c as usize]).collect();

    let sc = scaling(spec.decimation());
    let mut classes = Vec::new();
    let mut total = 0u64;
    // nonzero a: squares then nonsquares
    for parity in 0..2u32 {
        let members: Vec<u32> = a_values
            .iter()
            .copied()
            .filter(|&a| ctx.log_code(a).is_some_and(|l| l % 2 == parity))
            .collect();
        let Some(&w) = members.first() else { continue };
        let rep_a = ctx.antilog_code(parity as u64);
        // witness scaling: e_a·2k ≡ log w - parity (mod 2N)
        let lw = ctx.log_code(w).expect("nonzero") as u64;
        let k = solve(sc.a, (lw - parity as u64) / 2, half as u64);
        for b in 0..ctx.q() {
            let (wa, wb) = scale_pair(ctx, (rep_a, b), sc, k);
            debug_assert_eq!(wa, w);
            classes.push(ParamClass {
                rep: ParamPair::new(ctx.wrap(rep_a), ctx.wrap(b)),
                members: members.len() as u64,
                witness: ParamPair::new(ctx.wrap(wa), ctx.wrap(wb)),
            });
            total += members.len() as u64;
        }
    }
    if in_a[0] {
        for parity in 0..2u64 {
            let rep = ParamPair::new(ctx.zero(), ctx.wrap(ctx.antilog_code(parity)));
            classes.push(ParamClass {
                rep,
                members: half as u64,
                witness: rep,
            });
            total += half as u64;
        }
    }
    Ok(ReachableParams {
        decimation: spec.decimation(),
        classes,
        a_values,
        total_pairs: total,
    })
}
