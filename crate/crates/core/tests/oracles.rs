//! Independent recomputations of the library's derived values.

use std::collections::BTreeSet;
use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;

use lowcorr::char_sums::{
    gauss_sum, hybrid_sum, AdditiveCharacter, CyclotomicInteger, FieldPoly, MultiplicativeCharacter,
};
use lowcorr::correlation::{
    kernel_eval, kernel_for_family, naive_correlation, param_reduce, reachable_params,
    spectrum_values, ParamPair,
};
use lowcorr::field::{build_field, FieldCtx, FieldElement};
use lowcorr::sequences::{
    cyclic_inequivalence_check, family_enumerate, family_member, Decimation, FamilyIndex,
    FamilySpec, PSequence,
};

fn spec(ctx: &Arc<FieldCtx>, d: Decimation) -> FamilySpec {
    FamilySpec::standard(ctx.clone(), d).unwrap()
}

/// Σ_{x∈QR} ω^{Tr(ax + bx²)} straight from field arithmetic.
fn kernel_by_definition(ctx: &FieldCtx, a: FieldElement, b: FieldElement) -> CyclotomicInteger {
    let exps = ctx.quadratic_residues().map(|x| {
        let ax = ctx.mul(a, x).unwrap();
        let bxx = ctx.mul(b, ctx.mul(x, x).unwrap()).unwrap();
        ctx.trace(ctx.add(ax, bxx).unwrap()).unwrap()
    });
    CyclotomicInteger::from_exponents(ctx.p(), exps)
}

#[test]
fn kernel_equals_half_of_plain_plus_quadratic_sums() {
    let ctx = build_field(3, 3, None).unwrap();
    let g = FieldPoly::x(&ctx);
    let psi = AdditiveCharacter::canonical(&ctx);
    for a in ctx.elements() {
        for b in ctx.elements() {
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let f = FieldPoly::linear_plus_quadratic(&ctx, a, b).unwrap();
            let plain = hybrid_sum(&g, &f, MultiplicativeCharacter::trivial(), psi, &ctx).unwrap();
            let twisted =
                hybrid_sum(&g, &f, MultiplicativeCharacter::quadratic(&ctx), psi, &ctx).unwrap();
            let both = plain.exact.unwrap().add(&twisted.exact.unwrap()).unwrap();
            let half = both
                .halve()
                .expect("sum over QR is half of an even element");
            assert_eq!(kernel_eval(ParamPair::new(a, b), &ctx).unwrap(), half);
        }
    }
}

#[test]
fn kernel_matches_definition_over_gf343() {
    let ctx = build_field(7, 3, None).unwrap();
    for a in ctx.elements().step_by(11) {
        for b in ctx.elements().step_by(7) {
            if a.is_zero() && b.is_zero() {
                continue;
            }
            assert_eq!(
                kernel_eval(ParamPair::new(a, b), &ctx).unwrap(),
                kernel_by_definition(&ctx, a, b)
            );
        }
    }
}

fn complex_gauss(ctx: &FieldCtx, beta: FieldElement, j: u32) -> Complex64 {
    let m = ctx.group_order() as f64;
    ctx.elements()
        .filter(|x| !x.is_zero())
        .map(|x| {
            let tr = ctx.trace(ctx.mul(beta, x).unwrap()).unwrap() as f64;
            let k = ctx.dlog(x).unwrap() as f64;
            Complex64::from_polar(1.0, TAU * (tr / ctx.p() as f64 + j as f64 * k / m))
        })
        .sum()
}

#[test]
fn gauss_sums_exhaustive_gf27() {
    let ctx = build_field(3, 3, None).unwrap();
    let q = ctx.q() as f64;
    for beta in ctx.elements() {
        let psi = AdditiveCharacter::new(beta);
        for j in 0..ctx.group_order() {
            let chi = MultiplicativeCharacter::new(j);
            let g = gauss_sum(psi, chi, &ctx).unwrap();
            let reference = complex_gauss(&ctx, beta, j);
            assert!((g.value - reference).norm() < 1e-9, "beta={beta:?} j={j}");
            let expected = match (beta.is_zero(), j == 0) {
                (true, true) => q - 1.0,
                (true, false) => 0.0,
                (false, true) => 1.0,
                (false, false) => q.sqrt(),
            };
            assert!(
                (g.magnitude() - expected).abs() < 1e-9,
                "beta={beta:?} j={j}"
            );
            if !beta.is_zero() && j == 0 {
                assert_eq!(g.exact.as_ref().unwrap().as_integer(), Some(-1));
            }
        }
    }
}

#[test]
fn reduction_matches_naive_correlation_gf27() {
    let ctx = Arc::new(build_field(3, 3, None).unwrap());
    for d in Decimation::ALL {
        let s = spec(&ctx, d);
        let members: Vec<(FamilyIndex, PSequence)> = family_enumerate(&s).collect();
        for (i1, m1) in &members {
            for (i2, m2) in &members {
                for tau in 0..13u32 {
                    if tau == 0 && i1 == i2 {
                        continue;
                    }
                    let pair = param_reduce(*i1, *i2, tau, &s).unwrap();
                    assert_eq!(
                        naive_correlation(m1, m2, tau as usize).unwrap(),
                        kernel_for_family(pair, d, &ctx).unwrap(),
                        "{i1} vs {i2} at {tau}"
                    );
                }
            }
        }
    }
}

#[test]
fn reduction_matches_naive_correlation_other_beta() {
    let ctx = Arc::new(build_field(7, 1, None).unwrap());
    for d in Decimation::ALL {
        let s = FamilySpec::new(ctx.clone(), d, ctx.alpha()).unwrap();
        let members: Vec<(FamilyIndex, PSequence)> = family_enumerate(&s).collect();
        for (i1, m1) in &members {
            for (i2, m2) in &members {
                for tau in 0..3u32 {
                    if tau == 0 && i1 == i2 {
                        continue;
                    }
                    let pair = param_reduce(*i1, *i2, tau, &s).unwrap();
                    assert_eq!(
                        naive_correlation(m1, m2, tau as usize).unwrap(),
                        kernel_for_family(pair, d, &ctx).unwrap()
                    );
                }
            }
        }
    }
}

/// Every reachable (a, b) without reduction, straight from the index ranges.
fn unreduced_spectrum(s: &FamilySpec) -> BTreeSet<CyclotomicInteger> {
    let ctx = s.ctx();
    let n = s.half_period();
    let mut pairs = BTreeSet::new();
    for first in FamilyIndex::all(n) {
        for second in FamilyIndex::all(n) {
            for tau in 0..n {
                if tau == 0 && first == second {
                    continue;
                }
                let p = param_reduce(first, second, tau, s).unwrap();
                pairs.insert((p.a.code(), p.b.code()));
            }
        }
    }
    pairs
        .into_iter()
        .map(|(a, b)| {
            let pair = ParamPair::new(ctx.from_code(a).unwrap(), ctx.from_code(b).unwrap());
            kernel_for_family(pair, s.decimation(), ctx).unwrap()
        })
        .collect()
}

#[test]
fn reduced_spectrum_equals_unreduced() {
    for (p, n) in [(3, 3), (7, 1), (11, 1), (3, 5), (7, 3)] {
        let ctx = Arc::new(build_field(p, n, None).unwrap());
        for d in Decimation::ALL {
            let s = spec(&ctx, d);
            let reduced = spectrum_values(&s, None).unwrap();
            assert_eq!(reduced.values, unreduced_spectrum(&s), "p={p} n={n} d={d}");
            let reach = reachable_params(&s).unwrap();
            assert!(reach.classes.len() <= 3 * ctx.q() as usize);
        }
    }
}

fn rotations_collide(a: &PSequence, b: &PSequence) -> bool {
    let n = a.period();
    (0..n).any(|shift| (0..n).all(|t| a.at(t as i64) == b.at((t + shift) as i64)))
}

#[test]
fn cyclic_inequivalence_brute_force_gf27() {
    let ctx = Arc::new(build_field(3, 3, None).unwrap());
    for d in Decimation::ALL {
        let s = spec(&ctx, d);
        let members: Vec<PSequence> = family_enumerate(&s).map(|(_, m)| m).collect();
        assert_eq!(members.len(), 52);
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                assert!(!rotations_collide(&members[i], &members[j]), "{i} ~ {j}");
            }
        }
        assert!(cyclic_inequivalence_check(&s));
    }
}

#[test]
fn shifted_member_is_detected() {
    let ctx = Arc::new(build_field(3, 3, None).unwrap());
    let s = spec(&ctx, Decimation::Four);
    let m = family_member(&s, FamilyIndex::new(0, 1, 3)).unwrap();
    let shifted = PSequence::new(3, (0..13).map(|t| m.at(t + 5)).collect()).unwrap();
    assert!(rotations_collide(&m, &shifted));
    assert!(!lowcorr::sequences::sequences_cyclically_distinct(&[
        m, shifted
    ]));
}
