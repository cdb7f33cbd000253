//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! Run with `cargo test --release --test acceptance -- --nocapture` (the
//! harness is custom, so output is always shown).

use std::f64::consts::TAU;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lowcorr::char_sums::weil::{exhaustive_weil_sweep, random_weil_sweep};
use lowcorr::char_sums::{
    gauss_sum, AdditiveCharacter, CyclotomicInteger, MultiplicativeCharacter,
};
use lowcorr::correlation::{
    bound_value, kernel_eval, linear_case_bound, naive_check, spectrum_values, NaiveCheck,
    ParamPair, SpectrumOptions, BOUND_TOLERANCE,
};
use lowcorr::field::{build_field, FieldCtx};
use lowcorr::sequences::{cyclic_inequivalence_check, m_sequence, Decimation, FamilySpec};
use lowcorr::table1::{self, RowOutcome, Table1Row};

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn field(p: u64, n: u32) -> Arc<FieldCtx> {
    Arc::new(build_field(p, n, None).unwrap())
}

fn table_rows(rows: &[Table1Row]) -> Verdict {
    let opts = SpectrumOptions {
        threads: None,
        naive_check: NaiveCheck::Off,
    };
    let outcomes: Vec<RowOutcome> = table1::reproduce(rows, &opts).unwrap();
    let detail = outcomes
        .iter()
        .map(|o| {
            let c = o.reported();
            format!(
                "({},{}) {}/{} vs {}/{} {}",
                o.expected.p,
                o.expected.n,
                c.cmax_over_sqrt_n,
                c.distinct_values,
                o.expected.cmax_over_sqrt_n,
                o.expected.distinct_values,
                o.matched.as_deref().unwrap_or("no match")
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    verdict(outcomes.iter().all(|o| o.pass()), detail)
}

fn table_fast() -> Verdict {
    table_rows(&table1::FAST_ROWS)
}

fn table_extended() -> Verdict {
    table_rows(&table1::EXTENDED_ROWS)
}

fn primes_3_mod_4(limit: u64) -> impl Iterator<Item = u64> {
    (3..=limit).filter(|&v| v % 4 == 3 && (2..).take_while(|d| d * d <= v).all(|d| v % d != 0))
}

/// Every admissible (p, n) with q ≤ limit.
fn small_fields(limit: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for p in primes_3_mod_4(limit) {
        let mut n = 1;
        while p.pow(n) <= limit {
            out.push((p, n));
            n += 2;
        }
    }
    out
}

fn bound_verification() -> Verdict {
    let fields = small_fields(2187);
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    for &(p, n) in &fields {
        let ctx = field(p, n);
        let bound = bound_value(ctx.half_order());
        let linear = linear_case_bound(ctx.q());
        for d in Decimation::ALL {
            let spec = FamilySpec::standard(ctx.clone(), d).unwrap();
            let values = spectrum_values(&spec, None).unwrap();
            worst = worst.max(values.c_max() / bound);
            if values.c_max() > bound + BOUND_TOLERANCE
                || values.linear_case_max() > linear + BOUND_TOLERANCE
            {
                failures.push(format!("({p},{n},d={d})"));
            }
        }
    }
    verdict(
        failures.is_empty(),
        format!(
            "{} fields x 2 families, max C_max/bound = {worst:.4}{}",
            fields.len(),
            if failures.is_empty() {
                String::new()
            } else {
                format!(", violations {failures:?}")
            }
        ),
    )
}

fn oracle_equivalence() -> Verdict {
    let mut parts = Vec::new();
    let mut ok = true;
    for (p, n) in [(3, 3), (7, 3)] {
        let ctx = field(p, n);
        for d in Decimation::ALL {
            let spec = FamilySpec::standard(ctx.clone(), d).unwrap();
            let values = spectrum_values(&spec, None).unwrap();
            match naive_check(&spec, NaiveCheck::Full, &values, None) {
                Ok(Some(s)) => {
                    ok &= s.mismatches == 0 && s.value_sets_equal == Some(true);
                    parts.push(format!(
                        "q={} d={d}: {} correlations, 0 mismatches",
                        ctx.q(),
                        s.correlations
                    ));
                }
                other => {
                    ok = false;
                    parts.push(format!("q={} d={d}: {other:?}", ctx.q()));
                }
            }
        }
    }
    verdict(ok, parts.join("; "))
}

fn family_size() -> Verdict {
    let mut parts = Vec::new();
    let mut ok = true;
    for (p, n) in [(3, 3), (7, 3), (3, 7)] {
        let ctx = field(p, n);
        for d in Decimation::ALL {
            let spec = FamilySpec::standard(ctx.clone(), d).unwrap();
            let distinct = cyclic_inequivalence_check(&spec);
            ok &= distinct && spec.family_size() == 4 * ctx.half_order() as usize;
            parts.push(format!(
                "q={} d={d}: {} members {}",
                ctx.q(),
                spec.family_size(),
                if distinct {
                    "inequivalent"
                } else {
                    "DUPLICATES"
                }
            ));
        }
    }
    verdict(ok, parts.join("; "))
}

fn gauss_suite() -> Verdict {
    let ctx = build_field(3, 3, None).unwrap();
    let q = ctx.q() as f64;
    let m = ctx.group_order() as f64;
    let mut checked = 0;
    let mut bad = 0;
    for beta in ctx.elements() {
        for j in 0..ctx.group_order() {
            let g = gauss_sum(
                AdditiveCharacter::new(beta),
                MultiplicativeCharacter::new(j),
                &ctx,
            )
            .unwrap();
            let reference: Complex64 = ctx
                .elements()
                .filter(|x| !x.is_zero())
                .map(|x| {
                    let tr = ctx.trace(ctx.mul(beta, x).unwrap()).unwrap() as f64 / 3.0;
                    let k = ctx.dlog(x).unwrap() as f64 * j as f64 / m;
                    Complex64::from_polar(1.0, TAU * (tr + k))
                })
                .sum();
            let expected = match (beta.is_zero(), j == 0) {
                (true, true) => q - 1.0,
                (true, false) => 0.0,
                (false, true) => 1.0,
                (false, false) => q.sqrt(),
            };
            let exact_ok = match (beta.is_zero(), j == 0) {
                (true, true) => g.exact.as_ref().and_then(|e| e.as_integer()) == Some(26),
                (false, true) => g.exact.as_ref().and_then(|e| e.as_integer()) == Some(-1),
                _ => true,
            };
            if (g.magnitude() - expected).abs() > 1e-9
                || (g.value - reference).norm() > 1e-9
                || !exact_ok
            {
                bad += 1;
            }
            checked += 1;
        }
    }
    verdict(
        bad == 0,
        format!("{checked} (psi, chi) pairs over GF(27), {bad} failures"),
    )
}

fn weil_sweeps() -> Verdict {
    let ctx = build_field(3, 3, None).unwrap();
    let s = exhaustive_weil_sweep(&ctx, 4);
    let mut ok = s.hybrid_violations == 0 && s.additive_violations == 0;
    let mut detail = format!(
        "GF(27) deg<=4: {} hybrid / {} additive checks, {} violations",
        s.hybrid_checked,
        s.additive_checked,
        s.hybrid_violations + s.additive_violations
    );
    for (p, n, seed) in [(7, 3, 343), (3, 7, 2187)] {
        let ctx = build_field(p, n, None).unwrap();
        let records = random_weil_sweep(&ctx, 200, 4, seed);
        let bad = records.iter().filter(|(_, r)| !r.pass).count();
        ok &= bad == 0;
        detail.push_str(&format!(
            "; q={}: 200 trials, {} checks, {bad} violations",
            ctx.q(),
            records.len()
        ));
    }
    verdict(ok, detail)
}

fn property_suites() -> Verdict {
    let mut failures: Vec<&str> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for (p, n) in [(3, 3), (7, 3)] {
        let ctx = build_field(p, n, None).unwrap();
        let q = ctx.q();
        let el = |c: u32| ctx.from_code(c).unwrap();

        let mut hist = vec![0u32; p as usize];
        for x in ctx.elements() {
            hist[ctx.trace(x).unwrap() as usize] += 1;
        }
        if hist.iter().any(|&h| h != q / p as u32) {
            failures.push("trace balance");
        }
        for _ in 0..500 {
            let (x, y) = (el(rng.gen_range(0..q)), el(rng.gen_range(0..q)));
            let c = rng.gen_range(0..p as i64);
            let lhs = ctx
                .trace(ctx.add(ctx.mul(ctx.from_int(c), x).unwrap(), y).unwrap())
                .unwrap();
            if lhs != (c as u32 * ctx.trace(x).unwrap() + ctx.trace(y).unwrap()) % p as u32 {
                failures.push("trace linearity");
            }
            let xy = ctx.mul(x, y).unwrap();
            if ctx.eta(xy).unwrap() != ctx.eta(x).unwrap() * ctx.eta(y).unwrap() {
                failures.push("eta multiplicativity");
            }
        }
        let seq = m_sequence(&ctx, ctx.one()).unwrap();
        let h = seq.histogram();
        if h[0] != (q / p as u32 - 1) as usize
            || h[1..].iter().any(|&v| v != (q / p as u32) as usize)
        {
            failures.push("m-sequence balance");
        }
        for _ in 0..100 {
            let (a, b) = (el(rng.gen_range(0..q)), el(rng.gen_range(0..q)));
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let c = ctx.alpha_pow(2 * rng.gen_range(0..ctx.half_order() as i64));
            let scaled = ParamPair::new(
                ctx.mul(a, c).unwrap(),
                ctx.mul(b, ctx.mul(c, c).unwrap()).unwrap(),
            );
            if kernel_eval(ParamPair::new(a, b), &ctx).unwrap()
                != kernel_eval(scaled, &ctx).unwrap()
            {
                failures.push("scaling invariance");
            }
        }
    }
    for _ in 0..500 {
        let counts: Vec<i64> = (0..5).map(|_| rng.gen_range(-20..20)).collect();
        let once = CyclotomicInteger::new(counts.clone());
        if CyclotomicInteger::new(once.counts().to_vec()) != once {
            failures.push("canonicalization idempotence");
        }
        let other = CyclotomicInteger::new((0..5).map(|_| rng.gen_range(0..4)).collect());
        let close = (once.to_complex() - other.to_complex()).norm() < 1e-9;
        if (once == other) != close {
            failures.push("exact equality");
        }
    }
    failures.dedup();
    verdict(
        failures.is_empty(),
        if failures.is_empty() {
            "trace, eta, m-sequence, canonical form, scaling invariance".to_string()
        } else {
            format!("failed: {failures:?}")
        },
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 table reproduction, fast rows", table_fast),
        ("2 table reproduction, extended rows", table_extended),
        ("3 correlation bound, all q <= 2187", bound_verification),
        (
            "4 naive vs reduced correlation, q in {27, 343}",
            oracle_equivalence,
        ),
        ("5 family size 4N, cyclically inequivalent", family_size),
        ("6 Gauss sums over GF(27)", gauss_suite),
        ("7 Weil sweeps", weil_sweeps),
        ("8 algebraic property suites", property_suites),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let v = check();
        failed += usize::from(!v.pass);
        println!(
            "[{}] {name} ({:.1}s): {}",
            if v.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            v.detail
        );
    }
    println!("{} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
