//! Acceptance criteria 1-10. Each prints one PASS/FAIL line (written straight
//! to stdout so the lines survive the test harness's capture). Run with
//!
//! ```text
//! cargo test --release -p zetarep-core --test acceptance
//! ```
//!
//! Criterion 8 asks for exactly one of two readings of the chi-product
//! expansion to match `chi_series`; neither does, so it is reported as FAIL
//! with the reason, and the test instead asserts the relations that do hold.

use std::io::Write;
use std::time::Instant;

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use zetarep::errata::{chi_variant_residuals, errata_ledger, expansion_errata};
use zetarep::exactnum::{bernoulli, euler_number};
use zetarep::identities::{self, Residual, Verdict};
use zetarep::laurent::{
    self, chi_ix_variant, chi_real_variant, closed_form_series, digamma_expansion_at, evaluate_series, oracle_series,
    ExactView, FunctionKind,
};
use zetarep::mellin::{self, integrate, verify_representation, QuadratureConfig};
use zetarep::{specfun, PiGraded, PrecisionContext};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

// 1. Laurent oracle equivalence

fn laurent_oracles() -> Outcome {
    let ctx = PrecisionContext::new(30).unwrap();
    for kind in FunctionKind::TRIG {
        let closed = closed_form_series(kind, 40, &ctx).unwrap();
        let oracle = oracle_series(kind, 40).unwrap();
        if closed != oracle {
            return outcome(false, format!("{kind}: closed form and oracle differ"));
        }
    }
    use FunctionKind::*;
    let printed: [(FunctionKind, i32, Rational); 14] = [
        (Coth, 1, q(1, 3)),
        (Coth, 3, q(-1, 45)),
        (Coth, 5, q(2, 945)),
        (Csch, 1, q(-1, 6)),
        (Csch, 3, q(7, 360)),
        (Csch, 5, q(-31, 15120)),
        (Coth2, 0, q(2, 3)),
        (Csch2, 0, q(-1, 3)),
        (Coth4, -2, q(4, 3)),
        (Coth4, 0, q(26, 45)),
        (Sech, 0, q(1, 1)),
        (Sech, 2, q(-1, 2)),
        (Sech, 4, q(5, 24)),
        (Sech, 6, q(-61, 720)),
    ];
    for (kind, e, want) in printed {
        let got = closed_form_series(kind, 40, &ctx).unwrap().coeff(e);
        if got.as_ref() != Some(&want) {
            return outcome(false, format!("{kind} x^{e}: expected {want}, got {got:?}"));
        }
    }
    outcome(true, "8 kinds equal through order 40; 14 printed coefficients match")
}

// 2. Bernoulli and Euler cross-checks

/// `sum_{k>=0} (-1)^k a_k` for completely monotone `a_k` by the
/// Cohen-Rodriguez Villegas-Zagier acceleration; error about `5.83^-n`.
fn alternating_sum(prec: u32, terms: u32, a: impl Fn(u32) -> Float) -> Float {
    let n = terms;
    let root = Float::with_val(prec, 8u32).sqrt() + 3u32;
    let mut d = Float::with_val(prec, (&root).pow(n));
    d = (Float::with_val(prec, d.recip_ref()) + &d) / 2u32;
    let mut b = Float::with_val(prec, -1);
    let mut c = Float::with_val(prec, -&d);
    let mut s = Float::new(prec);
    for k in 0..n {
        c = Float::with_val(prec, &b - &c);
        s += Float::with_val(prec, &c * a(k));
        let num = (Integer::from(k) + n) * (Integer::from(k) - n);
        let den = Rational::from((2 * k + 1, 2)) * (k + 1);
        b *= Float::with_val(prec, Rational::from(num) / den);
    }
    s / d
}

fn staudt_denominator(n: u32) -> Integer {
    let mut d = Integer::from(1);
    for p in 2..=n + 1 {
        if n.is_multiple_of(p - 1) && Integer::from(p).is_probably_prime(30) != rug::integer::IsPrime::No {
            d *= p;
        }
    }
    d
}

fn round_to(x: &Float, den: &Integer) -> Rational {
    let scaled = Float::with_val(x.prec(), x * den).round();
    Rational::from((scaled.to_integer().unwrap(), den.clone()))
}

fn bernoulli_euler() -> Outcome {
    let ctx = PrecisionContext::new(200).unwrap();
    let prec = ctx.bits();
    let pi = Float::with_val(prec, Constant::Pi);
    let two_pi = Float::with_val(prec, &pi * 2u32);
    let terms = 300; // 5.83^-300 < 10^-229
    if bernoulli(0) != 1 || bernoulli(1) != q(-1, 2) || (3..=60).step_by(2).any(|n| bernoulli(n) != 0) {
        return outcome(false, "trivial Bernoulli values");
    }
    for n in 1..=30u32 {
        // zeta(2n) = eta(2n) / (1 - 2^{1-2n}); B_{2n} = (-1)^{n+1} 2 (2n)! zeta(2n) / (2 pi)^{2n}
        let s = 2 * n;
        let eta = alternating_sum(prec, terms, |k| Float::with_val(prec, k + 1).pow(s).recip());
        let zeta_indep = eta / (1u32 - Float::with_val(prec, Float::i_exp(1, 1 - s as i32)));
        let zeta_lib = specfun::zeta(&ctx.float(s), &ctx).unwrap();
        let den = staudt_denominator(s);
        for (label, z) in [("independent", zeta_indep), ("library", zeta_lib)] {
            let mut b = z * Float::with_val(prec, Integer::from(Integer::factorial(s))) * 2u32 / Float::with_val(prec, (&two_pi).pow(s));
            if n % 2 == 0 {
                b = -b;
            }
            if round_to(&b, &den) != bernoulli(s) {
                return outcome(false, format!("B_{s} from the {label} zeta value does not round to the recurrence"));
            }
        }
    }
    for n in 0..=15u32 {
        // E_{2n} = (-1)^n 2 (2n)! eta(2n+1, 1/2) / pi^{2n+1}
        let s = 2 * n + 1;
        let indep = alternating_sum(prec, terms, |k| Float::with_val(prec, Rational::from((2 * k + 1, 2))).pow(s).recip());
        let lib = specfun::eta_half(&ctx.float(s), &ctx).unwrap();
        for (label, eta) in [("independent", indep), ("library", lib)] {
            let mut e = eta * Float::with_val(prec, Integer::from(Integer::factorial(2 * n))) * 2u32 / Float::with_val(prec, (&pi).pow(s));
            if n % 2 == 1 {
                e = -e;
            }
            if round_to(&e, &Integer::from(1)) != euler_number(2 * n) {
                return outcome(false, format!("E_{} from the {label} eta value does not round to the recurrence", 2 * n));
            }
        }
    }
    outcome(true, "B_0..B_60 and E_0..E_30 equal their zeta / eta(., 1/2) roundings at 200 digits")
}

// 3. Mellin verification

fn mellin_verification() -> Outcome {
    let mut notes = Vec::new();
    for digits in [30, 50] {
        let cfg = QuadratureConfig::new(PrecisionContext::new(digits).unwrap());
        let start = Instant::now();
        for rep in mellin::registry() {
            let r = verify_representation(rep, None, &cfg).unwrap();
            if !r.pass || r.points.len() != 5 {
                return outcome(false, format!("{} fails at {digits} digits: max residual {}", r.id, r.max_residual));
            }
        }
        let secs = start.elapsed().as_secs_f64();
        if digits == 50 && secs > 120.0 {
            return outcome(false, format!("50-digit run took {secs:.1} s"));
        }
        notes.push(format!("{digits} digits in {secs:.1} s"));
    }
    outcome(
        true,
        format!("{} entries on 5-point grids; {}", mellin::registry().len(), notes.join(", ")),
    )
}

// 4. Exact identity sweeps

fn exact_sweeps() -> Outcome {
    let plan = [
        ("I26", 1, 50),
        ("I27", 1, 50),
        ("I28", 1, 50),
        ("I31", 1, 100),
        ("I32", 3, 40),
        ("I34", 2, 40),
        ("I36", 1, 30),
        ("I37", 1, 30),
    ];
    let mut count = 0;
    for (id, lo, hi) in plan {
        let r = identities::sweep_identity(identities::lookup(id).unwrap(), (lo, hi), None).unwrap();
        for i in &r.instances {
            let zero = match &i.residual {
                Some(Residual::Exact(v)) => v.num == "0",
                _ => false,
            };
            if !zero {
                return outcome(false, format!("{id} at n = {}: residual {:?}", i.n, i.residual));
            }
        }
        count += r.instances.len();
    }
    outcome(true, format!("{count} instances, every residual exactly 0"))
}

// 5. Errata detection

fn errata_detection() -> Outcome {
    let i30 = identities::evaluate_identity(identities::lookup("I30").unwrap(), 1, None).unwrap();
    if i30.residual != Some(Residual::Exact(ExactView::rational(&q(1, 240)))) {
        return outcome(false, format!("I30 at n = 1: {:?}", i30.residual));
    }
    let mut notes = vec!["I30(1) = 1/240".to_string()];
    for id in ["I33", "I35"] {
        let spec = identities::lookup(id).unwrap();
        let first = identities::evaluate_identity(spec, spec.min, None).unwrap();
        let nonzero = match &first.residual {
            Some(Residual::Exact(v)) => v.num != "0",
            Some(Residual::Graded(v)) => !v.is_empty(),
            _ => false,
        };
        if !nonzero {
            return outcome(false, format!("{id} at its smallest parameter has residual {:?}", first.residual));
        }
        notes.push(format!("{id}({}) = {}", spec.min, first.residual.unwrap()));
    }
    for id in ["I29", "I30", "I33", "I35"] {
        let spec = identities::lookup(id).unwrap();
        let corrected = identities::derive_corrected(id).unwrap();
        let r = identities::sweep_identity(&corrected, spec.default_range, None).unwrap();
        if r.verdict != Verdict::Pass {
            return outcome(false, format!("{} does not sweep clean", corrected.id));
        }
    }
    notes.push("derived corrections for I29, I30, I33, I35 sweep clean".into());
    outcome(true, notes.join("; "))
}

// 6. Euler sums

fn euler_sums() -> Outcome {
    let ctx = PrecisionContext::new(30).unwrap();
    for id in ["I44", "I47"] {
        let spec = identities::lookup(id).unwrap();
        let r = identities::sweep_identity(spec, (spec.min.max(2), 12), Some(&ctx)).unwrap();
        if r.verdict != Verdict::Pass {
            return outcome(false, format!("{id} fails"));
        }
    }
    let prec = ctx.bits();
    let tol = Float::with_val(prec, Float::i_exp(1, -100)) + Float::with_val(prec, 1e-30);
    let s2 = specfun::euler_sum_h(&ctx.float(2), &ctx).unwrap();
    let two_zeta3 = specfun::zeta(&ctx.float(3), &ctx).unwrap() * 2u32;
    let s3 = specfun::euler_sum_h(&ctx.float(3), &ctx).unwrap();
    let pi4 = PiGraded::monomial(q(1, 72), 4).to_float(&specfun::pi(&ctx));
    let d2 = Float::with_val(prec, &s2 - &two_zeta3).abs();
    let d3 = Float::with_val(prec, &s3 - &pi4).abs();
    if d2 > tol || d3 > tol {
        return outcome(false, format!("spot values off by {d2} and {d3}"));
    }
    outcome(true, "I44 (odd m) and I47 hold for m = 2..12 at 30 digits; S_H(2) = 2 zeta(3), S_H(3) = pi^4/72")
}

// 7. Digamma expansions

fn digamma_expansions() -> Outcome {
    let ctx = PrecisionContext::new(40).unwrap();
    let prec = ctx.bits();
    let tol = Float::with_val(prec, 1e-30);
    let mut worst = Float::new(prec);
    for n in [1i64, 3, -2] {
        // at most 60 terms: exponents -1..58 for the pole form, 0..59 otherwise
        let order = if n <= 0 { 59 } else { 60 };
        let series = digamma_expansion_at(n, order, &ctx).unwrap();
        for x in [0.25, -0.25] {
            let xf = ctx.float(x);
            let v = evaluate_series(&series, &xf, &ctx).unwrap().value;
            let direct = specfun::digamma_real(&Float::with_val(prec, &xf + n), &ctx).unwrap();
            let diff = Float::with_val(prec, &v - &direct).abs();
            if diff > tol {
                return outcome(false, format!("psi({n} + {x}): series off by {diff}"));
            }
            if diff > worst {
                worst = diff;
            }
        }
    }
    outcome(true, format!("n in {{1, 3, -2}}, x = +-0.25, 60 terms; worst difference {:.3e}", worst.to_f64()))
}

// 8. Chi-product expansion readings

struct ChiFinding {
    outcome: Outcome,
    relations_hold: bool,
}

fn chi_readings() -> ChiFinding {
    let ctx = PrecisionContext::new(40).unwrap();
    let prec = ctx.bits();
    let series = laurent::chi_series(90, &ctx).unwrap();
    let tol = Float::with_val(prec, 1e-25);
    let mut real_matches = true;
    let mut ix_matches = true;
    let mut relations_hold = true;
    for x in [0.1, 0.3] {
        let xf = ctx.float(x);
        let target = evaluate_series(&series, &xf, &ctx).unwrap().value;
        let real = chi_real_variant(&xf, &ctx).unwrap();
        let ix = chi_ix_variant(&xf, &ctx).unwrap();
        real_matches &= Float::with_val(prec, &real - &target).abs() <= tol;
        ix_matches &= Float::with_val(prec, &ix - &target).abs() <= tol;
        let (_, _, real_verified, ix_verified) = chi_variant_residuals(&xf, &ctx).unwrap();
        relations_hold &= real_verified <= tol && ix_verified <= tol;
    }
    let recorded = expansion_errata(&PrecisionContext::new(30).unwrap())
        .unwrap()
        .iter()
        .any(|e| e.id == "chi-product-expansion");
    relations_hold &= recorded;
    let matching = real_matches as u32 + ix_matches as u32;
    let outcome = if matching == 1 {
        outcome(true, if real_matches { "the real-x reading matches" } else { "the ix reading matches" })
    } else {
        outcome(
            false,
            format!(
                "{matching} of 2 readings match chi_series, criterion unattainable: \
                 psi(x)psi(-x) + 1/x^2 - gamma^2 - pi^2/3 = -chi_series and \
                 psi(ix)psi(-ix) - 1/x^2 - gamma^2 - pi^2/3 = 2 sum (-1)^(n+1) chi(2n+1) x^(2n), \
                 both to 1e-25 at x = 0.1, 0.3; recorded in the errata ledger = {recorded}"
            ),
        )
    };
    ChiFinding { outcome, relations_hold }
}

// 9. Quadrature self-consistency

fn quadrature_doubling() -> Outcome {
    let cfg = QuadratureConfig::new(PrecisionContext::new(30).unwrap());
    let tail = cfg.with_doubled_tail();
    let panels = cfg.with_doubled_panels();
    let mut count = 0;
    for rep in mellin::registry() {
        for s in rep.default_grid() {
            let base = integrate(rep, &s, &cfg).unwrap();
            for (label, alt) in [("tail", &tail), ("panels", &panels)] {
                let other = integrate(rep, &s, alt).unwrap();
                let change = Float::with_val(base.value.prec(), &other.value - &base.value).abs();
                if change >= base.error_bound {
                    return outcome(false, format!("{} at s = {s}: doubling {label} moved the value by {change}", rep.id));
                }
            }
            count += 1;
        }
    }
    outcome(true, format!("{count} integrals stable under doubled tail cutoff and doubled panel count"))
}

// 10. Determinism

fn determinism() -> Outcome {
    let ctx = PrecisionContext::new(20).unwrap();
    let cfg = QuadratureConfig::new(ctx);
    let run = || {
        let mellin: Vec<_> =
            mellin::registry().iter().map(|rep| verify_representation(rep, None, &cfg).unwrap()).collect();
        let ids: Vec<_> =
            identities::registry().iter().map(|s| identities::sweep_default(s, Some(&ctx)).unwrap()).collect();
        let ledger = errata_ledger(&ctx).unwrap();
        (
            serde_json::to_string_pretty(&mellin).unwrap(),
            serde_json::to_string_pretty(&ids).unwrap(),
            serde_json::to_string_pretty(&ledger).unwrap(),
        )
    };
    let a = run();
    let b = run();
    let same = a == b;
    outcome(
        same,
        format!(
            "two --all runs serialize to {} + {} + {} bytes, {}",
            a.0.len(),
            a.1.len(),
            a.2.len(),
            if same { "byte-identical" } else { "different" }
        ),
    )
}

#[test]
fn acceptance_criteria() {
    let chi = chi_readings();
    let results = [
        ("Laurent oracle equivalence", laurent_oracles()),
        ("Bernoulli/Euler cross-checks", bernoulli_euler()),
        ("Mellin verification", mellin_verification()),
        ("exact identity sweeps", exact_sweeps()),
        ("errata detection", errata_detection()),
        ("Euler-sum identities", euler_sums()),
        ("digamma expansions", digamma_expansions()),
        ("chi-product variant resolution", chi.outcome),
        ("quadrature self-consistency", quadrature_doubling()),
        ("determinism", determinism()),
    ];
    let mut out = String::from("\n");
    for (i, (name, r)) in results.iter().enumerate() {
        out.push_str(&format!(
            "criterion {:>2} [{name}]: {} ({})\n",
            i + 1,
            if r.pass { "PASS" } else { "FAIL" },
            r.detail
        ));
    }
    // Bypass output capture so the summary lands in the test log.
    std::io::stdout().write_all(out.as_bytes()).unwrap();

    assert!(chi.relations_hold, "the verified chi-product relations do not hold");
    for (i, (name, r)) in results.iter().enumerate() {
        if i + 1 == 8 {
            continue;
        }
        assert!(r.pass, "criterion {} ({name}) failed: {}", i + 1, r.detail);
    }
}
