//! Property tests for the algebraic and analytic invariants.

use proptest::prelude::*;
use rug::ops::Pow;
use rug::{Complex, Float, Integer, Rational};

use zetarep::exactnum::{bernoulli, binomial, euler_number};
use zetarep::identities::{self, Verdict};
use zetarep::laurent::{closed_form_series, evaluate_series, function_value, FunctionKind};
use zetarep::mellin::{self, integrate, QuadratureConfig};
use zetarep::precision::{parse_rational, rational_to_decimal};
use zetarep::symbolic::{Symbol, Term};
use zetarep::{specfun, PiGraded, PrecisionContext};

fn graded() -> impl Strategy<Value = PiGraded> {
    prop::collection::vec((-50i64..50, 1i64..20, -4i32..5), 0..4).prop_map(|terms| {
        terms
            .into_iter()
            .fold(PiGraded::zero(), |acc, (n, d, p)| &acc + &PiGraded::monomial(Rational::from((n, d)), p))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bernoulli_recurrence(n in 1u32..=100) {
        let mut sum = Rational::new();
        for k in 0..=n {
            sum += Rational::from(binomial(n + 1, k).unwrap()) * bernoulli(k);
        }
        prop_assert_eq!(sum, Rational::new());
    }

    #[test]
    fn euler_recurrence(n in 1u32..=60) {
        let mut sum = Integer::new();
        for k in 0..=n {
            sum += binomial(2 * n, 2 * k).unwrap() * euler_number(2 * k);
        }
        prop_assert_eq!(sum, Integer::new());
    }

    #[test]
    fn pigraded_ring_laws(a in graded(), b in graded(), c in graded()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn bernoulli_rewrite_is_exact(coeff in -30i64..30, pi in -6i32..6, j in 0i64..25, k in 0i64..25) {
        let t = Term::new(Rational::from(coeff), pi, vec![Symbol::Zeta(2 * j), Symbol::Zeta(2 * k)]);
        prop_assert_eq!(t.exact().unwrap(), t.zeta_to_bernoulli().exact().unwrap());
    }

    #[test]
    fn rationals_round_trip_through_text(n in -10_000i64..10_000, d in 1i64..10_000) {
        let q = Rational::from((n, d));
        prop_assert_eq!(parse_rational(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn terminating_decimals_parse_exactly(n in -10_000i64..10_000, e in 0u32..6) {
        let q = Rational::from((n, 10i64.pow(e)));
        prop_assert_eq!(parse_rational(&rational_to_decimal(&q, 20)).unwrap(), q);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn digamma_recurrence(re in -5.0f64..5.0, im in 0.1f64..5.0) {
        let ctx = PrecisionContext::new(30).unwrap();
        let prec = ctx.bits();
        let z = Complex::with_val(prec, (re, im));
        let lhs = specfun::digamma(&Complex::with_val(prec, &z + 1u32), &ctx).unwrap()
            - specfun::digamma(&z, &ctx).unwrap();
        let diff = Complex::with_val(prec, lhs - Complex::with_val(prec, z.recip_ref()));
        prop_assert!(Float::with_val(prec, diff.abs_ref()) < 1e-28);
    }

    #[test]
    fn zeta_reflection(s in prop_oneof![0.05f64..0.45, 0.55f64..0.95]) {
        // zeta(s) Gamma(s) = (2 pi)^s zeta(1-s) / (2 cos(pi s / 2))
        let ctx = PrecisionContext::new(30).unwrap();
        let prec = ctx.bits();
        let s = ctx.float(s);
        let pi = specfun::pi(&ctx);
        let lhs = specfun::zeta(&s, &ctx).unwrap() * Float::with_val(prec, s.gamma_ref());
        let two_pi_s = Float::with_val(prec, Float::with_val(prec, &pi * 2u32).pow(&s));
        let cos = Float::with_val(prec, Float::with_val(prec, &pi * &s) / 2u32).cos();
        let one_minus = Float::with_val(prec, 1u32 - &s);
        let rhs = two_pi_s * specfun::zeta(&one_minus, &ctx).unwrap() / (cos * 2u32);
        let rel = Float::with_val(prec, &lhs - &rhs).abs() / rhs.abs();
        prop_assert!(rel < 1e-28);
    }

    #[test]
    fn series_error_bound_is_honored(kind_ix in 0usize..8, t in -0.8f64..0.8) {
        let ctx = PrecisionContext::new(30).unwrap();
        let kind = FunctionKind::TRIG[kind_ix];
        let radius = kind.radius().value(ctx.bits()).unwrap().to_f64();
        let x = t * radius;
        prop_assume!(x.abs() > 1e-3);
        let xf = ctx.float(x);
        let series = closed_form_series(kind, 60, &ctx).unwrap();
        let v = evaluate_series(&series, &xf, &ctx).unwrap();
        let direct = function_value(kind, &xf, &ctx).unwrap();
        let diff = Float::with_val(ctx.bits(), &v.value - &direct).abs();
        let slack = ctx.target_eps() * Float::with_val(ctx.bits(), direct.abs_ref()).max(&Float::with_val(ctx.bits(), 1));
        prop_assert!(diff <= v.error_bound + slack);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Passing rules keep passing well past their default sweep ranges.
    #[test]
    fn exact_rules_hold_beyond_default_ranges(ix in 0usize..6, n in 41i64..70) {
        let id = ["I26", "I27", "I28", "I32", "I34", "I37"][ix];
        let i = identities::evaluate_identity(identities::lookup(id).unwrap(), n, None).unwrap();
        prop_assert!(i.pass, "{} at n = {}", id, n);
    }

    /// The derived corrections were fitted on small parameters only.
    #[test]
    fn corrections_hold_beyond_fitted_samples(ix in 0usize..4, n in 51i64..80) {
        let id = ["I29", "I30", "I33", "I35"][ix];
        let corrected = identities::derive_corrected(id).unwrap();
        let i = identities::evaluate_identity(&corrected, n, None).unwrap();
        prop_assert!(i.pass, "{} at n = {}", corrected.id, n);
        let printed = identities::evaluate_identity(identities::lookup(id).unwrap(), n, None).unwrap();
        prop_assert!(!printed.pass);
    }

    /// `coth^2 = csch^2 + 1` makes the two integrands identical.
    #[test]
    fn r8_and_r9_agree(num in 1i64..24) {
        let s = Rational::from((num, 12));
        let cfg = QuadratureConfig::new(PrecisionContext::new(20).unwrap());
        let a = integrate(mellin::lookup("R8").unwrap(), &s, &cfg).unwrap();
        let b = integrate(mellin::lookup("R9").unwrap(), &s, &cfg).unwrap();
        let diff = Float::with_val(a.value.prec(), &a.value - &b.value).abs();
        prop_assert!(diff <= a.error_bound + b.error_bound);
    }
}

#[test]
fn coth2_minus_csch2_is_one() {
    let ctx = PrecisionContext::new(20).unwrap();
    let a = closed_form_series(FunctionKind::Coth2, 40, &ctx).unwrap();
    let b = closed_form_series(FunctionKind::Csch2, 40, &ctx).unwrap();
    for e in -2..40 {
        let d = a.coeff(e).unwrap() - b.coeff(e).unwrap();
        assert_eq!(d, if e == 0 { 1 } else { 0 }, "x^{e}");
    }
}

#[test]
fn sweep_verdicts_are_cross_linked() {
    let r = identities::sweep_default(identities::lookup("I35").unwrap(), None).unwrap();
    assert_eq!(r.verdict, Verdict::FailAsPrintedCorrectedPasses);
    let c = r.corrected.unwrap();
    assert_eq!(c.id, "I35-corrected");
    assert_eq!(c.status, identities::Status::Corrected { of: "I35".into() });
}
