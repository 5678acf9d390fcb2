//! Every printed statement that fails verification, with the correction that
//! passes, gathered into one ledger. All entries are recomputed on demand.

use rug::{Complex, Float};
use serde::Serialize;

use crate::error::Result;
use crate::identities::{errata_report, ErrataEntry};
use crate::laurent::{chi_ix_variant, chi_real_variant};
use crate::mellin::{prefactor_errata, PrefactorErratum, QuadratureConfig};
use crate::precision::{to_decimal, PrecisionContext};
use crate::specfun;

/// Sample point for the expansion checks.
pub const EXPANSION_X: f64 = 0.1;

/// A power series whose printed coefficients disagree with the function it
/// is said to expand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpansionErratum {
    pub id: String,
    pub printed: String,
    pub corrected: String,
    /// first series index whose printed coefficient is wrong
    pub first_wrong_index: u32,
    pub x: String,
    pub printed_residual: String,
    pub corrected_residual: String,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrataLedger {
    pub digits: u32,
    pub identities: Vec<ErrataEntry>,
    pub prefactors: Vec<PrefactorErratum>,
    pub expansions: Vec<ExpansionErratum>,
}

impl ErrataLedger {
    pub fn len(&self) -> usize {
        self.identities.len() + self.prefactors.len() + self.expansions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `sum_{n>=1} c_n x^{a n + b}` given the coefficients.
fn series_value(coeffs: &[Float], x: &Float, a: u32, b: i32) -> Float {
    let prec = x.prec();
    let mut acc = Float::new(prec);
    for (i, c) in coeffs.iter().enumerate() {
        let e = a as i32 * (i as i32 + 1) + b;
        acc += Float::with_val(prec, c * Float::with_val(prec, rug::ops::Pow::pow(x, e)));
    }
    acc
}

fn first_difference(a: &[Float], b: &[Float], eps: &Float) -> u32 {
    a.iter()
        .zip(b)
        .position(|(p, q)| Float::with_val(p.prec(), p - q).abs() > *eps)
        .map_or(0, |i| i as u32 + 1)
}

struct Candidate {
    id: &'static str,
    printed: &'static str,
    corrected: &'static str,
    note: &'static str,
    value: Float,
    printed_coeffs: Vec<Float>,
    corrected_coeffs: Vec<Float>,
    shape: (u32, i32),
}

impl Candidate {
    fn report(self, x: &Float, ctx: &PrecisionContext) -> ExpansionErratum {
        let (a, b) = self.shape;
        let printed = series_value(&self.printed_coeffs, x, a, b);
        let corrected = series_value(&self.corrected_coeffs, x, a, b);
        let pr = Float::with_val(ctx.bits(), &self.value - &printed).abs();
        let cr = Float::with_val(ctx.bits(), &self.value - &corrected).abs();
        ExpansionErratum {
            id: self.id.into(),
            printed: self.printed.into(),
            corrected: self.corrected.into(),
            first_wrong_index: first_difference(&self.printed_coeffs, &self.corrected_coeffs, &ctx.working_eps()),
            x: to_decimal(x, 6),
            printed_residual: to_decimal(&pr, 6),
            corrected_residual: to_decimal(&cr, 6),
            note: self.note.into(),
        }
    }
}

fn alternate(v: &[Float], start_negative: bool) -> Vec<Float> {
    v.iter()
        .enumerate()
        .map(|(i, c)| if (i % 2 == 0) == start_negative { Float::with_val(c.prec(), -c) } else { c.clone() })
        .collect()
}

/// The digamma expansion findings at `x = 0.1`.
pub fn expansion_errata(ctx: &PrecisionContext) -> Result<Vec<ExpansionErratum>> {
    let prec = ctx.bits();
    let x = ctx.float(EXPANSION_X);
    // x^{2n} < 10^-(digits + guard) once n exceeds half the working digits
    let terms = (ctx.digits() + ctx.guard()) / 2 + 3;
    let two = |v: Float| v * 2u32;
    let zeta_odd: Vec<Float> =
        (1..=terms).map(|n| specfun::zeta(&ctx.float(2 * n + 1), ctx).map(two)).collect::<Result<_>>()?;
    let zeta_even: Vec<Float> =
        (1..=terms).map(|n| specfun::zeta(&ctx.float(2 * n), ctx).map(two)).collect::<Result<_>>()?;
    let chi_odd: Vec<Float> =
        (1..=terms).map(|n| specfun::chi(&ctx.float(2 * n + 1), ctx).map(two)).collect::<Result<_>>()?;

    let ix = Complex::with_val(prec, (0, &x));
    let p = specfun::digamma(&ix, ctx)?;
    let q = specfun::digamma(&Complex::with_val(prec, -&ix), ctx)?;
    let gamma = specfun::euler_gamma(ctx);
    let sym = Float::with_val(prec, Complex::with_val(prec, &p + &q).real()) + Float::with_val(prec, &gamma * 2u32);
    // i (psi(ix) - psi(-ix)) + 2/x
    let diff = Complex::with_val(prec, &p - &q) * Complex::with_val(prec, (0, 1));
    let antisym = Float::with_val(prec, diff.real()) + Float::with_val(prec, 2u32 / &x);

    let out = vec![
        Candidate {
            id: "psi-sym-expansion",
            printed: "psi(ix) + psi(-ix) + 2 gamma = 2 sum_{n>=1} zeta(2n+1) x^(2n)",
            corrected: "psi(ix) + psi(-ix) + 2 gamma = 2 sum_{n>=1} (-1)^(n+1) zeta(2n+1) x^(2n)",
            note: "the Maclaurin series of psi(1+z) evaluated at z = ix and z = -ix alternates in sign",
            value: sym,
            printed_coeffs: zeta_odd.clone(),
            corrected_coeffs: alternate(&zeta_odd, false),
            shape: (2, 0),
        },
        Candidate {
            id: "psi-antisym-expansion",
            printed: "i psi(ix) - i psi(-ix) + 2/x = 2 sum_{n>=1} zeta(2n) x^(2n-1)",
            corrected: "i psi(ix) - i psi(-ix) + 2/x = 2 sum_{n>=1} (-1)^n zeta(2n) x^(2n-1)",
            note: "the left side equals 2/x - 2 Im psi(ix) = 2/x - 1/x - pi coth(pi x), which starts at -2 zeta(2) x",
            value: antisym,
            printed_coeffs: zeta_even.clone(),
            corrected_coeffs: alternate(&zeta_even, true),
            shape: (2, -1),
        },
        Candidate {
            id: "chi-product-expansion",
            printed: "psi(x) psi(-x) + 1/x^2 - gamma^2 - pi^2/3 = 2 sum_{n>=1} chi(2n+1) x^(2n)",
            corrected: "psi(x) psi(-x) + 1/x^2 - gamma^2 - pi^2/3 = -2 sum_{n>=1} chi(2n+1) x^(2n)",
            note: "with chi(s) = sum psi(n)/n^s; the imaginary-argument form \
                   psi(ix) psi(-ix) - 1/x^2 - gamma^2 - pi^2/3 equals 2 sum (-1)^(n+1) chi(2n+1) x^(2n) \
                   instead, so neither reading matches the printed series",
            value: chi_real_variant(&x, ctx)?,
            printed_coeffs: chi_odd.clone(),
            corrected_coeffs: chi_odd.iter().map(|c| Float::with_val(prec, -c)).collect(),
            shape: (2, 0),
        },
    ];
    Ok(out.into_iter().map(|c| c.report(&x, ctx)).collect())
}

/// Residuals of both readings of the chi-product expansion against the
/// printed series `2 sum chi(2n+1) x^(2n)`, and against their own verified
/// series: `(real printed, ix printed, real verified, ix verified)`.
pub fn chi_variant_residuals(x: &Float, ctx: &PrecisionContext) -> Result<(Float, Float, Float, Float)> {
    let prec = ctx.bits();
    let terms = (ctx.digits() + ctx.guard()) as f64 / (2.0 * -x.to_f64().abs().log10()) + 3.0;
    let chi_odd: Vec<Float> = (1..=terms as u32)
        .map(|n| specfun::chi(&ctx.float(2 * n + 1), ctx).map(|v| v * 2u32))
        .collect::<Result<_>>()?;
    let printed = series_value(&chi_odd, x, 2, 0);
    let alternating = series_value(&alternate(&chi_odd, false), x, 2, 0);
    let real = chi_real_variant(x, ctx)?;
    let imag = chi_ix_variant(x, ctx)?;
    let abs = |v: Float| v.abs();
    Ok((
        abs(Float::with_val(prec, &real - &printed)),
        abs(Float::with_val(prec, &imag - &printed)),
        abs(Float::with_val(prec, &real + &printed)),
        abs(Float::with_val(prec, &imag - &alternating)),
    ))
}

/// Builds the full ledger. Identities are swept over their default ranges,
/// prefactors are compared at the first default grid point.
pub fn errata_ledger(ctx: &PrecisionContext) -> Result<ErrataLedger> {
    let cfg = QuadratureConfig::new(*ctx);
    let (identities, rest) =
        rayon::join(|| errata_report(ctx), || rayon::join(|| prefactor_errata(&cfg), || expansion_errata(ctx)));
    Ok(ErrataLedger {
        digits: ctx.digits(),
        identities: identities?,
        prefactors: rest.0?,
        expansions: rest.1?,
    })
}
