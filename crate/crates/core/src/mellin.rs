//! Registry of integral representations and their numerical verification.
//!
//! Every entry is an integral `int_0^inf x^{a s + b} F(x) dx` where `F` is a
//! hyperbolic or digamma function with its singular head subtracted. The
//! integral is split into three parts: tanh-sinh on `(0, x0]`, Gauss-Legendre
//! panels on `[x0, T]` and closed-form integrals of the algebraic and
//! logarithmic asymptotics on `[T, inf)`. What is left past `T` decays
//! exponentially.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Float, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::bernoulli;
use crate::laurent::{self, FunctionKind};
use crate::powlog::{eval_sum, PowLog};
use crate::precision::{rational_to_decimal, to_decimal, PrecisionContext};
use crate::quadrature::{default_gauss_points, gauss_legendre, tanh_sinh};
use crate::specfun;

/// Below this abscissa the subtracted integrand comes from its series.
pub const SERIES_THRESHOLD: f64 = 0.1;

/// Exponential rate at which the integrand approaches its tail terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DecayRate {
    One,
    Two,
    TwoPi,
}

impl DecayRate {
    pub fn value(&self) -> f64 {
        match self {
            DecayRate::One => 1.0,
            DecayRate::Two => 2.0,
            DecayRate::TwoPi => 2.0 * std::f64::consts::PI,
        }
    }
}

/// The subtracted function `F`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Integrand {
    /// `sign * (f(x) - sum head)`; head entries are `(exponent, num, den)`.
    Hyperbolic { kind: FunctionKind, head: &'static [(i32, i64, i64)], sign: i32 },
    /// `coth u (1 - (u / sinh u)^s)`, paired with the kernel `u^{-s}`.
    CothPowerDifference,
    /// `psi(ix) + psi(-ix) + 2 gamma`
    DigammaSym,
    /// `psi(ix) psi(-ix) - 1/x^2 - gamma^2 - pi^2/3`
    DigammaNorm,
}

type Closed = fn(&Float, &PrecisionContext) -> Result<Float>;

/// One integral representation `lhs(s) = prefactor(s) * int_0^inf x^{a s + b} F(x) dx`.
#[derive(Clone)]
pub struct RepresentationSpec {
    pub id: &'static str,
    pub integrand_text: &'static str,
    pub prefactor_text: &'static str,
    pub lhs_text: &'static str,
    pub integrand: Integrand,
    /// `(a, b)` in the kernel `x^{a s + b}`
    pub kernel: (i32, i32),
    /// open interval of valid real `s`
    pub strip: (i32, i32),
    /// removable singularities inside the strip
    pub excluded: &'static [i32],
    /// leading exponent of `F` as `x -> 0+`
    pub small_x_exponent: i32,
    pub decay: DecayRate,
    prefactor: Closed,
    lhs: Closed,
    /// The printed multiplier, when it differs from the verified one.
    pub printed_prefactor: Option<(&'static str, Closed)>,
}

impl fmt::Debug for RepresentationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RepresentationSpec")
            .field("id", &self.id)
            .field("integrand", &self.integrand_text)
            .field("strip", &self.strip)
            .finish()
    }
}

fn pi_pow(shift: i32, s: &Float, ctx: &PrecisionContext) -> Float {
    let e = Float::with_val(ctx.bits(), s + shift);
    specfun::pi(ctx).pow(e)
}

fn sin_half(s: &Float, ctx: &PrecisionContext) -> Float {
    (specfun::pi(ctx) * s / 2u32).sin()
}

fn cos_half(s: &Float, ctx: &PrecisionContext) -> Float {
    (specfun::pi(ctx) * s / 2u32).cos()
}

fn zeta_at(s: &Float, shift: i32, ctx: &PrecisionContext) -> Result<Float> {
    specfun::zeta(&Float::with_val(ctx.bits(), s + shift), ctx)
}

fn two_pow(e: &Float, ctx: &PrecisionContext) -> Float {
    Float::with_val(ctx.bits(), 2).pow(e)
}

fn pre_r1(s: &Float, c: &PrecisionContext) -> Result<Float> {
    Ok(pi_pow(-1, s, c) * sin_half(s, c))
}

fn pre_r3(s: &Float, c: &PrecisionContext) -> Result<Float> {
    Ok(-(pi_pow(-1, s, c) * sin_half(s, c)) / Float::with_val(c.bits(), s - 1u32))
}

fn pre_r7(s: &Float, c: &PrecisionContext) -> Result<Float> {
    Ok(pi_pow(0, s, c) * cos_half(s, c))
}

fn pre_r8(s: &Float, c: &PrecisionContext) -> Result<Float> {
    Ok(pi_pow(1, s, c) * sin_half(s, c) / Float::with_val(c.bits(), s + 1u32))
}

fn pre_r10(s: &Float, c: &PrecisionContext) -> Result<Float> {
    Ok(-(pi_pow(0, s, c) * sin_half(s, c)))
}

fn r11_magnitude(s: &Float, c: &PrecisionContext) -> Float {
    let p = c.bits();
    let two = two_pow(&Float::with_val(p, s + 2u32), c) - 1u32;
    pi_pow(1, s, c) * sin_half(s, c) / (Float::with_val(p, s + 1u32) * two)
}

fn pre_r11(s: &Float, c: &PrecisionContext) -> Result<Float> {
    Ok(-r11_magnitude(s, c))
}

fn pre_r11_printed(s: &Float, c: &PrecisionContext) -> Result<Float> {
    Ok(r11_magnitude(s, c))
}

fn pre_r12(s: &Float, c: &PrecisionContext) -> Result<Float> {
    Ok(-(pi_pow(2, s, c) * cos_half(s, c)))
}

fn pre_r12_printed(s: &Float, c: &PrecisionContext) -> Result<Float> {
    Ok(pi_pow(2, s, c) * cos_half(s, c))
}

fn pre_r13(s: &Float, c: &PrecisionContext) -> Result<Float> {
    Ok(-(pi_pow(3, s, c) * sin_half(s, c)) / Float::with_val(c.bits(), s + 1u32))
}

fn pre_r13_printed(s: &Float, c: &PrecisionContext) -> Result<Float> {
    Ok(pi_pow(3, s, c) * sin_half(s, c) / Float::with_val(c.bits(), s + 1u32))
}

fn pre_r38(s: &Float, c: &PrecisionContext) -> Result<Float> {
    Ok(sin_half(s, c) / specfun::pi(c))
}

fn pre_r38_printed(s: &Float, c: &PrecisionContext) -> Result<Float> {
    Ok(-(specfun::pi(c) / sin_half(s, c)))
}

fn pre_r42(s: &Float, c: &PrecisionContext) -> Result<Float> {
    Ok(sin_half(s, c))
}

fn pre_one(_: &Float, c: &PrecisionContext) -> Result<Float> {
    Ok(Float::with_val(c.bits(), 1))
}

fn lhs_zeta(s: &Float, c: &PrecisionContext) -> Result<Float> {
    zeta_at(s, 0, c)
}

fn lhs_zeta1(s: &Float, c: &PrecisionContext) -> Result<Float> {
    zeta_at(s, 1, c)
}

fn lhs_zeta2(s: &Float, c: &PrecisionContext) -> Result<Float> {
    zeta_at(s, 2, c)
}

fn lhs_r2(s: &Float, c: &PrecisionContext) -> Result<Float> {
    let p = c.bits();
    let a = two_pow(&Float::with_val(p, -s), c) - 1u32;
    Ok(a * pi_pow(0, &Float::with_val(p, -s), c) * zeta_at(s, 1, c)? / cos_half(s, c))
}

fn lhs_r10(s: &Float, c: &PrecisionContext) -> Result<Float> {
    specfun::eta_half(&Float::with_val(c.bits(), s + 1u32), c)
}

fn lhs_r12(s: &Float, c: &PrecisionContext) -> Result<Float> {
    let p = c.bits();
    let poly = Float::with_val(p, s + 1u32) * Float::with_val(p, s + 2u32) / 2u32;
    let pi2 = specfun::pi(c).square();
    Ok(poly * zeta_at(s, 3, c)? - pi2 * zeta_at(s, 1, c)?)
}

fn lhs_r13(s: &Float, c: &PrecisionContext) -> Result<Float> {
    let p = c.bits();
    let poly = Float::with_val(p, s + 2u32) * Float::with_val(p, s + 3u32) / 6u32;
    let pi2 = specfun::pi(c).square() * 4u32 / 3u32;
    Ok(poly * zeta_at(s, 4, c)? - pi2 * zeta_at(s, 2, c)?)
}

fn lhs_r42(s: &Float, c: &PrecisionContext) -> Result<Float> {
    Ok(specfun::pi(c) * specfun::chi(&Float::with_val(c.bits(), s + 1u32), c)?)
}

fn lhs_rob(z: &Float, c: &PrecisionContext) -> Result<Float> {
    let p = c.bits();
    let a = two_pow(&Float::with_val(p, -z), c) - 1u32;
    Ok(a * specfun::gamma_fn(z, c)? * specfun::zeta(z, c)? * 2u32)
}

const STANDARD: (i32, i32) = (-1, -1);

fn build_registry() -> Vec<RepresentationSpec> {
    use FunctionKind::*;
    use Integrand::Hyperbolic;
    vec![
        RepresentationSpec {
            id: "R1",
            integrand_text: "coth(u) (u^-s - sinh(u)^-s)",
            prefactor_text: "pi^(s-1) sin(pi s/2)",
            lhs_text: "zeta(s)",
            integrand: Integrand::CothPowerDifference,
            kernel: (-1, 0),
            strip: (1, 2),
            excluded: &[],
            small_x_exponent: 1,
            decay: DecayRate::One,
            prefactor: pre_r1,
            lhs: lhs_zeta,
            printed_prefactor: None,
        },
        RepresentationSpec {
            id: "R2",
            integrand_text: "x^(-s-1) (csch x - 1/x)",
            prefactor_text: "1",
            lhs_text: "(2^-s - 1) pi^-s zeta(s+1) / cos(pi s/2)",
            integrand: Hyperbolic { kind: Csch, head: &[(-1, 1, 1)], sign: 1 },
            kernel: STANDARD,
            strip: (-1, 1),
            excluded: &[0],
            small_x_exponent: 1,
            decay: DecayRate::One,
            prefactor: pre_one,
            lhs: lhs_r2,
            printed_prefactor: None,
        },
        RepresentationSpec {
            id: "R3",
            integrand_text: "x^(1-s) (csch^2 x - 1/x^2)",
            prefactor_text: "-pi^(s-1) sin(pi s/2) / (s-1)",
            lhs_text: "zeta(s)",
            integrand: Hyperbolic { kind: Csch2, head: &[(-2, 1, 1)], sign: 1 },
            kernel: (-1, 1),
            strip: (0, 2),
            excluded: &[1],
            small_x_exponent: 0,
            decay: DecayRate::Two,
            prefactor: pre_r3,
            lhs: lhs_zeta,
            printed_prefactor: None,
        },
        RepresentationSpec {
            id: "R7",
            integrand_text: "x^(-s-1) (coth x - 1/x)",
            prefactor_text: "pi^s cos(pi s/2)",
            lhs_text: "zeta(s+1)",
            integrand: Hyperbolic { kind: Coth, head: &[(-1, 1, 1)], sign: 1 },
            kernel: STANDARD,
            strip: (0, 1),
            excluded: &[],
            small_x_exponent: 1,
            decay: DecayRate::Two,
            prefactor: pre_r7,
            lhs: lhs_zeta1,
            printed_prefactor: None,
        },
        RepresentationSpec {
            id: "R8",
            integrand_text: "x^(-s-1) (coth^2 x - 1/x^2 - 2/3)",
            prefactor_text: "pi^(s+1) sin(pi s/2) / (s+1)",
            lhs_text: "zeta(s+2)",
            integrand: Hyperbolic { kind: Coth2, head: &[(-2, 1, 1), (0, 2, 3)], sign: 1 },
            kernel: STANDARD,
            strip: (0, 2),
            excluded: &[],
            small_x_exponent: 2,
            decay: DecayRate::Two,
            prefactor: pre_r8,
            lhs: lhs_zeta2,
            printed_prefactor: None,
        },
        RepresentationSpec {
            id: "R9",
            integrand_text: "x^(-s-1) (csch^2 x - 1/x^2 + 1/3)",
            prefactor_text: "pi^(s+1) sin(pi s/2) / (s+1)",
            lhs_text: "zeta(s+2)",
            integrand: Hyperbolic { kind: Csch2, head: &[(-2, 1, 1), (0, -1, 3)], sign: 1 },
            kernel: STANDARD,
            strip: (0, 2),
            excluded: &[],
            small_x_exponent: 2,
            decay: DecayRate::Two,
            prefactor: pre_r8,
            lhs: lhs_zeta2,
            printed_prefactor: None,
        },
        RepresentationSpec {
            id: "R10",
            integrand_text: "x^(-s-1) (sech x - 1)",
            prefactor_text: "-pi^s sin(pi s/2)",
            lhs_text: "eta(s+1, 1/2)",
            integrand: Hyperbolic { kind: Sech, head: &[(0, 1, 1)], sign: 1 },
            kernel: STANDARD,
            strip: (0, 2),
            excluded: &[],
            small_x_exponent: 2,
            decay: DecayRate::One,
            prefactor: pre_r10,
            lhs: lhs_r10,
            printed_prefactor: None,
        },
        RepresentationSpec {
            id: "R11",
            integrand_text: "x^(-s-1) (sech^2 x - 1)",
            prefactor_text: "-pi^(s+1) sin(pi s/2) / ((s+1) (2^(s+2) - 1))",
            lhs_text: "zeta(s+2)",
            integrand: Hyperbolic { kind: Sech2, head: &[(0, 1, 1)], sign: 1 },
            kernel: STANDARD,
            strip: (0, 2),
            excluded: &[],
            small_x_exponent: 2,
            decay: DecayRate::Two,
            prefactor: pre_r11,
            lhs: lhs_zeta2,
            printed_prefactor: Some(("pi^(s+1) sin(pi s/2) / ((s+1) (2^(s+2) - 1))", pre_r11_printed)),
        },
        RepresentationSpec {
            id: "R12",
            integrand_text: "x^(-s-1) (coth^3 x - 1/x^3 - 1/x)",
            prefactor_text: "-pi^(s+2) cos(pi s/2)",
            lhs_text: "(s+1)(s+2) zeta(s+3) / 2 - pi^2 zeta(s+1)",
            integrand: Hyperbolic { kind: Coth3, head: &[(-3, 1, 1), (-1, 1, 1)], sign: 1 },
            kernel: STANDARD,
            strip: (0, 1),
            excluded: &[],
            small_x_exponent: 1,
            decay: DecayRate::Two,
            prefactor: pre_r12,
            lhs: lhs_r12,
            printed_prefactor: Some(("pi^(s+2) cos(pi s/2)", pre_r12_printed)),
        },
        RepresentationSpec {
            id: "R13",
            integrand_text: "x^(-s-1) (coth^4 x - 1/x^4 - 4/(3x^2) - 26/45)",
            prefactor_text: "-pi^(s+3) sin(pi s/2) / (s+1)",
            lhs_text: "(s+2)(s+3) zeta(s+4) / 6 - 4 pi^2 zeta(s+2) / 3",
            integrand: Hyperbolic { kind: Coth4, head: &[(-4, 1, 1), (-2, 4, 3), (0, 26, 45)], sign: 1 },
            kernel: STANDARD,
            strip: (0, 2),
            excluded: &[],
            small_x_exponent: 2,
            decay: DecayRate::Two,
            prefactor: pre_r13,
            lhs: lhs_r13,
            printed_prefactor: Some(("pi^(s+3) sin(pi s/2) / (s+1)", pre_r13_printed)),
        },
        RepresentationSpec {
            id: "R38",
            integrand_text: "x^(-s-1) (psi(ix) + psi(-ix) + 2 gamma)",
            prefactor_text: "sin(pi s/2) / pi",
            lhs_text: "zeta(s+1)",
            integrand: Integrand::DigammaSym,
            kernel: STANDARD,
            strip: (0, 1),
            excluded: &[],
            small_x_exponent: 2,
            decay: DecayRate::TwoPi,
            prefactor: pre_r38,
            lhs: lhs_zeta1,
            printed_prefactor: Some(("-pi / sin(pi s/2)", pre_r38_printed)),
        },
        RepresentationSpec {
            id: "R42",
            integrand_text: "x^(-s-1) (psi(ix) psi(-ix) - 1/x^2 - gamma^2 - pi^2/3)",
            prefactor_text: "sin(pi s/2)",
            lhs_text: "pi chi(s+1)",
            integrand: Integrand::DigammaNorm,
            kernel: STANDARD,
            strip: (0, 1),
            excluded: &[],
            small_x_exponent: 2,
            decay: DecayRate::TwoPi,
            prefactor: pre_r42,
            lhs: lhs_r42,
            printed_prefactor: None,
        },
        RepresentationSpec {
            id: "ROB",
            integrand_text: "x^(z-1) (1/x - csch x)",
            prefactor_text: "1",
            lhs_text: "2 (2^-z - 1) Gamma(z) zeta(z)",
            integrand: Hyperbolic { kind: Csch, head: &[(-1, 1, 1)], sign: -1 },
            kernel: (1, -1),
            strip: (-1, 1),
            excluded: &[0],
            small_x_exponent: 1,
            decay: DecayRate::One,
            prefactor: pre_one,
            lhs: lhs_rob,
            printed_prefactor: None,
        },
    ]
}

/// All registered representations, in a fixed order.
pub fn registry() -> &'static [RepresentationSpec] {
    static REGISTRY: OnceLock<Vec<RepresentationSpec>> = OnceLock::new();
    REGISTRY.get_or_init(build_registry)
}

pub fn lookup(id: &str) -> Result<&'static RepresentationSpec> {
    registry()
        .iter()
        .find(|r| r.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| Error::UnknownId(id.to_string()))
}

impl RepresentationSpec {
    pub fn prefactor(&self, s: &Float, ctx: &PrecisionContext) -> Result<Float> {
        (self.prefactor)(s, ctx)
    }

    pub fn lhs(&self, s: &Float, ctx: &PrecisionContext) -> Result<Float> {
        (self.lhs)(s, ctx)
    }

    /// Exponent of the full integrand at the origin, `a s + b + small_x_exponent`.
    pub fn leading_exponent(&self, s: f64) -> f64 {
        self.kernel.0 as f64 * s + (self.kernel.1 + self.small_x_exponent) as f64
    }

    pub fn check_point(&self, s: &Rational) -> Result<()> {
        let (lo, hi) = self.strip;
        if *s <= lo || *s >= hi {
            return Err(Error::OutsideStrip {
                id: self.id.into(),
                s: s.to_string(),
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        if self.excluded.iter().any(|e| *s == *e) {
            return Err(Error::ExcludedPoint { id: self.id.into(), s: s.to_string() });
        }
        Ok(())
    }

    /// `s_i = a + (b - a) i / 6` for `i = 1..5`; a point on an excluded value
    /// moves right by `(b - a) / 12`.
    pub fn default_grid(&self) -> Vec<Rational> {
        let (a, b) = self.strip;
        let width = Rational::from(b - a);
        (1..=5)
            .map(|i| {
                let s = Rational::from(a) + Rational::from(&width * i) / 6;
                if self.excluded.iter().any(|e| s == *e) {
                    s + Rational::from(&width / 12)
                } else {
                    s
                }
            })
            .collect()
    }

    fn limit_at_infinity(&self) -> i64 {
        match self.integrand {
            Integrand::Hyperbolic {
                kind: FunctionKind::Coth | FunctionKind::Coth2 | FunctionKind::Coth3 | FunctionKind::Coth4,
                ..
            } => 1,
            _ => 0,
        }
    }
}

/// Settings for [`integrate`].
#[derive(Debug, Clone, Copy)]
pub struct QuadratureConfig {
    pub ctx: PrecisionContext,
    /// split between tanh-sinh and the panels
    pub x0: f64,
    /// multiplies the default truncation point
    pub tail_factor: f64,
    pub panel_width: f64,
    /// Gauss-Legendre points per panel; `None` sizes them from the precision
    pub gauss_points: Option<usize>,
}

impl QuadratureConfig {
    pub fn new(ctx: PrecisionContext) -> Self {
        Self { ctx, x0: 1.0, tail_factor: 1.0, panel_width: 2.0, gauss_points: None }
    }

    /// `max(30, 1.2 digits ln 10 / rate)`, scaled by `tail_factor`.
    pub fn cutoff(&self, rep: &RepresentationSpec) -> f64 {
        let digits = self.ctx.digits() as f64;
        (1.2 * digits * std::f64::consts::LN_10 / rep.decay.value()).max(30.0) * self.tail_factor
    }

    pub fn with_doubled_tail(mut self) -> Self {
        self.tail_factor *= 2.0;
        self
    }

    pub fn with_doubled_panels(mut self) -> Self {
        self.panel_width /= 2.0;
        self
    }
}

/// A quadrature value with its error accounting.
#[derive(Debug, Clone)]
pub struct Integral {
    pub value: Float,
    /// promised bound: `10^-digits * max(1, |value|)`
    pub error_bound: Float,
    /// sum of the error estimates of the individual quadrature pieces
    pub estimated_error: Float,
}

type SeriesCache = Mutex<HashMap<(&'static str, u32, i32), Arc<Vec<Float>>>>;

fn series_cache() -> &'static SeriesCache {
    static CACHE: OnceLock<SeriesCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn radius_of(rep: &RepresentationSpec) -> f64 {
    match rep.integrand {
        Integrand::Hyperbolic { kind, .. } => match kind {
            FunctionKind::Sech | FunctionKind::Sech2 => std::f64::consts::FRAC_PI_2,
            _ => std::f64::consts::PI,
        },
        _ => 1.0,
    }
}

/// Exclusive order of the small-x series at the precision of `ctx`.
fn series_order(rep: &RepresentationSpec, ctx: &PrecisionContext) -> i32 {
    let need = (ctx.digits() + ctx.guard()) as f64 + 5.0;
    let per_order = -(SERIES_THRESHOLD / radius_of(rep)).log10();
    rep.small_x_exponent + (need / per_order).ceil() as i32 + 2
}

/// `psi(ix) psi(-ix) - 1/x^2 - gamma^2 - pi^2/3` as a series in `x^2`, from
/// the expansions of the real and imaginary parts of `psi(ix)`.
fn digamma_norm_coefficients(order: i32, ctx: &PrecisionContext) -> Result<Vec<Float>> {
    let prec = ctx.bits();
    let half = (order / 2 + 2) as usize;
    let zeta = |k: usize| specfun::zeta(&ctx.float(k as u32), ctx);
    let signed = |m: usize, v: Float| if m % 2 == 1 { v } else { -v };
    // r_m = (-1)^{m+1} zeta(2m+1),  j_m = (-1)^{m+1} zeta(2m)
    let mut r = vec![Float::new(prec)];
    let mut j = vec![Float::new(prec)];
    for m in 1..=half {
        r.push(signed(m, zeta(2 * m + 1)?));
        j.push(signed(m, zeta(2 * m)?));
    }
    let gamma = specfun::euler_gamma(ctx);
    let mut coeffs = vec![Float::new(prec); order.max(0) as usize];
    for n in 1..half - 1 {
        let e = 2 * n;
        if e >= coeffs.len() {
            break;
        }
        let mut c = Float::with_val(prec, &gamma * &r[n]) * -2i32;
        for i in 1..n {
            c += Float::with_val(prec, &r[i] * &r[n - i]);
        }
        c += Float::with_val(prec, &j[n + 1] * 2u32);
        for i in 1..=n {
            c += Float::with_val(prec, &j[i] * &j[n + 1 - i]);
        }
        coeffs[e] = c;
    }
    Ok(coeffs)
}

/// Coefficients of `F` from `x^{small_x_exponent}` up to the series order.
fn small_x_series(rep: &'static RepresentationSpec, ctx: &PrecisionContext) -> Result<Arc<Vec<Float>>> {
    let order = series_order(rep, ctx);
    let key = (rep.id, ctx.bits(), order);
    if let Some(v) = series_cache().lock().expect("series cache poisoned").get(&key) {
        return Ok(Arc::clone(v));
    }
    let prec = ctx.bits();
    let lead = rep.small_x_exponent;
    let coeffs: Vec<Float> = match rep.integrand {
        Integrand::Hyperbolic { kind, sign, .. } => {
            let series = laurent::closed_form_series(kind, order, ctx)?;
            (lead..order)
                .map(|e| series.coeff_float(e, prec).expect("within order") * sign)
                .collect()
        }
        Integrand::DigammaSym => {
            let series = laurent::digamma_sym_series(order, ctx)?;
            (lead..order).map(|e| series.coeff_float(e, prec).expect("within order")).collect()
        }
        Integrand::DigammaNorm => digamma_norm_coefficients(order, ctx)?[lead as usize..].to_vec(),
        Integrand::CothPowerDifference => Vec::new(),
    };
    let coeffs = Arc::new(coeffs);
    series_cache().lock().expect("series cache poisoned").insert(key, Arc::clone(&coeffs));
    Ok(coeffs)
}

fn horner(coeffs: &[Float], x: &Float, lead: i32, prec: u32) -> Float {
    let mut acc = Float::new(prec);
    for c in coeffs.iter().rev() {
        acc *= x;
        acc += c;
    }
    if lead != 0 {
        acc *= Float::with_val(prec, x.pow(lead));
    }
    acc
}

/// `sinh(u)/u - 1`, summed directly for small `u` to keep relative accuracy.
fn sinhc_minus_one(u: &Float, prec: u32) -> Float {
    if *u >= 0.5 {
        return Float::with_val(prec, u.sinh_ref()) / u - 1u32;
    }
    let u2 = Float::with_val(prec, u.square_ref());
    let mut term = Float::with_val(prec, &u2 / 6u32);
    let mut acc = term.clone();
    let mut k = 1u32;
    let floor = Float::with_val(prec, Float::i_exp(1, -(prec as i32)));
    while Float::with_val(prec, term.abs_ref()) > Float::with_val(prec, &acc * &floor) {
        k += 1;
        term *= &u2;
        term /= (2 * k) * (2 * k + 1);
        acc += &term;
    }
    acc
}

/// Value of the subtracted function `F(x)` at parameter `s` (only R1 depends
/// on `s`). Below [`SERIES_THRESHOLD`] the closed-form series is used.
pub fn integrand_value(rep: &'static RepresentationSpec, x: &Float, s: &Float, ctx: &PrecisionContext) -> Result<Float> {
    Evaluator::new(rep, s, ctx)?.subtracted(x)
}

struct Evaluator {
    rep: &'static RepresentationSpec,
    ctx: PrecisionContext,
    s: Float,
    kernel_exponent: Float,
    series: Arc<Vec<Float>>,
    threshold: Float,
}

impl Evaluator {
    fn new(rep: &'static RepresentationSpec, s: &Float, ctx: &PrecisionContext) -> Result<Self> {
        let prec = ctx.bits();
        let kernel_exponent = Float::with_val(prec, s * rep.kernel.0) + rep.kernel.1;
        Ok(Self {
            rep,
            ctx: *ctx,
            s: Float::with_val(prec, s),
            kernel_exponent,
            series: small_x_series(rep, ctx)?,
            threshold: Float::with_val(prec, SERIES_THRESHOLD),
        })
    }

    fn subtracted(&self, x: &Float) -> Result<Float> {
        let ctx = &self.ctx;
        let prec = ctx.bits();
        match self.rep.integrand {
            Integrand::CothPowerDifference => {
                let d = sinhc_minus_one(x, prec);
                let ln = Float::with_val(prec, d.ln_1p_ref());
                let inner = -Float::with_val(prec, (ln * &self.s * -1i32).exp_m1_ref());
                let coth = Float::with_val(prec, x.tanh_ref()).recip();
                Ok(coth * inner)
            }
            _ if *x < self.threshold => Ok(horner(&self.series, x, self.rep.small_x_exponent, prec)),
            Integrand::Hyperbolic { kind, head, sign } => {
                // extra bits absorb the cancellation against the head near the threshold
                let wide = ctx.boosted(20);
                let wp = wide.bits();
                let xw = Float::with_val(wp, x);
                let mut v = laurent::function_value(kind, &xw, &wide)?;
                for &(e, num, den) in head {
                    let c = Float::with_val(wp, Rational::from((num, den)));
                    v -= c * Float::with_val(wp, (&xw).pow(e));
                }
                Ok(Float::with_val(prec, v * sign))
            }
            Integrand::DigammaSym => {
                let wide = ctx.boosted(10);
                Ok(Float::with_val(prec, laurent::digamma_sym_value(&Float::with_val(wide.bits(), x), &wide)?))
            }
            Integrand::DigammaNorm => {
                let wide = ctx.boosted(10);
                Ok(Float::with_val(prec, laurent::chi_ix_variant(&Float::with_val(wide.bits(), x), &wide)?))
            }
        }
    }

    fn full(&self, x: &Float) -> Result<Float> {
        let prec = self.ctx.bits();
        Ok(self.subtracted(x)? * Float::with_val(prec, x.pow(&self.kernel_exponent)))
    }

    /// Algebraic and logarithmic asymptotics of the full integrand; terms
    /// stop once they fall below the working epsilon at `t`.
    fn tail_terms(&self, t: &Float) -> Vec<PowLog> {
        let ctx = &self.ctx;
        let prec = ctx.bits();
        let k = &self.kernel_exponent;
        let shifted = |d: i32| Float::with_val(prec, k + d);
        let f = |v: Float| Float::with_val(prec, v);
        match self.rep.integrand {
            Integrand::Hyperbolic { head, sign, .. } => {
                let mut out = Vec::new();
                let limit = self.rep.limit_at_infinity();
                if limit != 0 {
                    out.push(PowLog::new(f(Float::with_val(prec, limit * sign as i64)), shifted(0), 0));
                }
                for &(e, num, den) in head {
                    let c = Float::with_val(prec, Rational::from((num, den))) * (-sign);
                    out.push(PowLog::new(c, shifted(e), 0));
                }
                out
            }
            Integrand::CothPowerDifference => vec![PowLog::new(f(Float::with_val(prec, 1)), shifted(0), 0)],
            Integrand::DigammaSym => {
                let mut out = vec![
                    PowLog::new(f(Float::with_val(prec, 2)), shifted(0), 1),
                    PowLog::new(specfun::euler_gamma(ctx) * 2u32, shifted(0), 0),
                ];
                for (i, a) in digamma_asymptotic_coefficients(t, ctx).into_iter().enumerate() {
                    out.push(PowLog::new(a * 2u32, shifted(-2 * (i as i32 + 1)), 0));
                }
                out
            }
            Integrand::DigammaNorm => {
                let a = digamma_asymptotic_coefficients(t, ctx);
                let pi = specfun::pi(ctx);
                let gamma = specfun::euler_gamma(ctx);
                let constant = -(Float::with_val(prec, pi.square_ref()) / 12u32) - gamma.square();
                let mut out = vec![
                    PowLog::new(f(Float::with_val(prec, 1)), shifted(0), 2),
                    PowLog::new(constant, shifted(0), 0),
                    PowLog::new(pi / 2u32, shifted(-1), 0),
                    PowLog::new(f(Float::with_val(prec, -0.75)), shifted(-2), 0),
                ];
                for (i, ai) in a.iter().enumerate() {
                    let k = i + 1;
                    out.push(PowLog::new(Float::with_val(prec, ai * 2u32), shifted(-2 * k as i32), 1));
                    let mut sq = Float::new(prec);
                    for jdx in 1..k {
                        sq += Float::with_val(prec, &a[jdx - 1] * &a[k - jdx - 1]);
                    }
                    if !sq.is_zero() {
                        out.push(PowLog::new(sq, shifted(-2 * k as i32), 0));
                    }
                }
                out
            }
        }
    }
}

/// `a_k` in `Re psi(ix) ~ ln x + sum_k a_k x^{-2k}`, i.e. `a_k = -(-1)^k B_{2k} / (2k)`,
/// truncated where `|a_k| t^{-2k}` drops below the working epsilon or stops
/// decreasing.
fn digamma_asymptotic_coefficients(t: &Float, ctx: &PrecisionContext) -> Vec<Float> {
    let prec = ctx.bits();
    let eps = Float::with_val(prec, ctx.working_eps() / 1000u32);
    let t2 = Float::with_val(prec, t.square_ref());
    let mut out = Vec::new();
    let mut pow = Float::with_val(prec, 1);
    let mut last = Float::with_val(prec, rug::float::Special::Infinity);
    for k in 1..=400u32 {
        pow /= &t2;
        let mut a = Float::with_val(prec, bernoulli(2 * k) / Rational::from(2 * k));
        if k % 2 == 0 {
            a = -a;
        }
        let size = Float::with_val(prec, &a * &pow).abs();
        if size > last {
            break;
        }
        out.push(a);
        if size < eps {
            break;
        }
        last = size;
    }
    out
}

/// `int_0^inf x^{a s + b} F(x) dx` for real `s` inside the strip.
pub fn integrate(rep: &'static RepresentationSpec, s: &Rational, cfg: &QuadratureConfig) -> Result<Integral> {
    rep.check_point(s)?;
    let ctx = &cfg.ctx;
    let prec = ctx.bits();
    let s = Float::with_val(prec, s);
    let eval = Evaluator::new(rep, &s, ctx)?;
    let x0 = Float::with_val(prec, cfg.x0);
    let t_cut = Float::with_val(prec, cfg.cutoff(rep));

    let head = tanh_sinh(|x| eval.full(x), &x0, ctx)?;
    let mut value = head.value;
    let mut estimated = head.error;

    let points = cfg.gauss_points.unwrap_or_else(|| default_gauss_points(ctx));
    let rule = gauss_legendre(points, prec);
    let span = cfg.cutoff(rep) - cfg.x0;
    let panels = (span / cfg.panel_width).ceil().max(1.0) as u32;
    let width = Float::with_val(prec, &t_cut - &x0) / panels;
    let mut f = |x: &Float| eval.full(x);
    let mut left = x0.clone();
    for i in 1..=panels {
        let right = if i == panels { t_cut.clone() } else { Float::with_val(prec, &x0 + Float::with_val(prec, &width * i)) };
        value += rule.integrate(&mut f, &left, &right)?;
        left = right;
    }

    let tails = eval.tail_terms(&t_cut);
    for term in &tails {
        value += term.integral_to_infinity(&t_cut);
    }
    // exponentially small remainder: |F - tails| at T over the decay rate
    let remainder = Float::with_val(prec, eval.full(&t_cut)? - eval_sum(&tails, &t_cut, prec)).abs()
        / rep.decay.value();
    estimated += remainder;
    estimated += Float::with_val(prec, value.abs_ref()) * ctx.working_eps() * (panels * points as u32);

    let scale = Float::with_val(prec, value.abs_ref()).max(&Float::with_val(prec, 1));
    let error_bound = ctx.target_eps() * scale;
    if estimated > error_bound {
        return Err(Error::Quadrature(format!(
            "{} at s = {}: estimated error {} exceeds {}",
            rep.id,
            to_decimal(&s, 10),
            to_decimal(&estimated, 3),
            to_decimal(&error_bound, 3)
        )));
    }
    Ok(Integral { value, error_bound, estimated_error: estimated })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointReport {
    pub s: String,
    pub lhs: String,
    pub rhs: String,
    pub residual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub digits: u32,
    pub points: Vec<PointReport>,
    pub max_residual: String,
    pub pass: bool,
}

/// Residuals are reported with this many significant digits.
const RESIDUAL_DIGITS: u32 = 6;

/// Relative residual `|prefactor * integral - lhs| / |lhs|` at `s`, using a
/// caller-chosen prefactor.
fn residual_with(
    rep: &'static RepresentationSpec,
    s: &Rational,
    prefactor: Closed,
    cfg: &QuadratureConfig,
) -> Result<(Float, Float, Float)> {
    let ctx = &cfg.ctx;
    let sf = Float::with_val(ctx.bits(), s);
    let integral = integrate(rep, s, cfg)?;
    let rhs = prefactor(&sf, ctx)? * integral.value;
    let lhs = rep.lhs(&sf, ctx)?;
    let residual = Float::with_val(ctx.bits(), &rhs - &lhs).abs() / Float::with_val(ctx.bits(), lhs.abs_ref());
    Ok((lhs, rhs, residual))
}

/// Checks `lhs(s) = prefactor(s) * integral(s)` on `points` (or the default
/// grid). Points are evaluated in parallel and reported in input order.
pub fn verify_representation(
    rep: &'static RepresentationSpec,
    points: Option<&[Rational]>,
    cfg: &QuadratureConfig,
) -> Result<VerificationReport> {
    let grid = match points {
        Some(p) => p.to_vec(),
        None => rep.default_grid(),
    };
    if grid.is_empty() {
        return Err(Error::EmptyRange);
    }
    for s in &grid {
        rep.check_point(s)?;
    }
    let ctx = &cfg.ctx;
    let digits = ctx.digits();
    let results: Vec<Result<(Float, Float, Float)>> =
        grid.par_iter().map(|s| residual_with(rep, s, rep.prefactor, cfg)).collect();
    let tolerance = crate::precision::pow10(ctx.bits(), -((digits - 10) as i32));
    let mut max = Float::new(ctx.bits());
    let mut reports = Vec::with_capacity(grid.len());
    for (s, r) in grid.iter().zip(results) {
        let (lhs, rhs, residual) = r?;
        if residual > max {
            max.clone_from(&residual);
        }
        reports.push(PointReport {
            s: rational_to_decimal(s, digits),
            lhs: to_decimal(&lhs, digits),
            rhs: to_decimal(&rhs, digits),
            residual: to_decimal(&residual, RESIDUAL_DIGITS),
        });
    }
    Ok(VerificationReport {
        id: rep.id.to_string(),
        digits,
        points: reports,
        max_residual: to_decimal(&max, RESIDUAL_DIGITS),
        pass: max <= tolerance,
    })
}

/// A representation whose printed multiplier fails while the corrected one passes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrefactorErratum {
    pub id: String,
    pub printed: String,
    pub corrected: String,
    pub s: String,
    pub printed_residual: String,
    pub corrected_residual: String,
}

/// Evaluates every printed multiplier that differs from the verified one at
/// the first default grid point.
pub fn prefactor_errata(cfg: &QuadratureConfig) -> Result<Vec<PrefactorErratum>> {
    let entries: Vec<&'static RepresentationSpec> =
        registry().iter().filter(|r| r.printed_prefactor.is_some()).collect();
    entries
        .par_iter()
        .map(|rep| {
            let (printed_text, printed) = rep.printed_prefactor.expect("filtered above");
            let s = rep.default_grid()[0].clone();
            let (_, _, bad) = residual_with(rep, &s, printed, cfg)?;
            let (_, _, good) = residual_with(rep, &s, rep.prefactor, cfg)?;
            Ok(PrefactorErratum {
                id: rep.id.to_string(),
                printed: printed_text.to_string(),
                corrected: rep.prefactor_text.to_string(),
                s: rational_to_decimal(&s, cfg.ctx.digits()),
                printed_residual: to_decimal(&bad, RESIDUAL_DIGITS),
                corrected_residual: to_decimal(&good, RESIDUAL_DIGITS),
            })
        })
        .collect()
}
