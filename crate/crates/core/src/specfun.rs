//! Arbitrary-precision special functions on the real line (plus complex
//! digamma). Every function is a pure function of its arguments and the
//! precision context and returns a value at `ctx.bits()` of precision.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float, Rational};

use crate::error::{Error, Result};
use crate::exactnum::{bernoulli, euler_number, factorial};
use crate::pigraded::PiGraded;
use crate::powlog::{derivative_n, eval_sum, PowLog};
use crate::precision::PrecisionContext;

pub fn pi(ctx: &PrecisionContext) -> Float {
    Float::with_val(ctx.bits(), Constant::Pi)
}

pub fn ln2(ctx: &PrecisionContext) -> Float {
    Float::with_val(ctx.bits(), Constant::Log2)
}

/// Euler-Mascheroni constant (MPFR's fast series).
pub fn euler_gamma(ctx: &PrecisionContext) -> Float {
    Float::with_val(ctx.bits(), Constant::Euler)
}

fn is_nonpositive_integer(x: &Float) -> bool {
    x.is_integer() && *x <= 0
}

fn show(x: &Float) -> String {
    crate::precision::to_decimal(x, 17)
}

/// `B_{2k} / (2k)!` as a float.
fn bernoulli_over_factorial(k: u32, prec: u32) -> Float {
    Float::with_val(prec, bernoulli(2 * k) / Rational::from(factorial(2 * k)))
}

/// Euler-Maclaurin evaluation of `sum_{n>=0} (n+a)^{-s}` without the pole
/// term. Returns `(partial, N + a)`; the Hurwitz value is
/// `partial + (N+a)^{1-s}/(s-1)`.
fn hurwitz_em_parts(s: &Float, a: &Float, ctx: &PrecisionContext) -> (Float, Float) {
    let prec = ctx.bits();
    let total_digits = ctx.digits() + ctx.guard();
    let s_abs = s.to_f64().abs();
    let n_terms = total_digits + s_abs.ceil() as u32 + 10;
    let mut head = Float::new(prec);
    for n in 0..n_terms {
        let base = Float::with_val(prec, a + n);
        head += base.pow(&-s.clone());
    }
    let x = Float::with_val(prec, a + n_terms);
    let x_s = Float::with_val(prec, (&x).pow(&-s.clone()));
    head += Float::with_val(prec, &x_s / 2u32);

    let eps = ctx.working_eps() / 100u32;
    let x2 = Float::with_val(prec, x.square_ref());
    // T_k = B_{2k}/(2k)! * s(s+1)...(s+2k-2) * x^{-s-2k+1}
    let mut poch = s.clone();
    let mut x_pow = Float::with_val(prec, &x_s / &x);
    let k_max = 4 * total_digits + 20;
    for k in 1..=k_max {
        if k > 1 {
            let a1 = Float::with_val(prec, s + (2 * k - 3));
            let a2 = Float::with_val(prec, s + (2 * k - 2));
            poch *= a1 * a2;
            x_pow /= &x2;
        }
        let term = bernoulli_over_factorial(k, prec) * &poch * &x_pow;
        let small = Float::with_val(prec, term.abs_ref()) <= Float::with_val(prec, head.abs_ref()) * &eps;
        head += term;
        if small {
            break;
        }
    }
    (head, x)
}

/// Hurwitz zeta `zeta(s, a) = sum_{n>=0} (n+a)^{-s}`, continued to all real
/// `s != 1` by Euler-Maclaurin summation.
pub fn hurwitz_zeta(s: &Float, a: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if *s == 1 {
        return Err(Error::Pole { function: "hurwitz_zeta", at: "s = 1".into() });
    }
    if *a <= 0 {
        return Err(Error::InvalidArgument(format!("hurwitz_zeta needs a > 0, got {}", show(a))));
    }
    let prec = ctx.bits();
    let (head, x) = hurwitz_em_parts(s, a, ctx);
    let one_minus_s = Float::with_val(prec, 1 - s);
    let pole = Float::with_val(prec, x.pow(&one_minus_s)) / Float::with_val(prec, s - 1u32);
    Ok(head + pole)
}

/// Riemann zeta for real `s != 1`. Euler-Maclaurin for `s >= 0`, the
/// functional equation for `s < 0`.
pub fn zeta(s: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let prec = ctx.bits();
    if *s == 1 {
        return Err(Error::Pole { function: "zeta", at: "s = 1".into() });
    }
    if *s >= 0 {
        return hurwitz_zeta(s, &Float::with_val(prec, 1), ctx);
    }
    if s.is_integer() && Float::with_val(prec, s / 2u32).is_integer() {
        return Ok(Float::new(prec));
    }
    // zeta(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1-s) zeta(1-s)
    let p = pi(ctx);
    let one_minus_s = Float::with_val(prec, 1 - s);
    let two_s = Float::with_val(prec, Float::with_val(prec, 2).pow(s));
    let pi_pow = Float::with_val(prec, (&p).pow(Float::with_val(prec, s - 1u32)));
    let sine = (Float::with_val(prec, &p * s) / 2u32).sin();
    let gamma = Float::with_val(prec, one_minus_s.gamma_ref());
    let z = zeta(&one_minus_s, ctx)?;
    Ok(two_s * pi_pow * sine * gamma * z)
}

/// `zeta(2n)` as an exact rational multiple of `pi^{2n}`; `n = 0` gives `-1/2`.
pub fn zeta_even_exact(n: u32) -> PiGraded {
    // zeta(2n) = (-1)^{n-1} 2^{2n-1} B_{2n} / (2n)! * pi^{2n}
    if n == 0 {
        return PiGraded::rational(Rational::from((-1, 2)));
    }
    let mut q = bernoulli(2 * n) / Rational::from(factorial(2 * n));
    q *= crate::exactnum::pow2(2 * n as i64 - 1);
    if n.is_multiple_of(2) {
        q = -q;
    }
    PiGraded::monomial(q, 2 * n as i32)
}

/// `eta_half(2j+1)` as an exact multiple of `pi^{2j+1}` via the Euler numbers.
pub fn eta_half_odd_exact(j: u32) -> PiGraded {
    // E_{2j} = (-1)^j 2 (2j)! eta(2j+1, 1/2) / pi^{2j+1}
    let mut q = Rational::from(euler_number(2 * j)) / (Rational::from(factorial(2 * j)) * 2u32);
    if j % 2 == 1 {
        q = -q;
    }
    PiGraded::monomial(q, 2 * j as i32 + 1)
}

/// Dirichlet eta `(1 - 2^{1-s}) zeta(s)`, entire; `eta(1) = ln 2`.
pub fn dirichlet_eta(s: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let prec = ctx.bits();
    if *s == 1 {
        return Ok(ln2(ctx));
    }
    // 1 - 2^{1-s} = -expm1((1-s) ln 2), accurate near s = 1
    let factor = -Float::with_val(prec, Float::with_val(prec, 1 - s) * ln2(ctx)).exp_m1();
    Ok(factor * zeta(s, ctx)?)
}

/// `eta(s, 1/2) = sum_{n>=0} (-1)^n (n + 1/2)^{-s} = 2^{-s}(zeta(s,1/4) - zeta(s,3/4))`.
pub fn eta_half(s: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let prec = ctx.bits();
    let quarter = Float::with_val(prec, 0.25);
    let three_q = Float::with_val(prec, 0.75);
    let (h1, x1) = hurwitz_em_parts(s, &quarter, ctx);
    let (h3, x3) = hurwitz_em_parts(s, &three_q, ctx);
    // difference of the pole terms, finite at s = 1
    let pole_diff = if *s == 1 {
        Float::with_val(prec, &x3 / &x1).ln()
    } else {
        let e = Float::with_val(prec, 1 - s);
        (Float::with_val(prec, (&x1).pow(&e)) - Float::with_val(prec, (&x3).pow(&e))) / Float::with_val(prec, s - 1u32)
    };
    let diff = h1 - h3 + pole_diff;
    Ok(diff * Float::with_val(prec, Float::with_val(prec, 2).pow(&-s.clone())))
}

/// Dirichlet beta `sum_{n>=0} (-1)^n (2n+1)^{-s} = 2^{-s} eta(s, 1/2)`.
pub fn dirichlet_beta(s: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let prec = ctx.bits();
    Ok(eta_half(s, ctx)? * Float::with_val(prec, Float::with_val(prec, 2).pow(&-s.clone())))
}

/// Gamma function (MPFR) with explicit pole detection.
pub fn gamma_fn(z: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole { function: "gamma", at: show(z) });
    }
    Ok(Float::with_val(ctx.bits(), z.gamma_ref()))
}

pub(crate) fn cabs(z: &Complex) -> Float {
    Float::with_val(z.prec().0, z.real().hypot_ref(z.imag()))
}

fn digamma_threshold(ctx: &PrecisionContext) -> f64 {
    (0.6 * (ctx.digits() + ctx.guard()) as f64).max(10.0)
}

/// Complex digamma: upward recurrence into `|z| >= max(10, 0.6 digits)`,
/// then the Bernoulli asymptotic series.
pub fn digamma(z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let prec = ctx.bits();
    if z.imag().is_zero() && is_nonpositive_integer(z.real()) {
        return Err(Error::Pole { function: "digamma", at: show(z.real()) });
    }
    let threshold = digamma_threshold(ctx);
    let mut w = Complex::with_val(prec, z);
    let mut shift = Complex::new(prec);
    loop {
        let re = w.real().to_f64();
        let modulus = re.hypot(w.imag().to_f64());
        if re >= 0.0 && modulus >= threshold {
            break;
        }
        shift += Complex::with_val(prec, w.recip_ref());
        w += 1u32;
    }
    Ok(digamma_asymptotic_complex(&w, ctx) - shift)
}

fn digamma_asymptotic_complex(w: &Complex, ctx: &PrecisionContext) -> Complex {
    let prec = ctx.bits();
    let eps = ctx.working_eps() / 100u32;
    let mut acc = Complex::with_val(prec, w.ln_ref());
    let inv = Complex::with_val(prec, w.recip_ref());
    acc -= Complex::with_val(prec, &inv / 2u32);
    let inv2 = Complex::with_val(prec, inv.square_ref());
    let mut pow = inv2.clone();
    let scale = cabs(&acc);
    for k in 1..=(4 * (ctx.digits() + ctx.guard()) + 20) {
        let c = Float::with_val(prec, bernoulli(2 * k) / Rational::from(2 * k));
        let term = Complex::with_val(prec, &pow * &c);
        let mag = cabs(&term);
        acc -= term;
        if mag <= Float::with_val(prec, &eps * &scale) {
            break;
        }
        pow *= &inv2;
    }
    acc
}

/// Real digamma on the real axis.
pub fn digamma_real(x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let z = Complex::with_val(ctx.bits(), (x, 0));
    Ok(digamma(&z, ctx)?.into_real_imag().0)
}

/// Default direct-summation cutoff for [`euler_sum_h`].
pub fn euler_sum_cutoff(ctx: &PrecisionContext) -> u32 {
    10_000.max(200 * ctx.digits())
}

/// `sum_{n>=1} H_n / n^m` for real `m > 1`.
pub fn euler_sum_h(m: &Float, ctx: &PrecisionContext) -> Result<Float> {
    euler_sum_h_with_cutoff(m, euler_sum_cutoff(ctx), ctx)
}

/// Direct summation of the first `cutoff` terms, then an Euler-Maclaurin tail
/// built on `H_n ~ ln n + gamma + 1/(2n) - sum_j B_{2j} / (2j n^{2j})`.
pub fn euler_sum_h_with_cutoff(m: &Float, cutoff: u32, ctx: &PrecisionContext) -> Result<Float> {
    if *m <= 1 {
        return Err(Error::Divergent { function: "euler_sum_h", at: format!("m = {}", show(m)) });
    }
    if cutoff < 10 {
        return Err(Error::InvalidArgument("euler_sum_h cutoff must be at least 10".into()));
    }
    let prec = ctx.bits() + 32;
    let eps = Float::with_val(prec, ctx.working_eps());
    let m_minus_1 = Float::with_val(prec, m - 1u32);
    let int_m = if m.is_integer() { m.to_u32_saturating() } else { None };
    let mut harmonic = Float::new(prec);
    let mut sum = Float::new(prec);
    for n in 1..=cutoff {
        harmonic += Float::with_val(prec, 1) / n;
        let nf = Float::with_val(prec, n);
        let denom = match int_m {
            Some(k) => nf.pow(k),
            None => nf.pow(m),
        };
        sum += Float::with_val(prec, &harmonic / &denom);
        if n % 64 == 0 {
            // sum_{k>n} H_k k^{-m} <= int_n^inf (1 + ln x) x^{-m} dx
            let ln_n = Float::with_val(prec, n).ln();
            let bound = (ln_n + 1u32 + Float::with_val(prec, m_minus_1.recip_ref()))
                * Float::with_val(prec, n).pow(Float::with_val(prec, 1 - m))
                / &m_minus_1;
            if bound < Float::with_val(prec, &eps * &sum) {
                return Ok(Float::with_val(ctx.bits(), sum));
            }
        }
    }
    let tail = harmonic_tail(m, cutoff, ctx, prec);
    Ok(Float::with_val(ctx.bits(), sum + tail))
}

fn harmonic_tail(m: &Float, cutoff: u32, ctx: &PrecisionContext, prec: u32) -> Float {
    let f = |v: f64| Float::with_val(prec, v);
    let n = Float::with_val(prec, cutoff);
    let digits = (ctx.digits() + ctx.guard()) as f64;
    let terms_needed = (digits / (2.0 * (cutoff as f64).log10())).ceil() as u32 + 3;
    let neg_m = Float::with_val(prec, -m);
    let mut g = vec![
        PowLog::new(f(1.0), neg_m.clone(), 1),
        PowLog::new(Float::with_val(prec, Constant::Euler), neg_m.clone(), 0),
        PowLog::new(f(0.5), Float::with_val(prec, &neg_m - 1u32), 0),
    ];
    for j in 1..=terms_needed {
        let c = -Float::with_val(prec, bernoulli(2 * j) / Rational::from(2 * j));
        g.push(PowLog::new(c, Float::with_val(prec, &neg_m - 2 * j), 0));
    }
    // sum_{n>N} g(n) = int_N^inf g - g(N)/2 - sum_k B_{2k}/(2k)! g^{(2k-1)}(N)
    let mut tail = g.iter().fold(Float::new(prec), |acc, t| acc + t.integral_to_infinity(&n));
    tail -= eval_sum(&g, &n, prec) / 2u32;
    let mut deriv = derivative_n(&g, 1);
    for k in 1..=terms_needed {
        if k > 1 {
            deriv = derivative_n(&deriv, 2);
        }
        tail -= bernoulli_over_factorial(k, prec) * eval_sum(&deriv, &n, prec);
    }
    tail
}

/// `chi(s) = sum_{n>=1} psi(n) n^{-s} = sum H_n n^{-s} - gamma zeta(s) - zeta(s+1)`.
pub fn chi(s: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if *s <= 1 {
        return Err(Error::Divergent { function: "chi", at: format!("s = {}", show(s)) });
    }
    let prec = ctx.bits();
    let h = euler_sum_h(s, ctx)?;
    let z = zeta(s, ctx)?;
    let z1 = zeta(&Float::with_val(prec, s + 1u32), ctx)?;
    Ok(h - euler_gamma(ctx) * z - z1)
}
