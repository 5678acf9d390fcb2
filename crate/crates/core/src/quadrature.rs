//! Arbitrary-precision quadrature pieces: a tanh-sinh rule for `(0, x0]`
//! that tolerates algebraic endpoint singularities, and Gauss-Legendre panels
//! for smooth stretches of the real line.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rug::Float;

use crate::error::{Error, Result};
use crate::precision::{pow10, PrecisionContext};
use crate::specfun;

/// A quadrature result together with the magnitude of the largest sampled
/// contribution, which scales the rounding error.
#[derive(Debug, Clone)]
pub struct Estimate {
    pub value: Float,
    pub error: Float,
    pub evaluations: usize,
}

const MAX_LEVEL: u32 = 12;

/// `int_0^x0 f(x) dx` by the double exponential substitution
/// `x = x0 / (1 + exp(-pi sinh t))`. The integrand may behave like `x^a` with
/// `a > -1` at the origin; it is never evaluated at `0` or `x0` exactly.
pub fn tanh_sinh<F>(mut f: F, x0: &Float, ctx: &PrecisionContext) -> Result<Estimate>
where
    F: FnMut(&Float) -> Result<Float>,
{
    let prec = ctx.bits();
    let pi = specfun::pi(ctx);
    let eps = ctx.working_eps();
    let tiny = pow10(prec, -((ctx.digits() + ctx.guard()) as i32) - 10);
    let mut evaluations = 0usize;

    let mut sample = |t: &Float| -> Result<Float> {
        let u = Float::with_val(prec, t.sinh_ref()) * &pi;
        let e = Float::with_val(prec, (-u).exp_ref());
        let denom = Float::with_val(prec, &e + 1u32);
        let x = Float::with_val(prec, denom.recip_ref());
        let one_minus = Float::with_val(prec, &e / &denom);
        let w = Float::with_val(prec, t.cosh_ref()) * &pi * &x * &one_minus * x0;
        let arg = Float::with_val(prec, &x * x0);
        evaluations += 1;
        if arg.is_zero() || w.is_zero() {
            return Ok(Float::new(prec));
        }
        Ok(f(&arg)? * w)
    };

    // Coarse pass with h = 1/2 finds where the terms become negligible.
    let h0 = Float::with_val(prec, 0.5);
    let mut coarse = sample(&Float::new(prec))?;
    let mut scale = Float::with_val(prec, coarse.abs_ref());
    let mut limits = [0i64; 2];
    for (side, dir) in [(0usize, 1i64), (1, -1)] {
        let mut quiet = 0;
        let mut j = 0i64;
        while quiet < 3 && j < 40 {
            j += 1;
            let t = Float::with_val(prec, &h0 * (dir * j));
            let term = sample(&t)?;
            let mag = Float::with_val(prec, term.abs_ref());
            if mag > scale {
                scale.clone_from(&mag);
            }
            quiet = if mag <= Float::with_val(prec, &tiny * &scale) { quiet + 1 } else { 0 };
            coarse += term;
        }
        limits[side] = j;
    }
    let t_hi = limits[0] as f64 * 0.5;
    let t_lo = -(limits[1] as f64) * 0.5;

    // Refinement: level k adds the odd multiples of 2^-(k+1).
    let mut sum = coarse; // sum of terms on the current grid, before the step factor
    let mut prev = Float::with_val(prec, &sum * &h0);
    let mut h = h0;
    for level in 1..=MAX_LEVEL {
        h /= 2u32;
        let steps = 1i64 << (level + 1);
        let first = (t_lo * steps as f64).floor() as i64;
        let last = (t_hi * steps as f64).ceil() as i64;
        for j in first..=last {
            if j % 2 == 0 {
                continue;
            }
            let t = Float::with_val(prec, &h * j);
            sum += sample(&t)?;
        }
        let current = Float::with_val(prec, &sum * &h);
        let diff = Float::with_val(prec, &current - &prev).abs();
        let size = Float::with_val(prec, current.abs_ref()).max(&Float::with_val(prec, 1));
        if level >= 3 && diff <= Float::with_val(prec, &eps * &size) {
            let rounding = Float::with_val(prec, &scale * &eps) * evaluations as u32;
            return Ok(Estimate { value: current, error: diff + rounding, evaluations });
        }
        prev = current;
    }
    Err(Error::Quadrature(format!("tanh-sinh did not converge after {MAX_LEVEL} levels")))
}

/// Positive Gauss-Legendre nodes on `[-1, 1]` with their weights; the rule is
/// symmetric, and for odd `n` the first node is `0`.
#[derive(Debug)]
pub struct GaussLegendre {
    pub n: usize,
    pub nodes: Vec<Float>,
    pub weights: Vec<Float>,
}

type RuleCache = Mutex<HashMap<(usize, u32), Arc<GaussLegendre>>>;

fn rule_cache() -> &'static RuleCache {
    static CACHE: OnceLock<RuleCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `(P_n(x), P_{n-1}(x))` by the three-term recurrence.
fn legendre(n: usize, x: &Float) -> (Float, Float) {
    let prec = x.prec();
    let mut p0 = Float::with_val(prec, 1);
    let mut p1 = x.clone();
    for k in 1..n {
        let p2 = (Float::with_val(prec, x * &p1) * (2 * k + 1) as u32 - Float::with_val(prec, &p0 * k as u32))
            / (k + 1) as u32;
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}

/// Cached `n`-point rule at `prec` bits, nodes refined by Newton iteration.
pub fn gauss_legendre(n: usize, prec: u32) -> Arc<GaussLegendre> {
    if let Some(rule) = rule_cache().lock().expect("rule cache poisoned").get(&(n, prec)) {
        return Arc::clone(rule);
    }
    let work = prec + 32;
    let tol = Float::with_val(work, Float::i_exp(1, -(prec as i32)));
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for i in 1..=n.div_ceil(2) {
        let guess = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
        let mut x = Float::with_val(work, guess);
        let mut deriv = Float::new(work);
        for _ in 0..100 {
            let (pn, pm) = legendre(n, &x);
            let x2m1 = Float::with_val(work, x.square_ref()) - 1u32;
            deriv = (Float::with_val(work, &x * &pn) - pm) * n as u32 / &x2m1;
            let dx = Float::with_val(work, &pn / &deriv);
            x -= &dx;
            if dx.abs() < tol {
                let (pn, pm) = legendre(n, &x);
                let x2m1 = Float::with_val(work, x.square_ref()) - 1u32;
                deriv = (Float::with_val(work, &x * &pn) - pm) * n as u32 / x2m1;
                break;
            }
        }
        let one_minus = 1u32 - Float::with_val(work, x.square_ref());
        let w = Float::with_val(work, 2u32) / (one_minus * deriv.square());
        nodes.push(Float::with_val(prec, &x));
        weights.push(Float::with_val(prec, &w));
    }
    nodes.reverse();
    weights.reverse();
    if n % 2 == 1 {
        nodes[0] = Float::new(prec);
    }
    let rule = Arc::new(GaussLegendre { n, nodes, weights });
    rule_cache().lock().expect("rule cache poisoned").insert((n, prec), Arc::clone(&rule));
    rule
}

impl GaussLegendre {
    /// `int_a^b f`.
    pub fn integrate<F>(&self, f: &mut F, a: &Float, b: &Float) -> Result<Float>
    where
        F: FnMut(&Float) -> Result<Float>,
    {
        let prec = a.prec();
        let mid = Float::with_val(prec, a + b) / 2u32;
        let half = Float::with_val(prec, b - a) / 2u32;
        let mut acc = Float::new(prec);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let dx = Float::with_val(prec, &half * x);
            if x.is_zero() {
                acc += f(&mid)? * w;
                continue;
            }
            let right = f(&Float::with_val(prec, &mid + &dx))?;
            let left = f(&Float::with_val(prec, &mid - &dx))?;
            acc += (right + left) * w;
        }
        Ok(acc * half)
    }
}

/// Node count that resolves integrands analytic in a strip of half-width
/// about one around each panel of width two.
pub fn default_gauss_points(ctx: &PrecisionContext) -> usize {
    let digits = (ctx.digits() + ctx.guard()) as f64;
    (digits * std::f64::consts::LN_10 / (2.0 * 3f64.ln())).ceil() as usize + 10
}
