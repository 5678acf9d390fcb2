//! Terms `c * x^e * (ln x)^p` and the closed forms needed to integrate or
//! differentiate them. Used for quadrature tails and Euler-Maclaurin tails.

use rug::ops::Pow;
use rug::Float;

#[derive(Debug, Clone)]
pub struct PowLog {
    pub coeff: Float,
    pub exponent: Float,
    pub log_power: u32,
}

impl PowLog {
    pub fn new(coeff: Float, exponent: Float, log_power: u32) -> Self {
        Self { coeff, exponent, log_power }
    }

    pub fn eval(&self, x: &Float) -> Float {
        let prec = self.coeff.prec();
        let mut v = Float::with_val(prec, x.pow(&self.exponent));
        if self.log_power > 0 {
            let l = Float::with_val(prec, x.ln_ref());
            v *= l.pow(self.log_power);
        }
        v * &self.coeff
    }

    /// `int_t^inf c x^e (ln x)^p dx`; requires `e < -1` and `t > 0`.
    pub fn integral_to_infinity(&self, t: &Float) -> Float {
        let prec = self.coeff.prec();
        // a = -e - 1 > 0;  I_p = t^{-a} (ln t)^p / a + (p / a) I_{p-1}
        let a = Float::with_val(prec, -&self.exponent) - 1u32;
        let t_pow = Float::with_val(prec, t.pow(&-a.clone()));
        let ln_t = Float::with_val(prec, t.ln_ref());
        let mut acc = Float::with_val(prec, &t_pow / &a);
        for p in 1..=self.log_power {
            let lead = Float::with_val(prec, &t_pow * Float::with_val(prec, (&ln_t).pow(p))) / &a;
            acc = lead + acc * p / &a;
        }
        acc * &self.coeff
    }

    /// First derivative as a sum of terms.
    pub fn derivative(&self) -> Vec<PowLog> {
        let prec = self.coeff.prec();
        let e1 = Float::with_val(prec, &self.exponent - 1u32);
        let mut out = vec![PowLog::new(
            Float::with_val(prec, &self.coeff * &self.exponent),
            e1.clone(),
            self.log_power,
        )];
        if self.log_power > 0 {
            out.push(PowLog::new(Float::with_val(prec, &self.coeff * self.log_power), e1, self.log_power - 1));
        }
        out
    }
}

/// Evaluates `sum_terms`.
pub fn eval_sum(terms: &[PowLog], x: &Float, prec: u32) -> Float {
    terms.iter().fold(Float::new(prec), |acc, t| acc + t.eval(x))
}

/// The `order`-th derivative of a sum of terms, with like terms merged.
pub fn derivative_n(terms: &[PowLog], order: u32) -> Vec<PowLog> {
    let mut cur = terms.to_vec();
    for _ in 0..order {
        let mut next: Vec<PowLog> = Vec::new();
        for t in cur.iter().flat_map(PowLog::derivative) {
            match next.iter_mut().find(|o| o.log_power == t.log_power && o.exponent == t.exponent) {
                Some(o) => o.coeff += &t.coeff,
                None => next.push(t),
            }
        }
        cur = next;
    }
    cur
}
