//! Products of special values with rational coefficients and explicit powers
//! of pi. Expressions of this shape are exactly what the Laurent closed forms
//! and the summation rules are written in, so both modules build on them.

use std::collections::HashMap;
use std::fmt;

use rug::{Float, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{bernoulli, euler_number, factorial, pow2};
use crate::pigraded::PiGraded;
use crate::precision::PrecisionContext;
use crate::specfun;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Symbol {
    Zeta(i64),
    Bernoulli(i64),
    Euler(i64),
    /// `eta(k, 1/2)`
    EtaHalf(i64),
    /// `sum_{n>=1} H_n / n^m`
    EulerSumH(i64),
}

impl Symbol {
    pub fn index(&self) -> i64 {
        match *self {
            Symbol::Zeta(k) | Symbol::Bernoulli(k) | Symbol::Euler(k) | Symbol::EtaHalf(k) | Symbol::EulerSumH(k) => k,
        }
    }

    pub fn with_index(&self, k: i64) -> Symbol {
        match self {
            Symbol::Zeta(_) => Symbol::Zeta(k),
            Symbol::Bernoulli(_) => Symbol::Bernoulli(k),
            Symbol::Euler(_) => Symbol::Euler(k),
            Symbol::EtaHalf(_) => Symbol::EtaHalf(k),
            Symbol::EulerSumH(_) => Symbol::EulerSumH(k),
        }
    }

    pub fn same_kind(&self, other: &Symbol) -> bool {
        std::mem::discriminant(self) == std::mem::discriminant(other)
    }

    /// True when the symbol is a divergent value such as `zeta(1)`.
    pub fn is_divergent(&self) -> bool {
        matches!(self, Symbol::Zeta(1)) || matches!(self, Symbol::EulerSumH(m) if *m <= 1)
    }

    /// Exact value, or `NeedsPrecision` for values with no known closed form.
    pub fn exact(&self) -> Result<PiGraded> {
        match *self {
            Symbol::Zeta(1) => Err(Error::Divergent { function: "zeta", at: "1".into() }),
            Symbol::Zeta(k) if k >= 0 && k % 2 == 0 => Ok(specfun::zeta_even_exact((k / 2) as u32)),
            // zeta(-n) = (-1)^n B_{n+1} / (n+1)
            Symbol::Zeta(k) if k < 0 => {
                let n = (-k) as u32;
                let mut q = bernoulli(n + 1) / Rational::from(n + 1);
                if n % 2 == 1 {
                    q = -q;
                }
                Ok(PiGraded::rational(q))
            }
            Symbol::Bernoulli(k) if k >= 0 => Ok(PiGraded::rational(bernoulli(k as u32))),
            Symbol::Euler(k) if k >= 0 => Ok(PiGraded::rational(Rational::from(euler_number(k as u32)))),
            Symbol::EtaHalf(k) if k >= 1 && k % 2 == 1 => Ok(specfun::eta_half_odd_exact(((k - 1) / 2) as u32)),
            Symbol::Bernoulli(k) | Symbol::Euler(k) => {
                Err(Error::InvalidArgument(format!("negative index {k} in {self}")))
            }
            _ => Err(Error::NeedsPrecision(self.to_string())),
        }
    }

    pub fn numeric(&self, ctx: &PrecisionContext) -> Result<Float> {
        if let Ok(v) = self.exact() {
            return Ok(v.to_float(&specfun::pi(ctx)));
        }
        match *self {
            Symbol::Zeta(k) => specfun::zeta(&ctx.float(k), ctx),
            Symbol::EtaHalf(k) => specfun::eta_half(&ctx.float(k), ctx),
            Symbol::EulerSumH(m) => specfun::euler_sum_h(&ctx.float(m), ctx),
            _ => self.exact().map(|v| v.to_float(&specfun::pi(ctx))),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Zeta(k) => write!(f, "zeta({k})"),
            Symbol::Bernoulli(k) => write!(f, "B({k})"),
            Symbol::Euler(k) => write!(f, "E({k})"),
            Symbol::EtaHalf(k) => write!(f, "eta({k},1/2)"),
            Symbol::EulerSumH(m) => write!(f, "S_H({m})"),
        }
    }
}

/// `coeff * pi^pi_power * prod(symbols)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: Rational,
    pub pi_power: i32,
    pub symbols: Vec<Symbol>,
}

impl Term {
    pub fn new(coeff: Rational, pi_power: i32, symbols: Vec<Symbol>) -> Self {
        Self { coeff, pi_power, symbols }
    }

    pub fn constant(coeff: Rational) -> Self {
        Self::new(coeff, 0, Vec::new())
    }

    pub fn mul(&self, other: &Term) -> Term {
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        Term::new(Rational::from(&self.coeff * &other.coeff), self.pi_power + other.pi_power, symbols)
    }

    pub fn scale(&self, q: &Rational, pi_shift: i32) -> Term {
        Term::new(Rational::from(&self.coeff * q), self.pi_power + pi_shift, self.symbols.clone())
    }

    pub fn is_divergent(&self) -> bool {
        self.symbols.iter().any(Symbol::is_divergent)
    }

    pub fn sorted_symbols(&self) -> Vec<Symbol> {
        let mut s = self.symbols.clone();
        s.sort();
        s
    }

    pub fn exact(&self) -> Result<PiGraded> {
        let mut acc = PiGraded::monomial(self.coeff.clone(), self.pi_power);
        for s in &self.symbols {
            acc = &acc * &s.exact()?;
        }
        Ok(acc)
    }

    pub fn numeric(&self, ctx: &PrecisionContext, cache: &mut HashMap<Symbol, Float>) -> Result<Float> {
        let prec = ctx.bits();
        let pi = specfun::pi(ctx);
        let mut acc = Float::with_val(prec, &self.coeff) * Float::with_val(prec, rug::ops::Pow::pow(&pi, self.pi_power));
        for s in &self.symbols {
            let v = match cache.get(s) {
                Some(v) => v.clone(),
                None => {
                    let v = s.numeric(ctx)?;
                    cache.insert(*s, v.clone());
                    v
                }
            };
            acc *= v;
        }
        Ok(acc)
    }

    /// Rewrites every even zeta value through `B_{2j}`:
    /// `zeta(2j) = (-1)^{j-1} 2^{2j-1} B_{2j} / (2j)! * pi^{2j}`.
    pub fn zeta_to_bernoulli(&self) -> Term {
        let mut out = Term::new(self.coeff.clone(), self.pi_power, Vec::new());
        for s in &self.symbols {
            match *s {
                Symbol::Zeta(k) if k >= 0 && k % 2 == 0 => {
                    let j = k / 2;
                    let mut q = pow2(2 * j - 1) / Rational::from(factorial(k as u32));
                    if j % 2 == 0 {
                        q = -q;
                    }
                    out.coeff *= q;
                    out.pi_power += k as i32;
                    out.symbols.push(Symbol::Bernoulli(k));
                }
                other => out.symbols.push(other),
            }
        }
        out
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)?;
        if self.pi_power != 0 {
            write!(f, "*pi^{}", self.pi_power)?;
        }
        for s in &self.symbols {
            write!(f, "*{s}")?;
        }
        Ok(())
    }
}

/// A sum of terms.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Expr(pub Vec<Term>);

impl Expr {
    pub fn zero() -> Self {
        Self(Vec::new())
    }

    pub fn term(t: Term) -> Self {
        Self(vec![t])
    }

    pub fn terms(&self) -> &[Term] {
        &self.0
    }

    pub fn push(&mut self, t: Term) {
        self.0.push(t);
    }

    pub fn extend(&mut self, other: Expr) {
        self.0.extend(other.0);
    }

    pub fn is_divergent(&self) -> bool {
        self.0.iter().any(Term::is_divergent)
    }

    pub fn exact(&self) -> Result<PiGraded> {
        let mut acc = PiGraded::zero();
        for t in &self.0 {
            acc = &acc + &t.exact()?;
        }
        Ok(acc)
    }

    pub fn numeric(&self, ctx: &PrecisionContext, cache: &mut HashMap<Symbol, Float>) -> Result<Float> {
        let mut acc = Float::new(ctx.bits());
        for t in &self.0 {
            acc += t.numeric(ctx, cache)?;
        }
        Ok(acc)
    }

    pub fn zeta_to_bernoulli(&self) -> Expr {
        Expr(self.0.iter().map(Term::zeta_to_bernoulli).collect())
    }

    pub fn scale(&self, q: &Rational, pi_shift: i32) -> Expr {
        Expr(self.0.iter().map(|t| t.scale(q, pi_shift)).collect())
    }

    /// Merges terms with equal symbol multisets and pi powers; zero
    /// coefficients are kept so that term structure is stable across `n`.
    pub fn collect(&self) -> Expr {
        let mut out: Vec<Term> = Vec::new();
        for t in &self.0 {
            let key = t.sorted_symbols();
            match out.iter_mut().find(|o| o.pi_power == t.pi_power && o.symbols == key) {
                Some(o) => o.coeff += &t.coeff,
                None => out.push(Term::new(t.coeff.clone(), t.pi_power, key)),
            }
        }
        Expr(out)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}
