//! Exact integer and rational sequences: Bernoulli and Euler numbers,
//! generalized harmonic numbers and binomial coefficients.
//!
//! Bernoulli and Euler numbers are memoized in process-wide tables that grow
//! on demand. Readers take a shared lock; extension happens under the write
//! lock, so every reader sees a consistent prefix.

use std::sync::{LazyLock, RwLock};

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::error::{Error, Result};

static BERNOULLI: LazyLock<RwLock<Vec<Rational>>> =
    LazyLock::new(|| RwLock::new(vec![Rational::from(1)]));

/// Even-index Euler numbers: `EULER[k] = E_{2k}`.
static EULER: LazyLock<RwLock<Vec<Integer>>> = LazyLock::new(|| RwLock::new(vec![Integer::from(1)]));

/// Bernoulli number `B_n` with the convention `B_1 = -1/2`.
pub fn bernoulli(n: u32) -> Rational {
    let idx = n as usize;
    if n >= 3 && n % 2 == 1 {
        return Rational::new();
    }
    {
        let table = BERNOULLI.read().expect("bernoulli table poisoned");
        if let Some(b) = table.get(idx) {
            return b.clone();
        }
    }
    let mut table = BERNOULLI.write().expect("bernoulli table poisoned");
    while table.len() <= idx {
        let m = table.len() as u32;
        // sum_{k=0}^{m} C(m+1, k) B_k = 0
        let mut acc = Rational::new();
        for (k, b) in table.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            acc += Rational::from(Integer::from(Integer::binomial_u(m + 1, k as u32))) * b;
        }
        table.push(-acc / (m + 1));
    }
    table[idx].clone()
}

/// Euler number `E_n`; zero for odd `n`.
pub fn euler_number(n: u32) -> Integer {
    if n % 2 == 1 {
        return Integer::new();
    }
    let half = (n / 2) as usize;
    {
        let table = EULER.read().expect("euler table poisoned");
        if let Some(e) = table.get(half) {
            return e.clone();
        }
    }
    let mut table = EULER.write().expect("euler table poisoned");
    while table.len() <= half {
        let m = table.len() as u32;
        // cosh(x) * sech(x) = 1  =>  sum_{k=0}^{m} C(2m, 2k) E_{2k} = 0
        let mut acc = Integer::new();
        for (k, e) in table.iter().enumerate() {
            acc += Integer::from(Integer::binomial_u(2 * m, 2 * k as u32)) * e;
        }
        table.push(-acc);
    }
    table[half].clone()
}

/// Generalized harmonic number `H_n^{(k)} = sum_{l=1}^{n} l^{-k}`; `H_0^{(k)} = 0`.
pub fn harmonic(n: u32, k: u32) -> Result<Rational> {
    if k == 0 {
        return Err(Error::InvalidArgument("harmonic order k must be positive".into()));
    }
    let mut acc = Rational::new();
    for l in 1..=n {
        acc += Rational::from((1, Integer::from(l).pow(k)));
    }
    Ok(acc)
}

/// Binomial coefficient `C(n, k)` for `0 <= k <= n`.
pub fn binomial(n: u32, k: u32) -> Result<Integer> {
    if k > n {
        return Err(Error::InvalidArgument(format!("binomial C({n}, {k}) needs k <= n")));
    }
    Ok(Integer::from(Integer::binomial_u(n, k)))
}

pub fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

/// `2^e` as an exact rational for any sign of `e`.
pub fn pow2(e: i64) -> Rational {
    if e >= 0 {
        Rational::from(Integer::from(1) << e as u32)
    } else {
        Rational::from((Integer::from(1), Integer::from(1) << (-e) as u32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    /// Pascal-triangle oracle, independent of GMP's binomial.
    fn pascal_row(n: usize) -> Vec<Integer> {
        let mut row = vec![Integer::from(1)];
        for _ in 0..n {
            let mut next = vec![Integer::from(1); row.len() + 1];
            for i in 1..row.len() {
                next[i] = Integer::from(&row[i - 1] + &row[i]);
            }
            row = next;
        }
        row
    }

    #[test]
    fn bernoulli_examples() {
        assert_eq!(bernoulli(0), q(1, 1));
        assert_eq!(bernoulli(1), q(-1, 2));
        assert_eq!(bernoulli(2), q(1, 6));
        assert_eq!(bernoulli(3), q(0, 1));
        assert_eq!(bernoulli(4), q(-1, 30));
        assert_eq!(bernoulli(12), q(-691, 2730));
    }

    #[test]
    fn bernoulli_recurrence_holds_to_100() {
        for n in 1..=100u32 {
            let row = pascal_row(n as usize + 1);
            let s: Rational = (0..=n).map(|k| Rational::from(&row[k as usize]) * bernoulli(k)).sum();
            assert!(s.is_zero(), "recurrence fails at n={n}");
        }
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_number(0), 1);
        assert_eq!(euler_number(2), -1);
        assert_eq!(euler_number(4), 5);
        assert_eq!(euler_number(6), -61);
        assert_eq!(euler_number(5), 0);
        assert_eq!(euler_number(10), -50521);
    }

    #[test]
    fn euler_recurrence_holds_to_60() {
        for n in 1..=60u32 {
            let row = pascal_row(2 * n as usize);
            let s: Integer = (0..=n).map(|k| &row[2 * k as usize] * euler_number(2 * k)).sum();
            assert_eq!(s, 0, "recurrence fails at n={n}");
        }
    }

    #[test]
    fn harmonic_examples() {
        assert_eq!(harmonic(0, 3).unwrap(), q(0, 1));
        assert_eq!(harmonic(3, 1).unwrap(), q(11, 6));
        assert_eq!(harmonic(2, 2).unwrap(), q(5, 4));
        assert!(harmonic(3, 0).is_err());
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2).unwrap(), 6);
        assert_eq!(binomial(0, 0).unwrap(), 1);
        assert_eq!(binomial(20, 10).unwrap(), pascal_row(20)[10]);
        assert_eq!(binomial(20, 10).unwrap(), 184756);
        assert!(binomial(3, 4).is_err());
    }

    #[test]
    fn concurrent_readers_agree() {
        let handles: Vec<_> = (0..8)
            .map(|i| std::thread::spawn(move || (bernoulli(40 + 2 * i), euler_number(40 + 2 * i))))
            .collect();
        for (i, h) in handles.into_iter().enumerate() {
            let (b, e) = h.join().unwrap();
            assert_eq!(b, bernoulli(40 + 2 * i as u32));
            assert_eq!(e, euler_number(40 + 2 * i as u32));
        }
    }

    proptest::proptest! {
        #[test]
        fn harmonic_difference_is_reciprocal_power(n in 1u32..200, k in 1u32..8) {
            let d = harmonic(n, k).unwrap() - harmonic(n - 1, k).unwrap();
            proptest::prop_assert_eq!(d, Rational::from((1, Integer::from(n).pow(k))));
        }
    }
}
