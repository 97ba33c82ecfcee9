//! Arithmetic functions over exact rationals: divisor sums, Bernoulli
//! numbers, distinct-partition counts, Legendre symbols.
//!
//! Values are memoized in an [`ArithmeticCache`]; the tables only grow.
//! A process-wide shared cache backs the free functions.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rug::ops::{Pow, RemRounding};

use crate::error::{Error, Result};
use crate::{Integer, Rational};

/// Oracle-style enumeration stays comfortable up to roughly this n;
/// larger arguments are allowed but callers may want to warn.
pub const ORACLE_RECOMMENDED_MAX: u64 = 60;

/// n! as an exact integer.
pub fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

/// Binomial coefficient C(n, k) as an exact integer.
pub fn binomial(n: u32, k: u32) -> Integer {
    Integer::from(Integer::binomial_u(n, k))
}

/// Rising factorial (a)_m = a (a+1) ... (a+m-1) over the integers.
pub fn rising_factorial(a: i64, m: u32) -> Integer {
    let mut acc = Integer::from(1);
    for i in 0..m as i64 {
        acc *= a + i;
    }
    acc
}

/// Divisors of n in increasing order.
pub(crate) fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

fn sigma_uncached(j: i64, n: u64) -> Rational {
    let mut acc = Rational::new();
    for d in divisors(n) {
        let p = Integer::from(d).pow(j.unsigned_abs() as u32);
        if j >= 0 {
            acc += p;
        } else {
            acc += Rational::from((Integer::from(1), p));
        }
    }
    acc
}

/// Is p an odd prime? Trial division; the twisted checks only use small p.
pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Legendre symbol (a/p) in {-1, 0, 1}, via Euler's criterion.
pub fn legendre_symbol(a: i64, p: u64) -> Result<i32> {
    if !is_odd_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let pz = Integer::from(p);
    let mut base = Integer::from(a);
    base = base.rem_euc(&pz);
    if base.is_zero() {
        return Ok(0);
    }
    let e = Integer::from((p - 1) / 2);
    let r = base.pow_mod(&e, &pz).expect("nonnegative exponent");
    if r == 1 {
        Ok(1)
    } else {
        Ok(-1)
    }
}

#[derive(Default)]
struct CacheInner {
    sigma: HashMap<(i64, u64), Rational>,
    /// bernoulli[m] = B_m, filled for all m < len.
    bernoulli: Vec<Rational>,
    /// distinct[n] = number of partitions of n into distinct parts.
    distinct: Vec<Integer>,
}

/// Memoized arithmetic tables: divisor sums, Bernoulli numbers and
/// distinct-partition counts. Shareable across threads; clone for a
/// private copy.
pub struct ArithmeticCache {
    inner: Mutex<CacheInner>,
}

impl ArithmeticCache {
    pub fn new() -> Self {
        ArithmeticCache {
            inner: Mutex::new(CacheInner::default()),
        }
    }

    /// sigma(j, n) = sum of d^j over the divisors d of n. j may be negative.
    pub fn sigma(&self, j: i64, n: u64) -> Result<Rational> {
        if n == 0 {
            return Err(Error::Domain("sigma requires n >= 1".into()));
        }
        let mut inner = self.inner.lock().unwrap();
        if let Some(v) = inner.sigma.get(&(j, n)) {
            return Ok(v.clone());
        }
        let v = sigma_uncached(j, n);
        inner.sigma.insert((j, n), v.clone());
        Ok(v)
    }

    /// B_m for even m >= 2, by the recurrence
    /// sum_{j=0}^{m} C(m+1, j) B_j = 0 with B_0 = 1, B_1 = -1/2.
    pub fn bernoulli(&self, m: u32) -> Result<Rational> {
        if m == 0 || m % 2 != 0 {
            return Err(Error::Domain(format!(
                "bernoulli requires even m >= 2, got {m}"
            )));
        }
        let mut inner = self.inner.lock().unwrap();
        let table = &mut inner.bernoulli;
        if table.is_empty() {
            table.push(Rational::from(1));
            table.push(Rational::from((-1, 2)));
        }
        while table.len() <= m as usize {
            let k = table.len() as u32;
            if k % 2 == 1 {
                table.push(Rational::new());
                continue;
            }
            let mut acc = Rational::new();
            for (j, bj) in table.iter().enumerate() {
                acc += bj.clone() * binomial(k + 1, j as u32);
            }
            acc /= -Rational::from(k + 1);
            table.push(acc);
        }
        Ok(table[m as usize].clone())
    }

    /// b(n), the number of partitions of n into distinct parts, for all
    /// n <= max. Computed as the coefficients of prod_{m>=1} (1 + q^m).
    pub fn distinct_counts(&self, max: usize) -> Vec<Integer> {
        let mut inner = self.inner.lock().unwrap();
        if inner.distinct.len() <= max {
            let mut c = vec![Integer::new(); max + 1];
            c[0] = Integer::from(1);
            for m in 1..=max {
                for n in (m..=max).rev() {
                    let add = c[n - m].clone();
                    c[n] += add;
                }
            }
            inner.distinct = c;
        }
        inner.distinct[..=max].to_vec()
    }

    /// b(n) for a single n.
    pub fn distinct_count(&self, n: usize) -> Integer {
        self.distinct_counts(n)[n].clone()
    }
}

impl Default for ArithmeticCache {
    fn default() -> Self {
        Self::new()
    }
}

impl Clone for ArithmeticCache {
    fn clone(&self) -> Self {
        let inner = self.inner.lock().unwrap();
        ArithmeticCache {
            inner: Mutex::new(CacheInner {
                sigma: inner.sigma.clone(),
                bernoulli: inner.bernoulli.clone(),
                distinct: inner.distinct.clone(),
            }),
        }
    }
}

/// Process-wide shared cache backing the free functions below.
pub fn shared_cache() -> &'static ArithmeticCache {
    static CACHE: OnceLock<ArithmeticCache> = OnceLock::new();
    CACHE.get_or_init(ArithmeticCache::new)
}

/// sigma(j, n) through the shared cache.
pub fn sigma(j: i64, n: u64) -> Result<Rational> {
    shared_cache().sigma(j, n)
}

/// B_m (even m >= 2) through the shared cache.
pub fn bernoulli(m: u32) -> Result<Rational> {
    shared_cache().bernoulli(m)
}

/// b(n) through the shared cache.
pub fn distinct_count(n: usize) -> Integer {
    shared_cache().distinct_count(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn sigma_basic_values() {
        assert_eq!(sigma(1, 6).unwrap(), rat(12, 1));
        assert_eq!(sigma(-1, 2).unwrap(), rat(3, 2));
        assert_eq!(sigma(-3, 2).unwrap(), rat(9, 8));
        assert_eq!(sigma(0, 12).unwrap(), rat(6, 1));
    }

    #[test]
    fn sigma_rejects_zero() {
        assert!(sigma(1, 0).is_err());
    }

    #[test]
    fn sigma_multiplicative_on_coprime_arguments() {
        let cache = ArithmeticCache::new();
        for j in [-3i64, -1, 0, 1, 2] {
            for m in 1u64..=30 {
                for n in 1u64..=30 {
                    if Integer::from(m).gcd(&Integer::from(n)) == 1 {
                        let lhs = cache.sigma(j, m * n).unwrap();
                        let rhs = cache.sigma(j, m).unwrap() * cache.sigma(j, n).unwrap();
                        assert_eq!(lhs, rhs, "j={j} m={m} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(2).unwrap(), rat(1, 6));
        assert_eq!(bernoulli(4).unwrap(), rat(-1, 30));
        assert_eq!(bernoulli(12).unwrap(), rat(-691, 2730));
    }

    #[test]
    fn bernoulli_rejects_odd_and_zero() {
        assert!(bernoulli(0).is_err());
        assert!(bernoulli(3).is_err());
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_symbol(2, 7).unwrap(), 1);
        assert_eq!(legendre_symbol(3, 5).unwrap(), -1);
        assert_eq!(legendre_symbol(10, 5).unwrap(), 0);
        assert_eq!(legendre_symbol(-1, 3).unwrap(), -1);
        assert!(legendre_symbol(1, 9).is_err());
        assert!(legendre_symbol(1, 2).is_err());
    }

    #[test]
    fn distinct_counts_start() {
        let b = shared_cache().distinct_counts(10);
        let expect = [1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10];
        for (n, e) in expect.iter().enumerate() {
            assert_eq!(b[n], Integer::from(*e), "b({n})");
        }
    }

    #[test]
    fn rising_factorial_identity() {
        // (2-2k+r)_{k-1-r} = (-1)^(k+r+1) (2k-r-2)! / (k-1)!
        for k in 2i64..=6 {
            for r in 0..=(k - 1) {
                let lhs = rising_factorial(2 - 2 * k + r, (k - 1 - r) as u32);
                let sign = if (k + r + 1) % 2 == 0 { 1i32 } else { -1 };
                let num: Integer = factorial((2 * k - r - 2) as u32) * sign;
                let den = factorial((k - 1) as u32);
                let (q, rem) = num.div_rem(den);
                assert_eq!(rem, 0);
                assert_eq!(lhs, q, "k={k} r={r}");
            }
        }
    }
}
