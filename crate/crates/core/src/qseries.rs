//! The q-expansions under study: the distinct-parts product, Eichler-type
//! divisor series, the g_k family, the moment generating series and its
//! Bell-polynomial structure, the k = 2 example series, and the
//! Legendre-twisted series.

use crate::arith::{binomial, legendre_symbol, sigma};
use crate::error::{Error, Result};
use crate::series::PowerSeries;
use crate::Rational;

/// (-q; q)_infinity truncated at order N: the product of (1 + q^m) for
/// m = 1..N. Factors with m > N cannot touch coefficients up to N.
/// Coefficient of q^n counts the partitions of n into distinct parts.
pub fn pochhammer_neg_q(order: usize) -> PowerSeries {
    let mut s = PowerSeries::one(order);
    for m in 1..=order {
        // multiply in place by (1 + q^m)
        for n in (m..=order).rev() {
            let add = s.coeff(n - m).clone();
            let c = s.coeff(n).clone() + add;
            s.set_coeff(n, c);
        }
    }
    s
}

/// The renormalized Eichler integral sum_{n>=1} sigma_{1-2k}(n) q^n.
pub fn eichler_coeffs(k: u32, order: usize) -> Result<PowerSeries> {
    if k < 1 {
        return Err(Error::Domain("eichler_coeffs requires k >= 1".into()));
    }
    let j = 1 - 2 * i64::from(k);
    let mut s = PowerSeries::zero(order);
    for n in 1..=order {
        s.set_coeff(n, sigma(j, n as u64)?);
    }
    Ok(s)
}

/// The level-2 difference E_{2-2k}(tau) - 2 E_{2-2k}(2 tau) as a q-series:
/// coefficient sigma_{1-2k}(n) - 2 [2|n] sigma_{1-2k}(n/2).
pub fn eichler_difference(k: u32, order: usize) -> Result<PowerSeries> {
    let base = eichler_coeffs(k, order)?;
    let doubled = base.stretch(2).scale(&Rational::from(2));
    Ok(&base - &doubled)
}

/// g_k(q): coefficient of q^n is
/// n^{k-1} (sigma_{1-2k}(n) - 2 [2|n] sigma_{1-2k}(n/2)).
pub fn g_series(k: u32, order: usize) -> Result<PowerSeries> {
    if k < 1 {
        return Err(Error::Domain("g_series requires k >= 1".into()));
    }
    let mut s = eichler_difference(k, order)?;
    for _ in 1..k {
        s = s.q_derivative();
    }
    Ok(s)
}

/// Complete exponential Bell polynomial Y_k(x_1, ..., x_k) of the given
/// series, by the recurrence Y_0 = 1,
/// Y_{m+1} = sum_{j=0}^{m} C(m, j) Y_{m-j} x_{j+1}.
pub fn bell_complete(values: &[PowerSeries]) -> Result<PowerSeries> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    let order = values.iter().map(|s| s.order()).min().unwrap();
    let mut y = vec![PowerSeries::one(order)];
    for m in 0..values.len() {
        let mut next = PowerSeries::zero(order);
        for j in 0..=m {
            let c = Rational::from(binomial(m as u32, j as u32));
            let term = (&y[m - j] * &values[j]).scale(&c);
            next = &next + &term;
        }
        y.push(next);
    }
    Ok(y.pop().unwrap())
}

/// Generating series of the k-th moments s_k(n) of the reciprocal part sums
/// over distinct partitions: (-q;q)_inf times Y_k(g_1, ..., g_k).
pub fn moment_series(k: u32, order: usize) -> Result<PowerSeries> {
    if k < 1 {
        return Err(Error::Domain("moment_series requires k >= 1".into()));
    }
    let gs: Vec<PowerSeries> = (1..=k)
        .map(|j| g_series(j, order))
        .collect::<Result<_>>()?;
    let bell = bell_complete(&gs)?;
    Ok(&pochhammer_neg_q(order) * &bell)
}

/// Generating series of s_3^*(n), the total third reciprocal power sums:
/// (-q;q)_inf times the k = 2 Eichler difference.
pub fn srp3_series(order: usize) -> Result<PowerSeries> {
    let g2cal = eichler_difference(2, order)?;
    Ok(&pochhammer_neg_q(order) * &g2cal)
}

/// Both closed forms of the coefficient of q^n in
/// sum_m chi_p(m) q^m / (m (1 + q^m)):
/// sum_{m|n} chi_p(m) (-1)^{n/m+1} / m and -(1/n) sum_{d|n} (-1)^d chi_p(n/d) d.
pub fn twisted_inner_forms(p: u64, n: u64) -> Result<(Rational, Rational)> {
    let mut first = Rational::new();
    let mut second = Rational::new();
    for d in crate::arith::divisors(n) {
        let cof = n / d;
        let chi = legendre_symbol(d as i64, p)?;
        if chi != 0 {
            let sign = if cof % 2 == 0 { -1 } else { 1 };
            first += Rational::from((i64::from(chi) * sign, d as i64));
        }
        let chi_cof = legendre_symbol(cof as i64, p)?;
        if chi_cof != 0 {
            let sign = if d % 2 == 0 { 1 } else { -1 };
            second += Rational::from(i64::from(chi_cof) * sign) * Rational::from(d);
        }
    }
    second /= Rational::from(n);
    second = -second;
    Ok((first, second))
}

fn twisted_inner_coeff(p: u64, n: u64) -> Result<Rational> {
    let (first, second) = twisted_inner_forms(p, n)?;
    assert_eq!(
        first, second,
        "the two closed forms of the twisted inner coefficient disagree at n = {n}, p = {p}"
    );
    Ok(first)
}

/// Twisted generating series T_{chi_p}(q) = (-q;q)_inf *
/// sum_m chi_p(m) q^m / (m(1+q^m)); coefficient of q^n is s_{chi_p}(n).
pub fn twisted_series(p: u64, order: usize) -> Result<PowerSeries> {
    legendre_symbol(1, p)?; // validates p
    let mut inner = PowerSeries::zero(order);
    for n in 1..=order {
        inner.set_coeff(n, twisted_inner_coeff(p, n as u64)?);
    }
    Ok(&pochhammer_neg_q(order) * &inner)
}

/// Classical weight-2k Eisenstein series q-expansion
/// E_{2k} = 1 - (4k / B_{2k}) sum sigma_{2k-1}(n) q^n.
pub fn eisenstein_weight_series(k: u32, order: usize) -> Result<PowerSeries> {
    let b = crate::arith::bernoulli(2 * k)?;
    let factor = -Rational::from(4 * k) / b;
    let mut s = PowerSeries::zero(order);
    s.set_coeff(0, Rational::from(1));
    for n in 1..=order {
        s.set_coeff(n, sigma(2 * i64::from(k) - 1, n as u64)? * &factor);
    }
    Ok(s)
}
