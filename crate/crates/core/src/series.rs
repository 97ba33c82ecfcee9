//! Truncated power series over exact rationals.
//!
//! A [`PowerSeries`] holds the coefficients of sum_{n=0}^{N} c_n q^n for an
//! explicit truncation order N. Arithmetic never reads or writes past the
//! truncation order; mixed-order operands truncate to the smaller order.

use std::fmt;
use std::io::Write;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    /// The zero series truncated at `order`.
    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![Rational::new(); order + 1],
        }
    }

    /// The constant series 1.
    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rational::from(1);
        s
    }

    /// c q^n truncated at `order`; a no-op if n exceeds the order.
    pub fn monomial(c: Rational, n: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if n <= order {
            s.coeffs[n] = c;
        }
        s
    }

    /// Build from explicit coefficients c_0, ..., c_N.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyInput);
        }
        Ok(PowerSeries { coeffs })
    }

    /// Truncation order N.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of q^n; n must not exceed the truncation order.
    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, n: usize, c: Rational) {
        self.coeffs[n] = c;
    }

    /// Drop coefficients beyond `order`.
    pub fn truncated(&self, order: usize) -> Self {
        let end = order.min(self.order());
        PowerSeries {
            coeffs: self.coeffs[..=end].to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Largest absolute coefficient value.
    pub fn max_abs_coeff(&self) -> Rational {
        let mut max = Rational::new();
        for c in &self.coeffs {
            let a = c.clone().abs();
            if a > max {
                max = a;
            }
        }
        max
    }

    /// Multiply by an exact scalar.
    pub fn scale(&self, c: &Rational) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|x| x.clone() * c).collect(),
        }
    }

    /// Substitute q -> q^l, keeping the same truncation order.
    pub fn stretch(&self, l: usize) -> Self {
        assert!(l >= 1, "stretch factor must be positive");
        let order = self.order();
        let mut out = Self::zero(order);
        for (n, c) in self.coeffs.iter().enumerate() {
            if n.checked_mul(l).map_or(false, |m| m <= order) {
                out.coeffs[n * l] = c.clone();
            }
        }
        out
    }

    /// Apply q d/dq: c_n -> n c_n.
    pub fn q_derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c.clone() * Rational::from(n as u64))
            .collect();
        PowerSeries { coeffs }
    }

    /// Integer power by repeated squaring.
    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Multiplicative inverse; requires a unit constant term.
    pub fn inverse(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::Domain(
                "series inverse requires a nonzero constant term".into(),
            ));
        }
        let order = self.order();
        let c0_inv = Rational::from(1) / self.coeffs[0].clone();
        let mut inv = Self::zero(order);
        inv.coeffs[0] = c0_inv.clone();
        for n in 1..=order {
            let mut acc = Rational::new();
            for m in 1..=n {
                acc += self.coeffs[m].clone() * &inv.coeffs[n - m];
            }
            inv.coeffs[n] = -acc * &c0_inv;
        }
        Ok(inv)
    }

    /// CSV rows `n,numerator,denominator`, with a header.
    pub fn write_csv<W: Write>(&self, w: &mut W) -> Result<()> {
        writeln!(w, "n,numerator,denominator")?;
        for (n, c) in self.coeffs.iter().enumerate() {
            writeln!(w, "{},{},{}", n, c.numer(), c.denom())?;
        }
        Ok(())
    }

    /// Coefficients as "num/den" strings (denominator kept even when 1).
    pub fn to_fraction_strings(&self) -> Vec<String> {
        self.coeffs
            .iter()
            .map(|c| format!("{}/{}", c.numer(), c.denom()))
            .collect()
    }
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({c})q^{n}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|n| self.coeffs[n].clone() + &rhs.coeffs[n])
            .collect();
        PowerSeries { coeffs }
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|n| self.coeffs[n].clone() - &rhs.coeffs[n])
            .collect();
        PowerSeries { coeffs }
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

/// Cauchy product, truncated to the smaller order.
impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![Rational::new(); order + 1];
        for m in 0..=order {
            if self.coeffs[m].is_zero() {
                continue;
            }
            for k in 0..=(order - m) {
                if rhs.coeffs[k].is_zero() {
                    continue;
                }
                coeffs[m + k] += self.coeffs[m].clone() * &rhs.coeffs[k];
            }
        }
        PowerSeries { coeffs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn binomial_square() {
        let mut a = PowerSeries::zero(2);
        a.set_coeff(0, rat(1, 1));
        a.set_coeff(1, rat(1, 1));
        let sq = &a * &a;
        assert_eq!(sq.coeff(0), &rat(1, 1));
        assert_eq!(sq.coeff(1), &rat(2, 1));
        assert_eq!(sq.coeff(2), &rat(1, 1));
    }

    #[test]
    fn one_is_identity() {
        let mut a = PowerSeries::zero(5);
        for n in 0..=5 {
            a.set_coeff(n, rat(n as i64 + 3, 7));
        }
        let one = PowerSeries::one(5);
        assert_eq!(&a * &one, a);
    }

    #[test]
    fn mixed_order_truncates_to_min() {
        let a = PowerSeries::one(7);
        let b = PowerSeries::one(3);
        assert_eq!((&a * &b).order(), 3);
        assert_eq!((&a + &b).order(), 3);
    }

    #[test]
    fn inverse_round_trip() {
        let poch = crate::qseries::pochhammer_neg_q(5);
        let inv = poch.inverse().unwrap();
        let prod = &poch * &inv;
        assert_eq!(prod, PowerSeries::one(5));
    }

    #[test]
    fn stretch_and_derivative() {
        let mut a = PowerSeries::zero(6);
        a.set_coeff(1, rat(5, 2));
        a.set_coeff(3, rat(-1, 3));
        let s = a.stretch(2);
        assert_eq!(s.coeff(2), &rat(5, 2));
        assert_eq!(s.coeff(6), &rat(-1, 3));
        assert!(s.coeff(3).is_zero());
        let d = a.q_derivative();
        assert_eq!(d.coeff(1), &rat(5, 2));
        assert_eq!(d.coeff(3), &rat(-1, 1));
    }

    proptest! {
        #[test]
        fn mul_commutes_and_distributes(
            a in proptest::collection::vec(-20i64..=20, 1..=8),
            b in proptest::collection::vec(-20i64..=20, 1..=8),
            c in proptest::collection::vec(-20i64..=20, 1..=8),
        ) {
            let mk = |v: &[i64]| {
                let coeffs = v.iter().map(|&x| Rational::from((x, 3))).collect();
                PowerSeries::from_coeffs(coeffs).unwrap()
            };
            let (a, b, c) = (mk(&a), mk(&b), mk(&c));
            prop_assert_eq!(&a * &b, &b * &a);
            let lhs = &a * &(&b + &c);
            let rhs = &(&a * &b) + &(&a * &c);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
