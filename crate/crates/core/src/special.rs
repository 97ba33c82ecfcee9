//! High-precision real and complex building blocks: zeta values by
//! Euler-Maclaurin summation, K-Bessel functions, the integer incomplete
//! gamma, the Dedekind eta product, and evaluation of exact q-series at
//! points of the upper half-plane.

use std::collections::HashMap;
use std::sync::Mutex;

use rug::ops::Pow;

use crate::arith;
use crate::complex::{exp_two_pi_i_n_tau, HalfPlanePoint};
use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use crate::series::PowerSeries;
use crate::{BigComplex, Rational, Real};

/// Euler-Mascheroni constant at context precision.
pub fn euler_gamma(ctx: &PrecisionContext) -> Real {
    ctx.euler_gamma()
}

/// zeta(s) for real s > 1 by Euler-Maclaurin summation: direct terms up to
/// a cutoff, the integral and half-term corrections, then Bernoulli
/// corrections until the first omitted term is below the tail budget.
pub fn zeta_real(s: &Real, ctx: &PrecisionContext) -> Result<Real> {
    Ok(zeta_em(s, ctx, false)?.0)
}

/// zeta'(2) by Euler-Maclaurin applied to the differentiated Dirichlet
/// series; cached per working precision.
pub fn zeta_prime_2(ctx: &PrecisionContext) -> Real {
    static CACHE: Mutex<Option<HashMap<u32, Real>>> = Mutex::new(None);
    let wp = ctx.working_prec();
    let mut guard = CACHE.lock().unwrap();
    let map = guard.get_or_insert_with(HashMap::new);
    map.entry(wp)
        .or_insert_with(|| {
            let two = ctx.float(2);
            zeta_em(&two, ctx, true)
                .expect("s = 2 is in the zeta domain")
                .1
                .expect("derivative requested")
        })
        .clone()
}

/// zeta(2k) for k >= 1 from the exact Bernoulli identity
/// zeta(2k) = (-1)^(k+1) B_{2k} (2 pi)^{2k} / (2 (2k)!).
pub fn zeta_even(k: u32, ctx: &PrecisionContext) -> Result<Real> {
    let b = arith::bernoulli(2 * k)?;
    let sign = if k % 2 == 1 { 1 } else { -1 };
    let num = ctx.float_rat(&(b * Rational::from((sign, 1))));
    let two_pi = ctx.float(2) * ctx.pi();
    let pow = two_pi.pow(2 * k as i32);
    let fact = ctx.float_rat(&Rational::from(arith::factorial(2 * k)));
    Ok(num * pow / (fact * 2u32))
}

/// Euler-Maclaurin evaluation of zeta(s) (and optionally zeta'(s)).
fn zeta_em(s: &Real, ctx: &PrecisionContext, derivative: bool) -> Result<(Real, Option<Real>)> {
    let wp = ctx.working_prec();
    if !(s.clone() > 1f64) {
        return Err(Error::Domain(format!("zeta_real requires s > 1, got {s}")));
    }
    let target = Real::with_val(wp, 1u32) >> (wp - 4);

    let mut cutoff = (wp as usize / 2).max(32);
    for _attempt in 0..8 {
        let n_f = Real::with_val(wp, cutoff as u32);
        let ln_n = n_f.clone().ln();

        // direct terms n^-s (and -ln n * n^-s)
        let mut sum = Real::new(wp);
        let mut dsum = Real::new(wp);
        for n in 1..cutoff {
            let nf = Real::with_val(wp, n as u32);
            let term = nf.clone().pow(-s.clone());
            if derivative {
                dsum -= nf.ln() * &term;
            }
            sum += term;
        }

        // integral term N^{1-s}/(s-1) and half term N^{-s}/2
        let s_minus_1 = s.clone() - 1f64;
        let n_pow_1ms = n_f.clone().pow(-s_minus_1.clone());
        let integral = n_pow_1ms.clone() / &s_minus_1;
        let n_pow_ms = n_f.clone().pow(-s.clone());
        sum += &integral;
        sum += n_pow_ms.clone() / 2u32;
        if derivative {
            dsum -= ln_n.clone() * &integral;
            dsum -= integral.clone() / &s_minus_1;
            dsum -= ln_n.clone() * n_pow_ms.clone() / 2u32;
        }

        // Bernoulli corrections B_{2r}/(2r)! (s)_{2r-1} N^{-s-2r+1}
        let mut poch = s.clone(); // (s)_1
        let mut harm = s.clone().recip(); // sum 1/(s+i), i < 2r-1
        let mut n_pow = n_pow_1ms / &n_f; // N^{-s}
        let mut prev_mag = Real::with_val(wp, f64::INFINITY);
        let mut r = 1u32;
        let converged = loop {
            n_pow /= &n_f; // N^{-s-2r+1}
            let b = arith::bernoulli(2 * r)?;
            let coeff = ctx.float_rat(&(b / Rational::from(arith::factorial(2 * r))));
            let term = coeff * &poch * &n_pow;
            let mag = term.clone().abs();
            if mag > prev_mag {
                break false; // corrections started growing: cutoff too small
            }
            sum += &term;
            if derivative {
                dsum += term.clone() * &harm;
                dsum -= ln_n.clone() * &term;
            }
            if mag < target {
                break true;
            }
            prev_mag = mag;
            // advance (s)_{2r-1} -> (s)_{2r+1} and the harmonic sum
            let a1 = s.clone() + (2 * r - 1) as u32;
            let a2 = s.clone() + (2 * r) as u32;
            harm += a1.clone().recip() + a2.clone().recip();
            poch *= a1 * a2;
            n_pow /= &n_f;
            r += 1;
            if r > 4 * wp {
                break false;
            }
        };
        if converged {
            return Ok((sum, if derivative { Some(dsum) } else { None }));
        }
        cutoff *= 2;
    }
    Err(Error::Domain(
        "euler-maclaurin zeta failed to converge".into(),
    ))
}

/// K_{n+1/2}(x) for integer n >= 0 via the finite closed form
/// sqrt(pi/(2x)) e^-x sum_r (n+r)!/(r!(n-r)!(2x)^r).
pub fn k_bessel_half(n: u32, x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    if !(x.clone() > 0f64) {
        return Err(Error::Domain(format!("k_bessel_half requires x > 0, got {x}")));
    }
    let wp = ctx.working_prec();
    let two_x = Real::with_val(wp, 2u32 * x);
    let mut sum = Real::new(wp);
    let mut inv_pow = Real::with_val(wp, 1u32);
    for r in 0..=n {
        let c = Rational::from((
            arith::factorial(n + r),
            arith::factorial(r) * arith::factorial(n - r),
        ));
        sum += ctx.float_rat(&c) * &inv_pow;
        inv_pow /= &two_x;
    }
    let front = (ctx.pi() / &two_x).sqrt();
    let decay = (-x.clone()).exp();
    Ok(front * decay * sum)
}

/// Upper bound for K_nu(x) with 0 < nu <= n + 1/2: K is increasing in the
/// order, so the half-integer closed form above nu serves as a majorant.
pub fn k_bessel_half_upper(n: u32, x: &Real, ctx: &PrecisionContext) -> Real {
    k_bessel_half(n, x, ctx).expect("positive argument")
}

/// K_nu(x) for real nu and x > 0 by the even integral
/// int_0^inf exp(-x cosh t) cosh(nu t) dt, trapezoidal sums with node
/// doubling until two refinements agree.
pub fn k_bessel_general(nu: &Real, x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    if !(x.clone() > 0f64) {
        return Err(Error::Domain(format!(
            "k_bessel_general requires x > 0, got {x}"
        )));
    }
    let wp = ctx.working_prec() + 16;
    let nu_abs = Real::with_val(wp, nu.clone().abs());
    let xq = Real::with_val(wp, x);

    // Truncation point: the integrand at T must be small relative to the
    // result, which is itself of size about e^-x. Solve
    // x cosh T = x + (wp + 16) ln 2 + |nu| T + ln(4 + x) by iteration.
    let budget = Real::with_val(wp, wp + 16) * ctx.ln2()
        + (Real::with_val(wp, 4u32) + &xq).ln();
    let mut t_end = Real::with_val(wp, 2u32);
    for _ in 0..8 {
        let arg: Real = (budget.clone() + nu_abs.clone() * &t_end) / &xq + 1u32;
        t_end = arg.acosh();
    }

    let integrand = |t: &Real| -> Real {
        let ch = t.clone().cosh();
        let decay = (-(xq.clone() * ch)).exp();
        let osc = (nu.clone() * t).cosh();
        decay * osc
    };

    // Fixed interval [0, T] split into a dyadically refined grid, so that
    // successive trapezoid sums differ only by discretization error.
    let nodes0 = ctx.quad_nodes.max(8);
    let mut steps = nodes0 as u64;
    let mut h = t_end.clone() / Real::with_val(wp, steps);
    let mut total = (integrand(&Real::new(wp)) + integrand(&t_end)) / 2u32;
    for j in 1..steps {
        total += integrand(&(h.clone() * j));
    }
    let mut current = total.clone() * &h;

    let rel_target = Real::with_val(wp, 1u32) >> (ctx.prec() + 8);
    let max_refinements = 24u32;
    let mut residual = Real::with_val(wp, f64::INFINITY);
    for _refinement in 1..=max_refinements {
        let half = h.clone() / 2u32;
        let mut mids = Real::new(wp);
        for j in 0..steps {
            mids += integrand(&(h.clone() * j + &half));
        }
        total += mids;
        h = half;
        steps *= 2;
        let next = total.clone() * &h;
        residual = Real::with_val(wp, &next - &current).abs();
        let scale = next.clone().abs();
        if residual <= rel_target.clone() * scale {
            return Ok(next);
        }
        current = next;
    }
    Err(Error::QuadratureDivergence {
        refinements: max_refinements,
        residual: residual.to_f64(),
    })
}

/// Gamma(m, y) for integer m >= 1 and y >= 0:
/// (m-1)! e^-y sum_{j<m} y^j/j!.
pub fn incomplete_gamma_int(m: u32, y: &Real, ctx: &PrecisionContext) -> Result<Real> {
    if m < 1 {
        return Err(Error::Domain("incomplete_gamma_int requires m >= 1".into()));
    }
    if y.is_sign_negative() && !y.is_zero() {
        return Err(Error::Domain(format!(
            "incomplete_gamma_int requires y >= 0, got {y}"
        )));
    }
    let fact = ctx.float_rat(&Rational::from(arith::factorial(m - 1)));
    Ok(fact * gamma_star_int(m, y, ctx)?)
}

/// The normalized form Gamma*(m, y) = Gamma(m, y) / (m-1)! =
/// e^-y sum_{j<m} y^j/j!.
pub fn gamma_star_int(m: u32, y: &Real, ctx: &PrecisionContext) -> Result<Real> {
    if m < 1 {
        return Err(Error::Domain("gamma_star_int requires m >= 1".into()));
    }
    let wp = ctx.working_prec();
    let mut sum = Real::with_val(wp, 1u32);
    let mut term = Real::with_val(wp, 1u32);
    for j in 1..m {
        term *= y;
        term /= j;
        sum += &term;
    }
    Ok((-y.clone()).exp() * sum)
}

/// Dedekind eta: q^{1/24} prod_{n>=1} (1 - q^n), with the product truncated
/// once the geometric tail drops below the context's tail budget.
pub fn dedekind_eta(tau: &HalfPlanePoint, ctx: &PrecisionContext) -> Result<BigComplex> {
    let wp = ctx.working_prec();
    let pi = ctx.pi();

    // q^{1/24} = e^{pi i tau / 12}, taken directly from tau
    let mag = (-(pi.clone() * tau.v()) / 12u32).exp();
    if mag.is_zero() {
        return Err(Error::EtaUnderflow {
            v: tau.v().to_f64(),
        });
    }
    let phase = pi.clone() * tau.u() / 12u32;
    let (sin, cos) = phase.sin_cos(Real::new(wp));
    let prefactor = BigComplex::with_val(wp, (mag.clone() * cos, mag * sin));

    let abs_q = (-(ctx.float(2) * &pi) * tau.v()).exp();
    // |q|^{M+1}/(1-|q|) < 2^-(prec+guard)
    let cutoff = {
        let lnq = -2.0 * std::f64::consts::PI * tau.v().to_f64();
        let denom_correction = (1.0 - abs_q.to_f64()).max(1e-9).ln();
        let bits = (ctx.prec() + ctx.guard()) as f64;
        ((bits * std::f64::consts::LN_2 - denom_correction) / -lnq).ceil() as usize + 1
    };

    let q = exp_two_pi_i_n_tau(1, tau, &pi);
    let mut q_pow = BigComplex::with_val(wp, 1u32);
    let mut prod = BigComplex::with_val(wp, 1u32);
    for _ in 1..=cutoff {
        q_pow *= &q;
        let factor = BigComplex::with_val(wp, 1u32) - &q_pow;
        prod *= factor;
    }
    Ok(prefactor * prod)
}

/// Smallest truncation order so that the polynomial-growth tail majorant of
/// a q-expansion evaluated at |q| = e^{-2 pi v scale} fits the tail budget.
pub fn required_series_order(v: &Real, scale: u32, ctx: &PrecisionContext) -> usize {
    let rate = 2.0 * std::f64::consts::PI * v.to_f64() * scale as f64 * std::f64::consts::LOG2_E;
    let bits = (ctx.prec() + ctx.guard()) as f64;
    let mut n = 16f64;
    for _ in 0..5 {
        n = ((bits + 15.0 + 10.0 * (n + 1.0).log2()) / rate).ceil();
        if n < 16.0 {
            n = 16.0;
        }
    }
    n as usize
}

/// Tail majorant for evaluating `series` at |q| = x: coefficients are
/// assumed to grow at most like max(1, max|c|) * 120 (n/(N+1))^6 past the
/// truncation order, which covers every expansion this crate constructs.
fn series_tail_bound(series: &PowerSeries, x: &Real, ctx: &PrecisionContext) -> Option<Real> {
    let wp = ctx.working_prec();
    let n1 = series.order() as u32 + 1;
    let growth = Real::with_val(wp, 6f64 / n1 as f64).exp();
    let denom = Real::with_val(wp, 1u32) - growth * x;
    if !(denom.clone() > 0f64) {
        return None; // |q| too close to 1 for this order
    }
    let d = ctx.float_rat(&series.max_abs_coeff()).max(&ctx.float(1));
    let head = x.clone().pow(n1) * 120u32 * d;
    Some(head / denom)
}

/// Evaluate an exact series at q = e^{2 pi i scale tau} by Horner's rule.
/// The truncation tail is bounded first; an insufficient order is an error
/// reporting the minimal sufficient order at this point.
pub fn eval_series_at(
    series: &PowerSeries,
    tau: &HalfPlanePoint,
    scale: u32,
    ctx: &PrecisionContext,
) -> Result<BigComplex> {
    assert!(scale >= 1, "scale must be a positive integer");
    let wp = ctx.working_prec();
    let pi = ctx.pi();
    let x = (-(ctx.float(2) * &pi) * tau.v() * scale).exp();

    let insufficient = || Error::InsufficientOrder {
        have: series.order(),
        need: required_series_order(tau.v(), scale, ctx),
    };
    let tail = series_tail_bound(series, &x, ctx).ok_or_else(insufficient)?;
    if tail >= ctx.tail_target() {
        return Err(insufficient());
    }

    let w = exp_two_pi_i_n_tau(scale as i64, tau, &pi);
    let mut acc = BigComplex::with_val(wp, ctx.float_rat(series.coeff(series.order())));
    for n in (0..series.order()).rev() {
        acc *= &w;
        acc += ctx.float_rat(series.coeff(n));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx128() -> PrecisionContext {
        PrecisionContext::new(128).unwrap()
    }

    fn assert_close(a: &Real, b: &Real, tol: &Real, what: &str) {
        let diff = Real::with_val(a.prec().max(b.prec()), a - b).abs();
        assert!(diff < *tol, "{what}: |{a} - {b}| = {diff} >= {tol}");
    }

    #[test]
    fn zeta_two_is_pi_squared_over_six() {
        let ctx = ctx128();
        let z = zeta_real(&ctx.float(2), &ctx).unwrap();
        let expect = ctx.pi().square() / 6u32;
        assert_close(&z, &expect, &ctx.tolerance(), "zeta(2)");
    }

    #[test]
    fn zeta_four_matches_bernoulli_route() {
        let ctx = ctx128();
        let z = zeta_real(&ctx.float(4), &ctx).unwrap();
        let expect = zeta_even(2, &ctx).unwrap();
        assert_close(&z, &expect, &ctx.tolerance(), "zeta(4)");
        let direct = ctx.pi().pow(4) / 90u32;
        assert_close(&z, &direct, &ctx.tolerance(), "zeta(4) closed form");
    }

    #[test]
    fn zeta_three_against_library_and_self() {
        let ctx = ctx128();
        let z = zeta_real(&ctx.float(3), &ctx).unwrap();
        let lib = ctx.float(3).zeta();
        assert_close(&z, &lib, &ctx.tolerance(), "zeta(3) vs mpfr");
        assert!((z.to_f64() - 1.2020569031595942).abs() < 1e-14);
    }

    #[test]
    fn zeta_near_one_stays_accurate() {
        let ctx = ctx128();
        let s = ctx.float(1) + ctx.float(2e-3);
        let z = zeta_real(&s, &ctx).unwrap();
        let lib = s.clone().zeta();
        let tol = ctx.tolerance() * 1000u32; // value ~ 500
        assert_close(&z, &lib, &tol, "zeta(1.002)");
    }

    #[test]
    fn zeta_rejects_at_most_one() {
        let ctx = ctx128();
        assert!(zeta_real(&ctx.float(1), &ctx).is_err());
        assert!(zeta_real(&ctx.float(0.5), &ctx).is_err());
    }

    #[test]
    fn zeta_prime_2_value() {
        let ctx = ctx128();
        let zp = zeta_prime_2(&ctx);
        // classical digits, and consistency across two context sizes
        assert!((zp.to_f64() + 0.9375482543158438).abs() < 1e-14);
        let big = PrecisionContext::new(256).unwrap();
        let zp2 = zeta_prime_2(&big);
        let diff = (zp - zp2).abs();
        assert!(diff < ctx.tolerance());
    }

    #[test]
    fn bessel_half_low_orders() {
        let ctx = ctx128();
        let x = ctx.float(2);
        let k0 = k_bessel_half(0, &x, &ctx).unwrap();
        let expect = (ctx.pi() / (ctx.float(2) * &x)).sqrt() * (-x.clone()).exp();
        assert_close(&k0, &expect, &ctx.tail_target(), "K_{1/2}(2)");

        let x1 = ctx.float(1);
        let k1 = k_bessel_half(1, &x1, &ctx).unwrap();
        let expect1 = (ctx.pi() / (ctx.float(2) * &x1)).sqrt()
            * (ctx.float(1) + ctx.float(1) / &x1)
            * (-x1.clone()).exp();
        assert_close(&k1, &expect1, &ctx.tail_target(), "K_{3/2}(1)");
    }

    #[test]
    fn bessel_general_matches_closed_form() {
        let ctx = ctx128();
        let tol = ctx.tolerance() << ctx.guard(); // 2^-(prec-guard)
        for (n, nu2) in [(0u32, 1u32), (1, 3), (2, 5), (3, 7)] {
            for x in [0.5f64, 1.0, 2.0 * std::f64::consts::PI, 10.0] {
                let xf = ctx.float(x);
                let nu = ctx.float(nu2) / 2u32;
                let general = k_bessel_general(&nu, &xf, &ctx).unwrap();
                let closed = k_bessel_half(n, &xf, &ctx).unwrap();
                let rel = Real::with_val(160, &general - &closed).abs() / closed.clone();
                assert!(
                    rel < tol,
                    "nu = {n}+1/2, x = {x}: rel dev {rel}"
                );
            }
        }
    }

    #[test]
    fn bessel_general_even_in_order() {
        let ctx = ctx128();
        let x = ctx.float(1.5f64);
        let plus = k_bessel_general(&ctx.float(0.75f64), &x, &ctx).unwrap();
        let minus = k_bessel_general(&ctx.float(-0.75f64), &x, &ctx).unwrap();
        assert_eq!(plus, minus);
    }

    #[test]
    fn bessel_rejects_nonpositive() {
        let ctx = ctx128();
        assert!(k_bessel_half(0, &ctx.float(0), &ctx).is_err());
        assert!(k_bessel_general(&ctx.float(1), &ctx.float(-2), &ctx).is_err());
    }

    #[test]
    fn incomplete_gamma_values() {
        let ctx = ctx128();
        let y = ctx.float(0.7f64);
        let g1 = incomplete_gamma_int(1, &y, &ctx).unwrap();
        assert_close(&g1, &(-y.clone()).exp(), &ctx.tail_target(), "Gamma(1,y)");

        let g4 = incomplete_gamma_int(4, &ctx.float(0), &ctx).unwrap();
        assert_close(&g4, &ctx.float(6), &ctx.tail_target(), "Gamma(4,0)");

        let y1 = ctx.float(1);
        let gs3 = gamma_star_int(3, &y1, &ctx).unwrap();
        let expect = (-y1.clone()).exp() * ctx.float(2.5f64);
        assert_close(&gs3, &expect, &ctx.tail_target(), "Gamma*(3,1)");

        let gs_at_zero = gamma_star_int(5, &ctx.float(0), &ctx).unwrap();
        assert_close(&gs_at_zero, &ctx.float(1), &ctx.tail_target(), "Gamma*(m,0)");
    }

    #[test]
    fn incomplete_gamma_monotone_to_zero() {
        let ctx = ctx128();
        let mut prev = ctx.float(f64::INFINITY);
        for y in [0.0f64, 1.0, 2.0, 5.0, 10.0, 40.0, 80.0] {
            let g = incomplete_gamma_int(3, &ctx.float(y), &ctx).unwrap();
            assert!(g < prev, "not decreasing at y = {y}");
            assert!(g > 0f64);
            prev = g;
        }
        assert!(prev < 1e-30f64);
    }

    #[test]
    fn eta_special_value_at_i() {
        // eta(i) = Gamma(1/4) / (2 pi^{3/4}), computed independently
        let ctx = ctx128();
        let tau = HalfPlanePoint::from_f64(&ctx, 0.0, 1.0).unwrap();
        let eta = dedekind_eta(&tau, &ctx).unwrap();
        let gamma_quarter = ctx.float(0.25f64).gamma();
        let expect = gamma_quarter / (ctx.float(2) * ctx.pi().pow(ctx.float(0.75f64)));
        let re = Real::with_val(160, eta.real());
        let im = Real::with_val(160, eta.imag());
        let tol = ctx.tolerance();
        assert_close(&re, &expect, &tol, "eta(i)");
        assert!(im.abs() < tol);
    }

    #[test]
    fn eta_translation_multiplier() {
        // eta(tau + 1) = e^{pi i / 12} eta(tau)
        let ctx = ctx128();
        let tau = HalfPlanePoint::from_f64(&ctx, 0.3, 0.8).unwrap();
        let tau1 = tau.shifted(&ctx.float(1), &ctx.float(0)).unwrap();
        let lhs = dedekind_eta(&tau1, &ctx).unwrap();
        let phase = ctx.pi() / 12u32;
        let (s, c) = phase.sin_cos(Real::new(ctx.working_prec()));
        let rhs = dedekind_eta(&tau, &ctx).unwrap() * BigComplex::with_val(ctx.working_prec(), (c, s));
        let diff = crate::complex::cabs(&(lhs - rhs));
        assert!(diff < ctx.tolerance());
    }

    #[test]
    fn eta_does_not_vanish() {
        let ctx = ctx128();
        for (u, v) in [(0.0, 0.4), (0.3, 0.8), (0.49, 1.7), (0.0, 12.0)] {
            let tau = HalfPlanePoint::from_f64(&ctx, u, v).unwrap();
            let eta = dedekind_eta(&tau, &ctx).unwrap();
            assert!(crate::complex::cabs(&eta) > 0f64, "eta vanished at {u}+{v}i");
        }
    }

    #[test]
    fn eval_constant_and_monomial() {
        let ctx = ctx128();
        let tau = HalfPlanePoint::from_f64(&ctx, 0.37, 1.1).unwrap();
        let one = PowerSeries::one(64);
        let val = eval_series_at(&one, &tau, 1, &ctx).unwrap();
        let diff = crate::complex::cabs(&(val - BigComplex::with_val(160, 1u32)));
        assert!(diff < ctx.tolerance());

        // series q at tau = i: e^{-2 pi}
        let taui = HalfPlanePoint::from_f64(&ctx, 0.0, 1.0).unwrap();
        let q = PowerSeries::monomial(Rational::from(1), 1, 64);
        let val = eval_series_at(&q, &taui, 1, &ctx).unwrap();
        let expect = (-(ctx.float(2) * ctx.pi())).exp();
        let re = Real::with_val(160, val.real());
        assert_close(&re, &expect, &ctx.tolerance(), "q at i");
    }

    #[test]
    fn eval_reflects_real_coefficients() {
        // f(-u + iv) = conj(f(u + iv)) for real-coefficient series
        let ctx = ctx128();
        let g1 = crate::qseries::g_series(1, 96).unwrap();
        let tau = HalfPlanePoint::from_f64(&ctx, 0.37, 1.1).unwrap();
        let mirrored = HalfPlanePoint::from_f64(&ctx, -0.37, 1.1).unwrap();
        let a = eval_series_at(&g1, &tau, 1, &ctx).unwrap();
        let b = eval_series_at(&g1, &mirrored, 1, &ctx).unwrap();
        let diff = crate::complex::cabs(&(a.conj() - b));
        assert!(diff < ctx.tolerance());
    }

    #[test]
    fn eval_insufficient_order_reports_requirement() {
        let ctx = ctx128();
        let tau = HalfPlanePoint::from_f64(&ctx, 0.0, 0.05).unwrap();
        let short = PowerSeries::one(8);
        match eval_series_at(&short, &tau, 1, &ctx) {
            Err(Error::InsufficientOrder { have, need }) => {
                assert_eq!(have, 8);
                assert!(need > 8);
                let long = PowerSeries::one(need);
                assert!(eval_series_at(&long, &tau, 1, &ctx).is_ok());
            }
            other => panic!("expected insufficient-order error, got {other:?}"),
        }
    }

    #[test]
    fn doubled_precision_is_stable() {
        let ctx = ctx128();
        let big = ctx.doubled();
        let g1 = crate::qseries::g_series(1, 256).unwrap();
        let tau_small = HalfPlanePoint::from_f64(&ctx, 0.3, 0.8).unwrap();
        let tau_big = HalfPlanePoint::from_f64(&big, 0.3, 0.8).unwrap();
        let a = eval_series_at(&g1, &tau_small, 1, &ctx).unwrap();
        let b = eval_series_at(&g1, &tau_big, 1, &big).unwrap();
        let diff = crate::complex::cabs(&(a - b));
        assert!(diff < ctx.tolerance());

        let za = zeta_real(&ctx.float(3), &ctx).unwrap();
        let zb = zeta_real(&big.float(3), &big).unwrap();
        assert!((za - zb).abs() < ctx.tolerance());
    }
}
