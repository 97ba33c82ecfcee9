//! Evaluation of the automorphic objects: Maass Eisenstein series, the
//! completed generating functions of reciprocal part sums, the completed
//! weight-two Eisenstein series, completed Eichler integrals and their
//! raising-operator images, and the eta-based limit formulas.
//!
//! Everything is computed from closed Fourier expansions with explicit tail
//! majorants; where an identity admits two independent routes, both are
//! implemented so the suites can compare them.

use std::collections::HashMap;
use std::sync::Mutex;

use rug::ops::Pow;

use crate::arith::{self, factorial, rising_factorial};
use crate::complex::{cabs, exp_two_pi_i_n_tau, HalfPlanePoint};
use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use crate::qseries;
use crate::series::PowerSeries;
use crate::special::{
    self, eval_series_at, k_bessel_general, k_bessel_half, required_series_order, zeta_prime_2,
};
use crate::{BigComplex, Integer, Rational, Real};

/// An element of Gamma_0(level): integer matrix of determinant one whose
/// lower-left entry is divisible by the level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gamma0Element {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
    level: u32,
}

impl Gamma0Element {
    pub fn new(a: i64, b: i64, c: i64, d: i64, level: u32) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidMatrix("level must be positive".into()));
        }
        if a * d - b * c != 1 {
            return Err(Error::InvalidMatrix(format!(
                "determinant of [[{a},{b}],[{c},{d}]] is not 1"
            )));
        }
        if c.rem_euclid(level as i64) != 0 {
            return Err(Error::InvalidMatrix(format!(
                "lower-left entry {c} is not divisible by the level {level}"
            )));
        }
        Ok(Gamma0Element { a, b, c, d, level })
    }

    /// The translation tau -> tau + 1.
    pub fn translation(level: u32) -> Self {
        Gamma0Element::new(1, 1, 0, 1, level).expect("valid")
    }

    /// The inversion tau -> -1/tau (level 1 only).
    pub fn inversion() -> Self {
        Gamma0Element::new(0, -1, 1, 0, 1).expect("valid")
    }

    /// The lower-triangular generator tau -> tau / (level tau + 1).
    pub fn lower(level: u32) -> Self {
        Gamma0Element::new(1, 0, level as i64, 1, level).expect("valid")
    }

    pub fn entries(&self) -> (i64, i64, i64, i64) {
        (self.a, self.b, self.c, self.d)
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Matrix product; the level of the product is the common level.
    pub fn compose(&self, rhs: &Gamma0Element) -> Result<Self> {
        let level = self.level.max(rhs.level);
        Gamma0Element::new(
            self.a * rhs.a + self.b * rhs.c,
            self.a * rhs.b + self.b * rhs.d,
            self.c * rhs.a + self.d * rhs.c,
            self.c * rhs.b + self.d * rhs.d,
            level,
        )
    }
}

/// Apply the Moebius action: returns (a tau + b)/(c tau + d) together with
/// the automorphy factor c tau + d.
pub fn mobius_act(gamma: &Gamma0Element, tau: &HalfPlanePoint) -> (HalfPlanePoint, BigComplex) {
    let p = tau.prec();
    let (a, b, c, d) = gamma.entries();
    let cu_d = Real::with_val(p, tau.u() * c) + d;
    let cv = Real::with_val(p, tau.v() * c);
    let denom_sqr = cu_d.clone().square() + cv.clone().square();
    let au_b = Real::with_val(p, tau.u() * a) + b;
    let new_u = (au_b.clone() * &cu_d + Real::with_val(p, tau.v() * a) * &cv) / &denom_sqr;
    let new_v = Real::with_val(p, tau.v()) / &denom_sqr;
    let factor = BigComplex::with_val(p, (cu_d, cv));
    let point = HalfPlanePoint::new(new_u, new_v).expect("determinant one keeps v positive");
    (point, factor)
}

/// One truncated Fourier evaluation, with the cutoff actually used and the
/// proven bound on the discarded tail.
#[derive(Clone, Debug)]
pub struct FourierEvaluation {
    pub value: BigComplex,
    pub cutoff: usize,
    pub tail_bound: Real,
}

impl FourierEvaluation {
    /// The tail must sit below the context tolerance for the evaluation to
    /// count as sufficient.
    pub fn is_sufficient(&self, ctx: &PrecisionContext) -> bool {
        self.tail_bound < ctx.tolerance()
    }
}

/// zeta at integer arguments >= 2, cached per working precision: even
/// arguments from the exact Bernoulli identity, odd by Euler-Maclaurin.
pub fn zeta_int(m: u32, ctx: &PrecisionContext) -> Result<Real> {
    static CACHE: Mutex<Option<HashMap<(u32, u32), Real>>> = Mutex::new(None);
    if m < 2 {
        return Err(Error::Domain("zeta_int needs m >= 2".into()));
    }
    let wp = ctx.working_prec();
    {
        let guard = CACHE.lock().unwrap();
        if let Some(v) = guard.as_ref().and_then(|map| map.get(&(wp, m))) {
            return Ok(v.clone());
        }
    }
    let value = if m % 2 == 0 {
        special::zeta_even(m / 2, ctx)?
    } else {
        special::zeta_real(&ctx.float(m), ctx)?
    };
    let mut guard = CACHE.lock().unwrap();
    guard
        .get_or_insert_with(HashMap::new)
        .insert((wp, m), value.clone());
    Ok(value)
}

/// Shared driver for the adaptive Fourier sums: adds `term(n)` while the
/// majorant `bound(n)` (decreasing at worst by e^{-pi v} per step once
/// n >= n_min) sits above the threshold, and returns the cutoff and the
/// resulting geometric tail bound.
fn adaptive_sum<FB, FT>(
    v: &Real,
    n_min: usize,
    threshold: &Real,
    cutoff_override: usize,
    mut bound: FB,
    mut add_term: FT,
) -> Result<(usize, Real)>
where
    FB: FnMut(usize) -> Result<Real>,
    FT: FnMut(usize) -> Result<()>,
{
    let p = v.prec();
    let rho: Real = (-(Real::with_val(p, rug::float::Constant::Pi) * v)).exp();
    let one_minus_rho = Real::with_val(p, 1u32) - &rho;
    let stop_at = threshold.clone() * &one_minus_rho;
    let mut n = 1usize;
    loop {
        let b = bound(n)?;
        if n > n_min && b < stop_at {
            let tail = b * &rho / one_minus_rho;
            return Ok((n - 1, tail));
        }
        if cutoff_override > 0 && n > cutoff_override {
            return Err(Error::InsufficientCutoff {
                have: cutoff_override,
                need: n,
            });
        }
        add_term(n)?;
        n += 1;
        if n > 2_000_000 {
            return Err(Error::Domain(
                "fourier cutoff exceeded the hard limit".into(),
            ));
        }
    }
}

enum EisensteinOrder {
    /// Integer s = k >= 2: half-integer Bessel orders, closed forms.
    Integer(u32),
    /// General real s > 1: quadrature Bessel, gamma-function factors.
    General,
}

fn eisenstein_with(
    tau: &HalfPlanePoint,
    s: &Real,
    ctx: &PrecisionContext,
    mode: EisensteinOrder,
) -> Result<FourierEvaluation> {
    if !(s.clone() > 1f64) {
        return Err(Error::Domain(format!(
            "eisenstein series needs s > 1, got {s}"
        )));
    }
    let wp = ctx.working_prec();
    let pi = ctx.pi();
    let v = Real::with_val(wp, tau.v());
    let sqrt_v = v.clone().sqrt();

    // phi(s) = sqrt(pi) Gamma(s-1/2) zeta(2s-1) / (Gamma(s) zeta(2s)) and
    // the coefficient prefactor pi^s / (Gamma(s) zeta(2s))
    let (phi, coeff_pref, zeta_odd_bound) = match &mode {
        EisensteinOrder::Integer(k) => {
            let k = *k;
            let z_odd = zeta_int(2 * k - 1, ctx)?;
            let z_even = zeta_int(2 * k, ctx)?;
            let num = Rational::from((factorial(2 * k - 2), Integer::from(1)));
            let den = Rational::from(factorial(k - 1)).square()
                * Rational::from(Integer::from(4).pow(k - 1));
            let phi = pi.clone() * ctx.float_rat(&(num / den)) * &z_odd / &z_even;
            let pref = pi.clone().pow(k) / (ctx.float_rat(&Rational::from(factorial(k - 1))) * &z_even);
            (phi, pref, z_odd)
        }
        EisensteinOrder::General => {
            let two_s_minus_1: Real = s.clone() * 2u32 - 1u32;
            let two_s: Real = s.clone() * 2u32;
            let z_odd = special::zeta_real(&two_s_minus_1, ctx)?;
            let z_even = special::zeta_real(&two_s, ctx)?;
            let g_half: Real = (s.clone() - ctx.float(0.5f64)).gamma();
            let g_full = s.clone().gamma();
            let phi = ctx.pi().sqrt() * g_half * &z_odd / (g_full.clone() * &z_even);
            let pref = pi.clone().pow(s.clone()) / (g_full * z_even);
            (phi, pref, z_odd)
        }
    };

    let v_pow_s = v.clone().pow(s.clone());
    let v_pow_1ms = v.clone().pow(Real::with_val(wp, 1u32 - s.clone()));
    let constant_part = v_pow_s.clone() + phi.clone() * &v_pow_1ms;

    // absolute tail threshold, relative to the magnitude of the v-powers
    let scale = v_pow_s
        .clone()
        .abs()
        .max(&(phi.clone().abs() * &v_pow_1ms))
        .max(&ctx.float(1));
    let threshold = ctx.tail_target() * scale;

    let s_f = s.to_f64();
    let v_f = tau.v().to_f64();
    let n_min = ((s_f + 1.0) / (std::f64::consts::PI * v_f)).ceil().max(1.0) as usize;

    let two_pi_v = Real::with_val(wp, 2u32) * &pi * &v;
    let two_pi_u = Real::with_val(wp, 2u32) * &pi * tau.u();
    let bessel_majorant_order = s_f.ceil() as u32;

    let mut sum = Real::new(wp);
    let kappa: Real = s.clone() - ctx.float(0.5f64);
    let bound = |n: usize| -> Result<Real> {
        let x = two_pi_v.clone() * n as u32;
        let kb = special::k_bessel_half_upper(bessel_majorant_order, &x, ctx);
        let n_pow = ctx.float(n as u32).pow(kappa.clone());
        Ok(Real::with_val(wp, 4u32) * &sqrt_v * &coeff_pref * &zeta_odd_bound * n_pow * kb)
    };

    let mut add = |n: usize| -> Result<()> {
        let x = two_pi_v.clone() * n as u32;
        let k_val = match &mode {
            EisensteinOrder::Integer(k) => k_bessel_half(*k - 1, &x, ctx)?,
            EisensteinOrder::General => k_bessel_general(&kappa, &x, ctx)?,
        };
        let sigma_part = match &mode {
            EisensteinOrder::Integer(k) => {
                let sig = arith::sigma(1 - 2 * i64::from(*k), n as u64)?;
                ctx.float_rat(&sig) * ctx.float(n as u32).pow(kappa.clone())
            }
            EisensteinOrder::General => {
                // sum over factorizations ab = n of (a/b)^(s - 1/2)
                let mut acc = Real::new(wp);
                for d in crate::arith::divisors(n as u64) {
                    let ratio = ctx.float(d as u32) / ctx.float((n as u64 / d) as u32);
                    acc += ratio.pow(kappa.clone());
                }
                acc
            }
        };
        let cosine = (two_pi_u.clone() * n as u32).cos();
        sum += Real::with_val(wp, 2u32) * &sqrt_v * &coeff_pref * sigma_part * k_val * cosine * 2u32;
        Ok(())
    };

    let (cutoff, tail_bound) = adaptive_sum(&v, n_min, &threshold, ctx.cutoff, bound, &mut add)?;

    let value = BigComplex::with_val(wp, constant_part + sum);
    Ok(FourierEvaluation {
        value,
        cutoff,
        tail_bound,
    })
}

/// The weight-zero Maass Eisenstein series E(tau; s) for real s > 1, via
/// its K-Bessel Fourier expansion. Integer s uses the closed half-integer
/// Bessel forms and exact divisor sums.
pub fn eisenstein_maass(
    tau: &HalfPlanePoint,
    s: &Real,
    ctx: &PrecisionContext,
) -> Result<FourierEvaluation> {
    if s.is_integer() {
        if let Some(k) = s.to_u32_saturating() {
            if k >= 2 {
                return eisenstein_with(tau, s, ctx, EisensteinOrder::Integer(k));
            }
        }
    }
    eisenstein_with(tau, s, ctx, EisensteinOrder::General)
}

/// Force the general-s code path (gamma factors, quadrature Bessel) even at
/// integer s; used to cross-check the two routes and by the slow limit path.
pub fn eisenstein_maass_general(
    tau: &HalfPlanePoint,
    s: &Real,
    ctx: &PrecisionContext,
) -> Result<FourierEvaluation> {
    eisenstein_with(tau, s, ctx, EisensteinOrder::General)
}

/// Evaluate a q-series builder at l tau with automatic order selection,
/// honoring a context order override.
fn eval_auto<F>(
    builder: F,
    tau: &HalfPlanePoint,
    scale: u32,
    ctx: &PrecisionContext,
) -> Result<BigComplex>
where
    F: Fn(usize) -> Result<PowerSeries>,
{
    let mut order = if ctx.order > 0 {
        ctx.order
    } else {
        required_series_order(tau.v(), scale, ctx)
    };
    for attempt in 0..3 {
        let series = builder(order)?;
        match eval_series_at(&series, tau, scale, ctx) {
            Ok(v) => return Ok(v),
            Err(Error::InsufficientOrder { need, .. }) if ctx.order == 0 && attempt < 2 => {
                order = need.max(order + 16);
            }
            Err(e) => return Err(e),
        }
    }
    unreachable!("loop either returns or errors")
}

/// Twice the real part of a series evaluated at tau: f(q) + f(conj q) for
/// real-coefficient f.
fn two_re_eval<F>(builder: F, tau: &HalfPlanePoint, ctx: &PrecisionContext) -> Result<Real>
where
    F: Fn(usize) -> Result<PowerSeries>,
{
    let val = eval_auto(builder, tau, 1, ctx)?;
    Ok(Real::with_val(ctx.working_prec(), val.real()) * 2u32)
}

/// The completed first generating function: a real-valued function of tau,
/// 2 log 2 - gamma + 6 zeta'(2)/pi^2 - pi v / 2 + log(v)/2 + 2 Re g_1(q).
pub fn g1_hat(tau: &HalfPlanePoint, ctx: &PrecisionContext) -> Result<Real> {
    let wp = ctx.working_prec();
    let pi = ctx.pi();
    let v = Real::with_val(wp, tau.v());
    let series_part = two_re_eval(|n| qseries::g_series(1, n), tau, ctx)?;
    let constant = ctx.float(2) * ctx.ln2() - ctx.euler_gamma()
        + ctx.float(6) * zeta_prime_2(ctx) / pi.clone().square();
    Ok(constant - pi * &v / 2u32 + v.ln() / 2u32 + series_part)
}

/// The completed k-th generating function for k >= 2:
/// prefactor * (E(tau; k) - 2^k E(2 tau; k)), real-valued.
pub fn gk_hat(k: u32, tau: &HalfPlanePoint, ctx: &PrecisionContext) -> Result<Real> {
    if k < 2 {
        return Err(Error::Domain("gk_hat needs k >= 2".into()));
    }
    let wp = ctx.working_prec();
    let pre = gk_hat_prefactor(k, ctx)?;
    let s = ctx.float(k);
    let e1 = eisenstein_maass(tau, &s, ctx)?;
    let e2 = eisenstein_maass(&tau.scaled(2), &s, ctx)?;
    let combo = Real::with_val(wp, e1.value.real())
        - Real::with_val(wp, e2.value.real()) * Integer::from(2).pow(k);
    Ok(pre * combo)
}

/// (-1)^(k+1) (4 pi)^k (k-1)! B_{2k} / (2 (2k)!) as a float; for k = 2 this
/// is pi^2/90.
pub fn gk_hat_prefactor(k: u32, ctx: &PrecisionContext) -> Result<Real> {
    let sign = if k % 2 == 1 { -1 } else { 1 }; // (-1)^(k+1)
    let rational = Rational::from((Integer::from(4).pow(k) * factorial(k - 1) * sign, Integer::from(1)))
        * arith::bernoulli(2 * k)?
        / (Rational::from(factorial(2 * k)) * 2u32);
    Ok(ctx.float_rat(&(-rational)) * ctx.pi().pow(k))
}

/// The completed weight-two Eisenstein series
/// 1 - 24 sum sigma_1(n) q^n - 3/(pi v); complex off the imaginary axis.
pub fn e2_hat(tau: &HalfPlanePoint, ctx: &PrecisionContext) -> Result<BigComplex> {
    let wp = ctx.working_prec();
    let builder = |order: usize| -> Result<PowerSeries> {
        let mut s = PowerSeries::zero(order);
        s.set_coeff(0, Rational::from(1));
        for n in 1..=order {
            s.set_coeff(n, arith::sigma(1, n as u64)? * Rational::from(-24));
        }
        Ok(s)
    };
    let mut val = eval_auto(builder, tau, 1, ctx)?;
    let correction = ctx.float(3) / (ctx.pi() * tau.v());
    val -= BigComplex::with_val(wp, correction);
    Ok(val)
}

/// Closed form of the shadow of g1_hat: pi/6 (E2_hat(tau) - 4 E2_hat(2 tau)).
pub fn shadow_g1_closed(tau: &HalfPlanePoint, ctx: &PrecisionContext) -> Result<BigComplex> {
    let a = e2_hat(tau, ctx)?;
    let b = e2_hat(&tau.scaled(2), ctx)?;
    let combo = a - b * 4u32;
    Ok(combo * ctx.pi() / 6u32)
}

/// B_{2k} (4 pi)^{2k-1} / (2 (2k)!), the constant relating the starred and
/// unstarred completed Eichler integrals.
fn eichler_prefactor(k: u32, ctx: &PrecisionContext) -> Result<Real> {
    let rational = arith::bernoulli(2 * k)?
        * Rational::from(Integer::from(4).pow(2 * k - 1))
        / (Rational::from(factorial(2 * k)) * 2u32);
    Ok(ctx.float_rat(&rational) * ctx.pi().pow(2 * k as i32 - 1))
}

/// The completed Eichler integral of weight 2-2k evaluated at l tau:
/// pre v^{2k-1} + zeta(2k-1) + E_{2-2k}(l tau)
///   + sum sigma_{1-2k}(n) Gamma*(2k-1, 4 pi n v) q^{-n}.
pub fn eichler_completed(
    k: u32,
    l: u32,
    tau: &HalfPlanePoint,
    ctx: &PrecisionContext,
) -> Result<BigComplex> {
    if k < 2 {
        return Err(Error::Domain("eichler_completed needs k >= 2".into()));
    }
    let wp = ctx.working_prec();
    let pi = ctx.pi();
    let point = tau.scaled(l);
    let v = Real::with_val(wp, point.v());

    let pre = eichler_prefactor(k, ctx)?;
    let mut value = BigComplex::with_val(
        wp,
        pre * v.clone().pow(2 * k as i32 - 1) + zeta_int(2 * k - 1, ctx)?,
    );
    value += eval_auto(|n| qseries::eichler_coeffs(k, n), &point, 1, ctx)?;

    // Gamma* tail: sigma_{1-2k}(n) e^{-2 pi n v} S(4 pi n v) e^{-2 pi i n u}
    // with S(y) = sum_{j<2k-1} y^j/j!
    let zeta_bound = zeta_int(2 * k - 1, ctx)?;
    let threshold = ctx.tail_target();
    let n_min = (((2 * k) as f64) / (std::f64::consts::PI * point.v().to_f64()))
        .ceil()
        .max(1.0) as usize;
    let two_pi_v = Real::with_val(wp, 2u32) * &pi * &v;
    let two_pi_u = Real::with_val(wp, 2u32) * &pi * point.u();
    let four_pi_v = two_pi_v.clone() * 2u32;

    let poly = |n: usize| -> Real {
        let y = four_pi_v.clone() * n as u32;
        let mut sum = Real::with_val(wp, 1u32);
        let mut term = Real::with_val(wp, 1u32);
        for j in 1..(2 * k - 1) {
            term *= &y;
            term /= j;
            sum += &term;
        }
        sum
    };

    let mut tail_sum = BigComplex::new(wp);
    let bound = |n: usize| -> Result<Real> {
        let decay = (-(two_pi_v.clone() * n as u32)).exp();
        Ok(decay * poly(n) * &zeta_bound)
    };
    let add = |n: usize| -> Result<()> {
        let sig = ctx.float_rat(&arith::sigma(1 - 2 * i64::from(k), n as u64)?);
        let decay = (-(two_pi_v.clone() * n as u32)).exp();
        // Gamma*(2k-1, 4 pi n v) q^{-n} = e^{-2 pi n v} S(4 pi n v) e^{-2 pi i n u},
        // assembled from the unit phase so nothing overflows
        let (sin, cos) = (two_pi_u.clone() * n as u32).sin_cos(Real::new(wp));
        let phase = BigComplex::with_val(wp, (cos, -sin));
        tail_sum += phase * decay * poly(n) * sig;
        Ok(())
    };
    adaptive_sum(&v, n_min, &threshold, ctx.cutoff, bound, add)?;

    value += tail_sum;
    Ok(value)
}

/// The sesquiharmonic completed Eichler integral at l tau:
/// gamma - log 2 + pi v/6 - log(v)/2 - 6 zeta'(2)/pi^2 + 2 Re E_0(l tau).
pub fn eichler_sesqui(l: u32, tau: &HalfPlanePoint, ctx: &PrecisionContext) -> Result<BigComplex> {
    let wp = ctx.working_prec();
    let pi = ctx.pi();
    let point = tau.scaled(l);
    let v = Real::with_val(wp, point.v());
    let series = two_re_eval(|n| qseries::eichler_coeffs(1, n), &point, ctx)?;
    let value = ctx.euler_gamma() - ctx.ln2() + pi.clone() * &v / 6u32
        - v.clone().ln() / 2u32
        - ctx.float(6) * zeta_prime_2(ctx) / pi.square()
        + series;
    Ok(BigComplex::with_val(wp, value))
}

/// Raising-operator image assembled term family by term family from the
/// operator stencil: the v-power, the constant, the holomorphic q^n terms
/// and the incomplete-gamma terms, each with a closed D^r image.
pub fn raising_eichler_direct(
    k: u32,
    tau: &HalfPlanePoint,
    ctx: &PrecisionContext,
) -> Result<BigComplex> {
    if k < 2 {
        return Err(Error::Domain("raising operators need k >= 2".into()));
    }
    let wp = ctx.working_prec();
    let pi = ctx.pi();
    let v = Real::with_val(wp, tau.v());
    let four_pi = pi.clone() * 4u32;
    let km1 = k - 1;

    // stencil weights (-1)^r C(k-1, r) (2-2k+r)_{k-1-r}
    let stencil: Vec<Integer> = (0..=km1)
        .map(|r| {
            let sign = if r % 2 == 0 { 1 } else { -1 };
            arith::binomial(km1, r) * rising_factorial(2 - 2 * i64::from(k) + i64::from(r), km1 - r) * sign
        })
        .collect();

    // family 1: prefactor * stencil applied to v^{2k-1}
    let pre = eichler_prefactor(k, ctx)?;
    let mut v_power_sum = Real::new(wp);
    for r in 0..=km1 {
        // (4 pi)^r D^r (v^{2k-1}) = (-1)^r (2k-1)!/(2k-1-r)! v^{2k-1-r}
        let sign = if r % 2 == 0 { 1 } else { -1 };
        let deriv_coeff = Rational::from((
            factorial(2 * k - 1) * sign,
            factorial(2 * k - 1 - r),
        ));
        let w = ctx.float_rat(&(Rational::from(&stencil[r as usize]) * deriv_coeff));
        v_power_sum += w * v.clone().pow(k as i32);
    }
    let family1 = pre * v_power_sum;

    // family 2: zeta(2k-1) * stencil applied to 1 (only r = 0 survives)
    let family2 = zeta_int(2 * k - 1, ctx)?
        * ctx.float_rat(&Rational::from(&stencil[0]))
        * v.clone().pow(1 - k as i32);

    // families 3 and 4 share the adaptive loop over n
    let zeta_bound = zeta_int(2 * k - 1, ctx)?;
    let threshold = ctx.tail_target();
    let n_min = (((2 * k) as f64) / (std::f64::consts::PI * tau.v().to_f64()))
        .ceil()
        .max(1.0) as usize;
    let two_pi_v = Real::with_val(wp, 2u32) * &pi * &v;
    let sign_k = if (k + 1) % 2 == 0 { 1i32 } else { -1 }; // (-1)^(k+1)

    // family 3 polynomial: sum_r stencil_r (4 pi n)^r v^{r+1-k}
    let holo_poly = |n: usize| -> Real {
        let mut acc = Real::new(wp);
        for r in 0..=km1 {
            let base = four_pi.clone() * n as u32 * &v;
            acc += ctx.float_rat(&Rational::from(&stencil[r as usize])) * base.pow(r as i32);
        }
        acc * v.clone().pow(1 - k as i32)
    };
    let holo_poly_abs = |n: usize| -> Real {
        let mut acc = Real::new(wp);
        for r in 0..=km1 {
            let base = four_pi.clone() * n as u32 * &v;
            let w = ctx.float_rat(&Rational::from(stencil[r as usize].clone().abs()));
            acc += w * base.pow(r as i32);
        }
        acc * v.clone().pow(1 - k as i32)
    };

    // family 4 integral polynomial:
    // v^{1-k}/(k-1)! sum_r C(k-1,r) (4 pi n v)^{k-1-r} (k+r-1)!
    let gamma_poly = |n: usize| -> Real {
        let mut acc = Real::new(wp);
        for r in 0..=km1 {
            let c = Rational::from((
                arith::binomial(km1, r) * factorial(k + r - 1),
                factorial(km1),
            ));
            let base = four_pi.clone() * n as u32 * &v;
            acc += ctx.float_rat(&c) * base.pow((km1 - r) as i32);
        }
        acc * v.clone().pow(1 - k as i32)
    };

    let mut fourier = BigComplex::new(wp);
    let bound = |n: usize| -> Result<Real> {
        let decay = (-(two_pi_v.clone() * n as u32)).exp();
        Ok(decay * (holo_poly_abs(n) + gamma_poly(n)) * &zeta_bound)
    };
    let add = |n: usize| -> Result<()> {
        let sig = ctx.float_rat(&arith::sigma(1 - 2 * i64::from(k), n as u64)?);
        let q_n = exp_two_pi_i_n_tau(n as i64, tau, &pi);
        let q_bar_n = exp_two_pi_i_n_tau(n as i64, tau, &pi).conj();
        fourier += q_n * holo_poly(n) * &sig;
        fourier += q_bar_n * gamma_poly(n) * sig * sign_k;
        Ok(())
    };
    adaptive_sum(&v, n_min, &threshold, ctx.cutoff, bound, add)?;

    let mut value = fourier;
    value += BigComplex::with_val(wp, family1 + family2);
    Ok(value)
}

/// Raising-operator image from the closed Fourier expansion with
/// half-integer K-Bessel values; real-valued.
pub fn raising_eichler_closed(
    k: u32,
    tau: &HalfPlanePoint,
    ctx: &PrecisionContext,
) -> Result<BigComplex> {
    if k < 2 {
        return Err(Error::Domain("raising operators need k >= 2".into()));
    }
    let wp = ctx.working_prec();
    let pi = ctx.pi();
    let v = Real::with_val(wp, tau.v());
    let sign_k = if (k + 1) % 2 == 0 { 1i32 } else { -1 };

    let lead = eichler_prefactor(k, ctx)?
        * ctx.float_rat(&Rational::from(factorial(k - 1)))
        * v.clone().pow(k as i32);
    let sub = zeta_int(2 * k - 1, ctx)?
        * ctx.float_rat(&Rational::from((factorial(2 * k - 2) * sign_k, factorial(k - 1))))
        * v.clone().pow(1 - k as i32);

    let zeta_bound = zeta_int(2 * k - 1, ctx)?;
    let front = (v.clone() / &pi).sqrt();
    let threshold = ctx.tail_target();
    let n_min = (((2 * k) as f64) / (std::f64::consts::PI * tau.v().to_f64()))
        .ceil()
        .max(1.0) as usize;
    let two_pi_v = Real::with_val(wp, 2u32) * &pi * &v;
    let two_pi_u = Real::with_val(wp, 2u32) * &pi * tau.u();
    let four_pi = pi.clone() * 4u32;
    let kappa = ctx.float(k) - ctx.float(0.5f64);

    let mut sum = Real::new(wp);
    let bound = |n: usize| -> Result<Real> {
        let x = two_pi_v.clone() * n as u32;
        let kb = k_bessel_half(k - 1, &x, ctx)?;
        let factor = (four_pi.clone() * n as u32).pow(kappa.clone());
        Ok(Real::with_val(wp, 2u32) * &front * &zeta_bound * factor * kb)
    };
    let add = |n: usize| -> Result<()> {
        let sig = ctx.float_rat(&arith::sigma(1 - 2 * i64::from(k), n as u64)?);
        let x = two_pi_v.clone() * n as u32;
        let kb = k_bessel_half(k - 1, &x, ctx)?;
        let factor = (four_pi.clone() * n as u32).pow(kappa.clone());
        let cosine = (two_pi_u.clone() * n as u32).cos();
        sum += front.clone() * sig * factor * kb * cosine * 2u32;
        Ok(())
    };
    adaptive_sum(&v, n_min, &threshold, ctx.cutoff, bound, add)?;

    Ok(BigComplex::with_val(wp, lead + sub + sum * sign_k))
}

/// B_{2k} (4 pi)^{2k-1} (k-1)! / (2 (2k)!), the constant carrying the
/// raising image of the completed Eichler integral onto E(tau; k).
pub fn raising_to_eisenstein_constant(k: u32, ctx: &PrecisionContext) -> Result<Real> {
    Ok(eichler_prefactor(k, ctx)? * ctx.float_rat(&Rational::from(factorial(k - 1))))
}

/// The q-series that survives in the raising image: coefficients
/// n^{k-1} sigma_{1-2k}(n), i.e. (q d/dq)^{k-1} of the Eichler integral.
pub fn holomorphic_part_extract(k: u32, order: usize) -> Result<PowerSeries> {
    if k < 2 {
        return Err(Error::Domain(
            "holomorphic_part_extract needs k >= 2".into(),
        ));
    }
    let mut s = qseries::eichler_coeffs(k, order)?;
    for _ in 1..k {
        s = s.q_derivative();
    }
    Ok(s)
}

/// Right-hand side of the limit formula at the spectral point:
/// (6/pi)(gamma - log 2 - log(sqrt v |eta(tau)|^2)) - 36 zeta'(2)/pi^3.
pub fn kronecker_limit(tau: &HalfPlanePoint, ctx: &PrecisionContext) -> Result<Real> {
    let wp = ctx.working_prec();
    let pi = ctx.pi();
    let eta = special::dedekind_eta(tau, ctx)?;
    let eta_norm_sqr = cabs(&eta).square();
    let v = Real::with_val(wp, tau.v());
    let log_part = (v.sqrt() * eta_norm_sqr).ln();
    let main = ctx.float(6) / &pi * (ctx.euler_gamma() - ctx.ln2() - log_part);
    let correction = ctx.float(36) * zeta_prime_2(ctx) / pi.pow(3);
    Ok(main - correction)
}

/// g1_hat assembled from the limit formula:
/// -pi/6 (2 Kr(2 tau) - Kr(tau)), the regrouped spectral-limit route.
pub fn g1_hat_via_kronecker(tau: &HalfPlanePoint, ctx: &PrecisionContext) -> Result<Real> {
    let kr1 = kronecker_limit(tau, ctx)?;
    let kr2 = kronecker_limit(&tau.scaled(2), ctx)?;
    Ok(-(ctx.pi() / 6u32) * (kr2 * 2u32 - kr1))
}

/// Direct spectral evaluation E(tau; 1+eps) - 3/(pi eps) for the slow limit
/// route; the caller extrapolates in eps.
pub fn eisenstein_limit_direct(
    tau: &HalfPlanePoint,
    eps: f64,
    ctx: &PrecisionContext,
) -> Result<Real> {
    let wp = ctx.working_prec();
    let s = ctx.float(1) + ctx.float(eps);
    let e = eisenstein_maass_general(tau, &s, ctx)?;
    let pole = ctx.float(3) / (ctx.pi() * ctx.float(eps));
    Ok(Real::with_val(wp, e.value.real()) - pole)
}

/// The eta-quotient form of g_1: 2 Log eta(2 tau) - pi i tau / 4 - Log eta(tau)
/// with principal logarithms. Agrees with the q-expansion modulo 2 pi i Z;
/// [`eta_identity_multiple`] reports the integer multiple.
pub fn g1_eta_identity(tau: &HalfPlanePoint, ctx: &PrecisionContext) -> Result<BigComplex> {
    let wp = ctx.working_prec();
    let pi = ctx.pi();
    let eta2 = special::dedekind_eta(&tau.scaled(2), ctx)?;
    let eta1 = special::dedekind_eta(tau, ctx)?;
    let log2t = eta2.ln() * 2u32;
    let log1t = eta1.ln();
    // pi i tau / 4 = (-pi v / 4) + i (pi u / 4)
    let lin = BigComplex::with_val(
        wp,
        (
            -(pi.clone() * tau.v()) / 4u32,
            pi.clone() * tau.u() / 4u32,
        ),
    );
    Ok(log2t - lin - log1t)
}

/// Compare the eta-quotient form against the q-expansion of g_1: returns
/// (integer winding multiple m, |difference - 2 pi i m|).
pub fn eta_identity_multiple(
    tau: &HalfPlanePoint,
    ctx: &PrecisionContext,
) -> Result<(i64, Real)> {
    let wp = ctx.working_prec();
    let rhs = g1_eta_identity(tau, ctx)?;
    let lhs = eval_auto(|n| qseries::g_series(1, n), tau, 1, ctx)?;
    let diff = lhs - rhs;
    let two_pi = ctx.float(2) * ctx.pi();
    let m_real = Real::with_val(wp, diff.imag()) / &two_pi;
    let m = m_real.to_f64().round() as i64;
    let residual = BigComplex::with_val(wp, (diff.real(), Real::with_val(wp, diff.imag()) - two_pi * m));
    Ok((m, cabs(&residual)))
}

/// The explicit elementary form of the completed second generating
/// function: g_2(q) + g_2(conj q) - pi^2 v^2/6
/// + (G_2(q) + G_2(conj q) - zeta(3)) / (2 pi v).
pub fn g2_hat_explicit(tau: &HalfPlanePoint, ctx: &PrecisionContext) -> Result<Real> {
    let wp = ctx.working_prec();
    let pi = ctx.pi();
    let v = Real::with_val(wp, tau.v());
    let g2_part = two_re_eval(|n| qseries::g_series(2, n), tau, ctx)?;
    let cal_part = two_re_eval(|n| qseries::eichler_difference(2, n), tau, ctx)?;
    let zeta3 = zeta_int(3, ctx)?;
    Ok(g2_part - pi.clone().square() * v.clone().square() / 6u32
        + (cal_part - zeta3) / (ctx.float(2) * pi * v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(bits: u32) -> PrecisionContext {
        PrecisionContext::new(bits).unwrap()
    }

    fn point(ctx: &PrecisionContext, u: f64, v: f64) -> HalfPlanePoint {
        HalfPlanePoint::from_f64(ctx, u, v).unwrap()
    }

    fn assert_tol(diff: &Real, tol: &Real, what: &str) {
        assert!(diff < tol, "{what}: deviation {diff} >= {tol}");
    }

    #[test]
    fn gamma0_validation() {
        assert!(Gamma0Element::new(1, 1, 0, 1, 2).is_ok());
        assert!(Gamma0Element::new(1, 1, 1, 1, 2).is_err()); // det 0
        assert!(Gamma0Element::new(0, -1, 1, 0, 2).is_err()); // c not 0 mod 2
        assert!(Gamma0Element::new(3, 1, 2, 1, 2).is_ok());
    }

    #[test]
    fn mobius_examples() {
        let c = ctx(96);
        let tau = point(&c, 0.9, 0.7);
        let id = Gamma0Element::new(1, 0, 0, 1, 1).unwrap();
        let (same, factor) = mobius_act(&id, &tau);
        assert_eq!(same.u().to_f64(), 0.9);
        assert_eq!(same.v().to_f64(), 0.7);
        assert_eq!(factor.real().to_f64(), 1.0);

        let t = Gamma0Element::translation(1);
        let (moved, _) = mobius_act(&t, &tau);
        assert!((moved.u().to_f64() - 1.9).abs() < 1e-15);
        assert_eq!(moved.v().to_f64(), 0.7);

        let s = Gamma0Element::inversion();
        let taui = point(&c, 0.0, 1.0);
        let (fixed, _) = mobius_act(&s, &taui);
        assert!(fixed.u().to_f64().abs() < 1e-30);
        assert!((fixed.v().to_f64() - 1.0).abs() < 1e-30);
    }

    #[test]
    fn eisenstein_matches_explicit_expansion_at_two() {
        // E(tau; 2) = v^2 + 45 zeta(3)/(pi^3 v)
        //   + (90/pi^2) sum n sigma_{-3}(n) (1 + 1/(2 pi n v)) (q^n + conj q^n)
        let c = ctx(128);
        let wp = c.working_prec();
        let tau = point(&c, 0.31, 0.77);
        let e = eisenstein_maass(&tau, &c.float(2), &c).unwrap();
        assert!(e.is_sufficient(&c));

        let pi = c.pi();
        let v = Real::with_val(wp, tau.v());
        let mut expect = v.clone().square()
            + c.float(45) * zeta_int(3, &c).unwrap() / (pi.clone().pow(3) * &v);
        let mut n = 1usize;
        loop {
            let decay = (-(c.float(2) * &pi * &v * n as u32)).exp();
            if decay < (Real::with_val(wp, 1u32) >> (wp - 8)) {
                break;
            }
            let sig = c.float_rat(&arith::sigma(-3, n as u64).unwrap());
            let weight = c.float(1) + c.float(1) / (c.float(2) * &pi * n as u32 * &v);
            let cosine = (c.float(2) * &pi * tau.u() * n as u32).cos();
            expect += c.float(90) / pi.clone().square()
                * c.float(n as u32)
                * sig
                * weight
                * decay
                * cosine
                * 2u32;
            n += 1;
        }
        let got = Real::with_val(wp, e.value.real());
        let diff = Real::with_val(wp, got - expect).abs();
        assert_tol(&diff, &(c.tolerance() * 64u32), "explicit expansion at s=2");
    }

    #[test]
    fn eisenstein_integer_and_general_paths_agree() {
        let c = ctx(96);
        let tau = point(&c, 0.3, 0.9);
        let fast = eisenstein_maass(&tau, &c.float(2), &c).unwrap();
        let slow = eisenstein_maass_general(&tau, &c.float(2), &c).unwrap();
        let diff = cabs(&(fast.value.clone() - slow.value));
        let tol = c.tolerance() << c.guard();
        assert_tol(&diff, &tol, "integer vs general eisenstein path");
    }

    #[test]
    fn eisenstein_rejects_low_s() {
        let c = ctx(96);
        let tau = point(&c, 0.0, 1.0);
        assert!(eisenstein_maass(&tau, &c.float(1), &c).is_err());
        assert!(eisenstein_maass(&tau, &c.float(0.7f64), &c).is_err());
    }

    #[test]
    fn eisenstein_full_modular_invariance() {
        let c = ctx(128);
        let tau = point(&c, 0.3, 0.9);
        let s = c.float(2);
        let base = eisenstein_maass(&tau, &s, &c).unwrap();
        for gamma in [Gamma0Element::translation(1), Gamma0Element::inversion()] {
            let (image, _) = mobius_act(&gamma, &tau);
            let moved = eisenstein_maass(&image, &s, &c).unwrap();
            let diff = cabs(&(moved.value.clone() - base.value.clone()));
            assert_tol(&diff, &(c.tolerance() * 64u32), "E invariance");
        }
    }

    #[test]
    fn g1_hat_is_translation_invariant() {
        let c = ctx(128);
        let tau = point(&c, 0.2, 0.7);
        let shifted = tau.shifted(&c.float(1), &c.float(0)).unwrap();
        let a = g1_hat(&tau, &c).unwrap();
        let b = g1_hat(&shifted, &c).unwrap();
        let diff = (a - b).abs();
        assert_tol(&diff, &(c.tolerance() * 16u32), "g1_hat T-invariance");
    }

    #[test]
    fn g1_hat_equals_sesqui_eichler_combination() {
        let c = ctx(128);
        for (u, v) in [(0.27, 0.91), (0.0, 1.3)] {
            let tau = point(&c, u, v);
            let direct = g1_hat(&tau, &c).unwrap();
            let e1 = eichler_sesqui(1, &tau, &c).unwrap();
            let e2 = eichler_sesqui(2, &tau, &c).unwrap();
            let combo = Real::with_val(c.working_prec(), e1.real())
                - Real::with_val(c.working_prec(), e2.real()) * 2u32;
            let diff = (direct - combo).abs();
            assert_tol(&diff, &(c.tolerance() * 16u32), "sesqui combination");
        }
    }

    #[test]
    fn g1_hat_matches_kronecker_route() {
        let c = ctx(128);
        for (u, v) in [(0.37, 1.1), (0.0, 1.0)] {
            let tau = point(&c, u, v);
            let a = g1_hat(&tau, &c).unwrap();
            let b = g1_hat_via_kronecker(&tau, &c).unwrap();
            let diff = (a - b).abs();
            assert_tol(&diff, &(c.tolerance() * 64u32), "kronecker route");
        }
    }

    #[test]
    fn g2_prefactor_and_explicit_form() {
        let c = ctx(128);
        let pre = gk_hat_prefactor(2, &c).unwrap();
        let expect = c.pi().square() / 90u32;
        let diff = (pre - expect).abs();
        assert_tol(&diff, &c.tail_target(), "pi^2/90 prefactor");

        let tau = point(&c, 0.41, 0.83);
        let a = gk_hat(2, &tau, &c).unwrap();
        let b = g2_hat_explicit(&tau, &c).unwrap();
        let diff = (a - b).abs();
        assert_tol(&diff, &(c.tolerance() * 64u32), "explicit g2_hat");
    }

    #[test]
    fn gk_hat_small_v_stress() {
        let c = ctx(96);
        let tau = point(&c, 0.0, 0.6);
        let a = gk_hat(2, &tau, &c).unwrap();
        let b = g2_hat_explicit(&tau, &c).unwrap();
        let diff = (a - b).abs();
        assert_tol(&diff, &(c.tolerance() * 64u32), "explicit g2_hat small v");
    }

    #[test]
    fn e2_hat_real_on_imaginary_axis_and_large_v() {
        let c = ctx(128);
        let tau = point(&c, 0.0, 2.0);
        let val = e2_hat(&tau, &c).unwrap();
        assert!(Real::with_val(160, val.imag()).abs() < c.tolerance());

        let far = point(&c, 0.0, 20.0);
        let val = e2_hat(&far, &c).unwrap();
        let expect = c.float(1) - c.float(3) / (c.pi() * 20u32);
        let diff = (Real::with_val(c.working_prec(), val.real()) - expect).abs();
        // remaining error is the q-series tail, of size about e^{-40 pi}
        let ceiling = c.float(1e-53f64);
        assert!(diff < ceiling, "large-v constant term: {diff}");
    }

    #[test]
    fn e2_hat_weight_two_inversion() {
        // E2_hat(-1/tau) = tau^2 E2_hat(tau) at tau = 1.3 i
        let c = ctx(128);
        let tau = point(&c, 0.0, 1.3);
        let (image, _) = mobius_act(&Gamma0Element::inversion(), &tau);
        let lhs = e2_hat(&image, &c).unwrap();
        let tau_sq = tau.to_complex().square();
        let rhs = e2_hat(&tau, &c).unwrap() * tau_sq;
        let diff = cabs(&(lhs - rhs));
        assert_tol(&diff, &(c.tolerance() * 16u32), "weight-2 inversion");
    }

    #[test]
    fn eichler_completed_modularity() {
        let c = ctx(96);
        let wp = c.working_prec();
        let tau = point(&c, 0.3, 0.8);
        // period 1 in u
        let shifted = tau.shifted(&c.float(1), &c.float(0)).unwrap();
        let a = eichler_completed(2, 1, &tau, &c).unwrap();
        let b = eichler_completed(2, 1, &shifted, &c).unwrap();
        assert_tol(&cabs(&(a.clone() - b)), &(c.tolerance() * 16u32), "period 1");

        // weight 2-2k slash invariance under the level-2 generator:
        // (c tau + d)^{2k-2} f(gamma tau) = f(tau) for f = E_{-2} completed at l = 2
        let gamma = Gamma0Element::lower(2);
        let (image, factor) = mobius_act(&gamma, &tau);
        let f_image = eichler_completed(2, 2, &image, &c).unwrap();
        let f_base = eichler_completed(2, 2, &tau, &c).unwrap();
        let weighted = f_image * factor.pow(2u32);
        let diff = cabs(&(weighted - f_base.clone()));
        let scale = cabs(&f_base).max(&Real::with_val(wp, 1u32));
        let rel = diff / scale;
        assert_tol(&rel, &(c.tolerance() * 64u32), "slash invariance");
    }

    #[test]
    fn eichler_sesqui_level_one_inversion() {
        let c = ctx(96);
        let tau = point(&c, 0.0, 1.1);
        let (image, _) = mobius_act(&Gamma0Element::inversion(), &tau);
        let a = eichler_sesqui(1, &tau, &c).unwrap();
        let b = eichler_sesqui(1, &image, &c).unwrap();
        let diff = cabs(&(a - b));
        assert_tol(&diff, &(c.tolerance() * 16u32), "sesqui inversion");
    }

    #[test]
    fn raising_dual_paths_agree() {
        let c = ctx(96);
        let wp = c.working_prec();
        for k in [2u32, 3] {
            for (u, v) in [(0.3, 0.8), (0.1, 1.5)] {
                let tau = point(&c, u, v);
                let direct = raising_eichler_direct(k, &tau, &c).unwrap();
                let closed = raising_eichler_closed(k, &tau, &c).unwrap();
                let diff = cabs(&(direct.clone() - closed.clone()));
                let scale = cabs(&closed).max(&Real::with_val(wp, 1u32));
                assert_tol(&(diff / scale), &(c.tolerance() * 256u32), "direct vs closed");

                // third route: the constant multiple of E(tau; k)
                let e = eisenstein_maass(&tau, &c.float(k), &c).unwrap();
                let constant = eichler_prefactor(k, &c).unwrap()
                    * c.float_rat(&Rational::from(factorial(k - 1)));
                let via_e = e.value * constant;
                let diff2 = cabs(&(direct - via_e.clone()));
                let scale2 = cabs(&via_e).max(&Real::with_val(wp, 1u32));
                assert_tol(&(diff2 / scale2), &(c.tolerance() * 256u32), "direct vs c E");
            }
        }
    }

    #[test]
    fn raising_closed_term_coefficients_for_k2() {
        let c = ctx(96);
        // v^k coefficient: B_4 (4 pi)^3 / (2 4!) * 1!
        let lead = eichler_prefactor(2, &c).unwrap();
        let expect = c.float_rat(&Rational::from((-1, 30))) * (c.pi() * 4u32).pow(3) / 48u32;
        let dev = Real::with_val(c.working_prec(), lead - expect).abs();
        assert_tol(&dev, &c.tail_target(), "v^2 coefficient");

        // v^{1-k} coefficient: (-1)^{k+1} zeta(2k-1) (2k-2)!/(k-1)! = -2 zeta(3)
        let sub = zeta_int(3, &c).unwrap()
            * c.float_rat(&Rational::from((factorial(2) * (-1), factorial(1))));
        let expect = -(c.float(2) * zeta_int(3, &c).unwrap());
        assert_tol(&(sub - expect).abs(), &c.tail_target(), "v^{-1} coefficient");
    }

    #[test]
    fn holomorphic_part_reproduces_g_series() {
        // tau copy minus 2 * (2 tau copy); the 2 tau copy of the raising
        // image carries the extra 2^{k-1} from rescaling the argument
        for k in [2u32, 3] {
            let hol = holomorphic_part_extract(k, 30).unwrap();
            let doubled = hol
                .stretch(2)
                .scale(&Rational::from(Integer::from(2).pow(k)));
            let diff = &hol - &doubled;
            assert_eq!(diff, qseries::g_series(k, 30).unwrap(), "k = {k}");
        }
        // k = 2 coefficient n sigma_{-3}(n) at n = 3 is 28/9
        let hol = holomorphic_part_extract(2, 4).unwrap();
        assert_eq!(hol.coeff(3), &Rational::from((28, 9)));
    }

    #[test]
    fn kronecker_limit_is_modular() {
        let c = ctx(128);
        let tau = point(&c, 0.0, 1.2);
        let base = kronecker_limit(&tau, &c).unwrap();
        let shifted = tau.shifted(&c.float(1), &c.float(0)).unwrap();
        let t = kronecker_limit(&shifted, &c).unwrap();
        assert_tol(&(t - &base).abs(), &(c.tolerance() * 16u32), "Kr T-invariance");
        let (image, _) = mobius_act(&Gamma0Element::inversion(), &tau);
        let s = kronecker_limit(&image, &c).unwrap();
        assert_tol(&(s - base).abs(), &(c.tolerance() * 16u32), "Kr S-invariance");
    }

    #[test]
    fn eta_identity_on_axis_and_branch() {
        let c = ctx(128);
        let tau = point(&c, 0.0, 1.5);
        let rhs = g1_eta_identity(&tau, &c).unwrap();
        assert!(Real::with_val(160, rhs.imag()).abs() < c.tolerance() * 16u32);
        let (m, residual) = eta_identity_multiple(&tau, &c).unwrap();
        assert_eq!(m, 0);
        assert_tol(&residual, &(c.tolerance() * 16u32), "eta identity residual");

        let off = point(&c, 0.3, 0.9);
        let (m, residual) = eta_identity_multiple(&off, &c).unwrap();
        assert_eq!(m, 0, "expected trivial winding for v >= 0.5");
        assert_tol(&residual, &(c.tolerance() * 16u32), "eta identity off-axis");

        // both sides vanish as v grows
        let far = point(&c, 0.0, 30.0);
        let rhs = g1_eta_identity(&far, &c).unwrap();
        assert!(cabs(&rhs) < c.float(1e-35f64));
    }

    #[test]
    fn limit_direct_small_eps_converges() {
        let c = ctx(96);
        let tau = point(&c, 0.0, 1.0);
        let reference = kronecker_limit(&tau, &c).unwrap();
        let f1 = eisenstein_limit_direct(&tau, 1e-2, &c).unwrap();
        let f2 = eisenstein_limit_direct(&tau, 1e-3, &c).unwrap();
        let extrapolated = (f2.clone() * 10u32 - f1) / 9u32;
        let rel = (extrapolated - &reference).abs() / reference.abs();
        assert!(rel < 1e-2, "extrapolated limit deviates: {rel}");
    }
}
