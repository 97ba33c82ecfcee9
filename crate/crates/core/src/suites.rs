//! Named verification suites: each check pins one identity or contract and
//! reports a structured pass/fail with its tolerance.

use std::time::Instant;

use rug::ops::Pow;

use crate::complex::{cabs, exp_two_pi_i_n_tau, HalfPlanePoint};
use crate::error::{Error, Result};
use crate::maass::{self, Gamma0Element};
use crate::numdiff::{self, StencilConfig};
use crate::partitions;
use crate::precision::PrecisionContext;
use crate::qseries;
use crate::report::{CheckReport, SuiteManifest, SuiteReport};
use crate::series::PowerSeries;
use crate::special;
use crate::{arith, BigComplex, Rational, Real};

/// Relative tolerance of the order-4 + one-Richardson shadow comparison.
pub const SHADOW_REL_TOL: f64 = 1e-8;
/// Relative tolerance of the Laplacian eigenvalue checks.
pub const EIGENVALUE_REL_TOL: f64 = 1e-6;
/// Loose tolerance for the doubly-nested stencil composition check.
pub const COMPOSITION_REL_TOL: f64 = 1e-4;
/// Epsilon ladder for the slow direct spectral-limit check.
pub const LIMIT_EPS: [f64; 2] = [1e-2, 1e-3];

/// The named suites, plus "all".
pub const SUITE_NAMES: [&str; 8] = [
    "exact",
    "modularity",
    "shadow",
    "eigenvalue",
    "limit",
    "example",
    "twisted",
    "all",
];

/// Inputs of a suite run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub ctx: PrecisionContext,
    pub points: Vec<(f64, f64)>,
    pub slow: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            ctx: PrecisionContext::default(),
            points: default_points(),
            slow: false,
        }
    }
}

/// The six reproducible sample points, spanning v in [0.4, 2].
pub fn default_points() -> Vec<(f64, f64)> {
    vec![
        (0.3, 0.8),
        (0.37, 1.1),
        (0.41, 0.83),
        (0.1, 1.5),
        (0.25, 0.4),
        (0.0, 2.0),
    ]
}

/// The headline float tolerance 10^(-prec/5).
pub fn acceptance_tol(ctx: &PrecisionContext) -> Real {
    ctx.float(10).pow(-(ctx.prec() as f64) / 5.0)
}

/// Translation, the level-2 lower-triangular generator, and three short
/// products of the two.
pub fn gamma0_2_words() -> Vec<Gamma0Element> {
    let t = Gamma0Element::translation(2);
    let v = Gamma0Element::lower(2);
    let tv = t.compose(&v).expect("valid word");
    let vt = v.compose(&t).expect("valid word");
    let tvt = tv.compose(&t).expect("valid word");
    vec![t, v, tv, vt, tvt]
}

fn lift_points(cfg: &RunConfig) -> Result<Vec<HalfPlanePoint>> {
    cfg.points
        .iter()
        .map(|&(u, v)| HalfPlanePoint::from_f64(&cfg.ctx, u, v))
        .collect()
}

fn labels(points: &[HalfPlanePoint]) -> Vec<String> {
    points.iter().map(|p| p.label()).collect()
}

fn run_float<F>(id: &str, anchor: &str, body: F) -> CheckReport
where
    F: FnOnce() -> Result<(Vec<String>, Real, Real)>,
{
    let t0 = Instant::now();
    match body() {
        Ok((points, dev, tol)) => CheckReport::float_check(id, anchor, points, &dev, &tol, t0),
        Err(e) => CheckReport::errored(id, anchor, &e, t0),
    }
}

fn run_exact<F>(id: &str, anchor: &str, body: F) -> CheckReport
where
    F: FnOnce() -> Result<(Vec<String>, bool)>,
{
    let t0 = Instant::now();
    match body() {
        Ok((points, mismatch)) => CheckReport::exact_check(id, anchor, points, mismatch, t0),
        Err(e) => CheckReport::errored(id, anchor, &e, t0),
    }
}

fn max_dev(acc: &mut Real, candidate: Real) {
    if candidate > *acc {
        *acc = candidate;
    }
}

fn abs_diff(a: &Real, b: &Real) -> Real {
    Real::with_val(a.prec().max(b.prec()), a - b).abs()
}

// ---------------------------------------------------------------------------
// exact suite
// ---------------------------------------------------------------------------

fn check_moment_oracle(cfg: &RunConfig) -> CheckReport {
    let _ = cfg;
    run_exact(
        "exact.moment_oracle",
        "moment generating series coefficients equal brute-force s_k(n)",
        || {
            let mut mismatch = false;
            for k in 1..=5u32 {
                let series = qseries::moment_series(k, 25)?;
                for n in 0..=25usize {
                    if series.coeff(n) != &partitions::s_oracle(k, n as u64) {
                        mismatch = true;
                    }
                }
            }
            Ok((vec!["k <= 5, n <= 25".into()], mismatch))
        },
    )
}

fn check_product_identity_s1(cfg: &RunConfig) -> CheckReport {
    let _ = cfg;
    run_exact(
        "exact.product_identity_s1",
        "sum s_1(n) q^n = (-q;q)_inf * g_1(q)",
        || {
            let order = 40usize;
            let rhs = &qseries::pochhammer_neg_q(order) * &qseries::g_series(1, order)?;
            let mut mismatch = false;
            for n in 0..=order {
                if rhs.coeff(n) != &partitions::s_oracle(1, n as u64) {
                    mismatch = true;
                }
            }
            Ok((vec!["n <= 40".into()], mismatch))
        },
    )
}

fn check_product_identity_s2(cfg: &RunConfig) -> CheckReport {
    let _ = cfg;
    run_exact(
        "exact.product_identity_s2",
        "sum s_2(n) q^n = (-q;q)_inf * (g_1^2 + g_2)",
        || {
            let order = 40usize;
            let g1 = qseries::g_series(1, order)?;
            let g2 = qseries::g_series(2, order)?;
            let rhs = &qseries::pochhammer_neg_q(order) * &(&g1.pow(2) + &g2);
            let mut mismatch = false;
            for n in 0..=order {
                if rhs.coeff(n) != &partitions::s_oracle(2, n as u64) {
                    mismatch = true;
                }
            }
            Ok((vec!["n <= 40".into()], mismatch))
        },
    )
}

fn check_distinct_counts(cfg: &RunConfig) -> CheckReport {
    let _ = cfg;
    run_exact(
        "exact.distinct_counts",
        "(-q;q)_inf coefficients count partitions into distinct parts",
        || {
            let poch = qseries::pochhammer_neg_q(40);
            let mut mismatch = false;
            for n in 0..=40usize {
                let count = partitions::enumerate_distinct(n as u64).count();
                if poch.coeff(n) != &Rational::from(count as u64) {
                    mismatch = true;
                }
            }
            Ok((vec!["n <= 40".into()], mismatch))
        },
    )
}

fn check_g1_divisor_form(cfg: &RunConfig) -> CheckReport {
    let _ = cfg;
    run_exact(
        "exact.g1_divisor_form",
        "g_1 coefficients equal the alternating divisor sums",
        || {
            let g1 = qseries::g_series(1, 50)?;
            let mut mismatch = false;
            for n in 1..=50u64 {
                let mut expect = Rational::new();
                for m in arith::divisors(n) {
                    let sign = if (n / m) % 2 == 0 { -1 } else { 1 };
                    expect += Rational::from((sign, m as i64));
                }
                if g1.coeff(n as usize) != &expect {
                    mismatch = true;
                }
            }
            Ok((vec!["n <= 50".into()], mismatch))
        },
    )
}

fn check_sigma_multiplicativity(cfg: &RunConfig) -> CheckReport {
    let _ = cfg;
    run_exact(
        "exact.sigma_multiplicativity",
        "sigma_j is multiplicative on coprime arguments",
        || {
            let mut mismatch = false;
            for j in [-3i64, -1, 1, 2] {
                for m in 1u64..=30 {
                    for n in 1u64..=30 {
                        if crate::Integer::from(m).gcd(&crate::Integer::from(n)) == 1 {
                            let lhs = arith::sigma(j, m * n)?;
                            let rhs = arith::sigma(j, m)? * arith::sigma(j, n)?;
                            if lhs != rhs {
                                mismatch = true;
                            }
                        }
                    }
                }
            }
            Ok((vec!["j in {-3,-1,1,2}, m,n <= 30".into()], mismatch))
        },
    )
}

fn check_bell_structure(cfg: &RunConfig) -> CheckReport {
    let _ = cfg;
    run_exact(
        "exact.bell_structure",
        "complete Bell polynomials expand as g_1^2 + g_2 and g_1^3 + 3 g_1 g_2 + g_3",
        || {
            let order = 20usize;
            let g1 = qseries::g_series(1, order)?;
            let g2 = qseries::g_series(2, order)?;
            let g3 = qseries::g_series(3, order)?;
            let y2 = qseries::bell_complete(&[g1.clone(), g2.clone()])?;
            let y3 = qseries::bell_complete(&[g1.clone(), g2.clone(), g3.clone()])?;
            let y2_expect = &g1.pow(2) + &g2;
            let y3_expect = &(&g1.pow(3) + &(&g1 * &g2).scale(&Rational::from(3))) + &g3;
            Ok((vec!["order 20".into()], y2 != y2_expect || y3 != y3_expect))
        },
    )
}

fn check_bernoulli_zeta(cfg: &RunConfig) -> CheckReport {
    run_float(
        "exact.bernoulli_zeta",
        "B_2k = 2 (-1)^(k+1) (2k)! zeta(2k) / (2 pi)^(2k) against the analytic layer",
        || {
            let ctx = &cfg.ctx;
            let mut dev = Real::new(ctx.working_prec());
            for k in 1..=6u32 {
                let lhs = ctx.float_rat(&arith::bernoulli(2 * k)?);
                let sign = if k % 2 == 1 { 1f64 } else { -1f64 };
                let z = special::zeta_real(&ctx.float(2 * k), ctx)?;
                let fact = ctx.float_rat(&Rational::from(arith::factorial(2 * k)));
                let rhs = ctx.float(2) * ctx.float(sign) * fact * z
                    / (ctx.float(2) * ctx.pi()).pow(2 * k as i32);
                max_dev(&mut dev, abs_diff(&lhs, &rhs));
            }
            Ok((
                vec!["k <= 6".into()],
                dev,
                ctx.tolerance() * 256u32,
            ))
        },
    )
}

// ---------------------------------------------------------------------------
// modularity suite
// ---------------------------------------------------------------------------

fn check_g1_invariance(cfg: &RunConfig) -> CheckReport {
    run_float(
        "modularity.g1_invariance",
        "the completed g_1 is invariant under the level-2 group",
        || {
            let ctx = &cfg.ctx;
            let points = lift_points(cfg)?;
            let tol = acceptance_tol(ctx);
            let mut dev = Real::new(ctx.working_prec());
            for tau in &points {
                let base = maass::g1_hat(tau, ctx)?;
                for gamma in gamma0_2_words() {
                    let (image, _) = maass::mobius_act(&gamma, tau);
                    let moved = maass::g1_hat(&image, ctx)?;
                    max_dev(&mut dev, abs_diff(&moved, &base));
                }
            }
            Ok((labels(&points), dev, tol))
        },
    )
}

fn check_gk_invariance(cfg: &RunConfig) -> CheckReport {
    run_float(
        "modularity.gk_invariance",
        "the completed g_k (k = 2, 3, 4) are invariant under the level-2 group",
        || {
            let ctx = &cfg.ctx;
            let points = lift_points(cfg)?;
            let tol = acceptance_tol(ctx);
            let mut dev = Real::new(ctx.working_prec());
            for k in [2u32, 3, 4] {
                for tau in &points {
                    let base = maass::gk_hat(k, tau, ctx)?;
                    for gamma in gamma0_2_words() {
                        let (image, _) = maass::mobius_act(&gamma, tau);
                        let moved = maass::gk_hat(k, &image, ctx)?;
                        max_dev(&mut dev, abs_diff(&moved, &base));
                    }
                }
            }
            Ok((labels(&points), dev, tol))
        },
    )
}

fn check_eisenstein_sl2(cfg: &RunConfig) -> CheckReport {
    run_float(
        "modularity.eisenstein_sl2",
        "E(gamma tau; 2) = E(tau; 2) for the full modular group generators",
        || {
            let ctx = &cfg.ctx;
            let points = lift_points(cfg)?;
            let sample = &points[..3.min(points.len())];
            let tol = acceptance_tol(ctx);
            let mut dev = Real::new(ctx.working_prec());
            let s = ctx.float(2);
            for tau in sample {
                let base = maass::eisenstein_maass(tau, &s, ctx)?.value;
                for gamma in [Gamma0Element::translation(1), Gamma0Element::inversion()] {
                    let (image, _) = maass::mobius_act(&gamma, tau);
                    let moved = maass::eisenstein_maass(&image, &s, ctx)?.value;
                    max_dev(&mut dev, cabs(&(moved - base.clone())));
                }
            }
            Ok((labels(sample), dev, tol))
        },
    )
}

fn check_eichler_slash(cfg: &RunConfig) -> CheckReport {
    run_float(
        "modularity.eichler_slash",
        "the completed weight -2 Eichler integral at level 2 is slash-invariant",
        || {
            let ctx = &cfg.ctx;
            let points = lift_points(cfg)?;
            let sample = &points[..3.min(points.len())];
            let tol = acceptance_tol(ctx);
            let mut dev = Real::new(ctx.working_prec());
            let k = 2u32;
            for tau in sample {
                let base = maass::eichler_completed(k, 2, tau, ctx)?;
                let scale = cabs(&base).max(&ctx.float(1));
                // translation: period 1 in u
                let shifted = tau.shifted(&ctx.float(1), &ctx.float(0))?;
                let t_img = maass::eichler_completed(k, 2, &shifted, ctx)?;
                max_dev(&mut dev, cabs(&(t_img - base.clone())) / &scale);
                // lower-triangular level-2 generator with weight 2-2k
                let gamma = Gamma0Element::lower(2);
                let (image, factor) = maass::mobius_act(&gamma, tau);
                let weighted =
                    maass::eichler_completed(k, 2, &image, ctx)? * factor.pow((2 * k - 2) as u32);
                max_dev(&mut dev, cabs(&(weighted - base.clone())) / &scale);
            }
            Ok((labels(sample), dev, tol))
        },
    )
}

fn check_sesqui_inversion(cfg: &RunConfig) -> CheckReport {
    run_float(
        "modularity.sesqui_inversion",
        "the sesquiharmonic completed Eichler integral is inversion-invariant at level 1",
        || {
            let ctx = &cfg.ctx;
            let tau = HalfPlanePoint::from_f64(ctx, 0.0, 1.1)?;
            let tol = acceptance_tol(ctx);
            let base = maass::eichler_sesqui(1, &tau, ctx)?;
            let (image, _) = maass::mobius_act(&Gamma0Element::inversion(), &tau);
            let moved = maass::eichler_sesqui(1, &image, ctx)?;
            let dev = cabs(&(moved - base));
            Ok((vec![tau.label()], dev, tol))
        },
    )
}

fn check_raising_dual(cfg: &RunConfig) -> CheckReport {
    run_float(
        "modularity.raising_dual",
        "iterated raising of the completed Eichler integral: stencil assembly = closed expansion = constant times E(tau; k)",
        || {
            let ctx = &cfg.ctx;
            let points = lift_points(cfg)?;
            let sample = &points[..4.min(points.len())];
            let tol = acceptance_tol(ctx);
            let mut dev = Real::new(ctx.working_prec());
            for k in [2u32, 3] {
                let constant = maass::raising_to_eisenstein_constant(k, ctx)?;
                for tau in sample {
                    let direct = maass::raising_eichler_direct(k, tau, ctx)?;
                    let closed = maass::raising_eichler_closed(k, tau, ctx)?;
                    let e = maass::eisenstein_maass(tau, &ctx.float(k), ctx)?.value;
                    let via_e = e * &constant;
                    let scale = cabs(&via_e).max(&ctx.float(1));
                    max_dev(&mut dev, cabs(&(direct.clone() - closed.clone())) / &scale);
                    max_dev(&mut dev, cabs(&(direct - via_e)) / &scale);
                }
            }
            Ok((labels(sample), dev, tol))
        },
    )
}

// ---------------------------------------------------------------------------
// shadow suite
// ---------------------------------------------------------------------------

fn check_shadow_g1(cfg: &RunConfig) -> CheckReport {
    run_float(
        "shadow.g1_xi",
        "finite-difference xi_0 of the completed g_1 equals pi/6 (E2_hat(tau) - 4 E2_hat(2 tau))",
        || {
            let ctx = &cfg.ctx;
            let points = lift_points(cfg)?;
            let stencil = StencilConfig::from_context(ctx);
            let tol = ctx.float(SHADOW_REL_TOL);
            let mut dev = Real::new(ctx.working_prec());
            let f = |p: &HalfPlanePoint| -> Result<BigComplex> {
                Ok(BigComplex::with_val(
                    ctx.working_prec(),
                    maass::g1_hat(p, ctx)?,
                ))
            };
            for tau in &points {
                let numeric = numdiff::xi_apply(0, &f, tau, &stencil, ctx)?;
                let closed = maass::shadow_g1_closed(tau, ctx)?;
                let scale = cabs(&closed).max(&ctx.float(1));
                max_dev(&mut dev, cabs(&(numeric - closed)) / scale);
            }
            Ok((labels(&points), dev, tol))
        },
    )
}

fn check_holomorphic_kill(cfg: &RunConfig) -> CheckReport {
    run_float(
        "shadow.holomorphic_kill",
        "xi_0 annihilates holomorphic functions (tested on q)",
        || {
            let ctx = &cfg.ctx;
            let points = lift_points(cfg)?;
            let stencil = StencilConfig::from_context(ctx);
            let tol = ctx.float(SHADOW_REL_TOL);
            let mut dev = Real::new(ctx.working_prec());
            let f = |p: &HalfPlanePoint| -> Result<BigComplex> {
                Ok(exp_two_pi_i_n_tau(1, p, &ctx.pi()))
            };
            for tau in &points {
                let x = numdiff::xi_apply(0, &f, tau, &stencil, ctx)?;
                max_dev(&mut dev, cabs(&x));
            }
            Ok((labels(&points), dev, tol))
        },
    )
}

fn check_sesquiharmonic(cfg: &RunConfig) -> CheckReport {
    run_float(
        "shadow.sesquiharmonic",
        "the closed-form shadow of the completed g_1 is annihilated by the weight-2 Laplacian",
        || {
            let ctx = &cfg.ctx;
            let points = lift_points(cfg)?;
            let stencil = StencilConfig::from_context(ctx);
            let tol = ctx.float(EIGENVALUE_REL_TOL);
            let mut dev = Real::new(ctx.working_prec());
            let f = |p: &HalfPlanePoint| maass::shadow_g1_closed(p, ctx);
            for tau in &points {
                let lap = numdiff::laplacian_apply(2, &f, tau, &stencil, ctx)?;
                let scale = cabs(&f(tau)?).max(&ctx.float(1));
                max_dev(&mut dev, cabs(&lap) / scale);
            }
            Ok((labels(&points), dev, tol))
        },
    )
}

fn check_sigma_shift(cfg: &RunConfig) -> CheckReport {
    let _ = cfg;
    run_exact(
        "shadow.sigma_shift",
        "n sigma_{-1}(n) = sigma_1(n)",
        || {
            let mut mismatch = false;
            for n in 1..=100u64 {
                let lhs = arith::sigma(-1, n)? * Rational::from(n);
                if lhs != arith::sigma(1, n)? {
                    mismatch = true;
                }
            }
            Ok((vec!["n <= 100".into()], mismatch))
        },
    )
}

fn check_xi_composition(cfg: &RunConfig) -> CheckReport {
    run_float(
        "shadow.xi_composition",
        "xi_2 composed with xi_0 equals minus the weight-0 Laplacian on E(tau; 2)",
        || {
            let ctx = &cfg.ctx;
            let tau = HalfPlanePoint::from_f64(ctx, cfg.points[0].0, cfg.points[0].1)?;
            let tol = ctx.float(COMPOSITION_REL_TOL);
            let inner = StencilConfig {
                h_rel: 2f64.powi(-((ctx.prec() / 8) as i32)),
                order: numdiff::StencilOrder::Four,
                richardson: 1,
            };
            let outer = StencilConfig {
                h_rel: 2f64.powi(-((ctx.prec() / 16) as i32)),
                order: numdiff::StencilOrder::Four,
                richardson: 1,
            };
            let f = |p: &HalfPlanePoint| Ok(maass::eisenstein_maass(p, &ctx.float(2), ctx)?.value);
            let xi0_f = |p: &HalfPlanePoint| numdiff::xi_apply(0, &f, p, &inner, ctx);
            let composed = numdiff::xi_apply(2, &xi0_f, &tau, &outer, ctx)?;
            let lap = numdiff::laplacian_apply(0, &f, &tau, &StencilConfig::from_context(ctx), ctx)?;
            let expect = -lap;
            let dev = cabs(&(composed - expect.clone())) / cabs(&expect);
            Ok((vec![tau.label()], dev, tol))
        },
    )
}

// ---------------------------------------------------------------------------
// eigenvalue suite
// ---------------------------------------------------------------------------

fn check_laplacian_v_power(cfg: &RunConfig) -> CheckReport {
    run_float(
        "eigenvalue.v_power",
        "Delta_0 v^s = s(1-s) v^s at s = 2",
        || {
            let ctx = &cfg.ctx;
            let tau = HalfPlanePoint::from_f64(ctx, 0.0, 1.0)?;
            let stencil = StencilConfig::from_context(ctx);
            let tol = ctx.float(SHADOW_REL_TOL);
            let f = |p: &HalfPlanePoint| -> Result<BigComplex> {
                Ok(BigComplex::with_val(
                    ctx.working_prec(),
                    p.v().clone().square(),
                ))
            };
            let lap = numdiff::laplacian_apply(0, &f, &tau, &stencil, ctx)?;
            let expect = f(&tau)? * (-2i32);
            let dev = cabs(&(lap - expect.clone())) / cabs(&expect);
            Ok((vec![tau.label()], dev, tol))
        },
    )
}

fn check_eisenstein_eigenvalue(cfg: &RunConfig) -> CheckReport {
    run_float(
        "eigenvalue.eisenstein",
        "Delta_0 E(tau; 2) = -2 E(tau; 2)",
        || {
            let ctx = &cfg.ctx;
            let points = lift_points(cfg)?;
            let sample = [&points[0], &points[3.min(points.len() - 1)]];
            let stencil = StencilConfig::from_context(ctx);
            let tol = ctx.float(EIGENVALUE_REL_TOL);
            let mut dev = Real::new(ctx.working_prec());
            let f = |p: &HalfPlanePoint| Ok(maass::eisenstein_maass(p, &ctx.float(2), ctx)?.value);
            for tau in sample {
                let lap = numdiff::laplacian_apply(0, &f, tau, &stencil, ctx)?;
                let expect = f(tau)? * (-2i32);
                max_dev(&mut dev, cabs(&(lap - expect.clone())) / cabs(&expect));
            }
            Ok((vec![sample[0].label(), sample[1].label()], dev, tol))
        },
    )
}

fn check_gk_eigenvalue(cfg: &RunConfig) -> CheckReport {
    run_float(
        "eigenvalue.gk",
        "Delta_0 of the completed g_k equals k(1-k) times it, k = 2, 3",
        || {
            let ctx = &cfg.ctx;
            let points = lift_points(cfg)?;
            let stencil = StencilConfig::from_context(ctx);
            let tol = ctx.float(EIGENVALUE_REL_TOL);
            let mut dev = Real::new(ctx.working_prec());
            for k in [2u32, 3] {
                let eigen = -(ctx.float(k) * (ctx.float(k) - 1u32)); // k(1-k)
                let f = |p: &HalfPlanePoint| -> Result<BigComplex> {
                    Ok(BigComplex::with_val(
                        ctx.working_prec(),
                        maass::gk_hat(k, p, ctx)?,
                    ))
                };
                for tau in &points {
                    let lap = numdiff::laplacian_apply(0, &f, tau, &stencil, ctx)?;
                    let value = f(tau)?;
                    let expect = value.clone() * &eigen;
                    max_dev(&mut dev, cabs(&(lap - expect)) / cabs(&value));
                }
            }
            Ok((labels(&points), dev, tol))
        },
    )
}

// ---------------------------------------------------------------------------
// limit suite
// ---------------------------------------------------------------------------

fn check_g1_kronecker(cfg: &RunConfig) -> CheckReport {
    run_float(
        "limit.g1_kronecker",
        "the completed g_1 equals -pi/6 (2 Kr(2 tau) - Kr(tau)) with the eta-based limit values",
        || {
            let ctx = &cfg.ctx;
            let points = lift_points(cfg)?;
            let tol = acceptance_tol(ctx);
            let mut dev = Real::new(ctx.working_prec());
            for tau in &points {
                let direct = maass::g1_hat(tau, ctx)?;
                let via = maass::g1_hat_via_kronecker(tau, ctx)?;
                max_dev(&mut dev, abs_diff(&direct, &via));
            }
            Ok((labels(&points), dev, tol))
        },
    )
}

fn check_eta_value(cfg: &RunConfig) -> CheckReport {
    run_float(
        "limit.eta_value",
        "eta(i) equals Gamma(1/4) / (2 pi^(3/4))",
        || {
            let ctx = &cfg.ctx;
            let tau = HalfPlanePoint::from_f64(ctx, 0.0, 1.0)?;
            let tol = acceptance_tol(ctx);
            let eta = special::dedekind_eta(&tau, ctx)?;
            let expect = ctx.float(0.25f64).gamma() / (ctx.float(2) * ctx.pi().pow(ctx.float(0.75f64)));
            let dev = cabs(&(eta - BigComplex::with_val(ctx.working_prec(), expect)));
            Ok((vec![tau.label()], dev, tol))
        },
    )
}

fn check_eta_multiplier(cfg: &RunConfig) -> CheckReport {
    run_float(
        "limit.eta_multiplier",
        "eta(tau + 1) = e^(pi i / 12) eta(tau)",
        || {
            let ctx = &cfg.ctx;
            let wp = ctx.working_prec();
            let points = lift_points(cfg)?;
            let tol = acceptance_tol(ctx);
            let mut dev = Real::new(wp);
            let phase = ctx.pi() / 12u32;
            let (sin, cos) = phase.sin_cos(Real::new(wp));
            let mult = BigComplex::with_val(wp, (cos, sin));
            for tau in &points {
                let shifted = tau.shifted(&ctx.float(1), &ctx.float(0))?;
                let lhs = special::dedekind_eta(&shifted, ctx)?;
                let rhs = special::dedekind_eta(tau, ctx)? * &mult;
                max_dev(&mut dev, cabs(&(lhs - rhs)));
            }
            Ok((labels(&points), dev, tol))
        },
    )
}

fn check_kronecker_modularity(cfg: &RunConfig) -> CheckReport {
    run_float(
        "limit.kronecker_modularity",
        "the eta-based limit value is invariant under translation and inversion",
        || {
            let ctx = &cfg.ctx;
            let tau = HalfPlanePoint::from_f64(ctx, 0.0, 1.2)?;
            let tol = acceptance_tol(ctx);
            let base = maass::kronecker_limit(&tau, ctx)?;
            let mut dev = Real::new(ctx.working_prec());
            let shifted = tau.shifted(&ctx.float(1), &ctx.float(0))?;
            max_dev(&mut dev, abs_diff(&maass::kronecker_limit(&shifted, ctx)?, &base));
            let (image, _) = maass::mobius_act(&Gamma0Element::inversion(), &tau);
            max_dev(&mut dev, abs_diff(&maass::kronecker_limit(&image, ctx)?, &base));
            Ok((vec![tau.label()], dev, tol))
        },
    )
}

fn check_eta_identity_branch(cfg: &RunConfig) -> CheckReport {
    run_float(
        "limit.eta_identity",
        "g_1(q) = 2 Log eta(2 tau) - pi i tau/4 - Log eta(tau) modulo 2 pi i, with trivial winding for v >= 0.5",
        || {
            let ctx = &cfg.ctx;
            let points = lift_points(cfg)?;
            let tol = acceptance_tol(ctx);
            let mut dev = Real::new(ctx.working_prec());
            for tau in &points {
                let (m, residual) = maass::eta_identity_multiple(tau, ctx)?;
                if tau.v().to_f64() >= 0.5 && m != 0 {
                    return Err(Error::Domain(format!(
                        "unexpected winding {m} at {}",
                        tau.label()
                    )));
                }
                max_dev(&mut dev, residual);
            }
            Ok((labels(&points), dev, tol))
        },
    )
}

fn check_limit_direct(cfg: &RunConfig) -> CheckReport {
    let id = "limit.direct_eps";
    let anchor =
        "E(tau; 1+eps) - 3/(pi eps), extrapolated in eps, approaches the eta-based limit value";
    if !cfg.slow {
        return CheckReport::skipped(id, anchor, "slow check; enable with --slow");
    }
    run_float(id, anchor, || {
        let ctx = &cfg.ctx;
        let samples = [(0.0f64, 1.0f64), cfg.points[0]];
        let mut dev = Real::new(ctx.working_prec());
        let mut tol = Real::new(ctx.working_prec());
        let mut labels_out = Vec::new();
        for (u, v) in samples {
            let tau = HalfPlanePoint::from_f64(ctx, u, v)?;
            labels_out.push(tau.label());
            let reference = maass::kronecker_limit(&tau, ctx)?;
            let f_coarse = maass::eisenstein_limit_direct(&tau, LIMIT_EPS[0], ctx)?;
            let f_fine = maass::eisenstein_limit_direct(&tau, LIMIT_EPS[1], ctx)?;
            // linear Richardson step in eps
            let ratio = LIMIT_EPS[0] / LIMIT_EPS[1];
            let extrapolated =
                (f_fine.clone() * ctx.float(ratio) - f_coarse) / ctx.float(ratio - 1.0);
            max_dev(&mut dev, abs_diff(&extrapolated, &reference));
            let this_tol = ctx.float(10.0 * LIMIT_EPS[1]) * reference.abs();
            if tol.is_zero() || this_tol < tol {
                tol = this_tol;
            }
        }
        Ok((labels_out, dev, tol))
    })
}

// ---------------------------------------------------------------------------
// example suite
// ---------------------------------------------------------------------------

fn check_g2_dual(cfg: &RunConfig) -> CheckReport {
    run_float(
        "example.g2_dual",
        "the Eisenstein form of the completed g_2 equals its elementary explicit form",
        || {
            let ctx = &cfg.ctx;
            let points = lift_points(cfg)?;
            let tol = acceptance_tol(ctx);
            let mut dev = Real::new(ctx.working_prec());
            for tau in &points {
                let a = maass::gk_hat(2, tau, ctx)?;
                let b = maass::g2_hat_explicit(tau, ctx)?;
                max_dev(&mut dev, abs_diff(&a, &b));
            }
            Ok((labels(&points), dev, tol))
        },
    )
}

fn check_eisenstein_paths(cfg: &RunConfig) -> CheckReport {
    run_float(
        "example.eisenstein_paths",
        "integer-order and general-order evaluations of E(tau; 2) agree",
        || {
            let ctx = &cfg.ctx;
            let tau = HalfPlanePoint::from_f64(ctx, cfg.points[0].0, cfg.points[0].1)?;
            let fast = maass::eisenstein_maass(&tau, &ctx.float(2), ctx)?.value;
            let slow = maass::eisenstein_maass_general(&tau, &ctx.float(2), ctx)?.value;
            let dev = cabs(&(fast - slow));
            Ok((vec![tau.label()], dev, ctx.tolerance() * 256u32))
        },
    )
}

fn check_srp3_oracle(cfg: &RunConfig) -> CheckReport {
    let _ = cfg;
    run_exact(
        "example.srp3_oracle",
        "third reciprocal power-sum series coefficients equal the brute-force totals",
        || {
            let series = qseries::srp3_series(30)?;
            let mut mismatch = false;
            for n in 0..=30usize {
                if series.coeff(n) != &partitions::s_star_oracle(3, n as u64) {
                    mismatch = true;
                }
            }
            Ok((vec!["n <= 30".into()], mismatch))
        },
    )
}

fn check_e2_inversion(cfg: &RunConfig) -> CheckReport {
    run_float(
        "example.e2_inversion",
        "E2_hat(-1/tau) = tau^2 E2_hat(tau)",
        || {
            let ctx = &cfg.ctx;
            let tau = HalfPlanePoint::from_f64(ctx, 0.0, 1.3)?;
            let tol = acceptance_tol(ctx);
            let (image, _) = maass::mobius_act(&Gamma0Element::inversion(), &tau);
            let lhs = maass::e2_hat(&image, ctx)?;
            let rhs = maass::e2_hat(&tau, ctx)? * tau.to_complex().square();
            let dev = cabs(&(lhs - rhs));
            Ok((vec![tau.label()], dev, tol))
        },
    )
}

fn check_eichler_dseries(cfg: &RunConfig) -> CheckReport {
    let _ = cfg;
    run_exact(
        "example.eichler_dseries",
        "the (2k-1)-fold q d/dq of the Eichler integral reproduces B_2k/(4k) (1 - E_2k) at k = 2",
        || {
            let order = 20usize;
            let mut lhs = qseries::eichler_coeffs(2, order)?;
            for _ in 0..3 {
                lhs = lhs.q_derivative();
            }
            let e4 = qseries::eisenstein_weight_series(2, order)?;
            let factor = arith::bernoulli(4)? / Rational::from(8);
            let rhs = (&PowerSeries::one(order) - &e4).scale(&factor);
            Ok((vec!["order 20".into()], lhs != rhs))
        },
    )
}

fn check_holomorphic_part(cfg: &RunConfig) -> CheckReport {
    let _ = cfg;
    run_exact(
        "example.holomorphic_part",
        "tau copy minus 2 * (2 tau copy) of the raising image's q-series equals g_k",
        || {
            let mut mismatch = false;
            for k in [2u32, 3] {
                let hol = maass::holomorphic_part_extract(k, 30)?;
                let doubled = hol
                    .stretch(2)
                    .scale(&Rational::from(crate::Integer::from(2).pow(k)));
                if &hol - &doubled != qseries::g_series(k, 30)? {
                    mismatch = true;
                }
            }
            Ok((vec!["k in {2,3}, order 30".into()], mismatch))
        },
    )
}

// ---------------------------------------------------------------------------
// twisted suite
// ---------------------------------------------------------------------------

fn check_twisted_oracle(cfg: &RunConfig) -> CheckReport {
    let _ = cfg;
    run_exact(
        "twisted.series_oracle",
        "Legendre-twisted series coefficients equal the brute-force twisted sums",
        || {
            let mut mismatch = false;
            for p in [3u64, 5] {
                let series = qseries::twisted_series(p, 30)?;
                for n in 0..=30usize {
                    if series.coeff(n) != &partitions::s_twisted_oracle(p, n as u64)? {
                        mismatch = true;
                    }
                }
            }
            Ok((vec!["p in {3,5}, n <= 30".into()], mismatch))
        },
    )
}

fn check_twisted_closed_forms(cfg: &RunConfig) -> CheckReport {
    let _ = cfg;
    run_exact(
        "twisted.closed_forms",
        "both divisor-sum forms of the twisted inner coefficient agree",
        || {
            let mut mismatch = false;
            for p in [3u64, 5, 7] {
                for n in 1..=50u64 {
                    let (a, b) = qseries::twisted_inner_forms(p, n)?;
                    if a != b {
                        mismatch = true;
                    }
                }
            }
            Ok((vec!["p in {3,5,7}, n <= 50".into()], mismatch))
        },
    )
}

// ---------------------------------------------------------------------------
// registry
// ---------------------------------------------------------------------------

type CheckFn = fn(&RunConfig) -> CheckReport;

struct CheckDef {
    id: &'static str,
    suite: &'static str,
    run: CheckFn,
}

const CHECKS: &[CheckDef] = &[
    CheckDef { id: "exact.bell_structure", suite: "exact", run: check_bell_structure },
    CheckDef { id: "exact.bernoulli_zeta", suite: "exact", run: check_bernoulli_zeta },
    CheckDef { id: "exact.distinct_counts", suite: "exact", run: check_distinct_counts },
    CheckDef { id: "exact.g1_divisor_form", suite: "exact", run: check_g1_divisor_form },
    CheckDef { id: "exact.moment_oracle", suite: "exact", run: check_moment_oracle },
    CheckDef { id: "exact.product_identity_s1", suite: "exact", run: check_product_identity_s1 },
    CheckDef { id: "exact.product_identity_s2", suite: "exact", run: check_product_identity_s2 },
    CheckDef { id: "exact.sigma_multiplicativity", suite: "exact", run: check_sigma_multiplicativity },
    CheckDef { id: "modularity.eichler_slash", suite: "modularity", run: check_eichler_slash },
    CheckDef { id: "modularity.eisenstein_sl2", suite: "modularity", run: check_eisenstein_sl2 },
    CheckDef { id: "modularity.g1_invariance", suite: "modularity", run: check_g1_invariance },
    CheckDef { id: "modularity.gk_invariance", suite: "modularity", run: check_gk_invariance },
    CheckDef { id: "modularity.raising_dual", suite: "modularity", run: check_raising_dual },
    CheckDef { id: "modularity.sesqui_inversion", suite: "modularity", run: check_sesqui_inversion },
    CheckDef { id: "shadow.g1_xi", suite: "shadow", run: check_shadow_g1 },
    CheckDef { id: "shadow.holomorphic_kill", suite: "shadow", run: check_holomorphic_kill },
    CheckDef { id: "shadow.sesquiharmonic", suite: "shadow", run: check_sesquiharmonic },
    CheckDef { id: "shadow.sigma_shift", suite: "shadow", run: check_sigma_shift },
    CheckDef { id: "shadow.xi_composition", suite: "shadow", run: check_xi_composition },
    CheckDef { id: "eigenvalue.eisenstein", suite: "eigenvalue", run: check_eisenstein_eigenvalue },
    CheckDef { id: "eigenvalue.gk", suite: "eigenvalue", run: check_gk_eigenvalue },
    CheckDef { id: "eigenvalue.v_power", suite: "eigenvalue", run: check_laplacian_v_power },
    CheckDef { id: "limit.direct_eps", suite: "limit", run: check_limit_direct },
    CheckDef { id: "limit.eta_identity", suite: "limit", run: check_eta_identity_branch },
    CheckDef { id: "limit.eta_multiplier", suite: "limit", run: check_eta_multiplier },
    CheckDef { id: "limit.eta_value", suite: "limit", run: check_eta_value },
    CheckDef { id: "limit.g1_kronecker", suite: "limit", run: check_g1_kronecker },
    CheckDef { id: "limit.kronecker_modularity", suite: "limit", run: check_kronecker_modularity },
    CheckDef { id: "example.e2_inversion", suite: "example", run: check_e2_inversion },
    CheckDef { id: "example.eichler_dseries", suite: "example", run: check_eichler_dseries },
    CheckDef { id: "example.eisenstein_paths", suite: "example", run: check_eisenstein_paths },
    CheckDef { id: "example.g2_dual", suite: "example", run: check_g2_dual },
    CheckDef { id: "example.holomorphic_part", suite: "example", run: check_holomorphic_part },
    CheckDef { id: "example.srp3_oracle", suite: "example", run: check_srp3_oracle },
    CheckDef { id: "twisted.closed_forms", suite: "twisted", run: check_twisted_closed_forms },
    CheckDef { id: "twisted.series_oracle", suite: "twisted", run: check_twisted_oracle },
];

fn selected(name: &str) -> Result<Vec<&'static CheckDef>> {
    if !SUITE_NAMES.contains(&name) {
        return Err(Error::UnknownSuite(name.into()));
    }
    Ok(CHECKS
        .iter()
        .filter(|c| name == "all" || c.suite == name)
        .collect())
}

/// The manifest of a named suite under a run configuration.
pub fn suite_manifest(name: &str, cfg: &RunConfig) -> Result<SuiteManifest> {
    let checks = selected(name)?;
    Ok(SuiteManifest {
        suite: name.into(),
        check_ids: checks.iter().map(|c| c.id.to_string()).collect(),
        ctx: cfg.ctx.clone(),
        points: cfg.points.clone(),
    })
}

/// Run one suite; the report is sorted by check id and deterministic for a
/// fixed configuration.
pub fn run_suite(name: &str, cfg: &RunConfig) -> Result<SuiteReport> {
    let checks = selected(name)?;
    let reports = checks.iter().map(|c| (c.run)(cfg)).collect();
    Ok(SuiteReport::new(name, &cfg.ctx, reports))
}

/// Run a single check by id.
pub fn run_check(id: &str, cfg: &RunConfig) -> Result<CheckReport> {
    let def = CHECKS
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownSuite(format!("check {id}")))?;
    Ok((def.run)(cfg))
}

/// All registered check ids.
pub fn check_ids() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.id).collect()
}
