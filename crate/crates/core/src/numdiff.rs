//! Finite-difference realizations of the shadow operator and the weight-k
//! hyperbolic Laplacian, acting on black-box functions of tau.
//!
//! Central stencils of order 2 or 4 with optional Richardson extrapolation;
//! the step is relative to v so stencils stay inside the half-plane.

use crate::complex::HalfPlanePoint;
use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use crate::{BigComplex, Real};
use rug::ops::Pow;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StencilOrder {
    Two,
    Four,
}

impl StencilOrder {
    pub fn radius(self) -> u32 {
        match self {
            StencilOrder::Two => 1,
            StencilOrder::Four => 2,
        }
    }

    pub fn accuracy(self) -> u32 {
        match self {
            StencilOrder::Two => 2,
            StencilOrder::Four => 4,
        }
    }
}

/// Step (relative to v), stencil accuracy order, and Richardson levels.
#[derive(Clone, Copy, Debug)]
pub struct StencilConfig {
    pub h_rel: f64,
    pub order: StencilOrder,
    pub richardson: u32,
}

impl StencilConfig {
    /// Order-4 stencil, one Richardson level, step from the context.
    pub fn from_context(ctx: &PrecisionContext) -> Self {
        StencilConfig {
            h_rel: ctx.stencil_step(),
            order: StencilOrder::Four,
            richardson: 1,
        }
    }

    /// A deliberately coarse configuration for convergence-rate tests.
    pub fn coarse(h_rel: f64, order: StencilOrder) -> Self {
        StencilConfig {
            h_rel,
            order,
            richardson: 0,
        }
    }
}

type TauFn<'a> = dyn Fn(&HalfPlanePoint) -> Result<BigComplex> + 'a;

/// Samples of f on the union of the u- and v-stencils around tau.
struct StencilSamples {
    center: BigComplex,
    u_plus: Vec<BigComplex>,
    u_minus: Vec<BigComplex>,
    v_plus: Vec<BigComplex>,
    v_minus: Vec<BigComplex>,
}

fn sample(f: &TauFn, tau: &HalfPlanePoint, h: &Real, order: StencilOrder) -> Result<StencilSamples> {
    let radius = order.radius();
    let zero = Real::new(h.prec());
    let mut u_plus = Vec::new();
    let mut u_minus = Vec::new();
    let mut v_plus = Vec::new();
    let mut v_minus = Vec::new();
    for i in 1..=radius {
        let step = h.clone() * i;
        u_plus.push(f(&tau.shifted(&step, &zero)?)?);
        u_minus.push(f(&tau.shifted(&(-step.clone()), &zero)?)?);
        v_plus.push(f(&tau.shifted(&zero, &step)?)?);
        v_minus.push(f(&tau.shifted(&zero, &(-step))?)?);
    }
    Ok(StencilSamples {
        center: f(tau)?,
        u_plus,
        u_minus,
        v_plus,
        v_minus,
    })
}

fn first_derivative(
    plus: &[BigComplex],
    minus: &[BigComplex],
    h: &Real,
    order: StencilOrder,
) -> BigComplex {
    match order {
        StencilOrder::Two => (plus[0].clone() - &minus[0]) / (h.clone() * 2u32),
        StencilOrder::Four => {
            let num = (plus[0].clone() - &minus[0]) * 8u32 - &plus[1] + &minus[1];
            num / (h.clone() * 12u32)
        }
    }
}

fn second_derivative(
    center: &BigComplex,
    plus: &[BigComplex],
    minus: &[BigComplex],
    h: &Real,
    order: StencilOrder,
) -> BigComplex {
    let h_sqr = h.clone().square();
    match order {
        StencilOrder::Two => {
            (plus[0].clone() + &minus[0] - center.clone() * 2u32) / h_sqr
        }
        StencilOrder::Four => {
            let num = (plus[0].clone() + &minus[0]) * 16u32
                - center.clone() * 30u32
                - &plus[1]
                - &minus[1];
            num / (h_sqr * 12u32)
        }
    }
}

/// Richardson extrapolation of an even-error estimator: eliminates
/// h^p, h^{p+2}, ... across `levels` halvings.
fn richardson<E>(estimate: E, h0: &Real, p0: u32, levels: u32) -> Result<BigComplex>
where
    E: Fn(&Real) -> Result<BigComplex>,
{
    let mut rows: Vec<BigComplex> = Vec::with_capacity(levels as usize + 1);
    let mut h = h0.clone();
    for _ in 0..=levels {
        rows.push(estimate(&h)?);
        h /= 2u32;
    }
    let mut table = rows;
    for j in 0..levels {
        let factor = 1u64 << (p0 + 2 * j); // 2^(p0 + 2j)
        let mut next = Vec::with_capacity(table.len() - 1);
        for i in 0..table.len() - 1 {
            let num = table[i + 1].clone() * factor - &table[i];
            next.push(num / (factor - 1));
        }
        table = next;
    }
    Ok(table.pop().expect("at least one entry"))
}

fn base_step(tau: &HalfPlanePoint, cfg: &StencilConfig, ctx: &PrecisionContext) -> Result<Real> {
    let wp = ctx.working_prec();
    let h = Real::with_val(wp, tau.v()) * Real::with_val(wp, cfg.h_rel);
    let radius = cfg.order.radius();
    // h * radius < v / 2 keeps every sample inside the half-plane
    let limit = Real::with_val(wp, tau.v()) / 2u32;
    if !(h.clone() * radius < limit) {
        return Err(Error::StencilDomain {
            v: tau.v().to_f64(),
            radius,
        });
    }
    Ok(h)
}

/// d f / d conj(tau) = (df/du + i df/dv) / 2 by central differences.
pub fn wirtinger_bar(
    f: &TauFn,
    tau: &HalfPlanePoint,
    cfg: &StencilConfig,
    ctx: &PrecisionContext,
) -> Result<BigComplex> {
    let h0 = base_step(tau, cfg, ctx)?;
    richardson(
        |h| {
            let s = sample(f, tau, h, cfg.order)?;
            let fu = first_derivative(&s.u_plus, &s.u_minus, h, cfg.order);
            let fv = first_derivative(&s.v_plus, &s.v_minus, h, cfg.order);
            Ok((fu + fv.mul_i(false)) / 2u32)
        },
        &h0,
        cfg.order.accuracy(),
        cfg.richardson,
    )
}

/// The shadow operator of weight k: 2 i v^k conj(df/d conj tau).
pub fn xi_apply(
    k: i32,
    f: &TauFn,
    tau: &HalfPlanePoint,
    cfg: &StencilConfig,
    ctx: &PrecisionContext,
) -> Result<BigComplex> {
    let wp = ctx.working_prec();
    let wbar = wirtinger_bar(f, tau, cfg, ctx)?;
    let v_pow = Real::with_val(wp, tau.v()).pow(k);
    Ok(wbar.conj().mul_i(false) * v_pow * 2u32)
}

/// The weight-k hyperbolic Laplacian
/// -v^2 (f_uu + f_vv) + i k v (f_u + i f_v) by central differences.
pub fn laplacian_apply(
    k: i32,
    f: &TauFn,
    tau: &HalfPlanePoint,
    cfg: &StencilConfig,
    ctx: &PrecisionContext,
) -> Result<BigComplex> {
    let wp = ctx.working_prec();
    let h0 = base_step(tau, cfg, ctx)?;
    let v = Real::with_val(wp, tau.v());
    richardson(
        |h| {
            let s = sample(f, tau, h, cfg.order)?;
            let fuu = second_derivative(&s.center, &s.u_plus, &s.u_minus, h, cfg.order);
            let fvv = second_derivative(&s.center, &s.v_plus, &s.v_minus, h, cfg.order);
            let mut value = (fuu + fvv) * (-v.clone().square());
            if k != 0 {
                let fu = first_derivative(&s.u_plus, &s.u_minus, h, cfg.order);
                let fv = first_derivative(&s.v_plus, &s.v_minus, h, cfg.order);
                let kv = v.clone() * k;
                value += (fu.mul_i(false) - fv) * kv;
            }
            Ok(value)
        },
        &h0,
        cfg.order.accuracy(),
        cfg.richardson,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::cabs;
    use crate::maass;

    fn ctx(bits: u32) -> PrecisionContext {
        PrecisionContext::new(bits).unwrap()
    }

    fn point(c: &PrecisionContext, u: f64, v: f64) -> HalfPlanePoint {
        HalfPlanePoint::from_f64(c, u, v).unwrap()
    }

    fn c_near(z: &BigComplex, re: f64, im: f64, tol: f64, what: &str) {
        let dr = (z.real().to_f64() - re).abs();
        let di = (z.imag().to_f64() - im).abs();
        assert!(dr < tol && di < tol, "{what}: got {z}, want {re}+{im}i");
    }

    #[test]
    fn wirtinger_on_coordinates() {
        let c = ctx(128);
        let cfg = StencilConfig::from_context(&c);
        let tau = point(&c, 0.3, 0.8);
        let wp = c.working_prec();

        let holo = |p: &HalfPlanePoint| Ok(p.to_complex());
        let w = wirtinger_bar(&holo, &tau, &cfg, &c).unwrap();
        c_near(&w, 0.0, 0.0, 1e-25, "d tau / d conj tau");

        let anti = |p: &HalfPlanePoint| Ok(p.to_complex().conj());
        let w = wirtinger_bar(&anti, &tau, &cfg, &c).unwrap();
        c_near(&w, 1.0, 0.0, 1e-25, "d conj tau / d conj tau");

        let height = |p: &HalfPlanePoint| Ok(BigComplex::with_val(wp, p.v()));
        let w = wirtinger_bar(&height, &tau, &cfg, &c).unwrap();
        c_near(&w, 0.0, 0.5, 1e-25, "d v / d conj tau");
    }

    #[test]
    fn xi_examples() {
        let c = ctx(128);
        let cfg = StencilConfig::from_context(&c);
        let tau = point(&c, 0.3, 0.8);
        let wp = c.working_prec();

        // xi_0 kills holomorphic functions: test on q = e^{2 pi i tau}
        let q_fn = |p: &HalfPlanePoint| Ok(crate::complex::exp_two_pi_i_n_tau(1, p, &c.pi()));
        let x = xi_apply(0, &q_fn, &tau, &cfg, &c).unwrap();
        assert!(cabs(&x).to_f64() < 1e-25, "xi_0(q) = {x}");

        // xi_0(v) = 2i conj(i/2) = 1
        let height = |p: &HalfPlanePoint| Ok(BigComplex::with_val(wp, p.v()));
        let x = xi_apply(0, &height, &tau, &cfg, &c).unwrap();
        c_near(&x, 1.0, 0.0, 1e-25, "xi_0(v)");
    }

    #[test]
    fn laplacian_on_v_powers_fixes_the_sign() {
        // Delta_0(v^s) = s(1-s) v^s; at s = 2, tau = i this is -2 v^2 = -2
        let c = ctx(128);
        let cfg = StencilConfig::from_context(&c);
        let tau = point(&c, 0.0, 1.0);
        let wp = c.working_prec();
        let vsq = |p: &HalfPlanePoint| Ok(BigComplex::with_val(wp, p.v().clone().square()));
        let d = laplacian_apply(0, &vsq, &tau, &cfg, &c).unwrap();
        c_near(&d, -2.0, 0.0, 1e-20, "Delta_0 v^2");

        let constant = |_: &HalfPlanePoint| Ok(BigComplex::with_val(wp, 7u32));
        let d = laplacian_apply(0, &constant, &tau, &cfg, &c).unwrap();
        c_near(&d, 0.0, 0.0, 1e-25, "Delta_0 const");
    }

    #[test]
    fn laplacian_eigenvalue_of_eisenstein() {
        // Delta_0 E(tau; 2) = -2 E(tau; 2)
        let c = ctx(128);
        let cfg = StencilConfig::from_context(&c);
        let tau = point(&c, 0.3, 0.9);
        let f = |p: &HalfPlanePoint| {
            Ok(maass::eisenstein_maass(p, &c.float(2), &c)?.value)
        };
        let d = laplacian_apply(0, &f, &tau, &cfg, &c).unwrap();
        let e = f(&tau).unwrap();
        let expect = e * (-2i32);
        let rel = cabs(&(d - expect.clone())) / cabs(&expect);
        assert!(rel.to_f64() < 1e-20, "eigenvalue deviation {rel}");
    }

    #[test]
    fn stencil_rejects_leaving_half_plane() {
        let c = ctx(96);
        let tau = point(&c, 0.0, 0.5);
        let cfg = StencilConfig {
            h_rel: 0.3,
            order: StencilOrder::Four,
            richardson: 0,
        };
        let wp = c.working_prec();
        let height = |p: &HalfPlanePoint| Ok(BigComplex::with_val(wp, p.v()));
        match wirtinger_bar(&height, &tau, &cfg, &c) {
            Err(Error::StencilDomain { .. }) => {}
            other => panic!("expected stencil domain error, got {other:?}"),
        }
    }

    #[test]
    fn convergence_rate_matches_stencil_order() {
        // halving h must reduce the deviation by about 2^order
        let c = ctx(192);
        let tau = point(&c, 0.21, 1.1);
        let f = |p: &HalfPlanePoint| {
            Ok(maass::eisenstein_maass(p, &c.float(2), &c)?.value)
        };
        let e = f(&tau).unwrap();
        let expect = e * (-2i32);
        for order in [StencilOrder::Two, StencilOrder::Four] {
            let dev = |h: f64| -> f64 {
                let cfg = StencilConfig::coarse(h, order);
                let d = laplacian_apply(0, &f, &tau, &cfg, &c).unwrap();
                cabs(&(d - expect.clone())).to_f64()
            };
            let coarse = dev(1.0 / 64.0);
            let fine = dev(1.0 / 128.0);
            let rate = coarse / fine;
            let ideal = 2f64.powi(order.accuracy() as i32);
            assert!(
                rate > ideal / 2.0 && rate < ideal * 2.0,
                "order {order:?}: rate {rate}, ideal {ideal}"
            );
        }
    }

    #[test]
    fn xi_composition_gives_negative_laplacian() {
        // xi_2(xi_0(f)) = -Delta_0 f, tested with nested stencils on E(tau;2)
        let c = ctx(192);
        let tau = point(&c, 0.3, 0.9);
        let inner_cfg = StencilConfig {
            h_rel: 2f64.powi(-24),
            order: StencilOrder::Four,
            richardson: 1,
        };
        let outer_cfg = StencilConfig {
            h_rel: 2f64.powi(-12),
            order: StencilOrder::Four,
            richardson: 1,
        };
        let f = |p: &HalfPlanePoint| Ok(maass::eisenstein_maass(p, &c.float(2), &c)?.value);
        let xi0_f = |p: &HalfPlanePoint| xi_apply(0, &f, p, &inner_cfg, &c);
        let composed = xi_apply(2, &xi0_f, &tau, &outer_cfg, &c).unwrap();

        let lap = laplacian_apply(0, &f, &tau, &StencilConfig::from_context(&c), &c).unwrap();
        let expect = -lap;
        let rel = cabs(&(composed - expect.clone())) / cabs(&expect);
        assert!(rel.to_f64() < 1e-6, "composition deviation {rel}");
    }
}
