//! Points of the upper half-plane and small complex helpers on top of the
//! arbitrary-precision complex type.

use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use crate::{BigComplex, Real};

/// tau = u + iv with v > 0.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfPlanePoint {
    u: Real,
    v: Real,
}

impl HalfPlanePoint {
    pub fn new(u: Real, v: Real) -> Result<Self> {
        if !(v.is_finite() && v.is_sign_positive() && !v.is_zero()) {
            return Err(Error::Domain(format!(
                "half-plane point needs v > 0, got v = {v}"
            )));
        }
        if !u.is_finite() {
            return Err(Error::Domain("half-plane point needs finite u".into()));
        }
        Ok(HalfPlanePoint { u, v })
    }

    /// Lift f64 coordinates to the context's working precision.
    pub fn from_f64(ctx: &PrecisionContext, u: f64, v: f64) -> Result<Self> {
        Self::new(ctx.float(u), ctx.float(v))
    }

    pub fn u(&self) -> &Real {
        &self.u
    }

    pub fn v(&self) -> &Real {
        &self.v
    }

    pub fn prec(&self) -> u32 {
        self.u.prec().max(self.v.prec())
    }

    /// The point l * tau for a positive integer l.
    pub fn scaled(&self, l: u32) -> Self {
        HalfPlanePoint {
            u: self.u.clone() * l,
            v: self.v.clone() * l,
        }
    }

    /// Shifted point (u + du) + i (v + dv); must stay in the half-plane.
    pub fn shifted(&self, du: &Real, dv: &Real) -> Result<Self> {
        Self::new(self.u.clone() + du, self.v.clone() + dv)
    }

    pub fn to_complex(&self) -> BigComplex {
        BigComplex::with_val(self.prec(), (&self.u, &self.v))
    }

    /// Compact label like "0.3+0.8i" for report entries.
    pub fn label(&self) -> String {
        format!("{}+{}i", self.u.to_f64(), self.v.to_f64())
    }
}

/// |z| at the precision of z.
pub fn cabs(z: &BigComplex) -> Real {
    let p = z.prec().0.max(z.prec().1);
    let mut t = Real::with_val(p, z.real() * z.real());
    t += Real::with_val(p, z.imag() * z.imag());
    t.sqrt()
}

/// e^{2 pi i n tau} for a (possibly negative) integer n:
/// magnitude e^{-2 pi n v}, phase 2 pi n u.
pub fn exp_two_pi_i_n_tau(n: i64, tau: &HalfPlanePoint, pi: &Real) -> BigComplex {
    let p = tau.prec();
    let two_pi_n = Real::with_val(p, 2 * n) * pi;
    let mag = (Real::with_val(p, -&two_pi_n) * tau.v()).exp();
    let phase = two_pi_n * tau.u();
    let (sin, cos) = phase.sin_cos(Real::new(p));
    BigComplex::with_val(p, (mag.clone() * cos, mag * sin))
}
