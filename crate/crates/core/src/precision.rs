//! Precision bookkeeping: working precision, guard bits, truncation and
//! stencil parameters, and per-precision constant caches.
//!
//! Every tolerance used by the analytic layer is derived from a
//! [`PrecisionContext`]; nothing numerical is hardcoded.

use std::collections::HashMap;
use std::sync::Mutex;

use rug::float::Constant;

use crate::error::{Error, Result};
use crate::{Rational, Real};

/// Parameters steering every analytic evaluation.
///
/// `order`, `cutoff` and `step` may be zero, meaning "choose automatically
/// from the precision and the evaluation point".
#[derive(Clone, Debug)]
pub struct PrecisionContext {
    prec: u32,
    guard: u32,
    /// Series truncation order override (0 = automatic).
    pub order: usize,
    /// Fourier cutoff override (0 = automatic).
    pub cutoff: usize,
    /// Initial node count for adaptive quadrature.
    pub quad_nodes: usize,
    /// Relative stencil step for finite differences (0.0 = automatic).
    pub step: f64,
}

impl PrecisionContext {
    /// Context with the default 32 guard bits.
    pub fn new(prec: u32) -> Result<Self> {
        Self::with_guard(prec, 32)
    }

    pub fn with_guard(prec: u32, guard: u32) -> Result<Self> {
        if prec < 64 {
            return Err(Error::InvalidContext(format!(
                "working precision must be at least 64 bits, got {prec}"
            )));
        }
        if guard < 16 {
            return Err(Error::InvalidContext(format!(
                "guard bits must be at least 16, got {guard}"
            )));
        }
        Ok(PrecisionContext {
            prec,
            guard,
            order: 0,
            cutoff: 0,
            quad_nodes: 32,
            step: 0.0,
        })
    }

    /// Target precision in bits.
    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn guard(&self) -> u32 {
        self.guard
    }

    /// Internal computation precision: target plus guard bits.
    pub fn working_prec(&self) -> u32 {
        self.prec + self.guard
    }

    /// Same context at twice the target precision (hygiene sweeps).
    pub fn doubled(&self) -> Self {
        let mut c = self.clone();
        c.prec = self.prec * 2;
        c
    }

    /// 2^-prec, the headline tolerance of values produced under this context.
    pub fn tolerance(&self) -> Real {
        Real::with_val(self.working_prec(), 1u32) >> self.prec
    }

    /// 2^-(prec+guard), the budget for truncation tails.
    pub fn tail_target(&self) -> Real {
        Real::with_val(self.working_prec(), 1u32) >> (self.prec + self.guard)
    }

    /// Relative stencil step: the override, or 2^-(prec/4) of v.
    pub fn stencil_step(&self) -> f64 {
        if self.step > 0.0 {
            self.step
        } else {
            2f64.powi(-((self.prec / 4) as i32))
        }
    }

    /// A float at working precision.
    pub fn float<T>(&self, val: T) -> Real
    where
        Real: rug::Assign<T>,
    {
        Real::with_val(self.working_prec(), val)
    }

    /// Exact conversion of a rational to working precision.
    pub fn float_rat(&self, r: &Rational) -> Real {
        Real::with_val(self.working_prec(), r)
    }

    pub fn pi(&self) -> Real {
        cached_constant(self.working_prec(), ConstKey::Pi)
    }

    pub fn ln2(&self) -> Real {
        cached_constant(self.working_prec(), ConstKey::Ln2)
    }

    /// Euler-Mascheroni constant gamma.
    pub fn euler_gamma(&self) -> Real {
        cached_constant(self.working_prec(), ConstKey::Euler)
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self::new(192).expect("default context is valid")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum ConstKey {
    Pi,
    Ln2,
    Euler,
}

fn cached_constant(prec: u32, key: ConstKey) -> Real {
    static CACHE: Mutex<Option<HashMap<(u32, u8), Real>>> = Mutex::new(None);
    let tag = key as u8;
    let mut guard = CACHE.lock().unwrap();
    let map = guard.get_or_insert_with(HashMap::new);
    map.entry((prec, tag))
        .or_insert_with(|| {
            let c = match key {
                ConstKey::Pi => Constant::Pi,
                ConstKey::Ln2 => Constant::Log2,
                ConstKey::Euler => Constant::Euler,
            };
            Real::with_val(prec, c)
        })
        .clone()
}
