//! Arbitrary-precision reals/complexes and the special functions used by the
//! rest of the crate.
//!
//! All arithmetic is carried at `digits + guard` decimal digits of working
//! precision; every operation is a pure function of its inputs and the
//! context, so results are reproducible bit for bit.

mod bernoulli;
mod character;
mod complex;
mod dilog;
mod hurwitz;
mod real;

pub use bernoulli::bernoulli;
pub use character::{characters_mod, dirichlet_l2, dirichlet_l2_with_bound, DirichletCharacter, Parity};
pub use complex::Complex;
pub use dilog::{bloch_wigner, li2, Li2Value};
pub use hurwitz::{hurwitz_zeta2, hurwitz_zeta2_with_bound};
pub use real::Real;

use crate::{Error, Result};

const LOG2_10: f64 = 3.321928094887362;

/// Decimal working precision plus guard digits.
///
/// Operations run at `digits + guard` digits; reported tolerances are
/// `10^-digits`. The default is 38 digits with 8 guard digits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecisionContext {
    digits: u32,
    guard: u32,
    bits: usize,
}

impl PrecisionContext {
    pub const DEFAULT_DIGITS: u32 = 38;
    pub const DEFAULT_GUARD: u32 = 8;

    pub fn new(digits: u32) -> Result<Self> {
        Self::with_guard(digits, Self::DEFAULT_GUARD)
    }

    pub fn with_guard(digits: u32, guard: u32) -> Result<Self> {
        if digits < 15 {
            return Err(Error::InvalidPrecision(format!(
                "digits must be >= 15, got {digits}"
            )));
        }
        if guard == 0 {
            return Err(Error::InvalidPrecision("guard must be positive".into()));
        }
        let bits = ((f64::from(digits + guard) * LOG2_10).ceil() as usize) + 16;
        Ok(Self { digits, guard, bits })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn guard(&self) -> u32 {
        self.guard
    }

    /// Binary working precision (covers digits + guard).
    pub fn bits(&self) -> usize {
        self.bits
    }

    /// `10^-digits`, the reporting tolerance.
    pub fn tolerance(&self) -> Real {
        Real::pow10(-(self.digits as i64), self)
    }

    /// `10^-(digits + guard)`, roughly the working rounding floor.
    pub fn working_eps(&self) -> Real {
        Real::pow10(-((self.digits + self.guard) as i64), self)
    }

    /// Context with doubled digits, used by bounded precision retries.
    pub fn doubled(&self) -> Self {
        Self::with_guard(self.digits * 2, self.guard).expect("doubling keeps digits >= 15")
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self::with_guard(Self::DEFAULT_DIGITS, Self::DEFAULT_GUARD).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn context_validation() {
        assert!(PrecisionContext::new(14).is_err());
        assert!(PrecisionContext::new(15).is_ok());
        let ctx = PrecisionContext::default();
        assert_eq!(ctx.digits(), 38);
        assert!(ctx.bits() >= 152);
    }

    #[test]
    fn tolerance_scale() {
        let ctx = PrecisionContext::new(20).unwrap();
        let t = ctx.tolerance();
        let lo = Real::pow10(-21, &ctx);
        let hi = Real::pow10(-19, &ctx);
        assert!(t.gt(&lo) && t.lt(&hi));
    }
}
